//! Mastermind analysis: ratings, solution counting, minimax play, and
//! parsimonious reductions from #3-SAT.
//!
//! ```
//! use mastermind_core::{rate, Code, Rating, Variant};
//!
//! let secret = Code::new(vec![0, 1, 2, 3], 6).unwrap();
//! let guess = Code::new(vec![1, 2, 0, 3], 6).unwrap();
//! assert_eq!(
//!     rate(&secret, &guess, Variant::Full).unwrap(),
//!     Rating::Full { black: 1, white: 3 }
//! );
//! ```

pub mod cnf;
pub mod code;
pub mod counting;
pub mod error;
pub mod reductions;
pub mod satoracle;
pub mod strategy;

pub use cnf::{parse_dimacs, Assignment, Clause, CnfFormula, Literal};
pub use code::{alpha, beta, parse_pegs, rate, Code, Color, Query, Rating, RatingDoc, Variant};
pub use counting::{
    count_solutions, enumerate_solutions, is_consistent, search_space_size, Budget, Counter,
    Instance, InstanceDoc, QueryDoc, SolutionSet,
};
pub use error::{Error, Result};
pub use reductions::{
    assignment_to_code, code_to_assignment, lift_color, reduce_to_black2, reduce_to_full2,
    reduce_to_white, AuxVars, LayoutDoc, ReductionLayout, ReductionTarget,
};
pub use satoracle::{count_sat, enumerate_models};
pub use strategy::{
    adaptive_rating, chvatal_bound, suggest_guess, worst_case_partition, PlayHistory, Suggestion,
};
