//! Brute-force #3-SAT: the reference the reductions are checked against.
//!
//! Deliberately naive. Every one of the `2^v` assignments is evaluated.

use crate::cnf::{Assignment, CnfFormula};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 26;

pub fn count_sat(f: &CnfFormula) -> Result<u64> {
    let mut count = 0;
    for_each_model(f, |_| count += 1)?;
    Ok(count)
}

/// All models, lexicographic with variable 0 most significant and false before true.
pub fn enumerate_models(f: &CnfFormula) -> Result<Vec<Assignment>> {
    let mut models = Vec::new();
    for_each_model(f, |values| models.push(Assignment(values.to_vec())))?;
    Ok(models)
}

fn for_each_model(f: &CnfFormula, mut visit: impl FnMut(&[bool])) -> Result<()> {
    let v = f.vars();
    if v > MAX_VARS {
        return Err(Error::BudgetExceeded {
            required: 1u128 << v.min(127),
            budget: 1 << MAX_VARS,
        });
    }
    let mut values = vec![false; v];
    for bits in 0u64..(1u64 << v) {
        for (j, value) in values.iter_mut().enumerate() {
            *value = bits >> (v - 1 - j) & 1 == 1;
        }
        if f.is_satisfied_by(&values) {
            visit(&values);
        }
    }
    Ok(())
}
