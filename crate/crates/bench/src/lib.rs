//! Shared fixtures for the benchmarks.

use mastermind_core::{parse_dimacs, CnfFormula, Code};

/// (x or not y or z) and (not x or y or w) and (y or not z or not w)
pub const WORKED_EXAMPLE: &str = "p cnf 4 3\n1 -2 3 0\n-1 2 4 0\n2 -3 -4 0\n";

pub fn worked_example() -> CnfFormula {
    parse_dimacs(WORKED_EXAMPLE).expect("fixture parses")
}

/// Deterministic pseudo-random codes (xorshift), so runs are comparable.
pub fn codes(count: usize, n: usize, colors: u32) -> Vec<Code> {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    (0..count)
        .map(|_| {
            let pegs = (0..n)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    (state % colors as u64) as u32
                })
                .collect();
            Code::new(pegs, colors).expect("colors in range")
        })
        .collect()
}
