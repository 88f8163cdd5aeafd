//! Independent reference implementations and golden data shared by the
//! integration suites. Nothing here calls the counting or strategy code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use mastermind_core::{Clause, CnfFormula, Code, Literal, Rating, Variant};
use rand::Rng;

/// Positions where the codes agree.
pub fn naive_alpha(x: &[u32], y: &[u32]) -> usize {
    (0..x.len()).filter(|&i| x[i] == y[i]).count()
}

/// Greedy matching: each peg of `y` claims an unused equal peg of `x`.
pub fn matching_beta(x: &[u32], y: &[u32]) -> usize {
    let mut used = vec![false; x.len()];
    let mut matched = 0;
    for &p in y {
        if let Some(i) = (0..x.len()).find(|&i| !used[i] && x[i] == p) {
            used[i] = true;
            matched += 1;
        }
    }
    matched
}

/// Largest alpha over every permutation of `y` (Heap's algorithm).
pub fn permutation_beta(x: &[u32], y: &[u32]) -> usize {
    let mut y = y.to_vec();
    let n = y.len();
    let mut best = naive_alpha(x, &y);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                y.swap(0, i);
            } else {
                y.swap(c[i], i);
            }
            best = best.max(naive_alpha(x, &y));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

pub fn naive_rate(secret: &[u32], guess: &[u32], variant: Variant) -> Rating {
    let a = naive_alpha(secret, guess) as u32;
    let b = matching_beta(secret, guess) as u32;
    match variant {
        Variant::Full => Rating::Full {
            black: a,
            white: b - a,
        },
        Variant::Black => Rating::Black(a),
        Variant::White => Rating::White(b),
    }
}

/// Every code of length `n` over `c` colors, lexicographically.
pub fn all_codes(n: usize, c: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..c).map(move |t| {
                    let mut p = prefix.clone();
                    p.push(t);
                    p
                })
            })
            .collect();
    }
    out
}

pub type RawQuery = (Vec<u32>, Rating);

pub fn satisfies(x: &[u32], queries: &[RawQuery], variant: Variant) -> bool {
    queries.iter().all(|(g, r)| naive_rate(x, g, variant) == *r)
}

/// Ordered codes consistent with `queries`, by exhaustive scan.
pub fn brute_force_solutions(
    n: usize,
    c: u32,
    variant: Variant,
    queries: &[RawQuery],
) -> Vec<Vec<u32>> {
    all_codes(n, c)
        .into_iter()
        .filter(|x| satisfies(x, queries, variant))
        .collect()
}

/// Consistent ordered codes collapsed to their sorted representatives.
pub fn orbit_solutions(n: usize, c: u32, queries: &[RawQuery]) -> BTreeSet<Vec<u32>> {
    brute_force_solutions(n, c, Variant::White, queries)
        .into_iter()
        .map(|mut x| {
            x.sort_unstable();
            x
        })
        .collect()
}

/// Candidate set for the minimax oracle: ordered codes, or sorted codes for white.
pub fn oracle_candidates(
    n: usize,
    c: u32,
    variant: Variant,
    queries: &[RawQuery],
) -> Vec<Vec<u32>> {
    match variant {
        Variant::White => orbit_solutions(n, c, queries).into_iter().collect(),
        _ => brute_force_solutions(n, c, variant, queries),
    }
}

pub fn classes(guess: &[u32], candidates: &[Vec<u32>], variant: Variant) -> HashMap<Rating, usize> {
    let mut map = HashMap::new();
    for cand in candidates {
        *map.entry(naive_rate(cand, guess, variant)).or_insert(0) += 1;
    }
    map
}

/// Exhaustive minimax: (worst case, guess) under the documented tie-breaks.
pub fn minimax_oracle(
    n: usize,
    c: u32,
    variant: Variant,
    queries: &[RawQuery],
) -> (usize, Vec<u32>) {
    let candidates = oracle_candidates(n, c, variant, queries);
    assert!(!candidates.is_empty());
    if candidates.len() == 1 {
        return (1, candidates[0].clone());
    }
    let is_candidate = |g: &Vec<u32>| {
        let mut key = g.clone();
        if variant == Variant::White {
            key.sort_unstable();
        }
        candidates.contains(&key)
    };
    let mut best: Option<(usize, bool, Vec<u32>)> = None;
    for g in all_codes(n, c) {
        let worst = *classes(&g, &candidates, variant).values().max().unwrap();
        let key = (worst, !is_candidate(&g), g);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    let (worst, _, guess) = best.unwrap();
    (worst, guess)
}

/// Adaptive codemaker oracle: largest class, smallest rating on ties.
pub fn adaptive_oracle(
    n: usize,
    c: u32,
    variant: Variant,
    queries: &[RawQuery],
    guess: &[u32],
) -> (Rating, usize) {
    let candidates = oracle_candidates(n, c, variant, queries);
    let map = classes(guess, &candidates, variant);
    let best_size = *map.values().max().unwrap();
    let rating = *map
        .iter()
        .filter(|(_, &k)| k == best_size)
        .map(|(r, _)| r)
        .min()
        .unwrap();
    (rating, best_size)
}

pub fn model_count_oracle(f: &CnfFormula) -> u64 {
    let v = f.vars();
    (0u32..1 << v)
        .filter(|bits| {
            let values: Vec<bool> = (0..v).map(|j| bits >> j & 1 == 1).collect();
            f.clauses()
                .iter()
                .all(|cl| cl.iter().any(|l| values[l.var] == l.positive))
        })
        .count() as u64
}

pub fn random_formula(rng: &mut impl Rng, vars: usize, clauses: usize) -> CnfFormula {
    let clauses: Vec<Clause> = (0..clauses)
        .map(|_| {
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < 3 {
                let v = rng.random_range(0..vars);
                if !picked.contains(&v) {
                    picked.push(v);
                }
            }
            [0, 1, 2].map(|i| Literal {
                var: picked[i],
                positive: rng.random_bool(0.5),
            })
        })
        .collect();
    CnfFormula::new(vars, clauses).unwrap()
}

pub fn code(pegs: &[u32], c: u32) -> Code {
    Code::new(pegs.to_vec(), c).unwrap()
}

pub fn bits(s: &str) -> Vec<u32> {
    s.bytes().map(|b| (b - b'0') as u32).collect()
}

/// A complete game against secret (0,1,2,3): guesses and the expected ratings.
pub const REFERENCE_SECRET: [u32; 4] = [0, 1, 2, 3];
pub const REFERENCE_GAME: [([u32; 4], (u32, u32)); 6] = [
    ([4, 4, 1, 1], (0, 1)),
    ([3, 2, 2, 4], (1, 1)),
    ([0, 3, 0, 4], (1, 1)),
    ([5, 5, 3, 4], (0, 1)),
    ([1, 2, 0, 3], (1, 3)),
    ([0, 1, 2, 3], (4, 0)),
];

/// (x or not y or z) and (not x or y or w) and (y or not z or not w)
pub const WORKED_EXAMPLE: &str = "p cnf 4 3\n1 -2 3 0\n-1 2 4 0\n2 -3 -4 0\n";

/// The 20 guesses of the worked example, columns
/// x x' y y' z z' w w' a1 a1' b1 b1' c1 c1' a2 .. c3'.
pub const WORKED_GUESSES: [&str; 20] = [
    "00000000000000000000000000",
    "11000000000000000000000000",
    "00110000000000000000000000",
    "00001100000000000000000000",
    "00000011000000000000000000",
    "00000000110000000000000000",
    "00000000001100000000000000",
    "00000000000011000000000000",
    "00000000000000110000000000",
    "00000000000000001100000000",
    "00000000000000000011000000",
    "00000000000000000000110000",
    "00000000000000000000001100",
    "00000000000000000000000011",
    "10011000101000000000000000",
    "01100010000000101000000000",
    "00100101000000000000101000",
    "00000000011010000000000000",
    "00000000000000011010000000",
    "00000000000000000000011010",
];

/// Expected ratings of the guesses above.
pub fn worked_ratings() -> Vec<(u32, u32)> {
    let mut r = vec![(13, 0)];
    r.extend([(13, 2); 13]);
    r.extend([(14, 4); 3]);
    r.extend([(14, 2); 3]);
    r
}

/// The ten models (x, y, z, w), all-true first, and their codes.
pub const WORKED_MODELS: [&str; 10] = [
    "TTTT", "TTTF", "TTFT", "TTFF", "TFFT", "FTTT", "FTTF", "FFTF", "FFFT", "FFFF",
];
pub const WORKED_SOLUTIONS: [&str; 10] = [
    "10101010011001011001101010",
    "10101001011001101010011001",
    "10100110101010011001011001",
    "10100101101010101010010110",
    "10010110011001101010101010",
    "01101010101010010110101010",
    "01101001101010011001011001",
    "01011001011001101010101010",
    "01010110101010011001101010",
    "01010101101010101010011001",
];

pub fn tf(s: &str) -> Vec<bool> {
    s.bytes().map(|b| b == b'T').collect()
}
