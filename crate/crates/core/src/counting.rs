//! Mastermind satisfiability instances and their solution counters.
//!
//! Full and black-peg instances are counted over ordered codes by a
//! depth-first search that fixes one position at a time. White-peg instances
//! are counted over multisets (sorted codes) by a search that fixes one color
//! multiplicity at a time, so at most `C(n+c-1, c-1)` codes are ever examined.
//!
//! Both searches prune branches whose partial scores already rule out a
//! query's rating, and both honor the color census implied by the queries:
//! a monochromatic guess reveals the exact multiplicity of its color, and a
//! guess whose colors all score zero removes those colors from the palette.

use serde::{Deserialize, Serialize};

use crate::code::{self, Code, Color, Query, Rating, RatingDoc, Variant};
use crate::error::{Error, Result};

/// Upper bound on the number of candidates a count may examine.
///
/// For full and black instances the bound applies to the size of the
/// (census-restricted) code space before any search starts. For white
/// instances it caps the number of search nodes visited. In both cases a
/// search needing `budget` or more candidates is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 26);
    pub const UNLIMITED: Budget = Budget(u64::MAX);

    pub fn admits(&self, required: u128) -> bool {
        required < self.0 as u128
    }

    fn check(&self, required: u128) -> Result<()> {
        if self.admits(required) {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceDoc", into = "InstanceDoc")]
pub struct Instance {
    n: usize,
    colors: u32,
    variant: Variant,
    queries: Vec<Query>,
}

impl Instance {
    pub fn new(n: usize, colors: u32, variant: Variant, queries: Vec<Query>) -> Result<Self> {
        let mut inst = Instance::empty(n, colors, variant)?;
        for q in queries {
            inst.push(q)?;
        }
        Ok(inst)
    }

    pub fn empty(n: usize, colors: u32, variant: Variant) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance(
                "code length must be at least 1".into(),
            ));
        }
        if colors == 0 {
            return Err(Error::InvalidInstance(
                "color count must be at least 1".into(),
            ));
        }
        Ok(Instance {
            n,
            colors,
            variant,
            queries: Vec::new(),
        })
    }

    pub fn push(&mut self, query: Query) -> Result<()> {
        self.check_code(&query.guess)?;
        if query.rating.variant() != self.variant {
            return Err(Error::VariantMismatch {
                expected: self.variant,
                rating: query.rating.to_string(),
            });
        }
        if !query.rating.is_within_bounds(self.n) {
            return Err(Error::InvalidInstance(format!(
                "rating {} out of bounds for n = {}",
                query.rating, self.n
            )));
        }
        self.queries.push(query);
        Ok(())
    }

    /// Checks that `code` has this instance's shape.
    pub fn check_code(&self, code: &Code) -> Result<()> {
        if code.len() != self.n || code.colors() != self.colors {
            return Err(Error::Dimension {
                expected_len: self.n,
                expected_colors: self.colors,
                len: code.len(),
                colors: code.colors(),
            });
        }
        Ok(())
    }

    /// Builds a code of this instance's shape from raw pegs.
    pub fn code(&self, pegs: Vec<Color>) -> Result<Code> {
        let code = Code::new(pegs, self.colors)?;
        self.check_code(&code)?;
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    pub fn into_queries(self) -> Vec<Query> {
        self.queries
    }

    /// Whether `x` satisfies every query.
    pub fn admits(&self, x: &Code) -> Result<bool> {
        self.check_code(x)?;
        Ok(self
            .queries
            .iter()
            .all(|q| code::rate_unchecked(x, &q.guess, self.variant) == q.rating))
    }
}

/// Instance document: `{n, c, variant, queries: [{guess, rating}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub n: usize,
    pub c: u32,
    pub variant: Variant,
    #[serde(default)]
    pub queries: Vec<QueryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDoc {
    pub guess: Vec<Color>,
    pub rating: RatingDoc,
}

impl TryFrom<InstanceDoc> for Instance {
    type Error = Error;

    fn try_from(doc: InstanceDoc) -> Result<Self> {
        let mut inst = Instance::empty(doc.n, doc.c, doc.variant)?;
        for q in doc.queries {
            let guess = Code::new(q.guess, doc.c)?;
            let rating = q.rating.into_rating(doc.variant)?;
            inst.push(Query::new(guess, rating))?;
        }
        Ok(inst)
    }
}

impl From<Instance> for InstanceDoc {
    fn from(inst: Instance) -> Self {
        InstanceDoc {
            n: inst.n,
            c: inst.colors,
            variant: inst.variant,
            queries: inst
                .queries
                .into_iter()
                .map(|q| QueryDoc {
                    guess: q.guess.into_pegs(),
                    rating: q.rating.into(),
                })
                .collect(),
        }
    }
}

/// Result of [`enumerate_solutions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    /// Exact number of solutions, whether or not the list was truncated.
    pub count: u64,
    /// Solutions in lexicographic order; sorted codes for the white variant.
    pub solutions: Vec<Code>,
    pub truncated: bool,
}

pub fn is_consistent(x: &Code, query: &Query, variant: Variant) -> Result<bool> {
    Ok(code::rate(x, &query.guess, variant)? == query.rating)
}

/// Counts the codes (multisets, for the white variant) consistent with every query.
pub fn count_solutions(inst: &Instance, budget: Budget) -> Result<u64> {
    Counter::new(budget).count(inst)
}

/// Lists up to `limit` solutions in lexicographic order along with the exact count.
pub fn enumerate_solutions(inst: &Instance, limit: usize, budget: Budget) -> Result<SolutionSet> {
    Counter::new(budget).enumerate(inst, limit)
}

/// Size of the code space the counters would search, after census restriction.
///
/// For white instances this is the number of admissible multisets.
pub fn search_space_size(inst: &Instance) -> u128 {
    let census = Census::derive(inst, true);
    census.space_size(inst.n, inst.variant)
}

/// Solution counter with tunable search options.
#[derive(Debug, Clone, Copy)]
pub struct Counter {
    budget: Budget,
    census: bool,
}

impl Counter {
    pub fn new(budget: Budget) -> Self {
        Counter {
            budget,
            census: true,
        }
    }

    /// Enables or disables census restriction. Results never depend on it,
    /// only the size of the searched space does.
    pub fn census(mut self, enabled: bool) -> Self {
        self.census = enabled;
        self
    }

    pub fn count(&self, inst: &Instance) -> Result<u64> {
        let mut count = 0u64;
        self.search(inst, |_| count += 1)?;
        Ok(count)
    }

    pub fn enumerate(&self, inst: &Instance, limit: usize) -> Result<SolutionSet> {
        let mut set = SolutionSet {
            count: 0,
            solutions: Vec::new(),
            truncated: false,
        };
        self.search(inst, |pegs| {
            set.count += 1;
            if set.solutions.len() < limit {
                set.solutions
                    .push(Code::from_parts_unchecked(pegs.to_vec(), inst.colors));
            } else {
                set.truncated = true;
            }
        })?;
        Ok(set)
    }

    fn search(&self, inst: &Instance, sink: impl FnMut(&[Color])) -> Result<()> {
        let census = Census::derive(inst, self.census);
        match inst.variant {
            Variant::Full | Variant::Black => {
                let required = census.space_size(inst.n, inst.variant);
                self.budget.check(required)?;
                if required == 0 {
                    return Ok(());
                }
                OrderedSearch::new(inst, &census).run(sink);
                Ok(())
            }
            Variant::White => {
                if census.infeasible(inst.n) {
                    return Ok(());
                }
                MultisetSearch::new(inst, &census, self.budget).run(sink)
            }
        }
    }
}

/// Per-color multiplicities fixed by the queries.
#[derive(Debug, Clone)]
struct Census {
    pinned: Vec<Option<usize>>,
    conflict: bool,
}

impl Census {
    fn derive(inst: &Instance, enabled: bool) -> Self {
        let mut census = Census {
            pinned: vec![None; inst.colors as usize],
            conflict: false,
        };
        if !enabled {
            return census;
        }
        for q in &inst.queries {
            let pegs = q.guess.pegs();
            // All guess colors absent from the secret.
            let absent = matches!(
                (inst.variant, q.rating),
                (Variant::Full, Rating::Full { black: 0, white: 0 })
                    | (Variant::White, Rating::White(0))
            );
            if absent {
                for &t in pegs {
                    census.pin(t, 0);
                }
            }
            // A monochromatic guess reports its color's multiplicity directly.
            if pegs.iter().all(|&p| p == pegs[0]) {
                let mult = match q.rating {
                    Rating::Full { black, .. } => black,
                    Rating::Black(v) | Rating::White(v) => v,
                };
                census.pin(pegs[0], mult as usize);
            }
        }
        census
    }

    fn pin(&mut self, color: Color, mult: usize) {
        let slot = &mut self.pinned[color as usize];
        match *slot {
            Some(existing) if existing != mult => self.conflict = true,
            _ => *slot = Some(mult),
        }
    }

    fn pinned_total(&self) -> usize {
        self.pinned.iter().flatten().sum()
    }

    fn free_colors(&self) -> Vec<Color> {
        (0..self.pinned.len() as Color)
            .filter(|&t| self.pinned[t as usize].is_none())
            .collect()
    }

    fn infeasible(&self, n: usize) -> bool {
        let total = self.pinned_total();
        self.conflict || total > n || (self.free_colors().is_empty() && total != n)
    }

    fn space_size(&self, n: usize, variant: Variant) -> u128 {
        if self.infeasible(n) {
            return 0;
        }
        let free = self.free_colors().len() as u128;
        let rest = n - self.pinned_total();
        match variant {
            Variant::White => {
                if free == 0 {
                    1
                } else {
                    binomial(rest as u128 + free - 1, free - 1)
                }
            }
            Variant::Full | Variant::Black => {
                // Multinomial placement of the pinned colors, free colors fill the rest.
                let mut size: u128 = 1;
                let mut slots = n as u128;
                for &k in self.pinned.iter().flatten() {
                    size = size.saturating_mul(binomial(slots, k as u128));
                    slots -= k as u128;
                }
                size.saturating_mul(saturating_pow(free, rest))
            }
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Position-by-position search over ordered codes.
struct OrderedSearch<'a> {
    inst: &'a Instance,
    /// Black-peg score every query must reach.
    targets: Vec<usize>,
    /// Remaining copies of each pinned color; `None` for free colors.
    remaining: Vec<Option<usize>>,
    free_left: usize,
    matched: Vec<usize>,
    pegs: Vec<Color>,
}

impl<'a> OrderedSearch<'a> {
    fn new(inst: &'a Instance, census: &Census) -> Self {
        let targets = inst
            .queries
            .iter()
            .map(|q| match q.rating {
                Rating::Full { black, .. } | Rating::Black(black) => black as usize,
                Rating::White(_) => unreachable!("white instances use the multiset search"),
            })
            .collect();
        OrderedSearch {
            inst,
            targets,
            remaining: census.pinned.clone(),
            free_left: inst.n - census.pinned_total(),
            matched: vec![0; inst.queries.len()],
            pegs: Vec::with_capacity(inst.n),
        }
    }

    fn run(mut self, mut sink: impl FnMut(&[Color])) {
        self.visit(&mut sink);
    }

    fn visit(&mut self, sink: &mut impl FnMut(&[Color])) {
        let pos = self.pegs.len();
        let n = self.inst.n;
        if pos == n {
            if self.inst.variant == Variant::Full && !self.full_ratings_hold() {
                return;
            }
            sink(&self.pegs);
            return;
        }
        let left_after = n - pos - 1;
        for t in 0..self.inst.colors {
            match self.remaining[t as usize] {
                Some(0) => continue,
                None if self.free_left == 0 => continue,
                _ => {}
            }
            let feasible = self.inst.queries.iter().enumerate().all(|(qi, q)| {
                let m = self.matched[qi] + usize::from(q.guess.pegs()[pos] == t);
                m <= self.targets[qi] && m + left_after >= self.targets[qi]
            });
            if !feasible {
                continue;
            }
            self.take(t, pos, true);
            self.visit(sink);
            self.take(t, pos, false);
        }
    }

    fn take(&mut self, t: Color, pos: usize, forward: bool) {
        let step = |v: &mut usize| {
            if forward {
                *v += 1
            } else {
                *v -= 1
            }
        };
        match &mut self.remaining[t as usize] {
            Some(k) => {
                if forward {
                    *k -= 1
                } else {
                    *k += 1
                }
            }
            None => {
                if forward {
                    self.free_left -= 1
                } else {
                    self.free_left += 1
                }
            }
        }
        for (qi, q) in self.inst.queries.iter().enumerate() {
            if q.guess.pegs()[pos] == t {
                step(&mut self.matched[qi]);
            }
        }
        if forward {
            self.pegs.push(t);
        } else {
            self.pegs.pop();
        }
    }

    fn full_ratings_hold(&self) -> bool {
        self.inst.queries.iter().all(|q| {
            let b = code::beta_unchecked(&self.pegs, q.guess.pegs(), self.inst.colors);
            let a = code::alpha_unchecked(&self.pegs, q.guess.pegs());
            q.rating
                == Rating::Full {
                    black: a as u32,
                    white: (b - a) as u32,
                }
        })
    }
}

/// Color-by-color search over multisets, ordered so that emitted sorted codes
/// come out lexicographically.
struct MultisetSearch {
    n: usize,
    colors: u32,
    budget: Budget,
    /// Upper bound on nodes, reported when the budget is exhausted.
    node_bound: u128,
    nodes: u64,
    free: Vec<Color>,
    /// Guess multiplicity of free color `free[i]` in query `q`: `guess_mult[q][i]`.
    guess_mult: Vec<Vec<usize>>,
    /// Sum of `guess_mult[q][i..]`.
    suffix_sum: Vec<Vec<usize>>,
    /// Minimum of `guess_mult[q][i..]` (`usize::MAX` when empty).
    suffix_min: Vec<Vec<usize>>,
    targets: Vec<usize>,
    partial: Vec<usize>,
    mult: Vec<usize>,
    pinned: Vec<Option<usize>>,
}

impl MultisetSearch {
    fn new(inst: &Instance, census: &Census, budget: Budget) -> Self {
        let free = census.free_colors();
        let rest = inst.n - census.pinned_total();
        let mut guess_mult = Vec::new();
        let mut suffix_sum = Vec::new();
        let mut suffix_min = Vec::new();
        let mut targets = Vec::new();
        let mut partial = Vec::new();
        for q in &inst.queries {
            let census_q = q.guess.census();
            let gm: Vec<usize> = free.iter().map(|&t| census_q[t as usize]).collect();
            let mut sums = vec![0; gm.len() + 1];
            let mut mins = vec![usize::MAX; gm.len() + 1];
            for i in (0..gm.len()).rev() {
                sums[i] = sums[i + 1] + gm[i];
                mins[i] = mins[i + 1].min(gm[i]);
            }
            let fixed: usize = census
                .pinned
                .iter()
                .enumerate()
                .filter_map(|(t, p)| p.map(|k| k.min(census_q[t])))
                .sum();
            guess_mult.push(gm);
            suffix_sum.push(sums);
            suffix_min.push(mins);
            partial.push(fixed);
            targets.push(match q.rating {
                Rating::White(v) => v as usize,
                _ => unreachable!("ordered variants use the ordered search"),
            });
        }
        let node_bound = binomial(rest as u128 + free.len() as u128 + 1, free.len() as u128);
        MultisetSearch {
            n: inst.n,
            colors: inst.colors,
            budget,
            node_bound,
            nodes: 0,
            mult: Vec::with_capacity(free.len()),
            free,
            guess_mult,
            suffix_sum,
            suffix_min,
            targets,
            partial,
            pinned: census.pinned.clone(),
        }
    }

    fn run(mut self, mut sink: impl FnMut(&[Color])) -> Result<()> {
        let rest = self.n - self.pinned.iter().flatten().sum::<usize>();
        self.visit(rest, &mut sink)
    }

    /// Whether every query can still reach its target with `left` pegs spread
    /// over free colors `free[i..]`.
    fn feasible(&self, i: usize, left: usize) -> bool {
        (0..self.targets.len()).all(|q| {
            let now = self.partial[q];
            let lo = if left == 0 {
                0
            } else {
                left.min(self.suffix_min[q][i])
            };
            let hi = left.min(self.suffix_sum[q][i]);
            now + lo <= self.targets[q] && now + hi >= self.targets[q]
        })
    }

    fn visit(&mut self, left: usize, sink: &mut impl FnMut(&[Color])) -> Result<()> {
        self.nodes += 1;
        if !self.budget.admits(self.nodes as u128) {
            return Err(Error::BudgetExceeded {
                required: self.node_bound,
                budget: self.budget.0,
            });
        }
        let i = self.mult.len();
        if i == self.free.len() {
            if left == 0 && self.partial.iter().zip(&self.targets).all(|(p, t)| p == t) {
                let pegs = self.sorted_pegs();
                sink(&pegs);
            }
            return Ok(());
        }
        let last = i + 1 == self.free.len();
        let range = if last { left..=left } else { 0..=left };
        // Larger multiplicities of smaller colors sort first.
        for m in range.rev() {
            for q in 0..self.targets.len() {
                self.partial[q] += m.min(self.guess_mult[q][i]);
            }
            self.mult.push(m);
            let ok = self.feasible(i + 1, left - m);
            if ok {
                self.visit(left - m, sink)?;
            }
            self.mult.pop();
            for q in 0..self.targets.len() {
                self.partial[q] -= m.min(self.guess_mult[q][i]);
            }
        }
        Ok(())
    }

    fn sorted_pegs(&self) -> Vec<Color> {
        let mut counts: Vec<usize> = self.pinned.iter().map(|p| p.unwrap_or(0)).collect();
        for (&t, &m) in self.free.iter().zip(&self.mult) {
            counts[t as usize] = m;
        }
        let mut pegs = Vec::with_capacity(self.n);
        for t in 0..self.colors {
            pegs.extend(std::iter::repeat_n(t, counts[t as usize]));
        }
        pegs
    }
}
