//! Parsimonious reductions from #3-SAT to the Mastermind counting problems.
//!
//! Every clause `C_i` gets three auxiliary variables `a_i, b_i, c_i`, so the
//! reduced code encodes `n = v + 3m` variables. Variable `j` owns two slots:
//! `2j` for its positive literal and `2j + 1` for its negative literal. Slots
//! are colors for the white-peg reduction and positions for the two binary
//! reductions. Auxiliaries follow the original variables clause by clause, so
//! clause `i` owns variables `v + 3i`, `v + 3i + 1` and `v + 3i + 2`.
//!
//! In every model the auxiliaries are forced by the number `k` of satisfied
//! literals of their clause: `a_i = (k == 1)`, `b_i = (k != 3)` and
//! `c_i = (a_i == b_i)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cnf::{Assignment, Clause, CnfFormula, Literal};
use crate::code::{Code, Color, Query, Rating, Variant};
use crate::counting::Instance;
use crate::error::{Error, Result};

/// Which reduction produced an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionTarget {
    /// White-peg Mastermind with `2n + 1` colors.
    White,
    /// Black-peg Mastermind over two colors, code length `2n`.
    Black2,
    /// Standard Mastermind over two colors, code length `2n`.
    Full2,
}

impl ReductionTarget {
    pub const ALL: [ReductionTarget; 3] = [
        ReductionTarget::White,
        ReductionTarget::Black2,
        ReductionTarget::Full2,
    ];

    pub fn reduce(self, f: &CnfFormula) -> Result<(Instance, ReductionLayout)> {
        match self {
            ReductionTarget::White => reduce_to_white(f),
            ReductionTarget::Black2 => reduce_to_black2(f),
            ReductionTarget::Full2 => reduce_to_full2(f),
        }
    }
}

impl fmt::Display for ReductionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionTarget::White => "white",
            ReductionTarget::Black2 => "black2",
            ReductionTarget::Full2 => "full2",
        })
    }
}

impl FromStr for ReductionTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "white" => Ok(ReductionTarget::White),
            "black2" => Ok(ReductionTarget::Black2),
            "full2" => Ok(ReductionTarget::Full2),
            other => Err(Error::InvalidInstance(format!(
                "unknown reduction target {other:?} (expected white, black2 or full2)"
            ))),
        }
    }
}

/// Auxiliary variable indices of one clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxVars {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// How variables map to colors or positions in a reduced instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LayoutDoc", into = "LayoutDoc")]
pub struct ReductionLayout {
    target: ReductionTarget,
    formula: CnfFormula,
}

impl ReductionLayout {
    pub fn new(target: ReductionTarget, formula: CnfFormula) -> Self {
        ReductionLayout { target, formula }
    }

    pub fn target(&self) -> ReductionTarget {
        self.target
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn total_vars(&self) -> usize {
        self.formula.total_vars()
    }

    pub fn aux(&self, clause: usize) -> AuxVars {
        let base = self.formula.vars() + 3 * clause;
        AuxVars {
            a: base,
            b: base + 1,
            c: base + 2,
        }
    }

    /// Color (white) or position (binary targets) of a literal.
    pub fn slot(&self, lit: Literal) -> usize {
        2 * lit.var + usize::from(!lit.positive)
    }

    /// The color absent from every solution; white target only.
    pub fn mask(&self) -> Option<Color> {
        match self.target {
            ReductionTarget::White => Some(2 * self.total_vars() as Color),
            _ => None,
        }
    }

    pub fn variable_name(&self, var: usize) -> String {
        let v = self.formula.vars();
        if var < v {
            format!("x{}", var + 1)
        } else {
            let k = var - v;
            let letter = ["a", "b", "c"][k % 3];
            format!("{letter}{}", k / 3 + 1)
        }
    }

    /// Values of all `v + 3m` variables, auxiliaries forced by `model`.
    pub fn extend(&self, model: &[bool]) -> Vec<bool> {
        let mut values = model.to_vec();
        for i in 0..self.formula.clauses().len() {
            let k = self.formula.satisfied_literals(i, model);
            let a = k == 1;
            let b = k != 3;
            values.extend([a, b, a == b]);
        }
        values
    }
}

/// Sidecar document describing a layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LayoutDoc {
    pub target: ReductionTarget,
    pub variables: usize,
    pub total_vars: usize,
    /// Clauses in signed 1-based DIMACS form.
    pub clauses: Vec<[i64; 3]>,
    /// `"colors"` or `"positions"`.
    pub slot_kind: String,
    pub slots: Vec<SlotDoc>,
    pub auxiliaries: Vec<AuxVars>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask: Option<Color>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotDoc {
    pub var: usize,
    pub name: String,
    pub positive: usize,
    pub negative: usize,
}

impl From<ReductionLayout> for LayoutDoc {
    fn from(layout: ReductionLayout) -> Self {
        let f = &layout.formula;
        LayoutDoc {
            target: layout.target,
            variables: f.vars(),
            total_vars: layout.total_vars(),
            clauses: f
                .clauses()
                .iter()
                .map(|c| c.map(|l| l.to_dimacs()))
                .collect(),
            slot_kind: match layout.target {
                ReductionTarget::White => "colors",
                _ => "positions",
            }
            .into(),
            slots: (0..layout.total_vars())
                .map(|var| SlotDoc {
                    var,
                    name: layout.variable_name(var),
                    positive: layout.slot(Literal::pos(var)),
                    negative: layout.slot(Literal::neg(var)),
                })
                .collect(),
            auxiliaries: (0..f.clauses().len()).map(|i| layout.aux(i)).collect(),
            mask: layout.mask(),
        }
    }
}

impl TryFrom<LayoutDoc> for ReductionLayout {
    type Error = Error;

    fn try_from(doc: LayoutDoc) -> Result<Self> {
        let clauses = doc
            .clauses
            .iter()
            .map(|c| {
                let lits = c.map(Literal::from_dimacs);
                match lits {
                    [Some(a), Some(b), Some(c)] => Ok([a, b, c]),
                    _ => Err(Error::Restriction(
                        "layout clause contains literal 0".into(),
                    )),
                }
            })
            .collect::<Result<Vec<Clause>>>()?;
        let formula = CnfFormula::new(doc.variables, clauses)?;
        let layout = ReductionLayout::new(doc.target, formula);
        // The remaining fields are derived; reject documents that disagree.
        let expected = LayoutDoc::from(layout.clone());
        let slots_match = doc.slots.len() == expected.slots.len()
            && doc.slots.iter().zip(&expected.slots).all(|(a, b)| {
                a.var == b.var && a.positive == b.positive && a.negative == b.negative
            });
        if doc.total_vars != expected.total_vars
            || doc.auxiliaries != expected.auxiliaries
            || doc.mask != expected.mask
            || doc.slot_kind != expected.slot_kind
            || !slots_match
        {
            return Err(Error::InvalidInstance(
                "layout document does not match the fixed layout".into(),
            ));
        }
        Ok(layout)
    }
}

/// Adds a fresh color that the added all-new-color query forbids.
pub fn lift_color(inst: &Instance) -> Result<Instance> {
    let n = inst.n();
    let c = inst.colors();
    let fresh = match inst.variant() {
        Variant::Full => Rating::Full { black: 0, white: 0 },
        Variant::Black => Rating::Black(0),
        Variant::White => return Err(Error::UnsupportedVariant(Variant::White)),
    };
    let mut queries = Vec::with_capacity(inst.queries().len() + 1);
    for q in inst.queries() {
        queries.push(Query::new(
            Code::new(q.guess.pegs().to_vec(), c + 1)?,
            q.rating,
        ));
    }
    queries.push(Query::new(Code::monochrome(c, n, c + 1)?, fresh));
    Instance::new(n, c + 1, inst.variant(), queries)
}

pub fn reduce_to_white(f: &CnfFormula) -> Result<(Instance, ReductionLayout)> {
    let layout = ReductionLayout::new(ReductionTarget::White, f.clone());
    let n = layout.total_vars();
    let colors = 2 * n as u32 + 1;
    let mask = layout.mask().expect("white layout has a mask");
    let slot = |lit: Literal| layout.slot(lit) as Color;

    // Guess with the given leading colors, padded with the mask color.
    let padded = |lead: &[Color]| {
        let mut pegs = lead.to_vec();
        pegs.resize(n, mask);
        Code::new(pegs, colors)
    };

    let mut queries = vec![Query::new(padded(&[])?, Rating::White(0))];
    for var in 0..n {
        let (x, nx) = (slot(Literal::pos(var)), slot(Literal::neg(var)));
        queries.push(Query::new(padded(&[x, x, nx, nx])?, Rating::White(1)));
    }
    for (i, clause) in f.clauses().iter().enumerate() {
        let aux = layout.aux(i);
        let [l1, l2, l3] = clause.map(slot);
        let lead = [
            l1,
            l2,
            l3,
            slot(Literal::pos(aux.a)),
            slot(Literal::pos(aux.b)),
        ];
        queries.push(Query::new(padded(&lead)?, Rating::White(3)));
    }
    for i in 0..f.clauses().len() {
        let aux = layout.aux(i);
        let lead = [
            slot(Literal::neg(aux.a)),
            slot(Literal::pos(aux.b)),
            slot(Literal::pos(aux.c)),
        ];
        queries.push(Query::new(padded(&lead)?, Rating::White(2)));
    }
    Ok((Instance::new(n, colors, Variant::White, queries)?, layout))
}

pub fn reduce_to_black2(f: &CnfFormula) -> Result<(Instance, ReductionLayout)> {
    reduce_binary(f, ReductionTarget::Black2)
}

pub fn reduce_to_full2(f: &CnfFormula) -> Result<(Instance, ReductionLayout)> {
    reduce_binary(f, ReductionTarget::Full2)
}

/// Shared guesses of the two binary reductions; only the ratings differ.
fn reduce_binary(f: &CnfFormula, target: ReductionTarget) -> Result<(Instance, ReductionLayout)> {
    let layout = ReductionLayout::new(target, f.clone());
    let n = layout.total_vars();
    let len = 2 * n;
    let n32 = n as u32;
    let (variant, rate): (Variant, fn(u32, u32) -> Rating) = match target {
        ReductionTarget::Black2 => (Variant::Black, |black, _| Rating::Black(black)),
        ReductionTarget::Full2 => (Variant::Full, |black, white| Rating::Full { black, white }),
        ReductionTarget::White => unreachable!("white target has its own construction"),
    };
    let ones = |lits: &[Literal]| {
        let mut pegs = vec![0; len];
        for &l in lits {
            pegs[layout.slot(l)] = 1;
        }
        Code::new(pegs, 2)
    };

    let mut queries = vec![Query::new(ones(&[])?, rate(n32, 0))];
    for var in 0..n {
        queries.push(Query::new(
            ones(&[Literal::pos(var), Literal::neg(var)])?,
            rate(n32, 2),
        ));
    }
    for (i, clause) in f.clauses().iter().enumerate() {
        let aux = layout.aux(i);
        let [l1, l2, l3] = *clause;
        queries.push(Query::new(
            ones(&[l1, l2, l3, Literal::pos(aux.a), Literal::pos(aux.b)])?,
            rate(n32 + 1, 4),
        ));
    }
    for i in 0..f.clauses().len() {
        let aux = layout.aux(i);
        queries.push(Query::new(
            ones(&[
                Literal::neg(aux.a),
                Literal::pos(aux.b),
                Literal::pos(aux.c),
            ])?,
            rate(n32 + 1, 2),
        ));
    }
    Ok((Instance::new(len, 2, variant, queries)?, layout))
}

/// Encodes a model of `f` as a solution of the reduced instance.
pub fn assignment_to_code(
    f: &CnfFormula,
    assignment: &Assignment,
    layout: &ReductionLayout,
) -> Result<Code> {
    if layout.formula() != f {
        return Err(Error::InvalidInstance(
            "layout was built for a different formula".into(),
        ));
    }
    let model = assignment.values();
    if model.len() != f.vars() {
        return Err(Error::InvalidInstance(format!(
            "assignment has {} values, formula has {} variables",
            model.len(),
            f.vars()
        )));
    }
    if let Some(clause) = f.first_falsified(model) {
        return Err(Error::NotAModel { clause });
    }
    let values = layout.extend(model);
    let chosen = values.iter().enumerate().map(|(var, &value)| {
        layout.slot(Literal {
            var,
            positive: value,
        })
    });
    let n = layout.total_vars();
    match layout.target() {
        ReductionTarget::White => {
            let mut pegs: Vec<Color> = chosen.map(|s| s as Color).collect();
            pegs.sort_unstable();
            Code::new(pegs, 2 * n as u32 + 1)
        }
        ReductionTarget::Black2 | ReductionTarget::Full2 => {
            let mut pegs = vec![0; 2 * n];
            for s in chosen {
                pegs[s] = 1;
            }
            Code::new(pegs, 2)
        }
    }
}

/// Reads the original variables back out of a solution of the reduced instance.
pub fn code_to_assignment(code: &Code, layout: &ReductionLayout) -> Result<Assignment> {
    let (inst, _) = layout.target().reduce(layout.formula())?;
    if !inst.admits(code)? {
        return Err(Error::Inconsistent(format!(
            "code {code} violates at least one {} query",
            layout.target()
        )));
    }
    let v = layout.formula().vars();
    let values = match layout.target() {
        ReductionTarget::White => {
            let census = code.census();
            (0..v)
                .map(|var| census[layout.slot(Literal::pos(var))] > 0)
                .collect()
        }
        ReductionTarget::Black2 | ReductionTarget::Full2 => (0..v)
            .map(|var| code.pegs()[layout.slot(Literal::pos(var))] == 1)
            .collect(),
    };
    Ok(Assignment(values))
}
