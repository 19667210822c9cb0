//! R-charge grading of bi-factorisations: per-variable weights, per-block
//! charges, the charge of morphisms, and charge-sector Hom spaces.
//!
//! Charges are kept in absolute units: a variable of weight `w` contributes
//! `w` per power, and the differential has charge exactly 1. For `W = x^d`
//! the weight is `2/d`.

pub mod hom;
pub mod structure;

use std::collections::VecDeque;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bifact::{
    pair_indices, p_s_object, tensor_obj, unit_object, BifactError, Kernel, Mbf, Morphism, Operator, Shape,
};
use crate::exactalg::rat::{rat, rat_int, rat_to_string};
use crate::exactalg::Rat;
use crate::polycalc::{Mono, MultiPoly};

pub use hom::{hom_space, is_null_homotopic, HomBasis, HomReport, HomSector};
pub use structure::{zero_charge_structure_check, StructureCheck};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GradedError {
    #[error(transparent)]
    Bifact(#[from] BifactError),
    #[error("invalid weights: {0}")]
    Weights(String),
    #[error("entry ({row}, {col}) of the differential has charge {found}, expected 1")]
    ChargeViolation { row: usize, col: usize, found: String },
    #[error(transparent)]
    NotHomogeneous(#[from] NotHomogeneous),
    #[error("block {0} is not linked to block 0 by the differential")]
    Disconnected(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Two parts of a map carry different charges.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("not charge-homogeneous: {first} at entry {first_at:?} vs {second} at entry {second_at:?}")]
pub struct NotHomogeneous {
    pub first: String,
    pub first_at: (usize, usize),
    pub second: String,
    pub second_at: (usize, usize),
}

/// Positive weights `q_{x_i}` with `W` of weighted degree 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights(Vec<Rat>);

impl Weights {
    pub fn new(weights: Vec<Rat>, potential: &MultiPoly) -> Result<Self, GradedError> {
        if weights.len() != potential.nvars() {
            return Err(GradedError::Weights(format!(
                "{} weights for {} variables",
                weights.len(),
                potential.nvars()
            )));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(GradedError::Weights("weights must be positive".into()));
        }
        let w = Weights(weights);
        if let Some((m, _)) = potential.terms().find(|(m, _)| w.of_exps(&m.0) != rat_int(2)) {
            return Err(GradedError::Weights(format!(
                "potential term {:?} has weighted degree {}, expected 2",
                m.0,
                rat_to_string(&w.of_exps(&m.0))
            )));
        }
        Ok(w)
    }

    /// `q_x = 2/d` for `W = x^d`.
    pub fn monomial(d: u32) -> Self {
        Weights(vec![rat(2, i64::from(d))])
    }

    /// Fermat-type potential `Σ x_i^{d_i}`: weight `2/d_i` each.
    pub fn fermat(degrees: &[u32]) -> Self {
        Weights(degrees.iter().map(|&d| rat(2, i64::from(d))).collect())
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Weighted degree of an exponent vector over any number of slots.
    pub fn of_exps(&self, exps: &[u16]) -> Rat {
        let n = self.0.len();
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(Rat::zero(), |acc, (v, &e)| acc + &self.0[v % n] * rat_int(i64::from(e)))
    }

    pub fn of_mono(&self, m: &Mono) -> Rat {
        self.of_exps(&m.0)
    }

    /// The weighted degree of `p` when it is weighted-homogeneous.
    pub fn degree_of(&self, p: &MultiPoly) -> Result<Option<Rat>, (Rat, Rat)> {
        let mut found: Option<Rat> = None;
        for (m, _) in p.terms() {
            let w = self.of_mono(m);
            match &found {
                None => found = Some(w),
                Some(f) if *f != w => return Err((f.clone(), w)),
                Some(_) => {}
            }
        }
        Ok(found)
    }

    /// Exponent vectors in `count` variables (slot-major copies of the
    /// weighted variables) of weighted degree exactly `target`.
    pub fn monomials_of_degree(&self, count: usize, target: &Rat) -> Vec<Mono> {
        let mut out = vec![];
        if target.is_negative() {
            return out;
        }
        let mut cur = vec![0u16; count];
        self.fill(0, target.clone(), &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, left: Rat, cur: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if i == cur.len() {
            if left.is_zero() {
                out.push(Mono(cur.iter().copied().collect()));
            }
            return;
        }
        let w = &self.0[i % self.0.len()];
        let mut e = 0u16;
        let mut rest = left;
        while !rest.is_negative() {
            cur[i] = e;
            self.fill(i + 1, rest.clone(), cur, out);
            rest -= w;
            e += 1;
        }
        cur[i] = 0;
    }
}

/// A bi-factorisation with weights and per-block charges (in space order)
/// making every differential entry of charge 1.
#[derive(Clone, Debug)]
pub struct GradedMbf {
    pub base: Mbf,
    pub weights: Weights,
    pub charges: Vec<Rat>,
}

/// Charges of the even and odd generator of `P_{i..i+j}` for `W = x^d`:
/// `(−j/d, (j−d+2)/d)`, independent of `i`.
pub fn charge_matrix_ps(d: u32, j: u32) -> (Rat, Rat) {
    let (d, j) = (i64::from(d), i64::from(j));
    (rat(-j, d), rat(j - d + 2, d))
}

impl GradedMbf {
    pub fn new(base: Mbf, weights: Weights, charges: Vec<Rat>) -> Result<Self, GradedError> {
        if charges.len() != base.space.len() {
            return Err(GradedError::Unsupported(format!(
                "{} charges for {} blocks",
                charges.len(),
                base.space.len()
            )));
        }
        if weights.nvars() != base.nvars() {
            return Err(GradedError::Weights("weights do not match the potential".into()));
        }
        let g = GradedMbf { base, weights, charges };
        g.validate()?;
        Ok(g)
    }

    /// Propagates charges along nonzero differential entries starting from
    /// `anchor` on block 0.
    pub fn infer(base: Mbf, weights: Weights, anchor: Rat) -> Result<Self, GradedError> {
        let n = base.space.len();
        let mut charges: Vec<Option<Rat>> = vec![None; n];
        charges[0] = Some(anchor);
        let mut queue = VecDeque::from([0usize]);
        while let Some(j) = queue.pop_front() {
            let cj = charges[j].clone().expect("queued blocks are charged");
            for i in 0..n {
                for (row, col, forward) in [(i, j, true), (j, i, false)] {
                    if charges[i].is_some() {
                        continue;
                    }
                    let op = base.diff.get(row, col);
                    if op.is_zero() {
                        continue;
                    }
                    let Some(q) = operator_charge(op, &weights, PROBE_DEGREE)? else { continue };
                    // charge(entry) = c_row − c_col + q = 1
                    let one = Rat::one();
                    charges[i] = Some(if forward { &one - &q + &cj } else { &cj - &one + &q });
                    queue.push_back(i);
                }
            }
        }
        let charges = charges
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or(GradedError::Disconnected(i)))
            .collect::<Result<Vec<_>, _>>()?;
        GradedMbf::new(base, weights, charges)
    }

    /// `P_S` for `W = x^d` with the charges of [`charge_matrix_ps`], `j = |S| − 1`.
    pub fn p_s(d: u32, set: &[i64]) -> Result<Self, GradedError> {
        let base = p_s_object(d, set)?;
        let j = u32::try_from(set.len().saturating_sub(1)).expect("small set");
        let (c0, c1) = charge_matrix_ps(d, j);
        GradedMbf::new(base, Weights::monomial(d), vec![c0, c1])
    }

    /// The unit object with its even block 0 at charge 0.
    pub fn unit(potential: &MultiPoly, weights: Weights) -> Result<Self, GradedError> {
        GradedMbf::infer(unit_object(potential)?, weights, Rat::zero())
    }

    pub fn tensor(&self, other: &GradedMbf) -> Result<Self, GradedError> {
        let base = tensor_obj(&self.base, &other.base)?;
        let charges = pair_indices(&self.base.space, &other.base.space)
            .into_iter()
            .map(|(i, j)| &self.charges[i] + &other.charges[j])
            .collect();
        GradedMbf::new(base, self.weights.clone(), charges)
    }

    pub fn conductor(&self) -> u32 {
        self.base.conductor()
    }

    /// Every nonzero differential entry has charge 1.
    pub fn validate(&self) -> Result<(), GradedError> {
        let n = self.base.space.len();
        for row in 0..n {
            for col in 0..n {
                let op = self.base.diff.get(row, col);
                if op.is_zero() {
                    continue;
                }
                let q = operator_charge(op, &self.weights, PROBE_DEGREE)?.unwrap_or_else(Rat::one);
                let total = q + &self.charges[row] - &self.charges[col];
                if !total.is_one() {
                    return Err(GradedError::ChargeViolation { row, col, found: rat_to_string(&total) });
                }
            }
        }
        Ok(())
    }

    pub fn charge_strings(&self) -> Vec<String> {
        self.charges.iter().map(rat_to_string).collect()
    }
}

/// Highest internal degree probed when an operator has no kernel form.
pub const PROBE_DEGREE: u32 = 8;

/// The charge of an operator, `None` when it vanishes on every probe.
/// Kernels are read off their terms; other operators are evaluated on
/// internal monomials of degree ≤ `probe`.
pub fn operator_charge(op: &Operator, weights: &Weights, probe: u32) -> Result<Option<Rat>, NotHomogeneous> {
    let mut found: Option<Rat> = None;
    let mut note = |q: Rat| -> Result<(), NotHomogeneous> {
        match &found {
            None => found = Some(q),
            Some(f) if *f != q => {
                return Err(NotHomogeneous {
                    first: rat_to_string(f),
                    first_at: (0, 0),
                    second: rat_to_string(&q),
                    second_at: (0, 0),
                })
            }
            Some(_) => {}
        }
        Ok(())
    };
    if let Some(k) = op.as_kernel().filter(|k| substitutions_keep_weights(k, weights)) {
        for (_, p) in k.terms() {
            for (m, _) in p.terms() {
                note(weights.of_mono(m))?;
            }
        }
        return Ok(found);
    }
    let s: Shape = op.source();
    let cond = op.conductor().max(1);
    let count = s.internal_vars().len();
    for e in crate::bifact::operator::monomials_up_to(count, if count == 0 { 0 } else { probe }) {
        let input = crate::bifact::operator::internal_monomial(s, &e, cond);
        let w_in = weights.of_exps(&input.terms().next().expect("monomial").0 .0);
        for (m, _) in op.apply(&input).terms() {
            note(weights.of_mono(m) - &w_in)?;
        }
    }
    Ok(found)
}

fn substitutions_keep_weights(k: &Kernel, weights: &Weights) -> bool {
    let n = weights.nvars();
    k.terms().all(|(sub, _)| sub.0.iter().enumerate().all(|(v, (t, _))| weights.0[v % n] == weights.0[t % n]))
}

/// Charge of a morphism between graded objects: `q(entry) + c_t − c_s`,
/// `None` for the zero morphism.
pub fn morphism_charge(
    phi: &Morphism,
    source: &GradedMbf,
    target: &GradedMbf,
) -> Result<Option<Rat>, NotHomogeneous> {
    let mut found: Option<(Rat, (usize, usize))> = None;
    for row in 0..target.base.space.len() {
        for col in 0..source.base.space.len() {
            let op = phi.matrix.get(row, col);
            if op.is_zero() {
                continue;
            }
            let q = operator_charge(op, &source.weights, PROBE_DEGREE).map_err(|e| NotHomogeneous {
                first_at: (row, col),
                second_at: (row, col),
                ..e
            })?;
            let Some(q) = q else { continue };
            let total = q + &target.charges[row] - &source.charges[col];
            match &found {
                None => found = Some((total, (row, col))),
                Some((f, at)) if *f != total => {
                    return Err(NotHomogeneous {
                        first: rat_to_string(f),
                        first_at: *at,
                        second: rat_to_string(&total),
                        second_at: (row, col),
                    })
                }
                Some(_) => {}
            }
        }
    }
    Ok(found.map(|(q, _)| q))
}

/// Serializable summary of a graded object.
#[derive(Clone, Debug, Serialize)]
pub struct GradedReport {
    pub weights: Vec<String>,
    pub charges: Vec<String>,
    pub object: crate::bifact::MbfReport,
}

impl GradedMbf {
    pub fn report(&self) -> GradedReport {
        GradedReport {
            weights: self.weights.as_slice().iter().map(rat_to_string).collect(),
            charges: self.charge_strings(),
            object: self.base.report(),
        }
    }
}

/// Entry polynomials of a 2-slot object whose differential is polynomial.
pub(crate) fn poly_diff(d: &Mbf) -> Result<Vec<Vec<MultiPoly>>, GradedError> {
    if d.space.blocks().iter().any(|b| b.shape.slots != 2) {
        return Err(GradedError::Unsupported("Hom spaces need 2-slot objects".into()));
    }
    d.diff
        .as_poly_entries()
        .ok_or_else(|| GradedError::Unsupported("differential entries must be polynomials".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ps_charges_match_the_formula() {
        assert_eq!(charge_matrix_ps(4, 1), (rat(-1, 4), rat(-1, 4)));
        assert_eq!(charge_matrix_ps(5, 0), (rat(0, 1), rat(-3, 5)));
    }

    #[test]
    fn weighted_monomials() {
        let w = Weights::monomial(4);
        // weight 1/2 per variable, degree 1 in two variables: a², ab, b²
        assert_eq!(w.monomials_of_degree(2, &rat(1, 1)).len(), 3);
        assert!(w.monomials_of_degree(2, &rat(1, 3)).is_empty());
        assert!(w.monomials_of_degree(2, &rat(-1, 2)).is_empty());
    }

    #[test]
    fn inferred_unit_charges() {
        let d = 5;
        let w = MultiPoly::var(1, d, 0).pow(d);
        let unit = GradedMbf::unit(&w, Weights::monomial(d)).unwrap();
        assert_eq!(unit.charges, vec![rat(0, 1), rat(-3, 5)]);
    }
}
