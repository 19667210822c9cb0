//! The 2×2 fusing matrix of `P_{0,1}^{⊗3}` from the junction maps `A_1..A_6`.
//!
//! Both sides of
//!
//! ```text
//! α∘(A_1⊗id)∘A_5 = F̃_00·(id⊗A_1)∘A_3 + F̃_02·(id⊗A_2)∘A_4
//! α∘(A_2⊗id)∘A_6 = F̃_20·(id⊗A_1)∘A_3 + F̃_22·(id⊗A_2)∘A_4
//! ```
//!
//! are 8×2 matrices `P_{1,2} → P_{0,1}⊗(P_{0,1}⊗P_{0,1})`. Positions are
//! numbered by the block order of the left-bracketed product, writing a
//! block by the parities of its three factors:
//!
//! ```text
//! even: 000 110 101 011    odd: 100 010 001 111
//! ```
//!
//! The computation itself runs in the right-bracketed product, whose order
//! is `000 011 110 101 | 100 111 010 001`.
//!
//! Only the entries (1,1), (5,2), (6,2), (7,2) hold on the nose; any one of
//! them fixes `F̃`. The full identity holds up to homotopy, which is checked
//! after transporting both sides to a finite-rank object.

use std::collections::BTreeMap;

use serde::Serialize;

use super::junction::{a_maps, Junction};
use super::reduce::{reduce_right, ReducedTensor};
use super::{FusionError, PsObject};
use crate::bifact::{associator, tensor_mor, Morphism, OpMatrix, Operator};
use crate::exactalg::linear::{Echelon, SparseVec};
use crate::exactalg::Cyclo;
use crate::graded::{is_null_homotopic, GradedMbf};
use crate::polycalc::{Mono, MultiPoly};

/// One-based positions of the entries that hold without homotopy.
pub const DETERMINED_ENTRIES: [(usize, usize); 4] = [(1, 1), (5, 2), (6, 2), (7, 2)];

/// Right-bracketed row (zero-based) of each left-bracketed position.
const ROW_OF_POSITION: [usize; 8] = [0, 2, 3, 1, 4, 6, 7, 5];

fn position_of_row(row: usize) -> usize {
    ROW_OF_POSITION.iter().position(|&r| r == row).expect("eight rows") + 1
}

/// The three composites entering one row of the system.
struct Sides {
    left: [Morphism; 2],
    right: [Morphism; 2],
}

fn sides(d: u32, a: &[Junction]) -> Result<Sides, FusionError> {
    let p01 = &PsObject::new(d, &[0, 1])?.graded.base.space;
    let alpha = associator(p01, p01, p01, d, false);
    let id = Morphism::identity(p01, d);
    let left = |top: &Junction, bottom: &Junction| {
        alpha.compose(&tensor_mor(&top.map, &id)).compose(&bottom.map)
    };
    let right = |inner: &Junction, bottom: &Junction| tensor_mor(&id, &inner.map).compose(&bottom.map);
    Ok(Sides {
        left: [left(&a[0], &a[4]), left(&a[1], &a[5])],
        right: [right(&a[0], &a[2]), right(&a[1], &a[3])],
    })
}

/// Values on `1 ⊗ 1` of the given entries, as one coordinate vector.
fn entry_vector(m: &Morphism, entries: &[(usize, usize)], coords: &mut BTreeMap<(usize, Mono), usize>) -> SparseVec {
    let mut v = SparseVec::new();
    for (k, &(r, c)) in entries.iter().enumerate() {
        let op = m.matrix.get(ROW_OF_POSITION[r - 1], c - 1);
        let one = MultiPoly::one(op.source().vars(), m.matrix.conductor().max(1));
        for (mono, coeff) in op.apply(&one).terms() {
            let next = coords.len();
            let idx = *coords.entry((k, mono.clone())).or_insert(next);
            v.insert(idx, coeff.clone());
        }
    }
    v
}

/// Solves `left = x·right_0 + y·right_1` on the given entries; the solution
/// must exist and be unique.
fn solve_row(left: &Morphism, right: &[Morphism; 2], entries: &[(usize, usize)], d: u32) -> Result<[Cyclo; 2], FusionError> {
    let mut coords = BTreeMap::new();
    let r0 = entry_vector(&right[0], entries, &mut coords);
    let r1 = entry_vector(&right[1], entries, &mut coords);
    let l = entry_vector(left, entries, &mut coords);
    let mut ech = Echelon::new(d);
    if ech.insert(&r0).is_err() || ech.insert(&r1).is_err() {
        return Err(FusionError::BadSystem("underdetermined".into()));
    }
    let x = ech.solve(&l).ok_or_else(|| FusionError::BadSystem("inconsistent".into()))?;
    let get = |k| x.get(&k).cloned().unwrap_or_else(|| Cyclo::zero(d));
    Ok([get(0), get(1)])
}

/// `1/(η+1)·[[−η, η²], [η²+η+1, η²]]`.
pub fn expected_fusing_matrix(d: u32) -> [[Cyclo; 2]; 2] {
    let z = |k| Cyclo::zeta_pow(d, k);
    let s = (&z(1) + &Cyclo::one(d)).inv().expect("η ≠ −1 for d ≥ 3");
    let e2 = &(&z(2) + &z(1)) + &Cyclo::one(d);
    [[-&(&z(1) * &s), &z(2) * &s], [&e2 * &s, &z(2) * &s]]
}

/// `F̃_00 F̃_22 / (F̃_02 F̃_20)`.
pub fn gauge_ratio(f: &[[Cyclo; 2]; 2]) -> Result<Cyclo, FusionError> {
    let den = &f[0][1] * &f[1][0];
    let inv = den.inv().map_err(|_| FusionError::BadSystem("off-diagonal entry vanishes".into()))?;
    Ok(&(&f[0][0] * &f[1][1]) * &inv)
}

#[derive(Clone, Debug, Serialize)]
pub struct FusingReport {
    pub d: u32,
    #[serde(rename = "F")]
    pub f: [[Cyclo; 2]; 2],
    pub determined_entries: Vec<(usize, usize)>,
    pub matches_closed_form: bool,
    pub ratio_exact: Cyclo,
    pub ratio_numeric: f64,
    pub homotopy_entries: Option<Vec<PositionStatus>>,
}

/// Status of one residual position, inherited from its equation.
#[derive(Clone, Debug, Serialize)]
pub struct PositionStatus {
    pub pos: (usize, usize),
    pub row: u8,
    pub status: HomotopyStatus,
}

pub fn solve_fusing_2x2(d: u32) -> Result<FusingReport, FusionError> {
    solve_with_entries(d, &DETERMINED_ENTRIES)
}

/// As [`solve_fusing_2x2`], with the entry list in a caller-chosen order.
pub fn solve_with_entries(d: u32, entries: &[(usize, usize)]) -> Result<FusingReport, FusionError> {
    solve_with_maps(d, &a_maps(d)?, entries)
}

/// As [`solve_with_entries`] for caller-supplied `A_1..A_6`, e.g. rescaled ones.
pub fn solve_with_maps(d: u32, a: &[Junction], entries: &[(usize, usize)]) -> Result<FusingReport, FusionError> {
    if a.len() != 6 {
        return Err(FusionError::Precondition("expected the six maps A_1..A_6".into()));
    }
    let s = sides(d, a)?;
    let f = [solve_row(&s.left[0], &s.right, entries, d)?, solve_row(&s.left[1], &s.right, entries, d)?];
    let ratio = gauge_ratio(&f)?;
    let numeric = ratio.embed(128).to_f64_pair().0;
    Ok(FusingReport {
        d,
        matches_closed_form: f == expected_fusing_matrix(d),
        f,
        determined_entries: entries.to_vec(),
        ratio_exact: ratio,
        ratio_numeric: numeric,
        homotopy_entries: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HomotopyStatus {
    Witness,
    No,
}

/// One of the two equations, after transport to finite rank.
#[derive(Clone, Debug, Serialize)]
pub struct HomotopyEntry {
    /// Row of `F̃` (0 or 2) whose equation this is.
    pub row: u8,
    /// One-based positions where the two sides differ before transport.
    pub residual_positions: Vec<(usize, usize)>,
    pub status: HomotopyStatus,
    /// Number of nonzero entries of the witness found.
    pub witness_entries: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyReport {
    pub d: u32,
    pub entries: Vec<HomotopyEntry>,
    pub all_witnessed: bool,
}

/// Projection `P_{0,1}⊗(P_{0,1}⊗P_{0,1}) → R₂` onto the finite-rank model
/// `R₂ = (P_{0,1}⊗P_{0,1})_red ⊗ P_{0,1}` reduced again.
struct Transport {
    reduced: GradedMbf,
    pi: Morphism,
}

fn transport(d: u32) -> Result<Transport, FusionError> {
    let p01 = PsObject::new(d, &[0, 1])?.graded;
    let inner: ReducedTensor = reduce_right(&p01, &[0, 1], d)?;
    let outer: ReducedTensor = reduce_right(&inner.reduced, &[0, 1], d)?;
    let sp = &p01.base.space;
    let alpha_inv = associator(sp, sp, sp, d, true);
    let pi = outer
        .pi
        .compose(&tensor_mor(&inner.pi, &Morphism::identity(sp, d)))
        .compose(&alpha_inv);
    Ok(Transport { reduced: outer.reduced, pi })
}

/// Replaces every entry between 2-slot blocks by multiplication with its
/// value on `1 ⊗ 1`, which determines a bimodule map of that shape.
fn materialize(m: &Morphism) -> Morphism {
    let cond = m.matrix.conductor();
    let matrix = m.matrix.map(|_, _, op| {
        if op.is_zero() || op.as_kernel().is_some_and(|k| k.as_mul_poly().is_some()) {
            return op.clone();
        }
        let s = op.source();
        debug_assert_eq!((s.slots, op.target().slots), (2, 2));
        Operator::mul_poly(s, op.apply(&MultiPoly::one(s.vars(), cond)))
    });
    Morphism { parity: m.parity, matrix }
}

/// Positions whose entry is nonzero on `1`; the source is 2-slot, so this
/// is where the map itself is nonzero.
fn residual_positions(m: &OpMatrix) -> Vec<(usize, usize)> {
    let cond = m.conductor();
    let mut out = vec![];
    for r in 0..m.target().len() {
        for c in 0..m.source().len() {
            let op = m.get(r, c);
            if !op.apply(&MultiPoly::one(op.source().vars(), cond)).is_zero() {
                out.push((position_of_row(r), c + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Checks both equations up to homotopy with `f` in place of `F̃`.
pub fn verify_with(d: u32, f: &[[Cyclo; 2]; 2]) -> Result<HomotopyReport, FusionError> {
    let a = a_maps(d)?;
    let s = sides(d, &a)?;
    let t = transport(d)?;
    let source = &a[2].source;
    let mut entries = vec![];
    for (k, row) in f.iter().enumerate() {
        let rhs = s.right[0].scale(&row[0]).add(&s.right[1].scale(&row[1]));
        let residual = s.left[k].sub(&rhs);
        let moved = materialize(&t.pi.compose(&residual));
        let witness = is_null_homotopic(&moved, source, &t.reduced)?;
        entries.push(HomotopyEntry {
            row: if k == 0 { 0 } else { 2 },
            residual_positions: residual_positions(&residual.matrix),
            status: if witness.is_some() { HomotopyStatus::Witness } else { HomotopyStatus::No },
            witness_entries: witness.map_or(0, |w| w.matrix.nonzero_count()),
        });
    }
    Ok(HomotopyReport { d, all_witnessed: entries.iter().all(|e| e.status == HomotopyStatus::Witness), entries })
}

/// Solves for `F̃` and checks the full equations in the homotopy category.
pub fn verify_fusing_up_to_homotopy(d: u32) -> Result<(FusingReport, HomotopyReport), FusionError> {
    let mut report = solve_fusing_2x2(d)?;
    let h = verify_with(d, &report.f)?;
    let positions = h
        .entries
        .iter()
        .flat_map(|e| e.residual_positions.iter().map(move |&pos| PositionStatus { pos, row: e.row, status: e.status }))
        .collect();
    report.homotopy_entries = Some(positions);
    Ok((report, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fusing_matrix_for_small_d() {
        for d in 4..=6 {
            let r = solve_fusing_2x2(d).unwrap();
            assert!(r.matches_closed_form, "d = {d}: {:?}", r.f);
        }
    }

    #[test]
    fn each_determined_entry_alone_fixes_the_matrix() {
        for e in DETERMINED_ENTRIES {
            assert!(solve_with_entries(5, &[e]).unwrap().matches_closed_form, "{e:?}");
        }
    }

    #[test]
    fn permuted_entry_order_gives_the_same_matrix() {
        let mut e = DETERMINED_ENTRIES.to_vec();
        e.reverse();
        assert_eq!(solve_with_entries(7, &e).unwrap().f, solve_fusing_2x2(7).unwrap().f);
    }

    #[test]
    fn full_equations_hold_up_to_homotopy() {
        let (report, h) = verify_fusing_up_to_homotopy(5).unwrap();
        assert!(report.matches_closed_form);
        assert!(h.all_witnessed, "{:?}", h.entries);
    }

    #[test]
    fn residual_sits_off_the_determined_entries() {
        let h = verify_with(5, &expected_fusing_matrix(5)).unwrap();
        for e in &h.entries {
            assert!(e.residual_positions.iter().all(|p| !DETERMINED_ENTRIES.contains(p)), "{e:?}");
        }
    }

    #[test]
    fn perturbed_matrix_is_rejected() {
        let mut f = expected_fusing_matrix(5);
        f[0][0] = &f[0][0] + &Cyclo::one(5);
        let h = verify_with(5, &f).unwrap();
        assert_eq!(h.entries[0].status, HomotopyStatus::No);
        assert_eq!(h.entries[1].status, HomotopyStatus::Witness);
    }
}
