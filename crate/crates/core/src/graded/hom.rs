//! Hom spaces in the homotopy category between 2-slot objects, one charge
//! sector at a time.
//!
//! In a sector of charge `q` every entry of an even map is a weighted
//! homogeneous polynomial of degree `q − c_t + c_s`, so the sector is a
//! finite-dimensional vector space. Closed maps are the kernel of δ there;
//! exact maps are the δ-image of the odd sector of charge `q − 1`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use serde::Serialize;

use super::{morphism_charge, poly_diff, GradedError, GradedMbf};
use crate::bifact::{Mbf, Morphism, MorphismReport, OpMatrix, Operator};
use crate::exactalg::linear::{kernel, Echelon, SparseVec};
use crate::exactalg::rat::rat_to_string;
use crate::exactalg::{Cyclo, Rat};
use crate::polycalc::{Mono, MultiPoly};

/// Entry position and monomial of one coordinate of a morphism.
type Coord = (usize, usize, Mono);

/// Assigns dense indices to coordinates on first use.
#[derive(Default)]
struct Interner(BTreeMap<Coord, usize>);

impl Interner {
    fn index(&mut self, key: Coord) -> usize {
        let next = self.0.len();
        *self.0.entry(key).or_insert(next)
    }

    fn add_poly(&mut self, v: &mut SparseVec, row: usize, col: usize, p: &MultiPoly, sign: &Cyclo) {
        for (m, c) in p.terms() {
            let k = self.index((row, col, m.clone()));
            let t = c * sign;
            let e = v.entry(k).or_insert_with(|| Cyclo::zero(sign.conductor()));
            *e += &t;
            if e.is_zero() {
                v.remove(&k);
            }
        }
    }
}

/// All maps of one parity and charge: one unknown per allowed monomial.
struct Ansatz {
    parity: u8,
    unknowns: Vec<Coord>,
}

impl Ansatz {
    fn new(source: &GradedMbf, target: &GradedMbf, parity: u8, charge: &Rat) -> Self {
        let count = 2 * source.base.nvars();
        let (ss, ts) = (&source.base.space, &target.base.space);
        let mut unknowns = vec![];
        for row in 0..ts.len() {
            for col in 0..ss.len() {
                if (ts.parity(row) + ss.parity(col)) % 2 != parity {
                    continue;
                }
                let deg = charge - &target.charges[row] + &source.charges[col];
                for m in source.weights.monomials_of_degree(count, &deg) {
                    unknowns.push((row, col, m));
                }
            }
        }
        Ansatz { parity, unknowns }
    }
}

/// Polynomial differentials of the two endpoints.
struct Endpoints {
    d_src: Vec<Vec<MultiPoly>>,
    d_tgt: Vec<Vec<MultiPoly>>,
    nvars: usize,
    conductor: u32,
}

impl Endpoints {
    fn new(source: &GradedMbf, target: &GradedMbf) -> Result<Self, GradedError> {
        if source.base.potential != target.base.potential {
            return Err(crate::bifact::BifactError::Potential.into());
        }
        Ok(Endpoints {
            d_src: poly_diff(&source.base)?,
            d_tgt: poly_diff(&target.base)?,
            nvars: 2 * source.base.nvars(),
            conductor: source.conductor(),
        })
    }

    /// `δE = D′E − (−1)^p E D` for the elementary map `E = m` at `(row, col)`.
    fn delta_unit(&self, parity: u8, (row, col, m): &Coord, coords: &mut Interner) -> SparseVec {
        let mono = MultiPoly::term(m.clone(), Cyclo::one(self.conductor));
        let one = Cyclo::one(self.conductor);
        let sign = if parity == 0 { -Cyclo::one(self.conductor) } else { one.clone() };
        let mut v = SparseVec::new();
        for (k, dk) in self.d_tgt.iter().enumerate() {
            let e = &dk[*row];
            if !e.is_zero() {
                coords.add_poly(&mut v, k, *col, &(e * &mono), &one);
            }
        }
        for (l, e) in self.d_src[*col].iter().enumerate() {
            if !e.is_zero() {
                coords.add_poly(&mut v, *row, l, &(&mono * e), &sign);
            }
        }
        v
    }

    fn morphism(&self, source: &Mbf, target: &Mbf, parity: u8, ansatz: &[Coord], x: &SparseVec) -> Morphism {
        let mut entries: BTreeMap<(usize, usize), MultiPoly> = BTreeMap::new();
        for (k, c) in x {
            let (row, col, m) = &ansatz[*k];
            let e = entries.entry((*row, *col)).or_insert_with(|| MultiPoly::zero(self.nvars, self.conductor));
            e.add_term(m.clone(), c);
        }
        let mut matrix = OpMatrix::zero(&source.space, &target.space, self.conductor);
        for ((row, col), p) in entries {
            let shape = source.space.block(col).shape;
            matrix.set(row, col, Operator::mul_poly(shape, p));
        }
        Morphism { parity, matrix }
    }
}

/// Cohomology of one charge sector.
#[derive(Clone, Debug)]
pub struct HomSector {
    pub charge: Rat,
    /// Closed even maps before the quotient.
    pub closed_dim: usize,
    /// Rank of the δ-image of the odd sector.
    pub exact_dim: usize,
    pub basis: Vec<Morphism>,
}

impl HomSector {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, Default)]
pub struct HomBasis {
    pub sectors: Vec<HomSector>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.sectors.iter().map(HomSector::dim).sum()
    }

    /// Charges with multiplicity, ascending.
    pub fn charge_multiset(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> =
            self.sectors.iter().flat_map(|s| std::iter::repeat_n(s.charge.clone(), s.dim())).collect();
        out.sort();
        out
    }

    pub fn report(&self, source: &str, target: &str) -> HomReport {
        HomReport {
            source: source.into(),
            target: target.into(),
            dim: self.dim(),
            sectors: self
                .sectors
                .iter()
                .filter(|s| s.dim() > 0)
                .map(|s| SectorReport {
                    charge: rat_to_string(&s.charge),
                    dim: s.dim(),
                    closed_dim: s.closed_dim,
                    exact_dim: s.exact_dim,
                    basis: s.basis.iter().map(Morphism::report).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub source: String,
    pub target: String,
    pub dim: usize,
    pub sectors: Vec<SectorReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorReport {
    pub charge: String,
    pub dim: usize,
    pub closed_dim: usize,
    pub exact_dim: usize,
    pub basis: Vec<MorphismReport>,
}

/// Degree bound used to list the candidate charges of `--all`: entries of
/// total degree up to twice the degree of `W`.
fn candidate_charges(source: &GradedMbf, target: &GradedMbf) -> BTreeSet<Rat> {
    let bound = 2 * source.base.potential.degree().unwrap_or(2);
    let count = 2 * source.base.nvars();
    let (ss, ts) = (&source.base.space, &target.base.space);
    let weights: BTreeSet<Rat> = crate::bifact::operator::monomials_up_to(count, bound)
        .iter()
        .map(|e| source.weights.of_exps(e))
        .collect();
    let mut out = BTreeSet::new();
    for row in 0..ts.len() {
        for col in 0..ss.len() {
            if ts.parity(row) == ss.parity(col) {
                for w in &weights {
                    out.insert(w + &target.charges[row] - &source.charges[col]);
                }
            }
        }
    }
    out
}

/// Zeroth δ-cohomology between two graded 2-slot objects, either in one
/// charge sector or (for `None`) in every sector that can carry classes.
pub fn hom_space(source: &GradedMbf, target: &GradedMbf, charge: Option<&Rat>) -> Result<HomBasis, GradedError> {
    let ends = Endpoints::new(source, target)?;
    let charges: Vec<Rat> = match charge {
        Some(q) => vec![q.clone()],
        None => candidate_charges(source, target).into_iter().collect(),
    };
    let mut sectors = vec![];
    for q in charges {
        let s = sector(&ends, source, target, &q)?;
        if charge.is_some() || s.dim() > 0 {
            sectors.push(s);
        }
    }
    Ok(HomBasis { sectors })
}

fn sector(ends: &Endpoints, source: &GradedMbf, target: &GradedMbf, q: &Rat) -> Result<HomSector, GradedError> {
    let cond = ends.conductor;
    let even = Ansatz::new(source, target, 0, q);
    let odd = Ansatz::new(source, target, 1, &(q - Rat::one()));
    let mut image = Interner::default();
    let columns: Vec<SparseVec> = even.unknowns.iter().map(|u| ends.delta_unit(0, u, &mut image)).collect();
    let closed = kernel(&columns, cond);

    // Exact maps, written in the coordinates of the even unknowns.
    let position: BTreeMap<&Coord, usize> = even.unknowns.iter().enumerate().map(|(k, u)| (u, k)).collect();
    let mut scratch = Interner::default();
    let mut exact = Echelon::new(cond);
    for u in &odd.unknowns {
        let v = ends.delta_unit(odd.parity, u, &mut scratch);
        let keys: BTreeMap<usize, &Coord> = scratch.0.iter().map(|(c, k)| (*k, c)).collect();
        let mut w = SparseVec::new();
        for (k, c) in v {
            let coord = keys[&k];
            let Some(&pos) = position.get(coord) else {
                return Err(GradedError::Unsupported(format!(
                    "δ of a charge-{} odd map leaves the even ansatz at {coord:?}",
                    rat_to_string(&(q - Rat::one()))
                )));
            };
            w.insert(pos, c);
        }
        let _ = exact.insert(&w);
    }
    let exact_dim = exact.rank();

    let mut classes = exact.clone();
    let mut basis = vec![];
    for v in &closed {
        let (residual, _) = exact.reduce(v);
        if classes.insert(&residual).is_ok() {
            basis.push(ends.morphism(&source.base, &target.base, 0, &even.unknowns, &residual));
        }
    }
    Ok(HomSector { charge: q.clone(), closed_dim: closed.len(), exact_dim, basis })
}

/// A witness `ψ` with `φ = δψ`, or `None` when `φ` is not exact. The search
/// covers every map of the forced charge, so `None` is a proof.
pub fn is_null_homotopic(
    phi: &Morphism,
    source: &GradedMbf,
    target: &GradedMbf,
) -> Result<Option<Morphism>, GradedError> {
    let ends = Endpoints::new(source, target)?;
    let cond = ends.conductor.max(phi.matrix.conductor());
    let parity = 1 - phi.parity;
    let Some(q) = morphism_charge(phi, source, target)? else {
        let zero = OpMatrix::zero(&source.base.space, &target.base.space, cond);
        return Ok(Some(Morphism { parity, matrix: zero }));
    };
    let entries = phi
        .matrix
        .as_poly_entries()
        .ok_or_else(|| GradedError::Unsupported("morphism entries must be polynomials".into()))?;
    let ansatz = Ansatz::new(source, target, parity, &(q - Rat::one()));
    let mut coords = Interner::default();
    let mut ech = Echelon::new(cond);
    for u in &ansatz.unknowns {
        let _ = ech.insert(&ends.delta_unit(parity, u, &mut coords));
    }
    let mut want = SparseVec::new();
    let one = Cyclo::one(cond);
    for (row, r) in entries.iter().enumerate() {
        for (col, p) in r.iter().enumerate() {
            coords.add_poly(&mut want, row, col, p, &one);
        }
    }
    Ok(ech.solve(&want).map(|x| ends.morphism(&source.base, &target.base, parity, &ansatz.unknowns, &x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    #[test]
    fn endomorphisms_of_the_unit() {
        for d in 3..=6u32 {
            let unit = GradedMbf::p_s(d, &[0]).unwrap();
            let h = hom_space(&unit, &unit, None).unwrap();
            assert_eq!(h.dim(), d as usize - 1, "d = {d}");
            let expect: Vec<Rat> = (0..=i64::from(d) - 2).map(|i| rat(2 * i, i64::from(d))).collect();
            assert_eq!(h.charge_multiset(), expect);
        }
    }

    #[test]
    fn identity_of_the_unit_is_not_exact() {
        let unit = GradedMbf::p_s(3, &[0]).unwrap();
        let id = Morphism::identity(&unit.base.space, 3);
        assert!(is_null_homotopic(&id, &unit, &unit).unwrap().is_none());
    }
}
