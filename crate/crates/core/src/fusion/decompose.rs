//! Splitting a finite-rank factorisation of `a^d − b^d` into `P_S` summands.
//!
//! The differential is kept as one square matrix `M` of polynomials in
//! `(a, b)` with `M² = W`. Two moves change it up to isomorphism:
//!
//! * a constant entry `c` from block `j` to block `i` is an isomorphism of a
//!   contractible summand, and Gaussian elimination drops `i` and `j` with
//!   `M′ = M − M_{·j} c⁻¹ M_{i·}`;
//! * an entry `p` dividing the rest of its row and column is isolated by
//!   basis changes, after which `M² = W` forces `{i, j}` to split off.
//!
//! A rank-one summand is `P_S` for `S` read off from the linear factors of its
//! odd-to-even entry.

use std::fmt;

use serde::Serialize;

use super::FusionError;
use crate::bifact::Mbf;
use crate::exactalg::Cyclo;
use crate::polycalc::{p_s, MultiPoly, VarNames};

fn show(p: &MultiPoly) -> String {
    VarNames::slots(2, 1).render(p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summand {
    /// `S`, sorted.
    pub set: Vec<i64>,
    /// `d₁ = unit · p_S`.
    pub unit: Cyclo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub d: u32,
    /// Summands sorted by `(|S|, S)`.
    pub summands: Vec<Summand>,
    /// Contractible pairs removed by Gaussian elimination.
    pub stripped: usize,
}

impl Decomposition {
    pub fn sets(&self) -> Vec<Vec<i64>> {
        self.summands.iter().map(|s| s.set.clone()).collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = self
            .summands
            .iter()
            .map(|s| format!("P{{{}}}", s.set.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", names.join(" ⊕ "))
    }
}

/// Square polynomial matrix with block parities; `rows[i][j]` maps block `j`
/// into block `i`.
struct Work {
    parity: Vec<u8>,
    rows: Vec<Vec<MultiPoly>>,
}

impl Work {
    fn len(&self) -> usize {
        self.parity.len()
    }

    fn remove(&mut self, i: usize, j: usize) {
        let (hi, lo) = (i.max(j), i.min(j));
        for k in [hi, lo] {
            self.parity.remove(k);
            self.rows.remove(k);
            for r in &mut self.rows {
                r.remove(k);
            }
        }
    }

    fn find_constant(&self) -> Option<(usize, usize, Cyclo)> {
        (0..self.len())
            .flat_map(|i| (0..self.len()).map(move |j| (i, j)))
            .find_map(|(i, j)| self.rows[i][j].as_constant().filter(|c| !c.is_zero()).map(|c| (i, j, c)))
    }

    fn eliminate(&mut self, i: usize, j: usize, c: &Cyclo) {
        let inv = c.inv().expect("nonzero constant");
        let n = self.len();
        let col: Vec<MultiPoly> = (0..n).map(|k| self.rows[k][j].scale(&inv)).collect();
        let row = self.rows[i].clone();
        for (k, ck) in col.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (l, rl) in row.iter().enumerate() {
                if !rl.is_zero() {
                    self.rows[k][l] = &self.rows[k][l] - &(ck * rl);
                }
            }
        }
        self.remove(i, j);
    }

    /// Clears row `i` and column `j` around the pivot `rows[i][j]`, or
    /// returns `false` when the pivot does not divide them.
    fn isolate(&mut self, i: usize, j: usize) -> bool {
        let n = self.len();
        let p = self.rows[i][j].clone();
        let mut row_q = vec![];
        for l in (0..n).filter(|&l| l != j && !self.rows[i][l].is_zero()) {
            match self.rows[i][l].exact_divide(&p) {
                Ok(q) => row_q.push((l, q)),
                Err(_) => return false,
            }
        }
        let mut col_r = vec![];
        for k in (0..n).filter(|&k| k != i && !self.rows[k][j].is_zero()) {
            match self.rows[k][j].exact_divide(&p) {
                Ok(r) => col_r.push((k, r)),
                Err(_) => return false,
            }
        }
        // e_l ↦ e_l − q e_j: column l −= q·column j, then row j += q·row l.
        for (l, q) in row_q {
            for k in 0..n {
                let t = &self.rows[k][l] - &(&q * &self.rows[k][j]);
                self.rows[k][l] = t;
            }
            for m in 0..n {
                let t = &self.rows[j][m] + &(&q * &self.rows[l][m]);
                self.rows[j][m] = t;
            }
        }
        // Row k −= r·row i, then column i += r·column k.
        for (k, r) in col_r {
            for m in 0..n {
                let t = &self.rows[k][m] - &(&r * &self.rows[i][m]);
                self.rows[k][m] = t;
            }
            for m in 0..n {
                let t = &self.rows[m][i] + &(&r * &self.rows[m][k]);
                self.rows[m][i] = t;
            }
        }
        true
    }

    fn describe(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|p| if p.is_zero() { "0".into() } else { show(p) }).collect();
            s.push_str(&format!("[{}] {}\n", self.parity[i], cells.join(" | ")));
        }
        s
    }
}

/// `S` with `f = unit · p_S(a, b)`, by trial division by `a − η^i b`.
fn linear_factors(d: u32, f: &MultiPoly) -> Result<Summand, FusionError> {
    let mut rest = f.clone();
    let mut set = vec![];
    for i in 0..i64::from(d) {
        let lin = p_s(d, &[i], 2, 0, 1)?;
        if let Ok(q) = rest.exact_divide(&lin) {
            set.push(i);
            rest = q;
        }
    }
    match rest.as_constant() {
        Some(unit) if !unit.is_zero() && !set.is_empty() => Ok(Summand { set, unit }),
        _ => Err(FusionError::Indecomposable(format!("{} is not a product of distinct factors a − η^i b", show(f)))),
    }
}

/// Splits a one-variable 2-slot factorisation of `a^d − b^d` into `P_S`
/// summands.
pub fn decompose_into_ps(mbf: &Mbf) -> Result<Decomposition, FusionError> {
    let deg = mbf.potential.degree().unwrap_or(0);
    let d = mbf.conductor();
    if mbf.nvars() != 1 || deg != d || mbf.potential.len() != 1 {
        return Err(FusionError::Precondition("expected W = x^d with entries over Q(η_d)".into()));
    }
    let rows = mbf
        .diff
        .as_poly_entries()
        .ok_or_else(|| FusionError::Precondition("entries must be polynomial multiplications".into()))?;
    let parity = (0..mbf.space.len()).map(|i| mbf.space.parity(i)).collect();
    let mut w = Work { parity, rows };
    let full = p_s(d, &(0..i64::from(d)).collect::<Vec<_>>(), 2, 0, 1)?;

    let mut stripped = 0;
    while let Some((i, j, c)) = w.find_constant() {
        w.eliminate(i, j, &c);
        stripped += 1;
    }

    let mut summands = vec![];
    while w.len() > 0 {
        let mut pivots: Vec<(u32, usize, usize)> = (0..w.len())
            .flat_map(|i| (0..w.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| !w.rows[i][j].is_zero())
            .map(|(i, j)| (w.rows[i][j].degree().unwrap_or(0), i, j))
            .collect();
        pivots.sort_unstable();
        let Some(&(_, i, j)) = pivots.iter().find(|&&(_, i, j)| w.isolate(i, j)) else {
            return Err(FusionError::Indecomposable(w.describe()));
        };
        let (even, odd) = if w.parity[i] == 0 { (i, j) } else { (j, i) };
        let (d1, d0) = (&w.rows[even][odd], &w.rows[odd][even]);
        if d1 * d0 != full {
            return Err(FusionError::Indecomposable(format!("block d₁·d₀ = {} ≠ a^d − b^d", show(&(d1 * d0)))));
        }
        summands.push(linear_factors(d, d1)?);
        w.remove(i, j);
    }
    summands.sort_by(|x, y| (x.set.len(), &x.set).cmp(&(y.set.len(), &y.set)));
    Ok(Decomposition { d, summands, stripped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifact::p_s_object;
    use crate::fusion::{reduce_tensor, PsObject};

    fn fuse(d: u32, s: &[i64], t: &[i64]) -> Vec<Vec<i64>> {
        let r = reduce_tensor(&PsObject::new(d, s).unwrap(), &PsObject::new(d, t).unwrap()).unwrap();
        decompose_into_ps(&r.reduced.base).unwrap().sets()
    }

    #[test]
    fn single_objects_are_recognised() {
        let d = 5;
        let dec = decompose_into_ps(&p_s_object(d, &[1, 3]).unwrap()).unwrap();
        assert_eq!(dec.sets(), vec![vec![1, 3]]);
        assert_eq!(dec.to_string(), "P{1,3}");
    }

    #[test]
    fn group_like_products() {
        assert_eq!(fuse(3, &[0], &[1]), vec![vec![1]]);
        assert_eq!(fuse(5, &[2], &[4]), vec![vec![1]]);
    }

    #[test]
    fn doublet_squared_splits_in_two() {
        assert_eq!(fuse(5, &[0, 1], &[0, 1]), vec![vec![1], vec![0, 1, 2]]);
        assert_eq!(fuse(4, &[0, 1], &[1]), vec![vec![1, 2]]);
    }
}
