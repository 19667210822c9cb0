//! Pentagon equations for the su(2)_k and u(1)_{2N} fusing data.
//!
//! With `F^{(ijk)l}_{pq}` defined by
//! `λ_{ip}(id⊗λ_{jk}^p)α = Σ_q F_{pq} λ_{qk}(λ_{ij}^q⊗id)`, comparing the two
//! paths from `((ab)c)d` to `a(b(cd))` gives, for every `e, p, q, s, t`,
//!
//! `F^{(abq)e}_{pt} F^{(tcd)e}_{qs} = Σ_u F^{(bcd)p}_{qu} F^{(aud)e}_{ps} F^{(abc)s}_{ut}`.

use mbf_core::exactalg::Real;
use rayon::prelude::*;
use serde::Serialize;

use crate::real_string;
use crate::su2::{admissible, fusion_channels, FusingTable};
use crate::u1::{u1_fusing, U1Label};

#[derive(Clone, Debug, Serialize)]
pub struct PentagonReport {
    pub k: u32,
    pub precision: u32,
    pub equations: usize,
    #[serde(serialize_with = "real_string")]
    pub max_residual: Real,
    /// Largest residual among equations with a unit among `a, b, c, d`;
    /// zero exactly, since unit entries are exact.
    #[serde(serialize_with = "real_string")]
    pub unit_residual: Real,
}

fn max_real(a: Real, b: Real) -> Real {
    if b.cmp_value(&a).is_gt() {
        b
    } else {
        a
    }
}

/// Max residual over every pentagon equation with outer labels
/// `a, b, c, d, e` drawn from `sample` (all labels when `None`).
pub fn pentagon_check(k: u32, sample: Option<&[u32]>, prec: u32) -> PentagonReport {
    let table = FusingTable::new(k, prec);
    let labels: Vec<u32> = match sample {
        Some(s) => s.iter().copied().filter(|&l| l <= k).collect(),
        None => (0..=k).collect(),
    };
    let zero = || Real::zero(prec);
    let per_a: Vec<(usize, Real, Real)> = labels
        .par_iter()
        .map(|&a| {
            let (mut n, mut worst, mut unit) = (0usize, zero(), zero());
            let f = |r, s, t, u, p, q| table.get(r, s, t, u, p, q);
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        for &e in &labels {
                            for q in fusion_channels(k, c, d) {
                                for p in fusion_channels(k, b, q).filter(|&p| admissible(k, a, p, e)) {
                                    for t in fusion_channels(k, a, b) {
                                        for s in fusion_channels(k, t, c).filter(|&s| admissible(k, s, d, e)) {
                                            let lhs = match (f(a, b, q, e, p, t), f(t, c, d, e, q, s)) {
                                                (Some(x), Some(y)) => x.mul(y),
                                                _ => zero(),
                                            };
                                            let mut rhs = zero();
                                            for u in fusion_channels(k, b, c) {
                                                if let (Some(x), Some(y), Some(z)) =
                                                    (f(b, c, d, p, q, u), f(a, u, d, e, p, s), f(a, b, c, s, u, t))
                                                {
                                                    rhs = rhs.add(&x.mul(y).mul(z));
                                                }
                                            }
                                            let r = lhs.sub(&rhs).abs();
                                            if [a, b, c, d].contains(&0) {
                                                unit = max_real(unit, r.clone());
                                            }
                                            worst = max_real(worst, r);
                                            n += 1;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            (n, worst, unit)
        })
        .collect();
    let (equations, max_residual, unit_residual) =
        per_a.into_iter().fold((0, zero(), zero()), |(n, w, u), (n2, w2, u2)| (n + n2, max_real(w, w2), max_real(u, u2)));
    PentagonReport { k, precision: prec, equations, max_residual, unit_residual }
}

/// Number of `(a, b, c, d)` in `ℤ_{2N}⁴` violating the cocycle identity
/// `F(b,c,d) F(a,b+c,d) F(a,b,c) = F(a+b,c,d) F(a,b,c+d)`.
pub fn u1_cocycle_check(n: u32) -> usize {
    let l = |m: i64| U1Label::new(n, m);
    let range = 0..2 * i64::from(n);
    let mut bad = 0;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    let lhs = u1_fusing(l(b), l(c), l(d)) * u1_fusing(l(a), l(b + c), l(d)) * u1_fusing(l(a), l(b), l(c));
                    let rhs = u1_fusing(l(a + b), l(c), l(d)) * u1_fusing(l(a), l(b), l(c + d));
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_pentagon() {
        let r = pentagon_check(1, None, 128);
        assert!(r.equations > 0);
        assert!(r.max_residual.close_to(&Real::zero(128), 1e-25), "{r:?}");
        assert!(r.unit_residual.is_zero());
    }

    #[test]
    fn u1_signs_form_a_cocycle() {
        for n in 1..=6 {
            assert_eq!(u1_cocycle_check(n), 0, "N = {n}");
        }
    }
}
