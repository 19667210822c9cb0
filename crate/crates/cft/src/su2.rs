//! su(2)_k: q-numbers, the quantum 6j-symbol in fusing-matrix normalisation,
//! and the twist and braiding.
//!
//! Spins are carried doubled ([`Spin`]), so the su(2)_k label `l ∈ 0..=k`
//! is `Spin(l)` and every triad sum is an integer check on `u32`s.

use std::collections::HashMap;

use mbf_core::exactalg::{Complex, Rat, Real};
use serde::Serialize;

use crate::{real_string, CftError};

/// Twice an su(2) spin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Spin(pub u32);

/// An integrable su(2)_k label `l ∈ 0..=k` (spin `l/2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Su2Label {
    pub k: u32,
    pub l: u32,
}

impl Su2Label {
    pub fn new(k: u32, l: i64) -> Result<Self, CftError> {
        if !(0..=i64::from(k)).contains(&l) {
            return Err(CftError::Range { label: l, max: i64::from(k) });
        }
        Ok(Su2Label { k, l: l as u32 })
    }

    pub fn spin(self) -> Spin {
        Spin(self.l)
    }
}

/// `[n] = sin(πn/(k+2)) / sin(π/(k+2))`.
pub fn qnum(k: u32, n: i64, prec: u32) -> Real {
    let h = i64::from(k) + 2;
    Real::sin_pi(&Rat::new(n.into(), h.into()), prec).div(&Real::sin_pi(&Rat::new(1.into(), h.into()), prec))
}

/// Triangle rule with level truncation, on doubled spins.
pub fn admissible(k: u32, a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && c >= a.abs_diff(b) && c <= a + b && a + b + c <= 2 * k
}

/// Labels `w` with `(u, v, w)` admissible.
pub fn fusion_channels(k: u32, u: u32, v: u32) -> impl Iterator<Item = u32> {
    let hi = (u + v).min((2 * k).saturating_sub(u + v));
    (u.abs_diff(v)..=hi).step_by(2).filter(move |&w| admissible(k, u, v, w))
}

#[derive(Clone, Debug, Serialize)]
pub struct SixJValue {
    pub k: u32,
    /// `(a, b, e, d, c, f)` as doubled spins.
    pub spins: [Spin; 6],
    pub admissible: bool,
    #[serde(serialize_with = "real_string")]
    pub value: Real,
}

/// Level-`k` data at one precision: q-factorials `[0]! … [2k+2]!`.
#[derive(Clone, Debug)]
pub struct Su2Level {
    pub k: u32,
    pub prec: u32,
    qfact: Vec<Real>,
}

impl Su2Level {
    pub fn new(k: u32, prec: u32) -> Self {
        let mut qfact = vec![Real::from_i64(1, prec)];
        for n in 1..=(2 * i64::from(k) + 2) {
            let next = qfact.last().expect("nonempty").mul(&qnum(k, n, prec));
            qfact.push(next);
        }
        Su2Level { k, prec, qfact }
    }

    fn fact(&self, n: u32) -> &Real {
        &self.qfact[n as usize]
    }

    /// `Δ(a,b,c)` on doubled spins of an admissible triad.
    fn delta(&self, a: u32, b: u32, c: u32) -> Real {
        let num = self.fact((b + c - a) / 2).mul(self.fact((a + c - b) / 2)).mul(self.fact((a + b - c) / 2));
        num.div(self.fact((a + b + c) / 2 + 1)).sqrt()
    }

    fn triads_ok(&self, [a, b, e, d, c, f]: [u32; 6]) -> bool {
        let k = self.k;
        admissible(k, a, b, e) && admissible(k, a, c, f) && admissible(k, c, d, e) && admissible(k, b, d, f)
    }

    /// The tetrahedrally symmetric part: the four Δ's times the alternating
    /// z-sum. `None` off the admissible set.
    pub fn racah_wigner(&self, spins: [Spin; 6]) -> Option<Real> {
        let s = spins.map(|x| x.0);
        if !self.triads_ok(s) {
            return None;
        }
        let [a, b, e, d, c, f] = s;
        let tri = [(a + b + e) / 2, (a + c + f) / 2, (b + d + f) / 2, (c + d + e) / 2];
        let quad = [(a + b + c + d) / 2, (a + d + e + f) / 2, (b + c + e + f) / 2];
        let lo = *tri.iter().max().expect("four triads");
        let hi = *quad.iter().min().expect("three quads");
        let mut sum = Real::zero(self.prec);
        for z in lo..=hi {
            let mut den = Real::from_i64(1, self.prec);
            for t in tri {
                den = den.mul(self.fact(z - t));
            }
            for q in quad {
                den = den.mul(self.fact(q - z));
            }
            let term = self.fact(z + 1).div(&den);
            sum = if z % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        }
        let deltas = self.delta(a, b, e).mul(&self.delta(a, c, f)).mul(&self.delta(c, e, d)).mul(&self.delta(d, b, f));
        Some(deltas.mul(&sum))
    }

    /// `{a b e; d c f}` with the sign `(−1)^{a+b−c−d−2e}` and the factor
    /// `√([2e+1][2f+1])`; zero and flagged when inadmissible.
    pub fn sixj(&self, spins: [Spin; 6]) -> SixJValue {
        let Some(core) = self.racah_wigner(spins) else {
            return SixJValue { k: self.k, spins, admissible: false, value: Real::zero(self.prec) };
        };
        let [a, b, e, d, c, f] = spins.map(|x| i64::from(x.0));
        let norm = qnum(self.k, e + 1, self.prec).mul(&qnum(self.k, f + 1, self.prec)).sqrt();
        let v = core.mul(&norm);
        let value = if ((a + b - c - d - 2 * e) / 2).rem_euclid(2) == 1 { v.neg() } else { v };
        SixJValue { k: self.k, spins, admissible: true, value }
    }

    /// `F^{(rst)u}_{pq} = {t/2 s/2 p/2; r/2 u/2 q/2}` on su(2)_k labels;
    /// `None` when the four vertices are not all admissible.
    ///
    /// A unit among `r, s, t` gives exactly 1: the formula reduces to
    /// `(−1)^{2(a+b−c)}` there, so the shortcut only removes rounding.
    pub fn fusing(&self, r: u32, s: u32, t: u32, u: u32, p: u32, q: u32) -> Option<Real> {
        let spins = [Spin(t), Spin(s), Spin(p), Spin(r), Spin(u), Spin(q)];
        if !self.triads_ok(spins.map(|x| x.0)) {
            return None;
        }
        if r == 0 || s == 0 || t == 0 {
            return Some(Real::from_i64(1, self.prec));
        }
        Some(self.sixj(spins).value)
    }

    /// Conformal weight `Δ_n = n(n+2)/(4k+8)`.
    pub fn weight(&self, n: u32) -> Rat {
        let n = i64::from(n);
        Rat::new((n * (n + 2)).into(), (4 * i64::from(self.k) + 8).into())
    }

    /// `θ_r = exp(−2πi Δ_r)`.
    pub fn theta(&self, r: u32) -> Complex {
        let x = -self.weight(r) * Rat::from_integer(2.into());
        Complex::new(Real::cos_pi(&x, self.prec), Real::sin_pi(&x, self.prec))
    }

    /// `R^{(rs)t} = (−1)^{(r+s−t)/2} exp(−πi(Δ_t − Δ_r − Δ_s))`.
    pub fn braiding(&self, r: u32, s: u32, t: u32) -> Option<Complex> {
        if !admissible(self.k, r, s, t) {
            return None;
        }
        let x = -(self.weight(t) - self.weight(r) - self.weight(s));
        let z = Complex::new(Real::cos_pi(&x, self.prec), Real::sin_pi(&x, self.prec));
        Some(if ((r + s - t) / 2) % 2 == 1 { Complex::new(z.re.neg(), z.im.neg()) } else { z })
    }
}

/// One-off evaluation; use [`Su2Level`] or [`FusingTable`] for sweeps.
pub fn sixj(k: u32, spins: [Spin; 6], prec: u32) -> SixJValue {
    Su2Level::new(k, prec).sixj(spins)
}

/// Every admissible `F^{(rst)u}_{pq}` at one level, keyed by `[r,s,t,u,p,q]`.
#[derive(Clone, Debug)]
pub struct FusingTable {
    pub level: Su2Level,
    entries: HashMap<[u32; 6], Real>,
}

impl FusingTable {
    pub fn new(k: u32, prec: u32) -> Self {
        let level = Su2Level::new(k, prec);
        let mut entries = HashMap::new();
        for r in 0..=k {
            for s in 0..=k {
                for t in 0..=k {
                    for p in fusion_channels(k, s, t) {
                        for u in fusion_channels(k, r, p) {
                            for q in fusion_channels(k, r, s).filter(|&q| admissible(k, q, t, u)) {
                                let v = level.fusing(r, s, t, u, p, q).expect("admissible by construction");
                                entries.insert([r, s, t, u, p, q], v);
                            }
                        }
                    }
                }
            }
        }
        FusingTable { level, entries }
    }

    pub fn k(&self) -> u32 {
        self.level.k
    }

    pub fn get(&self, r: u32, s: u32, t: u32, u: u32, p: u32, q: u32) -> Option<&Real> {
        self.entries.get(&[r, s, t, u, p, q])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn q_numbers() {
        assert!(qnum(3, 1, P).close_to(&Real::from_i64(1, P), 1e-35));
        assert!(qnum(2, 2, P).close_to(&Real::from_i64(2, P).sqrt(), 1e-35));
        assert!(qnum(5, 7, P).is_zero());
    }

    #[test]
    fn unit_constraint_is_numerically_one() {
        // The shortcut in `fusing` must agree with the formula.
        let k = 4;
        let lv = Su2Level::new(k, P);
        let one = Real::from_i64(1, P);
        for a in 0..=k {
            for b in 0..=k {
                for c in fusion_channels(k, a, b) {
                    // (0 b c) c, p = c, q = b
                    for v in [
                        lv.sixj([Spin(c), Spin(b), Spin(c), Spin(0), Spin(c), Spin(b)]),
                        lv.sixj([Spin(c), Spin(0), Spin(c), Spin(a), Spin(b), Spin(a)]),
                        lv.sixj([Spin(0), Spin(b), Spin(b), Spin(a), Spin(c), Spin(c)]),
                    ] {
                        if v.admissible {
                            assert!(v.value.close_to(&one, 1e-30), "{:?}", v.spins);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn inadmissible_is_flagged_zero() {
        let v = sixj(2, [Spin(1), Spin(1), Spin(1), Spin(1), Spin(1), Spin(1)], P);
        assert!(!v.admissible && v.value.is_zero());
    }

    #[test]
    fn braiding_with_the_unit_is_trivial() {
        let lv = Su2Level::new(3, P);
        let one = Real::from_i64(1, P);
        for s in 0..=3 {
            let r = lv.braiding(0, s, s).unwrap();
            assert!(r.re.close_to(&one, 1e-30) && r.im.close_to(&Real::zero(P), 1e-30));
        }
        assert!(lv.theta(0).re.close_to(&one, 0.0));
    }
}
