//! Fusing matrices of the N=2 model at `s = 0`, where they factor as the
//! su(2)_{d−2} 6j-symbol times the u(1)_{2d} sign, and the basis-rescaling
//! law of the 2×2 example.

use mbf_core::exactalg::{Complex, Rat, Real};
use serde::{Serialize, Serializer};

use crate::su2::Su2Level;
use crate::u1::{u1_fusing, U1Label};
use crate::{decimal_digits, real_string, CftError};

pub type Matrix2 = [[Real; 2]; 2];
pub type ComplexMatrix2 = [[Complex; 2]; 2];

fn matrix_strings<S: Serializer>(m: &Matrix2, s: S) -> Result<S::Ok, S::Error> {
    let digits = decimal_digits(m[0][0].precision());
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_decimal(digits)).collect()).collect();
    rows.serialize(s)
}

/// An `s = 0` label `[l, m, 0]` as its su(2) and u(1) parts.
#[derive(Clone, Copy, Debug)]
struct Part {
    l: u32,
    m: i64,
}

const fn part(l: u32, m: i64) -> Part {
    Part { l, m }
}

/// `F^{(xyz)w}_{pq}`, or `None` when a vertex is forbidden.
fn n2_fusing(level: &Su2Level, d: u32, [x, y, z, w, p, q]: [Part; 6]) -> Option<Real> {
    let md = 2 * i64::from(d);
    let same = |a: i64, b: i64| (a - b).rem_euclid(md) == 0;
    if !(same(p.m, y.m + z.m) && same(q.m, x.m + y.m) && same(w.m, x.m + y.m + z.m)) {
        return None;
    }
    let su2 = level.fusing(x.l, y.l, z.l, w.l, p.l, q.l)?;
    let sign = u1_fusing(U1Label::new(d, x.m), U1Label::new(d, y.m), U1Label::new(d, z.m));
    Some(if sign < 0 { su2.neg() } else { su2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WhichExample {
    GroupLike,
    Sign,
    TwoByTwo,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupLikeValue {
    pub triple: (u32, u32, u32),
    #[serde(serialize_with = "real_string")]
    pub value: Real,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "example", rename_all = "kebab-case")]
pub enum FusingExample {
    /// `ψ(i,j,k)` for `D_{[0,2i,0]}`, all triples.
    GroupLike { d: u32, values: Vec<GroupLikeValue> },
    /// The scalar relating the two bracketings of `D_{[d−2,0,0]}, D_{[f,f,0]}, D_{[d−2,0,0]}`.
    Sign {
        d: u32,
        expected: i8,
        #[serde(serialize_with = "real_string")]
        value: Real,
    },
    /// `(D_{[1,1,0]})^{⊗3} → D_{[1,3,0]}` in the basis `p, q ∈ {0, 2}`.
    TwoByTwo {
        d: u32,
        #[serde(serialize_with = "matrix_strings")]
        f: Matrix2,
        #[serde(serialize_with = "matrix_strings")]
        closed_form: Matrix2,
        #[serde(serialize_with = "real_string")]
        ratio: Real,
        #[serde(serialize_with = "real_string")]
        max_deviation: Real,
    },
}

/// `F` of the 2×2 example from the 6j-symbol and the u(1) sign.
pub fn two_by_two(d: u32, prec: u32) -> Result<Matrix2, CftError> {
    if d < 4 {
        return Err(CftError::Precondition(format!("the 2×2 example needs d ≥ 4, got {d}")));
    }
    let level = Su2Level::new(d - 2, prec);
    let x = part(1, 1);
    let entry = |p: u32, q: u32| {
        n2_fusing(&level, d, [x, x, x, part(1, 3), part(p, 2), part(q, 2)])
            .ok_or_else(|| CftError::Precondition(format!("F_{{{p}{q}}} is not admissible at d = {d}")))
    };
    Ok([[entry(0, 0)?, entry(0, 2)?], [entry(2, 0)?, entry(2, 2)?]])
}

/// `F₀₀ = −F₂₂ = −1/(2cos π/d)`, `F₀₂ = F₂₀ = √(sin(π/d) sin(3π/d)) / sin(2π/d)`.
pub fn closed_form(d: u32, prec: u32) -> Matrix2 {
    let frac = |k: i64| Rat::new(k.into(), i64::from(d).into());
    let diag = Real::cos_pi(&frac(1), prec).mul_i64(2).recip().neg();
    let off = Real::sin_pi(&frac(1), prec).mul(&Real::sin_pi(&frac(3), prec)).sqrt().div(&Real::sin_pi(&frac(2), prec));
    [[diag.clone(), off.clone()], [off, diag.neg()]]
}

/// `F₀₀F₂₂ / (F₀₂F₂₀)`.
pub fn ratio(f: &Matrix2) -> Real {
    f[0][0].mul(&f[1][1]).div(&f[0][1].mul(&f[1][0]))
}

/// `−1/(1 + 2cos 2π/d)`.
pub fn ratio_closed_form(d: u32, prec: u32) -> Real {
    let c = Real::cos_pi(&Rat::new(2.into(), i64::from(d).into()), prec);
    c.mul_i64(2).add(&Real::from_i64(1, prec)).recip().neg()
}

/// Coefficients of the same fusion read in the dual direction, i.e. for the
/// dual bases `λ̄` with `λ∘λ̄ = id`: `(F⁻¹)ᵀ`.
pub fn dual_direction(f: &Matrix2) -> Matrix2 {
    let det = f[0][0].mul(&f[1][1]).sub(&f[0][1].mul(&f[1][0]));
    [[f[1][1].div(&det), f[1][0].neg().div(&det)], [f[0][1].neg().div(&det), f[0][0].div(&det)]]
}

pub fn cft_fusing_examples(d: u32, which: WhichExample, prec: u32) -> Result<FusingExample, CftError> {
    match which {
        WhichExample::GroupLike => {
            if d < 3 {
                return Err(CftError::Precondition(format!("d ≥ 3 required, got {d}")));
            }
            let level = Su2Level::new(d - 2, prec);
            let mut values = vec![];
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let [a, b, c] = [i, j, k].map(|t| 2 * i64::from(t));
                        let labels = [part(0, a), part(0, b), part(0, c), part(0, a + b + c), part(0, b + c), part(0, a + b)];
                        let value = n2_fusing(&level, d, labels).expect("group-like vertices are always allowed");
                        values.push(GroupLikeValue { triple: (i, j, k), value });
                    }
                }
            }
            Ok(FusingExample::GroupLike { d, values })
        }
        WhichExample::Sign => {
            if d < 4 || d % 2 == 1 {
                return Err(CftError::Precondition(format!("the sign example needs even d ≥ 4, got {d}")));
            }
            let level = Su2Level::new(d - 2, prec);
            let f = d / 2 - 1;
            let (v, h) = (part(d - 2, 0), part(f, i64::from(f)));
            let value = n2_fusing(&level, d, [v, h, v, h, h, h]).expect("sign example is admissible");
            let expected = if f.is_multiple_of(2) { 1 } else { -1 };
            Ok(FusingExample::Sign { d, expected, value })
        }
        WhichExample::TwoByTwo => {
            let f = two_by_two(d, prec)?;
            let cf = closed_form(d, prec);
            let mut max_deviation = Real::zero(prec);
            for i in 0..2 {
                for j in 0..2 {
                    let dev = f[i][j].sub(&cf[i][j]).abs();
                    if dev.cmp_value(&max_deviation).is_gt() {
                        max_deviation = dev;
                    }
                }
            }
            let ratio = ratio(&f);
            Ok(FusingExample::TwoByTwo { d, f, closed_form: cf, ratio, max_deviation })
        }
    }
}

/// The six rescalings `λ ↦ η λ` that act on the 2×2 example; named by the
/// junction they rescale, `e<target>_<left>_<right>`.
#[derive(Clone, Debug)]
pub struct GaugeScalars {
    pub e13_02_11: Complex,
    pub e13_11_02: Complex,
    pub e13_22_11: Complex,
    pub e13_11_22: Complex,
    pub e22_11_11: Complex,
    pub e02_11_11: Complex,
}

impl GaugeScalars {
    pub fn identity(prec: u32) -> Self {
        let one = Complex::real(Real::from_i64(1, prec));
        GaugeScalars {
            e13_02_11: one.clone(),
            e13_11_02: one.clone(),
            e13_22_11: one.clone(),
            e13_11_22: one.clone(),
            e22_11_11: one.clone(),
            e02_11_11: one,
        }
    }

    fn named(&self) -> [(&'static str, &Complex); 6] {
        [
            ("e13_02_11", &self.e13_02_11),
            ("e13_11_02", &self.e13_11_02),
            ("e13_22_11", &self.e13_22_11),
            ("e13_11_22", &self.e13_11_22),
            ("e22_11_11", &self.e22_11_11),
            ("e02_11_11", &self.e02_11_11),
        ]
    }
}

pub fn complexify(f: &Matrix2) -> ComplexMatrix2 {
    f.clone().map(|row| row.map(Complex::real))
}

/// Moves `F` along a change of junction bases.
pub fn gauge_transform(f: &ComplexMatrix2, g: &GaugeScalars) -> Result<ComplexMatrix2, CftError> {
    if let Some((name, _)) = g.named().into_iter().find(|(_, z)| z.re.is_zero() && z.im.is_zero()) {
        return Err(CftError::ZeroScalar(name));
    }
    let f00 = g.e13_02_11.div(&g.e13_11_02);
    let f02 = g.e13_22_11.mul(&g.e22_11_11).div(&g.e13_11_02.mul(&g.e02_11_11));
    let f20 = g.e13_02_11.mul(&g.e02_11_11).div(&g.e13_11_22.mul(&g.e22_11_11));
    let f22 = g.e13_22_11.div(&g.e13_11_22);
    Ok([[f[0][0].mul(&f00), f[0][1].mul(&f02)], [f[1][0].mul(&f20), f[1][1].mul(&f22)]])
}

/// `F₀₀F₂₂ / (F₀₂F₂₀)` of a complex matrix.
pub fn complex_ratio(f: &ComplexMatrix2) -> Complex {
    f[0][0].mul(&f[1][1]).div(&f[0][1].mul(&f[1][0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn closed_form_at_d5() {
        let f = two_by_two(5, P).unwrap();
        assert_eq!(f[0][0].to_decimal(10), "-0.6180339887");
        let f4 = two_by_two(4, P).unwrap();
        assert_eq!(f4[0][0].to_decimal(10), "-0.7071067812");
    }

    #[test]
    fn sign_example() {
        for (d, s) in [(4u32, -1i64), (6, 1), (8, -1)] {
            let FusingExample::Sign { value, expected, .. } = cft_fusing_examples(d, WhichExample::Sign, P).unwrap() else {
                unreachable!()
            };
            assert_eq!(i64::from(expected), s);
            assert!(value.close_to(&Real::from_i64(s, P), 1e-30), "d = {d}: {value:?}");
        }
    }

    #[test]
    fn zero_scalars_are_refused() {
        let mut g = GaugeScalars::identity(P);
        g.e22_11_11 = Complex::real(Real::zero(P));
        let f = complexify(&closed_form(5, P));
        assert_eq!(gauge_transform(&f, &g).unwrap_err(), CftError::ZeroScalar("e22_11_11"));
    }
}
