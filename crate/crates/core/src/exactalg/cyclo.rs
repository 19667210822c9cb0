//! Elements of the cyclotomic field ℚ(ζ_n) = ℚ[t]/(Φ_n(t)).
//!
//! Stored as an integer coefficient vector over a common positive
//! denominator, reduced so that the gcd of all entries and the denominator
//! is one. Because Φ_n is irreducible this form is canonical: two elements
//! are equal iff their representations are identical, which the linear
//! solvers rely on when they test pivots for exact zero.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use super::rat::{parse_rat, rat_to_string, Rat};
use super::real::{Complex, Real};
use super::ArithError;

static PHI_CACHE: Lazy<RwLock<HashMap<u32, Arc<Vec<i64>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Coefficients of Φ_n, lowest degree first. Computed as
/// (t^n − 1) / ∏_{d | n, d < n} Φ_d and cached per conductor.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = PHI_CACHE.read().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_int_div(&num, &div);
        }
    }
    let arc = Arc::new(num);
    // Racing writers compute the same polynomial, so first-wins is fine.
    PHI_CACHE.write().entry(n).or_insert(arc).clone()
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "cyclotomic division left a remainder");
    q
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    pub fn zero(n: u32) -> Self {
        Cyclo { n, num: vec![BigInt::zero(); euler_phi(n)], den: BigInt::one() }
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        let mut c = Self::zero(n);
        c.num[0] = BigInt::from(v);
        c
    }

    pub fn from_rat(n: u32, r: &Rat) -> Self {
        let mut c = Self::zero(n);
        c.num[0] = r.numer().clone();
        c.den = r.denom().clone();
        c
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut num = vec![BigInt::zero(); (k + 1).max(euler_phi(n))];
        num[k] = BigInt::one();
        Self::from_int_vec(n, num, BigInt::one())
    }

    /// Element Σ coeffs[i]·ζ^i; longer vectors are reduced modulo Φ_n.
    pub fn from_coeffs(n: u32, coeffs: &[Rat]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> =
            coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        num.resize(num.len().max(euler_phi(n)), BigInt::zero());
        Self::from_int_vec(n, num, den)
    }

    fn from_int_vec(n: u32, mut num: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        for i in (deg..num.len()).rev() {
            if num[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut num[i]);
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    num[i - deg + j] -= &c * pj;
                }
            }
        }
        num.truncate(deg);
        let mut c = Cyclo { n, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for x in self.num.iter_mut() {
                *x /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        self.num.iter().map(|x| Rat::new(x.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(ArithError::ConductorMismatch { lhs: self.n, rhs: other.n })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self.lin(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self.lin(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn lin(&self, other: &Self, subtract: bool) -> Self {
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            let mut c = Cyclo { n: self.n, num, den: self.den.clone() };
            c.normalize();
            return c;
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let l = a * &other.den;
                let r = b * &self.den;
                if subtract {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        let mut c = Cyclo { n: self.n, num, den: &self.den * &other.den };
        c.normalize();
        c
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if let Some(r) = other.as_small_int() {
            return self.scale_int(r);
        }
        if let Some(r) = self.as_small_int() {
            return other.scale_int(r);
        }
        let len = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * len - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_int_vec(self.n, prod, &self.den * &other.den)
    }

    fn as_small_int(&self) -> Option<i64> {
        if self.den.is_one() && self.num[1..].iter().all(Zero::is_zero) {
            i64::try_from(&self.num[0]).ok()
        } else {
            None
        }
    }

    fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.n);
        }
        let mut c = Cyclo {
            n: self.n,
            num: self.num.iter().map(|x| x * k).collect(),
            den: self.den.clone(),
        };
        c.normalize();
        c
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in ℚ[t].
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rat(self.n, &(Rat::one() / r)));
        }
        let phi: Vec<Rat> =
            cyclotomic_poly(self.n).iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect();
        let a = trim(self.coeffs());
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![], vec![Rat::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_n is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let inv: Vec<Rat> = s0.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_coeffs(self.n, &inv))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.n);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    /// Embeds into ℚ(ζ_{m·n}) via ζ_n = ζ_{mn}^m.
    pub fn lift(&self, m: u32) -> Self {
        let big = self.n * m;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * m as usize + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * m as usize] = c.clone();
        }
        num.resize(num.len().max(euler_phi(big)), BigInt::zero());
        Self::from_int_vec(big, num, self.den.clone())
    }

    /// Numeric value under ζ ↦ e^{2πi·k/n} (k coprime to n for a field embedding).
    pub fn embed_with(&self, k: i64, precision_bits: u32) -> Complex {
        let prec = precision_bits.max(64) + 16;
        let n = self.n as i64;
        let mut re = Real::zero(prec);
        let mut im = Real::zero(prec);
        let den = Real::from_bigint(&self.den, prec);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cr = Real::from_bigint(c, prec);
            let angle = Rat::new(BigInt::from(2 * (i as i64 * k).rem_euclid(n)), BigInt::from(n));
            re = re.add(&cr.mul(&Real::cos_pi(&angle, prec)));
            im = im.add(&cr.mul(&Real::sin_pi(&angle, prec)));
        }
        Complex::new(re.div(&den), im.div(&den)).with_precision(precision_bits)
    }

    /// Numeric value under the standard embedding ζ_n ↦ e^{2πi/n}.
    pub fn embed(&self, precision_bits: u32) -> Complex {
        self.embed_with(1, precision_bits)
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    let lead = &b[db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                match self.$f(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, rhs: &Cyclo) {
        *self = &*self * rhs;
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl fmt::Display for Cyclo {
    /// Human form in powers of `z` = ζ_n, e.g. `1/2 - 3*z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{}", rat_to_string(&a))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", rat_to_string(&a))?,
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{}]({})", self.n, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloJson { conductor: self.n, coeffs: self.coeffs().iter().map(rat_to_string).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        if j.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        if coeffs.len() != euler_phi(j.conductor) {
            return Err(serde::de::Error::custom("coefficient count differs from φ(n)"));
        }
        Ok(Cyclo::from_coeffs(j.conductor, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    fn z(n: u32, k: i64) -> Cyclo {
        Cyclo::zeta_pow(n, k)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=40 {
            assert_eq!(cyclotomic_poly(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn spec_identities() {
        assert_eq!(z(3, 1) + z(3, 2), Cyclo::from_int(3, -1));
        assert_eq!(z(4, 1) * z(4, 1), Cyclo::from_int(4, -1));
        let eta = z(6, 1);
        assert_eq!(&(&eta * &eta) + &eta + Cyclo::one(6), Cyclo::from_int(6, 2) * &eta);
    }

    #[test]
    fn zeta_powers_wrap() {
        for n in 1..=24u32 {
            assert!(z(n, n as i64).is_one());
            assert_eq!(z(n, -1) * z(n, 1), Cyclo::one(n));
        }
    }

    #[test]
    fn inverse_and_division() {
        let a = Cyclo::from_coeffs(7, &[rat(1, 2), rat(-3, 1), rat(0, 1), rat(5, 7)]);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert!(Cyclo::zero(5).inv().is_err());
    }

    #[test]
    fn mismatch_is_reported() {
        assert!(matches!(
            z(3, 1).try_add(&z(4, 1)),
            Err(ArithError::ConductorMismatch { lhs: 3, rhs: 4 })
        ));
    }

    #[test]
    fn lifting_preserves_arithmetic() {
        let a = z(3, 1) + Cyclo::from_int(3, 2);
        let b = z(3, 2) * Cyclo::from_rat(3, &rat(3, 4));
        assert_eq!((&a * &b).lift(4), a.lift(4) * b.lift(4));
        assert_eq!(z(3, 1).lift(2), z(6, 2));
    }

    #[test]
    fn json_round_trip() {
        let a = Cyclo::from_coeffs(5, &[rat(1, 3), rat(0, 1), rat(-2, 1), rat(7, 9)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"conductor":5,"coeffs":["1/3","0","-2","7/9"]}"#);
        assert_eq!(serde_json::from_str::<Cyclo>(&s).unwrap(), a);
    }

    #[test]
    fn display_form() {
        let a = Cyclo::from_coeffs(5, &[rat(1, 2), rat(0, 1), rat(-3, 1), rat(1, 1)]);
        assert_eq!(a.to_string(), "1/2 - 3*z^2 + z^3");
    }
}
