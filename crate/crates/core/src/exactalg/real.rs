//! Binary floating-point reals of configurable precision on top of
//! `num-bigint`, plus a complex pair.
//!
//! A value is `mant · 2^exp` with `mant` rounded to `prec` significant
//! bits after every operation. Transcendentals are only needed at rational
//! multiples of π (q-numbers, root-of-unity embeddings), so `sin_pi` and
//! `cos_pi` take an exact rational argument and reduce it exactly before a
//! fixed-point Taylor evaluation.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;

use super::rat::Rat;

/// Default working precision of the numeric side, in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// Extra bits carried inside series evaluations.
const GUARD: u32 = 32;

#[derive(Clone)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

static PI_CACHE: Lazy<Mutex<HashMap<u32, BigInt>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl Real {
    pub fn zero(prec: u32) -> Self {
        Real { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Real { mant: v.clone(), exp: 0, prec }.rounded()
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        Self::from_bigint(r.numer(), prec + GUARD).div(&Self::from_bigint(r.denom(), prec + GUARD)).with_prec(prec)
    }

    /// Nearest representable value to an `f64` (exact for finite inputs).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        if v == 0.0 || !v.is_finite() {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, ex) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Real { mant: BigInt::from(m) * sign, exp: ex, prec }.rounded()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same value re-rounded to a new precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Real { mant: self.mant.clone(), exp: self.exp, prec }.rounded()
    }

    fn rounded(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            let neg = self.mant.is_negative();
            let mag = self.mant.abs();
            let half = BigInt::one() << (shift - 1);
            let r = (mag + half) >> shift;
            self.mant = if neg { -r } else { r };
            self.exp += shift as i64;
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        Real { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        Real { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return other.with_prec(prec);
        }
        if other.is_zero() {
            return self.with_prec(prec);
        }
        // Operands whose magnitudes differ by more than the precision only
        // contribute below the final rounding; clamp the alignment shift.
        let top = |r: &Real| r.exp + r.mant.bits() as i64;
        let limit = prec as i64 + 4;
        let (hi, lo) = if top(self) >= top(other) { (self, other) } else { (other, self) };
        let lo_exp = lo.exp.max(top(hi) - 2 * limit);
        let lo_mant = if lo_exp > lo.exp {
            let s = (lo_exp - lo.exp) as u64;
            // Keep a sticky contribution so rounding direction stays honest.
            let m = &lo.mant >> s;
            if m.is_zero() { lo.mant.signum() } else { m }
        } else {
            lo.mant.clone()
        };
        let e = hi.exp.min(lo_exp);
        let a = &hi.mant << (hi.exp - e) as u64;
        let b = lo_mant << (lo_exp - e) as u64;
        Real { mant: a + b, exp: e, prec }.rounded()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Real { mant: &self.mant * &other.mant, exp: self.exp + other.exp, prec: self.prec.max(other.prec) }
            .rounded()
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Real { mant: &self.mant * k, exp: self.exp, prec: self.prec }.rounded()
    }

    /// Quotient; panics on a zero divisor (callers test first).
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "real division by zero");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = (prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0) as u64;
        let num = &self.mant << shift;
        let q = num.div_floor(&other.mant);
        Real { mant: q, exp: self.exp - other.exp - shift as i64, prec }.rounded()
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let want = 2 * self.prec as i64 + 4;
        let mut s = (want - self.mant.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.mant << s as u64;
        let r = m.sqrt();
        Real { mant: r, exp: (self.exp - s) / 2, prec: self.prec }.rounded()
    }

    pub fn recip(&self) -> Self {
        Self::from_i64(1, self.prec).div(self)
    }

    /// π at this precision.
    pub fn pi(prec: u32) -> Self {
        let w = prec + GUARD;
        let fixed = {
            let mut cache = PI_CACHE.lock();
            cache.entry(w).or_insert_with(|| machin_pi(w)).clone()
        };
        Real { mant: fixed, exp: -(w as i64), prec }.rounded()
    }

    /// sin(π·r) for exact rational r.
    pub fn sin_pi(r: &Rat, prec: u32) -> Self {
        let two = Rat::from_integer(BigInt::from(2));
        let mut r = r - (r / &two).floor() * &two; // r ∈ [0, 2)
        let mut sign = 1;
        if r >= Rat::one() {
            r -= Rat::one();
            sign = -1;
        }
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        if r > half {
            r = Rat::one() - r;
        }
        let quarter = Rat::new(BigInt::one(), BigInt::from(4));
        let v = if r > quarter { kernel(&(&half - &r), prec, false) } else { kernel(&r, prec, true) };
        if sign < 0 {
            v.neg()
        } else {
            v
        }
    }

    /// cos(π·r) for exact rational r.
    pub fn cos_pi(r: &Rat, prec: u32) -> Self {
        Self::sin_pi(&(r + Rat::new(BigInt::one(), BigInt::from(2))), prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let keep = 60.min(bits);
        let shift = bits - keep;
        let top = (&self.mant.abs() >> shift as u64).to_u64().unwrap_or(0) as f64;
        let v = top * 2f64.powi((self.exp + shift).clamp(-2000, 2000) as i32);
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Fixed notation with `digits` digits after the decimal point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let scaled = &self.mant * &scale;
        let v = if self.exp >= 0 {
            scaled << self.exp as u64
        } else {
            let s = (-self.exp) as u64;
            let neg = scaled.is_negative();
            let r = (scaled.abs() + (BigInt::one() << (s - 1))) >> s;
            if neg {
                -r
            } else {
                r
            }
        };
        let neg = v.sign() == Sign::Minus;
        let s = v.abs().to_string();
        let s = format!("{:0>width$}", s, width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let body = if digits == 0 { int.to_string() } else { format!("{int}.{frac}") };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Compares values (precision is ignored).
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let d = self.sub(other);
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// `|self − other| ≤ tol`.
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        let d = self.sub(other).abs();
        d.cmp_value(&Real::from_f64(tol, self.prec.max(64))) != Ordering::Greater
    }
}

/// sin(πr) (`sine`) or cos(πr) for r ∈ [0, 1/4], via fixed-point Taylor series.
fn kernel(r: &Rat, prec: u32, sine: bool) -> Real {
    let w = prec + GUARD;
    let pi = Real::pi(prec + GUARD);
    let x = pi.mul(&Real::from_rat(r, prec + GUARD));
    // fixed-point value of x at scale 2^w
    let xf = if x.exp >= -(w as i64) {
        &x.mant << (x.exp + w as i64) as u64
    } else {
        &x.mant >> (-(w as i64) - x.exp) as u64
    };
    let x2 = (&xf * &xf) >> w as u64;
    let mut term = if sine { xf.clone() } else { BigInt::one() << w as u64 };
    let mut sum = term.clone();
    let mut k: u64 = if sine { 1 } else { 0 };
    loop {
        term = -((&term * &x2) >> w as u64) / BigInt::from((k + 1) * (k + 2));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 2;
    }
    Real { mant: sum, exp: -(w as i64), prec }.rounded()
}

/// π · 2^w via Machin's formula π = 16·atan(1/5) − 4·atan(1/239).
fn machin_pi(w: u32) -> BigInt {
    let atan_inv = |x: u64| -> BigInt {
        let one = BigInt::one() << (w as u64 + 8);
        let x2 = BigInt::from(x * x);
        let mut power = one / BigInt::from(x);
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !power.is_zero() {
            let t = &power / BigInt::from(2 * k + 1);
            if k.is_multiple_of(2) {
                sum += t;
            } else {
                sum -= t;
            }
            power /= &x2;
            k += 1;
        }
        sum
    };
    let v = atan_inv(5) * 16 - atan_inv(239) * 4;
    v >> 8u64
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec as f64) * std::f64::consts::LOG10_2) as usize);
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({}, {} bits)", self.to_decimal(20), self.prec)
    }
}

/// A complex number as a pair of [`Real`]s.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Self {
        let p = re.precision();
        Complex { re, im: Real::zero(p) }
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Complex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Complex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Complex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Complex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        Complex {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&den),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&den),
        }
    }

    pub fn abs(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
