//! The pointed braided category u(1)_{2N}: simple objects `ℤ_{2N}`, with
//! twist, braiding and a sign-valued associator.

use mbf_core::exactalg::{Complex, Rat, Real};
use serde::Serialize;

use crate::CftError;

/// A residue mod `2N`, stored canonically in `0..2N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct U1Label {
    pub modulus: u32,
    pub m: u32,
}

impl U1Label {
    pub fn new(n: u32, m: i64) -> Self {
        let modulus = 2 * n;
        U1Label { modulus, m: m.rem_euclid(i64::from(modulus)) as u32 }
    }

    /// Strict constructor for labels already in `0..2N`.
    pub fn checked(n: u32, m: i64) -> Result<Self, CftError> {
        if !(0..2 * i64::from(n)).contains(&m) {
            return Err(CftError::Range { label: m, max: 2 * i64::from(n) - 1 });
        }
        Ok(Self::new(n, m))
    }
}

fn phase(turns_of_pi: Rat, prec: u32) -> Complex {
    Complex::new(Real::cos_pi(&turns_of_pi, prec), Real::sin_pi(&turns_of_pi, prec))
}

/// `θ_k = exp(−πi k²/2N)`.
pub fn u1_theta(n: u32, k: U1Label, prec: u32) -> Complex {
    let k = i64::from(k.m);
    phase(Rat::new((-k * k).into(), (2 * i64::from(n)).into()), prec)
}

/// `R^{(kl)} = exp(−πi kl/2N)`.
pub fn u1_braiding(n: u32, k: U1Label, l: U1Label, prec: u32) -> Complex {
    let kl = i64::from(k.m) * i64::from(l.m);
    phase(Rat::new((-kl).into(), (2 * i64::from(n)).into()), prec)
}

/// `F^{(rst)} = (−1)^{r·σ(s+t)}`, where `σ = 1` exactly when `s + t`
/// wraps past `2N`.
pub fn u1_fusing(r: U1Label, s: U1Label, t: U1Label) -> i8 {
    let wraps = s.m + t.m >= s.modulus;
    if wraps && r.m % 2 == 1 {
        -1
    } else {
        1
    }
}
