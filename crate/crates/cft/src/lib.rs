//! Rational CFT data for comparison with the Landau-Ginzburg side: the
//! pointed u(1)_{2N} category, su(2)_k with quantum 6j-symbols, and the label
//! combinatorics of the N=2 minimal models at central charge `3(d−2)/d`.
//!
//! Everything involving square roots of q-factorials is numeric, at a
//! caller-chosen binary precision.

pub mod examples;
pub mod minimal;
pub mod pentagon;
pub mod su2;
pub mod u1;

use thiserror::Error;

pub use examples::{cft_fusing_examples, gauge_transform, two_by_two, FusingExample, GaugeScalars, Matrix2, WhichExample};
pub use minimal::{chiral_charge, defect_spectrum, dictionary_label, dictionary_set, mm_fuse, mm_labels, mm_normalize, DefectSpectrum, MMLabel};
pub use pentagon::{pentagon_check, u1_cocycle_check, PentagonReport};
pub use su2::{qnum, sixj, FusingTable, SixJValue, Spin, Su2Label};
pub use u1::{u1_braiding, u1_fusing, u1_theta, U1Label};

pub use mbf_core::exactalg::real::DEFAULT_PRECISION;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CftError {
    #[error("label {label} out of range 0..={max}")]
    Range { label: i64, max: i64 },
    #[error("l + m + s = {0} is odd")]
    Parity(i64),
    #[error("labels belong to different models (d = {0} and d = {1})")]
    Mismatch(u32, u32),
    #[error("gauge scalar {0} is zero")]
    ZeroScalar(&'static str),
    #[error("{0}")]
    Precondition(String),
}

/// Decimal digits a value at `prec` bits supports, minus a guard.
pub fn decimal_digits(prec: u32) -> usize {
    ((f64::from(prec) * std::f64::consts::LOG10_2) as usize).saturating_sub(3).max(6)
}

/// Serialises a [`Real`](mbf_core::exactalg::Real) as a fixed-point decimal string.
pub fn real_string<S: serde::Serializer>(x: &mbf_core::exactalg::Real, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_decimal(decimal_digits(x.precision())))
}
