//! Polynomial layer: sparse polynomials, the textual form used in reports,
//! the factors p_S(a,b) = ∏_{i∈S}(a − η^i b), and small dense matrices of
//! polynomials.

mod matrix;
mod parse;
mod poly;

pub use matrix::PolyMatrix;
pub use poly::{Exps, Mono, MultiPoly};

use thiserror::Error;

use crate::exactalg::Cyclo;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("ring mismatch: (vars, conductor) {lhs:?} vs {rhs:?}")]
    RingMismatch { lhs: (usize, u32), rhs: (usize, u32) },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible; remainder {remainder:?}")]
    NotDivisible { remainder: Box<MultiPoly> },
    #[error("divisor is not monic (up to a scalar) in variable {0}")]
    NotMonic(usize),
    #[error("unknown variable: {0}")]
    UnknownVariable(String),
    #[error("residue {0} out of range for d = {1}")]
    ResidueOutOfRange(i64, u32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Ordered variable names of a polynomial ring; `z` is reserved for ζ_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let v: Vec<String> = names.into_iter().map(Into::into).collect();
        debug_assert!(
            {
                let mut s = v.clone();
                s.sort();
                s.dedup();
                s.len() == v.len()
            },
            "variable names must be unique"
        );
        VarNames(v)
    }

    /// Slot-variable names for a chain of `slots` polynomial rings in
    /// `nvars` variables each: `a`, internal `x`/`x1..`, `b`; with several
    /// variables per slot an index is appended (`a1`, `x2_1`, ...).
    pub fn slots(slots: usize, nvars: usize) -> Self {
        let slot_name = |s: usize| -> String {
            if s == 0 {
                "a".into()
            } else if s == slots - 1 {
                "b".into()
            } else if slots == 3 {
                "x".into()
            } else {
                format!("x{s}")
            }
        };
        let mut out = Vec::with_capacity(slots * nvars);
        for s in 0..slots {
            let base = slot_name(s);
            for v in 0..nvars {
                if nvars == 1 {
                    out.push(base.clone());
                } else if s == 0 || s == slots - 1 || slots == 3 {
                    out.push(format!("{base}{}", v + 1));
                } else {
                    out.push(format!("{base}_{}", v + 1));
                }
            }
        }
        VarNames(out)
    }

    /// Fallback names `v0, v1, ...`.
    pub fn generic(n: usize) -> Self {
        VarNames((0..n).map(|i| format!("v{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn render(&self, p: &MultiPoly) -> String {
        parse::render(self, p)
    }

    pub fn parse(&self, text: &str, conductor: u32) -> Result<MultiPoly, PolyError> {
        parse::parse(self, text, conductor)
    }
}

/// p_S(v1, v2) = ∏_{i∈S}(v1 − η^i v2) with η = ζ_d, in a ring of `nvars`
/// variables over ℚ(ζ_d).
pub fn p_s(d: u32, set: &[i64], nvars: usize, v1: usize, v2: usize) -> Result<MultiPoly, PolyError> {
    let mut acc = MultiPoly::one(nvars, d);
    let x = MultiPoly::var(nvars, d, v1);
    let y = MultiPoly::var(nvars, d, v2);
    for &i in set {
        if i < 0 || i >= d as i64 {
            return Err(PolyError::ResidueOutOfRange(i, d));
        }
        let f = &x - &y.scale(&Cyclo::zeta_pow(d, i));
        acc = &acc * &f;
    }
    Ok(acc)
}
