//! Defects of `W = x^d`: the objects `P_S`, the junction morphisms between
//! their tensor products, finite-rank reduction of tensor products,
//! decomposition into `P_S` summands, and extraction of fusing matrices.

pub mod decompose;
pub mod fusing;
pub mod junction;
pub mod reduce;

use thiserror::Error;

use crate::bifact::{BifactError, EntryMismatch, Mismatch};
use crate::graded::{GradedError, GradedMbf};
use crate::polycalc::PolyError;

pub use decompose::{decompose_into_ps, Decomposition, Summand};
pub use fusing::{
    expected_fusing_matrix, gauge_ratio, solve_fusing_2x2, solve_with_entries, solve_with_maps, verify_fusing_up_to_homotopy, verify_with,
    FusingReport, HomotopyEntry, HomotopyReport, HomotopyStatus, PositionStatus, DETERMINED_ENTRIES,
};
pub use junction::{a_maps, junction_morphisms, verify_group_like, verify_sign, Junction, JunctionCheck, Junctions};
pub use reduce::{reduce_right, reduce_tensor, ReducedTensor};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FusionError {
    #[error(transparent)]
    Bifact(#[from] BifactError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("entry is not divisible: {0}")]
    NotDivisible(#[from] PolyError),
    #[error("{what} is not closed: {mismatch}")]
    NotClosed { what: String, mismatch: String },
    #[error("the two sides are not proportional: {0}")]
    NotProportional(String),
    #[error("fusing system is {0}")]
    BadSystem(String),
    #[error("{0}")]
    Precondition(String),
    #[error("cannot split block: {0}")]
    Indecomposable(String),
}

impl From<EntryMismatch> for FusionError {
    fn from(e: EntryMismatch) -> Self {
        FusionError::NotProportional(e.to_string())
    }
}

impl From<Mismatch> for FusionError {
    fn from(e: Mismatch) -> Self {
        FusionError::NotProportional(format!("{e:?}"))
    }
}

/// `P_S` for `W = x^d` with its grading; `set` is sorted and reduced mod `d`.
#[derive(Clone, Debug)]
pub struct PsObject {
    pub d: u32,
    pub set: Vec<i64>,
    pub graded: GradedMbf,
}

impl PsObject {
    pub fn new(d: u32, set: &[i64]) -> Result<Self, FusionError> {
        if d < 2 {
            return Err(FusionError::Precondition("d must be at least 2".into()));
        }
        let mut s: Vec<i64> = set.iter().map(|i| i.rem_euclid(i64::from(d))).collect();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.len() == d as usize {
            return Err(FusionError::Precondition("S must be a proper nonempty subset".into()));
        }
        let graded = GradedMbf::p_s(d, &s)?;
        Ok(PsObject { d, set: s, graded })
    }

    /// `{start, …, start+len−1}` mod `d`.
    pub fn consecutive(d: u32, start: i64, len: usize) -> Result<Self, FusionError> {
        let set: Vec<i64> = (0..len as i64).map(|k| start + k).collect();
        Self::new(d, &set)
    }

    /// Start and length when `S` is a cyclic interval.
    pub fn as_interval(&self) -> Option<(i64, usize)> {
        interval_of(self.d, &self.set)
    }

    pub fn name(&self) -> String {
        let inner: Vec<String> = self.set.iter().map(i64::to_string).collect();
        format!("P{{{}}}", inner.join(","))
    }
}

/// Start and length of a cyclic interval of residues mod `d`.
pub fn interval_of(d: u32, set: &[i64]) -> Option<(i64, usize)> {
    let d = i64::from(d);
    let n = set.len();
    let has = |i: i64| set.contains(&i.rem_euclid(d));
    set.iter()
        .copied()
        .find(|&s| !has(s - 1) || n as i64 == d)
        .filter(|&s| (0..n as i64).all(|k| has(s + k)))
        .map(|s| (s, n))
}
