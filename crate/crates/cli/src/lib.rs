//! Verification harness: cross-checks between the Landau-Ginzburg side
//! (`mbf-core`) and the CFT side (`mbf-cft`), the coherence suite behind
//! `mbf verify monoidal`, and the JSON report envelope.

pub mod compare;
pub mod report;
pub mod sets;
pub mod suite;
