//! Matrix bi-factorisations: bimodule operators, objects and morphisms, the
//! tensor product with its associator, unit objects and the unit
//! isomorphisms with their inverses and homotopy witnesses.

pub mod kernel;
pub mod monoidal;
pub mod object;
pub mod operator;

pub use kernel::{Kernel, Shape, Subst};
pub use monoidal::{
    associator, delta_i, homotopy_psi, p_s_object, pair_indices, pentagon_check, rxa_lemma_check, tensor_mor,
    tensor_obj, triangle_check, twist_object, unit_isos, unit_isos_inverse, unit_object, CheckOutcome, Side,
    TwistedUnit,
};
pub use object::{BifactError, Block, EntryMismatch, Label, Mbf, MbfReport, Morphism, MorphismReport, OpMatrix, Space};
pub use operator::{compare, Mismatch, Operator, Verdict, DEFAULT_CUTOFF};
