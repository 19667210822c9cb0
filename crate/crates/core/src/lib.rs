//! Exact algebra for matrix bi-factorisations of x^d − y^d: cyclotomic
//! numbers, polynomials, bimodule operators and their composition, the
//! charge-graded morphism spaces, and the fusion of permutation-type
//! factorisations.

pub mod exactalg;
pub mod polycalc;
pub mod bifact;
pub mod fusion;
pub mod graded;
