//! Numerical toolkit for a nonrelativistic spin-1/2 wave equation that keeps
//! negative-energy eigenstates.
//!
//! * [`matrix`]: dense complex matrices and a Hermitian eigensolver.
//! * [`clifford`]: the Dirac-Pauli representation and its identity checks.
//! * [`spectral`]: free Hamiltonians, energy-helicity states, expectation
//!   identities and the Lorentz correspondence.
//! * [`fields`]: uniform magnetic field (Landau levels), Coulomb radial
//!   spectrum, the reduction to the Pauli equation, static minimal coupling.
//! * [`dynamics`]: superpositions of ± energy states and Zitterbewegung.

// negated comparisons are how NaN residuals fail
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clifford;
pub mod dynamics;
pub mod error;
pub mod fields;
pub mod matrix;
pub mod report;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, EigenDecomposition};
pub use report::{CheckEntry, CheckReport};
pub use spectral::{Branch, FreeModel, MomentumVector, PhysicalParams};
