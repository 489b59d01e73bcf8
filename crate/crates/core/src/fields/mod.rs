//! Static electromagnetic couplings.
//!
//! * [`landau`]: uniform field along +z in the symmetric gauge, truncated
//!   oscillator basis, analytic Landau ladder, and the static scalar shift.
//! * [`coulomb`]: radial finite-difference spectrum of the reduced
//!   two-component equation with an attractive `1/r` potential.
//! * [`reduction`]: momentum-space check of the chain that eliminates the
//!   lower spinor and recovers the Pauli equation.

pub mod coulomb;
pub mod landau;
pub mod reduction;

pub use coulomb::{bohr_level, coulomb_radial_spectrum, CoulombSpectrum, RadialGrid};
pub use landau::{
    landau_hamiltonian_matrix, landau_levels_analytic, minimal_coupling_hamiltonian,
    square_identity_check, LandauBasis, LandauSpectrum, UniformBField,
};
pub use reduction::pauli_reduction_check;
