//! Explicit metric-entropy bounds for sub-level sets.
//!
//! The crate computes Vitushkin-type covering bounds
//! `M(ε, A) ≤ C_0 + C_1/ε + … + C_{n-1}/ε^{n-1} + μ(A)/ε^n` from per-class
//! Gabrielov constants (bounds on the number of connected components of
//! sections by coordinate-parallel affine planes), and checks them
//! empirically by subdividing the unit cube into ε-cubes.
//!
//! Everything here is `no_std` + `alloc`. File formats, the command line and
//! threading live in the companion `vitushkin-cli` crate.
//!
//! Modules:
//! - [`polytope`]: exact lattice-polytope geometry (hulls, projections,
//!   volumes, the shifted-projection profile used by Newton-polytope bounds).
//! - [`diagram`]: function-class descriptors and their Gabrielov constants.
//! - [`bounds`]: assembly of the covering bound and its exact evaluation.
//! - [`funceval`]: concrete functions (monomial sums, quasi-polynomials,
//!   exponential polynomials) and their floating-point evaluation.
//! - [`empirical`]: ε-grid cube classification and section component counts.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod diagram;
pub mod empirical;
pub mod funceval;
mod hull;
mod linalg;
pub mod polytope;
pub mod rational;

pub use rational::Rational;
