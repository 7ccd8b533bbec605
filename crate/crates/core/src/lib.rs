//! Exact computation of degree-bounded SSM-Thom polynomials of contact
//! singularities.
//!
//! The SSM-Thom polynomial `T(Q, ℓ)` of a contact singularity is a power
//! series in the quotient Chern classes `c_1, c_2, …` whose lowest-degree
//! part is the ordinary Thom polynomial. Up to the Mather bound `M(ℓ)` it is
//! pinned down by finitely many linear conditions coming from the torus
//! symmetries of the prototypes of all singularities of codimension at most
//! the requested degree. This crate builds those conditions from catalog data
//! and solves them exactly.
//!
//! Layout:
//!
//! * [`algebra`]: rationals, parametric coefficients, partitions, truncated
//!   Chern series, torus polynomials and substitution homomorphisms.
//! * [`catalog`]: singularity records, the JSON file format and the bundled
//!   classification data for `ℓ = 0, 1, 2`.
//! * [`unfolding`]: torus weights of prototypes from genotypes via the
//!   miniversal unfolding.
//! * [`solver`]: the interpolation system and its exact solution.
//! * [`bases`]: Schur and Schur-tilde expansions.
//! * [`apps`]: maps between projective spaces, Euler characteristics,
//!   hierarchy tests and the sum rule.

pub mod algebra;
pub mod apps;
pub mod bases;
pub mod catalog;
pub mod render;
pub mod solver;
pub mod unfolding;

mod error;

pub use error::{Error, Result};
