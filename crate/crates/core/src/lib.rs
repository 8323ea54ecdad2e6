//! Operator-norm geometry of compact Lie groups.
//!
//! For a compact group `G` acting on its Lie algebra, the operator norm
//! `|g|_G` is the largest angle by which `Ad_g` rotates a unit vector. It
//! induces the bi-invariant metric `d_G(g, h) = |g⁻¹h|_G`, bounded by `π`.
//! The crate implements:
//!
//! * [`lie`]: validated elements of SU(d), SO(d) and block products, the
//!   adjoint representation, both operator norms, exp/log, Haar sampling.
//! * [`constants`]: the universal diameter constant `β ≈ 0.1243` and the
//!   commutator contraction constant.
//! * [`subspace`]: angles between subspaces, Schur averaging and the
//!   large-angle search.
//! * [`small_subgroups`]: iterated commutators and the witness pair whose
//!   perturbations never commute.
//! * [`quotient`]: coset distances and diameter estimates of `G/H`.
//! * [`universality`]: a gate-set universality tester.
//! * [`io`]: JSON formats; [`verify`]: the property suite behind `liediam verify`.

pub mod constants;
pub mod error;
pub mod io;
pub mod lie;
mod linalg;
pub(crate) mod search;
pub mod quotient;
pub mod small_subgroups;
pub mod subspace;
pub mod universality;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{circular_distance, op_norm, vector_angle, CMatrix, RMatrix};
