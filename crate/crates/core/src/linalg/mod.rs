//! Exact linear algebra over ℚ(i): rank, kernels, solving, canonical
//! subspaces, and Sylvester inertia.

mod inertia;
mod matrix;
mod subspace;

pub use inertia::{symmetric_inertia, Inertia};
pub use matrix::{cohomology_dim, Matrix, Rref};
pub use subspace::SubspaceBasis;
