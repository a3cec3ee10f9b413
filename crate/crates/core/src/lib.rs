//! Exact cohomology of nilpotent Lie algebras with complex structures:
//! Chevalley–Eilenberg, Morse–Novikov and twisted Dolbeault complexes, and
//! the LCK/Vaisman checks built on them.

pub mod catalog;
pub mod cohomology;
pub mod differentials;
pub mod error;
pub mod exterior;
pub mod file;
pub mod lck;
pub mod lie;
pub mod linalg;
pub mod scalar;

pub use catalog::CatalogEntry;
pub use error::{Error, Result};
pub use exterior::{BasisMode, Bidegree, ExtForm, MultiIndex};
pub use file::{AlgebraFile, FileError};
pub use lck::HermitianMetric;
pub use lie::{ComplexStructure, LieAlgebra};
pub use linalg::{Inertia, Matrix, SubspaceBasis};
pub use scalar::{GaussianRational, Rational};
