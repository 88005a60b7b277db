//! Exact computation of generalized homology for N-differential modules and
//! N-complexes over ℚ and cyclotomic fields.

pub mod acceptance;
pub mod cosimplicial;
pub mod brs;
pub mod error;
pub mod gauge;
pub mod graded;
pub mod linalg;
pub mod ndiff;
pub mod poly;
pub mod scalars;
pub mod young;

pub use error::{NcxError, Result};
pub use scalars::{Cyclotomic, Field, FieldDescriptor, Rational};

/// Elements of ℚ(ζ_M), any M.
pub type Cyc = Cyclotomic;

/// N-differential modules, matrices and N-complexes over ℚ and over ℚ(ζ_M).
pub type QModule = ndiff::NDiffModule<Rational>;
pub type CycModule = ndiff::NDiffModule<Cyclotomic>;
pub type QMatrix = linalg::ExactMatrix<Rational>;
pub type CycMatrix = linalg::ExactMatrix<Cyclotomic>;
pub type QComplex = graded::GradedNComplex<Rational>;
pub type CycComplex = graded::GradedNComplex<Cyclotomic>;
