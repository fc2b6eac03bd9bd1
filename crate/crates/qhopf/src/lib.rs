//! Exact structure-constant kernel for finite-dimensional quasi-Hopf algebras.

pub mod algebra;
pub mod double;
pub mod error;
pub mod expr;
pub mod generators;
pub mod integrals;
pub mod io;
pub mod linear;
pub mod net;
pub mod quasihopf;
pub mod quasitriangular;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod transmutation;

pub use error::{Error, Result};
pub use linear::{CoordVector, DenseMatrix};
pub use scalar::{Field, Scalar};
pub use tensor::SparseTensor;
