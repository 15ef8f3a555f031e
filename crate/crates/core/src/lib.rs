//! Free bianalytic maps between spectraballs and free spectrahedra.

pub mod algebras;
pub mod catalog;
pub mod cli;
pub mod domains;
pub mod error;
pub mod genericity;
pub mod linalg;
pub mod maps;
pub mod sampling;
pub mod tuple;
pub mod verify;
pub mod wire;

pub use nalgebra::Complex;

/// Complex double-precision scalar.
pub type C64 = nalgebra::Complex<f64>;

pub use error::{Error, Result};
pub use tuple::{ComplexMatrix, MatrixTuple};
