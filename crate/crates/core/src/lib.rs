pub mod binary;
pub mod cli;
pub mod components;
pub mod error;
pub mod exceptional;
pub mod exterior;
pub mod linalg;
pub mod poly;
pub mod probe;
pub mod scalar;

pub use error::{Error, Result};
pub use exterior::{DiffForm, PolyVectorField};
pub use poly::{MultiPoly, VarNames};
pub use scalar::{Domain, Scalar};
