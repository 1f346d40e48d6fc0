//! Exact construction, counting and verification of integer boards where
//! every cell equals the sum of its neighbours.

pub mod cyclo;
pub mod error;
pub mod existence;
pub mod fill;
pub mod generators;
pub mod grid;
pub mod io;
pub mod linalg;
pub mod norm;
pub mod numtheory;
pub mod poly;
pub mod sparse;
mod spectrum;
pub mod valuation;

pub use error::{Error, Result};
pub use existence::{CountRecord, ExistenceVerdict};
pub use grid::{BoardSpec, Boundary, IntGrid, Mode, Neighbourhood};
pub use linalg::KernelBasis;
pub use sparse::SparseIntMatrix;
pub use spectrum::PREFILTER_TOLERANCE;
