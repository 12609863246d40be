//! Schur-complement reduction of tree Laplacians along a path, ratio
//! bounds for eigenvector entries, and tools for locating the extrema of
//! Fiedler vectors.

pub mod bounds;
pub mod error;
pub mod fiedler;
pub mod linalg;
pub mod numfmt;
pub mod oracle;
pub mod schur;
pub mod tree;

pub use error::{Error, Result};
pub use linalg::{Spectrum, SymMatrix};
pub use tree::{decompose_along_path, generate, FamilySpec, PathDecomposition, RoseLayout, Tree};
