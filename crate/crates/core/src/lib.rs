//! Exact computations with modules over triangular matrix algebras
//! `[[A, 0], [U, B]]` of path algebras over prime fields, and with
//! n-cotorsion pairs in their module categories.

pub mod cotorsion;
pub mod error;
pub mod exactla;
pub mod homology;
pub mod quiverrep;
pub mod trimat;

pub use error::{Error, Result};
