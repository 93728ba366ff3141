use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::PrimeField;
use crate::quiverrep::PathAlgebra;

use super::bimodule::Bimodule;

/// The triangular matrix algebra `[[A, 0], [U, B]]`. It is never built as a
/// ring; its modules are handled as triples.
#[derive(Debug, PartialEq, Eq)]
pub struct TriangularAlgebra {
    pub a: Arc<PathAlgebra>,
    pub b: Arc<PathAlgebra>,
    pub u: Bimodule,
}

impl TriangularAlgebra {
    pub fn new(u: Bimodule) -> Arc<Self> {
        Arc::new(TriangularAlgebra { a: u.right_algebra().clone(), b: u.left_algebra().clone(), u })
    }

    /// Builds from explicit algebras, checking that `u` is over them.
    pub fn from_parts(a: Arc<PathAlgebra>, b: Arc<PathAlgebra>, u: Bimodule) -> Result<Arc<Self>> {
        if *u.right_algebra() != a || *u.left_algebra() != b {
            return Err(Error::Argument("bimodule is not over the given algebras".into()));
        }
        Ok(Self::new(u))
    }

    pub fn field(&self) -> PrimeField {
        self.a.field
    }
}
