//! Ready-made algebras and the catalogs most computations start from.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};
use crate::quiverrep::{enumerate_indecomposables, Catalog, PathAlgebra, Quiver, Rep, DEFAULT_POINT_BUDGET};

use super::algebra::TriangularAlgebra;
use super::bimodule::Bimodule;
use super::enumerate::{enumerate_triple_indecomposables, TripleCaps};
use super::triple::TripleModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

/// Renames the catalog entry currently called `from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alias {
    pub side: Side,
    pub from: String,
    pub to: String,
}

impl Alias {
    pub fn new(side: Side, from: &str, to: &str) -> Self {
        Alias { side, from: from.to_string(), to: to.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkspaceCaps {
    /// Per-vertex dimension cap for the indecomposables of `A` and `B`.
    pub component_dim_cap: usize,
    pub point_budget: u128,
    pub triples: TripleCaps,
}

impl Default for WorkspaceCaps {
    fn default() -> Self {
        WorkspaceCaps { component_dim_cap: 3, point_budget: DEFAULT_POINT_BUDGET, triples: TripleCaps::default() }
    }
}

/// A triangular algebra with catalogs of indecomposables on both sides and
/// of its own modules.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub lambda: Arc<TriangularAlgebra>,
    pub a: Catalog<Rep>,
    pub b: Catalog<Rep>,
    pub triples: Catalog<TripleModule>,
}

impl Workspace {
    pub fn build(lambda: Arc<TriangularAlgebra>, caps: WorkspaceCaps, aliases: &[Alias]) -> Result<Self> {
        let mut a = enumerate_indecomposables(&lambda.a, caps.component_dim_cap, caps.point_budget)?;
        let mut b = enumerate_indecomposables(&lambda.b, caps.component_dim_cap, caps.point_budget)?;
        for alias in aliases {
            let cat = match alias.side {
                Side::A => &mut a,
                Side::B => &mut b,
            };
            let i = cat
                .index_of(&alias.from)
                .ok_or_else(|| Error::Argument(format!("no catalog entry named {}", alias.from)))?;
            cat.rename(i, alias.to.clone());
        }
        let triples = enumerate_triple_indecomposables(&lambda, &a, &b, caps.triples)?;
        Ok(Workspace { lambda, a, b, triples })
    }

    pub fn a_module(&self, name: &str) -> Result<&Rep> {
        lookup(&self.a, name)
    }

    pub fn b_module(&self, name: &str) -> Result<&Rep> {
        lookup(&self.b, name)
    }

    pub fn triple(&self, name: &str) -> Result<&TripleModule> {
        lookup(&self.triples, name)
    }
}

fn lookup<'a, M: crate::quiverrep::FinModule>(cat: &'a Catalog<M>, name: &str) -> Result<&'a M> {
    cat.index_of(name)
        .map(|i| cat.module(i))
        .ok_or_else(|| Error::Argument(format!("no catalog entry named {name}")))
}

/// `A = K(1 → 2)`, `B = K` at vertex `3`, `U = K ⊕ K` with the arrow acting by the identity.
pub fn example_algebra(field: PrimeField) -> Result<Arc<TriangularAlgebra>> {
    let a = PathAlgebra::new(Quiver::new(&["1", "2"], &[("a", "1", "2")])?, field);
    let b = PathAlgebra::new(Quiver::new::<&str>(&["3"], &[])?, field);
    let u = Bimodule::new(b, a, vec![vec![1, 1]], vec![], vec![vec![Matrix::identity(field, 1)]])?;
    Ok(TriangularAlgebra::new(u))
}

/// Names for the example's indecomposables.
pub fn example_aliases() -> Vec<Alias> {
    vec![
        Alias::new(Side::A, "d(0,1)", "P2"),
        Alias::new(Side::A, "d(1,0)", "S1"),
        Alias::new(Side::A, "d(1,1)", "P1"),
        Alias::new(Side::B, "d(1)", "K"),
    ]
}

pub fn example_workspace(field: PrimeField) -> Result<Workspace> {
    Workspace::build(example_algebra(field)?, WorkspaceCaps::default(), &example_aliases())
}

/// The example's `A` and `B` with `U = 0`, so the algebra is `A × B`.
pub fn split_example_algebra(field: PrimeField) -> Result<Arc<TriangularAlgebra>> {
    let a = PathAlgebra::new(Quiver::new(&["1", "2"], &[("a", "1", "2")])?, field);
    let b = PathAlgebra::new(Quiver::new::<&str>(&["3"], &[])?, field);
    Ok(TriangularAlgebra::new(Bimodule::zero(b, a)?))
}

/// `A = B = K` and `U = K`; the algebra is the path algebra of one arrow.
pub fn one_arrow_algebra(field: PrimeField) -> Result<Arc<TriangularAlgebra>> {
    let a = PathAlgebra::new(Quiver::new::<&str>(&["1"], &[])?, field);
    let b = PathAlgebra::new(Quiver::new::<&str>(&["2"], &[])?, field);
    Ok(TriangularAlgebra::new(Bimodule::new(b, a, vec![vec![1]], vec![], vec![])?))
}
