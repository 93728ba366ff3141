//! Quivers, their representations over a prime field, and the generic module
//! machinery (hom spaces, kernels, decomposition, catalogs) shared by every
//! module type in the crate.

pub mod catalog;
pub mod decompose;
pub mod morphism;
pub mod quiver;
pub mod rep;

pub use catalog::{bounded_sums, dim_vector_name, enumerate_indecomposables, Catalog, CatalogEntry, DEFAULT_POINT_BUDGET};
pub use decompose::{decompose, find_iso, is_indecomposable, is_iso, split, Certificate};
pub use morphism::{
    cokernel, coordinates, direct_sum, ensure_morphism, hom_basis, hom_dim, image, is_exact, is_morphism, kernel,
    map_into_sum, map_out_of_sum, BlockMap, Chain, CoverKind, DirectSum, FinModule,
};
pub use quiver::{Arrow, Path, PathAlgebra, Quiver};
pub use rep::{Rep, RepMorphism};
