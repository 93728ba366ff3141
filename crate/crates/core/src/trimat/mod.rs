//! Triangular matrix algebras and their modules, presented as triples.

mod algebra;
mod bimodule;
mod enumerate;
mod formulas;
mod functors;
mod right;
mod triple;
mod workspace;

pub use algebra::TriangularAlgebra;
pub use bimodule::Bimodule;
pub use enumerate::{enumerate_triple_indecomposables, TripleCaps};
pub use formulas::{verify_ext_formula, FormulaReport, FormulaRow, FormulaVerdict};
pub use functors::{
    adjoint_inverse, adjoint_transpose, hom_functor, hom_morphism, tensor_functor, tensor_morphism, HomFunctor,
    TensorProduct,
};
pub use right::{tensor_over_lambda, tensor_over_lambda_relations, RightTriple};
pub use triple::{join, TripleModule};
pub use workspace::{
    example_algebra, example_aliases, example_workspace, one_arrow_algebra, split_example_algebra, Alias, Side,
    Workspace, WorkspaceCaps,
};
