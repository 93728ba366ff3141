use std::sync::Arc;

use rayon::prelude::*;

use crate::error::Result;
use crate::quiverrep::{bounded_sums, hom_basis, is_indecomposable, is_iso, BlockMap, Catalog, FinModule, Rep};

use super::algebra::TriangularAlgebra;
use super::functors::tensor_functor;
use super::triple::TripleModule;

/// Bounds for the brute-force search over triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleCaps {
    /// Largest dimension allowed at any vertex of either component.
    pub dim_cap: usize,
    /// Largest number of structure maps tried for one pair of components.
    pub phi_budget: u128,
}

impl Default for TripleCaps {
    fn default() -> Self {
        TripleCaps { dim_cap: 2, phi_budget: 1 << 14 }
    }
}

fn sums(cat: &Catalog<Rep>, zero: &Rep, cap: usize) -> Vec<Rep> {
    let dims: Vec<Vec<usize>> = cat.entries.iter().map(|e| e.dim_vector.clone()).collect();
    let n = zero.dims().len();
    std::iter::once(zero.clone())
        .chain(bounded_sums(&dims, &vec![cap; n]).into_iter().map(|m| cat.sum_of(zero, &m)))
        .collect()
}

/// Indecomposable triples `(M1, M2, φ)` with components bounded by `caps`,
/// up to isomorphism. Components range over sums of the given catalog
/// entries and `φ` over every element of `Hom_B(U ⊗ M1, M2)`.
///
/// The result is flagged complete when both component catalogs are
/// complete and no pair of components exceeded the structure-map budget;
/// indecomposables with a component beyond the cap are not seen either way.
pub fn enumerate_triple_indecomposables(
    lambda: &Arc<TriangularAlgebra>,
    a_cat: &Catalog<Rep>,
    b_cat: &Catalog<Rep>,
    caps: TripleCaps,
) -> Result<Catalog<TripleModule>> {
    let field = lambda.field();
    let firsts = sums(a_cat, &Rep::zero(&lambda.a), caps.dim_cap);
    let seconds = sums(b_cat, &Rep::zero(&lambda.b), caps.dim_cap);
    let pairs: Vec<(&Rep, &Rep)> = firsts
        .iter()
        .flat_map(|m1| seconds.iter().map(move |m2| (m1, m2)))
        .filter(|(m1, m2)| m1.total_dim() + m2.total_dim() > 0)
        .collect();
    let found: Vec<Result<(Vec<TripleModule>, bool)>> = pairs
        .par_iter()
        .map(|&(m1, m2)| {
            let t = tensor_functor(&lambda.u, m1)?;
            let basis = hom_basis(&t.rep, m2)?;
            let points = field.points(basis.len());
            if points > caps.phi_budget {
                return Ok((Vec::new(), false));
            }
            let mut kept: Vec<TripleModule> = Vec::new();
            for idx in 0..points {
                let phi = BlockMap::combination(field, &basis, &field.point(basis.len(), idx), t.rep.dims(), m2.dims());
                let x = TripleModule::new(lambda, m1.clone(), m2.clone(), phi)?;
                if !is_indecomposable(&x)? {
                    continue;
                }
                let mut fresh = true;
                for k in &kept {
                    if is_iso(k, &x)? {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    kept.push(x);
                }
            }
            Ok((kept, true))
        })
        .collect();
    let mut all = Vec::new();
    let mut complete = a_cat.complete && b_cat.complete;
    for r in found {
        let (mods, ok) = r?;
        complete &= ok;
        all.extend(mods);
    }
    // The indecomposable projectives and injectives must fit under the cap.
    let fits = |x: &TripleModule| x.m1().dims().iter().chain(x.m2().dims()).all(|&d| d <= caps.dim_cap);
    for v in 0..lambda.a.quiver.num_vertices() {
        complete &= fits(&TripleModule::induced(lambda, &Rep::projective(&lambda.a, v)?)?);
        complete &= fits(&TripleModule::first(lambda, &Rep::injective(&lambda.a, v)?)?);
    }
    for v in 0..lambda.b.quiver.num_vertices() {
        complete &= fits(&TripleModule::second(lambda, &Rep::projective(&lambda.b, v)?)?);
        complete &= fits(&TripleModule::coinduced(lambda, &Rep::injective(&lambda.b, v)?)?);
    }
    Catalog::from_modules(all, complete, |x: &TripleModule| {
        format!("({},{})", a_cat.describe(x.m1()), b_cat.describe(x.m2()))
    })
}
