//! `U ⊗_A −`, `Hom_B(U, −)` and the adjunction between them.

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::homology::{tensor_map, tensor_space, TensorSpace};
use crate::quiverrep::{coordinates, hom_basis, BlockMap, FinModule, Rep};

use super::bimodule::Bimodule;

/// `U ⊗_A M` as a `B`-representation, with the presentation of each space.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub rep: Rep,
    /// `spaces[b]` presents `e_b U ⊗_A M`.
    pub spaces: Vec<TensorSpace>,
}

pub fn tensor_functor(u: &Bimodule, m1: &Rep) -> Result<TensorProduct> {
    if **m1.algebra() != **u.right_algebra() {
        return Err(Error::Argument("module is not over the bimodule's right algebra".into()));
    }
    let nb = u.left_algebra().quiver.num_vertices();
    let spaces = (0..nb).map(|b| tensor_space(&u.row(b), m1)).collect::<Result<Vec<_>>>()?;
    let id = BlockMap::identity(m1.field(), m1.dims());
    let qb = &u.left_algebra().quiver;
    let maps = qb
        .arrows()
        .iter()
        .enumerate()
        .map(|(bi, beta)| tensor_map(&spaces[beta.source], &spaces[beta.target], &u.left_map(bi), &id))
        .collect();
    let dims = spaces.iter().map(TensorSpace::dim).collect();
    let rep = Rep::new(u.left_algebra().clone(), dims, maps)?;
    Ok(TensorProduct { rep, spaces })
}

/// `1 ⊗ f: U ⊗ M → U ⊗ N` for an `A`-morphism (or any vertexwise map) `f`.
pub fn tensor_morphism(src: &TensorProduct, tgt: &TensorProduct, f: &BlockMap) -> BlockMap {
    let field = src.rep.field();
    BlockMap::new(
        src.spaces
            .iter()
            .zip(&tgt.spaces)
            .map(|(s, t)| tensor_map(s, t, &BlockMap::identity(field, &s.right_dims), f))
            .collect(),
    )
}

/// `Hom_B(U, N)` as an `A`-representation, with a basis of each space.
#[derive(Clone, Debug)]
pub struct HomFunctor {
    pub rep: Rep,
    /// The `B`-module `N`.
    pub target: Rep,
    /// `bases[a]` is a basis of `Hom_B(U e_a, N)`.
    pub bases: Vec<Vec<BlockMap>>,
}

pub fn hom_functor(u: &Bimodule, n2: &Rep) -> Result<HomFunctor> {
    if **n2.algebra() != **u.left_algebra() {
        return Err(Error::Argument("module is not over the bimodule's left algebra".into()));
    }
    let field = n2.field();
    let qa = &u.right_algebra().quiver;
    let bases = (0..qa.num_vertices()).map(|a| hom_basis(&u.column(a), n2)).collect::<Result<Vec<_>>>()?;
    let maps = qa
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, alpha)| {
            let r = u.right_map(ai);
            let cols: Vec<Vec<u32>> = bases[alpha.source]
                .iter()
                .map(|f| coordinates(&bases[alpha.target], &f.compose(&r)).unwrap_or_else(|| vec![0; bases[alpha.target].len()]))
                .collect();
            Matrix::from_columns(field, bases[alpha.target].len(), &cols)
        })
        .collect();
    let dims = bases.iter().map(Vec::len).collect();
    let rep = Rep::new(u.right_algebra().clone(), dims, maps)?;
    Ok(HomFunctor { rep, target: n2.clone(), bases })
}

/// `Hom_B(U, g)` for a `B`-morphism `g: N → N'`.
pub fn hom_morphism(src: &HomFunctor, tgt: &HomFunctor, g: &BlockMap) -> BlockMap {
    let field = src.rep.field();
    BlockMap::new(
        src.bases
            .iter()
            .zip(&tgt.bases)
            .map(|(sb, tb)| {
                let cols: Vec<Vec<u32>> = sb
                    .iter()
                    .map(|f| coordinates(tb, &g.compose(f)).unwrap_or_else(|| vec![0; tb.len()]))
                    .collect();
                Matrix::from_columns(field, tb.len(), &cols)
            })
            .collect(),
    )
}

/// The adjoint `M → Hom_B(U, N)` of a `B`-morphism `φ: U ⊗ M → N`, sending
/// `m` to `u ↦ φ(u ⊗ m)`.
pub fn adjoint_transpose(t: &TensorProduct, h: &HomFunctor, phi: &BlockMap) -> BlockMap {
    let field = t.rep.field();
    let na = h.bases.len();
    let n_dims = phi.target_dims();
    let blocks = (0..na)
        .map(|a| {
            let m_dim = t.spaces.first().map_or(0, |s| s.left_dims[a]);
            let cols: Vec<Vec<u32>> = (0..m_dim)
                .map(|j| {
                    let blocks: Vec<Matrix> = t
                        .spaces
                        .iter()
                        .enumerate()
                        .map(|(b, s)| {
                            let u_dim = s.right_dims[a];
                            let images: Vec<Vec<u32>> = (0..u_dim)
                                .map(|i| phi.blocks[b].mul_vec(&s.quotient.projection.column(s.generator(a, i, j))))
                                .collect();
                            Matrix::from_columns(field, n_dims[b], &images)
                        })
                        .collect();
                    coordinates(&h.bases[a], &BlockMap::new(blocks)).unwrap_or_else(|| vec![0; h.bases[a].len()])
                })
                .collect();
            Matrix::from_columns(field, h.bases[a].len(), &cols)
        })
        .collect();
    BlockMap::new(blocks)
}

/// Inverse of [`adjoint_transpose`].
pub fn adjoint_inverse(t: &TensorProduct, h: &HomFunctor, psi: &BlockMap) -> BlockMap {
    let field = t.rep.field();
    let n_dims = h.target.dims();
    let blocks = t
        .spaces
        .iter()
        .enumerate()
        .map(|(b, s)| {
            let mut g = Matrix::zeros(field, n_dims[b], s.generators);
            for a in 0..s.left_dims.len() {
                let basis = &h.bases[a];
                if basis.is_empty() {
                    continue;
                }
                for j in 0..s.left_dims[a] {
                    let f = BlockMap::combination(field, basis, &psi.blocks[a].column(j), &basis[0].source_dims(), n_dims);
                    for i in 0..s.right_dims[a] {
                        let k = s.generator(a, i, j);
                        for (r, x) in f.blocks[b].column(i).into_iter().enumerate() {
                            g.set(r, k, x);
                        }
                    }
                }
            }
            g.mul_unchecked(&s.quotient.section)
        })
        .collect();
    BlockMap::new(blocks)
}
