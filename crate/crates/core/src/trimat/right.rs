//! Right modules `(W1, W2, φ: W2 ⊗_B U → W1)` and the tensor product over
//! the triangular algebra.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::homology::{tensor_map, tensor_space, TensorSpace};
use crate::quiverrep::{ensure_morphism, BlockMap, FinModule, Rep};

use super::algebra::TriangularAlgebra;
use super::triple::TripleModule;

/// A right module over the triangular algebra. `w1` and `w2` are
/// representations of the opposite quivers of `A` and `B`.
#[derive(Clone, Debug)]
pub struct RightTriple {
    lambda: Arc<TriangularAlgebra>,
    w1: Rep,
    w2: Rep,
    /// One block per `A`-vertex: `(W2 ⊗_B U e_a) → W1_a`.
    phi: BlockMap,
    /// `spaces[a]` presents `W2 ⊗_B U e_a`.
    spaces: Vec<TensorSpace>,
}

/// `W2 ⊗_B U` as a representation of the opposite quiver of `A`.
fn tensor_with_u(lambda: &TriangularAlgebra, w2: &Rep) -> Result<(Rep, Vec<TensorSpace>)> {
    let u = &lambda.u;
    let qa = &lambda.a.quiver;
    let spaces = (0..qa.num_vertices()).map(|a| tensor_space(w2, &u.column(a))).collect::<Result<Vec<_>>>()?;
    let id = BlockMap::identity(w2.field(), w2.dims());
    let maps = qa
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, alpha)| tensor_map(&spaces[alpha.target], &spaces[alpha.source], &id, &u.right_map(ai)))
        .collect();
    let dims = spaces.iter().map(TensorSpace::dim).collect();
    Ok((Rep::new(u.right_opposite().clone(), dims, maps)?, spaces))
}

impl RightTriple {
    pub fn new(lambda: &Arc<TriangularAlgebra>, w1: Rep, w2: Rep, phi: BlockMap) -> Result<Self> {
        if **w1.algebra() != **lambda.u.right_opposite() || **w2.algebra() != **lambda.u.left_opposite() {
            return Err(Error::Argument("right module components must be over the opposite algebras".into()));
        }
        let (t, spaces) = tensor_with_u(lambda, &w2)?;
        ensure_morphism(&t, &w1, &phi)?;
        Ok(RightTriple { lambda: lambda.clone(), w1, w2, phi, spaces })
    }

    pub fn zero(lambda: &Arc<TriangularAlgebra>) -> Result<Self> {
        let w1 = Rep::zero(lambda.u.right_opposite());
        let w2 = Rep::zero(lambda.u.left_opposite());
        let na = lambda.a.quiver.num_vertices();
        let phi = BlockMap::zero(lambda.field(), &vec![0; na], &vec![0; na]);
        RightTriple::new(lambda, w1, w2, phi)
    }

    /// The right module `(U, 0)`.
    pub fn u_zero(lambda: &Arc<TriangularAlgebra>) -> Result<Self> {
        let w1 = lambda.u.as_right_module();
        let w2 = Rep::zero(lambda.u.left_opposite());
        let (t, _) = tensor_with_u(lambda, &w2)?;
        let phi = BlockMap::zero(lambda.field(), t.dims(), w1.dims());
        RightTriple::new(lambda, w1, w2, phi)
    }

    /// The right module `(U, B)` with multiplication `B ⊗_B U → U`; this is
    /// the second row of the algebra.
    #[allow(clippy::needless_range_loop)]
    pub fn u_b(lambda: &Arc<TriangularAlgebra>) -> Result<Self> {
        let u = &lambda.u;
        let field = lambda.field();
        let bop = u.left_opposite();
        let nb = lambda.b.quiver.num_vertices();
        let na = lambda.a.quiver.num_vertices();
        let w1 = u.as_right_module();
        let projectives: Vec<Rep> = (0..nb).map(|b0| Rep::projective(bop, b0)).collect::<Result<_>>()?;
        let mut w2 = Rep::zero(bop);
        for p in &projectives {
            w2 = w2.direct_sum(p);
        }
        // Basis vector (b0, k) of W2 at vertex b is a B-path from b to b0.
        let mut paths_at: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); nb];
        for b0 in 0..nb {
            for (path, end) in bop.quiver.paths_from(b0) {
                let forward: Vec<usize> = path.iter().rev().copied().collect();
                paths_at[end].push((b0, forward));
            }
        }
        let (_, spaces) = tensor_with_u(lambda, &w2)?;
        let mut u_offsets = vec![vec![0usize; na]; nb + 1];
        for b in 0..nb {
            for a in 0..na {
                u_offsets[b + 1][a] = u_offsets[b][a] + u.dims()[b][a];
            }
        }
        let blocks = (0..na)
            .map(|a| {
                let s = &spaces[a];
                let mut g = Matrix::zeros(field, w1.dims()[a], s.generators);
                for b in 0..nb {
                    for (i, (b0, path)) in paths_at[b].iter().enumerate() {
                        let act = u.left_path_action(path, b, a);
                        for j in 0..u.dims()[b][a] {
                            let k = s.generator(b, i, j);
                            for (r, x) in act.column(j).into_iter().enumerate() {
                                g.set(u_offsets[*b0][a] + r, k, x);
                            }
                        }
                    }
                }
                g.mul_unchecked(&s.quotient.section)
            })
            .collect();
        RightTriple::new(lambda, w1, w2, BlockMap::new(blocks))
    }

    pub fn w1(&self) -> &Rep {
        &self.w1
    }

    pub fn w2(&self) -> &Rep {
        &self.w2
    }

    pub fn phi(&self) -> &BlockMap {
        &self.phi
    }
}

/// `dim W ⊗ M`, computed as `((W1 ⊗_A M1) ⊕ (W2 ⊗_B M2)) / H` where `H` is
/// spanned by `φ_W(w2 ⊗ u) ⊗ x1 − w2 ⊗ φ_M(u ⊗ x1)` over basis vectors.
pub fn tensor_over_lambda(w: &RightTriple, m: &TripleModule) -> Result<usize> {
    Ok(tensor_over_lambda_relations(w, m)?.0)
}

/// The dimension together with the matrix whose columns span `H`.
pub fn tensor_over_lambda_relations(w: &RightTriple, m: &TripleModule) -> Result<(usize, Matrix)> {
    if w.lambda != *m.lambda() {
        return Err(Error::Argument("modules over different algebras".into()));
    }
    let field = w.lambda.field();
    let u = &w.lambda.u;
    let t1 = tensor_space(&w.w1, m.m1())?;
    let t2 = tensor_space(&w.w2, m.m2())?;
    let nb = w.lambda.b.quiver.num_vertices();
    let na = w.lambda.a.quiver.num_vertices();
    let mt = m.tensor();
    let mut cols = Vec::new();
    for b in 0..nb {
        for a in 0..na {
            for wi in 0..w.w2.dims()[b] {
                for ui in 0..u.dims()[b][a] {
                    let wu = &w.spaces[a];
                    let wu_vec = wu.quotient.projection.column(wu.generator(b, wi, ui));
                    let w1_vec = w.phi.blocks[a].mul_vec(&wu_vec);
                    let ux = &mt.spaces[b];
                    let mut e_w = vec![0u32; w.w2.dims()[b]];
                    e_w[wi] = 1;
                    for xi in 0..m.m1().dims()[a] {
                        let mut e_x = vec![0u32; m.m1().dims()[a]];
                        e_x[xi] = 1;
                        let first = t1.pure(a, &w1_vec, &e_x, field);
                        let ux_vec = ux.quotient.projection.column(ux.generator(a, ui, xi));
                        let m2_vec = m.phi().blocks[b].mul_vec(&ux_vec);
                        let second = t2.pure(b, &e_w, &m2_vec, field);
                        let mut col = first;
                        col.extend(second.into_iter().map(|x| field.neg(x)));
                        cols.push(col);
                    }
                }
            }
        }
    }
    let rows = t1.dim() + t2.dim();
    let h = Matrix::from_columns(field, rows, &cols);
    Ok((rows - h.rank(), h))
}
