use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};
use crate::quiverrep::{BlockMap, FinModule, PathAlgebra, Rep};

/// A finite-dimensional `(B, A)`-bimodule `U` over path algebras.
///
/// `U` splits as spaces `U[b][a] = e_b U e_a`. A `B`-arrow `β: b → b'` acts
/// on the left by `U[b][a] → U[b'][a]`; an `A`-arrow `α: a → a'` acts on the
/// right by `U[b][a'] → U[b][a]`. The two actions commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: Arc<PathAlgebra>,
    right: Arc<PathAlgebra>,
    left_op: Arc<PathAlgebra>,
    right_op: Arc<PathAlgebra>,
    dims: Vec<Vec<usize>>,
    /// `left_action[β][a]`
    left_action: Vec<Vec<Matrix>>,
    /// `right_action[α][b]`
    right_action: Vec<Vec<Matrix>>,
}

impl Bimodule {
    pub fn new(
        left: Arc<PathAlgebra>,
        right: Arc<PathAlgebra>,
        dims: Vec<Vec<usize>>,
        left_action: Vec<Vec<Matrix>>,
        right_action: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        if left.field != right.field {
            return Err(Error::Argument("bimodule sides over different fields".into()));
        }
        let qb = &left.quiver;
        let qa = &right.quiver;
        let (nb, na) = (qb.num_vertices(), qa.num_vertices());
        if dims.len() != nb || dims.iter().any(|r| r.len() != na) {
            return Err(Error::Dimension(format!("bimodule needs a {nb} x {na} table of dimensions")));
        }
        if left_action.len() != qb.arrows().len() || right_action.len() != qa.arrows().len() {
            return Err(Error::Dimension("one action list per arrow is required".into()));
        }
        for (bi, beta) in qb.arrows().iter().enumerate() {
            if left_action[bi].len() != na {
                return Err(Error::Dimension(format!("left action of {} needs one matrix per A-vertex", beta.label)));
            }
            for (a, m) in left_action[bi].iter().enumerate() {
                if m.shape() != (dims[beta.target][a], dims[beta.source][a]) {
                    return Err(Error::Dimension(format!("left action of {} at A-vertex {a} has shape {:?}", beta.label, m.shape())));
                }
            }
        }
        for (ai, alpha) in qa.arrows().iter().enumerate() {
            if right_action[ai].len() != nb {
                return Err(Error::Dimension(format!("right action of {} needs one matrix per B-vertex", alpha.label)));
            }
            for (b, m) in right_action[ai].iter().enumerate() {
                if m.shape() != (dims[b][alpha.source], dims[b][alpha.target]) {
                    return Err(Error::Dimension(format!("right action of {} at B-vertex {b} has shape {:?}", alpha.label, m.shape())));
                }
            }
        }
        for (bi, beta) in qb.arrows().iter().enumerate() {
            for (ai, alpha) in qa.arrows().iter().enumerate() {
                let lhs = left_action[bi][alpha.source].mul_unchecked(&right_action[ai][beta.source]);
                let rhs = right_action[ai][beta.target].mul_unchecked(&left_action[bi][alpha.target]);
                if lhs != rhs {
                    return Err(Error::Contract(format!(
                        "left action of {} does not commute with right action of {}",
                        beta.label, alpha.label
                    )));
                }
            }
        }
        let left_op = left.opposite();
        let right_op = right.opposite();
        Ok(Bimodule { left, right, left_op, right_op, dims, left_action, right_action })
    }

    pub fn zero(left: Arc<PathAlgebra>, right: Arc<PathAlgebra>) -> Result<Self> {
        let f = left.field;
        let (nb, na) = (left.quiver.num_vertices(), right.quiver.num_vertices());
        let la = left.quiver.arrows().iter().map(|_| (0..na).map(|_| Matrix::zeros(f, 0, 0)).collect()).collect();
        let ra = right.quiver.arrows().iter().map(|_| (0..nb).map(|_| Matrix::zeros(f, 0, 0)).collect()).collect();
        Bimodule::new(left, right, vec![vec![0; na]; nb], la, ra)
    }

    pub fn field(&self) -> PrimeField {
        self.left.field
    }

    /// The algebra acting on the left (`B`).
    pub fn left_algebra(&self) -> &Arc<PathAlgebra> {
        &self.left
    }

    /// The algebra acting on the right (`A`).
    pub fn right_algebra(&self) -> &Arc<PathAlgebra> {
        &self.right
    }

    pub fn left_opposite(&self) -> &Arc<PathAlgebra> {
        &self.left_op
    }

    pub fn right_opposite(&self) -> &Arc<PathAlgebra> {
        &self.right_op
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn left_action(&self, beta: usize, a: usize) -> &Matrix {
        &self.left_action[beta][a]
    }

    pub fn right_action(&self, alpha: usize, b: usize) -> &Matrix {
        &self.right_action[alpha][b]
    }

    /// `U e_a` as a left `B`-module.
    pub fn column(&self, a: usize) -> Rep {
        let dims = self.dims.iter().map(|r| r[a]).collect();
        let maps = self.left_action.iter().map(|per_a| per_a[a].clone()).collect();
        Rep::new(self.left.clone(), dims, maps).expect("validated shapes")
    }

    /// `e_b U` as a right `A`-module, i.e. a representation of the opposite quiver.
    pub fn row(&self, b: usize) -> Rep {
        let dims = self.dims[b].clone();
        let maps = self.right_action.iter().map(|per_b| per_b[b].clone()).collect();
        Rep::new(self.right_op.clone(), dims, maps).expect("validated shapes")
    }

    /// The right action of `α: a → a'` as a `B`-morphism `U e_{a'} → U e_a`.
    pub fn right_map(&self, alpha: usize) -> BlockMap {
        BlockMap::new(self.right_action[alpha].clone())
    }

    /// The left action of `β: b → b'` as a right-module morphism `e_b U → e_{b'} U`.
    pub fn left_map(&self, beta: usize) -> BlockMap {
        BlockMap::new(self.left_action[beta].clone())
    }

    /// `U` as a left `B`-module.
    pub fn as_left_module(&self) -> Rep {
        let mut acc = Rep::zero(&self.left);
        for a in 0..self.right.quiver.num_vertices() {
            acc = acc.direct_sum(&self.column(a));
        }
        acc
    }

    /// `U` as a right `A`-module.
    pub fn as_right_module(&self) -> Rep {
        let mut acc = Rep::zero(&self.right_op);
        for b in 0..self.left.quiver.num_vertices() {
            acc = acc.direct_sum(&self.row(b));
        }
        acc
    }

    /// Composite left action of a `B`-path (arrow indices in traversal order)
    /// starting at `b`, on the spaces at `A`-vertex `a`.
    pub fn left_path_action(&self, path: &[usize], b: usize, a: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dims[b][a]);
        for &beta in path {
            acc = self.left_action[beta][a].mul_unchecked(&acc);
        }
        acc
    }
}
