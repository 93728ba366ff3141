use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};
use crate::quiverrep::{ensure_morphism, map_out_of_sum, BlockMap, CoverKind, FinModule, Rep};

use super::algebra::TriangularAlgebra;
use super::functors::{
    adjoint_inverse, adjoint_transpose, hom_functor, tensor_functor, tensor_morphism, HomFunctor, TensorProduct,
};

/// A module `(M1, M2, φ: U ⊗_A M1 → M2)` over the triangular algebra.
///
/// `φ` is stored against the presentation of `U ⊗_A M1` computed once and
/// cached in `tensor`. The underlying spaces are those of `M1` followed by
/// those of `M2`.
#[derive(Clone, Debug)]
pub struct TripleModule {
    lambda: Arc<TriangularAlgebra>,
    m1: Rep,
    m2: Rep,
    phi: BlockMap,
    tensor: Arc<TensorProduct>,
}

impl PartialEq for TripleModule {
    fn eq(&self, other: &Self) -> bool {
        self.lambda == other.lambda && self.m1 == other.m1 && self.m2 == other.m2 && self.phi == other.phi
    }
}

impl TripleModule {
    pub fn new(lambda: &Arc<TriangularAlgebra>, m1: Rep, m2: Rep, phi: BlockMap) -> Result<Self> {
        let tensor = Arc::new(tensor_functor(&lambda.u, &m1)?);
        Self::with_tensor(lambda, m1, m2, phi, tensor)
    }

    fn with_tensor(lambda: &Arc<TriangularAlgebra>, m1: Rep, m2: Rep, phi: BlockMap, tensor: Arc<TensorProduct>) -> Result<Self> {
        if **m2.algebra() != *lambda.b {
            return Err(Error::Argument("second component is not over B".into()));
        }
        if phi.source_dims() != tensor.rep.dims() || phi.target_dims() != m2.dims() {
            return Err(Error::Dimension("structure map has the wrong shape".into()));
        }
        ensure_morphism(&tensor.rep, &m2, &phi)?;
        Ok(TripleModule { lambda: lambda.clone(), m1, m2, phi, tensor })
    }

    pub fn zero(lambda: &Arc<TriangularAlgebra>) -> Self {
        let m1 = Rep::zero(&lambda.a);
        let m2 = Rep::zero(&lambda.b);
        let phi = BlockMap::zero(lambda.field(), m2.dims(), m2.dims());
        TripleModule::new(lambda, m1, m2, phi).expect("zero triple")
    }

    /// `(M1, U ⊗ M1)` with the identity structure map.
    pub fn induced(lambda: &Arc<TriangularAlgebra>, m1: &Rep) -> Result<Self> {
        let tensor = Arc::new(tensor_functor(&lambda.u, m1)?);
        let m2 = tensor.rep.clone();
        let phi = BlockMap::identity(lambda.field(), m2.dims());
        Self::with_tensor(lambda, m1.clone(), m2, phi, tensor)
    }

    /// `(Hom_B(U, N), N)` with the counit as structure map.
    pub fn coinduced(lambda: &Arc<TriangularAlgebra>, n2: &Rep) -> Result<Self> {
        let h = hom_functor(&lambda.u, n2)?;
        let id = BlockMap::identity(lambda.field(), h.rep.dims());
        Self::from_transpose(lambda, h.rep.clone(), n2.clone(), &id)
    }

    /// `(M1, 0)`.
    pub fn first(lambda: &Arc<TriangularAlgebra>, m1: &Rep) -> Result<Self> {
        let m2 = Rep::zero(&lambda.b);
        let tensor = Arc::new(tensor_functor(&lambda.u, m1)?);
        let phi = BlockMap::zero(lambda.field(), tensor.rep.dims(), m2.dims());
        Self::with_tensor(lambda, m1.clone(), m2, phi, tensor)
    }

    /// `(0, M2)`.
    pub fn second(lambda: &Arc<TriangularAlgebra>, m2: &Rep) -> Result<Self> {
        let m1 = Rep::zero(&lambda.a);
        let tensor = Arc::new(tensor_functor(&lambda.u, &m1)?);
        let phi = BlockMap::zero(lambda.field(), tensor.rep.dims(), m2.dims());
        Self::with_tensor(lambda, m1, m2.clone(), phi, tensor)
    }

    /// The triple whose structure map has adjoint `psi: M1 → Hom_B(U, M2)`.
    pub fn from_transpose(lambda: &Arc<TriangularAlgebra>, m1: Rep, m2: Rep, psi: &BlockMap) -> Result<Self> {
        let tensor = Arc::new(tensor_functor(&lambda.u, &m1)?);
        let h = hom_functor(&lambda.u, &m2)?;
        ensure_morphism(&m1, &h.rep, psi)?;
        let phi = adjoint_inverse(&tensor, &h, psi);
        Self::with_tensor(lambda, m1, m2, phi, tensor)
    }

    pub fn lambda(&self) -> &Arc<TriangularAlgebra> {
        &self.lambda
    }

    pub fn m1(&self) -> &Rep {
        &self.m1
    }

    pub fn m2(&self) -> &Rep {
        &self.m2
    }

    pub fn phi(&self) -> &BlockMap {
        &self.phi
    }

    pub fn tensor(&self) -> &TensorProduct {
        &self.tensor
    }

    /// `Hom_B(U, M2)` and the adjoint `φ̃: M1 → Hom_B(U, M2)`.
    pub fn transpose(&self) -> Result<(HomFunctor, BlockMap)> {
        let h = hom_functor(&self.lambda.u, &self.m2)?;
        let t = adjoint_transpose(&self.tensor, &h, &self.phi);
        Ok((h, t))
    }

    pub fn phi_is_mono(&self) -> bool {
        self.phi.is_injective()
    }

    pub fn coker_phi(&self) -> Result<Rep> {
        Ok(crate::quiverrep::cokernel(&self.tensor.rep, &self.m2, &self.phi)?.0)
    }

    pub fn transpose_is_epi(&self) -> Result<bool> {
        Ok(self.transpose()?.1.is_surjective())
    }

    pub fn ker_transpose(&self) -> Result<Rep> {
        let (h, t) = self.transpose()?;
        Ok(crate::quiverrep::kernel(&self.m1, &h.rep, &t)?.0)
    }

    /// Projective iff `M1` is projective, `φ` is injective and `Coker φ` is projective.
    pub fn is_projective(&self) -> Result<bool> {
        Ok(self.m1.is_projective() && self.phi_is_mono() && self.coker_phi()?.is_projective())
    }

    /// Injective iff `Ker φ̃` is injective, `M2` is injective and `φ̃` is surjective.
    pub fn is_injective(&self) -> Result<bool> {
        let (h, t) = self.transpose()?;
        if !t.is_surjective() || !self.m2.is_injective() {
            return Ok(false);
        }
        Ok(crate::quiverrep::kernel(&self.m1, &h.rep, &t)?.0.is_injective())
    }

    /// The two components of a morphism out of this triple.
    pub fn split(&self, f: &BlockMap) -> (BlockMap, BlockMap) {
        let na = self.m1.dims().len();
        (BlockMap::new(f.blocks[..na].to_vec()), BlockMap::new(f.blocks[na..].to_vec()))
    }

    /// `1 ⊗ f1` between the cached tensor products.
    pub fn tensor_of(&self, target: &TripleModule, f1: &BlockMap) -> BlockMap {
        tensor_morphism(&self.tensor, &target.tensor, f1)
    }
}

/// A morphism given by its two components.
pub fn join(f1: &BlockMap, f2: &BlockMap) -> BlockMap {
    BlockMap::new(f1.blocks.iter().chain(&f2.blocks).cloned().collect())
}

impl FinModule for TripleModule {
    fn field(&self) -> PrimeField {
        self.lambda.field()
    }

    fn block_dims(&self) -> Vec<usize> {
        self.m1.dims().iter().chain(self.m2.dims()).copied().collect()
    }

    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lambda, &other.lambda) || self.lambda == other.lambda
    }

    fn zero_object(&self) -> Self {
        TripleModule::zero(&self.lambda)
    }

    fn morphism_residual(&self, target: &Self, f: &BlockMap) -> Vec<u32> {
        let (f1, f2) = self.split(f);
        let mut out = self.m1.morphism_residual(&target.m1, &f1);
        out.extend(self.m2.morphism_residual(&target.m2, &f2));
        let lhs = target.phi.compose(&self.tensor_of(target, &f1));
        let rhs = f2.compose(&self.phi);
        out.extend(lhs.sub(&rhs).flatten());
        out
    }

    fn hom_system(&self, target: &Self) -> Matrix {
        let field = self.field();
        let s1 = self.m1.dims().to_vec();
        let t1 = target.m1.dims().to_vec();
        let s2 = self.m2.dims().to_vec();
        let t2 = target.m2.dims().to_vec();
        let n1: usize = s1.iter().zip(&t1).map(|(a, b)| a * b).sum();
        let n2: usize = s2.iter().zip(&t2).map(|(a, b)| a * b).sum();
        let a_sys = self.m1.hom_system(&target.m1);
        let b_sys = self.m2.hom_system(&target.m2);
        let square = |f1: &BlockMap, f2: &BlockMap| {
            target.phi.compose(&self.tensor_of(target, f1)).sub(&f2.compose(&self.phi)).flatten()
        };
        let zero1 = BlockMap::zero(field, &s1, &t1);
        let zero2 = BlockMap::zero(field, &s2, &t2);
        let mut cols = Vec::with_capacity(n1 + n2);
        let mut unit = vec![0u32; n1.max(n2)];
        for i in 0..n1 {
            unit[i] = 1;
            cols.push(square(&BlockMap::unflatten(field, &s1, &t1, &unit[..n1]), &zero2));
            unit[i] = 0;
        }
        for i in 0..n2 {
            unit[i] = 1;
            cols.push(square(&zero1, &BlockMap::unflatten(field, &s2, &t2, &unit[..n2])));
            unit[i] = 0;
        }
        let sq_rows = cols.first().map_or(0, Vec::len);
        let square_sys = Matrix::from_columns(field, sq_rows, &cols);
        let mut sys = Matrix::zeros(field, a_sys.rows() + b_sys.rows() + sq_rows, n1 + n2);
        sys.write_block(0, 0, &a_sys);
        sys.write_block(a_sys.rows(), n1, &b_sys);
        sys.write_block(a_sys.rows() + b_sys.rows(), 0, &square_sys);
        sys
    }

    fn submodule(&self, basis: &[Matrix]) -> Result<(Self, BlockMap)> {
        let na = self.m1.dims().len();
        let (s1, i1) = self.m1.submodule(&basis[..na])?;
        let (s2, i2) = self.m2.submodule(&basis[na..])?;
        let tensor = Arc::new(tensor_functor(&self.lambda.u, &s1)?);
        let pushed = self.phi.compose(&tensor_morphism(&tensor, &self.tensor, &i1));
        let phi = BlockMap::new(
            i2.blocks
                .iter()
                .zip(&pushed.blocks)
                .map(|(i, y)| {
                    i.solve_matrix(y)?
                        .ok_or_else(|| Error::Contract("subspaces are not closed under the structure map".into()))
                })
                .collect::<Result<_>>()?,
        );
        let sub = TripleModule::with_tensor(&self.lambda, s1, s2, phi, tensor)?;
        Ok((sub, join(&i1, &i2)))
    }

    fn quotient(&self, basis: &[Matrix]) -> Result<(Self, BlockMap)> {
        let na = self.m1.dims().len();
        let (q1, p1) = self.m1.quotient(&basis[..na])?;
        let (q2, p2) = self.m2.quotient(&basis[na..])?;
        let tensor = Arc::new(tensor_functor(&self.lambda.u, &q1)?);
        let sections = BlockMap::new(
            p1.blocks
                .iter()
                .map(|p| p.right_inverse().ok_or_else(|| Error::Contract("projection is not surjective".into())))
                .collect::<Result<_>>()?,
        );
        let lift = tensor_morphism(&tensor, &self.tensor, &sections);
        let phi = p2.compose(&self.phi).compose(&lift);
        let check_lhs = phi.compose(&tensor_morphism(&self.tensor, &tensor, &p1));
        if check_lhs != p2.compose(&self.phi) {
            return Err(Error::Contract("subspaces are not closed under the structure map".into()));
        }
        let quo = TripleModule::with_tensor(&self.lambda, q1, q2, phi, tensor)?;
        Ok((quo, join(&p1, &p2)))
    }

    fn direct_sum(&self, other: &Self) -> Self {
        assert!(self.compatible(other), "direct sum across algebras");
        let m1 = self.m1.direct_sum(&other.m1);
        let m2 = self.m2.direct_sum(&other.m2);
        let tensor = Arc::new(tensor_functor(&self.lambda.u, &m1).expect("same algebra"));
        let parts1 = crate::quiverrep::direct_sum(&self.m1, &[self.m1.clone(), other.m1.clone()]);
        let parts2 = crate::quiverrep::direct_sum(&self.m2, &[self.m2.clone(), other.m2.clone()]);
        let a = parts2.injections[0]
            .compose(&self.phi)
            .compose(&tensor_morphism(&tensor, &self.tensor, &parts1.projections[0]));
        let b = parts2.injections[1]
            .compose(&other.phi)
            .compose(&tensor_morphism(&tensor, &other.tensor, &parts1.projections[1]));
        TripleModule::with_tensor(&self.lambda, m1, m2, a.add(&b), tensor).expect("sum of triples")
    }

    fn projective_cover(&self, kind: CoverKind) -> (Self, BlockMap) {
        let (p1, pi1) = self.m1.projective_cover(kind);
        let free = TripleModule::induced(&self.lambda, &p1).expect("same algebra");
        let f2 = self.phi.compose(&tensor_morphism(&free.tensor, &self.tensor, &pi1));
        let free_map = join(&pi1, &f2);
        let (q2, pi2) = match kind {
            CoverKind::Minimal => {
                let im: Vec<Matrix> = f2.blocks.iter().map(Matrix::column_space_basis).collect();
                self.m2.relative_cover(&im)
            }
            CoverKind::Canonical => self.m2.projective_cover(CoverKind::Canonical),
        };
        let rest = TripleModule::second(&self.lambda, &q2).expect("same algebra");
        let rest_map = join(&BlockMap::zero(self.field(), &vec![0; p1.dims().len()], self.m1.dims()), &pi2);
        let sum = free.direct_sum(&rest);
        (sum, map_out_of_sum(&[free_map, rest_map]))
    }
}
