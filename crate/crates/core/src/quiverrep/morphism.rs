//! The abelian-category surface shared by quiver representations and
//! triangular-matrix triples.
//!
//! Both kinds of module are "a tuple of vector spaces with structure maps",
//! and a morphism is a tuple of matrices, one per space. [`BlockMap`] is that
//! tuple; [`FinModule`] is what a module type must provide so that hom
//! spaces, kernels, cokernels, decomposition, resolutions and Ext can be
//! written once.

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Quotient};

/// One matrix per underlying space; block `k` maps space `k` of the source
/// to space `k` of the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockMap {
    pub blocks: Vec<Matrix>,
}

impl BlockMap {
    pub fn new(blocks: Vec<Matrix>) -> Self {
        BlockMap { blocks }
    }

    pub fn zero(field: PrimeField, source: &[usize], target: &[usize]) -> Self {
        assert_eq!(source.len(), target.len());
        BlockMap {
            blocks: source.iter().zip(target).map(|(&s, &t)| Matrix::zeros(field, t, s)).collect(),
        }
    }

    pub fn identity(field: PrimeField, dims: &[usize]) -> Self {
        BlockMap { blocks: dims.iter().map(|&d| Matrix::identity(field, d)).collect() }
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::cols).collect()
    }

    pub fn target_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BlockMap) -> BlockMap {
        assert_eq!(self.blocks.len(), other.blocks.len(), "block count mismatch in compose");
        BlockMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul_unchecked(b)).collect(),
        }
    }

    pub fn add(&self, other: &BlockMap) -> BlockMap {
        BlockMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &BlockMap) -> BlockMap {
        BlockMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: u32) -> BlockMap {
        BlockMap { blocks: self.blocks.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn neg(&self) -> BlockMap {
        BlockMap { blocks: self.blocks.iter().map(Matrix::neg).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(Matrix::is_injective)
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(Matrix::is_surjective)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn rank(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rank).collect()
    }

    pub fn inverse(&self) -> Option<BlockMap> {
        self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>().map(BlockMap::new)
    }

    /// Row-major concatenation of all blocks.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn unflatten(field: PrimeField, source: &[usize], target: &[usize], data: &[u32]) -> BlockMap {
        let mut blocks = Vec::with_capacity(source.len());
        let mut at = 0;
        for (&s, &t) in source.iter().zip(target) {
            let n = s * t;
            blocks.push(Matrix::from_vec(field, t, s, data[at..at + n].to_vec()).expect("sized"));
            at += n;
        }
        assert_eq!(at, data.len(), "flattened block map has the wrong length");
        BlockMap { blocks }
    }

    /// `Σ coeffs[i] * basis[i]`.
    pub fn combination(field: PrimeField, basis: &[BlockMap], coeffs: &[u32], source: &[usize], target: &[usize]) -> BlockMap {
        let mut acc = BlockMap::zero(field, source, target);
        for (b, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Which projective cover a module should produce.
///
/// `Minimal` covers the top; `Canonical` uses one generator per basis vector
/// and is never minimal unless the module is semisimple projective. Ext and
/// Tor do not depend on the choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CoverKind {
    #[default]
    Minimal,
    Canonical,
}

/// A finite-dimensional module presented as a tuple of vector spaces.
///
/// Implementors lay out a direct sum block by block with the coordinates of
/// the first summand before those of the second. The generic algorithms in
/// this crate rely on that layout.
pub trait FinModule: Clone + std::fmt::Debug + Send + Sync + Sized {
    fn field(&self) -> PrimeField;

    /// Dimensions of the underlying spaces.
    fn block_dims(&self) -> Vec<usize>;

    /// True when both modules live over the same algebra.
    fn compatible(&self, other: &Self) -> bool;

    fn zero_object(&self) -> Self;

    /// Linear residual whose vanishing characterises morphisms `self → target`.
    fn morphism_residual(&self, target: &Self, f: &BlockMap) -> Vec<u32>;

    /// Submodule spanned blockwise by the columns of `basis` (assumed invariant),
    /// with its inclusion.
    fn submodule(&self, basis: &[Matrix]) -> Result<(Self, BlockMap)>;

    /// Quotient by the invariant subspaces spanned by `basis`, with the projection.
    fn quotient(&self, basis: &[Matrix]) -> Result<(Self, BlockMap)>;

    /// `self ⊕ other` in the block layout described above.
    fn direct_sum(&self, other: &Self) -> Self;

    /// A projective module with an epimorphism onto `self`.
    fn projective_cover(&self, kind: CoverKind) -> (Self, BlockMap);

    fn total_dim(&self) -> usize {
        self.block_dims().iter().sum()
    }

    fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Coefficient matrix of the linear system defining `Hom(self, target)`.
    fn hom_system(&self, target: &Self) -> Matrix {
        let field = self.field();
        let src = self.block_dims();
        let tgt = target.block_dims();
        let unknowns: usize = src.iter().zip(&tgt).map(|(s, t)| s * t).sum();
        let mut columns = Vec::with_capacity(unknowns);
        let mut unit = vec![0u32; unknowns];
        for i in 0..unknowns {
            unit[i] = 1;
            let f = BlockMap::unflatten(field, &src, &tgt, &unit);
            columns.push(self.morphism_residual(target, &f));
            unit[i] = 0;
        }
        let rows = columns.first().map_or(0, Vec::len);
        Matrix::from_columns(field, rows, &columns)
    }
}

pub fn check_compatible<M: FinModule>(a: &M, b: &M) -> Result<()> {
    if a.compatible(b) {
        Ok(())
    } else {
        Err(Error::Argument("modules live over different algebras".into()))
    }
}

pub fn is_morphism<M: FinModule>(source: &M, target: &M, f: &BlockMap) -> bool {
    f.source_dims() == source.block_dims()
        && f.target_dims() == target.block_dims()
        && source.morphism_residual(target, f).iter().all(|&x| x == 0)
}

pub fn ensure_morphism<M: FinModule>(source: &M, target: &M, f: &BlockMap) -> Result<()> {
    if is_morphism(source, target, f) {
        Ok(())
    } else {
        Err(Error::Contract("block map does not commute with the structure maps".into()))
    }
}

/// A basis of `Hom(m, n)`.
pub fn hom_basis<M: FinModule>(m: &M, n: &M) -> Result<Vec<BlockMap>> {
    check_compatible(m, n)?;
    let field = m.field();
    let src = m.block_dims();
    let tgt = n.block_dims();
    let sys = m.hom_system(n);
    let k = sys.kernel_basis();
    Ok(k.columns().iter().map(|c| BlockMap::unflatten(field, &src, &tgt, c)).collect())
}

pub fn hom_dim<M: FinModule>(m: &M, n: &M) -> Result<usize> {
    check_compatible(m, n)?;
    let sys = m.hom_system(n);
    Ok(sys.cols() - sys.rank())
}

/// Coordinates of `f` in terms of a list of block maps, if it lies in their span.
pub fn coordinates(basis: &[BlockMap], f: &BlockMap) -> Option<Vec<u32>> {
    let field = f.blocks.first().map(Matrix::field)?;
    let len = f.flatten().len();
    let cols: Vec<Vec<u32>> = basis.iter().map(BlockMap::flatten).collect();
    let m = Matrix::from_columns(field, len, &cols);
    m.solve(&f.flatten()).ok().flatten()
}

pub fn kernel<M: FinModule>(source: &M, target: &M, f: &BlockMap) -> Result<(M, BlockMap)> {
    ensure_morphism(source, target, f)?;
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::kernel_basis).collect();
    source.submodule(&bases)
}

pub fn image<M: FinModule>(source: &M, target: &M, f: &BlockMap) -> Result<(M, BlockMap)> {
    ensure_morphism(source, target, f)?;
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::column_space_basis).collect();
    target.submodule(&bases)
}

pub fn cokernel<M: FinModule>(source: &M, target: &M, f: &BlockMap) -> Result<(M, BlockMap)> {
    ensure_morphism(source, target, f)?;
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::column_space_basis).collect();
    target.quotient(&bases)
}

/// Direct sum of a list with its injections and projections.
pub struct DirectSum<M> {
    pub sum: M,
    pub injections: Vec<BlockMap>,
    pub projections: Vec<BlockMap>,
}

pub fn direct_sum<M: FinModule>(zero: &M, parts: &[M]) -> DirectSum<M> {
    let field = zero.field();
    let mut sum = zero.zero_object();
    for p in parts {
        sum = sum.direct_sum(p);
    }
    let total = sum.block_dims();
    let mut offsets = vec![0usize; total.len()];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for p in parts {
        let dims = p.block_dims();
        let mut inj = Vec::with_capacity(dims.len());
        let mut proj = Vec::with_capacity(dims.len());
        for (k, &d) in dims.iter().enumerate() {
            let mut i = Matrix::zeros(field, total[k], d);
            let mut q = Matrix::zeros(field, d, total[k]);
            for r in 0..d {
                i.set(offsets[k] + r, r, 1);
                q.set(r, offsets[k] + r, 1);
            }
            offsets[k] += d;
            inj.push(i);
            proj.push(q);
        }
        injections.push(BlockMap::new(inj));
        projections.push(BlockMap::new(proj));
    }
    DirectSum { sum, injections, projections }
}

/// The block map into a direct sum whose components are `maps`.
pub fn map_into_sum(maps: &[BlockMap]) -> BlockMap {
    let n = maps[0].blocks.len();
    let blocks = (0..n)
        .map(|k| {
            let mut acc = maps[0].blocks[k].clone();
            for m in &maps[1..] {
                acc = acc.vstack(&m.blocks[k]);
            }
            acc
        })
        .collect();
    BlockMap::new(blocks)
}

/// The block map out of a direct sum whose components are `maps`.
pub fn map_out_of_sum(maps: &[BlockMap]) -> BlockMap {
    let n = maps[0].blocks.len();
    let blocks = (0..n)
        .map(|k| {
            let mut acc = maps[0].blocks[k].clone();
            for m in &maps[1..] {
                acc = acc.hstack(&m.blocks[k]);
            }
            acc
        })
        .collect();
    BlockMap::new(blocks)
}

/// A chain `M_0 → M_1 → ... → M_k` of composable morphisms.
#[derive(Clone, Debug)]
pub struct Chain<M> {
    pub objects: Vec<M>,
    pub maps: Vec<BlockMap>,
}

impl<M: FinModule> Chain<M> {
    pub fn new(objects: Vec<M>, maps: Vec<BlockMap>) -> Result<Self> {
        if objects.len() != maps.len() + 1 {
            return Err(Error::Argument("a chain needs one more object than maps".into()));
        }
        for (i, f) in maps.iter().enumerate() {
            check_compatible(&objects[i], &objects[i + 1])?;
            if f.source_dims() != objects[i].block_dims() || f.target_dims() != objects[i + 1].block_dims() {
                return Err(Error::Argument(format!("map {i} is not composable with its neighbours")));
            }
            ensure_morphism(&objects[i], &objects[i + 1], f)?;
        }
        Ok(Chain { objects, maps })
    }

    /// A short exact sequence `0 → a → b → c → 0` as a chain with zero ends.
    pub fn short(a: M, b: M, c: M, mono: BlockMap, epi: BlockMap) -> Result<Self> {
        let field = a.field();
        let zero = a.zero_object();
        let into = BlockMap::zero(field, &zero.block_dims(), &a.block_dims());
        let out = BlockMap::zero(field, &c.block_dims(), &zero.block_dims());
        Chain::new(vec![zero.clone(), a, b, c, zero], vec![into, mono, epi, out])
    }

    /// First interior position where `im = ker` fails, if any.
    pub fn first_defect(&self) -> Option<usize> {
        for i in 1..self.objects.len().saturating_sub(1) {
            let f = &self.maps[i - 1];
            let g = &self.maps[i];
            for k in 0..f.blocks.len() {
                if !g.blocks[k].mul_unchecked(&f.blocks[k]).is_zero() {
                    return Some(i);
                }
                let dim = self.objects[i].block_dims()[k];
                if f.blocks[k].rank() + g.blocks[k].rank() != dim {
                    return Some(i);
                }
            }
        }
        None
    }

    pub fn is_exact(&self) -> bool {
        self.first_defect().is_none()
    }
}

/// Exactness at every interior position, blockwise.
pub fn is_exact<M: FinModule>(objects: &[M], maps: &[BlockMap]) -> Result<bool> {
    Ok(Chain::new(objects.to_vec(), maps.to_vec())?.is_exact())
}

/// Induced quotient coordinates used by `quotient` implementations.
pub fn quotients(field: PrimeField, dims: &[usize], basis: &[Matrix]) -> Vec<Quotient> {
    dims.iter().zip(basis).map(|(&d, b)| Quotient::new(field, d, b)).collect()
}
