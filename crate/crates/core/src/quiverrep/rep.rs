use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Quotient};

use super::morphism::{map_out_of_sum, quotients, BlockMap, CoverKind, FinModule};
use super::quiver::{PathAlgebra, Quiver};

/// A finite-dimensional representation of a quiver, i.e. a left module over
/// its path algebra.
///
/// Arrows act along their direction: an arrow `α: v → w` is a linear map
/// `M_v → M_w`. With this convention the projective at `v` has basis the
/// paths starting at `v`, and the injective at `v` is dual to the paths
/// ending at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    algebra: Arc<PathAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A morphism of representations with its endpoints.
#[derive(Clone, Debug)]
pub struct RepMorphism {
    pub source: Rep,
    pub target: Rep,
    pub map: BlockMap,
}

impl RepMorphism {
    pub fn new(source: Rep, target: Rep, map: BlockMap) -> Result<Self> {
        super::morphism::ensure_morphism(&source, &target, &map)?;
        Ok(RepMorphism { source, target, map })
    }
}

impl Rep {
    pub fn new(algebra: Arc<PathAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = &algebra.quiver;
        if dims.len() != q.num_vertices() {
            return Err(Error::Dimension(format!("{} dimensions for {} vertices", dims.len(), q.num_vertices())));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::Dimension(format!("{} matrices for {} arrows", maps.len(), q.arrows().len())));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Dimension(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.label,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field {
                return Err(Error::Field(format!("matrix for arrow {} is over the wrong field", a.label)));
            }
        }
        Ok(Rep { algebra, dims, maps })
    }

    pub fn zero(algebra: &Arc<PathAlgebra>) -> Self {
        let q = &algebra.quiver;
        let f = algebra.field;
        Rep {
            algebra: algebra.clone(),
            dims: vec![0; q.num_vertices()],
            maps: q.arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect(),
        }
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.algebra
    }

    pub fn quiver(&self) -> &Quiver {
        &self.algebra.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn arrow_map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    fn check_vertex(algebra: &PathAlgebra, v: usize) -> Result<()> {
        if v >= algebra.quiver.num_vertices() {
            return Err(Error::Argument(format!("vertex index {v} out of range")));
        }
        Ok(())
    }

    pub fn simple(algebra: &Arc<PathAlgebra>, v: usize) -> Result<Self> {
        Self::check_vertex(algebra, v)?;
        let q = &algebra.quiver;
        let mut dims = vec![0; q.num_vertices()];
        dims[v] = 1;
        let maps = q.arrows().iter().map(|a| Matrix::zeros(algebra.field, dims[a.target], dims[a.source])).collect();
        Rep::new(algebra.clone(), dims, maps)
    }

    /// The indecomposable projective `KQ e_v`: basis the paths starting at `v`.
    pub fn projective(algebra: &Arc<PathAlgebra>, v: usize) -> Result<Self> {
        Self::check_vertex(algebra, v)?;
        let q = &algebra.quiver;
        let paths = q.paths_from(v);
        let mut index = vec![Vec::new(); q.num_vertices()];
        for (path, end) in &paths {
            index[*end].push(path.clone());
        }
        let dims: Vec<usize> = index.iter().map(Vec::len).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(algebra.field, dims[a.target], dims[a.source]);
                for (c, p) in index[a.source].iter().enumerate() {
                    let mut ext = p.clone();
                    ext.push(ai);
                    let r = index[a.target].iter().position(|x| *x == ext).expect("extended path exists");
                    m.set(r, c, 1);
                }
                m
            })
            .collect();
        Rep::new(algebra.clone(), dims, maps)
    }

    /// The indecomposable injective `D(e_v KQ)`: dual basis of the paths ending at `v`.
    pub fn injective(algebra: &Arc<PathAlgebra>, v: usize) -> Result<Self> {
        Self::check_vertex(algebra, v)?;
        let q = &algebra.quiver;
        let paths = q.paths_to(v);
        let mut index = vec![Vec::new(); q.num_vertices()];
        for (path, start) in &paths {
            index[*start].push(path.clone());
        }
        let dims: Vec<usize> = index.iter().map(Vec::len).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(algebra.field, dims[a.target], dims[a.source]);
                for (r, qpath) in index[a.target].iter().enumerate() {
                    let mut ext = vec![ai];
                    ext.extend(qpath.iter().copied());
                    let c = index[a.source].iter().position(|x| *x == ext).expect("extended path exists");
                    m.set(r, c, 1);
                }
                m
            })
            .collect();
        Rep::new(algebra.clone(), dims, maps)
    }

    /// Matrix by which a path (arrow indices in traversal order) acts.
    pub fn path_action(&self, start: usize, path: &[usize]) -> Matrix {
        let f = self.algebra.field;
        let mut acc = Matrix::identity(f, self.dims[start]);
        for &a in path {
            acc = self.maps[a].mul_unchecked(&acc);
        }
        acc
    }

    /// The linear dual, a representation of the opposite quiver.
    pub fn dual(&self) -> Rep {
        Rep {
            algebra: self.algebra.opposite(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Radical at each vertex plus an optional invariant subspace, as column spans.
    fn radical_plus(&self, extra: Option<&[Matrix]>) -> Vec<Matrix> {
        let f = self.algebra.field;
        let q = self.quiver();
        (0..q.num_vertices())
            .map(|w| {
                let mut span = Matrix::zeros(f, self.dims[w], 0);
                for (ai, _) in q.arrows_into(w) {
                    span = span.hstack(&self.maps[ai]);
                }
                if let Some(e) = extra {
                    span = span.hstack(&e[w]);
                }
                span
            })
            .collect()
    }

    /// Vectors whose images span the top of `M / sub` (or of `M` when `sub` is `None`).
    pub fn top_generators(&self, sub: Option<&[Matrix]>) -> Vec<(usize, Vec<u32>)> {
        let f = self.algebra.field;
        let rad = self.radical_plus(sub);
        let mut gens = Vec::new();
        for (w, r) in rad.iter().enumerate() {
            let q = Quotient::new(f, self.dims[w], r);
            for c in q.section.columns() {
                gens.push((w, c));
            }
        }
        gens
    }

    /// The map `⊕ P(w) → M` sending the top of each `P(w)` to the given vector.
    pub fn cover_from_generators(&self, gens: &[(usize, Vec<u32>)]) -> (Rep, BlockMap) {
        let f = self.algebra.field;
        let mut parts = Vec::with_capacity(gens.len());
        let mut maps = Vec::with_capacity(gens.len());
        for (w, g) in gens {
            let p = Rep::projective(&self.algebra, *w).expect("vertex in range");
            let q = self.quiver();
            let mut blocks: Vec<Matrix> =
                (0..q.num_vertices()).map(|x| Matrix::zeros(f, self.dims[x], p.dims[x])).collect();
            let mut seen = vec![0usize; q.num_vertices()];
            for (path, end) in q.paths_from(*w) {
                let image = self.path_action(*w, &path).mul_vec(g);
                let col = seen[end];
                for (r, &x) in image.iter().enumerate() {
                    blocks[end].set(r, col, x);
                }
                seen[end] += 1;
            }
            parts.push(p);
            maps.push(BlockMap::new(blocks));
        }
        let mut sum = Rep::zero(&self.algebra);
        for p in &parts {
            sum = sum.direct_sum(p);
        }
        let map = if maps.is_empty() {
            BlockMap::zero(f, &sum.dims, &self.dims)
        } else {
            map_out_of_sum(&maps)
        };
        (sum, map)
    }

    /// Projective cover of `M` relative to an invariant subspace already covered.
    pub fn relative_cover(&self, sub: &[Matrix]) -> (Rep, BlockMap) {
        let gens = self.top_generators(Some(sub));
        self.cover_from_generators(&gens)
    }

    pub fn is_projective(&self) -> bool {
        let (p, _) = self.projective_cover(CoverKind::Minimal);
        p.total_dim() == self.total_dim()
    }

    pub fn is_injective(&self) -> bool {
        self.dual().is_projective()
    }

    /// Injective envelope, computed as the dual of the projective cover of the dual.
    pub fn injective_envelope(&self) -> (Rep, BlockMap) {
        let (p, pi) = self.dual().projective_cover(CoverKind::Minimal);
        let env = p.dual();
        let map = BlockMap::new(pi.blocks.iter().map(Matrix::transpose).collect());
        (Rep { algebra: self.algebra.clone(), ..env }, map)
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }
}

impl FinModule for Rep {
    fn field(&self) -> PrimeField {
        self.algebra.field
    }

    fn block_dims(&self) -> Vec<usize> {
        self.dims.clone()
    }

    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    fn zero_object(&self) -> Self {
        Rep::zero(&self.algebra)
    }

    fn morphism_residual(&self, target: &Self, f: &BlockMap) -> Vec<u32> {
        let mut out = Vec::new();
        for (ai, a) in self.quiver().arrows().iter().enumerate() {
            let lhs = target.maps[ai].mul_unchecked(&f.blocks[a.source]);
            let rhs = f.blocks[a.target].mul_unchecked(&self.maps[ai]);
            out.extend_from_slice(lhs.sub(&rhs).data());
        }
        out
    }

    fn hom_system(&self, target: &Self) -> Matrix {
        // Direct assembly: unknown (v, r, c) is entry (r, c) of the block at v.
        let f = self.algebra.field;
        let q = self.quiver();
        let mut offsets = Vec::with_capacity(self.dims.len());
        let mut n = 0;
        for (v, &d) in self.dims.iter().enumerate() {
            offsets.push(n);
            n += d * target.dims[v];
        }
        let rows: usize = q.arrows().iter().map(|a| target.dims[a.target] * self.dims[a.source]).sum();
        let mut sys = Matrix::zeros(f, rows, n);
        let mut row0 = 0;
        for (ai, a) in q.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (ns, nt) = (target.dims[s], target.dims[t]);
            let (ms, mt) = (self.dims[s], self.dims[t]);
            let nalpha = &target.maps[ai];
            let malpha = &self.maps[ai];
            // (N_α f_s)[i][j] = Σ_k N_α[i][k] f_s[k][j]
            // (f_t M_α)[i][j] = Σ_k f_t[i][k] M_α[k][j]
            for i in 0..nt {
                for j in 0..ms {
                    let r = row0 + i * ms + j;
                    for k in 0..ns {
                        let x = nalpha.get(i, k);
                        if x != 0 {
                            let c = offsets[s] + k * ms + j;
                            sys.set(r, c, f.add(sys.get(r, c), x));
                        }
                    }
                    for k in 0..mt {
                        let x = malpha.get(k, j);
                        if x != 0 {
                            let c = offsets[t] + i * mt + k;
                            sys.set(r, c, f.sub(sys.get(r, c), x));
                        }
                    }
                }
            }
            row0 += nt * ms;
        }
        sys
    }

    fn submodule(&self, basis: &[Matrix]) -> Result<(Self, BlockMap)> {
        let dims: Vec<usize> = basis.iter().map(Matrix::cols).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (ai, a) in self.quiver().arrows().iter().enumerate() {
            let img = self.maps[ai].mul_unchecked(&basis[a.source]);
            let m = basis[a.target]
                .solve_matrix(&img)?
                .ok_or_else(|| Error::Contract(format!("subspace not invariant under arrow {}", a.label)))?;
            maps.push(m);
        }
        let sub = Rep::new(self.algebra.clone(), dims, maps)?;
        Ok((sub, BlockMap::new(basis.to_vec())))
    }

    fn quotient(&self, basis: &[Matrix]) -> Result<(Self, BlockMap)> {
        let f = self.algebra.field;
        let qs = quotients(f, &self.dims, basis);
        let mut maps = Vec::with_capacity(self.maps.len());
        for (ai, a) in self.quiver().arrows().iter().enumerate() {
            let leak = qs[a.target].projection.mul_unchecked(&self.maps[ai].mul_unchecked(&basis[a.source]));
            if !leak.is_zero() {
                return Err(Error::Contract(format!("subspace not invariant under arrow {}", a.label)));
            }
            maps.push(qs[a.target].projection.mul_unchecked(&self.maps[ai]).mul_unchecked(&qs[a.source].section));
        }
        let dims = qs.iter().map(Quotient::dim).collect();
        let quo = Rep::new(self.algebra.clone(), dims, maps)?;
        let proj = BlockMap::new(qs.into_iter().map(|q| q.projection).collect());
        Ok((quo, proj))
    }

    fn direct_sum(&self, other: &Self) -> Self {
        assert!(self.compatible(other), "direct sum across algebras");
        Rep {
            algebra: self.algebra.clone(),
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect(),
        }
    }

    fn projective_cover(&self, kind: CoverKind) -> (Self, BlockMap) {
        let gens = match kind {
            CoverKind::Minimal => self.top_generators(None),
            CoverKind::Canonical => {
                let mut g = Vec::new();
                for (w, &d) in self.dims.iter().enumerate() {
                    for i in 0..d {
                        let mut e = vec![0u32; d];
                        e[i] = 1;
                        g.push((w, e));
                    }
                }
                g
            }
        };
        self.cover_from_generators(&gens)
    }
}
