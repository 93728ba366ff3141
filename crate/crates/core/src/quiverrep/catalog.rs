//! Catalogs of indecomposables for representation-finite algebras.
//!
//! With a complete catalog `X_1, ..., X_k`, a module `M` is determined up to
//! isomorphism by the vector `dim Hom(X_i, M)`, and the matrix
//! `H[i][j] = dim Hom(X_i, X_j)` is invertible over the rationals. That turns
//! "which indecomposables occur in `M`, how often" into one exact linear solve.

use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::decompose::{is_indecomposable, is_iso};
use super::morphism::{hom_dim, FinModule};
use super::quiver::PathAlgebra;
use super::rep::Rep;

/// Default cap on the number of candidate representations tried per dimension vector.
pub const DEFAULT_POINT_BUDGET: u128 = 1 << 16;

#[derive(Clone, Debug)]
pub struct CatalogEntry<M> {
    pub name: String,
    pub module: M,
    pub dim_vector: Vec<usize>,
    /// `(dim Hom(X_j, M), dim Hom(M, X_j))` over the provisional order.
    pub fingerprint: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Catalog<M> {
    pub entries: Vec<CatalogEntry<M>>,
    pub complete: bool,
    /// `hom[i][j] = dim Hom(X_i, X_j)`.
    pub hom: Vec<Vec<usize>>,
    inverse: Option<Vec<Vec<Ratio<i64>>>>,
}

fn invert(h: &[Vec<usize>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = h.len();
    let mut a: Vec<Vec<Ratio<i64>>> = h
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x as i64)).collect();
            r.extend((0..n).map(|j| Ratio::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Ratio::from_integer(0))?;
        a.swap(col, piv);
        let inv = Ratio::from_integer(1) / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let factor = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= factor * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl<M: FinModule> Catalog<M> {
    /// Builds a catalog from pairwise non-isomorphic indecomposables, sorting
    /// canonically by (total dimension, dimension vector, fingerprint).
    pub fn from_modules(modules: Vec<M>, complete: bool, name: impl Fn(&M) -> String) -> Result<Self> {
        let mut modules = modules;
        modules.sort_by_key(|a| (a.total_dim(), a.block_dims()));
        let n = modules.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let dims: Vec<usize> = pairs
            .par_iter()
            .map(|&(i, j)| hom_dim(&modules[i], &modules[j]))
            .collect::<Result<Vec<_>>>()?;
        let hom0 = |i: usize, j: usize| dims[i * n + j];
        let mut keyed: Vec<(usize, CatalogEntry<M>)> = modules
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                let fingerprint = (0..n).map(|j| (hom0(j, i), hom0(i, j))).collect();
                let dim_vector = m.block_dims();
                (i, CatalogEntry { name: name(&m), module: m, dim_vector, fingerprint })
            })
            .collect();
        keyed.sort_by(|(_, a), (_, b)| {
            (a.module.total_dim(), &a.dim_vector, &a.fingerprint).cmp(&(b.module.total_dim(), &b.dim_vector, &b.fingerprint))
        });
        let order: Vec<usize> = keyed.iter().map(|(i, _)| *i).collect();
        let mut entries: Vec<CatalogEntry<M>> = keyed.into_iter().map(|(_, e)| e).collect();
        let hom: Vec<Vec<usize>> = order.iter().map(|&i| order.iter().map(|&j| hom0(i, j)).collect()).collect();
        // Disambiguate repeated names.
        let names: Vec<String> = entries.iter().map(|e| e.name.clone()).collect();
        for (i, e) in entries.iter_mut().enumerate() {
            let dup = names.iter().filter(|x| **x == names[i]).count();
            if dup > 1 {
                let k = names[..i].iter().filter(|x| **x == names[i]).count();
                e.name = format!("{}#{k}", names[i]);
            }
        }
        let inverse = invert(&hom);
        Ok(Catalog { entries, complete, hom, inverse })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn module(&self, i: usize) -> &M {
        &self.entries[i].module
    }

    pub fn name(&self, i: usize) -> &str {
        &self.entries[i].name
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    pub fn rename(&mut self, i: usize, name: impl Into<String>) {
        self.entries[i].name = name.into();
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteCatalog("enumeration budget was exceeded".into()))
        }
    }

    /// Multiplicity of each catalog entry as a direct summand of `m`.
    pub fn multiplicities(&self, m: &M) -> Result<Vec<usize>> {
        let inv = self
            .inverse
            .as_ref()
            .ok_or_else(|| Error::IncompleteCatalog("hom-dimension matrix is singular".into()))?;
        let fp: Vec<i64> = self
            .entries
            .iter()
            .map(|e| hom_dim(&e.module, m).map(|d| d as i64))
            .collect::<Result<_>>()?;
        let mut mult = Vec::with_capacity(self.len());
        for row in inv {
            let x: Ratio<i64> = row.iter().zip(&fp).map(|(a, &b)| *a * b).sum();
            if !x.is_integer() || x < Ratio::from_integer(0) {
                return Err(Error::IncompleteCatalog(format!("{m:?} is not a sum of catalog entries")));
            }
            mult.push(x.to_integer() as usize);
        }
        let mut dims = vec![0usize; m.block_dims().len()];
        for (e, &k) in self.entries.iter().zip(&mult) {
            for (d, x) in dims.iter_mut().zip(&e.dim_vector) {
                *d += k * x;
            }
        }
        if dims != m.block_dims() {
            return Err(Error::IncompleteCatalog(format!("{m:?} is not a sum of catalog entries")));
        }
        Ok(mult)
    }

    /// Indices of the summands of `m`, with repetition, in catalog order.
    pub fn summands(&self, m: &M) -> Result<Vec<usize>> {
        let mult = self.multiplicities(m)?;
        Ok(mult.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect())
    }

    /// Catalog index of an indecomposable module.
    pub fn identify(&self, m: &M) -> Result<usize> {
        let s = self.summands(m)?;
        if s.len() != 1 {
            return Err(Error::Argument(format!("module has {} summands, expected one", s.len())));
        }
        Ok(s[0])
    }

    /// Human-readable name of an arbitrary module as a sum of catalog entries.
    pub fn describe(&self, m: &M) -> String {
        match self.summands(m) {
            Ok(s) if s.is_empty() => "0".to_string(),
            Ok(s) => s.iter().map(|&i| self.name(i)).collect::<Vec<_>>().join("⊕"),
            Err(_) => format!("<unidentified {:?}>", m.block_dims()),
        }
    }

    /// Direct sum of catalog entries with the given multiplicities.
    pub fn sum_of(&self, zero: &M, mult: &[usize]) -> M {
        let mut acc = zero.zero_object();
        for (e, &k) in self.entries.iter().zip(mult) {
            for _ in 0..k {
                acc = acc.direct_sum(&e.module);
            }
        }
        acc
    }
}

/// All multiplicity vectors `m ≠ 0` with `Σ m_i dims_i ≤ cap` componentwise.
pub fn bounded_sums(dims: &[Vec<usize>], cap: &[usize]) -> Vec<Vec<usize>> {
    fn go(i: usize, dims: &[Vec<usize>], left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == dims.len() {
            if cur.iter().any(|&x| x > 0) {
                out.push(cur.clone());
            }
            return;
        }
        go(i + 1, dims, left, cur, out);
        let d = &dims[i];
        if d.iter().all(|&x| x == 0) {
            return;
        }
        let mut k = 0;
        while d.iter().zip(left.iter()).all(|(a, b)| a <= b) {
            for (l, a) in left.iter_mut().zip(d) {
                *l -= a;
            }
            k += 1;
            cur[i] = k;
            go(i + 1, dims, left, cur, out);
        }
        for (l, a) in left.iter_mut().zip(d) {
            *l += a * k;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut left = cap.to_vec();
    let mut cur = vec![0; dims.len()];
    go(0, dims, &mut left, &mut cur, &mut out);
    out
}

/// Canonical name of a representation: its dimension vector.
pub fn dim_vector_name(dims: &[usize]) -> String {
    let inner: Vec<String> = dims.iter().map(usize::to_string).collect();
    format!("d({})", inner.join(","))
}

/// All indecomposable representations with every vertex dimension at most
/// `dim_cap`, up to isomorphism, by brute force over all arrow matrices.
///
/// Dimension vectors whose candidate count exceeds `point_budget` are skipped
/// and the catalog is flagged incomplete.
pub fn enumerate_indecomposables(algebra: &Arc<PathAlgebra>, dim_cap: usize, point_budget: u128) -> Result<Catalog<Rep>> {
    let q = &algebra.quiver;
    let field = algebra.field;
    let nv = q.num_vertices();
    let mut vectors: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..nv {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                (0..=dim_cap).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    vectors.retain(|v| v.iter().any(|&d| d > 0));
    let per_vector: Vec<Result<(Vec<Rep>, bool)>> = vectors
        .par_iter()
        .map(|dims| {
            let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
            let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
            let points = field.points(entries);
            if points > point_budget {
                return Ok((Vec::new(), false));
            }
            let mut kept: Vec<Rep> = Vec::new();
            for idx in 0..points {
                let coords = field.point(entries, idx);
                let mut at = 0;
                let mut maps = Vec::with_capacity(shapes.len());
                for &(r, c) in &shapes {
                    maps.push(crate::exactla::Matrix::from_vec(field, r, c, coords[at..at + r * c].to_vec())?);
                    at += r * c;
                }
                let rep = Rep::new(algebra.clone(), dims.clone(), maps)?;
                if !is_indecomposable(&rep)? {
                    continue;
                }
                let mut fresh = true;
                for k in &kept {
                    if is_iso(k, &rep)? {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    kept.push(rep);
                }
            }
            Ok((kept, true))
        })
        .collect();
    let mut all = Vec::new();
    let mut complete = true;
    for r in per_vector {
        let (mods, ok) = r?;
        complete &= ok;
        all.extend(mods);
    }
    // An indecomposable projective or injective above the cap proves the
    // search missed something.
    for v in 0..nv {
        for m in [Rep::projective(algebra, v)?, Rep::injective(algebra, v)?] {
            complete &= m.dims().iter().all(|&d| d <= dim_cap);
        }
    }
    Catalog::from_modules(all, complete, |m: &Rep| dim_vector_name(m.dims()))
}
