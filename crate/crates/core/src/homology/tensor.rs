//! Tensor products `W ⊗_A M` of a right module (a representation of the
//! opposite quiver) with a left module, and Tor.

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Quotient};
use crate::quiverrep::{BlockMap, CoverKind, FinModule, Rep};

use super::resolution::projective_resolution;

/// `W ⊗_A M` presented as `⊕_v W_v ⊗ M_v` modulo the balancing relations
/// `(w·α) ⊗ m − w ⊗ (α·m)`.
///
/// Generator `(v, i, j)` is `w_i ⊗ m_j` in block `v`, at position
/// `offsets[v] + i * dim M_v + j`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub right_dims: Vec<usize>,
    pub left_dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub generators: usize,
    pub quotient: Quotient,
}

impl TensorSpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn generator(&self, v: usize, i: usize, j: usize) -> usize {
        self.offsets[v] + i * self.left_dims[v] + j
    }

    /// Quotient coordinates of `w ⊗ m` for vectors at vertex `v`.
    pub fn pure(&self, v: usize, w: &[u32], m: &[u32], field: PrimeField) -> Vec<u32> {
        let mut g = vec![0u32; self.generators];
        for (i, &x) in w.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in m.iter().enumerate() {
                let k = self.generator(v, i, j);
                g[k] = field.add(g[k], field.mul(x, y));
            }
        }
        self.quotient.projection.mul_vec(&g)
    }
}

fn check_opposite(w: &Rep, m: &Rep) -> Result<()> {
    if w.field() != m.field() {
        return Err(Error::Argument("tensor factors over different fields".into()));
    }
    if *w.quiver() != m.quiver().opposite() {
        return Err(Error::Argument("right factor is not a representation of the opposite quiver".into()));
    }
    Ok(())
}

pub fn tensor_space(w: &Rep, m: &Rep) -> Result<TensorSpace> {
    check_opposite(w, m)?;
    let field = m.field();
    let wd = w.dims().to_vec();
    let md = m.dims().to_vec();
    let mut offsets = Vec::with_capacity(md.len());
    let mut generators = 0;
    for v in 0..md.len() {
        offsets.push(generators);
        generators += wd[v] * md[v];
    }
    let q = m.quiver();
    let rel_count: usize = q.arrows().iter().map(|a| wd[a.target] * md[a.source]).sum();
    let mut rel = Matrix::zeros(field, generators, rel_count);
    let mut col = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        // w ∈ W_target, m ∈ M_source: (w·α) ⊗ m lives over the source,
        // w ⊗ (α·m) over the target.
        let (s, t) = (a.source, a.target);
        let w_alpha = w.arrow_map(ai);
        let m_alpha = m.arrow_map(ai);
        let left = w_alpha.kron(&Matrix::identity(field, md[s]));
        let right = Matrix::identity(field, wd[t]).kron(m_alpha);
        let width = wd[t] * md[s];
        rel.write_block(offsets[s], col, &left);
        rel.write_block(offsets[t], col, &right.neg());
        col += width;
    }
    Ok(TensorSpace { right_dims: wd, left_dims: md, offsets, generators, quotient: Quotient::new(field, generators, &rel) })
}

/// Generator-level matrix of `g ⊗ f` for vertexwise maps `g` on the right
/// factor and `f` on the left factor.
pub fn generator_map(src: &TensorSpace, tgt: &TensorSpace, g: &BlockMap, f: &BlockMap) -> Matrix {
    let field = f.blocks.first().or(g.blocks.first()).map(Matrix::field).expect("nonempty quiver");
    let mut out = Matrix::zeros(field, tgt.generators, src.generators);
    for v in 0..src.offsets.len() {
        out.write_block(tgt.offsets[v], src.offsets[v], &g.blocks[v].kron(&f.blocks[v]));
    }
    out
}

/// The induced map `g ⊗ f` between tensor spaces in quotient coordinates.
pub fn tensor_map(src: &TensorSpace, tgt: &TensorSpace, g: &BlockMap, f: &BlockMap) -> Matrix {
    tgt.quotient
        .projection
        .mul_unchecked(&generator_map(src, tgt, g, f))
        .mul_unchecked(&src.quotient.section)
}

/// `dim Tor_i(W, M)`, resolving the left module `M`.
pub fn tor_dim(w: &Rep, m: &Rep, i: usize) -> Result<usize> {
    check_opposite(w, m)?;
    let res = projective_resolution(m, i + 1, CoverKind::Minimal)?;
    let Some(pi) = res.terms.get(i) else {
        return Ok(0);
    };
    let field = m.field();
    let id_w = BlockMap::identity(field, w.dims());
    let ci = tensor_space(w, pi)?;
    let rank_out = if i == 0 {
        0
    } else {
        let prev = tensor_space(w, &res.terms[i - 1])?;
        tensor_map(&ci, &prev, &id_w, &res.differentials[i - 1]).rank()
    };
    let rank_in = match res.terms.get(i + 1) {
        Some(next) => {
            let cn = tensor_space(w, next)?;
            tensor_map(&cn, &ci, &id_w, &res.differentials[i]).rank()
        }
        None => 0,
    };
    Ok(ci.dim() - rank_out - rank_in)
}

/// `dim Tor_i(W, M)` computed by resolving the right module `W` instead.
pub fn tor_dim_by_right(w: &Rep, m: &Rep, i: usize) -> Result<usize> {
    tor_dim(m, w, i)
}
