//! Isomorphism testing and Krull-Schmidt decomposition.
//!
//! A split is certified by an explicit nontrivial idempotent (or Fitting
//! decomposition) in `End(M)`. Indecomposability is certified by exhaustive
//! idempotent search when `End(M)` has at most [`EXHAUSTIVE_LIMIT`] points,
//! otherwise by [`FITTING_ROUNDS`] consecutive pseudorandom endomorphisms
//! whose Fitting decomposition is trivial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::Matrix;

use super::morphism::{hom_basis, hom_dim, BlockMap, FinModule};

pub const EXHAUSTIVE_LIMIT: u128 = 1 << 16;
pub const FITTING_ROUNDS: usize = 16;
const QUICK_FITTING_ROUNDS: usize = 4;
const RANDOM_ISO_TRIES: usize = 1024;
const SEED: u64 = 0x7121_a7c0;

/// How a verdict of indecomposability was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Exhaustive,
    Fitting,
}

fn random_element<M: FinModule>(m: &M, basis: &[BlockMap], rng: &mut ChaCha8Rng) -> BlockMap {
    let f = m.field();
    let p = f.characteristic();
    let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
    let dims = m.block_dims();
    BlockMap::combination(f, basis, &coeffs, &dims, &dims)
}

fn power(f: &BlockMap, e: usize) -> BlockMap {
    let mut acc = f.clone();
    for _ in 1..e.max(1) {
        acc = acc.compose(f);
    }
    acc
}

/// Splits `m` along the Fitting decomposition of `f` if both parts are nonzero.
fn fitting_split<M: FinModule>(m: &M, f: &BlockMap) -> Result<Option<(M, M)>> {
    let n = m.block_dims().into_iter().max().unwrap_or(0);
    let g = power(f, n);
    let ker: Vec<Matrix> = g.blocks.iter().map(Matrix::kernel_basis).collect();
    let im: Vec<Matrix> = g.blocks.iter().map(Matrix::column_space_basis).collect();
    let kd: usize = ker.iter().map(Matrix::cols).sum();
    let id: usize = im.iter().map(Matrix::cols).sum();
    if kd == 0 || id == 0 {
        return Ok(None);
    }
    Ok(Some((m.submodule(&ker)?.0, m.submodule(&im)?.0)))
}

fn idempotent_split<M: FinModule>(m: &M, e: &BlockMap) -> Result<(M, M)> {
    let dims = m.block_dims();
    let one = BlockMap::identity(m.field(), &dims);
    let im: Vec<Matrix> = e.blocks.iter().map(Matrix::column_space_basis).collect();
    let co: Vec<Matrix> = one.sub(e).blocks.iter().map(Matrix::column_space_basis).collect();
    Ok((m.submodule(&im)?.0, m.submodule(&co)?.0))
}

/// Either a nontrivial splitting `m ≅ x ⊕ y`, or a certificate that none exists.
pub fn split<M: FinModule>(m: &M) -> Result<std::result::Result<(M, M), Certificate>> {
    let f = m.field();
    let dims = m.block_dims();
    let basis = hom_basis(m, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ m.total_dim() as u64);
    for _ in 0..QUICK_FITTING_ROUNDS {
        let r = random_element(m, &basis, &mut rng);
        if let Some(parts) = fitting_split(m, &r)? {
            return Ok(Ok(parts));
        }
    }
    let points = f.points(basis.len());
    if points <= EXHAUSTIVE_LIMIT {
        let one = BlockMap::identity(f, &dims);
        for idx in 0..points {
            let coeffs = f.point(basis.len(), idx);
            let e = BlockMap::combination(f, &basis, &coeffs, &dims, &dims);
            if e.is_zero() || e == one {
                continue;
            }
            if e.compose(&e) == e {
                return Ok(Ok(idempotent_split(m, &e)?));
            }
        }
        return Ok(Err(Certificate::Exhaustive));
    }
    let mut quiet = 0;
    let mut rounds = 0;
    while quiet < FITTING_ROUNDS {
        rounds += 1;
        if rounds > 64 * FITTING_ROUNDS {
            return Err(Error::Undecided("Fitting decomposition did not stabilise".into()));
        }
        let r = random_element(m, &basis, &mut rng);
        match fitting_split(m, &r)? {
            Some(parts) => return Ok(Ok(parts)),
            None => quiet += 1,
        }
    }
    Ok(Err(Certificate::Fitting))
}

pub fn is_indecomposable<M: FinModule>(m: &M) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(split(m)?.is_err())
}

/// Indecomposable summands of `m`, each certified; the zero module has none.
pub fn decompose<M: FinModule>(m: &M) -> Result<Vec<M>> {
    let mut out = Vec::new();
    let mut todo = vec![m.clone()];
    while let Some(x) = todo.pop() {
        if x.is_zero() {
            continue;
        }
        match split(&x)? {
            Ok((a, b)) => {
                todo.push(b);
                todo.push(a);
            }
            Err(_) => out.push(x),
        }
    }
    Ok(out)
}

/// Searches `Hom(m, n)` for an isomorphism.
pub fn find_iso<M: FinModule>(m: &M, n: &M) -> Result<Option<BlockMap>> {
    if m.block_dims() != n.block_dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(BlockMap::identity(m.field(), &m.block_dims())));
    }
    let basis = hom_basis(m, n)?;
    let d = basis.len();
    if d != hom_dim(m, m)? || d != hom_dim(n, n)? || d != hom_dim(n, m)? {
        return Ok(None);
    }
    let f = m.field();
    let sd = m.block_dims();
    let td = n.block_dims();
    let points = f.points(d);
    if points <= EXHAUSTIVE_LIMIT {
        for idx in 0..points {
            let g = BlockMap::combination(f, &basis, &f.point(d, idx), &sd, &td);
            if g.is_invertible() {
                return Ok(Some(g));
            }
        }
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_ISO_TRIES {
        let coeffs: Vec<u32> = (0..d).map(|_| rng.gen_range(0..f.characteristic())).collect();
        let g = BlockMap::combination(f, &basis, &coeffs, &sd, &td);
        if g.is_invertible() {
            return Ok(Some(g));
        }
    }
    Err(Error::Undecided(format!("isomorphism search over a {d}-dimensional hom space gave no witness")))
}

pub fn is_iso<M: FinModule>(m: &M, n: &M) -> Result<bool> {
    Ok(find_iso(m, n)?.is_some())
}
