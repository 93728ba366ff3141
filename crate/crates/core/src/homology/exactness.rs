//! Exactness of complexes obtained by applying `W ⊗ −` or `Hom(N, −)` to an
//! exact chain of modules.

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::quiverrep::{coordinates, hom_basis, BlockMap, Chain, FinModule, Rep};

use super::tensor::{tensor_map, tensor_space};

/// First interior position of a chain of vector spaces where exactness fails.
pub fn linear_defect(dims: &[usize], maps: &[Matrix]) -> Option<usize> {
    (1..dims.len().saturating_sub(1)).find(|&i| {
        let f = &maps[i - 1];
        let g = &maps[i];
        !g.mul_unchecked(f).is_zero() || f.rank() + g.rank() != dims[i]
    })
}

fn ensure_exact<M: FinModule>(chain: &Chain<M>) -> Result<()> {
    match chain.first_defect() {
        Some(i) => Err(Error::Argument(format!("input chain is not exact at position {i}"))),
        None => Ok(()),
    }
}

/// Applies `W ⊗ −` to an exact chain; returns the first position where the
/// tensored chain fails to be exact.
pub fn tensor_exactness(w: &Rep, chain: &Chain<Rep>) -> Result<Option<usize>> {
    ensure_exact(chain)?;
    let spaces = chain.objects.iter().map(|x| tensor_space(w, x)).collect::<Result<Vec<_>>>()?;
    let id = BlockMap::identity(w.field(), w.dims());
    let maps: Vec<Matrix> = chain
        .maps
        .iter()
        .enumerate()
        .map(|(i, f)| tensor_map(&spaces[i], &spaces[i + 1], &id, f))
        .collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    Ok(linear_defect(&dims, &maps))
}

/// Applies `Hom(N, −)` to an exact chain; returns the first position where
/// the resulting chain fails to be exact.
pub fn hom_exactness<M: FinModule>(n: &M, chain: &Chain<M>) -> Result<Option<usize>> {
    ensure_exact(chain)?;
    let field = n.field();
    let bases = chain.objects.iter().map(|x| hom_basis(n, x)).collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(chain.maps.len());
    for (i, f) in chain.maps.iter().enumerate() {
        let cols: Vec<Vec<u32>> = bases[i]
            .iter()
            .map(|g| coordinates(&bases[i + 1], &f.compose(g)).unwrap_or_else(|| vec![0; bases[i + 1].len()]))
            .collect();
        maps.push(Matrix::from_columns(field, bases[i + 1].len(), &cols));
    }
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    Ok(linear_defect(&dims, &maps))
}
