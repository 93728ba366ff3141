use crate::error::Result;
use crate::quiverrep::{kernel, BlockMap, CoverKind, FinModule};

/// A projective resolution `... → P_1 → P_0 → M → 0`.
///
/// `differentials[i]` maps `terms[i + 1]` to `terms[i]`; `augmentation` maps
/// `terms[0]` onto the target. `complete` is set when the last kernel computed
/// was zero, so that the resolution stops for good rather than by truncation.
#[derive(Clone, Debug)]
pub struct Resolution<M> {
    pub target: M,
    pub terms: Vec<M>,
    pub differentials: Vec<BlockMap>,
    pub augmentation: BlockMap,
    pub complete: bool,
}

impl<M: FinModule> Resolution<M> {
    /// Length of the resolution: index of its last nonzero term.
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|t| !t.is_zero()).unwrap_or(0)
    }

    /// The augmented complex `P_k → ... → P_0 → M → 0` as objects and maps
    /// in chain order (leftmost first).
    pub fn augmented(&self) -> (Vec<M>, Vec<BlockMap>) {
        let field = self.target.field();
        let mut objects: Vec<M> = self.terms.iter().rev().cloned().collect();
        let mut maps: Vec<BlockMap> = self.differentials.iter().rev().cloned().collect();
        objects.push(self.target.clone());
        maps.push(self.augmentation.clone());
        let zero = self.target.zero_object();
        maps.push(BlockMap::zero(field, &self.target.block_dims(), &zero.block_dims()));
        objects.push(zero);
        (objects, maps)
    }
}

/// Resolves `m` by projective covers of the requested kind, computing at most
/// `length + 1` terms and stopping early once a kernel vanishes.
pub fn projective_resolution<M: FinModule>(m: &M, length: usize, kind: CoverKind) -> Result<Resolution<M>> {
    let (p0, eps) = m.projective_cover(kind);
    let mut terms = vec![p0];
    let mut differentials = Vec::new();
    let (mut syzygy, mut incl) = kernel(&terms[0], m, &eps)?;
    while !syzygy.is_zero() && terms.len() <= length {
        let (p, pi) = syzygy.projective_cover(kind);
        let d = incl.compose(&pi);
        let prev = terms.last().expect("nonempty");
        let (k, i) = kernel(&p, prev, &d)?;
        terms.push(p);
        differentials.push(d);
        syzygy = k;
        incl = i;
    }
    let complete = syzygy.is_zero();
    Ok(Resolution { target: m.clone(), terms, differentials, augmentation: eps, complete })
}

/// First syzygy of `m` with its inclusion into the minimal projective cover.
pub fn syzygy<M: FinModule>(m: &M) -> Result<(M, BlockMap)> {
    let (p, eps) = m.projective_cover(CoverKind::Minimal);
    kernel(&p, m, &eps)
}
