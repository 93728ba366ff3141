use crate::error::{Error, Result};
use crate::exactla::{Matrix, Quotient};
use crate::quiverrep::{coordinates, hom_basis, BlockMap, CoverKind, FinModule};

use super::resolution::{projective_resolution, Resolution};

/// Largest Ext dimension whose classes are enumerated point by point.
pub const EXT_ENUMERATION_LIMIT: usize = 12;

/// `Ext^i(M, N)` as `H^i(Hom(P_•, N))` with explicit cocycle representatives.
#[derive(Clone, Debug)]
pub struct ExtSpace<M> {
    pub degree: usize,
    pub source: M,
    pub target: M,
    pub resolution: Resolution<M>,
    /// Basis of `Hom(P_i, N)`.
    pub cochains: Vec<BlockMap>,
    /// Cocycles in cochain coordinates, one per column.
    cocycles: Matrix,
    /// Cocycle coordinates modulo coboundaries.
    classes: Quotient,
}

/// A short exact sequence `0 → sub → middle → quotient → 0`.
#[derive(Clone, Debug)]
pub struct Extension<M> {
    pub sub: M,
    pub middle: M,
    pub quotient: M,
    pub mono: BlockMap,
    pub epi: BlockMap,
}

fn right_inverse(m: &Matrix) -> Result<Matrix> {
    m.right_inverse().ok_or_else(|| Error::Contract("projection is not surjective".into()))
}

pub fn ext_space<M: FinModule>(m: &M, n: &M, degree: usize) -> Result<ExtSpace<M>> {
    ext_space_with(m, n, degree, CoverKind::Minimal)
}

pub fn ext_dim<M: FinModule>(m: &M, n: &M, degree: usize) -> Result<usize> {
    Ok(ext_space(m, n, degree)?.dim())
}

/// As [`ext_space`], resolving with covers of the given kind.
pub fn ext_space_with<M: FinModule>(m: &M, n: &M, degree: usize, kind: CoverKind) -> Result<ExtSpace<M>> {
    if degree == 0 {
        return Err(Error::Argument("Ext degree must be at least 1".into()));
    }
    crate::quiverrep::morphism::check_compatible(m, n)?;
    let field = m.field();
    let resolution = projective_resolution(m, degree + 1, kind)?;
    let Some(pi) = resolution.terms.get(degree) else {
        let empty = Matrix::zeros(field, 0, 0);
        return Ok(ExtSpace {
            degree,
            source: m.clone(),
            target: n.clone(),
            resolution,
            cochains: Vec::new(),
            cocycles: empty.clone(),
            classes: Quotient::new(field, 0, &empty),
        });
    };
    let cochains = hom_basis(pi, n)?;
    let h = cochains.len();
    let cocycles = match resolution.differentials.get(degree) {
        Some(d) => {
            let cols: Vec<Vec<u32>> = cochains.iter().map(|g| g.compose(d).flatten()).collect();
            let rows = cols.first().map_or(0, Vec::len);
            Matrix::from_columns(field, rows, &cols).kernel_basis()
        }
        None => Matrix::identity(field, h),
    };
    let d_i = &resolution.differentials[degree - 1];
    let coboundaries: Vec<Vec<u32>> = hom_basis(&resolution.terms[degree - 1], n)?
        .iter()
    .map(|g| coordinates(&cochains, &g.compose(d_i)).expect("coboundary is a cochain"))
    .collect();
    let b = Matrix::from_columns(field, h, &coboundaries);
    let in_cocycles = cocycles
        .solve_matrix(&b)?
        .ok_or_else(|| Error::Contract("coboundary is not a cocycle".into()))?;
    let classes = Quotient::new(field, cocycles.cols(), &in_cocycles);
    Ok(ExtSpace { degree, source: m.clone(), target: n.clone(), resolution, cochains, cocycles, classes })
}

impl<M: FinModule> ExtSpace<M> {
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// A cocycle `P_i → N` representing the class with the given coordinates.
    pub fn representative(&self, class: &[u32]) -> BlockMap {
        let field = self.source.field();
        let z = self.classes.section.mul_vec(class);
        let coords = self.cocycles.mul_vec(&z);
        let p = &self.resolution.terms[self.degree];
        BlockMap::combination(field, &self.cochains, &coords, &p.block_dims(), &self.target.block_dims())
    }

    /// Class coordinates of a cocycle `P_i → N`.
    pub fn class_of(&self, cocycle: &BlockMap) -> Result<Vec<u32>> {
        let coords = coordinates(&self.cochains, cocycle)
            .ok_or_else(|| Error::Contract("map is not a cochain".into()))?;
        let z = self
            .cocycles
            .solve(&coords)?
            .ok_or_else(|| Error::Contract("cochain is not a cocycle".into()))?;
        Ok(self.classes.projection.mul_vec(&z))
    }

    /// Every class, zero first, when the space is small enough to list.
    pub fn classes(&self) -> Result<Vec<Vec<u32>>> {
        self.classes_within(EXT_ENUMERATION_LIMIT)
    }

    /// As [`Self::classes`] with an explicit dimension limit.
    pub fn classes_within(&self, limit: usize) -> Result<Vec<Vec<u32>>> {
        let d = self.dim();
        if d > limit {
            return Err(Error::Undecided(format!(
                "Ext^{} has dimension {d}, above the enumeration limit {limit}",
                self.degree
            )));
        }
        let field = self.source.field();
        Ok((0..field.points(d)).map(|i| field.point(d, i)).collect())
    }

    /// The extension `0 → N → E → M → 0` of a degree-one class, as the
    /// pushout of `0 → Ω M → P_0 → M → 0` along the representing cocycle.
    pub fn realize(&self, class: &[u32]) -> Result<Extension<M>> {
        if self.degree != 1 {
            return Err(Error::Unsupported("only degree-one classes are realized".into()));
        }
        let field = self.source.field();
        let n = &self.target;
        let m = &self.source;
        let p0 = &self.resolution.terms[0];
        let eps = &self.resolution.augmentation;
        let (middle, mono, epi) = match self.resolution.terms.get(1) {
            None => {
                let parts = crate::quiverrep::direct_sum(n, &[n.clone(), m.clone()]);
                (parts.sum, parts.injections[0].clone(), parts.projections[1].clone())
            }
            Some(p1) => {
                let c = self.representative(class);
                let d1 = &self.resolution.differentials[0];
                let np0 = n.direct_sum(p0);
                let f = crate::quiverrep::map_into_sum(&[c, d1.neg()]);
                let (e, q) = crate::quiverrep::cokernel(p1, &np0, &f)?;
                let parts = crate::quiverrep::direct_sum(n, &[n.clone(), p0.clone()]);
                let mono = q.compose(&parts.injections[0]);
                let g = crate::quiverrep::map_out_of_sum(&[BlockMap::zero(field, &n.block_dims(), &m.block_dims()), eps.clone()]);
                let sections: Vec<Matrix> = q.blocks.iter().map(right_inverse).collect::<Result<_>>()?;
                let epi = g.compose(&BlockMap::new(sections));
                (e, mono, epi)
            }
        };
        Ok(Extension { sub: n.clone(), middle, quotient: m.clone(), mono, epi })
    }

    /// Class of an extension `0 → N → E → M → 0` with these exact end terms.
    pub fn class_of_extension(&self, ext: &Extension<M>) -> Result<Vec<u32>> {
        if self.degree != 1 {
            return Err(Error::Unsupported("only degree-one classes are extracted".into()));
        }
        if self.resolution.terms.len() < 2 {
            return Ok(Vec::new());
        }
        let field = self.source.field();
        let p0 = &self.resolution.terms[0];
        let eps = &self.resolution.augmentation;
        let basis = hom_basis(p0, &ext.middle)?;
        let images: Vec<Vec<u32>> = basis.iter().map(|b| ext.epi.compose(b).flatten()).collect();
        let sys = Matrix::from_columns(field, eps.flatten().len(), &images);
        let x = sys
            .solve(&eps.flatten())?
            .ok_or_else(|| Error::Contract("augmentation does not lift through the extension".into()))?;
        let h = BlockMap::combination(field, &basis, &x, &p0.block_dims(), &ext.middle.block_dims());
        let hd = h.compose(&self.resolution.differentials[0]);
        let blocks: Vec<Matrix> = ext
            .mono
            .blocks
            .iter()
            .zip(&hd.blocks)
            .map(|(i, y)| {
                i.solve_matrix(y)?
                    .ok_or_else(|| Error::Contract("lifted syzygy map does not land in the submodule".into()))
            })
            .collect::<Result<_>>()?;
        self.class_of(&BlockMap::new(blocks))
    }
}
