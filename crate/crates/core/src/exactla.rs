//! Exact dense linear algebra over a prime field.
//!
//! Every hom-space, kernel and rank computation in the crate bottoms out
//! here. Matrices are small (tens of rows), so storage is a flat row-major
//! `Vec<u32>` and elimination is plain Gauss-Jordan with leftmost-pivot,
//! topmost-row pivoting. That pivoting rule makes every canonical form
//! (reduced echelon form, kernel basis, quotient section) bit-reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("characteristic {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1u32;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc % self.p
    }

    /// Number of field points in a space of the given dimension, saturating.
    pub fn points(self, dim: usize) -> u128 {
        let mut n: u128 = 1;
        for _ in 0..dim {
            n = n.saturating_mul(self.p as u128);
        }
        n
    }

    /// The `index`-th vector of `F_p^dim` in base-`p` order (least significant coordinate first).
    pub fn point(self, dim: usize, mut index: u128) -> Vec<u32> {
        let mut v = vec![0u32; dim];
        for c in v.iter_mut() {
            *c = (index % self.p as u128) as u32;
            index /= self.p as u128;
        }
        v
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}x{}[", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod `p`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let p = field.characteristic();
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(Matrix { field, rows, cols, data })
    }

    /// Builds a matrix from integer rows, reducing mod `p`. Panics on ragged input.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn column_vector(field: PrimeField, v: &[u32]) -> Self {
        Self::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x % self.field.characteristic();
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product without the shape check; panics on mismatch in debug builds.
    pub fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let p = self.field.characteristic() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = ((*d as u64 + a * b as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.field.characteristic() as u64;
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                (row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch in add");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch in sub");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.write_block(0, 0, self);
        out.write_block(self.rows, self.cols, other);
        out
    }

    pub fn write_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`; index `(i*other.rows + k, j*other.cols + l)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns in increasing order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let x = m.get(row, c);
                m.data[row * m.cols + c] = f.mul(x, inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the null space `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_space_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for a matrix with {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::column_vector(self.field, b));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `M X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side with {} rows for a matrix with {} rows",
                b.rows, self.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    /// Some `X` with `self * X = I`, if `self` is surjective.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.solve_matrix(&Matrix::identity(self.field, self.rows)).ok().flatten()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }
}

/// A quotient `F^n / S` in canonical coordinates.
///
/// The coordinates kept are the non-pivot positions of the reduced echelon
/// form of the spanning vectors of `S`; `projection` sends `F^n` onto them and
/// `section` embeds them back as unit vectors, so `projection * section = I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
}

impl Quotient {
    /// Quotient of `F^ambient` by the column span of `sub`.
    pub fn new(field: PrimeField, ambient: usize, sub: &Matrix) -> Quotient {
        assert_eq!(sub.rows(), ambient, "subspace generators live in the wrong space");
        let (r, pivots) = sub.transpose().rref();
        let kept: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        let mut projection = Matrix::zeros(field, kept.len(), ambient);
        let mut section = Matrix::zeros(field, ambient, kept.len());
        for (j, &c) in kept.iter().enumerate() {
            projection.set(j, c, 1);
            section.set(c, j, 1);
        }
        for (i, &pc) in pivots.iter().enumerate() {
            for (j, &c) in kept.iter().enumerate() {
                projection.set(j, pc, field.neg(r.get(i, c)));
            }
        }
        Quotient { projection, section }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rref_identity() {
        let i = Matrix::identity(f2(), 2);
        let (r, p) = i.rref();
        assert_eq!(r, i);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zeros(f2(), 3, 2);
        let (r, p) = z.rref();
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_all_ones_f2() {
        let m = Matrix::from_rows(f2(), &[vec![1, 1], vec![1, 1]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_rows(f2(), &[vec![1, 1], vec![0, 0]]));
        assert_eq!(p, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_cases() {
        assert_eq!(Matrix::identity(f2(), 3).kernel_basis().cols(), 0);
        let k = Matrix::zeros(f2(), 3, 3).kernel_basis();
        assert_eq!(k, Matrix::identity(f2(), 3));
        let k = Matrix::from_rows(f2(), &[vec![1, 1]]).kernel_basis();
        assert_eq!(k.columns(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_cases() {
        let i = Matrix::identity(f3(), 3);
        assert_eq!(i.solve(&[2, 0, 1]).unwrap(), Some(vec![2, 0, 1]));
        let z = Matrix::zeros(f2(), 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        let m = Matrix::from_rows(f2(), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.solve(&[0, 1]).unwrap(), Some(vec![1, 1]));
        assert!(m.solve(&[1]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(f3(), &[vec![1, 2], vec![0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f3(), 2));
        assert!(Matrix::from_rows(f2(), &[vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn quotient_projection_section() {
        let sub = Matrix::from_rows(f3(), &[vec![1], vec![2], vec![0]]);
        let q = Quotient::new(f3(), 3, &sub);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.projection.mul(&q.section).unwrap(), Matrix::identity(f3(), 2));
        assert!(q.projection.mul(&sub).unwrap().is_zero());
    }
}
