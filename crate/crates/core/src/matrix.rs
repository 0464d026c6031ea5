//! Dense matrices over a finite field with exact Gaussian elimination.
//!
//! Entries are packed field elements stored row-major. The same type serves
//! GF(q) generator matrices and the GF(q^m) systems solved while truncating
//! MRD codes, via the [`FiniteField`] trait.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FiniteField};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: FiniteField> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Matrices over GF(q), the workhorse of subspace representations.
pub type MatrixGFq = Matrix<FieldCtx>;

impl<F: FiniteField> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch { expected: (r, c), got: (r, row.len()) });
            }
            for &v in row {
                if v >= field.order() {
                    return Err(Error::InvalidParameter(format!(
                        "entry {v} outside field of order {}",
                        field.order()
                    )));
                }
                data.push(v);
            }
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data })
    }

    pub fn field(&self) -> &F {
        &self.field
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<u64> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.check_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.check_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: u64) -> Matrix<F> {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// self += c * other, in place.
    pub fn add_scaled(&mut self, other: &Matrix<F>, c: u64) {
        debug_assert_eq!(self.shape(), other.shape());
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = self.field.add(*a, self.field.mul(b, c));
        }
    }

    /// self += other, in place.
    pub fn add_assign(&mut self, other: &Matrix<F>) {
        debug_assert_eq!(self.shape(), other.shape());
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = self.field.add(*a, b);
        }
    }

    fn check_shape(&self, other: &Matrix<F>) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch { expected: self.shape(), got: other.shape() });
        }
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                expected: (other.rows, self.cols),
                got: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Reflection along the anti-diagonal: entry (i,j) moves to
    /// (cols-1-j, rows-1-i). Rank-preserving; maps a right-justified Ferrers
    /// pattern onto the pattern of its conjugate partition.
    pub fn anti_transpose(&self) -> Matrix<F> {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(self.cols - 1 - c, self.rows - 1 - r, self.get(r, c));
            }
        }
        out
    }

    /// Reduce to reduced row echelon form in place. Returns the rank and the
    /// pivot column indices (ascending).
    pub fn rref_in_place(&mut self) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| self.get(r, col) != 0);
            let Some(r0) = found else { continue };
            self.swap_rows(pivot_row, r0);
            let lead = self.get(pivot_row, col);
            if lead != 1 {
                let li = self.field.inv(lead).expect("pivot is nonzero");
                self.scale_row(pivot_row, li);
            }
            for r in 0..self.rows {
                if r != pivot_row {
                    let factor = self.get(r, col);
                    if factor != 0 {
                        self.sub_scaled_row(r, pivot_row, factor);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (pivot_row, pivots)
    }

    /// Reduced row echelon form, rank, and pivot columns of a copy.
    pub fn rref(&self) -> (Matrix<F>, usize, Vec<usize>) {
        let mut m = self.clone();
        let (rank, pivots) = m.rref_in_place();
        (m, rank, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the right kernel {x : self * x = 0} as rows of a
    /// (cols - rank) x cols matrix, derived from the RREF free columns.
    pub fn kernel(&self) -> Matrix<F> {
        let (rr, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(&self.field, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate().take(rank) {
                let v = rr.get(pr, fc);
                if v != 0 {
                    out.set(i, pc, self.field.neg(v));
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: u64) {
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, self.field.mul(v, factor));
        }
    }

    /// row[r] -= factor * row[src]
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: u64) {
        for c in 0..self.cols {
            let v = self.field.sub(self.get(r, c), self.field.mul(factor, self.get(src, c)));
            self.set(r, c, v);
        }
    }

    /// Keep only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Standard inner product of row `r` with a vector.
    pub fn row_dot(&self, r: usize, v: &[u64]) -> u64 {
        debug_assert_eq!(v.len(), self.cols);
        let mut acc = 0u64;
        for c in 0..self.cols {
            acc = self.field.add(acc, self.field.mul(self.get(r, c), v[c]));
        }
        acc
    }
}

impl<F: FiniteField> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?} [", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gf(q: u64) -> FieldCtx {
        FieldCtx::gf(q).unwrap()
    }

    #[test]
    fn rref_paper_running_example() {
        // A row-echelon basis of the running 3-dim subspace of GF(2)^7
        // reduces to the unique RREF generator.
        let f = gf(2);
        let m = Matrix::from_rows(
            &f,
            vec![
                vec![1, 0, 1, 0, 0, 1, 1],
                vec![0, 0, 1, 1, 1, 1, 0],
                vec![0, 0, 0, 1, 0, 1, 1],
            ],
        )
        .unwrap();
        let (rr, rank, pivots) = m.rref();
        assert_eq!(rank, 3);
        assert_eq!(pivots, vec![0, 2, 3]);
        let expected = Matrix::from_rows(
            &f,
            vec![
                vec![1, 0, 0, 0, 1, 1, 0],
                vec![0, 0, 1, 0, 1, 0, 1],
                vec![0, 0, 0, 1, 0, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(rr, expected);
    }

    #[test]
    fn rref_identity_fixed_point() {
        let f = gf(3);
        let id = Matrix::identity(&f, 4);
        let (rr, rank, _) = id.rref();
        assert_eq!(rank, 4);
        assert_eq!(rr, id);
    }

    #[test]
    fn rref_idempotent_random() {
        let f = gf(3);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = (0..4)
                .map(|_| (0..6).map(|_| rng.gen_range(0..3u64)).collect())
                .collect();
            let m = Matrix::from_rows(&f, rows).unwrap();
            let (r1, rank1, p1) = m.rref();
            let (r2, rank2, p2) = r1.rref();
            assert_eq!(r1, r2);
            assert_eq!(rank1, rank2);
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn kernel_is_orthogonal_and_full() {
        let f = gf(2);
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let rows: Vec<Vec<u64>> = (0..3)
                .map(|_| (0..6).map(|_| rng.gen_range(0..2u64)).collect())
                .collect();
            let m = Matrix::from_rows(&f, rows).unwrap();
            let k = m.kernel();
            assert_eq!(k.rows() + m.rank(), 6);
            for kr in 0..k.rows() {
                for mr in 0..m.rows() {
                    assert_eq!(m.row_dot(mr, k.row(kr)), 0);
                }
            }
            assert_eq!(k.rank(), k.rows());
        }
    }

    #[test]
    fn anti_transpose_preserves_rank() {
        let f = gf(3);
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..100 {
            let rows: Vec<Vec<u64>> = (0..4)
                .map(|_| (0..3).map(|_| rng.gen_range(0..3u64)).collect())
                .collect();
            let m = Matrix::from_rows(&f, rows).unwrap();
            let a = m.anti_transpose();
            assert_eq!(a.shape(), (3, 4));
            assert_eq!(a.rank(), m.rank());
            assert_eq!(a.anti_transpose(), m);
        }
    }

    #[test]
    fn stack_shape_checks() {
        let f = gf(2);
        let a = Matrix::zeros(&f, 2, 3);
        let b = Matrix::zeros(&f, 1, 4);
        assert!(a.stack(&b).is_err());
        let c = Matrix::zeros(&f, 1, 3);
        assert_eq!(a.stack(&c).unwrap().shape(), (3, 3));
    }
}
