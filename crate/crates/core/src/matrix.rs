//! Dense exact matrices and the Gaussian-elimination kernel.

use crate::error::Error;
use crate::field::{Field, Scalar};

/// Row-major dense matrix over a single field descriptor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn from_entries(
        rows: usize,
        cols: usize,
        field: Field,
        entries: Vec<Scalar>,
    ) -> Result<Matrix, Error> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { rows, cols, field, entries })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: Field,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.field(), field, "entry field mismatch");
                entries.push(e);
            }
        }
        Matrix { rows, cols, field, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, field: Field, data: &[i64]) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix::from_fn(rows, cols, field, |r, c| field.from_i64(data[r * cols + c]))
    }

    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix::from_fn(rows, cols, field, |_, _| field.zero())
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        Matrix::from_fn(n, n, field, |r, c| if r == c { field.one() } else { field.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Matrix {
        Matrix {
            rows: 1,
            cols: self.cols,
            field: self.field,
            entries: self.entries[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    /// Stacks the given rows of `self` into a new matrix.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), self.cols, self.field, |r, c| self.at(rows[r], c).clone())
    }

    pub fn vstack(blocks: &[&Matrix]) -> Result<Matrix, Error> {
        let first = blocks.first().expect("vstack of nothing");
        let cols = first.cols;
        let field = first.field;
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::ShapeMismatch("vstack column mismatch".into()));
            }
            if b.field != field {
                return Err(Error::FieldMismatch);
            }
            entries.extend_from_slice(&b.entries);
            rows += b.rows;
        }
        Ok(Matrix { rows, cols, field, entries })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, self.field, |r, c| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(r, k).mul(other.at(k, c)));
            }
            acc
        }))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols(), self.rows(), self.field(), |r, c| self.at(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Exact reduced row echelon form with rank and pivot columns.
    pub fn rref_rank(&self) -> (Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.at(pivot_row, col).inv().expect("pivot is nonzero");
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    m.axpy_row(r, pivot_row, &factor.neg());
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots.len(), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_rank().1
    }

    /// Exact determinant by elimination with pivot bookkeeping.
    pub fn det(&self) -> Result<Scalar, Error> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..m.cols {
            let Some(src) = (col..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                return Ok(self.field.zero());
            };
            if src != col {
                m.swap_rows(col, src);
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..m.rows {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).mul(&inv).neg();
                    m.axpy_row(r, col, &factor);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; `Singular` if the matrix is not invertible.
    pub fn invert(&self) -> Result<Matrix, Error> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, self.field, |r, c| {
            if c < n {
                self.at(r, c).clone()
            } else if c - n == r {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (red, rank, _) = aug.rref_rank();
        if rank < n || (0..n).any(|i| red.at(i, i) != &self.field.one()) {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(n, n, self.field, |r, c| red.at(r, n + c).clone()))
    }

    /// Determinant of the square submatrix on `row_subset` (all columns).
    pub fn minor_det(&self, row_subset: &[usize]) -> Result<Scalar, Error> {
        if row_subset.len() != self.cols {
            return Err(Error::SubsetSizeMismatch { got: row_subset.len(), want: self.cols });
        }
        self.select_rows(row_subset).det()
    }

    /// Exact basis of the right null space, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        let (red, _, pivots) = self.rref_rank();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                Matrix::from_fn(self.cols, 1, self.field, |r, _| {
                    if r == fc {
                        self.field.one()
                    } else if let Some(pi) = pivots.iter().position(|&p| p == r) {
                        red.at(pi, fc).neg()
                    } else {
                        self.field.zero()
                    }
                })
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.at(r, c).mul(factor);
            self.set(r, c, v);
        }
    }

    /// row[r] += factor * row[src]
    fn axpy_row(&mut self, r: usize, src: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.at(r, c).add(&self.at(src, c).mul(factor));
            self.set(r, c, v);
        }
    }
}

/// Incrementally maintained row space in echelon form. Used by the
/// saturation and greedy-skeleton loops to test row independence.
#[derive(Clone, Debug)]
pub struct RowSpace {
    width: usize,
    field: Field,
    // reduced rows paired with their pivot column, sorted by pivot
    rows: Vec<(usize, Matrix)>,
}

impl RowSpace {
    pub fn new(width: usize, field: Field) -> RowSpace {
        RowSpace { width, field, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `row` against the basis; returns the remainder.
    pub fn reduce(&self, row: &Matrix) -> Matrix {
        assert_eq!(row.cols(), self.width);
        let mut r = row.clone();
        for (pivot, basis) in &self.rows {
            let coeff = r.at(0, *pivot).clone();
            if !coeff.is_zero() {
                for c in 0..self.width {
                    let v = r.at(0, c).sub(&coeff.mul(basis.at(0, c)));
                    r.set(0, c, v);
                }
            }
        }
        r
    }

    pub fn contains(&self, row: &Matrix) -> bool {
        self.reduce(row).is_zero()
    }

    /// Inserts `row` if independent; returns whether the rank grew.
    pub fn insert(&mut self, row: &Matrix) -> bool {
        let mut r = self.reduce(row);
        let Some(pivot) = (0..self.width).find(|&c| !r.at(0, c).is_zero()) else {
            return false;
        };
        let inv = r.at(0, pivot).inv().expect("pivot nonzero");
        for c in 0..self.width {
            let v = r.at(0, c).mul(&inv);
            r.set(0, c, v);
        }
        // back-substitute into existing rows to stay fully reduced
        for (_, basis) in &mut self.rows {
            let coeff = basis.at(0, pivot).clone();
            if !coeff.is_zero() {
                for c in 0..self.width {
                    let v = basis.at(0, c).sub(&coeff.mul(r.at(0, c)));
                    basis.set(0, c, v);
                }
            }
        }
        let pos = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(pos, (pivot, r));
        true
    }

    /// The echelon basis stacked as a matrix (rank x width).
    pub fn basis_matrix(&self) -> Matrix {
        if self.rows.is_empty() {
            return Matrix::zero(0, self.width, self.field);
        }
        let refs: Vec<&Matrix> = self.rows.iter().map(|(_, m)| m).collect();
        Matrix::vstack(&refs).expect("uniform rows")
    }
}
