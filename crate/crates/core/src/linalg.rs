//! Dense matrices over a [`Field`] and the elimination routines the
//! cohomology computations are built on.
//!
//! A linear map `V -> W` is stored as a `dim W x dim V` matrix, so images of
//! basis vectors are columns.

use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:?}", self.data[r * self.cols + c])?;
            }
        }
        f.write_str("]")
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: alloc::vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hconcat row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }
}

pub fn mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product dimension mismatch");
    let mut out = Matrix::zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if field.is_zero(bkj) {
                    continue;
                }
                let cur = out.get(i, j).clone();
                out.set(i, j, field.add(&cur, &field.mul(aik, bkj)));
            }
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, a: &Matrix<F::Elem>, s: &F::Elem) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows, a.cols, |r, c| field.mul(a.get(r, c), s))
}

pub fn is_zero_matrix<F: Field>(field: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|e| field.is_zero(e))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_in_place<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !field.is_zero(m.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..cols {
                m.data.swap(p * cols + c, row * cols + c);
            }
        }
        let inv = field.inv(m.get(row, col));
        if !field.is_one(&inv) {
            for c in col..cols {
                let v = field.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
        }
        for r in 0..rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if field.is_zero(&factor) {
                continue;
            }
            for c in col..cols {
                let pivot_entry = &m.data[row * cols + c];
                if field.is_zero(pivot_entry) {
                    continue;
                }
                let v = field.sub_mul(m.get(r, c), &factor, pivot_entry);
                m.data[r * cols + c] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut work = m.clone();
    rref_in_place(field, &mut work).len()
}

/// Basis of the null space, as columns.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let cols = m.cols;
    if m.rows == 0 {
        return Matrix::identity(field, cols);
    }
    let mut work = m.clone();
    let pivots = rref_in_place(field, &mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(field, cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, field.one());
        for (r, &p) in pivots.iter().enumerate() {
            basis.set(p, k, field.neg(work.get(r, f)));
        }
    }
    basis
}

/// Cohomology `ker(d_out) / im(d_in)` at one slot of a cochain complex,
/// with chosen representatives and a coordinate map.
///
/// `reps` has the cohomology representatives as columns. `projector` maps a
/// cocycle to the coordinates of its class in the `reps` basis; on vectors
/// that are not cocycles its output is meaningless.
#[derive(Clone, Debug)]
pub struct Cohomology<E> {
    pub reps: Matrix<E>,
    pub projector: Matrix<E>,
}

impl<E: Clone> Cohomology<E> {
    pub fn dim(&self) -> usize {
        self.reps.cols
    }
}

/// `d_in: C^{i-1} -> C^i` is `dim x prev`, `d_out: C^i -> C^{i+1}` is
/// `next x dim`.
pub fn cohomology<F: Field>(
    field: &F,
    dim: usize,
    d_in: &Matrix<F::Elem>,
    d_out: &Matrix<F::Elem>,
) -> Cohomology<F::Elem> {
    debug_assert_eq!(d_in.rows, dim);
    debug_assert_eq!(d_out.cols, dim);
    let cycles = kernel(field, d_out);
    if cycles.cols == 0 {
        return Cohomology {
            reps: Matrix::zeros(field, dim, 0),
            projector: Matrix::zeros(field, 0, dim),
        };
    }
    // Pivot columns of [B | Z] split into an image basis and a complement.
    let mut joint = d_in.hconcat(&cycles);
    let pivots = rref_in_place(field, &mut joint);
    let image_cols: Vec<usize> = pivots.iter().copied().filter(|&c| c < d_in.cols).collect();
    let rep_cols: Vec<usize> =
        pivots.iter().filter(|&&c| c >= d_in.cols).map(|&c| c - d_in.cols).collect();
    let image = d_in.select_columns(&image_cols);
    let reps = cycles.select_columns(&rep_cols);
    let basis = image.hconcat(&reps);
    let left = left_inverse(field, &basis);
    let h_rows: Vec<usize> = (image.cols..basis.cols).collect();
    let projector = left.select_rows(&h_rows);
    Cohomology { reps, projector }
}

/// A left inverse of a matrix with full column rank.
pub fn left_inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (rows, cols) = (m.rows, m.cols);
    let mut aug = m.hconcat(&Matrix::identity(field, rows));
    let pivots = rref_in_place(field, &mut aug);
    assert!(
        pivots.len() >= cols && pivots[..cols].iter().enumerate().all(|(i, &p)| i == p),
        "left_inverse: matrix does not have full column rank"
    );
    Matrix::from_fn(cols, rows, |r, c| aug.get(r, cols + c).clone())
}
