use std::fmt;

use super::scalar::{Rational, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must share a length;
    /// `cols` is needed to express matrices with zero rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<S>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: vals.iter().map(|&v| S::from_i64(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut S {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        self.map(|v| v.mul_ref(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add_ref(b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub_ref(b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self += s * other`
    pub fn add_scaled_assign(&mut self, s: &S, other: &Self) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.add_mul_assign(s, b);
        }
    }

    /// Matrix product. Zero entries of the left factor are skipped, which
    /// matters for the very sparse cup-product operators.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let base = r * other.cols;
                for (c, b) in brow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + c].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    acc.add_mul_assign(a, b);
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_rows(&mut rows, self.cols);
        rows.truncate(pivots.len());
        let mut full = Matrix::from_rows(self.cols, rows);
        // pad back to the original shape
        let missing = self.rows - full.rows;
        if missing > 0 {
            full = full.vstack(&Matrix::zeros(missing, self.cols));
        }
        (full, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref_rows(&mut rows, self.cols).len()
    }

    /// A basis of `{v : self·v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let mut rows = self.row_vecs();
        let pivots = rref_rows(&mut rows, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                let e = &rows[r][free];
                if !e.is_zero() {
                    v[p] = e.neg_ref();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut rows: Vec<Vec<S>> = self
            .row_vecs()
            .into_iter()
            .zip(b)
            .map(|(mut r, bi)| {
                r.push(bi.clone());
                r
            })
            .collect();
        let pivots = rref_rows(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<S>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { S::one() } else { S::zero() }));
                row
            })
            .collect();
        let pivots = rref_rows(&mut rows, n);
        if pivots.len() < n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| rows[r][n + c].clone()))
    }

    pub fn determinant(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return S::zero();
            };
            if p != c {
                a.swap(p, c);
                det = det.neg_ref();
            }
            let piv = a[c][c].clone();
            det = det.mul_ref(&piv);
            let inv = piv.inv_ref();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].mul_ref(&inv);
                let (top, bottom) = a.split_at_mut(r);
                axpy_neg(&mut bottom[0], &f, &top[c], c);
            }
        }
        det
    }
}

impl Matrix<Rational> {
    pub fn to_gaussian(&self) -> Matrix<super::GaussianRational> {
        self.map(super::GaussianRational::from_rational)
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `row -= f * pivot_row`, touching only columns `>= start`.
fn axpy_neg<S: Scalar>(row: &mut [S], f: &S, pivot_row: &[S], start: usize) {
    for c in start..row.len() {
        let p = &pivot_row[c];
        if p.is_zero() {
            continue;
        }
        row[c] = row[c].sub_ref(&f.mul_ref(p));
    }
}

/// In-place Gauss–Jordan elimination on the first `ncols` columns of `rows`.
/// Pivots on the first nonzero entry; rows are reordered so that row `k`
/// carries pivot `k`. Returns the pivot columns.
pub(crate) fn rref_rows<S: Scalar>(rows: &mut [Vec<S>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..ncols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(p, next);
        let inv = rows[next][c].inv_ref();
        if !inv.is_one() {
            for v in rows[next][c..].iter_mut() {
                if !v.is_zero() {
                    *v = v.mul_ref(&inv);
                }
            }
        }
        let pivot_row = std::mem::take(&mut rows[next]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            axpy_neg(row, &f, &pivot_row, c);
        }
        rows[next] = pivot_row;
        pivots.push(c);
        next += 1;
    }
    pivots
}
