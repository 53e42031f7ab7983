//! Dense complex matrices sized for desk-scale operator algebra.
//!
//! Everything here acts on `Complex64` stored row-major. The categories this
//! crate targets have total Hilbert-space dimensions in the tens, so a plain
//! `Vec`-backed matrix with `O(n^3)` multiplication is the right tool; there
//! is no blocking, no SIMD, and no sparsity.
//!
//! Matrices built from set-valued categories have only 0/1 entries, and all
//! products of such matrices stay integer-valued. Since small integers are
//! exact in `f64`, comparing those with [`CMat::eq_exact`] is bit-exact;
//! floating-point comparisons go through [`CMat::approx_eq`] with an explicit
//! tolerance.

use num_complex::Complex64;

pub type C64 = Complex64;

pub const ZERO: C64 = Complex64::new(0.0, 0.0);
pub const ONE: C64 = Complex64::new(1.0, 0.0);
pub const I: C64 = Complex64::new(0.0, 1.0);

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    /// Build from a flat row-major entry list; the length must match.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self, ShapeError> {
        if entries.len() != rows * cols {
            return Err(ShapeError {
                expected: (rows, cols),
                got_len: entries.len(),
            });
        }
        Ok(CMat {
            rows,
            cols,
            data: entries,
        })
    }

    /// Convenience constructor from real-valued rows (tests and fixtures).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = CMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, C64::new(x, 0.0));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        CMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: C64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, rhs: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &CMat, tol: f64) -> bool {
        (self.rows, self.cols) == (rhs.rows, rhs.cols) && self.max_abs_diff(rhs) <= tol
    }

    /// Bit-exact equality; appropriate when both sides are integer-valued.
    pub fn eq_exact(&self, rhs: &CMat) -> bool {
        self == rhs
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|a| a.norm() <= tol)
    }

    /// True when every entry is exactly 0 or 1 (real).
    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(|a| *a == ZERO || *a == ONE)
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.rows == self.cols && self.max_abs_diff(&self.dagger()) <= tol
    }
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("entry list of length {got_len} does not fill a {expected:?} matrix")]
pub struct ShapeError {
    pub expected: (usize, usize),
    pub got_len: usize,
}

/// Rank of a complex matrix given as rows, by Gaussian elimination with
/// partial pivoting. Pivots with absolute value at most `tol` count as zero.
pub fn rank(mut m: Vec<Vec<C64>>, tol: f64) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let (best, best_abs) = (row..nrows)
            .map(|r| (r, m[r][col].norm()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_abs <= tol {
            continue;
        }
        m.swap(row, best);
        let pivot = m[row][col];
        let pivot_row = m[row].clone();
        for lower in m.iter_mut().skip(row + 1) {
            let factor = lower[col] / pivot;
            if factor == ZERO {
                continue;
            }
            for (c, entry) in lower.iter_mut().enumerate().skip(col) {
                *entry -= factor * pivot_row[c];
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_identity() {
        let a = CMat::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert!(a.mul(&CMat::identity(2)).eq_exact(&a));
        assert!(CMat::identity(2).mul(&a).eq_exact(&a));
    }

    #[test]
    fn dagger_conjugates() {
        let mut a = CMat::zeros(1, 2);
        a.set(0, 1, C64::new(1.0, -2.0));
        let d = a.dagger();
        assert_eq!(d.get(1, 0), C64::new(1.0, 2.0));
        assert_eq!((d.rows(), d.cols()), (2, 1));
    }

    #[test]
    fn rank_of_singular_matrix() {
        // rows 0 and 1 are linearly dependent
        let rows = vec![
            vec![ONE, ONE],
            vec![C64::new(2.0, 0.0), C64::new(2.0, 0.0)],
            vec![ONE, ZERO],
        ];
        assert_eq!(rank(rows, 1e-12), 2);
    }

    #[test]
    fn rank_of_zero_and_full() {
        assert_eq!(rank(vec![vec![ZERO; 3]; 2], 1e-12), 0);
        let id = vec![
            vec![ONE, ZERO, ZERO],
            vec![ZERO, ONE, ZERO],
            vec![ZERO, ZERO, ONE],
        ];
        assert_eq!(rank(id, 1e-12), 3);
    }
}
