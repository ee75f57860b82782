//! Small dense kernels and a scalar COO view for block operators.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Pivots below this fraction of the largest matrix entry are singular.
const PIVOT_TOL: f64 = 1e-14;

/// Row-major LU factorization with partial pivoting.
#[derive(Clone, Debug, PartialEq)]
pub struct LuFactor {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl LuFactor {
    /// Factors the `n x n` row-major matrix `a`. On failure returns the
    /// index of the vanishing pivot.
    pub fn new(mut a: Vec<f64>, n: usize) -> core::result::Result<Self, usize> {
        assert_eq!(a.len(), n * n);
        let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].abs();
            for r in k + 1..n {
                let v = a[r * n + k].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if !(best > PIVOT_TOL * scale) || !best.is_finite() {
                return Err(k);
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let pivot = a[k * n + k];
            for r in k + 1..n {
                let f = a[r * n + k] / pivot;
                if f == 0.0 {
                    continue;
                }
                a[r * n + k] = f;
                let (upper, lower) = a.split_at_mut(r * n);
                let row_k = &upper[k * n + k + 1..k * n + n];
                for (x, &y) in lower[k + 1..n].iter_mut().zip(row_k) {
                    *x -= f * y;
                }
            }
        }
        Ok(Self { n, lu: a, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `A x = b`, overwriting `b` with `x`.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let row = &self.lu[r * n..r * n + r];
            let s: f64 = row.iter().zip(&x[..r]).map(|(a, b)| a * b).sum();
            x[r] -= s;
        }
        for r in (0..n).rev() {
            let row = &self.lu[r * n + r + 1..r * n + n];
            let s: f64 = row.iter().zip(&x[r + 1..]).map(|(a, b)| a * b).sum();
            x[r] = (x[r] - s) / self.lu[r * n + r];
        }
        b.copy_from_slice(&x);
    }
}

/// Iterative refinement steps applied after the LU solve.
pub const REFINEMENT_STEPS: usize = 2;

/// Solves the dense system `a x = b` (row-major, `n x n`) by LU with
/// partial pivoting followed by iterative refinement.
pub fn dense_solve(a: Vec<f64>, n: usize, b: &[f64]) -> Result<Vec<f64>> {
    let lu = LuFactor::new(a.clone(), n).map_err(Error::SingularMatrix)?;
    let mut x = b.to_vec();
    lu.solve_in_place(&mut x);
    for _ in 0..REFINEMENT_STEPS {
        let mut r = b.to_vec();
        for (i, ri) in r.iter_mut().enumerate() {
            *ri -= a[i * n..(i + 1) * n].iter().zip(&x).map(|(p, q)| p * q).sum::<f64>();
        }
        lu.solve_in_place(&mut r);
        x.iter_mut().zip(&r).for_each(|(xi, ri)| *xi += ri);
    }
    Ok(x)
}

/// `y += A x` for a row-major `rows x cols` block.
#[inline]
pub fn gemv_add(a: &[f64], rows: usize, cols: usize, x: &[f64], y: &mut [f64]) {
    for r in 0..rows {
        let row = &a[r * cols..(r + 1) * cols];
        y[r] += row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
    }
}

/// Scalar sparse matrix in coordinate form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Coo {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

impl Coo {
    /// Nonzero entries with `col > row`.
    pub fn strictly_upper_nonzeros(&self) -> usize {
        self.entries
            .iter()
            .filter(|&&(r, c, v)| c > r && v != 0.0)
            .count()
    }

    /// Entries in row-major order.
    pub fn sorted(mut self) -> Self {
        self.entries.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        self
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.rows * self.cols];
        for &(r, c, v) in &self.entries {
            out[r * self.cols + c] += v;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn solves_with_pivoting() {
        // needs a row swap: zero leading entry
        let a = vec![0.0, 2.0, 1.0, 1.0, 1.0, 0.0, 3.0, 0.0, 1.0];
        let x_true = [1.0, -2.0, 0.5];
        let mut b = vec![0.0; 3];
        gemv_add(&a, 3, 3, &x_true, &mut b);
        let x = dense_solve(a, 3, &b).unwrap();
        for (u, v) in x.iter().zip(&x_true) {
            assert!((u - v).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![1.0, 2.0, 2.0, 4.0];
        assert_eq!(dense_solve(a, 2, &[1.0, 1.0]), Err(Error::SingularMatrix(1)));
        assert_eq!(LuFactor::new(vec![0.0], 1), Err(0));
    }
}
