//! Small dense complex linear solves.
//!
//! The dictionary Gram and the joint-refit normal matrices are tiny
//! (`I×I` and `kI×kI` with `I = L+1`, `k ≤ K`), so LU with partial
//! pivoting is all that is needed. A solve falls back to a Tikhonov-shifted
//! system `A + λ·Id` with `λ = 1e-10 · trace(A)/n` when the pivot-ratio
//! condition proxy exceeds [`CONDITION_LIMIT`] or a pivot vanishes; the
//! caller learns about the fallback through the returned flag and surfaces
//! it as a diagnostic.

// Triangular substitution is written with explicit indices on purpose; the
// iterator forms obscure the row/column roles.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::tensor::CMatrix;

/// Condition-number proxy above which a solve is re-run regularized.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Relative Tikhonov shift applied on fallback.
pub const TIKHONOV_SCALE: f64 = 1e-10;

/// LU factorization (partial pivoting) of a square complex matrix.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    pivots: Vec<usize>,
    /// max|pivot| / min|pivot|; a cheap condition estimate.
    pivot_ratio: f64,
    /// Whether this factorization is of a Tikhonov-shifted matrix.
    regularized: bool,
}

impl LuFactors {
    /// Factor `a`. Applies the Tikhonov fallback automatically when the
    /// raw factorization is singular or the pivot ratio exceeds the limit.
    pub fn factor(a: &CMatrix) -> Result<Self> {
        if a.rows() != a.cols() {
            return invalid(format!(
                "matrix is {}x{}, expected square",
                a.rows(),
                a.cols()
            ));
        }
        let n = a.rows();
        if n == 0 {
            return invalid("matrix is empty");
        }
        match Self::factor_raw(a, Complex64::ZERO) {
            Some(f) if f.pivot_ratio <= CONDITION_LIMIT => Ok(f),
            _ => {
                let trace: Complex64 = (0..n).map(|i| a.get(i, i)).sum();
                let lambda = Complex64::new(TIKHONOV_SCALE * trace.re / n as f64, 0.0);
                let mut f = Self::factor_raw(a, lambda)
                    .ok_or_else(|| crate::Error::InvalidArgument("singular matrix".into()))?;
                f.regularized = true;
                Ok(f)
            }
        }
    }

    fn factor_raw(a: &CMatrix, shift: Complex64) -> Option<Self> {
        let n = a.rows();
        // Row-major working copy of A + shift·Id.
        let mut lu = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                lu[i * n + j] = a.get(i, j) + if i == j { shift } else { Complex64::ZERO };
            }
        }
        let mut pivots = vec![0usize; n];
        let mut max_piv = 0.0f64;
        let mut min_piv = f64::INFINITY;

        for k in 0..n {
            let mut best = k;
            let mut best_mag = lu[k * n + k].norm();
            for i in k + 1..n {
                let mag = lu[i * n + k].norm();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if best_mag == 0.0 {
                return None;
            }
            pivots[k] = best;
            if best != k {
                for j in 0..n {
                    lu.swap(k * n + j, best * n + j);
                }
            }
            max_piv = max_piv.max(best_mag);
            min_piv = min_piv.min(best_mag);

            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in k + 1..n {
                    let sub = factor * lu[k * n + j];
                    lu[i * n + j] -= sub;
                }
            }
        }

        Some(Self {
            n,
            lu,
            pivots,
            pivot_ratio: max_piv / min_piv,
            regularized: false,
        })
    }

    pub fn regularized(&self) -> bool {
        self.regularized
    }

    /// Solve `A x = rhs` for one right-hand side.
    pub fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        if rhs.len() != self.n {
            return invalid(format!(
                "rhs length {} does not match system size {}",
                rhs.len(),
                self.n
            ));
        }
        let n = self.n;
        let mut x = rhs.to_vec();
        // The stored L rows are fully permuted, so the whole permutation
        // must land on the RHS before forward substitution starts.
        for k in 0..n {
            x.swap(k, self.pivots[k]);
        }
        for k in 0..n {
            let xk = x[k];
            for i in k + 1..n {
                let sub = self.lu[i * n + k] * xk;
                x[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        Ok(x)
    }
}

/// One-shot solve with the shared fallback policy. Returns the solution
/// and whether regularization kicked in.
pub fn solve(a: &CMatrix, rhs: &[Complex64]) -> Result<(Vec<Complex64>, bool)> {
    let f = LuFactors::factor(a)?;
    Ok((f.solve(rhs)?, f.regularized()))
}
