//! Dense complex multiway arrays and the contraction primitives the
//! dictionary and solver modules build on.
//!
//! A [`ComplexTensor`] stores its elements in row-major order (last index
//! fastest), so the flat position of the 1-based multi-index
//! `(m_1, …, m_L)` is
//!
//! ```text
//! m̄ = m_L + Σ_{ℓ=1}^{L−1} (m_ℓ − 1) · Π_{i=ℓ+1}^{L} M_i
//! ```
//!
//! and reshaping between a vector and a tensor is a relabeling, never a
//! copy. All public indices in this API are 0-based; the formula above is
//! the 1-based statement of the same layout.
//!
//! Inner products follow the convention `⟨a, b⟩ = Σ conj(a_i)·b_i`
//! (conjugation on the left argument).

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Dense complex matrix with column-major storage.
///
/// Used for sub-atom tables (one column per grid node), contraction probes
/// and small Gram systems. Column-major keeps each probe/sub-atom column
/// contiguous, which is the dominant access pattern everywhere below.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    /// Build from column vectors; all columns must share one length.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        if columns.is_empty() {
            return invalid("matrix needs at least one column");
        }
        let rows = columns[0].len();
        if columns.iter().any(|c| c.len() != rows) {
            return invalid("matrix columns have unequal lengths");
        }
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            data.extend_from_slice(c);
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[col * self.rows + row]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[col * self.rows + row] = value;
    }

    /// Contiguous view of one column.
    #[inline]
    pub fn col(&self, col: usize) -> &[Complex64] {
        debug_assert!(col < self.cols);
        &self.data[col * self.rows..(col + 1) * self.rows]
    }

    /// Matrix of a single column vector.
    pub fn from_column(column: &[Complex64]) -> Self {
        Self {
            rows: column.len(),
            cols: 1,
            data: column.to_vec(),
        }
    }
}

/// Dense complex tensor of arbitrary order, row-major (last index fastest).
///
/// Immutable in spirit: every solver-facing operation returns a new tensor
/// or is an explicit in-place accumulation on a tensor the caller owns.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTensor {
    shape: Vec<usize>,
    data: Vec<Complex64>,
}

impl ComplexTensor {
    /// Reshape a vector into a tensor of the given extents. The vector is
    /// moved, not copied; the element at 0-based multi-index
    /// `(m_1, …, m_L)` is `v[flat]` with `flat = Σ m_ℓ·stride_ℓ`,
    /// `stride_L = 1`, `stride_ℓ = M_{ℓ+1}···M_L`.
    pub fn from_vector(data: Vec<Complex64>, shape: &[usize]) -> Result<Self> {
        if shape.is_empty() {
            return invalid("tensor needs at least one axis");
        }
        if shape.contains(&0) {
            return invalid("tensor extents must be positive");
        }
        let len: usize = shape.iter().product();
        if data.len() != len {
            return invalid(format!(
                "vector length {} does not match shape {:?} (product {})",
                data.len(),
                shape,
                len
            ));
        }
        Ok(Self {
            shape: shape.to_vec(),
            data,
        })
    }

    pub fn zeros(shape: &[usize]) -> Self {
        let len: usize = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            data: vec![Complex64::ZERO; len],
        }
    }

    /// Inverse of [`from_vector`](Self::from_vector); exact round trip.
    pub fn into_vector(self) -> Vec<Complex64> {
        self.data
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major flat position of a 0-based multi-index.
    pub fn flat_index(shape: &[usize], index: &[usize]) -> usize {
        debug_assert_eq!(shape.len(), index.len());
        let mut flat = 0usize;
        for (&m, &i) in shape.iter().zip(index) {
            debug_assert!(i < m);
            flat = flat * m + i;
        }
        flat
    }

    /// 0-based multi-index of a flat position.
    pub fn multi_index(shape: &[usize], mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; shape.len()];
        for axis in (0..shape.len()).rev() {
            idx[axis] = flat % shape[axis];
            flat /= shape[axis];
        }
        idx
    }

    #[inline]
    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.data[Self::flat_index(&self.shape, index)]
    }

    #[inline]
    pub fn set(&mut self, index: &[usize], value: Complex64) {
        let flat = Self::flat_index(&self.shape, index);
        self.data[flat] = value;
    }

    /// Outer product of `L` factor vectors: element
    /// `(m_1, …, m_L) = Π_ℓ ψ_ℓ[m_ℓ]`. The Frobenius norm of the result
    /// is the product of the factor Euclidean norms.
    pub fn outer_product(factors: &[&[Complex64]]) -> Result<Self> {
        if factors.is_empty() {
            return invalid("outer product needs at least one factor");
        }
        if factors.iter().any(|f| f.is_empty()) {
            return invalid("outer product factors must be non-empty");
        }
        let shape: Vec<usize> = factors.iter().map(|f| f.len()).collect();
        let mut data = factors[0].to_vec();
        for factor in &factors[1..] {
            let mut next = Vec::with_capacity(data.len() * factor.len());
            for &a in &data {
                for &b in *factor {
                    next.push(a * b);
                }
            }
            data = next;
        }
        Ok(Self { shape, data })
    }

    /// `sqrt(Σ |t|²)`; zero iff every element is zero.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self, other⟩ = Σ conj(self)·other`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.shape != other.shape {
            return invalid(format!(
                "inner product shape mismatch: {:?} vs {:?}",
                self.shape, other.shape
            ));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// In-place `self += coeff · other`.
    pub fn add_scaled(&mut self, coeff: Complex64, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return invalid(format!(
                "accumulation shape mismatch: {:?} vs {:?}",
                self.shape, other.shape
            ));
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += coeff * b;
        }
        Ok(())
    }

    pub fn scale(&mut self, coeff: Complex64) {
        for z in &mut self.data {
            *z *= coeff;
        }
    }

    /// Contract one mode against a probe matrix, replacing the mode-`mode`
    /// extent `M` by the probe column count `N`:
    ///
    /// ```text
    /// out(…, n, …) = Σ_m conj(probes[m, n]) · t(…, m, …)
    /// ```
    ///
    /// Chaining this over every mode of an outer-product tensor against
    /// per-axis probe tables yields `⟨⊗_ℓ ψ_ℓ[n_ℓ], t⟩` for every node of
    /// the probe grid in one pass per mode, without materializing any
    /// outer-product atom.
    pub fn mode_inner_products(&self, probes: &CMatrix, mode: usize) -> Result<Self> {
        if mode >= self.shape.len() {
            return invalid(format!(
                "mode {} out of range for order-{} tensor",
                mode,
                self.shape.len()
            ));
        }
        if probes.rows() != self.shape[mode] {
            return invalid(format!(
                "probe rows {} do not match mode-{} extent {}",
                probes.rows(),
                mode,
                self.shape[mode]
            ));
        }
        let m = self.shape[mode];
        let n = probes.cols();
        let inner: usize = self.shape[mode + 1..].iter().product();
        let outer: usize = self.shape[..mode].iter().product();

        let mut out_shape = self.shape.clone();
        out_shape[mode] = n;
        let mut out = vec![Complex64::ZERO; outer * n * inner];

        for o in 0..outer {
            let in_base = o * m * inner;
            let out_base = o * n * inner;
            for col in 0..n {
                let probe = probes.col(col);
                let dst = &mut out[out_base + col * inner..out_base + (col + 1) * inner];
                for (row, &p) in probe.iter().enumerate() {
                    let w = p.conj();
                    let src = &self.data[in_base + row * inner..in_base + (row + 1) * inner];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d += w * s;
                    }
                }
            }
        }

        Ok(Self {
            shape: out_shape,
            data: out,
        })
    }
}
