//! Separable continuous dictionaries and their grid-anchored
//! interpolation tables.
//!
//! An atom is the outer product of per-axis sub-atoms,
//! `A(p) = ψ_1(p_1) ⊗ … ⊗ ψ_L(p_L)`. Near a grid node `n` an off-grid
//! atom is approximated with an order-1 Taylor expansion,
//!
//! ```text
//! A(p) ≈ Σ_i c^{(i)}(p) · A^{(i)}[n],   i = 1, …, I = L+1
//! ```
//!
//! where `A^{(1)}[n]` is the on-grid atom and `A^{(ℓ+1)}[n]` replaces the
//! axis-ℓ factor with the analytic derivative `ψ'_ℓ(ω_{n_ℓ})`. The
//! coefficients are `c(p) = (1, p_1 − ω_{n_1}, …, p_L − ω_{n_L})`: no
//! mixed-derivative atom is kept, since its contribution is of the same
//! order as the scheme's own remainder.
//!
//! Every interpolation atom still factorizes, so correlations against all
//! grid nodes can be computed one axis at a time from the per-axis tables
//! precomputed here.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::grid::SeparableGrid;
use crate::tensor::{CMatrix, ComplexTensor};

/// Per-axis continuous sub-atom family with an analytic derivative.
// Generators always produce at least one sample, so an `is_empty` would be
// dead weight next to `len`.
#[allow(clippy::len_without_is_empty)]
pub trait SubAtomGenerator {
    /// Sub-atom length `M_ℓ`.
    fn len(&self) -> usize;

    /// `ψ_ℓ(p)`.
    fn eval(&self, p: f64) -> Vec<Complex64>;

    /// `∂ψ_ℓ/∂p` at `p`.
    fn eval_derivative(&self, p: f64) -> Vec<Complex64>;
}

/// Value and derivative sub-atom tables for one axis; column `n` holds the
/// sub-atom sampled at grid node `ω_{ℓ,n}`.
#[derive(Debug, Clone)]
pub struct AxisTables {
    pub value: CMatrix,
    pub derivative: CMatrix,
}

/// How the Gram of the interpolation atoms is stored.
///
/// For unit-modulus exponential sub-atoms the node parameter enters only
/// as a phase, so `⟨A^{(i)}[n], A^{(j)}[n]⟩` does not depend on `n` and a
/// single Gram (computed at the first node) serves the whole grid. For
/// dictionaries without that invariance, `per_node_gram` stores one Gram
/// per node instead.
#[derive(Debug, Clone, Copy, Default)]
pub struct DictionaryOptions {
    pub per_node_gram: bool,
}

enum GramStore {
    Shared(CMatrix),
    PerNode(Vec<CMatrix>),
}

/// Precomputed interpolation tables, Gram and norms over a separable grid.
pub struct InterpolatedDictionary {
    grid: SeparableGrid,
    axes: Vec<AxisTables>,
    gram: GramStore,
}

impl InterpolatedDictionary {
    /// Build with a single shared Gram (see [`DictionaryOptions`]).
    pub fn build(generators: &[&dyn SubAtomGenerator], grid: &SeparableGrid) -> Result<Self> {
        Self::build_with_options(generators, grid, DictionaryOptions::default())
    }

    pub fn build_with_options(
        generators: &[&dyn SubAtomGenerator],
        grid: &SeparableGrid,
        options: DictionaryOptions,
    ) -> Result<Self> {
        if generators.len() != grid.axis_count() {
            return invalid(format!(
                "{} generators for a {}-axis grid",
                generators.len(),
                grid.axis_count()
            ));
        }
        let mut axes = Vec::with_capacity(generators.len());
        for (gen, axis) in generators.iter().zip(0..grid.axis_count()) {
            let nodes = grid.axis(axis).nodes();
            let values: Vec<Vec<Complex64>> = nodes.iter().map(|&w| gen.eval(w)).collect();
            let derivs: Vec<Vec<Complex64>> =
                nodes.iter().map(|&w| gen.eval_derivative(w)).collect();
            if values.iter().chain(&derivs).any(|v| v.len() != gen.len()) {
                return invalid("sub-atom generator returned an unexpected length");
            }
            axes.push(AxisTables {
                value: CMatrix::from_columns(&values)?,
                derivative: CMatrix::from_columns(&derivs)?,
            });
        }

        let mut dict = Self {
            grid: grid.clone(),
            axes,
            gram: GramStore::Shared(CMatrix::zeros(1, 1)),
        };
        dict.gram = if options.per_node_gram {
            GramStore::PerNode(
                (0..grid.node_count())
                    .map(|n| dict.compute_node_gram(n))
                    .collect(),
            )
        } else {
            GramStore::Shared(dict.compute_node_gram(0))
        };
        Ok(dict)
    }

    pub fn grid(&self) -> &SeparableGrid {
        &self.grid
    }

    /// Number of interpolation roles, `I = L + 1`.
    pub fn role_count(&self) -> usize {
        self.axes.len() + 1
    }

    /// Shape of the measurement tensor this dictionary decomposes,
    /// `(M_1, …, M_L)`.
    pub fn measurement_shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.value.rows()).collect()
    }

    pub fn axis_tables(&self, axis: usize) -> &AxisTables {
        &self.axes[axis]
    }

    /// Sub-atom table used on `axis` by interpolation role `role`
    /// (0-based: role 0 is the value atom, role `ℓ+1` differentiates
    /// axis `ℓ`).
    pub fn table(&self, role: usize, axis: usize) -> &CMatrix {
        if role == axis + 1 {
            &self.axes[axis].derivative
        } else {
            &self.axes[axis].value
        }
    }

    /// Interpolation Gram at a node: `G[i][j] = ⟨A^{(i)}[n], A^{(j)}[n]⟩`.
    pub fn gram(&self, node: usize) -> &CMatrix {
        match &self.gram {
            GramStore::Shared(g) => g,
            GramStore::PerNode(table) => &table[node],
        }
    }

    /// Whether one Gram serves every node (see [`DictionaryOptions`]).
    pub fn has_shared_gram(&self) -> bool {
        matches!(self.gram, GramStore::Shared(_))
    }

    /// Recompute the Gram directly from the tables (diagnostics and the
    /// node-invariance check).
    pub fn compute_node_gram(&self, node: usize) -> CMatrix {
        let i_count = self.role_count();
        let multi = self.grid.multi_of(node);
        let mut gram = CMatrix::zeros(i_count, i_count);
        for i in 0..i_count {
            for j in 0..i_count {
                let mut acc = Complex64::new(1.0, 0.0);
                for (axis, &n_axis) in multi.iter().enumerate() {
                    let a = self.table(i, axis).col(n_axis);
                    let b = self.table(j, axis).col(n_axis);
                    acc *= column_inner(a, b);
                }
                gram.set(i, j, acc);
            }
        }
        gram
    }

    /// Materialize the interpolation atom `A^{(role)}[node]` as a tensor.
    pub fn materialize_atom(&self, role: usize, node: usize) -> ComplexTensor {
        let multi = self.grid.multi_of(node);
        let cols: Vec<&[Complex64]> = multi
            .iter()
            .enumerate()
            .map(|(axis, &n_axis)| self.table(role, axis).col(n_axis))
            .collect();
        ComplexTensor::outer_product(&cols).expect("tables are non-empty")
    }

    /// Factorized cross inner product
    /// `⟨A^{(i)}[n], A^{(j)}[n']⟩ = Π_ℓ ⟨ψ^{(i)}_ℓ[n_ℓ], ψ^{(j)}_ℓ[n'_ℓ]⟩`.
    pub fn atom_inner(
        &self,
        role_a: usize,
        node_a: usize,
        role_b: usize,
        node_b: usize,
    ) -> Complex64 {
        let ma = self.grid.multi_of(node_a);
        let mb = self.grid.multi_of(node_b);
        let mut acc = Complex64::new(1.0, 0.0);
        for axis in 0..self.grid.axis_count() {
            let a = self.table(role_a, axis).col(ma[axis]);
            let b = self.table(role_b, axis).col(mb[axis]);
            acc *= column_inner(a, b);
        }
        acc
    }

    /// `⟨A^{(role)}[node], t⟩` via chained single-column contractions; the
    /// atom is never materialized.
    pub fn measurement_inner(
        &self,
        role: usize,
        node: usize,
        t: &ComplexTensor,
    ) -> Result<Complex64> {
        let multi = self.grid.multi_of(node);
        let mut acc = t.clone();
        for (axis, &n_axis) in multi.iter().enumerate() {
            let probe = CMatrix::from_column(self.table(role, axis).col(n_axis));
            acc = acc.mode_inner_products(&probe, axis)?;
        }
        Ok(acc.as_slice()[0])
    }
}

fn column_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Order-1 Taylor coefficient pattern at node `n`:
/// `(1, p_1 − ω_{n_1}, …, p_L − ω_{n_L})`.
pub fn coefficient_function(grid: &SeparableGrid, node: usize, p: &[f64]) -> Vec<Complex64> {
    let coords = grid.params_of(node);
    let mut c = Vec::with_capacity(coords.len() + 1);
    c.push(Complex64::new(1.0, 0.0));
    for (axis, &w) in coords.iter().enumerate() {
        c.push(Complex64::new(p[axis] - w, 0.0));
    }
    c
}

/// Evaluate the interpolated approximation of `A(p)` anchored at `node`,
/// `Σ_i c^{(i)}(p)·A^{(i)}[node]`. Accuracy is only meaningful when `p`
/// lies in the node's cell (each `|p_ℓ − ω_{n_ℓ}| ≤ Δ_ℓ/2`), but this is
/// not enforced.
pub fn interpolate_atom(
    dict: &InterpolatedDictionary,
    node: usize,
    p: &[f64],
) -> Result<ComplexTensor> {
    if node >= dict.grid().node_count() {
        return invalid(format!(
            "node {} out of range ({} grid nodes)",
            node,
            dict.grid().node_count()
        ));
    }
    if p.len() != dict.grid().axis_count() {
        return invalid("parameter dimension does not match grid");
    }
    let coeffs = coefficient_function(dict.grid(), node, p);
    let mut out = ComplexTensor::zeros(&dict.measurement_shape());
    for (role, &c) in coeffs.iter().enumerate() {
        out.add_scaled(c, &dict.materialize_atom(role, node))?;
    }
    Ok(out)
}

/// The exact atom `A(p) = ψ_1(p_1) ⊗ … ⊗ ψ_L(p_L)`: ground truth for
/// synthesis and error measurement.
pub fn exact_atom(generators: &[&dyn SubAtomGenerator], p: &[f64]) -> Result<ComplexTensor> {
    if generators.is_empty() {
        return invalid("need at least one generator");
    }
    if p.len() != generators.len() {
        return invalid("parameter dimension does not match generator count");
    }
    let factors: Vec<Vec<Complex64>> = generators.iter().zip(p).map(|(g, &x)| g.eval(x)).collect();
    let views: Vec<&[Complex64]> = factors.iter().map(|f| f.as_slice()).collect();
    ComplexTensor::outer_product(&views)
}

/// Fully materialized interpolation atoms: one `M × N_total` matrix per
/// role, with column `n` the vectorized `A^{(role)}[n]`. This is the
/// non-factorized dictionary the dense baseline algorithms correlate
/// against.
pub struct DenseDictionary {
    grid: SeparableGrid,
    shape: Vec<usize>,
    atoms: Vec<CMatrix>,
    gram: GramStore,
}

impl DenseDictionary {
    pub fn materialize(dict: &InterpolatedDictionary) -> Self {
        let node_count = dict.grid().node_count();
        let atoms = (0..dict.role_count())
            .map(|role| {
                let cols: Vec<Vec<Complex64>> = (0..node_count)
                    .map(|n| dict.materialize_atom(role, n).into_vector())
                    .collect();
                CMatrix::from_columns(&cols).expect("atoms are non-empty")
            })
            .collect();
        let gram = match &dict.gram {
            GramStore::Shared(g) => GramStore::Shared(g.clone()),
            GramStore::PerNode(t) => GramStore::PerNode(t.clone()),
        };
        Self {
            grid: dict.grid().clone(),
            shape: dict.measurement_shape(),
            atoms,
            gram,
        }
    }

    pub fn grid(&self) -> &SeparableGrid {
        &self.grid
    }

    pub fn role_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn measurement_shape(&self) -> Vec<usize> {
        self.shape.clone()
    }

    pub fn gram(&self, node: usize) -> &CMatrix {
        match &self.gram {
            GramStore::Shared(g) => g,
            GramStore::PerNode(table) => &table[node],
        }
    }

    pub fn has_shared_gram(&self) -> bool {
        matches!(self.gram, GramStore::Shared(_))
    }

    /// Vectorized atom column.
    pub fn atom_column(&self, role: usize, node: usize) -> &[Complex64] {
        self.atoms[role].col(node)
    }

    pub fn atom_inner(
        &self,
        role_a: usize,
        node_a: usize,
        role_b: usize,
        node_b: usize,
    ) -> Complex64 {
        column_inner(
            self.atom_column(role_a, node_a),
            self.atom_column(role_b, node_b),
        )
    }

    pub fn measurement_inner(&self, role: usize, node: usize, t: &ComplexTensor) -> Complex64 {
        column_inner(self.atom_column(role, node), t.as_slice())
    }

    pub fn materialize_atom(&self, role: usize, node: usize) -> ComplexTensor {
        ComplexTensor::from_vector(self.atom_column(role, node).to_vec(), &self.shape)
            .expect("column length matches shape")
    }
}
