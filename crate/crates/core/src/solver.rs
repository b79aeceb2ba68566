//! Greedy sparse decomposition over separable dictionaries.
//!
//! Four variants share one loop (select, joint refit, residual update,
//! final parameter correction):
//!
//! * `fcomp`: off-grid, factorized correlations (the fast path).
//! * `comp`: off-grid, correlations against fully materialized atoms.
//! * `fomp`: on-grid, factorized correlations.
//! * `omp`: on-grid, materialized atoms.
//!
//! The off-grid variants score each node by the least-squares residual
//! over its `I = L+1` interpolation atoms and convert the refit
//! coefficients into continuous parameter estimates; the on-grid variants
//! are the same loop restricted to the value atom, with estimates pinned
//! to grid nodes. The factorized/dense pairs are numerically equivalent
//! and exist to compare cost, not output.

use std::time::Instant;

use num_complex::Complex64;

use crate::dictionary::{DenseDictionary, InterpolatedDictionary};
use crate::error::{invalid, Error, Result};
use crate::grid::SeparableGrid;
use crate::linalg::{self, LuFactors};
use crate::tensor::{CMatrix, ComplexTensor};

/// Ratio of `|β^{(1)}|` to `‖β‖` below which a component's offsets are
/// meaningless and correction degrades to the node itself.
const DEGENERATE_LEAD_RATIO: f64 = 1e-14;

/// The four decomposition variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Algorithm {
    Omp,
    Fomp,
    Comp,
    Fcomp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Omp,
        Algorithm::Fomp,
        Algorithm::Comp,
        Algorithm::Fcomp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Omp => "omp",
            Algorithm::Fomp => "fomp",
            Algorithm::Comp => "comp",
            Algorithm::Fcomp => "fcomp",
        }
    }

    /// Whether correlations use the factorized fast path (otherwise the
    /// algorithm needs a materialized [`DenseDictionary`]).
    pub fn is_factorized(&self) -> bool {
        matches!(self, Algorithm::Fomp | Algorithm::Fcomp)
    }

    /// Whether estimates leave the grid (interpolated selection plus
    /// parameter correction).
    pub fn is_continuous(&self) -> bool {
        matches!(self, Algorithm::Comp | Algorithm::Fcomp)
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "omp" => Ok(Algorithm::Omp),
            "fomp" => Ok(Algorithm::Fomp),
            "comp" => Ok(Algorithm::Comp),
            "fcomp" => Ok(Algorithm::Fcomp),
            other => invalid(format!(
                "unknown algorithm '{other}' (expected omp, fomp, comp or fcomp)"
            )),
        }
    }
}

/// Uniform view of a dictionary for the greedy core: either form answers
/// correlation and inner-product queries, differing only in cost.
pub trait AtomSource {
    fn grid(&self) -> &SeparableGrid;
    fn role_count(&self) -> usize;
    fn measurement_shape(&self) -> Vec<usize>;
    fn gram(&self, node: usize) -> &CMatrix;
    fn has_shared_gram(&self) -> bool;
    /// `out[n] = ⟨A^{(role)}[n], r⟩` over every grid node.
    fn correlations(&self, r: &ComplexTensor, role: usize) -> Result<ComplexTensor>;
    fn atom_inner(&self, role_a: usize, node_a: usize, role_b: usize, node_b: usize) -> Complex64;
    fn measurement_inner(&self, role: usize, node: usize, t: &ComplexTensor) -> Result<Complex64>;
    fn materialize_atom(&self, role: usize, node: usize) -> ComplexTensor;
}

impl AtomSource for InterpolatedDictionary {
    fn grid(&self) -> &SeparableGrid {
        InterpolatedDictionary::grid(self)
    }

    fn role_count(&self) -> usize {
        InterpolatedDictionary::role_count(self)
    }

    fn measurement_shape(&self) -> Vec<usize> {
        InterpolatedDictionary::measurement_shape(self)
    }

    fn gram(&self, node: usize) -> &CMatrix {
        InterpolatedDictionary::gram(self, node)
    }

    fn has_shared_gram(&self) -> bool {
        InterpolatedDictionary::has_shared_gram(self)
    }

    fn correlations(&self, r: &ComplexTensor, role: usize) -> Result<ComplexTensor> {
        factorized_correlations(r, self, role)
    }

    fn atom_inner(&self, role_a: usize, node_a: usize, role_b: usize, node_b: usize) -> Complex64 {
        InterpolatedDictionary::atom_inner(self, role_a, node_a, role_b, node_b)
    }

    fn measurement_inner(&self, role: usize, node: usize, t: &ComplexTensor) -> Result<Complex64> {
        InterpolatedDictionary::measurement_inner(self, role, node, t)
    }

    fn materialize_atom(&self, role: usize, node: usize) -> ComplexTensor {
        InterpolatedDictionary::materialize_atom(self, role, node)
    }
}

impl AtomSource for DenseDictionary {
    fn grid(&self) -> &SeparableGrid {
        DenseDictionary::grid(self)
    }

    fn role_count(&self) -> usize {
        DenseDictionary::role_count(self)
    }

    fn measurement_shape(&self) -> Vec<usize> {
        DenseDictionary::measurement_shape(self)
    }

    fn gram(&self, node: usize) -> &CMatrix {
        DenseDictionary::gram(self, node)
    }

    fn has_shared_gram(&self) -> bool {
        DenseDictionary::has_shared_gram(self)
    }

    /// One full-length dot product per node: the cost the factorized path
    /// avoids.
    fn correlations(&self, r: &ComplexTensor, role: usize) -> Result<ComplexTensor> {
        if r.shape() != self.measurement_shape().as_slice() {
            return invalid(format!(
                "measurement shape {:?} does not match dictionary {:?}",
                r.shape(),
                self.measurement_shape()
            ));
        }
        let grid = DenseDictionary::grid(self);
        let mut out = ComplexTensor::zeros(&grid.shape());
        for n in 0..grid.node_count() {
            let col = self.atom_column(role, n);
            let acc: Complex64 = col
                .iter()
                .zip(r.as_slice())
                .map(|(a, y)| a.conj() * y)
                .sum();
            out.as_mut_slice()[n] = acc;
        }
        Ok(out)
    }

    fn atom_inner(&self, role_a: usize, node_a: usize, role_b: usize, node_b: usize) -> Complex64 {
        DenseDictionary::atom_inner(self, role_a, node_a, role_b, node_b)
    }

    fn measurement_inner(&self, role: usize, node: usize, t: &ComplexTensor) -> Result<Complex64> {
        if t.shape() != self.measurement_shape().as_slice() {
            return invalid("measurement shape does not match dictionary");
        }
        Ok(DenseDictionary::measurement_inner(self, role, node, t))
    }

    fn materialize_atom(&self, role: usize, node: usize) -> ComplexTensor {
        DenseDictionary::materialize_atom(self, role, node)
    }
}

/// `⟨A^{(role)}[n], r⟩` for every node at once, chaining one per-axis
/// contraction per mode; no atom is ever materialized. Cost is
/// `O(N_1…N_L · Σ_ℓ M_ℓ)`-ish instead of the dense
/// `O(N_1…N_L · Π_ℓ M_ℓ)`.
pub fn factorized_correlations(
    r: &ComplexTensor,
    dict: &InterpolatedDictionary,
    role: usize,
) -> Result<ComplexTensor> {
    if role >= dict.role_count() {
        return invalid(format!(
            "role {} out of range ({} roles)",
            role,
            dict.role_count()
        ));
    }
    if r.shape() != dict.measurement_shape().as_slice() {
        return invalid(format!(
            "measurement shape {:?} does not match dictionary {:?}",
            r.shape(),
            dict.measurement_shape()
        ));
    }
    let mut acc = r.clone();
    for axis in 0..dict.grid().axis_count() {
        acc = acc.mode_inner_products(dict.table(role, axis), axis)?;
    }
    Ok(acc)
}

/// Per-node selection objective: `scores[n]` is the squared Frobenius
/// residual after least-squares fitting the node's interpolation atoms to
/// the current residual. Smaller is better; zero means the residual lies
/// in the node's span.
#[derive(Debug, Clone)]
pub struct SelectionScoreField {
    shape: Vec<usize>,
    scores: Vec<f64>,
}

impl SelectionScoreField {
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.scores
    }

    pub fn get(&self, flat: usize) -> f64 {
        self.scores[flat]
    }
}

fn leading_submatrix(m: &CMatrix, dim: usize) -> CMatrix {
    let mut out = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out.set(i, j, m.get(i, j));
        }
    }
    out
}

fn norm_sqr(t: &ComplexTensor) -> f64 {
    t.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

fn select_with_roles<D: AtomSource + ?Sized>(
    r: &ComplexTensor,
    dict: &D,
    masked: &[bool],
    roles: usize,
) -> Result<(usize, SelectionScoreField)> {
    let grid = dict.grid();
    let node_count = grid.node_count();
    if masked.len() != node_count {
        return invalid("mask length does not match grid");
    }
    if roles == 0 || roles > dict.role_count() {
        return invalid("invalid interpolation role count");
    }

    let fields: Vec<ComplexTensor> = (0..roles)
        .map(|i| dict.correlations(r, i))
        .collect::<Result<_>>()?;
    let residual_energy = norm_sqr(r);

    let shared_lu = if dict.has_shared_gram() {
        Some(LuFactors::factor(&leading_submatrix(dict.gram(0), roles))?)
    } else {
        None
    };

    let mut g = vec![Complex64::new(0.0, 0.0); roles];
    let mut scores = vec![0.0f64; node_count];
    let mut node_lu;
    for (n, score) in scores.iter_mut().enumerate() {
        let lu = match &shared_lu {
            Some(l) => l,
            None => {
                node_lu = LuFactors::factor(&leading_submatrix(dict.gram(n), roles))?;
                &node_lu
            }
        };
        for (i, field) in fields.iter().enumerate() {
            g[i] = field.as_slice()[n];
        }
        let z = lu.solve(&g)?;
        let explained: f64 = g.iter().zip(&z).map(|(gi, zi)| (gi.conj() * zi).re).sum();
        *score = (residual_energy - explained).max(0.0);
    }

    let mut best: Option<(usize, f64)> = None;
    for (n, &score) in scores.iter().enumerate() {
        if masked[n] {
            continue;
        }
        // Strict comparison keeps the smallest flat index on ties.
        if best.is_none_or(|(_, s)| score < s) {
            best = Some((n, score));
        }
    }
    let (node, _) = best.ok_or(Error::ExhaustedDictionary)?;
    Ok((
        node,
        SelectionScoreField {
            shape: grid.shape(),
            scores,
        },
    ))
}

/// Pick the unmasked node whose interpolation atoms explain the residual
/// best (all roles). Ties break toward the smallest flat index; an empty
/// candidate set is an exhausted-dictionary error.
pub fn select_atom<D: AtomSource + ?Sized>(
    r: &ComplexTensor,
    dict: &D,
    masked_nodes: &[usize],
) -> Result<(usize, SelectionScoreField)> {
    let mut mask = vec![false; dict.grid().node_count()];
    for &n in masked_nodes {
        if n >= mask.len() {
            return invalid(format!("masked node {n} out of range"));
        }
        mask[n] = true;
    }
    select_with_roles(r, dict, &mask, dict.role_count())
}

/// Joint least-squares coefficients over the selected nodes.
#[derive(Debug, Clone)]
pub struct RefitResult {
    /// One coefficient vector per selected node, in selection order.
    pub coefficients: Vec<Vec<Complex64>>,
    /// True when the normal matrix needed a diagonal shift to solve.
    pub regularized: bool,
}

fn joint_refit_with_roles<D: AtomSource + ?Sized>(
    y: &ComplexTensor,
    dict: &D,
    nodes: &[usize],
    roles: usize,
) -> Result<RefitResult> {
    if nodes.is_empty() {
        return Ok(RefitResult {
            coefficients: Vec::new(),
            regularized: false,
        });
    }
    if roles == 0 || roles > dict.role_count() {
        return invalid("invalid interpolation role count");
    }
    for (i, &n) in nodes.iter().enumerate() {
        if n >= dict.grid().node_count() {
            return invalid(format!("selected node {n} out of range"));
        }
        if nodes[..i].contains(&n) {
            return invalid(format!("node {n} selected twice"));
        }
    }

    let dim = nodes.len() * roles;
    let mut normal = CMatrix::zeros(dim, dim);
    let mut rhs = vec![Complex64::new(0.0, 0.0); dim];
    for (ka, &na) in nodes.iter().enumerate() {
        for i in 0..roles {
            let row = ka * roles + i;
            rhs[row] = dict.measurement_inner(i, na, y)?;
            for (kb, &nb) in nodes.iter().enumerate() {
                for j in 0..roles {
                    normal.set(row, kb * roles + j, dict.atom_inner(i, na, j, nb));
                }
            }
        }
    }

    let (beta, regularized) = linalg::solve(&normal, &rhs)?;
    let coefficients = beta.chunks(roles).map(|c| c.to_vec()).collect();
    Ok(RefitResult {
        coefficients,
        regularized,
    })
}

/// Solve `min_β ‖Σ_{k,i} β_k^{(i)} A^{(i)}[n_k] − Y‖_F` over all selected
/// nodes jointly. The normal matrix is assembled from factorized
/// cross-atom inner products; a near-singular system falls back to a
/// Tikhonov-shifted solve and reports it.
pub fn joint_refit<D: AtomSource + ?Sized>(
    y: &ComplexTensor,
    dict: &D,
    nodes: &[usize],
) -> Result<RefitResult> {
    joint_refit_with_roles(y, dict, nodes, dict.role_count())
}

/// `Y − Σ_{k,i} β_k^{(i)} A^{(i)}[n_k]`, computed in the tensor domain.
/// After a joint refit the result is orthogonal to every selected atom.
pub fn update_residual<D: AtomSource + ?Sized>(
    y: &ComplexTensor,
    dict: &D,
    nodes: &[usize],
    coefficients: &[Vec<Complex64>],
) -> Result<ComplexTensor> {
    if nodes.len() != coefficients.len() {
        return invalid("one coefficient vector per selected node required");
    }
    let mut r = y.clone();
    for (&n, beta) in nodes.iter().zip(coefficients) {
        for (role, &b) in beta.iter().enumerate() {
            if role >= dict.role_count() {
                return invalid("coefficient vector longer than role count");
            }
            r.add_scaled(-b, &dict.materialize_atom(role, n))?;
        }
    }
    Ok(r)
}

/// Continuous estimate extracted from one refit coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterCorrection {
    pub amplitude: Complex64,
    pub parameters: Vec<f64>,
    /// Leading coefficient too small to divide by; parameters pinned to
    /// the node.
    pub degenerate: bool,
}

/// Convert `β̂` at node `n̂` into `(α̂, p̂)`: `α̂ = β̂^{(1)}` and per axis
/// `p̂_ℓ = ω_{n̂_ℓ} + clamp(Re(β̂^{(ℓ+1)}/β̂^{(1)}), ±Δ_ℓ/2)`.
///
/// The offset is the real part of the coefficient ratio because the
/// imaginary part is pure modeling error under the first-order pattern,
/// and it is clamped to the node's cell, outside which the expansion has
/// no validity.
pub fn correct_parameters(
    beta: &[Complex64],
    node: usize,
    grid: &SeparableGrid,
) -> Result<ParameterCorrection> {
    if beta.len() != grid.axis_count() + 1 {
        return invalid(format!(
            "{} coefficients for a {}-axis grid (expected {})",
            beta.len(),
            grid.axis_count(),
            grid.axis_count() + 1
        ));
    }
    if node >= grid.node_count() {
        return invalid(format!("node {node} out of range"));
    }
    let amplitude = beta[0];
    let beta_norm = beta.iter().map(|b| b.norm_sqr()).sum::<f64>().sqrt();
    let mut parameters = grid.params_of(node);
    if amplitude.norm() < DEGENERATE_LEAD_RATIO * beta_norm {
        return Ok(ParameterCorrection {
            amplitude,
            parameters,
            degenerate: true,
        });
    }
    for (axis, p) in parameters.iter_mut().enumerate() {
        let half = grid.axis(axis).step() / 2.0;
        let offset = (beta[axis + 1] / amplitude).re.clamp(-half, half);
        *p += offset;
    }
    Ok(ParameterCorrection {
        amplitude,
        parameters,
        degenerate: false,
    })
}

/// One recovered component.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveComponent {
    pub amplitude: Complex64,
    /// Continuous parameter estimate (for on-grid variants, the node's
    /// coordinates).
    pub parameters: Vec<f64>,
    /// Selected grid node (flat index).
    pub node: usize,
    /// Raw refit coefficients from the final joint refit.
    pub coefficients: Vec<Complex64>,
    pub degenerate: bool,
}

/// Accumulated wall-clock per stage, in nanoseconds. The refit figure
/// includes the residual update that follows it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub select_ns: u64,
    pub refit_ns: u64,
    pub correct_ns: u64,
}

impl StageTimings {
    pub fn total_ns(&self) -> u64 {
        self.select_ns + self.refit_ns + self.correct_ns
    }
}

/// Result of one greedy decomposition.
#[derive(Debug, Clone)]
pub struct SparseSolution {
    pub components: Vec<SolveComponent>,
    /// `‖Y‖_F` followed by the residual norm after each iteration;
    /// non-increasing.
    pub residual_norms: Vec<f64>,
    pub timings: StageTimings,
    /// Dictionary ran out of unselected nodes before reaching `k`.
    pub truncated: bool,
    /// Some refit fell back to a regularized solve.
    pub regularized: bool,
}

impl SparseSolution {
    pub fn final_residual_norm(&self) -> f64 {
        *self.residual_norms.last().expect("always holds ‖Y‖")
    }
}

fn greedy_decompose<D: AtomSource + ?Sized>(
    y: &ComplexTensor,
    dict: &D,
    k: usize,
    roles: usize,
    correct: bool,
) -> Result<SparseSolution> {
    if k == 0 {
        return invalid("component count must be at least 1");
    }
    if y.shape() != dict.measurement_shape().as_slice() {
        return invalid(format!(
            "measurement shape {:?} does not match dictionary {:?}",
            y.shape(),
            dict.measurement_shape()
        ));
    }

    let mut timings = StageTimings::default();
    let mut mask = vec![false; dict.grid().node_count()];
    let mut nodes: Vec<usize> = Vec::with_capacity(k);
    let mut refit = RefitResult {
        coefficients: Vec::new(),
        regularized: false,
    };
    let mut regularized = false;
    let mut truncated = false;
    let mut residual = y.clone();
    let mut residual_norms = vec![residual.frobenius_norm()];

    for _ in 0..k {
        let t = Instant::now();
        let selected = select_with_roles(&residual, dict, &mask, roles);
        timings.select_ns += t.elapsed().as_nanos() as u64;
        let node = match selected {
            Ok((node, _)) => node,
            Err(Error::ExhaustedDictionary) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        };
        mask[node] = true;
        nodes.push(node);

        let t = Instant::now();
        refit = joint_refit_with_roles(y, dict, &nodes, roles)?;
        regularized |= refit.regularized;
        residual = update_residual(y, dict, &nodes, &refit.coefficients)?;
        timings.refit_ns += t.elapsed().as_nanos() as u64;
        residual_norms.push(residual.frobenius_norm());
    }

    let t = Instant::now();
    let mut components = Vec::with_capacity(nodes.len());
    for (&node, beta) in nodes.iter().zip(&refit.coefficients) {
        let component = if correct {
            let c = correct_parameters(beta, node, dict.grid())?;
            SolveComponent {
                amplitude: c.amplitude,
                parameters: c.parameters,
                node,
                coefficients: beta.clone(),
                degenerate: c.degenerate,
            }
        } else {
            SolveComponent {
                amplitude: beta[0],
                parameters: dict.grid().params_of(node),
                node,
                coefficients: beta.clone(),
                degenerate: false,
            }
        };
        components.push(component);
    }
    timings.correct_ns += t.elapsed().as_nanos() as u64;

    Ok(SparseSolution {
        components,
        residual_norms,
        timings,
        truncated,
        regularized,
    })
}

/// Off-grid decomposition with factorized correlations: `k` rounds of
/// interpolated selection and joint refit, then parameter correction.
pub fn fcomp(y: &ComplexTensor, dict: &InterpolatedDictionary, k: usize) -> Result<SparseSolution> {
    greedy_decompose(y, dict, k, dict.role_count(), true)
}

/// Same contract and output as [`fcomp`], but every correlation is a
/// full-length dot product against materialized atoms.
pub fn comp(y: &ComplexTensor, dict: &DenseDictionary, k: usize) -> Result<SparseSolution> {
    greedy_decompose(y, dict, k, dict.role_count(), true)
}

/// On-grid decomposition (value atoms only, no correction) with
/// factorized correlations.
pub fn fomp(y: &ComplexTensor, dict: &InterpolatedDictionary, k: usize) -> Result<SparseSolution> {
    greedy_decompose(y, dict, k, 1, false)
}

/// On-grid decomposition against materialized atoms.
pub fn omp(y: &ComplexTensor, dict: &DenseDictionary, k: usize) -> Result<SparseSolution> {
    greedy_decompose(y, dict, k, 1, false)
}
