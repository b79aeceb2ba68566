//! Separable parameter domains and uniform sampling grids.

use crate::error::{invalid, Result};
use crate::tensor::ComplexTensor;

/// A closed real interval, one per parameter axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return invalid(format!("interval [{lo}, {hi}] is empty or reversed"));
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, p: f64) -> bool {
        p >= self.lo && p <= self.hi
    }
}

/// Cartesian product of per-axis intervals: the continuous set the
/// parameters live in.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterDomain {
    axes: Vec<Interval>,
}

impl ParameterDomain {
    pub fn new(axes: Vec<Interval>) -> Result<Self> {
        if axes.is_empty() {
            return invalid("parameter domain needs at least one axis");
        }
        Ok(Self { axes })
    }

    pub fn axis_count(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, axis: usize) -> Interval {
        self.axes[axis]
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.axes.len() && self.axes.iter().zip(p).all(|(a, &x)| a.contains(x))
    }
}

/// One uniformly sampled grid axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    nodes: Vec<f64>,
    step: f64,
}

impl GridAxis {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Separable sampling grid `Ω = Ω_1 × … × Ω_L`, uniform per axis.
///
/// Nodes sit at cell centers, `ω_{ℓ,n} = lo_ℓ + (n − 1/2)·Δ_ℓ` with
/// `Δ_ℓ = (hi_ℓ − lo_ℓ)/N_ℓ`, so every point of the domain lies within a
/// half step of some node.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableGrid {
    axes: Vec<GridAxis>,
}

impl SeparableGrid {
    /// Cell-centered uniform grid with `counts[ℓ]` nodes on axis `ℓ`.
    pub fn cell_centered(domain: &ParameterDomain, counts: &[usize]) -> Result<Self> {
        if counts.len() != domain.axis_count() {
            return invalid(format!(
                "{} node counts for a {}-axis domain",
                counts.len(),
                domain.axis_count()
            ));
        }
        let mut axes = Vec::with_capacity(counts.len());
        for (axis, &n) in counts.iter().enumerate() {
            if n < 2 {
                return invalid("each grid axis needs at least 2 nodes");
            }
            let iv = domain.axis(axis);
            let step = iv.width() / n as f64;
            let nodes = (0..n).map(|k| iv.lo + (k as f64 + 0.5) * step).collect();
            axes.push(GridAxis { nodes, step });
        }
        Ok(Self { axes })
    }

    /// Build from explicit nodes; each axis must be strictly increasing and
    /// uniform within 1e-12 relative.
    pub fn from_nodes(node_lists: Vec<Vec<f64>>) -> Result<Self> {
        if node_lists.is_empty() {
            return invalid("grid needs at least one axis");
        }
        let mut axes = Vec::with_capacity(node_lists.len());
        for nodes in node_lists {
            if nodes.len() < 2 {
                return invalid("each grid axis needs at least 2 nodes");
            }
            let n = nodes.len();
            let step = (nodes[n - 1] - nodes[0]) / (n - 1) as f64;
            if step <= 0.0 {
                return invalid("grid nodes must be strictly increasing");
            }
            let span = (nodes[n - 1] - nodes[0]).abs();
            for w in nodes.windows(2) {
                let gap = w[1] - w[0];
                if gap <= 0.0 {
                    return invalid("grid nodes must be strictly increasing");
                }
                if (gap - step).abs() > 1e-12 * step.abs().max(span) {
                    return invalid("grid spacing is not uniform");
                }
            }
            axes.push(GridAxis { nodes, step });
        }
        Ok(Self { axes })
    }

    pub fn axis_count(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, axis: usize) -> &GridAxis {
        &self.axes[axis]
    }

    /// Node counts per axis, `(N_1, …, N_L)`.
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    /// Total number of grid nodes.
    pub fn node_count(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }

    /// Flat (row-major) node id of a 0-based per-axis index.
    pub fn flat_of(&self, multi: &[usize]) -> usize {
        ComplexTensor::flat_index(&self.shape(), multi)
    }

    /// 0-based per-axis index of a flat node id.
    pub fn multi_of(&self, flat: usize) -> Vec<usize> {
        ComplexTensor::multi_index(&self.shape(), flat)
    }

    /// Parameter coordinates of a node.
    pub fn params_of(&self, flat: usize) -> Vec<f64> {
        self.multi_of(flat)
            .iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.nodes[i])
            .collect()
    }

    /// Flat id of the node whose cell contains `p` (nearest node per axis).
    pub fn nearest_node(&self, p: &[f64]) -> Result<usize> {
        if p.len() != self.axes.len() {
            return invalid("point dimension does not match grid");
        }
        let mut multi = Vec::with_capacity(p.len());
        for (axis, &x) in self.axes.iter().zip(p) {
            let best = axis
                .nodes
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (x - **a).abs().partial_cmp(&(x - **b).abs()).unwrap())
                .map(|(i, _)| i)
                .unwrap();
            multi.push(best);
        }
        Ok(self.flat_of(&multi))
    }
}
