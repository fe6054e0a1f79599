//! Outcome probability functions and the two reference distributions the
//! correlation functions divide by.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::TOL;
use crate::observable::{marginal, DiscreteObservable, OutcomeGrid};
use crate::rational::Label;
use crate::state::{QuantumState, StateDecomposition};

/// Normalization tolerance for a whole table.
pub const SUM_TOL: f64 = 1e-10;

/// Imaginary part of `Tr(Eρ)` beyond which the inputs are rejected.
pub const IMAG_TOL: f64 = 1e-10;

/// Probability for every cell of an outcome grid, in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    grid: OutcomeGrid,
    values: Vec<f64>,
}

impl ProbabilityTable {
    /// Values within `TOL` of `[0, 1]` are clamped into it; the table must be
    /// normalized within [`SUM_TOL`].
    pub fn new(grid: OutcomeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidTable(format!(
                "{} values for a grid of {} cells",
                values.len(),
                grid.len()
            )));
        }
        let mut clamped = Vec::with_capacity(values.len());
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || !(-TOL..=1.0 + TOL).contains(&v) {
                return Err(Error::InvalidTable(format!(
                    "value {v} at {:?} is not a probability",
                    grid.labels(i)
                )));
            }
            clamped.push(v.clamp(0.0, 1.0));
        }
        let total: f64 = clamped.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidTable(format!("values sum to {total}")));
        }
        Ok(Self {
            grid,
            values: clamped,
        })
    }

    pub fn grid(&self) -> &OutcomeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, outcome: &[Label]) -> Option<f64> {
        self.grid.index_of(outcome).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<Label>, f64)> + '_ {
        self.grid.cells().zip(self.values.iter().copied())
    }

    /// Largest cell-wise difference, `None` when the grids differ.
    pub fn max_abs_diff(&self, other: &ProbabilityTable) -> Option<f64> {
        (self.grid == other.grid).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }
}

/// `P(ξ) = Tr(E(ξ) ρ)` for every cell of the observable's grid.
pub fn measure(obs: &DiscreteObservable, state: &impl QuantumState) -> Result<ProbabilityTable> {
    if obs.profile() != state.profile() {
        return Err(Error::Dimension(format!(
            "observable on {:?}, state on {:?}",
            obs.profile().factors(),
            state.profile().factors()
        )));
    }
    let mut values = Vec::with_capacity(obs.effects().len());
    for e in obs.effects() {
        let p = state.expectation(e)?;
        if p.im.abs() > IMAG_TOL {
            return Err(Error::ImaginaryResidue(p.im));
        }
        values.push(p.re);
    }
    ProbabilityTable::new(obs.grid().clone(), values)
}

/// Single-axis table for the 1-based `axis`, summing over all other axes.
pub fn marginal_table(t: &ProbabilityTable, axis: usize) -> Result<ProbabilityTable> {
    let kept = t.grid.zero_based(&[axis])?;
    let (grid, map) = t.grid.project(&kept);
    let mut values = vec![0.0; grid.len()];
    for (cell, &v) in t.values.iter().enumerate() {
        values[map[cell]] += v;
    }
    ProbabilityTable::new(grid, values)
}

/// Single-axis marginals for every axis, in axis order.
pub fn marginal_tables(t: &ProbabilityTable) -> Vec<ProbabilityTable> {
    (1..=t.grid.n_axes())
        .map(|k| marginal_table(t, k).expect("axis in range"))
        .collect()
}

/// Product distribution `Π_k P_k(ξ_k)` of single-axis tables.
pub fn product_table(marginals: &[ProbabilityTable]) -> Result<ProbabilityTable> {
    if marginals.is_empty() {
        return Err(Error::InvalidTable("no marginals".into()));
    }
    if let Some(m) = marginals.iter().find(|m| m.grid.n_axes() != 1) {
        return Err(Error::InvalidTable(format!(
            "marginal has {} axes, expected 1",
            m.grid.n_axes()
        )));
    }
    let grid = OutcomeGrid::new(
        marginals
            .iter()
            .map(|m| m.grid.axes()[0].clone())
            .collect(),
    )?;
    let values = (0..grid.len())
        .map(|cell| {
            grid.positions(cell)
                .iter()
                .zip(marginals)
                .map(|(&p, m)| m.values[p])
                .product()
        })
        .collect();
    ProbabilityTable::new(grid, values)
}

/// Classical-only reference `Σ_m λ_m Π_k P_{k,ψ_m}(ξ_k)`: the decomposition
/// weighted average of each pure state's product of single-axis marginals.
pub fn sum_table(obs: &DiscreteObservable, d: &StateDecomposition) -> Result<ProbabilityTable> {
    if obs.profile() != d.profile() {
        return Err(Error::Dimension(format!(
            "observable on {:?}, decomposition on {:?}",
            obs.profile().factors(),
            d.profile().factors()
        )));
    }
    let axis_obs = (1..=obs.grid().n_axes())
        .map(|k| marginal(obs, &[k]))
        .collect::<Result<Vec<_>>>()?;
    let mut values = vec![0.0; obs.grid().len()];
    for (weight, psi) in d.terms() {
        let per_axis = axis_obs
            .iter()
            .map(|o| measure(o, psi))
            .collect::<Result<Vec<_>>>()?;
        let prod = product_table(&per_axis)?;
        for (acc, p) in values.iter_mut().zip(prod.values()) {
            *acc += weight * p;
        }
    }
    ProbabilityTable::new(obs.grid().clone(), values)
}
