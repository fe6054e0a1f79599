//! Discrete observables as POV functions: every cell of an outcome grid is
//! mapped to a positive operator, and the operators sum to the identity.
//!
//! Builders only produce joint observables as products of pairwise commuting
//! effects. Local spin projectors on distinct tensor factors always commute,
//! so [`local_joint`] never fails on that account; [`joint_of`] refuses
//! observables that do not commute.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{c, kron, ComplexMatrix, DimensionProfile, PROBE_TOL, TOL};
use crate::rational::Label;

/// Product set of outcome labels, one ordered axis per component observable.
/// Cells are enumerated row-major: the last axis varies fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeGrid {
    axes: Vec<Vec<Label>>,
}

impl OutcomeGrid {
    pub fn new(axes: Vec<Vec<Label>>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidObservable("outcome grid has no axes".into()));
        }
        for (k, axis) in axes.iter().enumerate() {
            if axis.is_empty() {
                return Err(Error::InvalidObservable(format!("axis {} is empty", k + 1)));
            }
            for (i, l) in axis.iter().enumerate() {
                if axis[..i].contains(l) {
                    return Err(Error::InvalidObservable(format!(
                        "label {l} repeated on axis {}",
                        k + 1
                    )));
                }
            }
        }
        Ok(Self { axes })
    }

    /// `n` axes of `(+1/2, -1/2)`.
    pub fn spin_half(n: usize) -> Self {
        Self {
            axes: vec![vec![Label::HALF, Label::MINUS_HALF]; n],
        }
    }

    pub fn axes(&self) -> &[Vec<Label>] {
        &self.axes
    }

    pub fn n_axes(&self) -> usize {
        self.axes.len()
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-axis label positions of cell `flat`.
    pub fn positions(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.axes.len()];
        for (k, axis) in self.axes.iter().enumerate().rev() {
            out[k] = flat % axis.len();
            flat /= axis.len();
        }
        out
    }

    pub fn flat_index(&self, positions: &[usize]) -> usize {
        positions
            .iter()
            .zip(&self.axes)
            .fold(0, |acc, (&p, axis)| acc * axis.len() + p)
    }

    pub fn labels(&self, flat: usize) -> Vec<Label> {
        self.positions(flat)
            .into_iter()
            .zip(&self.axes)
            .map(|(p, axis)| axis[p])
            .collect()
    }

    /// Cell index of an outcome tuple.
    pub fn index_of(&self, outcome: &[Label]) -> Option<usize> {
        if outcome.len() != self.axes.len() {
            return None;
        }
        let mut pos = Vec::with_capacity(outcome.len());
        for (l, axis) in outcome.iter().zip(&self.axes) {
            pos.push(axis.iter().position(|a| a == l)?);
        }
        Some(self.flat_index(&pos))
    }

    /// All outcome tuples in grid order.
    pub fn cells(&self) -> impl Iterator<Item = Vec<Label>> + '_ {
        (0..self.len()).map(|i| self.labels(i))
    }

    /// Validates 1-based axis numbers, returning them 0-based and sorted.
    pub(crate) fn zero_based(&self, axes: &[usize]) -> Result<Vec<usize>> {
        if axes.is_empty() {
            return Err(Error::InvalidSelection("no axes selected".into()));
        }
        let mut out = Vec::with_capacity(axes.len());
        for &a in axes {
            if a == 0 || a > self.axes.len() {
                return Err(Error::IndexOutOfRange {
                    index: a,
                    len: self.axes.len(),
                });
            }
            out.push(a - 1);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Grid restricted to the given 0-based axes, plus the map from each full
    /// cell to its cell in the restricted grid.
    pub(crate) fn project(&self, kept: &[usize]) -> (OutcomeGrid, Vec<usize>) {
        let sub = OutcomeGrid {
            axes: kept.iter().map(|&k| self.axes[k].clone()).collect(),
        };
        let map = (0..self.len())
            .map(|i| {
                let pos = self.positions(i);
                let kept_pos: Vec<usize> = kept.iter().map(|&k| pos[k]).collect();
                sub.flat_index(&kept_pos)
            })
            .collect();
        (sub, map)
    }
}

/// POV function on an [`OutcomeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteObservable {
    grid: OutcomeGrid,
    effects: Vec<ComplexMatrix>,
    profile: DimensionProfile,
}

impl DiscreteObservable {
    /// `effects` are listed in grid order. Each must be Hermitian with
    /// `0 ≤ ⟨ψ|E|ψ⟩ ≤ 1` on the probe set, and together they must sum to
    /// the identity.
    pub fn new(
        grid: OutcomeGrid,
        effects: Vec<ComplexMatrix>,
        profile: DimensionProfile,
    ) -> Result<Self> {
        if effects.len() != grid.len() {
            return Err(Error::InvalidObservable(format!(
                "{} effects for a grid of {} cells",
                effects.len(),
                grid.len()
            )));
        }
        let n = profile.total();
        let mut sum = ComplexMatrix::zeros(n, n);
        for (i, e) in effects.iter().enumerate() {
            let at = || format!("{:?}", grid.labels(i));
            if !e.is_square() || e.rows() != n {
                return Err(Error::Dimension(format!(
                    "effect at {} is {}x{}, expected {n}x{n}",
                    at(),
                    e.rows(),
                    e.cols()
                )));
            }
            if !e.is_hermitian(TOL) {
                return Err(Error::InvalidObservable(format!(
                    "effect at {} is not Hermitian",
                    at()
                )));
            }
            let diag_ok = (0..n).all(|k| {
                let d = e.get(k, k).re;
                (-TOL..=1.0 + TOL).contains(&d)
            });
            if !diag_ok || e.max_abs() > 1.0 + TOL {
                return Err(Error::InvalidObservable(format!(
                    "effect at {} exceeds the unit bound",
                    at()
                )));
            }
            if e.min_probe_expectation() < -PROBE_TOL {
                return Err(Error::InvalidObservable(format!(
                    "effect at {} is not positive",
                    at()
                )));
            }
            sum = &sum + e;
        }
        let defect = sum.max_abs_diff(&ComplexMatrix::identity(n));
        if defect > TOL {
            return Err(Error::InvalidObservable(format!(
                "effects sum to identity only within {defect:e}"
            )));
        }
        Ok(Self {
            grid,
            effects,
            profile,
        })
    }

    pub fn grid(&self) -> &OutcomeGrid {
        &self.grid
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    pub fn effect(&self, outcome: &[Label]) -> Option<&ComplexMatrix> {
        self.grid.index_of(outcome).map(|i| &self.effects[i])
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    /// True when every effect is a projection.
    pub fn is_pv(&self, tol: f64) -> bool {
        self.effects.iter().all(|e| e.is_projection(tol))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

impl FromStr for SpinAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "x" | "X" => Ok(SpinAxis::X),
            "y" | "Y" => Ok(SpinAxis::Y),
            "z" | "Z" => Ok(SpinAxis::Z),
            other => Err(Error::InvalidObservable(format!("unknown spin axis {other:?}"))),
        }
    }
}

impl fmt::Display for SpinAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinAxis::X => "x",
            SpinAxis::Y => "y",
            SpinAxis::Z => "z",
        })
    }
}

/// Spectral projectors of a spin-½ component for the eigenvalues `+½` and
/// `−½`, in that order.
pub fn spin_half(axis: SpinAxis) -> (ComplexMatrix, ComplexMatrix) {
    let o = c(0.0, 0.0);
    let h = c(0.5, 0.0);
    let plus = match axis {
        SpinAxis::Z => ComplexMatrix::from_rows([[c(1.0, 0.0), o], [o, o]]),
        // P_x|0⟩ = P_x|1⟩ = (|0⟩ + |1⟩)/2
        SpinAxis::X => ComplexMatrix::from_rows([[h, h], [h, h]]),
        // P_y|0⟩ = (|0⟩ + i|1⟩)/2,  P_y|1⟩ = (−i|0⟩ + |1⟩)/2
        SpinAxis::Y => ComplexMatrix::from_rows([[h, c(0.0, -0.5)], [c(0.0, 0.5), h]]),
    };
    let minus = &ComplexMatrix::identity(2) - &plus;
    (plus, minus)
}

/// Single-qubit spin observable with outcomes `(+1/2, -1/2)`.
pub fn spin_observable(axis: SpinAxis) -> DiscreteObservable {
    let (plus, minus) = spin_half(axis);
    DiscreteObservable::new(
        OutcomeGrid::spin_half(1),
        vec![plus, minus],
        DimensionProfile::qubits(1),
    )
    .expect("spin projectors form a PV function")
}

/// Joint observable of local qubit observables, one per tensor factor. The
/// effect at `(ε₁,…,εₙ)` is the Kronecker product of the chosen local
/// projectors; each factor is a `(plus, minus)` pair labelled `±1/2`.
pub fn local_joint(factors: &[(ComplexMatrix, ComplexMatrix)]) -> Result<DiscreteObservable> {
    if factors.is_empty() {
        return Err(Error::InvalidObservable("no local factors".into()));
    }
    for (k, (p, m)) in factors.iter().enumerate() {
        if [p, m].iter().any(|e| e.rows() != 2 || e.cols() != 2) {
            return Err(Error::Dimension(format!(
                "factor {} is not a pair of 2x2 operators",
                k + 1
            )));
        }
    }
    let grid = OutcomeGrid::spin_half(factors.len());
    let effects = (0..grid.len())
        .map(|cell| {
            grid.positions(cell)
                .into_iter()
                .zip(factors)
                .map(|(pos, (p, m))| if pos == 0 { p } else { m })
                .fold(ComplexMatrix::identity(1), |acc, e| kron(&acc, e))
        })
        .collect();
    DiscreteObservable::new(grid, effects, DimensionProfile::qubits(factors.len()))
}

/// [`local_joint`] of the spin components along `axes`.
pub fn local_spin_joint(axes: &[SpinAxis]) -> Result<DiscreteObservable> {
    let factors: Vec<_> = axes.iter().map(|&a| spin_half(a)).collect();
    local_joint(&factors)
}

/// Places `obs` on the 1-based `slots` of a larger space, tensoring every
/// effect with the identity on the remaining factors.
pub fn embed(
    obs: &DiscreteObservable,
    target: &DimensionProfile,
    slots: &[usize],
) -> Result<DiscreteObservable> {
    if slots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSelection(format!(
            "slots {slots:?} are not strictly increasing"
        )));
    }
    let slots0 = target.zero_based(slots)?;
    let slot_dims: Vec<usize> = slots0.iter().map(|&s| target.factors()[s]).collect();
    if slot_dims != obs.profile.factors() {
        return Err(Error::Dimension(format!(
            "observable acts on {:?}, slots {slots:?} of {:?} have dims {slot_dims:?}",
            obs.profile.factors(),
            target.factors()
        )));
    }
    let split = target.split_indices(&slots0);
    let n = target.total();
    let effects = obs
        .effects
        .iter()
        .map(|e| {
            ComplexMatrix::from_fn(n, n, |i, j| {
                let ((si, ri), (sj, rj)) = (split[i], split[j]);
                if ri == rj {
                    e.get(si, sj)
                } else {
                    c(0.0, 0.0)
                }
            })
        })
        .collect();
    DiscreteObservable::new(obs.grid.clone(), effects, target.clone())
}

/// Marginal observable on the 1-based `kept_axes`: effects summed over every
/// dropped axis.
pub fn marginal(obs: &DiscreteObservable, kept_axes: &[usize]) -> Result<DiscreteObservable> {
    let kept = obs.grid.zero_based(kept_axes)?;
    let (grid, map) = obs.grid.project(&kept);
    let n = obs.profile.total();
    let mut effects = vec![ComplexMatrix::zeros(n, n); grid.len()];
    for (cell, e) in obs.effects.iter().enumerate() {
        effects[map[cell]] = &effects[map[cell]] + e;
    }
    DiscreteObservable::new(grid, effects, obs.profile.clone())
}

/// Every effect of `a` commutes with every effect of `b` within `tol`.
pub fn comeasurable(a: &DiscreteObservable, b: &DiscreteObservable, tol: f64) -> Result<bool> {
    if a.profile != b.profile {
        return Err(Error::Dimension(format!(
            "profiles {:?} and {:?} differ",
            a.profile.factors(),
            b.profile.factors()
        )));
    }
    Ok(a
        .effects
        .iter()
        .all(|ea| b.effects.iter().all(|eb| ea.commutes_with(eb, tol))))
}

/// Joint observable of pairwise comeasurable observables on one space: the
/// grid concatenates their axes and each effect is the product of the
/// component effects.
pub fn joint_of(observables: &[DiscreteObservable]) -> Result<DiscreteObservable> {
    let Some(first) = observables.first() else {
        return Err(Error::InvalidObservable("no observables to join".into()));
    };
    for (i, a) in observables.iter().enumerate() {
        for b in &observables[i + 1..] {
            if !comeasurable(a, b, TOL)? {
                return Err(Error::NotComeasurable);
            }
        }
    }
    let axes = observables
        .iter()
        .flat_map(|o| o.grid.axes.iter().cloned())
        .collect();
    let grid = OutcomeGrid::new(axes)?;
    let mut effects = Vec::with_capacity(grid.len());
    for cell in 0..grid.len() {
        let pos = grid.positions(cell);
        let mut offset = 0;
        let mut e = ComplexMatrix::identity(first.profile.total());
        for o in observables {
            let k = o.grid.n_axes();
            let sub = o.grid.flat_index(&pos[offset..offset + k]);
            e = &e * &o.effects[sub];
            offset += k;
        }
        effects.push(e);
    }
    DiscreteObservable::new(grid, effects, first.profile.clone())
}
