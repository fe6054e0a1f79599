//! Total, classical and quantum correlation functions.
//!
//! Each is a cell-wise ratio of two distributions on the same grid:
//!
//! | function | numerator | denominator |
//! |----------|-----------|-------------|
//! | φ_t      | joint     | product     |
//! | φ_c      | sum       | product     |
//! | φ_q      | joint     | sum         |
//!
//! so `φ_t = φ_c · φ_q` wherever all three are defined. A cell whose
//! denominator vanishes together with its numerator is left undefined; the
//! constancy and product-rule tests skip such cells instead of guessing a
//! value for `0/0`.
//!
//! The values are nonnegative reals and are not bounded by 1.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::TOL;
use crate::observable::OutcomeGrid;
use crate::probability::ProbabilityTable;
use crate::rational::Label;

/// Default tolerance for [`is_quantum_correlated`]. Looser than the
/// arithmetic tolerance because division amplifies rounding.
pub const CONSTANCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTable {
    grid: OutcomeGrid,
    values: Vec<Option<f64>>,
}

impl CorrelationTable {
    pub fn new(grid: OutcomeGrid, values: Vec<Option<f64>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidTable(alloc::format!(
                "{} values for a grid of {} cells",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().flatten().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidTable(
                "correlation values must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &OutcomeGrid {
        &self.grid
    }

    /// `None` marks an undefined (`0/0`) cell.
    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn get(&self, outcome: &[Label]) -> Option<Option<f64>> {
        self.grid.index_of(outcome).map(|i| self.values[i])
    }

    pub fn defined(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().flatten().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<Label>, Option<f64>)> + '_ {
        self.grid.cells().zip(self.values.iter().copied())
    }
}

fn ratio(numerator: &ProbabilityTable, reference: &ProbabilityTable) -> Result<CorrelationTable> {
    if numerator.grid() != reference.grid() {
        return Err(Error::GridMismatch);
    }
    let mut values = Vec::with_capacity(numerator.values().len());
    for (cell, (&n, &d)) in numerator.values().iter().zip(reference.values()).enumerate() {
        if d < TOL {
            if n < TOL {
                values.push(None);
            } else {
                return Err(Error::SupportViolation { cell, numerator: n });
            }
        } else {
            values.push(Some(n / d));
        }
    }
    CorrelationTable::new(numerator.grid().clone(), values)
}

/// `φ_t = joint / product`.
pub fn total_correlation(
    joint: &ProbabilityTable,
    product: &ProbabilityTable,
) -> Result<CorrelationTable> {
    ratio(joint, product)
}

/// `φ_c = sum / product`.
pub fn classical_correlation(
    sum: &ProbabilityTable,
    product: &ProbabilityTable,
) -> Result<CorrelationTable> {
    ratio(sum, product)
}

/// `φ_q = joint / sum`.
pub fn quantum_correlation(
    joint: &ProbabilityTable,
    sum: &ProbabilityTable,
) -> Result<CorrelationTable> {
    ratio(joint, sum)
}

/// `|φ_t − φ_c·φ_q| ≤ tol` on every cell where all three are defined.
/// Tables on different grids never satisfy the rule.
pub fn product_rule_check(
    total: &CorrelationTable,
    classical: &CorrelationTable,
    quantum: &CorrelationTable,
    tol: f64,
) -> bool {
    if total.grid != classical.grid || total.grid != quantum.grid {
        return false;
    }
    total
        .values
        .iter()
        .zip(&classical.values)
        .zip(&quantum.values)
        .all(|((t, c), q)| match (t, c, q) {
            (Some(t), Some(c), Some(q)) => (t - c * q).abs() <= tol,
            _ => true,
        })
}

/// The quantum correlation function is not constant: its spread over the
/// defined cells exceeds `tol`.
pub fn is_quantum_correlated(quantum: &CorrelationTable, tol: f64) -> Result<bool> {
    let mut defined = quantum.defined().peekable();
    if defined.peek().is_none() {
        return Err(Error::AllUndefined);
    }
    let (lo, hi) = defined.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    Ok(hi - lo > tol)
}
