//! Full correlation analysis of one (observable, state) pair.

use alloc::vec::Vec;

use crate::correlation::{
    classical_correlation, is_quantum_correlated, product_rule_check, quantum_correlation,
    total_correlation, CorrelationTable,
};
use crate::error::Result;
use crate::observable::DiscreteObservable;
use crate::probability::{marginal_tables, measure, product_table, sum_table, ProbabilityTable};
use crate::state::{DensityOperator, StateDecomposition};

/// Every table of the pipeline. The decomposition-dependent ones (`sum`,
/// `classical`, `quantum`) are absent when only a density operator was given.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub joint: ProbabilityTable,
    pub marginals: Vec<ProbabilityTable>,
    pub product: ProbabilityTable,
    pub sum: Option<ProbabilityTable>,
    pub total: CorrelationTable,
    pub classical: Option<CorrelationTable>,
    pub quantum: Option<CorrelationTable>,
}

impl Analysis {
    /// `None` without a decomposition.
    pub fn product_rule_holds(&self, tol: f64) -> Option<bool> {
        let (c, q) = (self.classical.as_ref()?, self.quantum.as_ref()?);
        Some(product_rule_check(&self.total, c, q, tol))
    }

    /// `None` without a decomposition.
    pub fn quantum_correlated(&self, tol: f64) -> Option<Result<bool>> {
        self.quantum.as_ref().map(|q| is_quantum_correlated(q, tol))
    }
}

/// Runs the pipeline for a state with fixed statistical content. Pass
/// [`StateDecomposition::pure`] for a pure state.
pub fn analyze(obs: &DiscreteObservable, d: &StateDecomposition) -> Result<Analysis> {
    let joint = measure(obs, d)?;
    let marginals = marginal_tables(&joint);
    let product = product_table(&marginals)?;
    let sum = sum_table(obs, d)?;
    let total = total_correlation(&joint, &product)?;
    let classical = classical_correlation(&sum, &product)?;
    let quantum = quantum_correlation(&joint, &sum)?;
    Ok(Analysis {
        joint,
        marginals,
        product,
        sum: Some(sum),
        total,
        classical: Some(classical),
        quantum: Some(quantum),
    })
}

/// Joint, marginal, product and total-correlation tables only.
pub fn analyze_density(obs: &DiscreteObservable, rho: &DensityOperator) -> Result<Analysis> {
    let joint = measure(obs, rho)?;
    let marginals = marginal_tables(&joint);
    let product = product_table(&marginals)?;
    let total = total_correlation(&joint, &product)?;
    Ok(Analysis {
        joint,
        marginals,
        product,
        sum: None,
        total,
        classical: None,
        quantum: None,
    })
}
