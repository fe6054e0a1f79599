//! Discrete quantum joint observables and the separation of their total
//! correlation into a classical and a quantum part.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational: every
//! value is immutable once built and every operation is a pure function.
//!
//! The pipeline for one (observable, state) pair is
//!
//! ```text
//! joint      P(ξ₁,…,ξₙ)      = Tr(E(ξ₁,…,ξₙ) ρ)
//! product    Π P_k(ξ_k)                              (marginals of the joint)
//! sum        Σ_m λ_m Π P_{k,m}(ξ_k)                  (per pure state of a decomposition)
//! φ_t = joint / product,  φ_c = sum / product,  φ_q = joint / sum
//! ```
//!
//! and [`analysis::analyze`] runs all of it at once.
//!
//! Conventions used throughout:
//!
//! * Tensor factors, observable slots and outcome axes are numbered from 1,
//!   so `partial_trace(.., &[3])` is Tr₃ and `marginal(.., &[1])` keeps the
//!   first axis.
//! * Computational basis indices are big-endian: factor 1 is the most
//!   significant digit, `|011⟩` is index 3.
//! * Outcome grids enumerate lexicographically in the order each axis lists
//!   its labels; spin-½ axes list `+1/2` before `-1/2`.
//! * Correlation values are nonnegative reals. They are ratios of
//!   probabilities and routinely exceed 1 (a GHZ state gives 4).
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod correlation;
mod error;
pub mod matrix;
pub mod observable;
pub mod probability;
pub mod rational;
pub mod state;

pub use analysis::{analyze, analyze_density, Analysis};
pub use correlation::{
    classical_correlation, is_quantum_correlated, product_rule_check, quantum_correlation,
    total_correlation, CorrelationTable, CONSTANCY_TOL,
};
pub use error::{Error, Result};
pub use matrix::{kron, ComplexMatrix, DimensionProfile, C64, TOL};
pub use observable::{
    comeasurable, embed, joint_of, local_joint, local_spin_joint, marginal, spin_half,
    spin_observable, DiscreteObservable, OutcomeGrid, SpinAxis,
};
pub use probability::{
    marginal_table, marginal_tables, measure, product_table, sum_table, ProbabilityTable,
};
pub use rational::{snap_rational, Label};
pub use state::{
    basis_state, make_bell, make_ghz, make_w, reduce, DensityOperator, PureState, QuantumState,
    StateDecomposition,
};
