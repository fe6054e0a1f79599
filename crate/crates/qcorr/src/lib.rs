//! Scenario files, report formats and the `qcorr` command line on top of
//! [`qcorr_core`].
//!
//! A scenario is a JSON document naming a state, a joint observable and,
//! optionally, golden tables to compare against. [`scenario::run`] computes
//! the joint, marginal, product and sum probability tables and the total,
//! classical and quantum correlation functions; [`format`] renders the result.
//!
//! ```
//! use qcorr::scenario::{find_builtin, run};
//!
//! let report = run(&find_builtin("w_case1").unwrap()).unwrap();
//! assert!(report.pass);
//! assert_eq!(report.quantum_correlated, Some(true));
//! ```

pub mod config;
mod error;
pub mod format;
pub mod scenario;

pub use error::{Error, Result};
pub use format::Format;
pub use scenario::{builtin_scenarios, find_builtin, run, RunReport, Scenario};

pub use qcorr_core;
