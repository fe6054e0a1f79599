//! Named (state, observable) pairs with optional golden tables, and the
//! runner that computes every table and diffs it against the goldens.

use std::path::Path;

use serde::Deserialize;

use qcorr_core::{analyze, analyze_density, Analysis, CorrelationTable, ProbabilityTable, CONSTANCY_TOL};

use crate::config::{ObservableSpec, Real, ResolvedState, StateSpec};
use crate::error::{Error, Result};

/// Maximum absolute per-cell deviation from a golden table.
pub const GOLDEN_TOL: f64 = 1e-10;

/// Tolerance for `φ_t = φ_c · φ_q`.
pub const PRODUCT_RULE_TOL: f64 = 1e-9;

const BUILTIN_FILES: [&str; 9] = [
    include_str!("../scenarios/ghz_case1.json"),
    include_str!("../scenarios/ghz_case2.json"),
    include_str!("../scenarios/w_case1.json"),
    include_str!("../scenarios/w_case2.json"),
    include_str!("../scenarios/ghz_bipartite.json"),
    include_str!("../scenarios/reduced_ghz_comp.json"),
    include_str!("../scenarios/reduced_ghz_bell.json"),
    include_str!("../scenarios/w_bipartite.json"),
    include_str!("../scenarios/reduced_w_bell_mix.json"),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
    /// Where the golden values come from, when not obvious.
    #[serde(default)]
    pub note: Option<String>,
    pub state: StateSpec,
    pub observable: ObservableSpec,
    #[serde(default)]
    pub expected: Option<Expected>,
}

/// Golden tables in grid order. Values are exact rational strings; cells of
/// the correlation tables may be `"undef"`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub joint: Option<Vec<Real>>,
    pub marginals: Option<Vec<Vec<Real>>>,
    pub product: Option<Vec<Real>>,
    pub sum: Option<Vec<Real>>,
    pub phi_t: Option<Vec<Real>>,
    pub phi_c: Option<Vec<Real>>,
    pub phi_q: Option<Vec<Real>>,
    pub quantum_correlated: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableCheck {
    pub table: String,
    pub max_deviation: f64,
}

impl TableCheck {
    pub fn pass(&self) -> bool {
        self.max_deviation <= GOLDEN_TOL
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub name: String,
    pub description: String,
    pub analysis: Analysis,
    pub deviations: Vec<TableCheck>,
    /// `None` when the state carries no decomposition.
    pub product_rule: Option<bool>,
    pub quantum_correlated: Option<bool>,
    pub expected_quantum_correlated: Option<bool>,
    pub pass: bool,
}

impl RunReport {
    pub fn worst_deviation(&self) -> f64 {
        self.deviations
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Reads a scenario or ad-hoc config file; an unnamed one takes the file
    /// stem as its name.
    pub fn from_path(path: &Path) -> Result<Self> {
        let mut s = Self::from_json(&std::fs::read_to_string(path)?)?;
        if s.name.is_empty() {
            s.name = path
                .file_stem()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "config".into());
        }
        Ok(s)
    }
}

/// The nine reproductions shipped with the crate, in presentation order.
pub fn builtin_scenarios() -> Vec<Scenario> {
    BUILTIN_FILES
        .iter()
        .map(|text| Scenario::from_json(text).expect("builtin scenario files are valid"))
        .collect()
}

pub fn find_builtin(name: &str) -> Result<Scenario> {
    builtin_scenarios()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

/// Resolves the scenario, computes every applicable table and compares it
/// with the goldens.
pub fn run(s: &Scenario) -> Result<RunReport> {
    let state = s.state.resolve()?;
    let obs = s.observable.resolve(state.profile())?;
    let analysis = match &state {
        ResolvedState::Decomposed(d) => analyze(&obs, d)?,
        ResolvedState::Density(rho) => analyze_density(&obs, rho)?,
    };

    let mut deviations = Vec::new();
    let expected = s.expected.clone().unwrap_or_default();
    let missing = |table: &str| {
        Error::Spec(format!(
            "{}: expected `{table}` needs a state with a decomposition",
            s.name
        ))
    };
    if let Some(want) = &expected.joint {
        deviations.push(compare_probability("joint", &analysis.joint, want)?);
    }
    if let Some(want) = &expected.marginals {
        if want.len() != analysis.marginals.len() {
            return Err(Error::GoldenShape {
                table: "marginals".into(),
                got: want.len(),
                want: analysis.marginals.len(),
            });
        }
        for (k, (m, w)) in analysis.marginals.iter().zip(want).enumerate() {
            deviations.push(compare_probability(&format!("marginal{}", k + 1), m, w)?);
        }
    }
    if let Some(want) = &expected.product {
        deviations.push(compare_probability("product", &analysis.product, want)?);
    }
    if let Some(want) = &expected.sum {
        let sum = analysis.sum.as_ref().ok_or_else(|| missing("sum"))?;
        deviations.push(compare_probability("sum", sum, want)?);
    }
    if let Some(want) = &expected.phi_t {
        deviations.push(compare_correlation("phi_t", &analysis.total, want)?);
    }
    if let Some(want) = &expected.phi_c {
        let c = analysis.classical.as_ref().ok_or_else(|| missing("phi_c"))?;
        deviations.push(compare_correlation("phi_c", c, want)?);
    }
    if let Some(want) = &expected.phi_q {
        let q = analysis.quantum.as_ref().ok_or_else(|| missing("phi_q"))?;
        deviations.push(compare_correlation("phi_q", q, want)?);
    }

    let product_rule = analysis.product_rule_holds(PRODUCT_RULE_TOL);
    let quantum_correlated = analysis.quantum_correlated(CONSTANCY_TOL).transpose()?;
    if expected.quantum_correlated.is_some() && quantum_correlated.is_none() {
        return Err(missing("quantum_correlated"));
    }
    let pass = deviations.iter().all(TableCheck::pass)
        && product_rule != Some(false)
        && expected
            .quantum_correlated
            .is_none_or(|want| quantum_correlated == Some(want));

    Ok(RunReport {
        name: s.name.clone(),
        description: s.description.clone(),
        analysis,
        deviations,
        product_rule,
        quantum_correlated,
        expected_quantum_correlated: expected.quantum_correlated,
        pass,
    })
}

fn check_len(table: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::GoldenShape {
            table: table.into(),
            got,
            want,
        });
    }
    Ok(())
}

fn compare_probability(name: &str, t: &ProbabilityTable, want: &[Real]) -> Result<TableCheck> {
    check_len(name, want.len(), t.values().len())?;
    let mut worst: f64 = 0.0;
    for (got, w) in t.values().iter().zip(want) {
        worst = worst.max((got - w.value()?).abs());
    }
    Ok(TableCheck {
        table: name.into(),
        max_deviation: worst,
    })
}

fn golden_phi(r: &Real) -> Result<Option<f64>> {
    match r {
        Real::Text(s) if matches!(s.trim(), "undef" | "undefined") => Ok(None),
        other => other.value().map(Some),
    }
}

fn compare_correlation(name: &str, t: &CorrelationTable, want: &[Real]) -> Result<TableCheck> {
    check_len(name, want.len(), t.values().len())?;
    let mut worst: f64 = 0.0;
    for (got, w) in t.values().iter().zip(want) {
        let dev = match (got, golden_phi(w)?) {
            (Some(g), Some(w)) => (g - w).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        worst = worst.max(dev);
    }
    Ok(TableCheck {
        table: name.into(),
        max_deviation: worst,
    })
}
