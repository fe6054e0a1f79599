//! Rendering of run reports as aligned text, CSV or JSON.

use std::fmt::Write as _;

use serde_json::{json, Value};

use qcorr_core::{snap_rational, Analysis, CorrelationTable, Label, ProbabilityTable};

use crate::scenario::RunReport;

/// Largest denominator tried when printing an exact-looking value.
const MAX_DENOMINATOR: u64 = 64;
const SNAP_TOL: f64 = 1e-9;
const ZERO_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// A table of a report, borrowed under its display name.
#[derive(Debug, Clone, Copy)]
pub enum NamedTable<'a> {
    Probability(&'a str, &'a ProbabilityTable),
    Correlation(&'a str, &'a CorrelationTable),
}

impl NamedTable<'_> {
    pub fn name(&self) -> &str {
        match self {
            NamedTable::Probability(n, _) | NamedTable::Correlation(n, _) => n,
        }
    }
}

const MARGINAL_NAMES: [&str; 8] = [
    "marginal1",
    "marginal2",
    "marginal3",
    "marginal4",
    "marginal5",
    "marginal6",
    "marginal7",
    "marginal8",
];

/// Every table present in `a`, in pipeline order. Marginals past the eighth
/// are named `marginal`.
pub fn tables(a: &Analysis) -> Vec<NamedTable<'_>> {
    let mut out = vec![NamedTable::Probability("joint", &a.joint)];
    for (k, m) in a.marginals.iter().enumerate() {
        out.push(NamedTable::Probability(
            MARGINAL_NAMES.get(k).copied().unwrap_or("marginal"),
            m,
        ));
    }
    out.push(NamedTable::Probability("product", &a.product));
    if let Some(s) = &a.sum {
        out.push(NamedTable::Probability("sum", s));
    }
    out.push(NamedTable::Correlation("phi_t", &a.total));
    if let Some(c) = &a.classical {
        out.push(NamedTable::Correlation("phi_c", c));
    }
    if let Some(q) = &a.quantum {
        out.push(NamedTable::Correlation("phi_q", q));
    }
    out
}

pub fn render(reports: &[RunReport], format: Format) -> String {
    match format {
        Format::Table => render_text(reports),
        Format::Csv => render_csv(reports),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&render_json(reports))
                .expect("serde_json::Value always serializes");
            s.push('\n');
            s
        }
    }
}

/// Six significant digits, with values below `1e-12` in magnitude shown as 0.
pub fn format_number(x: f64) -> String {
    if x.abs() < ZERO_CUTOFF {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = 5 - magnitude;
    if !(0..=15).contains(&decimals) {
        return format!("{x:.5e}");
    }
    let s = format!("{x:.prec$}", prec = decimals as usize);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `p/q` with `q ≤ 64` when `x` is that close to one, else `None`.
pub fn rational_guess(x: f64) -> Option<String> {
    if x.abs() < ZERO_CUTOFF {
        return Some("0".into());
    }
    let (n, d) = snap_rational(x, MAX_DENOMINATOR, SNAP_TOL)?;
    Some(if d == 1 { n.to_string() } else { format!("{n}/{d}") })
}

fn outcome_text(labels: &[Label]) -> String {
    let parts: Vec<String> = labels.iter().map(|l| format!("{:>4}", l.to_string())).collect();
    format!("({})", parts.join(", "))
}

fn value_cell(v: Option<f64>) -> (String, String) {
    match v {
        Some(x) => (format_number(x), rational_guess(x).unwrap_or_default()),
        None => ("undef".into(), String::new()),
    }
}

fn write_table_text(out: &mut String, t: NamedTable<'_>) {
    let rows: Vec<(String, Option<f64>)> = match t {
        NamedTable::Probability(_, p) => p
            .iter()
            .map(|(o, v)| (outcome_text(&o), Some(v)))
            .collect(),
        NamedTable::Correlation(_, c) => c.iter().map(|(o, v)| (outcome_text(&o), v)).collect(),
    };
    let width = rows.iter().map(|(o, _)| o.len()).max().unwrap_or(0);
    let _ = writeln!(out, "  {}", t.name());
    for (outcome, v) in rows {
        let (num, exact) = value_cell(v);
        let _ = writeln!(out, "    {outcome:<width$}  {num:>10}  {exact}");
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_text(reports: &[RunReport]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{}: {}", r.name, r.description);
        for t in tables(&r.analysis) {
            write_table_text(&mut out, t);
        }
        match r.product_rule {
            Some(ok) => {
                let verdict = if ok { "holds" } else { "VIOLATED" };
                let _ = writeln!(out, "  product rule phi_t = phi_c * phi_q: {verdict}");
            }
            None => out.push_str("  no decomposition: phi_c and phi_q not available\n"),
        }
        if let Some(q) = r.quantum_correlated {
            let _ = write!(out, "  quantum correlated: {}", yes_no(q));
            if let Some(want) = r.expected_quantum_correlated {
                let _ = write!(out, " (expected {})", yes_no(want));
            }
            out.push('\n');
        }
        if r.deviations.is_empty() {
            out.push_str("  no golden tables\n");
        } else {
            let _ = writeln!(
                out,
                "  golden tables: {} checked, max deviation {:.1e}",
                r.deviations.len(),
                r.worst_deviation()
            );
        }
        let _ = writeln!(out, "  result: {}", if r.pass { "PASS" } else { "FAIL" });
    }
    out
}

fn write_table_csv(out: &mut String, t: NamedTable<'_>) {
    let n_axes = match t {
        NamedTable::Probability(_, p) => p.grid().n_axes(),
        NamedTable::Correlation(_, c) => c.grid().n_axes(),
    };
    let header: Vec<String> = (1..=n_axes).map(|k| format!("axis{k}")).collect();
    let header = header.join(",");
    let cells = |labels: &[Label]| {
        labels
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    match t {
        NamedTable::Probability(_, p) => {
            let _ = writeln!(out, "{header},p");
            for (o, v) in p.iter() {
                let _ = writeln!(out, "{},{v}", cells(&o));
            }
        }
        NamedTable::Correlation(_, c) => {
            let _ = writeln!(out, "{header},phi,undefined");
            for (o, v) in c.iter() {
                match v {
                    Some(x) => {
                        let _ = writeln!(out, "{},{x},false", cells(&o));
                    }
                    None => {
                        let _ = writeln!(out, "{},,true", cells(&o));
                    }
                }
            }
        }
    }
}

/// One block per table, each headed by a `# scenario/table` comment line and
/// separated from the next by a blank line.
pub fn render_csv(reports: &[RunReport]) -> String {
    let mut out = String::new();
    for r in reports {
        for t in tables(&r.analysis) {
            if !out.is_empty() {
                out.push('\n');
            }
            let _ = writeln!(out, "# {}/{}", r.name, t.name());
            write_table_csv(&mut out, t);
        }
    }
    out
}

fn outcome_json(labels: &[Label]) -> Value {
    Value::Array(labels.iter().map(|l| Value::String(l.to_string())).collect())
}

pub fn probability_json(t: &ProbabilityTable) -> Value {
    Value::Array(
        t.iter()
            .map(|(o, p)| json!({"outcome": outcome_json(&o), "p": p}))
            .collect(),
    )
}

pub fn correlation_json(t: &CorrelationTable) -> Value {
    Value::Array(
        t.iter()
            .map(|(o, v)| json!({"outcome": outcome_json(&o), "phi": v, "undefined": v.is_none()}))
            .collect(),
    )
}

pub fn report_json(r: &RunReport) -> Value {
    let a = &r.analysis;
    let deviations: serde_json::Map<String, Value> = r
        .deviations
        .iter()
        .map(|c| (c.table.clone(), json!(c.max_deviation)))
        .collect();
    json!({
        "name": r.name,
        "description": r.description,
        "pass": r.pass,
        "tables": {
            "joint": probability_json(&a.joint),
            "marginals": a.marginals.iter().map(probability_json).collect::<Vec<_>>(),
            "product": probability_json(&a.product),
            "sum": a.sum.as_ref().map(probability_json),
            "phi_t": correlation_json(&a.total),
            "phi_c": a.classical.as_ref().map(correlation_json),
            "phi_q": a.quantum.as_ref().map(correlation_json),
        },
        "deviations": deviations,
        "checks": {
            "product_rule": r.product_rule,
            "quantum_correlated": r.quantum_correlated,
            "expected_quantum_correlated": r.expected_quantum_correlated,
        },
    })
}

pub fn render_json(reports: &[RunReport]) -> Value {
    Value::Array(reports.iter().map(report_json).collect())
}
