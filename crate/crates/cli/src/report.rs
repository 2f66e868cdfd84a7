//! Report types and their text rendering. Text is produced only from the
//! serializable report, so it is a function of the JSON output.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use lca_entropy::bridge::{BridgeReport, ClosedForm, InstanceDescriptor};
use lca_entropy::entropyseq::{EntropyEstimate, EstimateStatus};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Entropy(EntropyReport),
    BridgeCheck(BridgeReport),
    DualitySelftest(BridgeReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Entropy(_) => true,
            Report::BridgeCheck(r) | Report::DualitySelftest(r) => r.passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyValue {
    /// `"log 2"`, `"0"`, `"<= log(12)/3"`, or a decimal for ℝⁿ.
    pub exact: String,
    pub decimal: f64,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub instance: InstanceDescriptor,
    /// `[U : C_n]` for `n = 1..=depth`, as decimal strings.
    pub indices: Vec<String>,
    pub estimate: Option<EntropyEstimate>,
    pub closed_forms: Vec<ClosedForm>,
    pub entropy: EntropyValue,
}

fn describe(instance: &InstanceDescriptor) -> String {
    match instance {
        InstanceDescriptor::Finite { instance, depth } => format!(
            "finite group with moduli [{}], endomorphism {:?}, U generated by {:?}, depth {depth}",
            instance.moduli.join(", "),
            instance.endomorphism,
            instance.subgroup
        ),
        InstanceDescriptor::Tower {
            level_moduli,
            lag,
            base_level,
            depth,
        } => format!(
            "tower with {} levels (top moduli [{}]), lag {lag}, base level {base_level}, depth {depth}",
            level_moduli.len(),
            level_moduli.last().map(|m| m.join(", ")).unwrap_or_default()
        ),
        InstanceDescriptor::Padic { p, matrix, depth } => {
            format!("Q_{p}^{} with matrix {matrix:?}, depth {depth}", matrix.len())
        }
        InstanceDescriptor::Real { matrix, tolerance } => {
            format!("R^{} with matrix {matrix:?}, tolerance {tolerance:e}", matrix.len())
        }
        InstanceDescriptor::LawSuite {
            seed,
            trials,
            max_order,
        } => format!("duality law suite, seed {seed}, {trials} trials, |G| <= {max_order}"),
    }
}

fn status_word(e: &EntropyEstimate) -> &'static str {
    match e.status {
        EstimateStatus::Stabilized => "stabilized",
        EstimateStatus::BoundedOnly => "bounded only",
    }
}

/// `"log 2 (stabilized, window 3)"` or `"<= log(12)/3 (bounded only, window 3)"`.
pub fn estimate_phrase(e: &EntropyEstimate) -> String {
    format!(
        "{} ({}, window {})",
        e.exact_string(),
        status_word(e),
        e.window
    )
}

fn render_entropy(r: &EntropyReport, out: &mut String) {
    let _ = writeln!(out, "instance: {}", describe(&r.instance));
    if !r.indices.is_empty() {
        let _ = writeln!(out, "indices: {}", r.indices.join(", "));
    }
    let e = &r.entropy;
    let sep = if e.exact.starts_with("<=") {
        " "
    } else {
        " = "
    };
    let detail = match (&r.estimate, r.closed_forms.first()) {
        (Some(est), Some(cf)) => format!(
            "{}: {}, lattice: {} {}",
            cf.name,
            cf.exact
                .clone()
                .unwrap_or_else(|| format!("{:.6}", cf.value)),
            status_word(est),
            est.exact_string()
        ),
        (Some(est), None) => format!("{}, window {}", status_word(est), est.window),
        (None, Some(cf)) if cf.boundary => format!("{}, eigenvalue modulus near 1", cf.name),
        (None, Some(cf)) => cf.name.clone(),
        (None, None) => e.source.clone(),
    };
    let _ = writeln!(out, "entropy{sep}{} ({detail})", e.exact);
    let _ = writeln!(out, "decimal: {:.6}", e.decimal);
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn render_bridge(r: &BridgeReport, out: &mut String) {
    let _ = writeln!(out, "instance: {}", describe(&r.instance));
    if !r.rows.is_empty() {
        let w = r
            .rows
            .iter()
            .map(|row| {
                row.topological
                    .to_string()
                    .len()
                    .max(row.algebraic.to_string().len())
            })
            .max()
            .unwrap_or(1)
            .max(11);
        let _ = writeln!(
            out,
            "{:>3}  {:>w$}  {:>w$}  equal",
            "n", "topological", "algebraic"
        );
        for row in &r.rows {
            let _ = writeln!(
                out,
                "{:>3}  {:>w$}  {:>w$}  {}",
                row.n,
                row.topological.to_string(),
                row.algebraic.to_string(),
                yes_no(row.equal)
            );
        }
    }
    if let Some(e) = &r.entropy {
        let _ = writeln!(
            out,
            "topological entropy: {}",
            estimate_phrase(&e.topological)
        );
        let _ = writeln!(
            out,
            "algebraic entropy:   {}",
            estimate_phrase(&e.algebraic)
        );
        let _ = writeln!(
            out,
            "decimal: {:.6} / {:.6}",
            e.topological.float_value, e.algebraic.float_value
        );
        let _ = writeln!(out, "verdict: {}", e.verdict);
    }
    for cf in &r.closed_forms {
        let exact = cf
            .exact
            .clone()
            .map(|x| format!("{x} = "))
            .unwrap_or_default();
        let flag = if cf.boundary {
            " (eigenvalue modulus near 1)"
        } else {
            ""
        };
        let _ = writeln!(out, "{}: {exact}{:.6}{flag}", cf.name, cf.value);
    }
    for law in &r.laws {
        let status = if law.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "law {}: {status} ({}/{} passed)",
            law.law,
            law.checked - law.failed,
            law.checked
        );
        for cx in &law.counterexamples {
            let _ = writeln!(out, "  counterexample: {cx}");
        }
    }
    let _ = writeln!(out, "result: {}", if r.passed { "PASS" } else { "FAIL" });
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Entropy(r) => render_entropy(r, &mut out),
        Report::BridgeCheck(r) | Report::DualitySelftest(r) => render_bridge(r, &mut out),
    }
    out
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
