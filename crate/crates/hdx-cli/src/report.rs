//! Deterministic machine-readable reports.
//!
//! Rationals are serialized as canonical `"p/q"` strings; re-running a
//! command with identical inputs and seed yields byte-identical output
//! (fixed field order, no timestamps, worker count excluded).

use serde::Serialize;

use hdx_core::expansion::ExpansionConstants;
use hdx_core::verifier::{CheckRecord, Relation, ScanSummary, Value, Verdict};

pub const REPORT_SCHEMA_VERSION: &str = "hdx.report.v1";

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
    pub schema: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "hdx",
            version: env!("CARGO_PKG_VERSION"),
            schema: REPORT_SCHEMA_VERSION,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputsInfo {
    pub complex_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    /// SHA-256 of the canonical complex JSON.
    pub complex_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cochain_digest: Option<String>,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct ParamsInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerance: f64,
    /// "uniform" or "per-link".
    pub beta_mode: String,
    pub clamp_beta: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_support: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_n: Option<u64>,
    pub budget: u128,
}

/// Serialized scalar: exact rational string or double.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueRepr {
    Exact(String),
    Approx(f64),
}

impl From<&Value> for ValueRepr {
    fn from(v: &Value) -> Self {
        match v {
            Value::Exact(r) => ValueRepr::Exact(r.to_string()),
            Value::Approx(x) => ValueRepr::Approx(*x),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub relation: &'static str,
    pub lhs: ValueRepr,
    pub rhs: ValueRepr,
    pub slack: ValueRepr,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gated_reason: Option<String>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subchecks: Vec<CheckReport>,
}

impl From<&CheckRecord> for CheckReport {
    fn from(rec: &CheckRecord) -> Self {
        let (verdict, gated_reason) = match &rec.verdict {
            Verdict::Pass => ("pass", None),
            Verdict::Fail => ("fail", None),
            Verdict::Gated(reason) => ("gated", Some(reason.clone())),
        };
        CheckReport {
            id: rec.id.clone(),
            relation: match rec.relation {
                Relation::Ge => ">=",
                Relation::Le => "<=",
                Relation::Eq => "==",
            },
            lhs: (&rec.lhs).into(),
            rhs: (&rec.rhs).into(),
            slack: (&rec.slack).into(),
            verdict,
            gated_reason,
            tolerance: rec.tolerance,
            beta: rec.beta_provenance.clone(),
            lambda: rec.lambda_provenance.clone(),
            subchecks: rec.subchecks.iter().map(CheckReport::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkBetaReport {
    pub sigma: Vec<u32>,
    pub cochain_dim: i32,
    pub beta: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkLambdaReport {
    pub sigma: Vec<u32>,
    pub lambda2: f64,
    pub connected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionReport {
    pub beta_raw: String,
    pub beta_clamped: String,
    pub beta_vacuous: bool,
    pub lambda_raw: f64,
    pub lambda: f64,
    /// The spectral maximum ranges over all links including the empty face.
    pub lambda_includes_empty_link: bool,
    pub per_link_beta: Vec<LinkBetaReport>,
    pub per_link_lambda: Vec<LinkLambdaReport>,
}

impl From<&ExpansionConstants> for ExpansionReport {
    fn from(c: &ExpansionConstants) -> Self {
        ExpansionReport {
            beta_raw: c.beta_raw.as_string(),
            beta_clamped: c.beta_clamped.to_string(),
            beta_vacuous: c.beta_vacuous,
            lambda_raw: c.lambda_raw,
            lambda: c.lambda,
            lambda_includes_empty_link: true,
            per_link_beta: c
                .per_link_beta
                .iter()
                .map(|r| LinkBetaReport {
                    sigma: r.sigma.vertices().to_vec(),
                    cochain_dim: r.cochain_dim,
                    beta: r.beta.as_string(),
                })
                .collect(),
            per_link_lambda: c
                .per_link_lambda
                .iter()
                .map(|r| LinkLambdaReport {
                    sigma: r.sigma.vertices().to_vec(),
                    lambda2: r.lambda2,
                    connected: r.connected,
                })
                .collect(),
        }
    }
}

/// Per-base-face localization data for a supplied cochain.
#[derive(Debug, Clone, Serialize)]
pub struct LocalizationRow {
    pub level: i32,
    pub sigma: Vec<u32>,
    /// `||f_sigma||` in the link.
    pub localized_weight: String,
    /// `||f^sigma||` over the outside pairs.
    pub outside_weight: String,
    pub minimal_in_link: bool,
    pub heavy: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HeavyReport {
    pub level: i32,
    pub beta_mode: String,
    pub faces: Vec<Vec<u32>>,
    pub weight: String,
    pub conditional_mean: String,
    pub mass: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub mode: String,
    pub candidates: u64,
    pub applicable: u64,
    pub applicable_nonzero: u64,
    pub passed: u64,
    pub failed: u64,
    pub gated: u64,
    pub max_support_clamped: bool,
}

impl ScanReport {
    pub fn new(mode: String, summary: &ScanSummary, clamped: bool) -> Self {
        ScanReport {
            mode,
            candidates: summary.candidates,
            applicable: summary.applicable,
            applicable_nonzero: summary.applicable_nonzero,
            passed: summary.passed,
            failed: summary.failed,
            gated: summary.gated,
            max_support_clamped: clamped,
        }
    }
}

/// The complete report for one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct ReportFile {
    pub tool: ToolInfo,
    pub command: String,
    pub inputs: InputsInfo,
    pub parameters: ParamsInfo,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expansion: Option<ExpansionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locally_minimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub localization: Option<Vec<LocalizationRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heavy: Option<Vec<HeavyReport>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanReport>,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}
