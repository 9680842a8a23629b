//! Structured pass/fail reports for identity checks.

use super::IdentityCase;
use crate::exact::format_rat;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

/// Residuals are reported as decimal strings; exact zero prints as "0".
pub fn format_residual(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:e}")
    }
}

/// Result of one mode (exact or numeric) of one case.
#[derive(Debug, Clone, Serialize)]
pub struct ModeResult {
    pub mode: String,
    /// Exact mode: series coefficients as "p/q" strings or a single
    /// rational; numeric mode: a float. Omitted for bivariate checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    pub passed: bool,
}

/// Aggregated report for one identity case.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    /// Rational parameters in canonical "p/q" form, integers bare.
    pub params: BTreeMap<String, String>,
    pub mode: String,
    pub passed: bool,
    /// Largest residual across the executed modes.
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub notes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub results: Vec<ModeResult>,
}

pub(super) fn params_of(case: &IdentityCase) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("lambda".to_string(), format_rat(&case.lambda));
    m.insert("y".to_string(), format_rat(&case.y));
    if let Some(x) = &case.x {
        m.insert("x".to_string(), format_rat(x));
    }
    if let Some(p) = case.p {
        m.insert("p".to_string(), p.to_string());
    }
    if let Some(k) = case.k {
        m.insert("k".to_string(), k.to_string());
    }
    m
}

impl IdentityReport {
    pub(super) fn assemble(
        case: &IdentityCase,
        results: Vec<ModeResult>,
        notes: Vec<String>,
    ) -> Self {
        let passed = !results.is_empty() && results.iter().all(|r| r.passed);
        let residual = results
            .iter()
            .map(|r| r.residual.parse::<f64>().unwrap_or(f64::INFINITY))
            .fold(0.0f64, f64::max);
        let terms_used = results.iter().find_map(|r| r.terms_used);
        let order = results.iter().find_map(|r| r.order);
        IdentityReport {
            identity_id: case.id.as_str().to_string(),
            params: params_of(case),
            mode: case.mode.as_str().to_string(),
            passed,
            residual: format_residual(residual),
            terms_used,
            order,
            notes: notes.join("; "),
            error: None,
            results,
        }
    }

    /// Report for a case whose evaluation errored (guard rejection,
    /// domain error, budget): carries the message, never a value.
    pub(super) fn from_error(case: &IdentityCase, message: &str) -> Self {
        IdentityReport {
            identity_id: case.id.as_str().to_string(),
            params: params_of(case),
            mode: case.mode.as_str().to_string(),
            passed: false,
            residual: "NaN".to_string(),
            terms_used: None,
            order: None,
            notes: String::new(),
            error: Some(message.to_string()),
            results: Vec::new(),
        }
    }
}
