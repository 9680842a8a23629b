//! Batch runner: the default verification grid, the JSON case-config
//! schema, and report aggregation.

use super::{verify, IdentityCase, IdentityId, IdentityReport, Mode};
use crate::exact::{lambda_samples, parse_rat, rat, rat_to_f64, Rat};
use crate::numeric::GUARD_DELTA;
use num::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One case as it appears in a suite config file: flat keys mirroring the
/// `verify` flags, rationals as "p/q" strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub identity: String,
    pub lambda: String,
    #[serde(default)]
    pub y: Option<String>,
    #[serde(default)]
    pub x: Option<String>,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub order_x: Option<usize>,
    #[serde(default)]
    pub order_y: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub max_terms: Option<usize>,
    /// Optional pinned expected value ("p/q"): the case additionally
    /// fails if either side misses it.
    #[serde(default)]
    pub expect: Option<String>,
}

impl CaseConfig {
    pub fn into_case(self) -> Result<IdentityCase, String> {
        let id: IdentityId = self.identity.parse()?;
        let lambda = parse_rat(&self.lambda).map_err(|e| e.to_string())?;
        let mut case = IdentityCase::new(id, lambda);
        if let Some(y) = self.y {
            case = case.y(parse_rat(&y).map_err(|e| e.to_string())?);
        }
        if let Some(x) = self.x {
            case = case.x(parse_rat(&x).map_err(|e| e.to_string())?);
        }
        if let Some(p) = self.p {
            case = case.p(p);
        }
        if let Some(k) = self.k {
            case = case.k(k);
        }
        if let Some(mode) = self.mode {
            case = case.mode(mode.parse()?);
        }
        if let Some(order) = self.order {
            case = case.order(order);
        }
        if self.order_x.is_some() || self.order_y.is_some() {
            let ox = self.order_x.unwrap_or(case.order_x);
            let oy = self.order_y.unwrap_or(case.order_y);
            case = case.orders_xy(ox, oy);
        }
        if let Some(tol) = self.tol {
            case = case.tol(tol);
        }
        if let Some(max_terms) = self.max_terms {
            case = case.max_terms(max_terms);
        }
        if let Some(expect) = self.expect {
            case = case.expect(parse_rat(&expect).map_err(|e| e.to_string())?);
        }
        Ok(case)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteConfig {
    cases: Vec<CaseConfig>,
}

/// Parse a suite config document. Every case must parse before anything
/// runs; the first bad entry fails the whole config.
pub fn parse_suite_config(text: &str) -> Result<Vec<IdentityCase>, String> {
    let config: SuiteConfig =
        serde_json::from_str(text).map_err(|e| format!("config parse error: {e}"))?;
    config
        .cases
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.into_case().map_err(|e| format!("case {i}: {e}")))
        .collect()
}

/// Run every case, never aborting on a single failure: evaluation errors
/// (guard rejections, domain errors, exhausted budgets) become failed
/// reports carrying the error message. Reports come back in input order.
pub fn run_suite(cases: &[IdentityCase]) -> Vec<IdentityReport> {
    cases
        .iter()
        .map(|case| match verify(case) {
            Ok(report) => report,
            Err(err) => IdentityReport::from_error(case, &err.to_string()),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCount {
    pub passed: usize,
    pub failed: usize,
}

/// Aggregated suite outcome; serializes to the CLI's JSON payload.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
    pub identity_counts: BTreeMap<String, IdentityCount>,
    pub reports: Vec<IdentityReport>,
}

impl SuiteSummary {
    pub fn from_reports(reports: Vec<IdentityReport>) -> Self {
        let total = reports.len();
        let passed = reports.iter().filter(|r| r.passed).count();
        let mut identity_counts: BTreeMap<String, IdentityCount> = BTreeMap::new();
        for r in &reports {
            let entry = identity_counts
                .entry(r.identity_id.clone())
                .or_insert(IdentityCount {
                    passed: 0,
                    failed: 0,
                });
            if r.passed {
                entry.passed += 1;
            } else {
                entry.failed += 1;
            }
        }
        SuiteSummary {
            total,
            passed,
            failed: total - passed,
            all_passed: passed == total,
            identity_counts,
            reports,
        }
    }
}

fn is_terminating(lambda: &Rat) -> bool {
    use num::Signed;
    lambda.numer().is_one() && lambda.is_positive()
}

/// Whether a numeric weighted sum with the given weight growth factor
/// converges for (λ, y): terminating λ always does, otherwise the
/// asymptotic term ratio must clear the guard.
fn numeric_ok(lambda: &Rat, y: &Rat, growth: f64) -> bool {
    is_terminating(lambda)
        || (rat_to_f64(lambda) * rat_to_f64(y)).abs() * growth <= 1.0 - GUARD_DELTA
}

/// The default verification grid: every identity crossed with the λ
/// sample set, exact checks at order 32 (16×16 for the bivariate one)
/// and numeric checks over y ∈ {1/4, 1/2, 1} wherever the convergence
/// guard admits them.
pub fn default_grid() -> Vec<IdentityCase> {
    let mut cases = Vec::new();
    let ys = [rat(1, 4), rat(1, 2), rat(1, 1)];
    let ps_exact = 0..=8usize;
    let ps_numeric = 0..=3usize;

    for lambda in lambda_samples() {
        // Exact checks hold for every λ.
        cases.push(IdentityCase::new(IdentityId::Thm21A, lambda.clone()).mode(Mode::Exact));
        cases.push(IdentityCase::new(IdentityId::Thm21B, lambda.clone()).mode(Mode::Exact));
        for p in ps_exact.clone() {
            cases.push(
                IdentityCase::new(IdentityId::Thm23, lambda.clone())
                    .p(p)
                    .mode(Mode::Exact),
            );
            cases.push(
                IdentityCase::new(IdentityId::Eq11, lambda.clone())
                    .p(p)
                    .mode(Mode::Exact),
            );
            cases.push(
                IdentityCase::new(IdentityId::Thm24, lambda.clone())
                    .p(p)
                    .mode(Mode::Exact),
            );
        }
        for k in 0..=8usize {
            cases.push(
                IdentityCase::new(IdentityId::Thm25, lambda.clone())
                    .k(k)
                    .mode(Mode::Exact),
            );
        }
        if is_terminating(&lambda) {
            cases.push(
                IdentityCase::new(IdentityId::Cor22A, lambda.clone())
                    .x(rat(1, 3))
                    .mode(Mode::Exact),
            );
            cases.push(IdentityCase::new(IdentityId::Cor22B, lambda.clone()).mode(Mode::Exact));
            cases.push(IdentityCase::new(IdentityId::Cor22C, lambda.clone()).mode(Mode::Exact));
        }

        // Numeric checks within the convergence guard.
        for y in &ys {
            if numeric_ok(&lambda, y, 1.0) {
                cases.push(
                    IdentityCase::new(IdentityId::Thm21B, lambda.clone())
                        .y(y.clone())
                        .mode(Mode::Numeric),
                );
                for p in ps_numeric.clone() {
                    for id in [IdentityId::Thm23, IdentityId::Eq11, IdentityId::Thm24] {
                        cases.push(
                            IdentityCase::new(id, lambda.clone())
                                .y(y.clone())
                                .p(p)
                                .mode(Mode::Numeric),
                        );
                    }
                }
                for k in 0..=3usize {
                    if numeric_ok(&lambda, y, k.max(1) as f64) {
                        cases.push(
                            IdentityCase::new(IdentityId::Thm25, lambda.clone())
                                .y(y.clone())
                                .k(k)
                                .mode(Mode::Numeric),
                        );
                    }
                }
            }
        }
        // cor2.2 is pinned to y = 1.
        if numeric_ok(&lambda, &Rat::one(), 1.0) {
            cases.push(
                IdentityCase::new(IdentityId::Cor22A, lambda.clone())
                    .x(rat(1, 3))
                    .mode(Mode::Numeric),
            );
            cases.push(IdentityCase::new(IdentityId::Cor22B, lambda.clone()).mode(Mode::Numeric));
            cases.push(IdentityCase::new(IdentityId::Cor22C, lambda.clone()).mode(Mode::Numeric));
        }
        // remark2.6 exploration: degenerate Stirling weights converge for
        // terminating or zero λ at any k, and for k = 0 generally.
        let y26 = rat(1, 2);
        for k in 0..=2usize {
            let admissible = if is_terminating(&lambda) || lambda == rat(0, 1) {
                numeric_ok(&lambda, &y26, 1.0)
            } else {
                k == 0 && numeric_ok(&lambda, &y26, 1.0)
            };
            if admissible {
                cases.push(
                    IdentityCase::new(IdentityId::Remark26, lambda.clone())
                        .y(y26.clone())
                        .k(k)
                        .mode(Mode::Numeric),
                );
            }
        }
        if lambda == rat(2, 1) {
            // |2·(1/2)| = 1 fails the guard at y = 1/2; y = 1/4 is in range.
            cases.push(
                IdentityCase::new(IdentityId::Remark26, lambda.clone())
                    .y(rat(1, 4))
                    .k(0)
                    .mode(Mode::Numeric),
            );
        }
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_is_empty() {
        assert!(run_suite(&[]).is_empty());
    }

    #[test]
    fn default_grid_is_deterministic_and_nonempty() {
        let a = default_grid();
        let b = default_grid();
        assert!(a.len() > 100);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.lambda, y.lambda);
        }
    }

    #[test]
    fn config_round_trip() {
        let text = r#"{"cases":[
            {"identity":"thm2.1b","lambda":"1/2","y":"1","mode":"numeric","expect":"3/2"},
            {"identity":"thm2.3","lambda":"-2/3","p":2,"order":24,"tol":1e-9}
        ]}"#;
        let cases = parse_suite_config(text).unwrap();
        assert_eq!(cases.len(), 2);
        assert_eq!(cases[0].id, IdentityId::Thm21B);
        assert_eq!(cases[0].expect, Some(rat(3, 2)));
        assert_eq!(cases[1].p, Some(2));
        assert_eq!(cases[1].order, 24);
    }

    #[test]
    fn config_rejects_bad_entries_before_running() {
        assert!(parse_suite_config("{").is_err());
        assert!(parse_suite_config(r#"{"cases":[{"identity":"nope","lambda":"1/2"}]}"#).is_err());
        let bad_rat = parse_suite_config(r#"{"cases":[{"identity":"thm2.1b","lambda":"x/y"}]}"#);
        assert!(bad_rat.unwrap_err().contains("case 0"));
        assert!(
            parse_suite_config(r#"{"cases":[{"identity":"thm2.1b","lambda":"1/2","zz":1}]}"#)
                .is_err()
        );
    }

    #[test]
    fn suite_captures_errors_without_aborting() {
        // λ = 2, y = 1 fails the numeric guard; the suite still completes.
        let cases = vec![
            IdentityCase::new(IdentityId::Thm21B, rat(2, 1)).mode(Mode::Numeric),
            IdentityCase::new(IdentityId::Thm21B, rat(1, 2)).mode(Mode::Numeric),
        ];
        let reports = run_suite(&cases);
        assert_eq!(reports.len(), 2);
        assert!(!reports[0].passed);
        assert!(reports[0]
            .error
            .as_deref()
            .unwrap()
            .contains("non-convergence"));
        assert!(reports[1].passed);
    }
}
