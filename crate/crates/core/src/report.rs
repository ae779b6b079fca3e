//! Verification reports: one record per check, serialised to a stable JSON
//! schema.

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: &str = "modcheck-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Mandatory,
    Informational,
}

/// A single check. `passed` holds exactly when `max_residual` is present and
/// does not exceed `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub severity: Severity,
    pub passed: bool,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    /// Result from a residual. A NaN residual is recorded as absent.
    pub fn from_residual(
        name: impl Into<String>,
        severity: Severity,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let max_residual = if residual.is_finite() {
            Some(residual)
        } else {
            None
        };
        let passed = max_residual.is_some_and(|r| r <= tolerance);
        Self {
            name: name.into(),
            severity,
            passed,
            max_residual,
            tolerance,
            witness: None,
            count: None,
            detail: None,
        }
    }

    /// A check that could not be evaluated (an error upstream).
    pub fn failed(
        name: impl Into<String>,
        severity: Severity,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            severity,
            passed: false,
            max_residual: None,
            tolerance,
            witness: None,
            count: None,
            detail: Some(detail.into()),
        }
    }

    /// Attaches a witness, kept only when the check failed.
    pub fn with_witness(mut self, witness: Option<Vec<String>>) -> Self {
        if !self.passed {
            self.witness = witness;
        }
        self
    }

    pub fn with_count(mut self, count: u64) -> Self {
        self.count = Some(count);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn is_mandatory_failure(&self) -> bool {
        self.severity == Severity::Mandatory && !self.passed
    }
}

/// Running maximum of residuals with the witness of the worst one.
#[derive(Debug, Clone, Default)]
pub(crate) struct Worst {
    pub residual: f64,
    pub witness: Option<Vec<String>>,
    pub count: u64,
}

impl Worst {
    pub fn observe(&mut self, residual: f64, witness: impl FnOnce() -> Vec<String>) {
        self.count += 1;
        // NaN propagates as the worst value.
        if residual > self.residual || residual.is_nan() && !self.residual.is_nan() {
            self.residual = residual;
            self.witness = Some(witness());
        }
    }

    pub fn into_check(self, name: &str, severity: Severity, tolerance: f64) -> CheckResult {
        CheckResult::from_residual(name, severity, self.residual, tolerance)
            .with_witness(self.witness)
            .with_count(self.count)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub checks: Vec<CheckResult>,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl VerificationReport {
    pub fn new() -> Self {
        Self {
            schema: REPORT_SCHEMA_VERSION.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn mandatory_passed(&self) -> bool {
        !self.checks.iter().any(CheckResult::is_mandatory_failure)
    }

    /// 0 when no mandatory check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.mandatory_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match (c.passed, c.severity) {
                (true, _) => "PASS",
                (false, Severity::Mandatory) => "FAIL",
                (false, Severity::Informational) => "info",
            };
            let res = c
                .max_residual
                .map_or("n/a".to_string(), |r| format!("{r:.3e}"));
            out.push_str(&format!(
                "{status:4}  {:<28} residual {res:>10}  tol {:.1e}",
                c.name, c.tolerance
            ));
            if let Some(n) = c.count {
                out.push_str(&format!("  [{n}]"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness ({})", w.join(",")));
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!("  {d}"));
            }
            out.push('\n');
        }
        let failed = self
            .checks
            .iter()
            .filter(|c| c.is_mandatory_failure())
            .count();
        out.push_str(&format!(
            "{} checks, {} mandatory failures\n",
            self.checks.len(),
            failed
        ));
        out
    }
}

/// JSON Schema (draft 7) for [`VerificationReport`].
pub fn report_json_schema() -> serde_json::Value {
    serde_json::json!({
        "$schema": "http://json-schema.org/draft-07/schema#",
        "$id": "https://modcheck.invalid/schema/report-1.json",
        "title": "modcheck verification report",
        "type": "object",
        "additionalProperties": false,
        "required": ["schema", "checks"],
        "properties": {
            "schema": { "const": REPORT_SCHEMA_VERSION },
            "checks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": false,
                    "required": ["name", "severity", "passed", "max_residual", "tolerance"],
                    "properties": {
                        "name": { "type": "string" },
                        "severity": { "enum": ["mandatory", "informational"] },
                        "passed": { "type": "boolean" },
                        "max_residual": { "type": ["number", "null"], "minimum": 0 },
                        "tolerance": { "type": "number", "exclusiveMinimum": 0 },
                        "witness": { "type": "array", "items": { "type": "string" } },
                        "count": { "type": "integer", "minimum": 0 },
                        "detail": { "type": "string" }
                    }
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_tracks_residual() {
        assert!(CheckResult::from_residual("x", Severity::Mandatory, 1e-10, 1e-9).passed);
        assert!(!CheckResult::from_residual("x", Severity::Mandatory, 2e-9, 1e-9).passed);
        let nan = CheckResult::from_residual("x", Severity::Mandatory, f64::NAN, 1e-9);
        assert!(!nan.passed && nan.max_residual.is_none());
    }

    #[test]
    fn witness_only_on_failure() {
        let ok = CheckResult::from_residual("x", Severity::Mandatory, 0.0, 1.0)
            .with_witness(Some(vec!["a".into()]));
        assert!(ok.witness.is_none());
        let bad = CheckResult::from_residual("x", Severity::Mandatory, 2.0, 1.0)
            .with_witness(Some(vec!["a".into()]));
        assert_eq!(bad.witness.unwrap(), vec!["a".to_string()]);
    }

    #[test]
    fn informational_failures_do_not_affect_exit_code() {
        let mut r = VerificationReport::new();
        r.push(CheckResult::from_residual(
            "info",
            Severity::Informational,
            1.0,
            1e-9,
        ));
        assert_eq!(r.exit_code(), 0);
        r.push(CheckResult::from_residual(
            "hard",
            Severity::Mandatory,
            1.0,
            1e-9,
        ));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn worst_keeps_nan() {
        let mut w = Worst::default();
        w.observe(0.5, || vec!["a".into()]);
        w.observe(f64::NAN, || vec!["b".into()]);
        w.observe(0.7, || vec!["c".into()]);
        assert!(w.residual.is_nan());
        assert_eq!(w.count, 3);
    }
}
