use std::fmt;

use serde::{Serialize, Serializer};

use crate::numerics::{BigReal, ExactRational, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ProvedExact,
    PassedNumeric,
    Failed,
    SkippedSingular,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::ProvedExact => "proved_exact",
            Status::PassedNumeric => "passed_numeric",
            Status::Failed => "failed",
            Status::SkippedSingular => "skipped_singular",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Largest observed `|lhs - rhs|`.
#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    ExactZero,
    Exact(ExactRational),
    Numeric(BigReal),
}

impl Residual {
    /// `~2^k` annotation, `None` for zero.
    pub fn log2(&self) -> Option<f64> {
        match self {
            Residual::ExactZero => None,
            Residual::Exact(r) => BigReal::from_rational(r, 64).log2_abs(),
            Residual::Numeric(v) => v.log2_abs(),
        }
    }

    pub fn max(self, other: Residual) -> Residual {
        let key = |r: &Residual| r.log2().unwrap_or(f64::NEG_INFINITY);
        if key(&other) > key(&self) {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::ExactZero => f.write_str("0 (exact)"),
            Residual::Exact(r) => {
                let v = BigReal::from_rational(r, 64);
                write!(f, "{} (exact, ~2^{:.1})", v.to_sci(6), v.log2_abs().unwrap_or(0.0))
            }
            Residual::Numeric(v) => match v.log2_abs() {
                Some(l) => write!(f, "{} (~2^{:.1}, {} bits)", v.to_sci(6), l, v.precision()),
                None => write!(f, "0 (below 2^-{}, {} bits)", v.precision(), v.precision()),
            },
        }
    }
}

impl Serialize for Residual {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub points_tested: u64,
    pub max_residual: Residual,
    pub terms_used: Option<usize>,
    pub seed: u64,
    pub elapsed_ms: u64,
    /// Set when exactness rests on random joint samples instead of a full
    /// degree grid.
    pub probabilistic: bool,
    /// Parameter tuple of the first mismatch.
    pub witness: Option<String>,
    pub detail: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::ProvedExact | Status::PassedNumeric)
    }

    pub fn text_line(&self) -> String {
        let mut line = format!("{:<34} {:<16} residual {}", self.id, self.status.label(), self.max_residual);
        line.push_str(&format!(" points {}", self.points_tested));
        if let Some(t) = self.terms_used {
            line.push_str(&format!(" terms {t}"));
        }
        if self.probabilistic {
            line.push_str(" [probabilistic]");
        }
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness: {w}"));
        }
        if !self.detail.is_empty() {
            line.push_str(&format!(" ({})", self.detail));
        }
        line
    }
}

/// Settings shared by all engines in one run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub ctx: PrecisionContext,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { max_n: 10, trials: 20, seed: 42, ctx: PrecisionContext::default() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub proved_exact: usize,
    pub passed_numeric: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateReport {
    pub config: VerifyConfig,
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl AggregateReport {
    pub fn new(config: VerifyConfig, mut reports: Vec<VerificationReport>) -> Self {
        reports.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary { total: reports.len(), ..Summary::default() };
        for r in &reports {
            match r.status {
                Status::ProvedExact => summary.proved_exact += 1,
                Status::PassedNumeric => summary.passed_numeric += 1,
                Status::Failed => summary.failed += 1,
                Status::SkippedSingular => summary.skipped += 1,
            }
        }
        Self { config, reports, summary }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.text_line());
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "total {} proved_exact {} passed_numeric {} failed {} skipped {}\n",
            s.total, s.proved_exact, s.passed_numeric, s.failed, s.skipped
        ));
        out
    }
}
