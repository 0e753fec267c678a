use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::MathResult;
use crate::jacobi::CoefficientOrder;
use crate::numerics::{BigReal, DegreeTracker, ExactRational, Exclusion, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    ExactPolynomial,
    NumericSeries,
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordKind::ExactPolynomial => "exact_polynomial",
            RecordKind::NumericSeries => "numeric_series",
        })
    }
}

/// Where a variable is sampled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Any rational.
    Rational,
    /// Rationals other than zero.
    NonZero,
    /// A q-base: anything but `0` and `±1`.
    Base,
    /// A Jacobi shape parameter: integers and half-integers are skipped,
    /// which keeps the Pochhammer denominators away from zero.
    Shape,
    /// Real number in `(-1, 1)` (series records only).
    OpenUnit,
}

impl Domain {
    pub fn describe(self) -> &'static str {
        match self {
            Domain::Rational => "Q",
            Domain::NonZero => "Q \\ {0}",
            Domain::Base => "Q \\ {0, 1, -1}",
            Domain::Shape => "Q \\ (Z/2)",
            Domain::OpenUnit => "(-1, 1)",
        }
    }

    pub(crate) fn exclusions(self) -> Vec<Exclusion> {
        match self {
            Domain::Rational | Domain::OpenUnit => vec![],
            Domain::NonZero => vec![Exclusion::new("zero", |r: &ExactRational| r.is_zero())],
            Domain::Base => vec![Exclusion::new("0, 1, -1", |r: &ExactRational| {
                r.is_zero() || r.abs() == ExactRational::one()
            })],
            Domain::Shape => vec![Exclusion::new("half-integer", |r: &ExactRational| {
                (r.clone() * ExactRational::from(2)).is_integer()
            })],
        }
    }
}

#[derive(Debug, Clone)]
pub struct Variable {
    pub name: &'static str,
    pub domain: Domain,
}

pub fn var(name: &'static str, domain: Domain) -> Variable {
    Variable { name, domain }
}

/// Evaluator returning `(lhs, rhs)` pairs that must all agree.
pub type SidesFn<S> = Arc<dyn Fn(usize, &[S]) -> MathResult<Vec<(S, S)>> + Send + Sync>;

/// Range of `n` relative to the configured `max_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NLimit {
    Same,
    Double,
    Plus(usize),
    Minus(usize),
}

impl NLimit {
    pub fn resolve(self, max_n: usize) -> usize {
        match self {
            NLimit::Same => max_n,
            NLimit::Double => 2 * max_n,
            NLimit::Plus(k) => max_n + k,
            NLimit::Minus(k) => max_n.saturating_sub(k),
        }
    }
}

#[derive(Clone)]
pub struct ExactBody {
    pub(crate) exact: SidesFn<ExactRational>,
    pub(crate) tracked: SidesFn<DegreeTracker>,
    pub n_min: usize,
    pub n_limit: NLimit,
    /// Overrides the engine's grid work budget for costly evaluators.
    pub grid_budget: Option<usize>,
}

impl ExactBody {
    pub fn new(exact: SidesFn<ExactRational>, tracked: SidesFn<DegreeTracker>) -> Self {
        Self { exact, tracked, n_min: 1, n_limit: NLimit::Same, grid_budget: None }
    }

    pub fn from(mut self, n_min: usize) -> Self {
        self.n_min = n_min;
        self
    }

    pub fn limit(mut self, n_limit: NLimit) -> Self {
        self.n_limit = n_limit;
        self
    }

    pub fn budget(mut self, work: usize) -> Self {
        self.grid_budget = Some(work);
        self
    }

    pub fn eval(&self, n: usize, values: &[ExactRational]) -> MathResult<Vec<(ExactRational, ExactRational)>> {
        (self.exact)(n, values)
    }

    pub fn track(&self, n: usize, values: &[DegreeTracker]) -> MathResult<Vec<(DegreeTracker, DegreeTracker)>> {
        (self.tracked)(n, values)
    }

    pub fn degree_bound(&self, n: usize, nvars: usize) -> MathResult<Vec<u32>> {
        let vars = DegreeTracker::variables(nvars);
        let mut out = vec![0u32; nvars];
        for (l, r) in self.track(n, &vars)? {
            let d = l - r;
            if d.is_symbolic_zero() {
                continue;
            }
            for (slot, b) in out.iter_mut().zip(d.degree_bound()) {
                *slot = (*slot).max(b);
            }
        }
        Ok(out)
    }

    /// Same identity with `eps` added to the right side of the first pair.
    pub fn perturbed(&self, eps: ExactRational) -> ExactBody {
        let (exact, tracked) = (self.exact.clone(), self.tracked.clone());
        let e2 = eps.clone();
        ExactBody {
            exact: Arc::new(move |n, v| {
                let mut out = exact(n, v)?;
                if let Some(first) = out.first_mut() {
                    first.1 = first.1.clone() + eps.clone();
                }
                Ok(out)
            }),
            tracked: Arc::new(move |n, v: &[DegreeTracker]| {
                let mut out = tracked(n, v)?;
                if let Some(first) = out.first_mut() {
                    first.1 = first.1.clone() + DegreeTracker::constant(v.len(), &e2);
                }
                Ok(out)
            }),
            n_min: self.n_min,
            n_limit: self.n_limit,
            grid_budget: self.grid_budget,
        }
    }
}

/// Target value and lazily generated terms of a series at one point.
pub struct SeriesSetup {
    pub target: BigReal,
    pub term: Box<dyn FnMut(usize) -> MathResult<BigReal> + Send>,
}

pub type SeriesFn = fn(&[BigReal], &PrecisionContext) -> MathResult<SeriesSetup>;

#[derive(Clone)]
pub struct SeriesBody {
    /// Default evaluation points, decimal literals in variable order.
    pub points: Vec<Vec<&'static str>>,
    /// Geometric decay rate assumed for the tail beyond the last term.
    pub ratio_bound: f64,
    pub setup: SeriesFn,
}

/// Expansion of a Jacobi density ratio; `order: None` means exactly one of
/// the two coefficient conventions has to converge.
#[derive(Debug, Clone)]
pub struct ExpansionBody {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub points: Vec<&'static str>,
    pub max_terms: usize,
    pub order: Option<CoefficientOrder>,
}

#[derive(Clone)]
pub enum Body {
    Exact(ExactBody),
    Series(SeriesBody),
    Expansion(ExpansionBody),
}

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    /// What the identity is and where it sits among its neighbours.
    pub anchor: &'static str,
    pub variables: Vec<Variable>,
    pub notes: &'static str,
    pub body: Body,
    /// Negative controls and convention siblings only run when the filter
    /// starts with this prefix.
    pub control_group: Option<&'static str>,
}

impl IdentityRecord {
    pub fn kind(&self) -> RecordKind {
        match self.body {
            Body::Exact(_) => RecordKind::ExactPolynomial,
            Body::Series(_) | Body::Expansion(_) => RecordKind::NumericSeries,
        }
    }

    /// Per-variable degree bound of `lhs - rhs` at `n`, maximised over all
    /// component pairs. `None` for series records.
    pub fn degree_bound(&self, n: usize) -> Option<MathResult<Vec<u32>>> {
        let Body::Exact(body) = &self.body else { return None };
        Some(body.degree_bound(n, self.variables.len()))
    }

    /// Convergence-ratio bound of a series record.
    pub fn ratio_bound(&self) -> Option<f64> {
        match &self.body {
            Body::Series(s) => Some(s.ratio_bound),
            _ => None,
        }
    }

    pub fn is_control(&self) -> bool {
        self.control_group.is_some()
    }

    pub fn domains(&self) -> String {
        self.variables.iter().map(|v| format!("{} in {}", v.name, v.domain.describe())).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("kind", &self.kind())
            .field("variables", &self.variables)
            .finish()
    }
}

/// Builds an [`ExactBody`] from one closure body instantiated for both the
/// exact and the degree-tracking scalar.
#[macro_export]
macro_rules! exact_body {
    (|$n:ident, $v:ident| $body:expr) => {
        $crate::registry::ExactBody::new(
            ::std::sync::Arc::new(move |$n: usize, $v: &[$crate::numerics::ExactRational]| $body),
            ::std::sync::Arc::new(move |$n: usize, $v: &[$crate::numerics::DegreeTracker]| $body),
        )
    };
}
