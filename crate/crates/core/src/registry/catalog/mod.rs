//! The identity catalog.

mod framework;
mod jacobi;
mod poch;
mod qfamilies;
mod qseries;
mod series;
mod util;

use super::record::{var, Body, Domain, ExactBody, ExpansionBody, IdentityRecord, NLimit, SeriesBody, SeriesFn, Variable};
use crate::exact_body;
use crate::jacobi::CoefficientOrder;

pub(crate) fn exact(id: &'static str, anchor: &'static str, variables: Vec<Variable>, body: ExactBody) -> IdentityRecord {
    IdentityRecord { id, anchor, variables, notes: "", body: Body::Exact(body), control_group: None }
}

pub(crate) fn series(
    id: &'static str,
    anchor: &'static str,
    variables: Vec<Variable>,
    points: Vec<Vec<&'static str>>,
    ratio_bound: f64,
    setup: SeriesFn,
) -> IdentityRecord {
    IdentityRecord { id, anchor, variables, notes: "", body: Body::Series(SeriesBody { points, ratio_bound, setup }), control_group: None }
}

pub(crate) fn expansion(
    id: &'static str,
    anchor: &'static str,
    source: (i64, i64),
    target: (i64, i64),
    points: Vec<&'static str>,
    order: Option<CoefficientOrder>,
    control_group: Option<&'static str>,
) -> IdentityRecord {
    IdentityRecord {
        id,
        anchor,
        variables: vec![var("x", Domain::OpenUnit)],
        notes: "coefficients built from the connection coefficients c_{n,0}, both argument orders computed",
        body: Body::Expansion(ExpansionBody { source, target, points, max_terms: 80, order }),
        control_group,
    }
}

fn named(names: &[&'static str], domain: Domain) -> Vec<Variable> {
    names.iter().map(|n| var(n, domain)).collect()
}

/// Unrestricted rational variables.
pub(crate) fn free(names: &[&'static str]) -> Vec<Variable> {
    named(names, Domain::Rational)
}

/// Jacobi shape parameters.
pub(crate) fn shapes(names: &[&'static str]) -> Vec<Variable> {
    named(names, Domain::Shape)
}

/// Series variables in `(-1, 1)`.
pub(crate) fn unit(names: &[&'static str]) -> Vec<Variable> {
    named(names, Domain::OpenUnit)
}

pub(crate) fn with_base(mut vars: Vec<Variable>) -> Vec<Variable> {
    vars.push(var("q", Domain::Base));
    vars
}

fn controls() -> Vec<IdentityRecord> {
    let group = Some("registry.selftest");
    vec![
        IdentityRecord {
            id: "registry.selftest.sabotaged",
            anchor: "alternating rising-factorial collapse with one added to the right side",
            variables: free(&["a", "b"]),
            notes: "negative control, must fail",
            body: Body::Exact(exact_body!(|n, v| poch::sabotaged(n, v)).from(0)),
            control_group: group,
        },
        IdentityRecord {
            id: "registry.selftest.bn_literal",
            anchor: "q-Hermite zero sum with b_n taken as (-1)^n q^C(n,2) h_n(x|q)",
            variables: with_base(free(&["y"])),
            notes: "negative control, fails from n = 2",
            body: Body::Exact(exact_body!(|n, v| qfamilies::asc_fin_literal(n, v)).limit(NLimit::Plus(2))),
            control_group: group,
        },
    ]
}

/// Every record, controls included, sorted by id.
pub fn catalog() -> Vec<IdentityRecord> {
    let mut all = Vec::new();
    all.extend(poch::records());
    all.extend(jacobi::records());
    all.extend(qseries::records());
    all.extend(qfamilies::records());
    all.extend(framework::records());
    all.extend(series::records());
    all.extend(controls());
    all.sort_by(|a, b| a.id.cmp(b.id));
    all
}
