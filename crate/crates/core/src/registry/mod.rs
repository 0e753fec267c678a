//! Identity catalog and the exact and numeric verification engines.

mod catalog;
mod engine;
mod record;
mod report;

use rayon::prelude::*;
use thiserror::Error;

pub use catalog::catalog;
pub use engine::{default_points, exact_report, series_report_at, verify_record, SamplerBase, GRID_BUDGET};
pub use record::{
    var, Body, Domain, ExactBody, ExpansionBody, IdentityRecord, NLimit, RecordKind, SeriesBody, SeriesFn, SeriesSetup,
    SidesFn, Variable,
};
pub use report::{AggregateReport, Residual, Status, Summary, VerificationReport, VerifyConfig};

use crate::numerics::{BigReal, ExactRational, PrecisionContext, RationalSampler};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("no matching identities: {0}")]
    UnknownId(String),
    #[error("kind mismatch: {id} is {kind}")]
    KindMismatch { id: String, kind: RecordKind },
    #[error("outside convergence domain: {0}")]
    OutsideDomain(String),
}

/// The record with exactly this id.
pub fn lookup(id: &str) -> Result<IdentityRecord, RegistryError> {
    catalog().into_iter().find(|r| r.id == id).ok_or_else(|| RegistryError::UnknownId(id.to_string()))
}

/// Records whose id starts with `filter`. Controls are only included when
/// the filter itself starts with their group prefix.
pub fn select(filter: &str) -> Vec<IdentityRecord> {
    catalog()
        .into_iter()
        .filter(|r| r.id.starts_with(filter))
        .filter(|r| r.control_group.map_or(true, |g| filter.starts_with(g)))
        .collect()
}

/// Exact engine on one record with the sampler's seed and bounds.
pub fn verify_exact(id: &str, sampler: &RationalSampler, max_n: usize) -> Result<VerificationReport, RegistryError> {
    let record = lookup(id)?;
    let Body::Exact(body) = &record.body else {
        return Err(RegistryError::KindMismatch { id: id.to_string(), kind: record.kind() });
    };
    Ok(exact_report(&record, body, SamplerBase::from_sampler(sampler), max_n, VerifyConfig::default().trials))
}

/// Series engine on one record, at `params` or at the record's default
/// points.
pub fn verify_series(
    id: &str,
    ctx: &PrecisionContext,
    params: Option<&[BigReal]>,
) -> Result<VerificationReport, RegistryError> {
    let record = lookup(id)?;
    let Body::Series(body) = &record.body else {
        return Err(RegistryError::KindMismatch { id: id.to_string(), kind: record.kind() });
    };
    let points = match params {
        Some(p) => vec![p.to_vec()],
        None => default_points(body, ctx),
    };
    series_report_at(&record, body, &points, ctx, VerifyConfig::default().seed)
}

/// Runs every selected record in parallel; reports are sorted by id.
pub fn verify_all(filter: &str, cfg: &VerifyConfig) -> AggregateReport {
    let records = select(filter);
    let reports = records.par_iter().map(|r| verify_record(r, cfg)).collect();
    AggregateReport::new(cfg.clone(), reports)
}

/// Copy of an exact record with `eps` added to its first right side.
pub fn perturbed(record: &IdentityRecord, eps: ExactRational) -> Option<IdentityRecord> {
    let Body::Exact(body) = &record.body else { return None };
    let mut out = record.clone();
    out.body = Body::Exact(body.perturbed(eps));
    Some(out)
}
