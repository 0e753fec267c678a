use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::record::{Body, ExactBody, ExpansionBody, IdentityRecord, SeriesBody};
use super::report::{Residual, Status, VerificationReport, VerifyConfig};
use super::RegistryError;
use crate::error::MathError;
use crate::jacobi::{density_ratio_expansion_check, CoefficientOrder, JacobiParams};
use crate::numerics::{BigReal, ExactRational, PrecisionContext, RationalSampler};

/// Work allowed per `n` for records with three or more variables, counted
/// as grid points times `(n+1)^2`; beyond it the engine falls back to random
/// joint samples.
pub const GRID_BUDGET: usize = 200_000;

fn mix(seed: u64, parts: &[u64]) -> u64 {
    // FNV-1a over the words, stable across platforms
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for p in parts {
        for b in p.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    }
    h
}

fn id_hash(id: &str) -> u64 {
    mix(0, &id.bytes().map(u64::from).collect::<Vec<_>>())
}

/// Base sampler bounds used by the exact engine.
#[derive(Debug, Clone, Copy)]
pub struct SamplerBase {
    pub seed: u64,
    pub numerator_bound: u32,
    pub denominator_bound: u32,
}

impl SamplerBase {
    pub fn from_sampler(s: &RationalSampler) -> Self {
        Self { seed: s.seed(), numerator_bound: s.numerator_bound(), denominator_bound: s.denominator_bound() }
    }
}

/// At least `count` distinct admissible values for one variable, growing
/// the sampler bounds when the default pool is too small.
fn pool_for(record: &IdentityRecord, var: usize, count: usize, seed: u64, base: SamplerBase) -> Vec<ExactRational> {
    let (mut nb, mut db) = (base.numerator_bound, base.denominator_bound);
    loop {
        let mut sampler = RationalSampler::new(seed).with_bounds(nb, db);
        for e in record.variables[var].domain.exclusions() {
            sampler = sampler.exclude(e);
        }
        let pool = sampler.pool();
        if pool.len() >= count {
            return pool;
        }
        nb = nb * 2;
        db = db + db / 2 + 1;
    }
}

fn witness(record: &IdentityRecord, n: usize, values: &[ExactRational]) -> String {
    let mut parts = vec![format!("n={n}")];
    for (v, x) in record.variables.iter().zip(values) {
        parts.push(format!("{}={}", v.name, x));
    }
    parts.join(", ")
}

enum PointOutcome {
    Pass,
    Fail(ExactRational),
    Singular,
}

fn is_singular(e: &MathError) -> bool {
    matches!(e, MathError::Singular | MathError::SingularSample | MathError::SingularQ | MathError::Numerics(_))
}

fn check_point(body: &ExactBody, n: usize, values: &[ExactRational]) -> Result<PointOutcome, MathError> {
    match body.eval(n, values) {
        Ok(pairs) => {
            let worst = pairs.iter().map(|(l, r)| (l - r).abs()).max();
            Ok(match worst {
                Some(d) if !d.is_zero() => PointOutcome::Fail(d),
                _ => PointOutcome::Pass,
            })
        }
        Err(e) if is_singular(&e) => Ok(PointOutcome::Singular),
        Err(e) => Err(e),
    }
}

struct NOutcome {
    tested: u64,
    singular: u64,
    complete: bool,
    failure: Option<(Vec<ExactRational>, ExactRational)>,
}

fn run_points(body: &ExactBody, n: usize, points: &[Vec<ExactRational>]) -> Result<NOutcome, MathError> {
    let results: Vec<Result<PointOutcome, MathError>> = points.par_iter().map(|p| check_point(body, n, p)).collect();
    let mut out = NOutcome { tested: 0, singular: 0, complete: true, failure: None };
    for (p, r) in points.iter().zip(results) {
        match r? {
            PointOutcome::Pass => out.tested += 1,
            PointOutcome::Singular => out.singular += 1,
            PointOutcome::Fail(d) => {
                out.tested += 1;
                if out.failure.is_none() {
                    out.failure = Some((p.clone(), d));
                }
            }
        }
    }
    Ok(out)
}

/// Extra candidates per axis beyond the degree bound, used to replace
/// values that hit a pole.
const POLE_SLACK: usize = 8;

/// Nested grid: every value kept on an axis carries a full sub-grid on the
/// remaining axes, and values whose sub-grid cannot be completed are
/// replaced by the next candidate. A polynomial of degree `d_i` in each
/// variable vanishing on such a set is zero, even when the kept rows differ.
struct Grid<'a> {
    body: &'a ExactBody,
    n: usize,
    need: Vec<usize>,
    pools: Vec<Vec<ExactRational>>,
}

impl Grid<'_> {
    fn prove(&self, prefix: &mut Vec<ExactRational>, out: &mut NOutcome) -> Result<bool, MathError> {
        let axis = prefix.len();
        let need = self.need[axis];
        let pool = &self.pools[axis];
        let mut kept = 0;
        if axis + 1 == self.need.len() {
            let mut next = 0;
            while kept < need && next < pool.len() {
                let end = (next + need - kept).min(pool.len());
                let batch: Vec<Vec<ExactRational>> = pool[next..end]
                    .iter()
                    .map(|v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                    .collect();
                next = end;
                let r = run_points(self.body, self.n, &batch)?;
                out.tested += r.tested;
                out.singular += r.singular;
                if r.failure.is_some() {
                    out.failure = r.failure;
                    return Ok(false);
                }
                kept += r.tested as usize;
            }
            return Ok(kept >= need);
        }
        for v in pool {
            if kept == need {
                break;
            }
            prefix.push(v.clone());
            let ok = self.prove(prefix, out);
            prefix.pop();
            if ok? {
                kept += 1;
            }
            if out.failure.is_some() {
                return Ok(false);
            }
        }
        Ok(kept == need)
    }
}

fn grid_check(
    record: &IdentityRecord,
    body: &ExactBody,
    n: usize,
    bound: &[u32],
    base: SamplerBase,
) -> Result<NOutcome, MathError> {
    let key = id_hash(record.id);
    let need: Vec<usize> = bound.iter().map(|&d| d as usize + 1).collect();
    let pools = need
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let seed = mix(base.seed, &[key, n as u64, i as u64]);
            let mut pool = pool_for(record, i, k + POLE_SLACK, seed, base);
            // Small heights first keeps high-degree evaluations cheap.
            pool.sort_by_key(|r| r.numer().bits() + r.denom().bits());
            pool.truncate(k + POLE_SLACK);
            pool
        })
        .collect();
    let mut out = NOutcome { tested: 0, singular: 0, complete: false, failure: None };
    if need.is_empty() {
        let r = run_points(body, n, &[vec![]])?;
        return Ok(NOutcome { complete: r.tested > 0, ..r });
    }
    let grid = Grid { body, n, need, pools };
    out.complete = grid.prove(&mut Vec::new(), &mut out)?;
    Ok(out)
}

fn random_check(
    record: &IdentityRecord,
    body: &ExactBody,
    n: usize,
    trials: usize,
    base: SamplerBase,
) -> Result<NOutcome, MathError> {
    let key = id_hash(record.id);
    let pools: Vec<Vec<ExactRational>> = (0..record.variables.len())
        .map(|i| pool_for(record, i, 1, mix(base.seed, &[key, n as u64, i as u64]), base))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(base.seed, &[key, n as u64, u64::MAX]));
    let mut out = NOutcome { tested: 0, singular: 0, complete: false, failure: None };
    let mut draws = 0;
    while (out.tested as usize) < trials && draws < trials * 8 {
        let batch: Vec<Vec<ExactRational>> = (0..trials - out.tested as usize)
            .map(|_| pools.iter().map(|p| p[rng.gen_range(0..p.len())].clone()).collect())
            .collect();
        draws += batch.len();
        let r = run_points(body, n, &batch)?;
        out.tested += r.tested;
        out.singular += r.singular;
        if r.failure.is_some() {
            out.failure = r.failure;
            break;
        }
    }
    Ok(out)
}

fn failed(record: &IdentityRecord, seed: u64, detail: String) -> VerificationReport {
    VerificationReport {
        id: record.id.to_string(),
        status: Status::Failed,
        points_tested: 0,
        max_residual: Residual::ExactZero,
        terms_used: None,
        seed,
        elapsed_ms: 0,
        probabilistic: false,
        witness: None,
        detail,
    }
}

/// Exact engine: every `n` in range is checked on a grid exceeding the
/// tracked degree bound, or on random joint samples when the grid is too
/// large for three or more variables.
pub fn exact_report(record: &IdentityRecord, body: &ExactBody, base: SamplerBase, max_n: usize, trials: usize) -> VerificationReport {
    let start = Instant::now();
    let n_max = body.n_limit.resolve(max_n).max(body.n_min);
    let nvars = record.variables.len();
    let mut report = failed(record, base.seed, String::new());
    let mut any_valid = false;
    let mut sampled_ns = Vec::new();
    let mut incomplete_ns = Vec::new();
    let mut largest_grid = 0usize;
    for n in body.n_min..=n_max {
        let bound = match body.degree_bound(n, nvars) {
            Ok(b) => b,
            Err(e) => {
                report.detail = format!("degree tracking failed at n={n}: {e}");
                return finish(report, start);
            }
        };
        let grid: usize = bound.iter().map(|&d| d as usize + 1).product();
        let use_grid = nvars <= 2 || grid.saturating_mul((n + 1) * (n + 1)) <= body.grid_budget.unwrap_or(GRID_BUDGET);
        let outcome = if use_grid {
            largest_grid = largest_grid.max(grid);
            grid_check(record, body, n, &bound, base)
        } else {
            sampled_ns.push(n);
            random_check(record, body, n, trials, base)
        };
        let outcome = match outcome {
            Ok(o) => o,
            Err(e) => {
                report.detail = format!("evaluation error at n={n}: {e}");
                return finish(report, start);
            }
        };
        report.points_tested += outcome.tested;
        if let Some((values, diff)) = outcome.failure {
            report.max_residual = Residual::Exact(diff);
            report.witness = Some(witness(record, n, &values));
            report.probabilistic = !sampled_ns.is_empty();
            report.detail = format!("mismatch at n={n}");
            return finish(report, start);
        }
        if use_grid && !outcome.complete && outcome.tested > 0 {
            incomplete_ns.push(n);
        }
        any_valid |= outcome.tested > 0;
    }
    report.max_residual = Residual::ExactZero;
    if !any_valid {
        report.status = Status::SkippedSingular;
        report.detail = "every sample hit a pole".into();
        return finish(report, start);
    }
    report.status = Status::ProvedExact;
    report.probabilistic = !sampled_ns.is_empty() || !incomplete_ns.is_empty();
    let mut detail = format!("n={}..{}", body.n_min, n_max);
    if largest_grid > 0 {
        detail.push_str(&format!(", degree grid up to {largest_grid} points"));
    }
    if !sampled_ns.is_empty() {
        detail.push_str(&format!(", {trials} random joint samples for n in {}", ranges(&sampled_ns)));
    }
    if !incomplete_ns.is_empty() {
        detail.push_str(&format!(", grid incomplete (poles) for n in {}", ranges(&incomplete_ns)));
    }
    report.detail = detail;
    finish(report, start)
}

fn ranges(ns: &[usize]) -> String {
    match (ns.first(), ns.last()) {
        (Some(a), Some(b)) if a == b => format!("{{{a}}}"),
        (Some(a), Some(b)) if b - a + 1 == ns.len() => format!("{a}..{b}"),
        _ => format!("{ns:?}"),
    }
}

fn finish(mut report: VerificationReport, start: Instant) -> VerificationReport {
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

struct SeriesOutcome {
    converged: bool,
    terms_used: usize,
    residual: BigReal,
    trace: Vec<(usize, BigReal)>,
}

fn run_series(body: &SeriesBody, point: &[BigReal], ctx: &PrecisionContext) -> Result<SeriesOutcome, MathError> {
    let mut setup = (body.setup)(point, ctx)?;
    let tol = ctx.tolerance();
    let tail_factor = 1.0 / (1.0 - body.ratio_bound.clamp(0.0, 0.999));
    let max_terms = ctx.max_terms();
    let mut terms = Vec::with_capacity(max_terms + 2);
    let mut partial = ctx.zero();
    let mut trace = Vec::new();
    let mut residual = setup.target.abs();
    for count in 0..=max_terms {
        // partial holds the sum of the first `count` terms
        while terms.len() < count + 2 {
            let t = (setup.term)(terms.len())?;
            terms.push(t);
        }
        if count > 0 {
            partial = partial + terms[count - 1].clone();
            residual = (setup.target.clone() - partial.clone()).abs();
            if count % 25 == 0 || count == max_terms {
                trace.push((count, residual.clone()));
            }
        } else {
            continue;
        }
        if residual < tol {
            let next = terms[count].abs().max(terms[count + 1].abs());
            let tail_ok = next.log2_abs().map_or(true, |l| l + tail_factor.log2() < ctx.tolerance_exp() as f64);
            if tail_ok {
                return Ok(SeriesOutcome { converged: true, terms_used: count, residual, trace });
            }
        }
    }
    Ok(SeriesOutcome { converged: false, terms_used: max_terms, residual, trace })
}

fn domain_error(e: &MathError) -> bool {
    matches!(e, MathError::DivergentDomain | MathError::OutsideSupport)
}

/// Series engine at explicit points.
pub fn series_report_at(
    record: &IdentityRecord,
    body: &SeriesBody,
    points: &[Vec<BigReal>],
    ctx: &PrecisionContext,
    seed: u64,
) -> Result<VerificationReport, RegistryError> {
    let start = Instant::now();
    let mut report = failed(record, seed, String::new());
    let mut worst = Residual::Numeric(ctx.zero());
    let mut terms_used = 0usize;
    let mut notes = Vec::new();
    let mut ok = true;
    for point in points {
        if point.len() != record.variables.len() {
            return Err(RegistryError::OutsideDomain(format!("{} expects {} values", record.id, record.variables.len())));
        }
        let label = point.iter().map(|v| v.to_sci(4)).collect::<Vec<_>>().join(",");
        match run_series(body, point, ctx) {
            Ok(out) => {
                worst = worst.max(Residual::Numeric(out.residual.clone()));
                terms_used = terms_used.max(out.terms_used);
                report.points_tested += 1;
                if !out.converged {
                    ok = false;
                    let trace = out
                        .trace
                        .iter()
                        .map(|(k, r)| format!("{k}:{}", Residual::Numeric(r.clone())))
                        .collect::<Vec<_>>()
                        .join("; ");
                    notes.push(format!("no convergence at ({label}) within {} terms, residual trace {trace}", ctx.max_terms()));
                    if report.witness.is_none() {
                        report.witness = Some(format!("({label})"));
                    }
                }
            }
            Err(e) if domain_error(&e) => {
                return Err(RegistryError::OutsideDomain(format!("{} at ({label}): {e}", record.id)));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("evaluation error at ({label}): {e}"));
                report.witness.get_or_insert_with(|| format!("({label})"));
            }
        }
    }
    report.status = if ok { Status::PassedNumeric } else { Status::Failed };
    report.max_residual = worst;
    report.terms_used = Some(terms_used);
    report.detail = if notes.is_empty() { format!("{} point(s)", points.len()) } else { notes.join(" | ") };
    Ok(finish(report, start))
}

pub fn default_points(body: &SeriesBody, ctx: &PrecisionContext) -> Vec<Vec<BigReal>> {
    body.points
        .iter()
        .map(|p| p.iter().map(|s| ctx.real(s).expect("valid literal")).collect())
        .collect()
}

pub fn expansion_report(record: &IdentityRecord, body: &ExpansionBody, ctx: &PrecisionContext, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let mut report = failed(record, seed, String::new());
    let params = |(a, b): (i64, i64)| JacobiParams::new(ExactRational::from(a), ExactRational::from(b));
    let (source, target) = (params(body.source), params(body.target));
    let capped = match ctx.with_max_terms(body.max_terms.min(ctx.max_terms())) {
        Ok(c) => c,
        Err(e) => {
            report.detail = e.to_string();
            return finish(report, start);
        }
    };
    let mut worst = Residual::Numeric(ctx.zero());
    let mut terms = 0usize;
    let mut winners: Vec<Option<CoefficientOrder>> = Vec::new();
    let mut notes = Vec::new();
    for x in &body.points {
        let xv = ctx.real(x).expect("valid literal");
        let outcome = match density_ratio_expansion_check(&source, &target, &xv, &capped) {
            Ok(o) => o,
            Err(e) => {
                report.detail = format!("x={x}: {e}");
                report.witness = Some(format!("x={x}"));
                return finish(report, start);
            }
        };
        report.points_tested += 1;
        let pick = match body.order {
            Some(order) => outcome.get(order).converged.then_some(order),
            None => outcome.convergent().map(|c| c.order),
        };
        let shown = outcome.get(pick.or(body.order).unwrap_or(CoefficientOrder::AbCd));
        worst = worst.max(Residual::Numeric(shown.residual.clone()));
        terms = terms.max(shown.terms_used);
        notes.push(format!(
            "x={x}: ab_cd {} cd_ab {}",
            if outcome.ab_cd.converged { "converges" } else { "diverges" },
            if outcome.cd_ab.converged { "converges" } else { "diverges" }
        ));
        if pick.is_none() && report.witness.is_none() {
            report.witness = Some(format!("x={x}"));
        }
        winners.push(pick);
    }
    let agreed = winners.first().copied().flatten().filter(|w| winners.iter().all(|o| *o == Some(*w)));
    report.max_residual = worst;
    report.terms_used = Some(terms);
    match agreed {
        Some(order) => {
            report.status = Status::PassedNumeric;
            report.witness = None;
            report.detail = format!("converging convention: {}; {}", order.label(), notes.join("; "));
        }
        None => report.detail = notes.join("; "),
    }
    finish(report, start)
}

/// Runs the engine matching the record's body.
pub fn verify_record(record: &IdentityRecord, cfg: &VerifyConfig) -> VerificationReport {
    match &record.body {
        Body::Exact(body) => {
            let base = SamplerBase { seed: cfg.seed, numerator_bound: 12, denominator_bound: 8 };
            exact_report(record, body, base, cfg.max_n, cfg.trials)
        }
        Body::Series(body) => {
            let points = default_points(body, &cfg.ctx);
            series_report_at(record, body, &points, &cfg.ctx, cfg.seed).unwrap_or_else(|e| failed(record, cfg.seed, e.to_string()))
        }
        Body::Expansion(body) => expansion_report(record, body, &cfg.ctx, cfg.seed),
    }
}
