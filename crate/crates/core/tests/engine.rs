use qorth::numerics::{rat, BigReal, ExactRational, PrecisionContext, RationalSampler};
use qorth::registry::{
    self, catalog, lookup, perturbed, verify_all, verify_exact, verify_record, Body, RegistryError, Residual, Status,
    VerifyConfig,
};

fn quick() -> VerifyConfig {
    VerifyConfig { max_n: 4, ..VerifyConfig::default() }
}

#[test]
fn lemma_ab_is_proved_to_twelve() {
    let r = verify_exact("poch.lemma_ab.rozn", &RationalSampler::new(42), 12).unwrap();
    assert_eq!(r.status, Status::ProvedExact);
    assert_eq!(r.max_residual, Residual::ExactZero);
    assert!(r.detail.contains("..12"), "{}", r.detail);
    assert!(!r.probabilistic);
}

#[test]
fn parity_record_is_proved() {
    let r = verify_exact("jacobi.conn.parity", &RationalSampler::new(42), 10).unwrap();
    assert_eq!(r.status, Status::ProvedExact);
}

#[test]
fn exact_engine_rejects_series_records() {
    let err = verify_exact("asc.qh.pm", &RationalSampler::new(42), 4).unwrap_err();
    assert!(matches!(err, RegistryError::KindMismatch { .. }));
    assert!(err.to_string().starts_with("kind mismatch"));
}

#[test]
fn series_engine_rejects_exact_records() {
    let err = registry::verify_series("q.shift.s1", &PrecisionContext::default(), None).unwrap_err();
    assert!(matches!(err, RegistryError::KindMismatch { .. }));
}

#[test]
fn series_outside_domain_is_not_passed() {
    let ctx = PrecisionContext::default();
    let point = [ctx.real("1/3").unwrap(), ctx.real("1.5").unwrap()];
    match registry::verify_series("q.euler.binT", &ctx, Some(&point)) {
        Ok(r) => assert!(!r.passed(), "{}", r.text_line()),
        Err(e) => assert!(matches!(e, RegistryError::OutsideDomain(_))),
    }
}

#[test]
fn poisson_mehler_stays_short() {
    let ctx = PrecisionContext::default();
    let point: Vec<BigReal> = ["0.3", "0.3", "0.4", "0.5"].iter().map(|s| ctx.real(s).unwrap()).collect();
    let r = registry::verify_series("asc.qh.pm", &ctx, Some(&point)).unwrap();
    assert_eq!(r.status, Status::PassedNumeric);
    assert!(r.terms_used.unwrap() <= 80);
}

#[test]
fn poisson_mehler_at_zero_rho_needs_one_term() {
    let ctx = PrecisionContext::default();
    let point: Vec<BigReal> = ["0.3", "0.3", "0", "0.5"].iter().map(|s| ctx.real(s).unwrap()).collect();
    let r = registry::verify_series("asc.qh.pm", &ctx, Some(&point)).unwrap();
    assert_eq!(r.status, Status::PassedNumeric);
    assert_eq!(r.terms_used, Some(1));
}

#[test]
fn euler_zero_sum_vanishes() {
    let r = registry::verify_series("q.euler.inf_zero", &PrecisionContext::default(), None).unwrap();
    assert_eq!(r.status, Status::PassedNumeric);
    assert!(r.max_residual.log2().unwrap_or(f64::NEG_INFINITY) < -80.0);
}

#[test]
fn euler_pairs_at_the_other_points() {
    // t = 0.8 decays like 0.8^k, which needs about 250 terms for 2^-80
    let ctx = PrecisionContext::default().with_max_terms(400).unwrap();
    for (t, q) in [("1/3", "1/2"), ("-0.4", "0.7"), ("0.8", "-0.5")] {
        let point = [ctx.real(t).unwrap(), ctx.real(q).unwrap()];
        for id in ["q.euler.binT", "q.euler.obinT"] {
            let r = registry::verify_series(id, &ctx, Some(&point)).unwrap();
            assert_eq!(r.status, Status::PassedNumeric, "{id} at ({t},{q}): {}", r.text_line());
        }
    }
}

#[test]
fn sabotaged_control_fails_with_witness() {
    let agg = verify_all("registry.selftest.sabotaged", &VerifyConfig::default());
    let r = &agg.reports[0];
    assert_eq!(r.status, Status::Failed);
    assert!(r.witness.as_deref().is_some_and(|w| w.starts_with("n=")));
    assert!(matches!(r.max_residual, Residual::Exact(_)));
    assert!(agg.any_failed());
}

#[test]
fn literal_b_control_fails_at_two() {
    let agg = verify_all("registry.selftest.bn_literal", &VerifyConfig::default());
    let r = &agg.reports[0];
    assert_eq!(r.status, Status::Failed);
    assert!(r.witness.as_deref().unwrap().starts_with("n=2,"));
}

/// Every fifth exact record, perturbed by a nonzero constant, must fail.
#[test]
fn perturbations_are_caught() {
    let cfg = quick();
    let eps = [ExactRational::one(), rat(-1, 7).unwrap(), rat(3, 1000).unwrap()];
    let exact: Vec<_> = catalog().into_iter().filter(|r| matches!(r.body, Body::Exact(_)) && !r.is_control()).collect();
    let mut tried = 0;
    for (k, record) in exact.iter().enumerate().filter(|(k, _)| k % 5 == 0) {
        let bad = perturbed(record, eps[k % eps.len()].clone()).unwrap();
        let r = verify_record(&bad, &cfg);
        assert_eq!(r.status, Status::Failed, "{} survived: {}", record.id, r.text_line());
        assert!(r.witness.is_some(), "{}", record.id);
        tried += 1;
    }
    assert!(tried >= 15);
}

#[test]
fn series_records_have_no_perturbation() {
    assert!(perturbed(&lookup("asc.qh.pm").unwrap(), ExactRational::one()).is_none());
}

#[test]
fn reports_are_deterministic() {
    let cfg = quick();
    let scrub = |filter: &str| {
        let mut v = serde_json::to_value(verify_all(filter, &cfg)).unwrap();
        for r in v["reports"].as_array_mut().unwrap() {
            r["elapsed_ms"] = 0.into();
        }
        v
    };
    for filter in ["poch.", "q.", "jacobi.upr."] {
        assert_eq!(scrub(filter), scrub(filter), "{filter}");
    }
}

#[test]
fn other_seeds_still_prove() {
    for seed in [1, 7, 1234] {
        let cfg = VerifyConfig { seed, ..quick() };
        let agg = verify_all("jacobi.upr.", &cfg);
        assert_eq!(agg.summary.proved_exact, 8, "seed {seed}");
        assert!(agg.reports.iter().all(|r| r.seed == seed));
    }
}

#[test]
fn json_report_shape() {
    let agg = verify_all("q.shift.", &quick());
    let v: serde_json::Value = serde_json::from_str(&agg.to_json()).unwrap();
    for key in ["config", "reports", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    for key in ["total", "proved_exact", "passed_numeric", "failed", "skipped"] {
        assert!(v["summary"][key].is_u64(), "{key}");
    }
    let fields = [
        "id",
        "status",
        "points_tested",
        "max_residual",
        "terms_used",
        "seed",
        "elapsed_ms",
        "probabilistic",
        "witness",
        "detail",
    ];
    for r in v["reports"].as_array().unwrap() {
        let obj = r.as_object().unwrap();
        assert_eq!(obj.len(), fields.len());
        for f in fields {
            assert!(obj.contains_key(f), "{f}");
        }
        assert_eq!(r["status"], "proved_exact");
        assert_eq!(r["max_residual"], "0 (exact)");
    }
}

#[test]
fn numeric_residuals_carry_a_power_of_two() {
    let r = registry::verify_series("qh.chebU.galois", &PrecisionContext::default(), None).unwrap();
    let text = r.max_residual.to_string();
    assert!(text.contains("~2^-"), "{text}");
    assert!(text.contains("256 bits"), "{text}");
}
