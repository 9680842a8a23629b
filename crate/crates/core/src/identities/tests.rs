use super::*;
use crate::exact::{lambda_samples, parse_rat, rat};

fn case(id: IdentityId, lambda: Rat) -> IdentityCase {
    IdentityCase::new(id, lambda)
}

fn numeric_values(report: &IdentityReport) -> (f64, f64) {
    let r = report
        .results
        .iter()
        .find(|r| r.mode == "numeric")
        .expect("numeric result present");
    (
        r.lhs.as_ref().unwrap().as_f64().unwrap(),
        r.rhs.as_ref().unwrap().as_f64().unwrap(),
    )
}

#[test]
fn thm21a_exact_passes_on_sample_set() {
    for lambda in lambda_samples() {
        let report = verify(
            &case(IdentityId::Thm21A, lambda)
                .orders_xy(8, 8)
                .mode(Mode::Exact),
        )
        .unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.residual, "0");
    }
}

#[test]
fn thm21a_rejects_pure_numeric_mode() {
    let err = verify(&case(IdentityId::Thm21A, rat(1, 3)).mode(Mode::Numeric)).unwrap_err();
    assert!(matches!(err, IdentityError::InvalidCase(_)));
}

#[test]
fn thm21a_mode_both_runs_exact_with_note() {
    let report = verify(
        &case(IdentityId::Thm21A, rat(1, 3))
            .orders_xy(6, 6)
            .mode(Mode::Both),
    )
    .unwrap();
    assert!(report.passed);
    assert_eq!(report.results.len(), 1);
    assert!(report.notes.contains("numeric mode skipped"));
}

#[test]
fn thm21b_desk_values() {
    let report = verify(&case(IdentityId::Thm21B, rat(1, 2))).unwrap();
    assert!(report.passed);
    let (lhs, rhs) = numeric_values(&report);
    assert_eq!(lhs, 1.5);
    assert_eq!(rhs, 1.5);
}

#[test]
fn thm21b_classical_limit() {
    let report = verify(
        &case(IdentityId::Thm21B, rat(0, 1))
            .y(rat(1, 2))
            .mode(Mode::Numeric),
    )
    .unwrap();
    assert!(report.passed);
    let (_, rhs) = numeric_values(&report);
    let want = 0.5 * 0.5f64.exp();
    assert!((rhs - want).abs() < 1e-14);
}

#[test]
fn thm21b_exact_all_lambdas() {
    for lambda in lambda_samples() {
        let report = verify(&case(IdentityId::Thm21B, lambda).mode(Mode::Exact)).unwrap();
        assert!(report.passed);
        assert_eq!(report.residual, "0");
        assert_eq!(report.order, Some(32));
    }
}

#[test]
fn cor22a_desk_value_exact_and_numeric() {
    let report = verify(&case(IdentityId::Cor22A, rat(1, 2)).x(rat(1, 3))).unwrap();
    assert!(report.passed, "{report:?}");
    let exact = report.results.iter().find(|r| r.mode == "exact").unwrap();
    assert_eq!(exact.lhs.as_ref().unwrap(), "1/12");
    assert_eq!(exact.rhs.as_ref().unwrap(), "1/12");
    let (lhs, rhs) = numeric_values(&report);
    assert!((lhs - 1.0 / 12.0).abs() < 1e-12);
    assert!((rhs - 1.0 / 12.0).abs() < 1e-12);
}

#[test]
fn cor22a_requires_x() {
    let err = verify(&case(IdentityId::Cor22A, rat(1, 2))).unwrap_err();
    assert!(matches!(err, IdentityError::InvalidCase(msg) if msg.contains("x")));
}

#[test]
fn cor22a_rejects_x_equal_one() {
    let err = verify(&case(IdentityId::Cor22A, rat(1, 2)).x(rat(1, 1))).unwrap_err();
    assert!(matches!(err, IdentityError::Numeric(_)));
}

#[test]
fn cor22b_desk_value() {
    let report = verify(&case(IdentityId::Cor22B, rat(1, 2))).unwrap();
    assert!(report.passed);
    let exact = report.results.iter().find(|r| r.mode == "exact").unwrap();
    assert_eq!(exact.lhs.as_ref().unwrap(), "1/4");
    let (lhs, rhs) = numeric_values(&report);
    assert_eq!(lhs, 0.25);
    assert_eq!(rhs, 0.25);
}

#[test]
fn cor22c_desk_value() {
    let report = verify(&case(IdentityId::Cor22C, rat(1, 2))).unwrap();
    assert!(report.passed);
    let exact = report.results.iter().find(|r| r.mode == "exact").unwrap();
    assert_eq!(exact.lhs.as_ref().unwrap(), "-1/4");
    let (lhs, _) = numeric_values(&report);
    assert_eq!(lhs, -0.25);
}

#[test]
fn cor22_exact_skipped_for_nonterminating_lambda() {
    let report = verify(&case(IdentityId::Cor22B, rat(-1, 2))).unwrap();
    assert!(report.passed);
    assert_eq!(report.results.len(), 1);
    assert!(report.notes.contains("exact mode skipped"));
    // Explicitly requesting exact mode is an error.
    let err = verify(&case(IdentityId::Cor22B, rat(-1, 2)).mode(Mode::Exact)).unwrap_err();
    assert!(matches!(err, IdentityError::InvalidCase(_)));
}

#[test]
fn thm23_desk_values() {
    // p = 0 reduces to the unweighted tail sum.
    let r0 = verify(&case(IdentityId::Thm23, rat(1, 2)).p(0)).unwrap();
    assert!(r0.passed);
    assert_eq!(numeric_values(&r0).0, 1.5);

    let r1 = verify(&case(IdentityId::Thm23, rat(1, 2)).p(1)).unwrap();
    assert!(r1.passed);
    assert_eq!(numeric_values(&r1).0, 0.25);
    assert_eq!(numeric_values(&r1).1, 0.25);

    // (1)_{p+1,1/2} = 0 for p ≥ 2: both sides vanish.
    for p in 2..=4 {
        let r = verify(&case(IdentityId::Thm23, rat(1, 2)).p(p)).unwrap();
        assert!(r.passed);
        let (lhs, rhs) = numeric_values(&r);
        assert_eq!(rhs, 0.0);
        assert!(lhs.abs() < 1e-12);
    }
}

#[test]
fn thm23_requires_p() {
    let err = verify(&case(IdentityId::Thm23, rat(1, 2))).unwrap_err();
    assert!(matches!(err, IdentityError::InvalidCase(msg) if msg.contains("p")));
}

#[test]
fn eq11_desk_values() {
    let r = verify(&case(IdentityId::Eq11, rat(1, 2)).p(1)).unwrap();
    assert!(r.passed);
    assert_eq!(numeric_values(&r).0, 0.25);

    let exact = verify(
        &case(IdentityId::Eq11, rat(1, 3))
            .y(rat(1, 2))
            .p(2)
            .mode(Mode::Exact),
    )
    .unwrap();
    assert!(exact.passed);
    assert_eq!(exact.residual, "0");
}

#[test]
fn thm24_desk_values() {
    // LHS = (1)_{2,1/2}·T₁ = (1/2)(1/4) = 1/8.
    let r = verify(&case(IdentityId::Thm24, rat(1, 2)).p(2)).unwrap();
    assert!(r.passed, "{r:?}");
    let (lhs, rhs) = numeric_values(&r);
    assert_eq!(lhs, 0.125);
    assert!((rhs - 0.125).abs() < 1e-15);

    let exact = verify(
        &case(IdentityId::Thm24, rat(1, 3))
            .y(rat(1, 4))
            .p(3)
            .mode(Mode::Exact),
    )
    .unwrap();
    assert!(exact.passed);
    assert_eq!(exact.residual, "0");
}

#[test]
fn thm25_desk_values() {
    // k = 0: both sides are e_λ(y) − 1.
    for lambda in [rat(1, 2), rat(-1, 2), rat(0, 1)] {
        let lf = rat_to_f64(&lambda);
        let r = verify(&case(IdentityId::Thm25, lambda).y(rat(1, 2)).k(0)).unwrap();
        assert!(r.passed, "{r:?}");
        let (lhs, rhs) = numeric_values(&r);
        let want = degen_exp(1.0, lf, 0.5).unwrap() - 1.0;
        assert!((rhs - want).abs() < 1e-13);
        assert!((lhs - want).abs() < 1e-10);
    }

    // k = 1 at λ = 1/2, y = 1: LHS = Σ_{n≥1} Tₙ(1) = 1/4.
    let r = verify(&case(IdentityId::Thm25, rat(1, 2)).k(1)).unwrap();
    assert!(r.passed);
    let (lhs, rhs) = numeric_values(&r);
    assert_eq!(lhs, 0.25);
    assert!((rhs - 0.25).abs() < 1e-14);
    assert!(r.notes.contains("j=1 term taken as limit"));

    let exact = verify(
        &case(IdentityId::Thm25, rat(1, 3))
            .y(rat(1, 2))
            .k(2)
            .mode(Mode::Exact),
    )
    .unwrap();
    assert!(exact.passed);
    assert_eq!(exact.residual, "0");
}

#[test]
fn thm25_exact_all_lambdas_small_k() {
    for lambda in lambda_samples() {
        for k in 0..=4 {
            let r = verify(
                &case(IdentityId::Thm25, lambda.clone())
                    .k(k)
                    .mode(Mode::Exact),
            )
            .unwrap();
            assert!(r.passed, "λ={lambda} k={k}: {r:?}");
        }
    }
}

#[test]
fn remark26_exploration() {
    // k = 0: only T₀ contributes, so the value is e_λ(y) − 1.
    let r = verify(&case(IdentityId::Remark26, rat(-1, 2)).y(rat(1, 2)).k(0)).unwrap();
    assert!(r.passed);
    let value = r.results[0].lhs.as_ref().unwrap().as_f64().unwrap();
    let want = degen_exp(1.0, -0.5, 0.5).unwrap() - 1.0;
    assert!((value - want).abs() < 1e-10);
    assert!(r.results[0].rhs.is_none());
    assert!(r.notes.contains("exploration"));

    // λ = 0 reduces to the classical Stirling weights of thm2.5.
    let r26 = verify(&case(IdentityId::Remark26, rat(0, 1)).y(rat(1, 2)).k(1)).unwrap();
    let t25 = verify(
        &case(IdentityId::Thm25, rat(0, 1))
            .y(rat(1, 2))
            .k(1)
            .mode(Mode::Numeric),
    )
    .unwrap();
    let v26 = r26.results[0].lhs.as_ref().unwrap().as_f64().unwrap();
    let (v25, _) = numeric_values(&t25);
    assert!((v26 - v25).abs() < 1e-12);

    // Terminating λ converges for any k.
    let r = verify(&case(IdentityId::Remark26, rat(1, 2)).k(1)).unwrap();
    assert!(r.passed);
    assert_eq!(r.results[0].converged, Some(true));
}

#[test]
fn remark26_rejects_exact_mode() {
    let err = verify(&case(IdentityId::Remark26, rat(1, 2)).k(0).mode(Mode::Exact)).unwrap_err();
    assert!(matches!(err, IdentityError::InvalidCase(_)));
}

#[test]
fn specialization_chain() {
    // thm2.3(p=0), eq11(p=0), thm2.4(p=0) and thm2.1b agree in value.
    let lambda = rat(-2, 5);
    let y = rat(1, 2);
    let base = verify(
        &case(IdentityId::Thm21B, lambda.clone())
            .y(y.clone())
            .mode(Mode::Numeric),
    )
    .unwrap();
    let (base_lhs, base_rhs) = numeric_values(&base);
    for id in [IdentityId::Thm23, IdentityId::Eq11, IdentityId::Thm24] {
        let r = verify(
            &case(id, lambda.clone())
                .y(y.clone())
                .p(0)
                .mode(Mode::Numeric),
        )
        .unwrap();
        assert!(r.passed);
        let (lhs, rhs) = numeric_values(&r);
        assert!((lhs - base_lhs).abs() < 1e-11, "{id}: {lhs} vs {base_lhs}");
        assert!((rhs - base_rhs).abs() < 1e-13, "{id}: {rhs} vs {base_rhs}");
    }
    // thm2.4 at p = 1 coincides with eq11 at p = 1.
    let a = verify(
        &case(IdentityId::Thm24, lambda.clone())
            .y(y.clone())
            .p(1)
            .mode(Mode::Numeric),
    )
    .unwrap();
    let b = verify(&case(IdentityId::Eq11, lambda).y(y).p(1).mode(Mode::Numeric)).unwrap();
    let (la, ra) = numeric_values(&a);
    let (lb, rb) = numeric_values(&b);
    assert!((la - lb).abs() < 1e-12);
    assert!((ra - rb).abs() < 1e-13);
}

#[test]
fn numeric_guard_propagates_as_error() {
    let err = verify(&case(IdentityId::Thm21B, rat(2, 1)).mode(Mode::Numeric)).unwrap_err();
    assert!(matches!(
        err,
        IdentityError::Numeric(NumericError::NonConvergence(_))
    ));
}

#[test]
fn terminating_lambda_beyond_unit_disc() {
    // λ = 1/2 terminates, so even |λy| > 1 is exactly summable.
    let report = verify(
        &case(IdentityId::Thm21B, rat(1, 2))
            .y(rat(3, 1))
            .mode(Mode::Numeric),
    )
    .unwrap();
    assert!(report.passed);
    let (lhs, rhs) = numeric_values(&report);
    assert_eq!(lhs, 7.5);
    assert_eq!(rhs, 7.5);
}

#[test]
fn j1_limit_matches_finite_difference() {
    for lambda in lambda_samples() {
        let lf = rat_to_f64(&lambda);
        for y in [0.25, 0.5, 1.0] {
            if 1.0 + lf * y <= 0.0 {
                continue;
            }
            let analytic = thm25_j1_limit(lf, y).unwrap();
            let fd = thm25_j1_finite_difference(lf, y, 1e-6).unwrap();
            assert!(
                (analytic - fd).abs() <= 1e-4,
                "λ={lf} y={y}: {analytic} vs {fd}"
            );
        }
    }
}

#[test]
fn exact_pass_implies_numeric_within_tol() {
    // For cases valid in both modes, a clean exact pass comes with a
    // numeric residual at tolerance.
    for lambda in [rat(1, 3), rat(-1, 2), rat(0, 1)] {
        let r = verify(&case(IdentityId::Thm21B, lambda.clone()).y(rat(1, 2))).unwrap();
        assert!(r.passed, "λ={lambda}: {r:?}");
        assert_eq!(r.results.len(), 2);
        let exact = &r.results[0];
        let numeric = &r.results[1];
        assert_eq!(exact.residual, "0");
        assert!(numeric.residual.parse::<f64>().unwrap() <= 1e-10);
    }
}

#[test]
fn expect_values_checked() {
    let ok = verify(
        &case(IdentityId::Thm21B, rat(1, 2))
            .mode(Mode::Numeric)
            .expect(rat(3, 2)),
    )
    .unwrap();
    assert!(ok.passed);

    let bad = verify(
        &case(IdentityId::Thm21B, rat(1, 2))
            .mode(Mode::Numeric)
            .expect(rat(999, 1)),
    )
    .unwrap();
    assert!(!bad.passed);
    assert!(bad.notes.contains("expected value 999 not met"));
}

#[test]
fn report_json_schema() {
    let report = verify(&case(IdentityId::Thm21B, rat(1, 2)).mode(Mode::Numeric)).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["identity_id"], "thm2.1b");
    assert_eq!(v["params"]["lambda"], "1/2");
    assert_eq!(v["params"]["y"], "1");
    assert_eq!(v["mode"], "numeric");
    assert_eq!(v["passed"], true);
    assert!(v["residual"].is_string());
    assert!(v["terms_used"].is_number());
    let parsed = parse_rat(v["params"]["lambda"].as_str().unwrap()).unwrap();
    assert_eq!(parsed, rat(1, 2));
}

#[test]
fn cases_verify_concurrently_in_input_order() {
    // Cases are independent pure computations; reports stay in input
    // order regardless of how they are scheduled.
    let cases: Vec<IdentityCase> = lambda_samples()
        .into_iter()
        .map(|l| case(IdentityId::Thm21B, l).mode(Mode::Exact).order(16))
        .collect();
    let sequential = run_suite(&cases);
    let handles: Vec<_> = cases
        .iter()
        .cloned()
        .map(|c| std::thread::spawn(move || verify(&c).unwrap()))
        .collect();
    for (h, want) in handles.into_iter().zip(&sequential) {
        let got = h.join().unwrap();
        assert_eq!(got.identity_id, want.identity_id);
        assert_eq!(got.params, want.params);
        assert_eq!(got.passed, want.passed);
    }
}

#[test]
fn identity_id_round_trip() {
    for id in IdentityId::ALL {
        assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
    }
    assert!("thm9.9".parse::<IdentityId>().is_err());
}
