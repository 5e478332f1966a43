use hochschild::bv::corpus::{corpus, exterior_times_truncated, lambda_x};
use hochschild::bv::{check_bv_equivalences, check_gerstenhaber, check_second_order, GradedAlgebraSpec};
use hochschild::Ring;
use proptest::prelude::*;

#[test]
fn corpus_biconditional() {
    let entries = corpus();
    assert!(entries.len() >= 20);
    for e in entries {
        let eq = check_bv_equivalences(&e.spec);
        assert!(eq.agree(), "{}", e.spec.name);
        assert_eq!(eq.second_order, e.expect_bv, "{}", e.spec.name);
    }
}

#[test]
fn specs_round_trip_through_json() {
    for e in corpus() {
        let json = e.spec.to_json();
        let back = GradedAlgebraSpec::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json, "{}", e.spec.name);
    }
}

#[test]
fn malformed_specs_are_rejected() {
    let mut json = lambda_x(Ring::Rationals).to_json();
    json["ring"] = "f4".into();
    assert!(GradedAlgebraSpec::from_json(&json).is_err());
    let mut json = lambda_x(Ring::Rationals).to_json();
    json["basis"] = serde_json::json!([]);
    assert!(GradedAlgebraSpec::from_json(&json).is_err());
}

#[test]
fn induced_bracket_is_gerstenhaber_on_lambda_x() {
    let spec = lambda_x(Ring::Rationals);
    assert!(check_second_order(&spec).unwrap().passed);
    let br = hochschild::bv::bv_bracket_from_delta(&spec).unwrap();
    let rs = check_gerstenhaber(&spec.with_bracket(br)).unwrap();
    assert!(rs.iter().all(|r| r.passed), "{rs:?}");
}

proptest! {
    #[test]
    fn y_power_times_dtheta_is_bv_over_q(k in 0usize..3, c in 1i64..5) {
        let spec = exterior_times_truncated(Ring::Rationals, 4, &[(k, 0, c)]);
        let eq = check_bv_equivalences(&spec);
        prop_assert!(eq.agree());
        prop_assert!(eq.second_order);
    }
}
