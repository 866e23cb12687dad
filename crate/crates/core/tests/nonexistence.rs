use std::sync::Arc;
use std::time::Duration;

use octoperm::groebner::{buchberger_with, with_field_equations, Budget, Strategy};
use octoperm::nonexistence::{
    certify, first_index, hermite_ideal, odd_prime_powers, replay, sweep, CertifyOptions, Method,
    NonexistenceCertificate,
};
use octoperm::{FieldCtx, MonomialOrder, NormalizedPoly};

#[test]
fn sweep_up_to_54() {
    let certs = sweep(32, 54, CertifyOptions::with_budget(Duration::from_secs(1800)), 2).unwrap();
    let got: Vec<(u32, Method)> = certs.iter().map(|c| (c.q, c.method)).collect();
    assert_eq!(
        got,
        [
            (37, Method::VarietyEmpty),
            (41, Method::HermiteUnit),
            (43, Method::VarietyZeroOnly),
            (47, Method::VarietyZeroOnly),
            (49, Method::HermiteUnit),
            (53, Method::VarietyEmpty),
        ]
    );
    for c in &certs {
        let parsed = NonexistenceCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(&parsed, c);
        if c.q != 43 {
            assert!(replay(c, Budget::seconds(1800)).unwrap(), "q = {}", c.q);
        }
    }
    assert_eq!(certs[0].witness.hc_range, Some((5, 12)));
}

#[test]
fn prime_powers_in_range() {
    assert_eq!(odd_prime_powers(32, 54), [37, 41, 43, 47, 49, 53]);
    assert!(odd_prime_powers(100, 919).contains(&125));
    assert!(odd_prime_powers(100, 919).contains(&243));
    assert!(odd_prime_powers(100, 919).contains(&343));
    assert!(!odd_prime_powers(100, 919).contains(&512));
}

#[test]
fn q31_variety_is_not_empty() {
    let field = Arc::new(FieldCtx::with_order(31).unwrap());
    let lo = first_index(31);
    let gens = hermite_ideal(&field, lo, lo + 6).unwrap();
    let pp = NormalizedPoly::parse(field.clone(), "0,19,25,6,2,1").unwrap();
    for g in &gens {
        assert!(g.evaluate(&pp.point()).unwrap().is_zero());
    }
    let gb = buchberger_with(
        &with_field_equations(&gens).unwrap(),
        MonomialOrder::Grevlex,
        Budget::seconds(600),
        Strategy::Sugar,
    )
    .unwrap();
    assert!(!gb.contains_one());
    for g in gb.gens() {
        assert!(g.evaluate(&pp.point()).unwrap().is_zero());
    }
}

#[test]
fn q7_certificate_for_79() {
    let c = certify(79, CertifyOptions::default()).unwrap();
    assert_eq!(c.method, Method::Q7Argument);
    assert_eq!(c.witness.m, Some(20));
    assert_eq!(c.witness.restricted.as_deref(), Some("20*x4"));
    assert!(replay(&c, Budget::seconds(600)).unwrap());
}

#[test]
fn explicit_k_is_respected() {
    let opts = CertifyOptions { k: Some(7), ..CertifyOptions::default() };
    let c = certify(47, opts).unwrap();
    assert_eq!(c.witness.hc_range, Some((6, 12)));
}
