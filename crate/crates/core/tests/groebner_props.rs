use std::sync::Arc;

use octoperm::groebner::{brute_force_variety, buchberger, buchberger_with, empty_over_fq, membership, Budget, Strategy as PairStrategy};
use octoperm::{FieldCtx, MPoly, Monomial, MonomialOrder, PolyRing};
use proptest::prelude::*;

fn ring(p: u64, n: usize) -> PolyRing {
    PolyRing::new(Arc::new(FieldCtx::prime(p).unwrap()), n).unwrap()
}

type RawPoly = Vec<([u32; 3], u32)>;

fn system_strategy() -> impl Strategy<Value = Vec<RawPoly>> {
    let poly = proptest::collection::vec(([0u32..3, 0u32..3, 0u32..3], 1u32..1000), 1..4);
    proptest::collection::vec(poly, 1..4)
}

fn build(r: &PolyRing, raw: &[RawPoly]) -> Vec<MPoly> {
    let n = r.nvars();
    raw.iter()
        .map(|terms| {
            r.from_terms(terms.iter().map(|(e, c)| (Monomial::new(&e[..n]).unwrap(), r.field().from_u64(*c as u64))))
        })
        .filter(|p| !p.is_zero())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bases_are_sound_and_strategy_independent(
        raw in system_strategy(),
        order in prop::sample::select(vec![MonomialOrder::Lex, MonomialOrder::Grlex, MonomialOrder::Grevlex]),
    ) {
        let r = ring(32003, 3);
        let gens = build(&r, &raw);
        prop_assume!(!gens.is_empty());
        let a = buchberger_with(&gens, order, Budget::seconds(60), PairStrategy::Normal).unwrap();
        let b = buchberger_with(&gens, order, Budget::seconds(60), PairStrategy::Sugar).unwrap();
        prop_assert_eq!(a.audit(), Ok(()));
        prop_assert_eq!(a.gens(), b.gens());
        // A reduced basis is its own reduced basis.
        let again = buchberger(a.gens(), order, Budget::seconds(60)).unwrap();
        prop_assert_eq!(again.gens(), a.gens());
    }

    #[test]
    fn emptiness_matches_enumeration(raw in system_strategy(), q in prop::sample::select(vec![5u64, 7, 11, 13]), v in 1usize..=3) {
        let r = ring(q, v);
        let gens = build(&r, &raw);
        prop_assume!(!gens.is_empty());
        let brute = brute_force_variety(&gens).unwrap();
        prop_assert_eq!(empty_over_fq(&gens, Budget::seconds(60)).unwrap(), brute.is_empty());
    }
}

#[test]
fn membership_of_variables_matches_points() {
    // The only F_7 point is (0, 0): x1^3 + x2^2 has others, so add x1*x2 - x1^2 - x2^2.
    let r = ring(7, 2);
    let gens = vec![r.parse("x1^2 + x2^2").unwrap()];
    // -1 is not a square mod 7, so x1^2 + x2^2 = 0 forces x1 = x2 = 0.
    assert_eq!(brute_force_variety(&gens).unwrap().len(), 1);
    for i in 0..2 {
        assert!(membership(&r.var(i), &gens, true, Budget::UNLIMITED).unwrap());
        assert!(!membership(&r.var(i), &gens, false, Budget::UNLIMITED).unwrap());
    }
}

#[test]
fn field_equations_alone_have_every_point() {
    let r = ring(11, 2);
    assert!(!empty_over_fq(&[r.parse("x1^11 - x1").unwrap()], Budget::UNLIMITED).unwrap());
    for c in 0..11 {
        let g = r.parse(&format!("x1 - {c}")).unwrap();
        assert!(!empty_over_fq(&[g], Budget::UNLIMITED).unwrap());
    }
}

#[test]
fn unit_ideal_for_q37() {
    let gens: Vec<MPoly> = (5..=12).map(|m| octoperm::hermite::hc(8, 37, m).unwrap()).collect();
    let gb = buchberger_with(
        &octoperm::groebner::with_field_equations(&gens).unwrap(),
        MonomialOrder::Grevlex,
        Budget::seconds(600),
        PairStrategy::Sugar,
    )
    .unwrap();
    assert!(gb.contains_one());
}
