use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rba::concrete::{c_join, c_meet, c_neg, SubsetPair};
use rba::frames::{random_model, AccessShape};
use rba::glue::random_glued;
use rba::syntax::{parse, Formula, Prop};

fn pair() -> impl Strategy<Value = SubsetPair> {
    (0u128..1 << 10, 0u128..1 << 10).prop_map(|(a, b)| SubsetPair { truth: a & b, domain: b })
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        prop::sample::select(vec!["p", "q", "r", "p1", "long_name"]).prop_map(Formula::prop),
    ];
    leaf.prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            inner.clone().prop_map(Formula::aware),
            inner.prop_map(Formula::know),
        ]
    })
}

proptest! {
    #[test]
    fn relative_negation_is_an_involution(p in pair()) {
        prop_assert_eq!(c_neg(c_neg(p)), p);
        prop_assert_eq!(c_neg(p).domain, p.domain);
    }

    #[test]
    fn concrete_meet_and_join_commute(p in pair(), q in pair()) {
        prop_assert_eq!(c_meet(p, q), c_meet(q, p));
        prop_assert_eq!(c_join(p, q), c_join(q, p));
        prop_assert_eq!(c_neg(c_meet(p, q)), c_join(c_neg(p), c_neg(q)));
        prop_assert_eq!(c_meet(p, q).domain, p.domain & q.domain);
    }

    #[test]
    fn random_glued_algebras_satisfy_the_laws(seed in any::<u64>()) {
        let alg = random_glued(&mut ChaCha8Rng::seed_from_u64(seed), 20);
        let r = alg.check_rba();
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn fast_semantics_matches_truth_clauses(seed in any::<u64>(), f in formula()) {
        let props = [Prop::new("p"), Prop::new("q")];
        let shape = if seed % 2 == 0 { AccessShape::Partition } else { AccessShape::Arbitrary };
        let m = random_model(&mut ChaCha8Rng::seed_from_u64(seed), 4, &props, shape);
        let f = f.substitute(&|x: &Prop| (!["p", "q"].contains(&x.name())).then(|| Formula::prop("q")));
        let ext = m.extension(&f);
        prop_assert_eq!(m.valid(&f), ext.truth == ext.domain);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn print_then_parse_is_identity(f in formula()) {
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f, "{}", text);
    }
}
