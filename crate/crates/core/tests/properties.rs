mod common;

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{any_term, polynomial, term};
use meadow::decide::{decide_iamd, decide_iamdz_gil, Evidence};
use meadow::eval::{eval_total, sample_assignment, Assignment, Carrier, ExactRational};
use meadow::normalize::{poly_normal, split_inverse, zero_elim, ZeroElim};
use meadow::partial::{classify_def, eval_punched, DefClass, PartialValue, PunchId};
use meadow::poly::DEFAULT_MAX_MONOMIALS;
use meadow::serial::{deserialize, serialize};
use meadow::syntax::{parse_term, print_with, Numerals};
use meadow::term::{conforms, free_vars, numeral, substitute, SignatureId, Term};
use meadow::translate::{div_to_inv, inv_to_div};

const XYZ: &[&str] = &["x", "y", "z"];

fn positive_env(seed: u64, terms: &[&Term]) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_assignment(&mut rng, terms.iter().copied(), Carrier::PositiveRationals)
}

fn eval_at(t: &Term, env: &Assignment, carrier: Carrier) -> ExactRational {
    eval_total(t, env, carrier).unwrap()
}

fn ul(n: u64) -> Term {
    numeral(n, SignatureId::Iamd).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn substituting_a_variable_for_itself_is_identity(t in any_term()) {
        prop_assert_eq!(substitute(&t, "x", &Term::var("x")), t);
    }

    #[test]
    fn substitution_free_variables(t in term(SignatureId::Imd, XYZ), s in term(SignatureId::Imd, &["a", "y"])) {
        let mut expected: BTreeSet<String> = free_vars(&t);
        if expected.remove("x") {
            expected.extend(free_vars(&s));
        }
        prop_assert_eq!(free_vars(&substitute(&t, "x", &s)), expected);
    }

    #[test]
    fn print_then_parse_is_identity(t in any_term()) {
        for mode in [Numerals::Decimal, Numerals::Structural] {
            let text = print_with(&t, mode);
            prop_assert_eq!(parse_term(&text).unwrap(), t.clone(), "{}", text);
        }
    }

    #[test]
    fn json_round_trip(t in any_term()) {
        prop_assert_eq!(deserialize(&serialize(&t)).unwrap(), t);
    }

    #[test]
    fn polynomial_normal_form_is_a_homomorphism(
        t in polynomial(SignatureId::Iamd, XYZ),
        u in polynomial(SignatureId::Iamd, XYZ),
    ) {
        let (p, q) = (poly_normal(&t).unwrap(), poly_normal(&u).unwrap());
        let sum = poly_normal(&Term::add(t.clone(), u.clone())).unwrap();
        let product = poly_normal(&Term::mul(t, u)).unwrap();
        prop_assert_eq!(sum, p.add(&q, DEFAULT_MAX_MONOMIALS).unwrap());
        prop_assert_eq!(product, p.mul(&q, DEFAULT_MAX_MONOMIALS).unwrap());
    }

    #[test]
    fn split_inverse_preserves_value(t in term(SignatureId::Iamd, XYZ), seed in any::<u64>()) {
        let env = positive_env(seed, &[&t]);
        let f = split_inverse(&t).unwrap();
        prop_assert_eq!(f.eval(&env).unwrap(), eval_at(&t, &env, Carrier::PositiveRationals));
    }

    #[test]
    fn decisions_are_sound(t in term(SignatureId::Iamd, XYZ), u in term(SignatureId::Iamd, XYZ), pick in 0..4u8) {
        // make roughly half the pairs provably equal
        let u = match pick {
            0 => Term::inv(Term::inv(t.clone())),
            1 => Term::mul(Term::mul(t.clone(), Term::inv(t.clone())), t.clone()),
            _ => u,
        };
        let d = decide_iamd(&t, &u).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        if d.verdict {
            for _ in 0..200 {
                let env = sample_assignment(&mut rng, [&t, &u], Carrier::PositiveRationals);
                prop_assert_eq!(
                    eval_at(&t, &env, Carrier::PositiveRationals),
                    eval_at(&u, &env, Carrier::PositiveRationals)
                );
            }
        } else if let Some(env) = d.counterexample() {
            prop_assert_ne!(
                eval_at(&t, env, Carrier::PositiveRationals),
                eval_at(&u, env, Carrier::PositiveRationals)
            );
        } else {
            prop_assert!(t.is_closed() && u.is_closed());
        }
    }

    #[test]
    fn derivability_is_an_equivalence(t in term(SignatureId::Iamd, XYZ), u in term(SignatureId::Iamd, XYZ)) {
        prop_assert!(decide_iamd(&t, &t).unwrap().verdict);
        prop_assert_eq!(decide_iamd(&t, &u).unwrap().verdict, decide_iamd(&u, &t).unwrap().verdict);
        let mid = Term::inv(Term::inv(t.clone()));
        let end = Term::mul(mid.clone(), Term::One);
        prop_assert!(decide_iamd(&t, &mid).unwrap().verdict);
        prop_assert!(decide_iamd(&mid, &end).unwrap().verdict);
        prop_assert!(decide_iamd(&t, &end).unwrap().verdict);
    }

    #[test]
    fn derivability_is_a_congruence(
        t in term(SignatureId::Iamd, XYZ),
        context in term(SignatureId::Iamd, &["h", "x"]),
    ) {
        let u = Term::mul(Term::inv(Term::inv(t.clone())), Term::mul(t.clone(), Term::inv(t.clone())));
        prop_assert!(decide_iamd(&t, &u).unwrap().verdict);
        let (ct, cu) = (substitute(&context, "h", &t), substitute(&context, "h", &u));
        prop_assert!(decide_iamd(&ct, &cu).unwrap().verdict);
    }

    #[test]
    fn every_term_times_its_inverse_is_one(t in term(SignatureId::Iamd, XYZ)) {
        prop_assert!(decide_iamd(&Term::mul(t.clone(), Term::inv(t)), &Term::One).unwrap().verdict);
    }

    #[test]
    fn evaluation_is_compositional(t in term(SignatureId::Imd, XYZ), s in term(SignatureId::Imd, XYZ), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut env = sample_assignment(&mut rng, [&t, &s], Carrier::AllRationals);
        env.entry("x".into()).or_insert_with(ExactRational::one);
        let inner = eval_at(&s, &env, Carrier::AllRationals);
        let direct = eval_at(&substitute(&t, "x", &s), &env, Carrier::AllRationals);
        env.insert("x".into(), inner);
        prop_assert_eq!(direct, eval_at(&t, &env, Carrier::AllRationals));
    }

    #[test]
    fn classification_is_sound(t in term(SignatureId::Iamdz, XYZ), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let env = sample_assignment(&mut rng, [&t], Carrier::NonNegativeRationals);
        let value = eval_punched(&t, &env, PunchId::Inv0).unwrap();
        match classify_def(&t).unwrap() {
            DefClass::InNz => prop_assert!(matches!(&value, PartialValue::Defined(v) if *v > ExactRational::zero())),
            DefClass::InDefOnly => prop_assert!(value.is_defined()),
            DefClass::Outside => {}
        }
    }

    #[test]
    fn punched_values_agree_with_total_ones(
        t in term(SignatureId::Iamdz, XYZ),
        d in term(SignatureId::Damdz, XYZ),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let env = sample_assignment(&mut rng, [&t, &d], Carrier::NonNegativeRationals);
        let total = |t: &Term| eval_at(t, &env, Carrier::NonNegativeRationals);
        for (term, punch) in [(&t, PunchId::Inv0), (&d, PunchId::DivAll0), (&d, PunchId::DivNonzero0)] {
            if let PartialValue::Defined(v) = eval_punched(term, &env, punch).unwrap() {
                prop_assert_eq!(v, total(term));
            }
        }
    }

    #[test]
    fn punched_inverse_matches_punched_division(t in term(SignatureId::Iamdz, XYZ), d in term(SignatureId::Damdz, XYZ), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let env = sample_assignment(&mut rng, [&t, &d], Carrier::NonNegativeRationals);
        let as_div = inv_to_div(&t).unwrap();
        prop_assert_eq!(
            eval_punched(&t, &env, PunchId::Inv0).unwrap(),
            eval_punched(&as_div, &env, PunchId::DivAll0).unwrap()
        );
        let as_inv = div_to_inv(&d).unwrap();
        prop_assert_eq!(
            eval_punched(&d, &env, PunchId::DivAll0).unwrap(),
            eval_punched(&as_inv, &env, PunchId::Inv0).unwrap()
        );
    }

    #[test]
    fn translation_preserves_values(t in term(SignatureId::Dmd, XYZ), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let env = sample_assignment(&mut rng, [&t], Carrier::AllRationals);
        let inv = div_to_inv(&t).unwrap();
        prop_assert!(conforms(&inv, SignatureId::Imd));
        let back = inv_to_div(&inv).unwrap();
        prop_assert!(conforms(&back, SignatureId::Dmd));
        let v = eval_at(&t, &env, Carrier::AllRationals);
        prop_assert_eq!(&eval_at(&inv, &env, Carrier::AllRationals), &v);
        prop_assert_eq!(&eval_at(&back, &env, Carrier::AllRationals), &v);
    }

    #[test]
    fn zero_elimination(t in term(SignatureId::Iamdz, XYZ), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let env = sample_assignment(&mut rng, [&t], Carrier::NonNegativeRationals);
        let v = eval_at(&t, &env, Carrier::NonNegativeRationals);
        match zero_elim(&t).unwrap() {
            ZeroElim::Zero => prop_assert!(v.is_zero()),
            ZeroElim::Term(s) => {
                prop_assert!(conforms(&s, SignatureId::Iamd));
                prop_assert_eq!(eval_at(&s, &env, Carrier::NonNegativeRationals), v);
            }
        }
    }

    #[test]
    fn gil_decisions_are_sound(t in term(SignatureId::Iamdz, &["x", "y"]), u in term(SignatureId::Iamdz, &["x", "y"])) {
        let d = decide_iamdz_gil(&t, &u).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let carrier = Carrier::NonNegativeRationals;
        if d.verdict {
            for _ in 0..50 {
                let env = sample_assignment(&mut rng, [&t, &u], carrier);
                prop_assert_eq!(eval_at(&t, &env, carrier), eval_at(&u, &env, carrier));
            }
        } else if let Some(env) = d.counterexample() {
            prop_assert_ne!(eval_at(&t, env, carrier), eval_at(&u, env, carrier));
        }
    }
}

#[test]
fn numerals_add_and_multiply() {
    for n in 1..=50 {
        for m in 1..=50 {
            let sum = poly_normal(&Term::add(ul(n), ul(m))).unwrap();
            let product = poly_normal(&Term::mul(ul(n), ul(m))).unwrap();
            assert_eq!(sum, poly_normal(&ul(n + m)).unwrap(), "{n} + {m}");
            assert_eq!(product, poly_normal(&ul(n * m)).unwrap(), "{n} * {m}");
        }
    }
}

#[test]
fn zero_over_zero_breaks_the_inverse_correspondence() {
    // 0 / 0 is defined when only nonzero numerators are punched, 0 * 0^-1 is not
    let t = parse_term("0 / 0").unwrap();
    let env = Assignment::new();
    assert_eq!(
        eval_punched(&t, &env, PunchId::DivNonzero0).unwrap(),
        PartialValue::Defined(ExactRational::zero())
    );
    let translated = div_to_inv(&t).unwrap();
    assert_eq!(
        eval_punched(&translated, &env, PunchId::Inv0).unwrap(),
        PartialValue::Undefined
    );
}

#[test]
fn decision_evidence_shapes() {
    // closed refutations show the two normal forms, open ones a separating point
    let p = |s: &str| parse_term(s).unwrap();
    let d = decide_iamd(&p("2"), &p("3")).unwrap();
    assert!(matches!(d.evidence, Evidence::MatchedNormals { .. }));
    assert!(decide_iamd(&p("x"), &p("x + 1"))
        .unwrap()
        .counterexample()
        .is_some());
}

#[test]
fn inverse_identities() {
    let p = |s: &str| parse_term(s).unwrap();
    assert!(decide_iamd(&p("x^-1^-1"), &p("x")).unwrap().verdict);
    assert!(
        decide_iamd(&p("(x * y)^-1"), &p("x^-1 * y^-1"))
            .unwrap()
            .verdict
    );
    assert!(
        !decide_iamd(&p("(x + y)^-1"), &p("x^-1 + y^-1"))
            .unwrap()
            .verdict
    );
}
