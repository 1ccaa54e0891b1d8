//! Randomized invariants of the library, exercised with proptest.

use proptest::prelude::*;

use booltop_core::boolsemi::{is_flat, reduced_tensor};
use booltop_core::lang::{is_rotation_closed, rotation_closure, cyclic_derivative_lang, cyclic_derivative_oracle};
use booltop_core::theory::{
    general_state_space, half_state_space, pm_state_space, Evaluation, HalfSide, SignSeq,
};
use booltop_core::{
    Alphabet, Bits, BoolMatrix, CircularDfa, CircularWord, Dfa, Limits, TransitionMonoid,
};

fn limits() -> Limits {
    Limits::default()
}

/// A random Boolean matrix with up to 5 rows and columns.
fn matrix_strategy() -> impl Strategy<Value = BoolMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0u8..=1, c), r)
            .prop_map(|rows| BoolMatrix::from_entries(&rows))
    })
}

/// A random regex over {a, b}, kept shallow so minimal DFAs stay small.
fn regex_strategy() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("a".to_string()),
        Just("b".to_string()),
        Just("1".to_string()),
        Just("0".to_string()),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x})({y})")),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("{x}+{y}")),
            inner.prop_map(|x| format!("({x})*")),
        ]
    })
}

fn word_strategy() -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..=1, 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn span_and_dual_have_the_same_cardinality(m in matrix_strategy()) {
        let s = m.row_span(&limits()).unwrap();
        prop_assert_eq!(s.len(), s.dual().len());
    }

    #[test]
    fn double_dual_is_isomorphic_to_the_module(m in matrix_strategy()) {
        let s = m.row_span(&limits()).unwrap();
        prop_assert!(s.is_isomorphic(&s.dual().dual()));
    }

    #[test]
    fn projectivity_family_agrees(m in matrix_strategy()) {
        let s = m.row_span(&limits()).unwrap();
        let p = s.is_projective();
        prop_assert_eq!(p, s.is_distributive());
        prop_assert_eq!(p, s.snake_obstruction().is_none());
        prop_assert_eq!(p, s.free_retract().is_ok());
        prop_assert_eq!(p, s.coevaluation().is_ok());
        prop_assert_eq!(p, is_flat(&s));
    }

    #[test]
    fn floor_and_meet_behave_as_a_lattice(m in matrix_strategy()) {
        let s = m.row_span(&limits()).unwrap();
        for a in s.elements() {
            prop_assert_eq!(&s.floor(a), a);
            for b in s.elements() {
                let meet = s.meet(a, b);
                prop_assert!(meet.leq(a) && meet.leq(b));
                prop_assert!(s.contains(&meet));
                prop_assert_eq!(s.meet(b, a), meet);
            }
        }
    }

    #[test]
    fn reduced_tensor_never_exceeds_the_tensor(m in matrix_strategy()) {
        let s = m.row_span(&limits()).unwrap();
        // a free module of rank 4 already has a 2^16-element tensor
        // square; overflowing draws are a resource verdict, not a failure
        let t = match booltop_core::TensorSpace::new(&s, &s, &limits()) {
            Ok(t) => t,
            Err(booltop_core::Error::LimitExceeded { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let r = reduced_tensor(&s, &s, &limits()).unwrap();
        prop_assert!(r.len() <= t.len());
        if s.is_projective() {
            prop_assert_eq!(r.len(), t.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn minimize_is_idempotent_and_canonical(r in regex_strategy()) {
        let a = Alphabet::new("ab").unwrap();
        let d = Dfa::from_regex_str(&r, &a).unwrap();
        prop_assert_eq!(&d.minimize(), &d);
        // the union with itself is the same language, hence the same struct
        let twice = Dfa::from_regex_str(&format!("({r})+({r})"), &a).unwrap();
        prop_assert_eq!(&twice, &d);
    }

    #[test]
    fn opposite_is_an_involution(r in regex_strategy()) {
        let a = Alphabet::new("ab").unwrap();
        let d = Dfa::from_regex_str(&r, &a).unwrap();
        prop_assert_eq!(d.opposite().opposite(), d);
    }

    #[test]
    fn transition_monoid_is_a_homomorphic_image(
        r in regex_strategy(),
        u in word_strategy(),
        v in word_strategy(),
    ) {
        let a = Alphabet::new("ab").unwrap();
        let d = Dfa::from_regex_str(&r, &a).unwrap();
        let m = TransitionMonoid::new(&d);
        let uv: Vec<u8> = u.iter().chain(v.iter()).copied().collect();
        prop_assert_eq!(
            m.class_of_word(&uv),
            m.mul(m.class_of_word(&u), m.class_of_word(&v))
        );
        prop_assert_eq!(m.accepts(m.class_of_word(&u)), d.accepts(&u));
    }

    #[test]
    fn rotation_closure_is_a_closure_operator(r in regex_strategy()) {
        let a = Alphabet::new("ab").unwrap();
        let d = Dfa::from_regex_str(&r, &a).unwrap();
        let rot = rotation_closure(&d);
        prop_assert!(is_rotation_closed(&rot));
        prop_assert!(d.subset_of(&rot).unwrap());
        prop_assert_eq!(rotation_closure(&rot), rot);
    }

    #[test]
    fn circular_automata_satisfy_the_axioms(r in regex_strategy()) {
        let a = Alphabet::new("ab").unwrap();
        let rot = rotation_closure(&Dfa::from_regex_str(&r, &a).unwrap());
        // the direct construction accepts exactly the closed language,
        // independently of where each word is split
        let full = CircularDfa::from_language(&rot).unwrap();
        prop_assert!(full.validate().is_empty());
        for w in a.words_up_to(5) {
            let cw = CircularWord::new(&w);
            prop_assert_eq!(full.accepts(&cw).unwrap(), rot.accepts(&w));
            for split in 0..=w.len() {
                let q = full.run_split(&w, split);
                prop_assert_eq!(full.accepting.contains(&q), rot.accepts(&w));
            }
        }
        // the minimal quotient stays valid, never grows, and only ever
        // absorbs words into the language, never loses them
        let m = CircularDfa::minimal_dcfa(&rot).unwrap();
        prop_assert!(m.validate().is_empty());
        prop_assert!(m.states <= full.states);
        prop_assert!(rot.subset_of(&m.interval_forget()).unwrap());
    }

    #[test]
    fn cyclic_derivative_matches_the_word_oracle(r in regex_strategy()) {
        let a = Alphabet::new("ab").unwrap();
        let rot = rotation_closure(&Dfa::from_regex_str(&r, &a).unwrap());
        for letter in 0..2u8 {
            let nfa = cyclic_derivative_lang(&rot, letter).unwrap();
            let got: std::collections::BTreeSet<Vec<u8>> =
                nfa.accepted_up_to(5).into_iter().collect();
            let want = cyclic_derivative_oracle(&rot, letter, 6);
            let want: std::collections::BTreeSet<Vec<u8>> =
                want.into_iter().filter(|w| w.len() <= 5).collect();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn half_space_action_tracks_the_automata(r in regex_strategy(), w in word_strategy()) {
        let a = Alphabet::new("ab").unwrap();
        let d = Dfa::from_regex_str(&r, &a).unwrap();
        let minus = half_state_space(&d, HalfSide::Minus);
        let q = d.run(d.init, &w);
        prop_assert_eq!(&minus.act_word(&minus.init, &w), &minus.word_class[q]);
        prop_assert_eq!(minus.trace(&minus.word_class[q]), d.accepting.contains(&q));
        let plus = half_state_space(&d, HalfSide::Plus);
        let op = d.opposite();
        let rev: Vec<u8> = w.iter().rev().copied().collect();
        let t = op.run(op.init, &rev);
        prop_assert_eq!(&plus.act_word(&plus.init, &w), &plus.word_class[t]);
    }
}

fn small_evaluation() -> impl Strategy<Value = Evaluation> {
    (regex_strategy(), regex_strategy()).prop_filter_map(
        "evaluation too large",
        |(ri, rc)| {
            let a = Alphabet::new("ab").unwrap();
            let di = Dfa::from_regex_str(&ri, &a).ok()?;
            let dc = rotation_closure(&Dfa::from_regex_str(&rc, &a).ok()?);
            if di.states * dc.states > 8 {
                return None;
            }
            Evaluation::new(&di, &dc).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plus_minus_gram_is_symmetric(ev in small_evaluation()) {
        // a small product of automata can still have a huge span
        let pm = match pm_state_space(&ev) {
            Ok(pm) => pm,
            Err(booltop_core::Error::LimitExceeded { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert!(pm.gram.is_symmetric());
        // the identity arc is a two-sided unit for the diagram product,
        // up to profile (a pair diagram can share the arc's element)
        let unit = (0..pm.spanning.len())
            .find(|&d| {
                matches!(pm.spanning[d], booltop_core::theory::PmDiagram::Arc(e)
                    if e == pm.monoid.identity())
            })
            .expect("identity arc");
        prop_assert_eq!(pm.element_of(unit), pm.unit.clone());
        for i in 0..pm.spanning.len() {
            let left = pm.mul(unit, i).expect("unit product");
            let right = pm.mul(i, unit).expect("unit product");
            prop_assert_eq!(pm.element_of(left), pm.element_of(i));
            prop_assert_eq!(pm.element_of(right), pm.element_of(i));
        }
    }

    #[test]
    fn general_space_agrees_with_its_dual_configuration(ev in small_evaluation()) {
        for eps in ["", "+", "-", "+-", "-+", "++"] {
            let eps = SignSeq::parse(eps).unwrap();
            let here = match general_state_space(&ev, &eps, &limits()) {
                Ok(g) => g,
                Err(booltop_core::Error::LimitExceeded { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let there = general_state_space(&ev, &eps.dual(), &limits()).unwrap();
            prop_assert_eq!(here.space.len(), there.space.len());
        }
    }

    #[test]
    fn gram_rows_are_the_profiles(ev in small_evaluation()) {
        let g = match general_state_space(&ev, &SignSeq::parse("+-").unwrap(), &limits()) {
            Ok(g) => g,
            Err(booltop_core::Error::LimitExceeded { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        for i in 0..g.spanning.len() {
            let p: &Bits = g.profile(i);
            prop_assert_eq!(p, g.gram.row(i));
            prop_assert!(g.space.contains(p));
        }
    }
}
