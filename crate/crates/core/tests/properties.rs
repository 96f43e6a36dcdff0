//! Invariants over shrinkable inputs.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use tcres::calculus::{check_derivation, check_in_mode, Mode};
use tcres::engine::{resolve, Query};
use tcres::oracle::{gfp_in, lfp_in, tp_step, valid, HerbrandBase, Policy, DEFAULT_MAX_ITERS};
use tcres::proof::ProofTerm;
use tcres::syntax::{parse_formula, parse_program, parse_proof};
use tcres::term::{match_atom, unify_atoms, Atom, Substitution, Term};

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["X", "Y", "Z"]).prop_map(Term::var),
        prop::sample::select(vec!["a", "b"]).prop_map(Term::constant),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(s, t)| Term::app("g", vec![s, t])),
        ]
    })
}

fn atom() -> impl Strategy<Value = Atom> {
    (term(), term()).prop_map(|(s, t)| Atom::new("p", vec![s, t]))
}

fn subst() -> impl Strategy<Value = Substitution> {
    prop::collection::vec((prop::sample::select(vec!["X", "Y", "Z"]), term()), 0..3)
        .prop_map(|bs| bs.into_iter().map(|(v, t)| (v.to_string(), t)).collect())
}

fn proof() -> impl Strategy<Value = ProofTerm> {
    let leaf = prop::sample::select(vec!["k1", "k2", "k3"]).prop_map(ProofTerm::konst);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| ProofTerm::apply(f, a)),
            inner.clone().prop_map(|b| ProofTerm::lambda(
                vec!["x".into()],
                ProofTerm::apply(b, ProofTerm::var("x"))
            )),
            inner.prop_map(|b| ProofTerm::nu("a", ProofTerm::apply(b, ProofTerm::var("a")))),
        ]
    })
}

proptest! {
    #[test]
    fn matching_instantiates_pattern(p in atom(), s in subst()) {
        let t = s.apply_atom(&p);
        let m = match_atom(&p, &t).unwrap();
        prop_assert_eq!(m.apply_atom(&p), t);
    }

    #[test]
    fn matching_never_binds_target(p in atom(), t in atom()) {
        if let Ok(m) = match_atom(&p, &t) {
            prop_assert_eq!(m.apply_atom(&p), t.clone());
            let pv = p.vars();
            prop_assert!(m.domain().all(|v| pv.contains(&v)));
        }
    }

    #[test]
    fn unifier_unifies(x in atom(), y in atom()) {
        if let Some(u) = unify_atoms(&x, &y) {
            prop_assert_eq!(u.apply_atom(&x), u.apply_atom(&y));
        }
    }

    #[test]
    fn composition_is_application_order(s in subst(), t in subst(), x in term()) {
        let c = Substitution::compose(&s, &t);
        prop_assert_eq!(c.apply_term(&x), s.apply_term(&t.apply_term(&x)));
    }

    #[test]
    fn term_order_is_total_and_consistent(x in term(), y in term()) {
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        prop_assert_eq!(x.cmp(&y) == std::cmp::Ordering::Equal, x == y);
    }

    #[test]
    fn proof_printing_round_trips(e in proof()) {
        prop_assert_eq!(parse_proof(&e.to_string()).unwrap(), e.clone());
        prop_assert_eq!(parse_proof(&e.to_unicode()).unwrap(), e.clone());
    }

    #[test]
    fn canonical_form_is_alpha_equivalent(e in proof()) {
        let c = e.canonicalize();
        prop_assert!(c.alpha_eq(&e));
        prop_assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn formula_printing_round_trips(h in atom(), b in prop::collection::vec(atom(), 0..3)) {
        let f = tcres::term::HornClause::new(b, h);
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_program_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (sig, p) = gen_program(&mut rng);
        let back = parse_program(&p.to_string()).unwrap().program;
        prop_assert_eq!(back.to_string(), p.to_string());

        let base = HerbrandBase::new(p.signature().clone(), 2);
        let l = lfp_in(&p, &base, Policy::Pessimistic, DEFAULT_MAX_ITERS);
        let g = gfp_in(&p, &base, Policy::Optimistic);
        let gp = gfp_in(&p, &base, Policy::Pessimistic);
        prop_assert!(l.converged && g.converged);
        prop_assert!(l.model.is_subset(&gp.model));
        prop_assert!(gp.model.is_subset(&g.model));
        prop_assert_eq!(tp_step(&p, &base, &l.model, Policy::Pessimistic), l.model.clone());
        prop_assert!(gp.model.is_subset(&tp_step(&p, &base, &gp.model, Policy::Pessimistic)));

        for mode in [Mode::Inductive, Mode::Coinductive, Mode::Extended] {
            let goal = gen_query(&mut rng, &sig, mode != Mode::Coinductive);
            let mut q = Query::new(goal.clone(), mode).depth(5);
            q.node_budget = 5_000;
            let r = resolve(&p, &q).unwrap();
            if let tcres::engine::Outcome::Proved { evidence, derivation } = &r.outcome {
                prop_assert!(check_in_mode(&r.env, evidence, &goal, mode).is_ok());
                prop_assert!(check_derivation(&r.env, derivation).is_ok());
                prop_assert!(derivation.rules().iter().all(|x| mode.allows(*x)));
                prop_assert!(!valid(&p, &goal, mode.semantics(), 2).unwrap().is_invalid());
            }
        }
    }
}
