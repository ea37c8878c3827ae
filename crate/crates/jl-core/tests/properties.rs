//! Randomized properties tying the components together: the printer against
//! the parser, scheme matching and unification against instantiation, the
//! evidence engine against the saturation oracle and its closure conditions,
//! and the column-based decider against streaming enumeration.

mod common;

use common::corpus::corpus;
use jl_core::decider::{decide_sat, decide_sat_naive, SatVerdict, SearchBounds};
use jl_core::evidence::{saturation_oracle, EvidenceBase, EvidenceEngine, OracleResult};
use jl_core::logics::{ConstantSpec, LogicId, SchemeId};
use jl_core::proof::{check_proof, Justification, ProofLine};
use jl_core::syntax::{parse_formula, parse_term, unify, Formula, FormulaScheme, Term};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn arb_term() -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        (1u32..=3u32).prop_map(Term::Const),
        (1u32..=3u32).prop_map(Term::Var),
    ];
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::app(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sum(a, b)),
            inner.prop_map(Term::bang),
        ]
    })
    .boxed()
}

fn arb_formula() -> BoxedStrategy<Formula> {
    let leaf = (1u32..=4u32).prop_map(Formula::Atom);
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (arb_term(), inner).prop_map(|(t, g)| Formula::just(t, g)),
        ]
    })
    .boxed()
}

fn arb_logic() -> BoxedStrategy<LogicId> {
    (0..LogicId::ALL.len()).prop_map(|i| LogicId::ALL[i]).boxed()
}

fn arb_scheme_id() -> BoxedStrategy<SchemeId> {
    (0..SchemeId::ALL.len()).prop_map(|i| SchemeId::ALL[i]).boxed()
}

/// Shallow terms and single-atom leaves keep the streaming decider cheap.
fn arb_tiny_term() -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        (1u32..=2u32).prop_map(Term::Var),
        proptest::strategy::Just(Term::Const(1)),
    ];
    leaf.prop_recursive(1, 4, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sum(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::app(a, b)),
            inner.prop_map(Term::bang),
        ]
    })
    .boxed()
}

fn arb_tiny_formula() -> BoxedStrategy<Formula> {
    let leaf = (1u32..=2u32).prop_map(Formula::Atom);
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (arb_tiny_term(), inner).prop_map(|(t, g)| Formula::just(t, g)),
        ]
    })
    .boxed()
}

fn arb_base(worlds: usize) -> BoxedStrategy<EvidenceBase> {
    proptest::collection::btree_set((arb_term(), arb_formula(), 0..worlds), 0..=3).boxed()
}

fn arb_relation(worlds: usize) -> BoxedStrategy<BTreeSet<(usize, usize)>> {
    proptest::collection::btree_set((0..worlds, 0..worlds), 0..=worlds * worlds).boxed()
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(f in arb_formula()) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn printing_then_parsing_terms_is_identity(t in arb_term()) {
        let text = t.to_string();
        prop_assert_eq!(parse_term(&text).unwrap(), t);
    }

    #[test]
    fn matching_reproduces_the_formula(f in arb_formula(), sid in arb_scheme_id()) {
        if let Some(sub) = sid.scheme().matches(&f) {
            prop_assert_eq!(sub.apply_formula(&sid.scheme()), FormulaScheme::from(&f));
        }
    }

    #[test]
    fn unifiers_really_unify(a in arb_scheme_id(), b in arb_scheme_id()) {
        let s1 = a.scheme();
        let (fmax, tmax) = s1.max_metas();
        let s2 = b.scheme().shift_metas(fmax.map_or(0, |m| m + 1), tmax.map_or(0, |m| m + 1));
        if let Some(rho) = unify(&s1, &s2) {
            prop_assert_eq!(rho.apply_formula(&s1), rho.apply_formula(&s2));
        }
    }

    #[test]
    fn ground_unification_agrees_with_matching(f in arb_formula(), sid in arb_scheme_id()) {
        let scheme = sid.scheme();
        let ground = FormulaScheme::from(&f);
        prop_assert_eq!(unify(&scheme, &ground).is_some(), scheme.matches(&f).is_some());
    }

    #[test]
    fn base_pairs_are_always_evidence(
        logic in arb_logic(),
        base in arb_base(2),
        r in arb_relation(2),
    ) {
        let engine = EvidenceEngine::new(logic, ConstantSpec::Total, 2, &r, &base);
        for (t, f, w) in &base {
            prop_assert!(engine.contains(t, f, *w), "{t} : {f} at {w}");
            prop_assert_eq!(
                saturation_oracle(logic, &ConstantSpec::Total, 2, &r, &base, t, f, *w, 12),
                OracleResult::Derived,
            );
        }
    }

    #[test]
    fn sums_weaken_on_both_sides(
        logic in arb_logic(),
        base in arb_base(2),
        r in arb_relation(2),
        s in arb_term(),
    ) {
        let engine = EvidenceEngine::new(logic, ConstantSpec::Total, 2, &r, &base);
        for (t, f, w) in &base {
            prop_assert!(engine.contains(&Term::sum(t.clone(), s.clone()), f, *w));
            prop_assert!(engine.contains(&Term::sum(s.clone(), t.clone()), f, *w));
        }
    }

    #[test]
    fn applications_close_over_base_implications(
        logic in arb_logic(),
        base in arb_base(2),
        r in arb_relation(2),
    ) {
        let engine = EvidenceEngine::new(logic, ConstantSpec::Total, 2, &r, &base);
        for (t1, f1, w1) in &base {
            let Formula::Implies(a, b) = f1 else { continue };
            for (t2, f2, w2) in &base {
                if w1 == w2 && f2 == &**a {
                    prop_assert!(engine.contains(&Term::app(t1.clone(), t2.clone()), b, *w1));
                }
            }
        }
    }

    #[test]
    fn j4_evidence_propagates_forward(
        logic in prop_oneof![
            proptest::strategy::Just(LogicId::J4),
            proptest::strategy::Just(LogicId::JD4),
            proptest::strategy::Just(LogicId::LP),
        ],
        base in arb_base(3),
        r in arb_relation(3),
    ) {
        let engine = EvidenceEngine::new(logic, ConstantSpec::Total, 3, &r, &base);
        for &(w, v) in &r {
            for (t, f, _) in &base {
                if engine.contains(t, f, w) {
                    prop_assert!(engine.contains(t, f, v), "{t} : {f} lost along {w} -> {v}");
                }
            }
        }
    }

    #[test]
    fn engine_and_oracle_agree_on_random_queries(
        logic in arb_logic(),
        base in arb_base(2),
        r in arb_relation(2),
        t in arb_term(),
        f in arb_formula(),
        w in 0..2usize,
    ) {
        let engine = EvidenceEngine::new(logic, ConstantSpec::Total, 2, &r, &base);
        match saturation_oracle(logic, &ConstantSpec::Total, 2, &r, &base, &t, &f, w, 12) {
            OracleResult::Derived => prop_assert!(engine.contains(&t, &f, w)),
            OracleResult::NotDerived => prop_assert!(!engine.contains(&t, &f, w)),
            OracleResult::FuelExhausted => {}
        }
    }

    #[test]
    fn corpus_prefixes_still_check(index in 0..14usize, keep in 1..=21usize) {
        let mut entries = corpus();
        let n = entries.len();
        let e = &mut entries[index % n];
        let keep = keep.min(e.proof.lines.len());
        e.proof.lines.truncate(keep);
        prop_assert!(check_proof(&e.proof).is_ok(), "{} truncated to {keep}", e.name);
    }

    #[test]
    fn appending_an_axiom_preserves_checking(index in 0..14usize) {
        let mut entries = corpus();
        let n = entries.len();
        let e = &mut entries[index % n];
        e.proof.lines.push(ProofLine {
            formula: parse_formula("p4 -> p3 -> p4").unwrap(),
            rule: Justification::Axiom(SchemeId::Cl1),
        });
        prop_assert!(check_proof(&e.proof).is_ok(), "{}", e.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn column_decider_matches_streaming(f in arb_tiny_formula(), logic in arb_logic()) {
        let bounds = SearchBounds { max_worlds: 2, max_base: 1 };
        let fast = decide_sat(logic, &ConstantSpec::Total, &f, bounds);
        let naive = decide_sat_naive(logic, &ConstantSpec::Total, &f, bounds);
        prop_assert_eq!(fast, naive);
    }

    #[test]
    fn satisfiability_is_monotone_in_bounds(f in arb_tiny_formula(), logic in arb_logic()) {
        let small = SearchBounds { max_worlds: 1, max_base: 1 };
        if let SatVerdict::Satisfiable { .. } = decide_sat(logic, &ConstantSpec::Total, &f, small) {
            for bigger in [
                SearchBounds { max_worlds: 2, max_base: 1 },
                SearchBounds { max_worlds: 1, max_base: 2 },
            ] {
                let verdict = decide_sat(logic, &ConstantSpec::Total, &f, bigger);
                prop_assert!(
                    matches!(verdict, SatVerdict::Satisfiable { .. }),
                    "satisfiable at minimal bounds but not at {:?}",
                    bigger,
                );
            }
        }
    }
}
