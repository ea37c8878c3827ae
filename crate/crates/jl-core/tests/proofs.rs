//! The proof corpus: every entry must check, with the expected shape.

mod common;

use common::corpus::corpus;
use common::f;
use jl_core::proof::{check_proof, Proof};
use jl_core::syntax::Formula;

#[test]
fn corpus_entries_check() {
    let entries = corpus();
    assert!(entries.len() >= 10, "corpus has {} entries", entries.len());
    for e in &entries {
        if let Err(errors) = check_proof(&e.proof) {
            panic!("{} fails to check: {:?}", e.name, errors);
        }
    }
}

#[test]
fn corpus_conclusions() {
    let expect: &[(&str, &str)] = &[
        ("identity", "p1 -> p1"),
        ("ex_falso", "p1 -> ~p1 -> p2"),
        ("sum_intro", "x1:p1 -> (x1+x2):p1"),
        ("application_axiom", "x1:(p1 -> p2) -> x2:p1 -> (x1*x2):p2"),
        ("an_total", "c1:(p1 -> p2 -> p1)"),
        ("an_tower", "!!c1:!c1:c1:(p1 -> p2 -> p1)"),
        ("an_schematic", "c1:(x1:p1 -> p1)"),
        ("an_finite", "c1:(p1 -> p2 -> p1)"),
        ("double_factivity", "x1:x2:p1 -> p1"),
        ("double_introspection", "x1:p1 -> !!x1:!x1:x1:p1"),
        ("consistency", "x1:false -> false"),
        ("jd4_introspection", "x2:p2 -> !x2:x2:p2"),
        ("applied_necessitation", "x1:p1 -> (c1*x1):(p2 -> p1)"),
        ("double_weakening", "p1 -> p2 -> p3 -> p1"),
    ];
    let entries = corpus();
    assert_eq!(entries.len(), expect.len());
    for (e, (name, conclusion)) in entries.iter().zip(expect) {
        assert_eq!(e.name, *name);
        assert_eq!(e.proof.conclusion(), Some(&f(conclusion)), "{name}");
    }
}

#[test]
fn derived_rules_have_the_expected_economy() {
    let entries = corpus();
    let lines = |name: &str| {
        entries.iter().find(|e| e.name == name).unwrap().proof.lines.len()
    };
    assert_eq!(lines("identity"), 5);
    assert_eq!(lines("ex_falso"), 15);
    assert_eq!(lines("sum_intro"), 21);
    assert_eq!(lines("double_factivity"), 7);
    assert_eq!(lines("double_introspection"), 7);
}

#[test]
fn corpus_round_trips_through_json() {
    for e in corpus() {
        let text = serde_json::to_string(&e.proof.to_json_value()).unwrap();
        let back = Proof::from_json(&text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert_eq!(back, e.proof, "{}", e.name);
    }
}

#[test]
fn tampered_conclusions_fail() {
    for mut e in corpus() {
        let last = e.proof.lines.last_mut().unwrap();
        last.formula = Formula::implies(last.formula.clone(), f("p4"));
        assert!(check_proof(&e.proof).is_err(), "{} still checks after tampering", e.name);
    }
}
