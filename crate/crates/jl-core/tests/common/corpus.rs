//! A corpus of checked proofs across the six logics, exercising every rule
//! form: classical axioms, the justification axioms, modus ponens, axiom
//! necessitation with and without bang towers, and all three kinds of
//! constant specification. Three entries load from JSON to cover the file
//! format; the rest are built programmatically.

use super::{f, ProofBuilder};
use jl_core::logics::{ConstantSpec, LogicId, SchemeId};
use jl_core::proof::Proof;
use std::collections::{BTreeMap, BTreeSet};

pub struct CorpusEntry {
    pub name: &'static str,
    pub proof: Proof,
}

fn entry(name: &'static str, proof: Proof) -> CorpusEntry {
    CorpusEntry { name, proof }
}

fn from_json(name: &'static str, text: &str) -> CorpusEntry {
    entry(name, Proof::from_json(text).unwrap_or_else(|e| panic!("load {name}: {e}")))
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();

    // Identity p1 -> p1, the classical five-liner, from JSON.
    out.push(from_json("identity", include_str!("../data/proof_identity.json")));

    // A -> (~A -> B) for atoms, fifteen primitive lines.
    let mut b = ProofBuilder::new(LogicId::J, ConstantSpec::Total);
    b.ex_falso_chain(&f("p1"), &f("p2"));
    out.push(entry("ex_falso", b.build()));

    // Sum introduction x1:p1 -> (x1+x2):p1 via j3, twenty-one lines.
    let mut b = ProofBuilder::new(LogicId::J, ConstantSpec::Total);
    let l15 = b.ex_falso_chain(&f("x1:p1"), &f("x2:p1"));
    let l16 = b.axiom(SchemeId::J3, f("(~x1:p1 -> x2:p1) -> (x1+x2):p1"));
    b.syl(l15, l16);
    out.push(entry("sum_intro", b.build()));

    // Application, straight from the j2 scheme.
    let mut b = ProofBuilder::new(LogicId::J, ConstantSpec::Total);
    b.axiom(SchemeId::J2, f("x1:(p1 -> p2) -> (x2:p1 -> (x1*x2):p2)"));
    out.push(entry("application_axiom", b.build()));

    // Necessitation at depth zero under the total specification.
    let mut b = ProofBuilder::new(LogicId::J, ConstantSpec::Total);
    b.an(1, 0, f("p1 -> p2 -> p1"));
    out.push(entry("an_total", b.build()));

    // An iterated necessitation tower of depth two, from JSON.
    out.push(from_json("an_tower", include_str!("../data/proof_tower.json")));

    // Necessitation in LP under a schematic specification granting c1 only
    // the factivity scheme.
    let mut map = BTreeMap::new();
    map.insert(1, BTreeSet::from([SchemeId::Jt]));
    let mut b = ProofBuilder::new(LogicId::LP, ConstantSpec::Schematic(map));
    b.an(1, 0, f("x1:p1 -> p1"));
    out.push(entry("an_schematic", b.build()));

    // Necessitation under a finite specification.
    let cs = ConstantSpec::Finite(vec![(1, f("p1 -> p2 -> p1"))]);
    let mut b = ProofBuilder::new(LogicId::J, cs);
    b.an(1, 0, f("p1 -> p2 -> p1"));
    out.push(entry("an_finite", b.build()));

    // Factivity composed through two justifications in JT.
    let mut b = ProofBuilder::new(LogicId::JT, ConstantSpec::Total);
    let l1 = b.axiom(SchemeId::Jt, f("x1:x2:p1 -> x2:p1"));
    let l2 = b.axiom(SchemeId::Jt, f("x2:p1 -> p1"));
    b.syl(l1, l2);
    out.push(entry("double_factivity", b.build()));

    // Positive introspection iterated once in J4.
    let mut b = ProofBuilder::new(LogicId::J4, ConstantSpec::Total);
    let l1 = b.axiom(SchemeId::J4, f("x1:p1 -> !x1:x1:p1"));
    let l2 = b.axiom(SchemeId::J4, f("!x1:x1:p1 -> !!x1:!x1:x1:p1"));
    b.syl(l1, l2);
    out.push(entry("double_introspection", b.build()));

    // Consistency in JD, from JSON.
    out.push(from_json("consistency", include_str!("../data/proof_consistency.json")));

    // Positive introspection is available in JD4 too.
    let mut b = ProofBuilder::new(LogicId::JD4, ConstantSpec::Total);
    b.axiom(SchemeId::J4, f("x2:p2 -> !x2:x2:p2"));
    out.push(entry("jd4_introspection", b.build()));

    // Modus ponens under justifications: necessitate a classical axiom and
    // apply it to a variable's evidence.
    let mut b = ProofBuilder::new(LogicId::J, ConstantSpec::Total);
    let l1 = b.an(1, 0, f("p1 -> p2 -> p1"));
    let l2 = b.axiom(SchemeId::J2, f("c1:(p1 -> p2 -> p1) -> (x1:p1 -> (c1*x1):(p2 -> p1))"));
    b.mp(l2, l1);
    out.push(entry("applied_necessitation", b.build()));

    // Double weakening p1 -> (p2 -> (p3 -> p1)).
    let mut b = ProofBuilder::new(LogicId::J, ConstantSpec::Total);
    let l1 = b.axiom(SchemeId::Cl1, f("p1 -> p3 -> p1"));
    let l2 = b.axiom(SchemeId::Cl1, f("(p3 -> p1) -> p2 -> p3 -> p1"));
    b.syl(l1, l2);
    out.push(entry("double_weakening", b.build()));

    out
}
