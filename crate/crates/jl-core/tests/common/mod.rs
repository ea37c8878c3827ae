//! Shared helpers for the integration suites: parsing shorthands, seeded
//! random generators, and a proof builder with derived-rule macros.

#![allow(dead_code)]

pub mod corpus;

use jl_core::evidence::EvidenceBase;
use jl_core::logics::{ConstantSpec, LogicId, SchemeId};
use jl_core::proof::{Justification, Proof, ProofLine};
use jl_core::semantics::FinitaryModel;
use jl_core::syntax::{parse_formula, parse_term, Formula, FormulaScheme, Term, TermScheme};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("parse {s}: {e}"))
}

pub fn t(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("parse {s}: {e}"))
}

pub fn random_term(rng: &mut ChaCha8Rng, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        if rng.gen_bool(0.5) {
            Term::Const(rng.gen_range(1..=3))
        } else {
            Term::Var(rng.gen_range(1..=3))
        }
    } else {
        match rng.gen_range(0..3) {
            0 => Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1)),
            1 => Term::sum(random_term(rng, depth - 1), random_term(rng, depth - 1)),
            _ => Term::bang(random_term(rng, depth - 1)),
        }
    }
}

pub fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        Formula::Atom(rng.gen_range(1..=4))
    } else {
        match rng.gen_range(0..3) {
            0 => Formula::not(random_formula(rng, depth - 1)),
            1 => Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
            _ => Formula::just(random_term(rng, depth.min(4) - 1), random_formula(rng, depth - 1)),
        }
    }
}

pub fn instantiate_term_scheme(s: &TermScheme, terms: &[Term]) -> Term {
    match s {
        TermScheme::Meta(m) => terms[m.0 as usize].clone(),
        TermScheme::Const(c) => Term::Const(*c),
        TermScheme::Var(v) => Term::Var(*v),
        TermScheme::App(a, b) => {
            Term::app(instantiate_term_scheme(a, terms), instantiate_term_scheme(b, terms))
        }
        TermScheme::Sum(a, b) => {
            Term::sum(instantiate_term_scheme(a, terms), instantiate_term_scheme(b, terms))
        }
        TermScheme::Bang(a) => Term::bang(instantiate_term_scheme(a, terms)),
    }
}

pub fn instantiate_scheme(s: &FormulaScheme, formulas: &[Formula], terms: &[Term]) -> Formula {
    match s {
        FormulaScheme::Meta(m) => formulas[m.0 as usize].clone(),
        FormulaScheme::Atom(i) => Formula::Atom(*i),
        FormulaScheme::Not(g) => Formula::not(instantiate_scheme(g, formulas, terms)),
        FormulaScheme::Implies(a, b) => Formula::implies(
            instantiate_scheme(a, formulas, terms),
            instantiate_scheme(b, formulas, terms),
        ),
        FormulaScheme::Just(ts, g) => Formula::just(
            instantiate_term_scheme(ts, terms),
            instantiate_scheme(g, formulas, terms),
        ),
    }
}

/// A uniformly chosen axiom scheme of the logic, instantiated with small
/// random ground formulas and terms.
pub fn random_axiom_instance(rng: &mut ChaCha8Rng, logic: LogicId) -> Formula {
    let axioms = &logic.spec().axioms;
    let sid = axioms[rng.gen_range(0..axioms.len())];
    let scheme = sid.scheme();
    let (fmax, tmax) = scheme.max_metas();
    let formulas: Vec<Formula> =
        (0..fmax.map_or(0, |m| m + 1)).map(|_| random_formula(rng, 2)).collect();
    let terms: Vec<Term> = (0..tmax.map_or(0, |m| m + 1)).map(|_| random_term(rng, 2)).collect();
    instantiate_scheme(&scheme, &formulas, &terms)
}

/// A random model of the logic: random frame repaired to meet the frame
/// conditions, then a random base and valuation.
pub fn random_model(
    rng: &mut ChaCha8Rng,
    logic: LogicId,
    cs: &ConstantSpec,
    max_worlds: usize,
    max_base: usize,
) -> FinitaryModel {
    let k = rng.gen_range(1..=max_worlds);
    let frame = logic.spec().frame;
    let mut r: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..k {
        for j in 0..k {
            if rng.gen_bool(0.3) {
                r.insert((i, j));
            }
        }
    }
    if frame.reflexive {
        for i in 0..k {
            r.insert((i, i));
        }
    }
    if frame.serial {
        for i in 0..k {
            if (0..k).all(|j| !r.contains(&(i, j))) {
                let j = rng.gen_range(0..k);
                r.insert((i, j));
            }
        }
    }
    if frame.transitive {
        loop {
            let add: Vec<(usize, usize)> = r
                .iter()
                .flat_map(|&(a, b)| {
                    r.iter().filter(move |&&(c, _)| c == b).map(move |&(_, d)| (a, d))
                })
                .filter(|e| !r.contains(e))
                .collect();
            if add.is_empty() {
                break;
            }
            r.extend(add);
        }
    }
    let mut base = EvidenceBase::new();
    for _ in 0..rng.gen_range(0..=max_base) {
        base.insert((random_term(rng, 2), random_formula(rng, 2), rng.gen_range(0..k)));
    }
    let mut valuation = BTreeSet::new();
    for w in 0..k {
        for atom in 1..=4u32 {
            if rng.gen_bool(0.5) {
                valuation.insert((w, atom));
            }
        }
    }
    let model = FinitaryModel {
        logic,
        cs: cs.clone(),
        worlds: (0..k).map(|i| format!("w{i}")).collect(),
        r,
        base,
        valuation,
    };
    assert!(model.violations().is_empty(), "generated model violates its frame conditions");
    model
}

/// A random schematic constant specification over c1..c3, drawing each
/// constant's grant from the logic's own axioms.
pub fn random_schematic_cs(rng: &mut ChaCha8Rng, logic: LogicId) -> ConstantSpec {
    let axioms = &logic.spec().axioms;
    let mut map: BTreeMap<u32, BTreeSet<SchemeId>> = BTreeMap::new();
    for c in 1..=3u32 {
        let mut grants = BTreeSet::new();
        for sid in axioms {
            if rng.gen_bool(0.4) {
                grants.insert(*sid);
            }
        }
        if !grants.is_empty() {
            map.insert(c, grants);
        }
    }
    ConstantSpec::Schematic(map)
}

/// Builds Hilbert proofs line by line, with derived-rule helpers that emit
/// the underlying primitive lines. Line numbers are 1-based, as in the
/// checker's reports.
pub struct ProofBuilder {
    logic: LogicId,
    cs: ConstantSpec,
    lines: Vec<ProofLine>,
}

impl ProofBuilder {
    pub fn new(logic: LogicId, cs: ConstantSpec) -> ProofBuilder {
        ProofBuilder { logic, cs, lines: Vec::new() }
    }

    pub fn formula(&self, line: usize) -> &Formula {
        &self.lines[line - 1].formula
    }

    pub fn axiom(&mut self, scheme: SchemeId, formula: Formula) -> usize {
        self.lines.push(ProofLine { formula, rule: Justification::Axiom(scheme) });
        self.lines.len()
    }

    pub fn mp(&mut self, implication: usize, antecedent: usize) -> usize {
        let formula = match self.formula(implication) {
            Formula::Implies(_, b) => (**b).clone(),
            other => panic!("line {implication} is not an implication: {other}"),
        };
        self.lines.push(ProofLine {
            formula,
            rule: Justification::Mp { implication, antecedent },
        });
        self.lines.len()
    }

    pub fn an(&mut self, constant: u32, bangs: usize, base: Formula) -> usize {
        let formula = jl_core::proof::an_formula(constant, &base, bangs);
        self.lines.push(ProofLine {
            formula,
            rule: Justification::An { constant, bangs, base },
        });
        self.lines.len()
    }

    /// Syllogism: from lines X -> Y and Y -> Z, derives X -> Z in five
    /// primitive lines.
    pub fn syl(&mut self, xy: usize, yz: usize) -> usize {
        let (x, y) = match self.formula(xy) {
            Formula::Implies(a, b) => ((**a).clone(), (**b).clone()),
            other => panic!("line {xy} is not an implication: {other}"),
        };
        let z = match self.formula(yz) {
            Formula::Implies(a, b) if **a == y => (**b).clone(),
            other => panic!("line {yz} does not continue line {xy}: {other}"),
        };
        let yz_f = Formula::implies(y.clone(), z.clone());
        let l1 = self.axiom(
            SchemeId::Cl1,
            Formula::implies(yz_f.clone(), Formula::implies(x.clone(), yz_f.clone())),
        );
        let l2 = self.mp(l1, yz);
        let l3 = self.axiom(
            SchemeId::Cl2,
            Formula::implies(
                Formula::implies(x.clone(), yz_f),
                Formula::implies(Formula::implies(x.clone(), y), Formula::implies(x, z)),
            ),
        );
        let l4 = self.mp(l3, l2);
        self.mp(l4, xy)
    }

    /// The theorem A -> (~A -> B), in fifteen primitive lines.
    pub fn ex_falso_chain(&mut self, a: &Formula, b: &Formula) -> usize {
        let na = Formula::not(a.clone());
        let nb = Formula::not(b.clone());
        // ~A -> (~B -> ~A), and contraposition to A -> B.
        let l1 = self.axiom(
            SchemeId::Cl1,
            Formula::implies(na.clone(), Formula::implies(nb.clone(), na.clone())),
        );
        let l2 = self.axiom(
            SchemeId::Cl3,
            Formula::implies(
                Formula::implies(nb, na.clone()),
                Formula::implies(a.clone(), b.clone()),
            ),
        );
        let l7 = self.syl(l1, l2); // ~A -> (A -> B)
        // Permute the antecedents: A -> (~A -> B).
        let ab = Formula::implies(a.clone(), b.clone());
        let l8 = self.axiom(
            SchemeId::Cl2,
            Formula::implies(
                Formula::implies(na.clone(), ab.clone()),
                Formula::implies(
                    Formula::implies(na.clone(), a.clone()),
                    Formula::implies(na.clone(), b.clone()),
                ),
            ),
        );
        let l9 = self.mp(l8, l7); // (~A -> A) -> (~A -> B)
        let l10 = self.axiom(
            SchemeId::Cl1,
            Formula::implies(a.clone(), Formula::implies(na, a.clone())),
        );
        self.syl(l10, l9)
    }

    pub fn build(self) -> Proof {
        Proof { logic: self.logic, cs: self.cs, lines: self.lines }
    }
}
