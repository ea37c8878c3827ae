//! Saturating cross-check for evidence membership.
//!
//! Where the engine decides membership symbolically through scheme sets,
//! this oracle materializes explicit triples and forward-chains the closure
//! rules until nothing changes. Every triple in a derivation of the query
//! uses a subterm of the query term, so the term universe is just that
//! subterm set. The formula universe collects the query and base formulas
//! with their subformulas, necessitation towers reachable from the query
//! term, justified-formula wrappers for bang subterms, and one round of
//! axiom instances assembled over the universe (candidate implication
//! majors justified by constants).
//!
//! A `Derived` answer is always correct: each rule mirrors one closure
//! condition. A `NotDerived` answer means saturation reached a fixpoint
//! without the query, and is definitive relative to the constructed formula
//! universe.

use super::EvidenceBase;
use crate::logics::{ConstantSpec, LogicId};
use crate::proof::an_formula;
use crate::syntax::{Formula, Term};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleResult {
    Derived,
    NotDerived,
    /// The saturation loop was still growing when the round budget ran out.
    FuelExhausted,
}

/// Pairs granted outright by necessitation: a constant justifies what the
/// specification grants it, and a banged constant justifies the matching
/// tower. Uniform across worlds.
fn static_holds(logic: LogicId, cs: &ConstantSpec, t: &Term, f: &Formula) -> bool {
    let (depth, core) = t.strip_bangs();
    let Term::Const(c) = core else { return false };
    if depth == 0 {
        return cs.contains(logic, *c, f);
    }
    let mut inner = f;
    for _ in 0..depth {
        match inner {
            Formula::Just(_, body) => inner = body,
            _ => return false,
        }
    }
    cs.contains(logic, *c, inner) && *f == an_formula(*c, inner, depth - 1)
}

enum Shape {
    Leaf,
    Sum(usize, usize),
    App(usize, usize),
    Bang(usize),
}

/// Decides whether `term` justifies `formula` at `world` by saturation,
/// spending at most `fuel` rounds. World indices must be below
/// `num_worlds`, which must be at least 1.
#[allow(clippy::too_many_arguments)]
pub fn saturation_oracle(
    logic: LogicId,
    cs: &ConstantSpec,
    num_worlds: usize,
    r: &BTreeSet<(usize, usize)>,
    base: &EvidenceBase,
    term: &Term,
    formula: &Formula,
    world: usize,
    fuel: usize,
) -> OracleResult {
    let spec = logic.spec();
    let terms: Vec<Term> = term.subterms().into_iter().collect();
    let tidx: BTreeMap<Term, usize> =
        terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let consts: Vec<u32> = terms
        .iter()
        .filter_map(|t| match t {
            Term::Const(c) => Some(*c),
            _ => None,
        })
        .collect();

    // Formula universe, kept closed under subformulas throughout.
    let mut u_f: BTreeSet<Formula> = formula.subformulas();
    for (t, f, _) in base {
        if tidx.contains_key(t) {
            u_f.extend(f.subformulas());
        }
    }
    if let ConstantSpec::Finite(entries) = cs {
        for (c, f) in entries {
            if consts.contains(c) {
                u_f.extend(f.subformulas());
            }
        }
    }
    for t in &terms {
        let (depth, core) = t.strip_bangs();
        if depth == 0 {
            continue;
        }
        if let Term::Const(c) = core {
            for f in u_f.clone() {
                if cs.contains(logic, *c, &f) {
                    for level in 0..depth {
                        u_f.extend(an_formula(*c, &f, level).subformulas());
                    }
                }
            }
        }
    }
    if spec.uses_j4 {
        // The bang clause concludes t : A; make room for those formulas, one
        // layer per level of bang nesting.
        let max_depth = terms.iter().map(|t| t.strip_bangs().0).max().unwrap_or(0);
        for _ in 0..max_depth {
            let snapshot: Vec<Formula> = u_f.iter().cloned().collect();
            for t in &terms {
                if let Term::Bang(inner) = t {
                    for f in &snapshot {
                        u_f.insert(Formula::just((**inner).clone(), f.clone()));
                    }
                }
            }
        }
    }
    if !consts.is_empty() {
        // Candidate implication majors justified by constants under compound
        // terms: one assembly round.
        let snapshot: Vec<Formula> = u_f.iter().cloned().collect();
        let mut assembled = Vec::new();
        for a in &snapshot {
            for b in &snapshot {
                let imp = Formula::implies(a.clone(), b.clone());
                if consts.iter().any(|c| cs.contains(logic, *c, &imp)) {
                    assembled.push(imp);
                }
            }
        }
        u_f.extend(assembled);
    }

    let formulas: Vec<Formula> = u_f.into_iter().collect();
    let fidx: BTreeMap<Formula, usize> =
        formulas.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let nf = formulas.len();

    let static_tab: Vec<Vec<bool>> = terms
        .iter()
        .map(|t| formulas.iter().map(|f| static_holds(logic, cs, t, f)).collect())
        .collect();

    let at = |ti: usize, fi: usize, w: usize| (ti * nf + fi) * num_worlds + w;
    let mut bits = vec![false; terms.len() * nf * num_worlds];
    for (t, f, w) in base {
        if let (Some(&ti), Some(&fi)) = (tidx.get(t), fidx.get(f)) {
            bits[at(ti, fi, *w)] = true;
        }
    }

    let holds = |bits: &[bool], static_tab: &[Vec<bool>], ti: usize, fi: usize, w: usize| {
        static_tab[ti][fi] || bits[(ti * nf + fi) * num_worlds + w]
    };

    let qt = tidx[term];
    let qf = fidx[formula];
    if holds(&bits, &static_tab, qt, qf, world) {
        return OracleResult::Derived;
    }

    let shapes: Vec<Shape> = terms
        .iter()
        .map(|t| match t {
            Term::Sum(a, b) => Shape::Sum(tidx[a.as_ref()], tidx[b.as_ref()]),
            Term::App(a, b) => Shape::App(tidx[a.as_ref()], tidx[b.as_ref()]),
            Term::Bang(a) => Shape::Bang(tidx[a.as_ref()]),
            _ => Shape::Leaf,
        })
        .collect();
    // Implications, decomposed: formula index of (antecedent, consequent).
    let imp_parts: Vec<Option<(usize, usize)>> = formulas
        .iter()
        .map(|f| match f {
            Formula::Implies(a, b) => Some((fidx[a.as_ref()], fidx[b.as_ref()])),
            _ => None,
        })
        .collect();
    // Per bang term: universe formulas `operand : G` as (formula, G) indices.
    let bang_conclusions: Vec<Vec<(usize, usize)>> = terms
        .iter()
        .map(|t| match t {
            Term::Bang(inner) => formulas
                .iter()
                .enumerate()
                .filter_map(|(fi, f)| match f {
                    Formula::Just(s, g) if s == inner.as_ref() => Some((fi, fidx[g.as_ref()])),
                    _ => None,
                })
                .collect(),
            _ => Vec::new(),
        })
        .collect();

    for _ in 0..fuel {
        let mut changed = false;
        let set = |bits: &mut Vec<bool>, idx: usize, changed: &mut bool| {
            if !bits[idx] {
                bits[idx] = true;
                *changed = true;
            }
        };
        for (ti, shape) in shapes.iter().enumerate() {
            match *shape {
                Shape::Leaf => {}
                Shape::Sum(a, b) => {
                    for fi in 0..nf {
                        for w in 0..num_worlds {
                            if holds(&bits, &static_tab, a, fi, w)
                                || holds(&bits, &static_tab, b, fi, w)
                            {
                                set(&mut bits, at(ti, fi, w), &mut changed);
                            }
                        }
                    }
                }
                Shape::App(a, b) => {
                    for (mi, parts) in imp_parts.iter().enumerate() {
                        let Some((gi, bi)) = *parts else { continue };
                        for w in 0..num_worlds {
                            if holds(&bits, &static_tab, a, mi, w)
                                && holds(&bits, &static_tab, b, gi, w)
                            {
                                set(&mut bits, at(ti, bi, w), &mut changed);
                            }
                        }
                    }
                }
                Shape::Bang(a) => {
                    if spec.uses_j4 {
                        for &(fi, gi) in &bang_conclusions[ti] {
                            for w in 0..num_worlds {
                                if holds(&bits, &static_tab, a, gi, w) {
                                    set(&mut bits, at(ti, fi, w), &mut changed);
                                }
                            }
                        }
                    }
                }
            }
        }
        if spec.monotone_evidence {
            for (w, v) in r {
                for ti in 0..terms.len() {
                    for fi in 0..nf {
                        if bits[at(ti, fi, *w)] {
                            set(&mut bits, at(ti, fi, *v), &mut changed);
                        }
                    }
                }
            }
        }
        if holds(&bits, &static_tab, qt, qf, world) {
            return OracleResult::Derived;
        }
        if !changed {
            return OracleResult::NotDerived;
        }
    }
    OracleResult::FuelExhausted
}
