//! Bounded satisfiability and validity.
//!
//! The search space for a formula F comprises models with at most
//! `max_worlds` worlds, accessibility relations satisfying the logic's
//! frame conditions, valuations over the atoms of F, and evidence bases of
//! at most `max_base` triples drawn from subterms(F) x subformulas(F) x
//! worlds. Models are ordered canonically:
//!
//! * by world count k, worlds named w0..w(k-1);
//! * then by relation, as an ascending bit mask with edge (wi, wj) at bit
//!   i*k + j, keeping only masks that satisfy the frame conditions;
//! * then by valuation, as an ascending bit mask with atom number ai true
//!   at world w at bit w*|atoms| + i (atoms sorted ascending);
//! * then by base, ordered by size and then lexically on sorted triple
//!   indices, where the triple (term ti, formula fj, world w) has index
//!   (ti*|formulas| + fj)*k + w over the sorted pools.
//!
//! [`decide_sat`] returns the first satisfying model in this order, and
//! [`decide_valid`] mirrors it on the negation, so verdicts are exactly
//! reproducible. Two engines produce identical answers: a streaming
//! enumeration ([`decide_sat_naive`]) and a column abstraction used
//! automatically when its preconditions hold. The abstraction exploits the
//! fact that the evidence bits a formula can observe at a world depend on
//! the base only through per-world slices (joined along reverse
//! accessibility in the j4 logics), so the search over bases collapses to a
//! table of achievable evidence columns with minimal sizes.

mod columns;

use crate::evidence::EvidenceBase;
use crate::logics::{ConstantSpec, LogicId};
use crate::semantics::{Evaluator, FinitaryModel};
use crate::syntax::{Formula, Term};
use std::collections::BTreeSet;
use std::rc::Rc;

/// Caps on the bounded model search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub max_base: usize,
}

impl SearchBounds {
    /// Default bounds for a formula: three worlds, and base budget equal to
    /// its subterm count but no more than six.
    pub fn for_formula(f: &Formula) -> SearchBounds {
        SearchBounds { max_worlds: 3, max_base: f.subterms().len().min(6) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatVerdict {
    /// The canonically first satisfying model within bounds, and the least
    /// world of it where the formula holds.
    Satisfiable { model: FinitaryModel, world: usize },
    Unsatisfiable { bounds: SearchBounds },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidityVerdict {
    Valid { bounds: SearchBounds },
    /// The canonically first model within bounds falsifying the formula,
    /// and the least world of it where it fails.
    Countermodel { model: FinitaryModel, world: usize },
}

/// The candidate pools and indexing conventions shared by both engines.
pub(crate) struct Universe {
    pub logic: LogicId,
    pub cs: ConstantSpec,
    pub bounds: SearchBounds,
    pub target: Formula,
    pub terms: Vec<Term>,
    pub formulas: Vec<Formula>,
    pub atoms: Vec<u32>,
    /// Sorted (term index, formula index) of the Just subformulas of the
    /// target: the evidence bits evaluation can observe.
    pub just_pairs: Vec<(usize, usize)>,
}

impl Universe {
    pub fn new(logic: LogicId, cs: ConstantSpec, target: Formula, bounds: SearchBounds) -> Universe {
        let terms: Vec<Term> = target.subterms().into_iter().collect();
        let formulas: Vec<Formula> = target.subformulas().into_iter().collect();
        let atoms: Vec<u32> = target.atoms().into_iter().collect();
        let find_term = |t: &Term| terms.binary_search(t).expect("subterm in pool");
        let find_formula = |f: &Formula| formulas.binary_search(f).expect("subformula in pool");
        let just_pairs: BTreeSet<(usize, usize)> = formulas
            .iter()
            .filter_map(|f| match f {
                Formula::Just(t, g) => Some((find_term(t), find_formula(g))),
                _ => None,
            })
            .collect();
        Universe {
            logic,
            cs,
            bounds,
            target,
            terms,
            formulas,
            atoms,
            just_pairs: just_pairs.into_iter().collect(),
        }
    }

    pub fn n_pairs(&self) -> usize {
        self.terms.len() * self.formulas.len()
    }

    pub fn frame_ok(&self, k: usize, r_mask: u64) -> bool {
        let bit = |i: usize, j: usize| r_mask >> (i * k + j) & 1 == 1;
        let frame = self.logic.spec().frame;
        if frame.reflexive && (0..k).any(|i| !bit(i, i)) {
            return false;
        }
        if frame.serial && (0..k).any(|i| (0..k).all(|j| !bit(i, j))) {
            return false;
        }
        if frame.transitive {
            for i in 0..k {
                for j in 0..k {
                    if bit(i, j) {
                        for l in 0..k {
                            if bit(j, l) && !bit(i, l) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Materializes the model at one point of the canonical enumeration.
    pub fn model(&self, k: usize, r_mask: u64, val_mask: u64, base: &[usize]) -> FinitaryModel {
        let nf = self.formulas.len();
        let na = self.atoms.len();
        let mut r = BTreeSet::new();
        for i in 0..k {
            for j in 0..k {
                if r_mask >> (i * k + j) & 1 == 1 {
                    r.insert((i, j));
                }
            }
        }
        let mut valuation = BTreeSet::new();
        for w in 0..k {
            for (i, atom) in self.atoms.iter().enumerate() {
                if val_mask >> (w * na + i) & 1 == 1 {
                    valuation.insert((w, *atom));
                }
            }
        }
        let mut b = EvidenceBase::new();
        for &idx in base {
            let w = idx % k;
            let pair = idx / k;
            b.insert((self.terms[pair / nf].clone(), self.formulas[pair % nf].clone(), w));
        }
        FinitaryModel {
            logic: self.logic,
            cs: self.cs.clone(),
            worlds: (0..k).map(|i| format!("w{i}")).collect(),
            r,
            base: b,
            valuation,
        }
    }
}

/// Subsets of 0..n in canonical base order: by size ascending, then
/// lexically on the sorted index tuple.
pub(crate) struct Combos {
    n: usize,
    max_size: usize,
    state: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl Combos {
    pub fn new(n: usize, max_size: usize) -> Combos {
        Combos { n, max_size: max_size.min(n), state: Vec::new(), fresh: true, done: false }
    }

    /// Only the subsets of exactly `size` elements, in lexical order.
    pub fn exact(n: usize, size: usize) -> Combos {
        Combos {
            n,
            max_size: size,
            state: (0..size.min(n)).collect(),
            fresh: true,
            done: size > n,
        }
    }
}

impl Iterator for Combos {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(self.state.clone());
        }
        if !self.state.is_empty() && advance(&mut self.state, self.n) {
            return Some(self.state.clone());
        }
        if self.state.len() >= self.max_size {
            self.done = true;
            return None;
        }
        self.state = (0..self.state.len() + 1).collect();
        Some(self.state.clone())
    }
}

fn advance(state: &mut [usize], n: usize) -> bool {
    let s = state.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if state[i] < n - (s - i) {
            state[i] += 1;
            for j in i + 1..s {
                state[j] = state[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All models of the bounded search space in canonical order.
pub fn enumerate_models(
    logic: LogicId,
    cs: &ConstantSpec,
    f: &Formula,
    bounds: SearchBounds,
) -> impl Iterator<Item = FinitaryModel> {
    let uni = Rc::new(Universe::new(logic, cs.clone(), f.clone(), bounds));
    assert!(bounds.max_worlds <= 7, "enumeration supports at most 7 worlds");
    (1..=bounds.max_worlds).flat_map(move |k| {
        let uni = uni.clone();
        let frame_uni = uni.clone();
        let na = uni.atoms.len();
        assert!(k * na <= 63, "too many atoms to enumerate valuations");
        (0..1u64 << (k * k)).filter(move |m| frame_uni.frame_ok(k, *m)).flat_map(move |r_mask| {
            let uni = uni.clone();
            (0..1u64 << (k * na)).flat_map(move |val_mask| {
                let uni = uni.clone();
                Combos::new(uni.n_pairs() * k, uni.bounds.max_base)
                    .map(move |combo| uni.model(k, r_mask, val_mask, &combo))
            })
        })
    })
}

/// Reference decision by streaming enumeration. Same verdicts as
/// [`decide_sat`], including the witness model, just slower.
pub fn decide_sat_naive(
    logic: LogicId,
    cs: &ConstantSpec,
    f: &Formula,
    bounds: SearchBounds,
) -> SatVerdict {
    for model in enumerate_models(logic, cs, f, bounds) {
        let ev = Evaluator::new(&model).expect("enumerated models satisfy their frame conditions");
        if let Some(world) = (0..model.worlds.len()).find(|w| ev.eval(f, *w)) {
            return SatVerdict::Satisfiable { model, world };
        }
    }
    SatVerdict::Unsatisfiable { bounds }
}

/// Is the formula satisfiable within bounds? Returns the canonically first
/// satisfying model if so.
pub fn decide_sat(logic: LogicId, cs: &ConstantSpec, f: &Formula, bounds: SearchBounds) -> SatVerdict {
    let uni = Universe::new(logic, cs.clone(), f.clone(), bounds);
    match columns::try_fast(&uni) {
        Some(verdict) => verdict,
        None => decide_sat_naive(logic, cs, f, bounds),
    }
}

/// Is the formula true in every model within bounds? Returns the
/// canonically first countermodel if not.
pub fn decide_valid(
    logic: LogicId,
    cs: &ConstantSpec,
    f: &Formula,
    bounds: SearchBounds,
) -> ValidityVerdict {
    match decide_sat(logic, cs, &Formula::not(f.clone()), bounds) {
        SatVerdict::Satisfiable { model, world } => ValidityVerdict::Countermodel { model, world },
        SatVerdict::Unsatisfiable { .. } => ValidityVerdict::Valid { bounds },
    }
}
