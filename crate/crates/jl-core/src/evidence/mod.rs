//! Minimal admissible evidence relations.
//!
//! A finite base of triples (term, formula, world) generates the least
//! evidence relation closed under the conditions of the ambient logic:
//!
//! * sum: if t or s justifies A at w, then t+s justifies A at w;
//! * application: if t justifies A -> B at w and s justifies A at w, then
//!   t*s justifies B at w;
//! * necessitation: without j4, `!^n c` justifies the depth n-1 tower over
//!   `c : A` at every world, for each A the constant specification grants c
//!   (depth 0 grants A itself); with j4, c justifies A at every world, and
//!   the bang clause lifts every justified pair: if t justifies A at w then
//!   !t justifies t:A at w;
//! * monotonicity (j4 logics only): justified pairs propagate along the
//!   accessibility relation.
//!
//! Membership in the least relation is decided exactly. For each term and
//! world we compute a finite set of formula schemes whose ground instances
//! are precisely the formulas the term justifies there. The recursion is
//! structural: every closure condition concludes a strictly larger term
//! than its premises, and monotonicity is folded away up front by attaching
//! to each world the base pairs of all worlds that reach it.
//!
//! [`saturation_oracle`] is an independent brute-force cross-check that
//! saturates explicit triples over a finite formula universe.

mod oracle;

pub use oracle::{saturation_oracle, OracleResult};

use crate::logics::{ConstantSpec, LogicId};
use crate::syntax::{unify, Formula, FormulaScheme, Term, TermScheme};
use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

/// Evidence base triples: this term justifies this formula at this world
/// (a 0-based index).
pub type EvidenceBase = BTreeSet<(Term, Formula, usize)>;

/// A set of formula schemes, kept canonical and deduplicated. A bare
/// metavariable scheme matches everything, so inserting one collapses the
/// set to just it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchemeSet {
    schemes: BTreeSet<FormulaScheme>,
}

impl SchemeSet {
    pub fn new() -> SchemeSet {
        SchemeSet::default()
    }

    pub fn insert(&mut self, scheme: FormulaScheme) {
        if self.is_universal() {
            return;
        }
        let scheme = scheme.canonical();
        if matches!(scheme, FormulaScheme::Meta(_)) {
            self.schemes.clear();
        }
        self.schemes.insert(scheme);
    }

    /// True when the set matches every formula.
    pub fn is_universal(&self) -> bool {
        self.schemes.iter().any(|s| matches!(s, FormulaScheme::Meta(_)))
    }

    pub fn contains_instance(&self, f: &Formula) -> bool {
        self.schemes.iter().any(|s| s.matches(f).is_some())
    }

    pub fn iter(&self) -> impl Iterator<Item = &FormulaScheme> {
        self.schemes.iter()
    }

    pub fn len(&self) -> usize {
        self.schemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemes.is_empty()
    }
}

impl FromIterator<FormulaScheme> for SchemeSet {
    fn from_iter<I: IntoIterator<Item = FormulaScheme>>(iter: I) -> SchemeSet {
        let mut out = SchemeSet::new();
        for s in iter {
            out.insert(s);
        }
        out
    }
}

/// Decides membership in the minimal evidence relation over one model
/// skeleton. Queries are memoized per term and world.
pub struct EvidenceEngine {
    logic: LogicId,
    cs: ConstantSpec,
    /// Per world: the base pairs visible there, with monotone propagation
    /// already applied.
    pairs: Vec<BTreeSet<(Term, Formula)>>,
    memo: RefCell<HashMap<(Term, usize), Rc<SchemeSet>>>,
}

impl EvidenceEngine {
    /// World indices in `r` and `base` must be below `num_worlds`.
    pub fn new(
        logic: LogicId,
        cs: ConstantSpec,
        num_worlds: usize,
        r: &BTreeSet<(usize, usize)>,
        base: &EvidenceBase,
    ) -> EvidenceEngine {
        let mut pairs: Vec<BTreeSet<(Term, Formula)>> = vec![BTreeSet::new(); num_worlds];
        for (t, f, w) in base {
            pairs[*w].insert((t.clone(), f.clone()));
        }
        if logic.spec().monotone_evidence {
            let raw = pairs.clone();
            for (v, slot) in pairs.iter_mut().enumerate() {
                for w in ancestors(num_worlds, r, v) {
                    slot.extend(raw[w].iter().cloned());
                }
            }
        }
        EvidenceEngine { logic, cs, pairs, memo: RefCell::new(HashMap::new()) }
    }

    pub fn logic(&self) -> LogicId {
        self.logic
    }

    /// The schemes whose instances `term` justifies at `world`.
    pub fn schemes(&self, term: &Term, world: usize) -> SchemeSet {
        (*self.schemes_rc(term, world)).clone()
    }

    /// Does `term` justify `formula` at `world`?
    pub fn contains(&self, term: &Term, formula: &Formula, world: usize) -> bool {
        self.schemes_rc(term, world).contains_instance(formula)
    }

    fn schemes_rc(&self, term: &Term, world: usize) -> Rc<SchemeSet> {
        let key = (term.clone(), world);
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let mut out = SchemeSet::new();
        for (t, f) in &self.pairs[world] {
            if t == term {
                out.insert(FormulaScheme::from(f));
            }
        }
        match term {
            Term::Var(_) => {}
            Term::Const(c) => {
                for s in self.cs.schemes_for(self.logic, *c) {
                    out.insert(s);
                }
            }
            Term::Sum(a, b) => {
                for side in [a, b] {
                    for s in self.schemes_rc(side, world).iter() {
                        out.insert(s.clone());
                    }
                }
            }
            Term::App(a, b) => {
                let left = self.schemes_rc(a, world);
                let right = self.schemes_rc(b, world);
                for s1 in left.iter() {
                    for s2 in right.iter() {
                        if let Some(conclusion) = app_contribution(s1, s2) {
                            out.insert(conclusion);
                        }
                    }
                }
            }
            Term::Bang(inner) => {
                if self.logic.spec().uses_j4 {
                    let body = TermScheme::from(inner.as_ref());
                    for s in self.schemes_rc(inner, world).iter() {
                        out.insert(FormulaScheme::just(body.clone(), s.clone()));
                    }
                } else {
                    let (depth, core) = term.strip_bangs();
                    if let Term::Const(c) = core {
                        for s in self.cs.schemes_for(self.logic, *c) {
                            out.insert(tower_scheme(*c, s, depth - 1));
                        }
                    }
                }
            }
        }
        let rc = Rc::new(out);
        self.memo.borrow_mut().insert(key, rc.clone());
        rc
    }
}

/// Worlds with a nonempty path to `v`, excluding `v` itself unless it lies
/// on a cycle.
fn ancestors(num_worlds: usize, r: &BTreeSet<(usize, usize)>, v: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<usize> = r.iter().filter(|(_, b)| *b == v).map(|(a, _)| *a).collect();
    while let Some(u) = stack.pop() {
        if seen.insert(u) {
            debug_assert!(u < num_worlds);
            stack.extend(r.iter().filter(|(_, b)| *b == u).map(|(a, _)| *a));
        }
    }
    seen
}

/// Scheme of the formula that `!^(levels+1) c` justifies when the
/// specification grants c the instances of `inner`: the depth `levels`
/// tower over `c : inner`.
fn tower_scheme(c: u32, inner: FormulaScheme, levels: usize) -> FormulaScheme {
    let mut term = TermScheme::Const(c);
    let mut f = FormulaScheme::just(term.clone(), inner);
    for _ in 0..levels {
        term = TermScheme::bang(term);
        f = FormulaScheme::just(term.clone(), f);
    }
    f
}

/// The application closure on schemes: the instances of the result are
/// exactly the formulas B such that some instance A -> B of `s1` has its
/// antecedent A an instance of `s2`. Returns None when no instance of `s1`
/// is an implication whose antecedent meets `s2`.
fn app_contribution(s1: &FormulaScheme, s2: &FormulaScheme) -> Option<FormulaScheme> {
    let (fmax, tmax) = s1.max_metas();
    let foff = fmax.map_or(0, |m| m + 1);
    let toff = tmax.map_or(0, |m| m + 1);
    let s2 = s2.shift_metas(foff, toff);
    let (fmax2, _) = s2.max_metas();
    let fresh = fmax2.map_or(foff, |m| m + 1);
    let (antecedent, consequent) = match s1 {
        FormulaScheme::Implies(a, b) => ((**a).clone(), (**b).clone()),
        // A bare scheme covers every implication, with unconstrained
        // conclusion.
        FormulaScheme::Meta(_) => (FormulaScheme::meta(fresh), FormulaScheme::meta(fresh + 1)),
        _ => return None,
    };
    let rho = unify(&antecedent, &s2)?;
    Some(rho.apply_formula(&consequent))
}

/// One-shot scheme query; see [`EvidenceEngine::schemes`].
pub fn evidence_schemes(
    logic: LogicId,
    cs: &ConstantSpec,
    num_worlds: usize,
    r: &BTreeSet<(usize, usize)>,
    base: &EvidenceBase,
    term: &Term,
    world: usize,
) -> SchemeSet {
    EvidenceEngine::new(logic, cs.clone(), num_worlds, r, base).schemes(term, world)
}

/// One-shot membership query; see [`EvidenceEngine::contains`].
#[allow(clippy::too_many_arguments)]
pub fn evidence_contains(
    logic: LogicId,
    cs: &ConstantSpec,
    num_worlds: usize,
    r: &BTreeSet<(usize, usize)>,
    base: &EvidenceBase,
    term: &Term,
    formula: &Formula,
    world: usize,
) -> bool {
    EvidenceEngine::new(logic, cs.clone(), num_worlds, r, base).contains(term, formula, world)
}
