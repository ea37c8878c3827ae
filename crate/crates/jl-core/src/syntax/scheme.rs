//! Schemes: formulas and terms with metavariables, plus matching and
//! unification.
//!
//! A scheme stands for the set of its ground instances. Metavariables are
//! two-sorted: formula metavariables may only be replaced by formula
//! schemes, term metavariables by term schemes. Axiom schemes such as
//! `t:(A -> B) -> (s:A -> t*s:B)` mix both sorts.
//!
//! Substitutions are kept normalized: no binding mentions a metavariable
//! that is itself bound, so applying a substitution twice equals applying
//! it once.

use super::{Formula, Term};
use std::collections::BTreeMap;

/// Metavariable identifier. Formula and term metavariables live in separate
/// namespaces, so `MetaId(0)` names different variables in each sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetaId(pub u32);

/// A term with optional term metavariables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermScheme {
    Const(u32),
    Var(u32),
    App(Box<TermScheme>, Box<TermScheme>),
    Sum(Box<TermScheme>, Box<TermScheme>),
    Bang(Box<TermScheme>),
    Meta(MetaId),
}

/// A formula with optional metavariables of both sorts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaScheme {
    Atom(u32),
    Not(Box<FormulaScheme>),
    Implies(Box<FormulaScheme>, Box<FormulaScheme>),
    Just(TermScheme, Box<FormulaScheme>),
    Meta(MetaId),
}

impl TermScheme {
    pub fn app(s: TermScheme, t: TermScheme) -> TermScheme {
        TermScheme::App(Box::new(s), Box::new(t))
    }

    pub fn sum(s: TermScheme, t: TermScheme) -> TermScheme {
        TermScheme::Sum(Box::new(s), Box::new(t))
    }

    pub fn bang(t: TermScheme) -> TermScheme {
        TermScheme::Bang(Box::new(t))
    }

    pub fn meta(i: u32) -> TermScheme {
        TermScheme::Meta(MetaId(i))
    }

    /// Converts back to a term; `None` if any metavariable remains.
    pub fn to_term(&self) -> Option<Term> {
        Some(match self {
            TermScheme::Const(i) => Term::Const(*i),
            TermScheme::Var(i) => Term::Var(*i),
            TermScheme::App(s, t) => Term::app(s.to_term()?, t.to_term()?),
            TermScheme::Sum(s, t) => Term::sum(s.to_term()?, t.to_term()?),
            TermScheme::Bang(t) => Term::bang(t.to_term()?),
            TermScheme::Meta(_) => return None,
        })
    }
}

impl FormulaScheme {
    pub fn not(a: FormulaScheme) -> FormulaScheme {
        FormulaScheme::Not(Box::new(a))
    }

    pub fn implies(a: FormulaScheme, b: FormulaScheme) -> FormulaScheme {
        FormulaScheme::Implies(Box::new(a), Box::new(b))
    }

    pub fn just(t: TermScheme, a: FormulaScheme) -> FormulaScheme {
        FormulaScheme::Just(t, Box::new(a))
    }

    pub fn meta(i: u32) -> FormulaScheme {
        FormulaScheme::Meta(MetaId(i))
    }

    /// Converts back to a formula; `None` if any metavariable remains.
    pub fn to_formula(&self) -> Option<Formula> {
        Some(match self {
            FormulaScheme::Atom(i) => Formula::Atom(*i),
            FormulaScheme::Not(a) => Formula::not(a.to_formula()?),
            FormulaScheme::Implies(a, b) => Formula::implies(a.to_formula()?, b.to_formula()?),
            FormulaScheme::Just(t, a) => Formula::just(t.to_term()?, a.to_formula()?),
            FormulaScheme::Meta(_) => return None,
        })
    }

    pub fn is_ground(&self) -> bool {
        match self {
            FormulaScheme::Atom(_) => true,
            FormulaScheme::Not(a) => a.is_ground(),
            FormulaScheme::Implies(a, b) => a.is_ground() && b.is_ground(),
            FormulaScheme::Just(t, a) => t.to_term().is_some() && a.is_ground(),
            FormulaScheme::Meta(_) => false,
        }
    }

    /// Matches the scheme against a ground formula. Returns the witnessing
    /// substitution, which instantiates every metavariable consistently.
    pub fn matches(&self, f: &Formula) -> Option<Substitution> {
        let mut subst = Substitution::new();
        if match_formula(self, f, &mut subst) {
            Some(subst)
        } else {
            None
        }
    }

    /// Largest metavariable id of each sort, `(formula, term)`.
    pub fn max_metas(&self) -> (Option<u32>, Option<u32>) {
        let mut fmax = None;
        let mut tmax = None;
        self.scan_metas(&mut fmax, &mut tmax);
        (fmax, tmax)
    }

    fn scan_metas(&self, fmax: &mut Option<u32>, tmax: &mut Option<u32>) {
        match self {
            FormulaScheme::Atom(_) => {}
            FormulaScheme::Not(a) => a.scan_metas(fmax, tmax),
            FormulaScheme::Implies(a, b) => {
                a.scan_metas(fmax, tmax);
                b.scan_metas(fmax, tmax);
            }
            FormulaScheme::Just(t, a) => {
                scan_term_metas(t, tmax);
                a.scan_metas(fmax, tmax);
            }
            FormulaScheme::Meta(MetaId(i)) => *fmax = Some(fmax.map_or(*i, |m: u32| m.max(*i))),
        }
    }

    /// Shifts every metavariable id by the given per-sort offsets. Used to
    /// rename two schemes apart before unification.
    pub fn shift_metas(&self, foff: u32, toff: u32) -> FormulaScheme {
        match self {
            FormulaScheme::Atom(i) => FormulaScheme::Atom(*i),
            FormulaScheme::Not(a) => FormulaScheme::not(a.shift_metas(foff, toff)),
            FormulaScheme::Implies(a, b) => {
                FormulaScheme::implies(a.shift_metas(foff, toff), b.shift_metas(foff, toff))
            }
            FormulaScheme::Just(t, a) => {
                FormulaScheme::just(shift_term_metas(t, toff), a.shift_metas(foff, toff))
            }
            FormulaScheme::Meta(MetaId(i)) => FormulaScheme::Meta(MetaId(i + foff)),
        }
    }

    /// Renames metavariables into first-occurrence order, separately per
    /// sort. Schemes that differ only by a renaming canonicalize equal.
    pub fn canonical(&self) -> FormulaScheme {
        let mut fmap = BTreeMap::new();
        let mut tmap = BTreeMap::new();
        canonical_formula(self, &mut fmap, &mut tmap)
    }
}

fn scan_term_metas(t: &TermScheme, tmax: &mut Option<u32>) {
    match t {
        TermScheme::Const(_) | TermScheme::Var(_) => {}
        TermScheme::App(s, u) | TermScheme::Sum(s, u) => {
            scan_term_metas(s, tmax);
            scan_term_metas(u, tmax);
        }
        TermScheme::Bang(s) => scan_term_metas(s, tmax),
        TermScheme::Meta(MetaId(i)) => *tmax = Some(tmax.map_or(*i, |m: u32| m.max(*i))),
    }
}

fn shift_term_metas(t: &TermScheme, toff: u32) -> TermScheme {
    match t {
        TermScheme::Const(i) => TermScheme::Const(*i),
        TermScheme::Var(i) => TermScheme::Var(*i),
        TermScheme::App(s, u) => TermScheme::app(shift_term_metas(s, toff), shift_term_metas(u, toff)),
        TermScheme::Sum(s, u) => TermScheme::sum(shift_term_metas(s, toff), shift_term_metas(u, toff)),
        TermScheme::Bang(s) => TermScheme::bang(shift_term_metas(s, toff)),
        TermScheme::Meta(MetaId(i)) => TermScheme::Meta(MetaId(i + toff)),
    }
}

fn canonical_formula(
    s: &FormulaScheme,
    fmap: &mut BTreeMap<MetaId, u32>,
    tmap: &mut BTreeMap<MetaId, u32>,
) -> FormulaScheme {
    match s {
        FormulaScheme::Atom(i) => FormulaScheme::Atom(*i),
        FormulaScheme::Not(a) => FormulaScheme::not(canonical_formula(a, fmap, tmap)),
        FormulaScheme::Implies(a, b) => {
            let a = canonical_formula(a, fmap, tmap);
            let b = canonical_formula(b, fmap, tmap);
            FormulaScheme::implies(a, b)
        }
        FormulaScheme::Just(t, a) => {
            let t = canonical_term(t, tmap);
            let a = canonical_formula(a, fmap, tmap);
            FormulaScheme::just(t, a)
        }
        FormulaScheme::Meta(m) => {
            let next = fmap.len() as u32;
            FormulaScheme::Meta(MetaId(*fmap.entry(*m).or_insert(next)))
        }
    }
}

fn canonical_term(t: &TermScheme, tmap: &mut BTreeMap<MetaId, u32>) -> TermScheme {
    match t {
        TermScheme::Const(i) => TermScheme::Const(*i),
        TermScheme::Var(i) => TermScheme::Var(*i),
        TermScheme::App(s, u) => {
            let s = canonical_term(s, tmap);
            let u = canonical_term(u, tmap);
            TermScheme::app(s, u)
        }
        TermScheme::Sum(s, u) => {
            let s = canonical_term(s, tmap);
            let u = canonical_term(u, tmap);
            TermScheme::sum(s, u)
        }
        TermScheme::Bang(s) => TermScheme::bang(canonical_term(s, tmap)),
        TermScheme::Meta(m) => {
            let next = tmap.len() as u32;
            TermScheme::Meta(MetaId(*tmap.entry(*m).or_insert(next)))
        }
    }
}

impl From<&Formula> for FormulaScheme {
    fn from(f: &Formula) -> FormulaScheme {
        match f {
            Formula::Atom(i) => FormulaScheme::Atom(*i),
            Formula::Not(a) => FormulaScheme::not(FormulaScheme::from(a.as_ref())),
            Formula::Implies(a, b) => {
                FormulaScheme::implies(FormulaScheme::from(a.as_ref()), FormulaScheme::from(b.as_ref()))
            }
            Formula::Just(t, a) => {
                FormulaScheme::just(TermScheme::from(t), FormulaScheme::from(a.as_ref()))
            }
        }
    }
}

impl From<&Term> for TermScheme {
    fn from(t: &Term) -> TermScheme {
        match t {
            Term::Const(i) => TermScheme::Const(*i),
            Term::Var(i) => TermScheme::Var(*i),
            Term::App(s, u) => TermScheme::app(TermScheme::from(s.as_ref()), TermScheme::from(u.as_ref())),
            Term::Sum(s, u) => TermScheme::sum(TermScheme::from(s.as_ref()), TermScheme::from(u.as_ref())),
            Term::Bang(s) => TermScheme::bang(TermScheme::from(s.as_ref())),
        }
    }
}

/// A two-sorted substitution mapping metavariables to schemes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    formula: BTreeMap<MetaId, FormulaScheme>,
    term: BTreeMap<MetaId, TermScheme>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn formula_binding(&self, m: MetaId) -> Option<&FormulaScheme> {
        self.formula.get(&m)
    }

    pub fn term_binding(&self, m: MetaId) -> Option<&TermScheme> {
        self.term.get(&m)
    }

    pub fn bind_formula(&mut self, m: MetaId, s: FormulaScheme) {
        let s = self.apply_formula(&s);
        self.apply_binding_f(m, &s);
        self.formula.insert(m, s);
    }

    pub fn bind_term(&mut self, m: MetaId, s: TermScheme) {
        let s = self.apply_term(&s);
        self.apply_binding_t(m, &s);
        self.term.insert(m, s);
    }

    // Rewrites existing bindings with the new one so the map stays
    // normalized (no bound metavariable occurs in any range scheme).
    fn apply_binding_f(&mut self, m: MetaId, s: &FormulaScheme) {
        let mut single = Substitution::new();
        single.formula.insert(m, s.clone());
        for v in self.formula.values_mut() {
            *v = single.apply_formula(v);
        }
    }

    fn apply_binding_t(&mut self, m: MetaId, s: &TermScheme) {
        let mut single = Substitution::new();
        single.term.insert(m, s.clone());
        for v in self.formula.values_mut() {
            *v = single.apply_formula(v);
        }
        for v in self.term.values_mut() {
            *v = single.apply_term(v);
        }
    }

    pub fn apply_formula(&self, s: &FormulaScheme) -> FormulaScheme {
        match s {
            FormulaScheme::Atom(i) => FormulaScheme::Atom(*i),
            FormulaScheme::Not(a) => FormulaScheme::not(self.apply_formula(a)),
            FormulaScheme::Implies(a, b) => {
                FormulaScheme::implies(self.apply_formula(a), self.apply_formula(b))
            }
            FormulaScheme::Just(t, a) => {
                FormulaScheme::just(self.apply_term(t), self.apply_formula(a))
            }
            FormulaScheme::Meta(m) => self.formula.get(m).cloned().unwrap_or_else(|| s.clone()),
        }
    }

    pub fn apply_term(&self, t: &TermScheme) -> TermScheme {
        match t {
            TermScheme::Const(i) => TermScheme::Const(*i),
            TermScheme::Var(i) => TermScheme::Var(*i),
            TermScheme::App(s, u) => TermScheme::app(self.apply_term(s), self.apply_term(u)),
            TermScheme::Sum(s, u) => TermScheme::sum(self.apply_term(s), self.apply_term(u)),
            TermScheme::Bang(s) => TermScheme::bang(self.apply_term(s)),
            TermScheme::Meta(m) => self.term.get(m).cloned().unwrap_or_else(|| t.clone()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.formula.is_empty() && self.term.is_empty()
    }
}

fn match_formula(s: &FormulaScheme, f: &Formula, subst: &mut Substitution) -> bool {
    match (s, f) {
        (FormulaScheme::Meta(m), _) => {
            let ground = FormulaScheme::from(f);
            match subst.formula_binding(*m) {
                Some(existing) => *existing == ground,
                None => {
                    subst.bind_formula(*m, ground);
                    true
                }
            }
        }
        (FormulaScheme::Atom(i), Formula::Atom(j)) => i == j,
        (FormulaScheme::Not(a), Formula::Not(b)) => match_formula(a, b, subst),
        (FormulaScheme::Implies(a1, b1), Formula::Implies(a2, b2)) => {
            match_formula(a1, a2, subst) && match_formula(b1, b2, subst)
        }
        (FormulaScheme::Just(t1, a1), Formula::Just(t2, a2)) => {
            match_term(t1, t2, subst) && match_formula(a1, a2, subst)
        }
        _ => false,
    }
}

fn match_term(s: &TermScheme, t: &Term, subst: &mut Substitution) -> bool {
    match (s, t) {
        (TermScheme::Meta(m), _) => {
            let ground = TermScheme::from(t);
            match subst.term_binding(*m) {
                Some(existing) => *existing == ground,
                None => {
                    subst.bind_term(*m, ground);
                    true
                }
            }
        }
        (TermScheme::Const(i), Term::Const(j)) => i == j,
        (TermScheme::Var(i), Term::Var(j)) => i == j,
        (TermScheme::App(s1, u1), Term::App(s2, u2)) | (TermScheme::Sum(s1, u1), Term::Sum(s2, u2)) => {
            match_term(s1, s2, subst) && match_term(u1, u2, subst)
        }
        (TermScheme::Bang(s1), Term::Bang(s2)) => match_term(s1, s2, subst),
        _ => false,
    }
}

/// Most general unifier of two schemes. Metavariable names are shared
/// between the inputs; rename apart first (see
/// [`FormulaScheme::shift_metas`]) when they come from unrelated sources.
/// Includes the occurs check, so cyclic constraints fail.
pub fn unify(a: &FormulaScheme, b: &FormulaScheme) -> Option<Substitution> {
    let mut subst = Substitution::new();
    if unify_formula(a, b, &mut subst) {
        Some(subst)
    } else {
        None
    }
}

fn unify_formula(a: &FormulaScheme, b: &FormulaScheme, subst: &mut Substitution) -> bool {
    let a = subst.apply_formula(a);
    let b = subst.apply_formula(b);
    match (&a, &b) {
        (FormulaScheme::Meta(m), _) => bind_formula_meta(*m, &b, subst),
        (_, FormulaScheme::Meta(m)) => bind_formula_meta(*m, &a, subst),
        (FormulaScheme::Atom(i), FormulaScheme::Atom(j)) => i == j,
        (FormulaScheme::Not(x), FormulaScheme::Not(y)) => unify_formula(x, y, subst),
        (FormulaScheme::Implies(a1, b1), FormulaScheme::Implies(a2, b2)) => {
            unify_formula(a1, a2, subst) && unify_formula(b1, b2, subst)
        }
        (FormulaScheme::Just(t1, a1), FormulaScheme::Just(t2, a2)) => {
            unify_term(t1, t2, subst) && unify_formula(a1, a2, subst)
        }
        _ => false,
    }
}

fn unify_term(a: &TermScheme, b: &TermScheme, subst: &mut Substitution) -> bool {
    let a = subst.apply_term(a);
    let b = subst.apply_term(b);
    match (&a, &b) {
        (TermScheme::Meta(m), _) => bind_term_meta(*m, &b, subst),
        (_, TermScheme::Meta(m)) => bind_term_meta(*m, &a, subst),
        (TermScheme::Const(i), TermScheme::Const(j)) => i == j,
        (TermScheme::Var(i), TermScheme::Var(j)) => i == j,
        (TermScheme::App(s1, u1), TermScheme::App(s2, u2))
        | (TermScheme::Sum(s1, u1), TermScheme::Sum(s2, u2)) => {
            unify_term(s1, s2, subst) && unify_term(u1, u2, subst)
        }
        (TermScheme::Bang(s1), TermScheme::Bang(s2)) => unify_term(s1, s2, subst),
        _ => false,
    }
}

fn bind_formula_meta(m: MetaId, s: &FormulaScheme, subst: &mut Substitution) -> bool {
    if let FormulaScheme::Meta(n) = s {
        if *n == m {
            return true;
        }
    }
    if formula_occurs(m, s) {
        return false;
    }
    subst.bind_formula(m, s.clone());
    true
}

fn bind_term_meta(m: MetaId, s: &TermScheme, subst: &mut Substitution) -> bool {
    if let TermScheme::Meta(n) = s {
        if *n == m {
            return true;
        }
    }
    if term_occurs(m, s) {
        return false;
    }
    subst.bind_term(m, s.clone());
    true
}

fn formula_occurs(m: MetaId, s: &FormulaScheme) -> bool {
    match s {
        FormulaScheme::Atom(_) => false,
        FormulaScheme::Not(a) => formula_occurs(m, a),
        FormulaScheme::Implies(a, b) => formula_occurs(m, a) || formula_occurs(m, b),
        FormulaScheme::Just(_, a) => formula_occurs(m, a),
        FormulaScheme::Meta(n) => *n == m,
    }
}

fn term_occurs(m: MetaId, s: &TermScheme) -> bool {
    match s {
        TermScheme::Const(_) | TermScheme::Var(_) => false,
        TermScheme::App(a, b) | TermScheme::Sum(a, b) => term_occurs(m, a) || term_occurs(m, b),
        TermScheme::Bang(a) => term_occurs(m, a),
        TermScheme::Meta(n) => *n == m,
    }
}
