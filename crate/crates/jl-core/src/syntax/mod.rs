//! Terms, formulas, and schemes.
//!
//! Justification terms are built from indexed constants `c1, c2, ...` and
//! variables `x1, x2, ...` with application `*`, sum `+`, and proof checker
//! `!`. Formulas are built from atoms `p1, p2, ...` with `~`, `->`, and the
//! justification assertion `t : A`.
//!
//! Conjunction, disjunction, equivalence, and `false` exist only in the
//! concrete syntax; the parser expands them into the core connectives, so
//! values of [`Formula`] never contain them.

mod parse;
mod print;
mod scheme;

pub use parse::{parse_formula, parse_term, ParseError};
pub use scheme::{unify, FormulaScheme, MetaId, Substitution, TermScheme};

use std::collections::BTreeSet;

/// A justification term. Indices are 1-based; the parser rejects index 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// Proof constant `c<i>`.
    Const(u32),
    /// Proof variable `x<i>`.
    Var(u32),
    /// Application `s * t`.
    App(Box<Term>, Box<Term>),
    /// Sum `s + t`.
    Sum(Box<Term>, Box<Term>),
    /// Proof checker `!t`.
    Bang(Box<Term>),
}

/// A formula of justification logic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// Propositional atom `p<i>`.
    Atom(u32),
    /// Negation `~A`.
    Not(Box<Formula>),
    /// Implication `A -> B`.
    Implies(Box<Formula>, Box<Formula>),
    /// Justification assertion `t : A`.
    Just(Term, Box<Formula>),
}

impl Term {
    pub fn app(s: Term, t: Term) -> Term {
        Term::App(Box::new(s), Box::new(t))
    }

    pub fn sum(s: Term, t: Term) -> Term {
        Term::Sum(Box::new(s), Box::new(t))
    }

    pub fn bang(t: Term) -> Term {
        Term::Bang(Box::new(t))
    }

    /// All subterms including the term itself.
    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.collect_subterms(&mut out);
        out
    }

    fn collect_subterms(&self, out: &mut BTreeSet<Term>) {
        out.insert(self.clone());
        match self {
            Term::Const(_) | Term::Var(_) => {}
            Term::App(s, t) | Term::Sum(s, t) => {
                s.collect_subterms(out);
                t.collect_subterms(out);
            }
            Term::Bang(t) => t.collect_subterms(out),
        }
    }

    /// Number of nodes in the term tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Const(_) | Term::Var(_) => 1,
            Term::App(s, t) | Term::Sum(s, t) => 1 + s.size() + t.size(),
            Term::Bang(t) => 1 + t.size(),
        }
    }

    /// Splits a tower of bangs: `!!c` yields `(2, c)`.
    pub fn strip_bangs(&self) -> (usize, &Term) {
        match self {
            Term::Bang(inner) => {
                let (n, core) = inner.strip_bangs();
                (n + 1, core)
            }
            _ => (0, self),
        }
    }
}

impl Formula {
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn just(t: Term, a: Formula) -> Formula {
        Formula::Just(t, Box::new(a))
    }

    /// The falsum abbreviation: `~(p1 -> p1)`.
    pub fn falsum() -> Formula {
        Formula::not(Formula::implies(Formula::Atom(1), Formula::Atom(1)))
    }

    /// All subformulas including the formula itself. Terms are not formulas,
    /// so `t : A` contributes itself, `A`, and the subformulas of `A`.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        out.insert(self.clone());
        match self {
            Formula::Atom(_) => {}
            Formula::Not(a) => a.collect_subformulas(out),
            Formula::Implies(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            Formula::Just(_, a) => a.collect_subformulas(out),
        }
    }

    /// All terms occurring in justification assertions, closed under subterm.
    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms(&self, out: &mut BTreeSet<Term>) {
        match self {
            Formula::Atom(_) => {}
            Formula::Not(a) => a.collect_terms(out),
            Formula::Implies(a, b) => {
                a.collect_terms(out);
                b.collect_terms(out);
            }
            Formula::Just(t, a) => {
                t.collect_subterms(out);
                a.collect_terms(out);
            }
        }
    }

    /// Indices of the atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Atom(i) => {
                out.insert(*i);
            }
            Formula::Not(a) => a.collect_atoms(out),
            Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Just(_, a) => a.collect_atoms(out),
        }
    }

    /// Number of nodes in the formula tree, counting term nodes.
    /// `x1 : p1` has size 3.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::Just(t, a) => 1 + t.size() + a.size(),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Formula, ParseError> {
        parse_formula(s)
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Term, ParseError> {
        parse_term(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn subformulas_of_justification() {
        let got = f("x1:p1 -> p1").subformulas();
        let want: BTreeSet<Formula> = ["p1", "x1:p1", "x1:p1 -> p1"].iter().map(|s| f(s)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn subformulas_do_not_include_terms() {
        let got = f("x1+x2 : p1").subformulas();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&f("p1")));
    }

    #[test]
    fn subterms_of_nested_justifications() {
        let got = f("!c1 : c1 : p1").subterms();
        let want: BTreeSet<Term> = [Term::Const(1), Term::bang(Term::Const(1))].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn subterms_close_under_subterm() {
        let got = f("x1 * x2 : p1").subterms();
        assert_eq!(got.len(), 3);
        assert!(got.contains(&Term::Var(1)));
        assert!(got.contains(&Term::Var(2)));
    }

    #[test]
    fn size_counts_term_nodes() {
        assert_eq!(f("p1").size(), 1);
        assert_eq!(f("~p1").size(), 2);
        assert_eq!(f("x1:p1").size(), 3);
        assert_eq!(f("x1*x2 : p1 -> p1").size(), 7);
    }

    #[test]
    fn strip_bangs_counts_prefix() {
        let t: Term = "!!c1".parse().unwrap();
        let (n, core) = t.strip_bangs();
        assert_eq!(n, 2);
        assert_eq!(core, &Term::Const(1));
    }
}
