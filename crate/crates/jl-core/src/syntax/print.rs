//! Canonical printing with minimal parentheses.
//!
//! `parse(format!("{f}"))` returns `f` unchanged; derived connectives never
//! appear because the parser already expanded them.

use super::{Formula, Term};
use std::fmt;

impl fmt::Display for Term {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, out, 0)
    }
}

// Term binding strength: 0 sum, 1 app, 2 bang operand.
fn write_term(t: &Term, out: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
    let needs_parens = match t {
        Term::Sum(..) => level >= 1,
        Term::App(..) => level >= 2,
        _ => false,
    };
    if needs_parens {
        out.write_str("(")?;
    }
    match t {
        Term::Const(i) => write!(out, "c{i}")?,
        Term::Var(i) => write!(out, "x{i}")?,
        Term::Sum(s, u) => {
            write_term(s, out, 0)?;
            out.write_str(" + ")?;
            write_term(u, out, 1)?;
        }
        Term::App(s, u) => {
            write_term(s, out, 1)?;
            out.write_str(" * ")?;
            write_term(u, out, 2)?;
        }
        Term::Bang(s) => {
            out.write_str("!")?;
            write_term(s, out, 2)?;
        }
    }
    if needs_parens {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, out, false)
    }
}

// Only implications ever need parentheses: they are the loosest connective
// and associate to the right.
fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>, tight: bool) -> fmt::Result {
    let needs_parens = tight && matches!(f, Formula::Implies(..));
    if needs_parens {
        out.write_str("(")?;
    }
    match f {
        Formula::Atom(i) => write!(out, "p{i}")?,
        Formula::Not(a) => {
            out.write_str("~")?;
            write_formula(a, out, true)?;
        }
        Formula::Implies(a, b) => {
            write_formula(a, out, true)?;
            out.write_str(" -> ")?;
            write_formula(b, out, false)?;
        }
        Formula::Just(t, a) => {
            write_term(t, out, 1)?;
            out.write_str(" : ")?;
            write_formula(a, out, true)?;
        }
    }
    if needs_parens {
        out.write_str(")")?;
    }
    Ok(())
}
