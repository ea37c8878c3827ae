//! Recursive descent parser for the ASCII grammar.
//!
//! ```text
//! term     := app ("+" app)*            left associative
//! app      := bang ("*" bang)*          left associative
//! bang     := "!" bang | c<i> | x<i> | "(" term ")"
//!
//! formula  := or (("->" | "<->") formula)?     right associative
//! or       := and ("|" or)?
//! and      := unary ("&" and)?
//! unary    := "~" unary | term ":" unary | p<i> | "false" | "(" formula ")"
//! ```
//!
//! `~` and `t :` bind equally tightly and nest to the right, so
//! `~x1:p1` reads as `~(x1:p1)`. Derived connectives are expanded on the
//! spot: `A | B` becomes `~A -> B`, `A & B` becomes `~(A -> ~B)`,
//! `A <-> B` becomes the conjunction of both implications, and `false`
//! becomes `~(p1 -> p1)`. Indices start at 1.

use super::{Formula, Term};
use thiserror::Error;

/// Syntax error with the byte offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Atom(u32),
    Const(u32),
    Var(u32),
    False,
    Bang,
    Star,
    Plus,
    Colon,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    Iff,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '!' => toks.push((Tok::Bang, start)),
            '*' => toks.push((Tok::Star, start)),
            '+' => toks.push((Tok::Plus, start)),
            ':' => toks.push((Tok::Colon, start)),
            '~' => toks.push((Tok::Tilde, start)),
            '&' => toks.push((Tok::Amp, start)),
            '|' => toks.push((Tok::Pipe, start)),
            '(' => toks.push((Tok::LParen, start)),
            ')' => toks.push((Tok::RParen, start)),
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, start));
                    i += 1;
                } else {
                    return err(start, "expected '->'");
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    toks.push((Tok::Iff, start));
                    i += 2;
                } else {
                    return err(start, "expected '<->'");
                }
            }
            'a'..='z' | 'A'..='Z' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_alphanumeric() {
                    j += 1;
                }
                let word = &input[i..j];
                let tok = classify_word(word, start)?;
                toks.push((tok, start));
                i = j;
                continue;
            }
            _ => return err(start, format!("unexpected character {c:?}")),
        }
        i += 1;
    }
    Ok(toks)
}

fn classify_word(word: &str, pos: usize) -> Result<Tok, ParseError> {
    if word == "false" {
        return Ok(Tok::False);
    }
    let (head, digits) = word.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return err(pos, format!("unknown identifier {word:?}"));
    }
    let index: u32 = match digits.parse() {
        Ok(n) => n,
        Err(_) => return err(pos, format!("index too large in {word:?}")),
    };
    if index == 0 {
        return err(pos, "index 0 is not allowed, indices start at 1");
    }
    match head {
        "p" => Ok(Tok::Atom(index)),
        "c" => Ok(Tok::Const(index)),
        "x" => Ok(Tok::Var(index)),
        _ => err(pos, format!("unknown identifier {word:?}")),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|&(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            err(self.here(), format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or_level()?;
        match self.peek() {
            Some(Tok::Arrow) => {
                self.pos += 1;
                let rhs = self.formula()?;
                Ok(Formula::implies(lhs, rhs))
            }
            Some(Tok::Iff) => {
                self.pos += 1;
                let rhs = self.formula()?;
                let fwd = Formula::implies(lhs.clone(), rhs.clone());
                let back = Formula::implies(rhs, lhs);
                Ok(conj(fwd, back))
            }
            _ => Ok(lhs),
        }
    }

    fn or_level(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.and_level()?;
        if self.peek() == Some(Tok::Pipe) {
            self.pos += 1;
            let rhs = self.or_level()?;
            Ok(Formula::implies(Formula::not(lhs), rhs))
        } else {
            Ok(lhs)
        }
    }

    fn and_level(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.peek() == Some(Tok::Amp) {
            self.pos += 1;
            let rhs = self.and_level()?;
            Ok(conj(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Atom(i)) => {
                self.pos += 1;
                Ok(Formula::Atom(i))
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::falsum())
            }
            Some(Tok::Const(_) | Tok::Var(_) | Tok::Bang) => self.justification(),
            Some(Tok::LParen) => {
                // Could open a term ("(x1+x2) : A") or a formula. Try the
                // term reading first and fall back on failure.
                let save = self.pos;
                if let Ok(t) = self.term() {
                    if self.peek() == Some(Tok::Colon) {
                        self.pos += 1;
                        return Ok(Formula::just(t, self.unary()?));
                    }
                }
                self.pos = save;
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            _ => err(self.here(), "expected a formula"),
        }
    }

    fn justification(&mut self) -> Result<Formula, ParseError> {
        let t = self.term()?;
        self.expect(Tok::Colon, "':' after justification term")?;
        Ok(Formula::just(t, self.unary()?))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.term_app()?;
        while self.peek() == Some(Tok::Plus) {
            self.pos += 1;
            acc = Term::sum(acc, self.term_app()?);
        }
        Ok(acc)
    }

    fn term_app(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.term_bang()?;
        while self.peek() == Some(Tok::Star) {
            self.pos += 1;
            acc = Term::app(acc, self.term_bang()?);
        }
        Ok(acc)
    }

    fn term_bang(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Term::bang(self.term_bang()?))
            }
            Some(Tok::Const(i)) => {
                self.pos += 1;
                Ok(Term::Const(i))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Term::Var(i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => err(self.here(), "expected a term"),
        }
    }
}

/// `A & B` desugared: `~(A -> ~B)`.
fn conj(a: Formula, b: Formula) -> Formula {
    Formula::not(Formula::implies(a, Formula::not(b)))
}

/// Parses a formula, expanding `&`, `|`, `<->`, and `false`.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(input)?, pos: 0, end: input.len() };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "unexpected trailing input");
    }
    Ok(f)
}

/// Parses a justification term.
pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(input)?, pos: 0, end: input.len() };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "unexpected trailing input");
    }
    Ok(t)
}
