//! Hilbert-style proofs and the proof checker.
//!
//! A proof is a list of lines, each carrying a formula and the rule that
//! licenses it:
//!
//! * `axiom:<scheme>` claims the formula instantiates that axiom scheme;
//! * `mp:<i>,<j>` cites an earlier line i proving `A -> B` and an earlier
//!   line j proving `A`, and concludes `B`;
//! * `an:c<k>,<n>,<A>` is axiom necessitation: if the constant specification
//!   lets `c_k` justify `A`, it concludes the tower of depth `n` over
//!   `c_k : A` (so n = 0 gives `c_k : A`, n = 2 gives
//!   `!!c_k : !c_k : c_k : A`). In logics with the j4 axiom the `!` operator
//!   makes the iterated form derivable, and the rule itself only admits
//!   n = 0 there.
//!
//! Line references are 1-based and must point strictly backwards.

use crate::logics::{ConstantSpec, CsError, CsFormatError, LogicId, SchemeId, UnknownLogic, UnknownScheme};
use crate::syntax::{Formula, ParseError, Term};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The rule justifying one proof line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom(SchemeId),
    /// `implication` proves `A -> B`, `antecedent` proves `A`.
    Mp { implication: usize, antecedent: usize },
    /// Necessitation tower of depth `bangs` over `c_constant : base`.
    An { constant: u32, bangs: usize, base: Formula },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub rule: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub logic: LogicId,
    pub cs: ConstantSpec,
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

/// The tower formula introduced by axiom necessitation: depth 0 is
/// `c : base`, and each further level wraps the previous formula in one
/// more `!`-prefixed justification of it.
pub fn an_formula(constant: u32, base: &Formula, bangs: usize) -> Formula {
    let mut term = Term::Const(constant);
    let mut f = Formula::just(term.clone(), base.clone());
    for _ in 0..bangs {
        term = Term::bang(term);
        f = Formula::just(term.clone(), f);
    }
    f
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ProofError {
    /// 1-based line number.
    pub line: usize,
    pub kind: ProofErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofErrorKind {
    #[error("{scheme} is not an axiom of {logic}")]
    SchemeNotInLogic { scheme: SchemeId, logic: LogicId },
    #[error("{formula} is not an instance of {scheme}")]
    NotAnInstance { scheme: SchemeId, formula: String },
    #[error("line reference {target} must name an earlier line")]
    BadReference { target: usize },
    #[error("line {implication} is not an implication")]
    NotAnImplication { implication: usize },
    #[error("line {antecedent} does not prove the antecedent of line {implication}")]
    AntecedentMismatch { implication: usize, antecedent: usize },
    #[error("line {implication} does not conclude this line's formula")]
    ConsequentMismatch { implication: usize },
    #[error("the constant specification does not let c{constant} justify {base}")]
    NotInCs { constant: u32, base: String },
    #[error("iterated necessitation (n = {bangs}) is not available in {logic}")]
    IteratedAnUnavailable { bangs: usize, logic: LogicId },
    #[error("formula is not the depth-{bangs} necessitation tower for c{constant}")]
    AnMismatch { constant: u32, bangs: usize },
}

/// Checks every line and reports the first violated condition of each bad
/// line, so one run diagnoses the whole proof.
pub fn check_proof(proof: &Proof) -> Result<(), Vec<ProofError>> {
    let spec = proof.logic.spec();
    let mut errors = Vec::new();
    for (idx, line) in proof.lines.iter().enumerate() {
        let num = idx + 1;
        let kind = match &line.rule {
            Justification::Axiom(sid) => {
                if !spec.has_axiom(*sid) {
                    Some(ProofErrorKind::SchemeNotInLogic { scheme: *sid, logic: proof.logic })
                } else if sid.scheme().matches(&line.formula).is_none() {
                    Some(ProofErrorKind::NotAnInstance {
                        scheme: *sid,
                        formula: line.formula.to_string(),
                    })
                } else {
                    None
                }
            }
            Justification::Mp { implication, antecedent } => {
                check_mp(proof, num, &line.formula, *implication, *antecedent)
            }
            Justification::An { constant, bangs, base } => {
                if spec.uses_j4 && *bangs > 0 {
                    Some(ProofErrorKind::IteratedAnUnavailable { bangs: *bangs, logic: proof.logic })
                } else if !proof.cs.contains(proof.logic, *constant, base) {
                    Some(ProofErrorKind::NotInCs { constant: *constant, base: base.to_string() })
                } else if line.formula != an_formula(*constant, base, *bangs) {
                    Some(ProofErrorKind::AnMismatch { constant: *constant, bangs: *bangs })
                } else {
                    None
                }
            }
        };
        if let Some(kind) = kind {
            errors.push(ProofError { line: num, kind });
        }
    }
    if errors.is_empty() { Ok(()) } else { Err(errors) }
}

fn check_mp(
    proof: &Proof,
    num: usize,
    conclusion: &Formula,
    implication: usize,
    antecedent: usize,
) -> Option<ProofErrorKind> {
    for target in [implication, antecedent] {
        if target == 0 || target >= num {
            return Some(ProofErrorKind::BadReference { target });
        }
    }
    let imp = &proof.lines[implication - 1].formula;
    let ant = &proof.lines[antecedent - 1].formula;
    match imp {
        Formula::Implies(a, b) => {
            if a.as_ref() != ant {
                Some(ProofErrorKind::AntecedentMismatch { implication, antecedent })
            } else if b.as_ref() != conclusion {
                Some(ProofErrorKind::ConsequentMismatch { implication })
            } else {
                None
            }
        }
        _ => Some(ProofErrorKind::NotAnImplication { implication }),
    }
}

// Wire format:
//   {
//     "logic": "LP",
//     "cs": {"kind": "total"},
//     "lines": [
//       {"formula": "p1 -> p2 -> p1", "rule": "axiom:cl1"},
//       {"formula": "c1 : (p1 -> p2 -> p1)", "rule": "an:c1,0,p1 -> p2 -> p1"},
//       {"formula": "p2 -> p1", "rule": "mp:1,4"}
//     ]
//   }

#[derive(Serialize, Deserialize)]
struct RawProof {
    logic: String,
    cs: serde_json::Value,
    lines: Vec<RawLine>,
}

#[derive(Serialize, Deserialize)]
struct RawLine {
    formula: String,
    rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    BadLogic(#[from] UnknownLogic),
    #[error("bad constant specification: {0}")]
    BadCs(#[from] CsFormatError),
    #[error("constant specification does not fit the logic: {0}")]
    InvalidCs(#[from] CsError),
    #[error("line {line}: bad formula: {error}")]
    BadFormula { line: usize, error: ParseError },
    #[error("line {line}: bad rule {rule:?}")]
    BadRule { line: usize, rule: String },
    #[error("line {line}: bad scheme id: {error}")]
    BadScheme { line: usize, error: UnknownScheme },
}

fn parse_rule(line: usize, rule: &str) -> Result<Justification, ProofFormatError> {
    let bad = || ProofFormatError::BadRule { line, rule: rule.to_string() };
    if let Some(rest) = rule.strip_prefix("axiom:") {
        let sid = rest.parse::<SchemeId>().map_err(|error| ProofFormatError::BadScheme { line, error })?;
        return Ok(Justification::Axiom(sid));
    }
    if let Some(rest) = rule.strip_prefix("mp:") {
        let (i, j) = rest.split_once(',').ok_or_else(bad)?;
        let implication = i.trim().parse::<usize>().map_err(|_| bad())?;
        let antecedent = j.trim().parse::<usize>().map_err(|_| bad())?;
        return Ok(Justification::Mp { implication, antecedent });
    }
    if let Some(rest) = rule.strip_prefix("an:") {
        // Formula syntax never contains commas, so two splits are safe.
        let mut parts = rest.splitn(3, ',');
        let cname = parts.next().ok_or_else(bad)?.trim();
        let n = parts.next().ok_or_else(bad)?.trim();
        let ftext = parts.next().ok_or_else(bad)?;
        let constant = crate::logics::constant_index(cname).map_err(|_| bad())?;
        let bangs = n.parse::<usize>().map_err(|_| bad())?;
        let base = ftext
            .parse::<Formula>()
            .map_err(|error| ProofFormatError::BadFormula { line, error })?;
        return Ok(Justification::An { constant, bangs, base });
    }
    Err(bad())
}

fn rule_string(rule: &Justification) -> String {
    match rule {
        Justification::Axiom(sid) => format!("axiom:{sid}"),
        Justification::Mp { implication, antecedent } => format!("mp:{implication},{antecedent}"),
        Justification::An { constant, bangs, base } => format!("an:c{constant},{bangs},{base}"),
    }
}

impl Proof {
    /// Parses and validates a proof file. The constant specification is
    /// checked against the logic, so a finite specification whose entries
    /// are not axiom instances is rejected here.
    pub fn from_json(text: &str) -> Result<Proof, ProofFormatError> {
        let raw: RawProof =
            serde_json::from_str(text).map_err(|e| ProofFormatError::Json(e.to_string()))?;
        let logic = raw.logic.parse::<LogicId>()?;
        let cs = ConstantSpec::from_json(&raw.cs.to_string())?;
        cs.validate_for(logic)?;
        let mut lines = Vec::new();
        for (idx, raw_line) in raw.lines.iter().enumerate() {
            let num = idx + 1;
            let formula = raw_line
                .formula
                .parse::<Formula>()
                .map_err(|error| ProofFormatError::BadFormula { line: num, error })?;
            let rule = parse_rule(num, &raw_line.rule)?;
            lines.push(ProofLine { formula, rule });
        }
        Ok(Proof { logic, cs, lines })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = RawProof {
            logic: self.logic.to_string(),
            cs: self.cs.to_json_value(),
            lines: self
                .lines
                .iter()
                .map(|l| RawLine { formula: l.formula.to_string(), rule: rule_string(&l.rule) })
                .collect(),
        };
        serde_json::to_value(raw).expect("proof serialization cannot fail")
    }
}
