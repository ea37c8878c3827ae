//! Finitary models and evaluation.
//!
//! A model carries finitely many worlds, an accessibility relation
//! satisfying the frame conditions of its logic, a finite evidence base
//! (whose generated minimal evidence relation interprets justification),
//! and a valuation of atoms. A justification assertion `t : A` holds at a
//! world when the minimal evidence relation lets t justify A there and A
//! holds at every accessible world.

use crate::evidence::{EvidenceBase, EvidenceEngine};
use crate::logics::{ConstantSpec, CsError, CsFormatError, LogicId, UnknownLogic};
use crate::syntax::{Formula, ParseError, Term};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitaryModel {
    pub logic: LogicId,
    pub cs: ConstantSpec,
    /// World names; indices into this vector identify worlds everywhere
    /// else.
    pub worlds: Vec<String>,
    pub r: BTreeSet<(usize, usize)>,
    pub base: EvidenceBase,
    /// Pairs (world, atom index) where the atom is true.
    pub valuation: BTreeSet<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelViolation {
    #[error("model has no worlds")]
    NoWorlds,
    #[error("{context}: world index {index} out of range")]
    OutOfRange { context: &'static str, index: usize },
    #[error("reflexive: missing edge ({world}, {world})")]
    NotReflexive { world: String },
    #[error("transitive: has ({a}, {b}) and ({b}, {c}) but not ({a}, {c})")]
    NotTransitive { a: String, b: String, c: String },
    #[error("serial: {world} has no successor")]
    NotSerial { world: String },
}

impl FinitaryModel {
    /// All ways the model fails to be a model of its logic: structural
    /// range errors and unmet frame conditions.
    pub fn violations(&self) -> Vec<ModelViolation> {
        let mut out = Vec::new();
        let n = self.worlds.len();
        if n == 0 {
            out.push(ModelViolation::NoWorlds);
        }
        for (a, b) in &self.r {
            for (context, w) in [("relation", *a), ("relation", *b)] {
                if w >= n {
                    out.push(ModelViolation::OutOfRange { context, index: w });
                }
            }
        }
        for (_, _, w) in &self.base {
            if *w >= n {
                out.push(ModelViolation::OutOfRange { context: "base", index: *w });
            }
        }
        for (w, _) in &self.valuation {
            if *w >= n {
                out.push(ModelViolation::OutOfRange { context: "valuation", index: *w });
            }
        }
        if !out.is_empty() {
            // Frame checks below assume indices are in range.
            return out;
        }
        let frame = self.logic.spec().frame;
        if frame.reflexive {
            for w in 0..n {
                if !self.r.contains(&(w, w)) {
                    out.push(ModelViolation::NotReflexive { world: self.worlds[w].clone() });
                }
            }
        }
        if frame.transitive {
            for (a, b) in &self.r {
                for (b2, c) in &self.r {
                    if b == b2 && !self.r.contains(&(*a, *c)) {
                        out.push(ModelViolation::NotTransitive {
                            a: self.worlds[*a].clone(),
                            b: self.worlds[*b].clone(),
                            c: self.worlds[*c].clone(),
                        });
                    }
                }
            }
        }
        if frame.serial {
            for w in 0..n {
                if !self.r.iter().any(|(a, _)| *a == w) {
                    out.push(ModelViolation::NotSerial { world: self.worlds[w].clone() });
                }
            }
        }
        out
    }
}

/// Evaluates formulas in one validated model. Construction fails with the
/// full violation list when the model does not satisfy its logic's frame
/// conditions.
pub struct Evaluator<'m> {
    model: &'m FinitaryModel,
    engine: EvidenceEngine,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m FinitaryModel) -> Result<Evaluator<'m>, Vec<ModelViolation>> {
        let violations = model.violations();
        if !violations.is_empty() {
            return Err(violations);
        }
        let engine = EvidenceEngine::new(
            model.logic,
            model.cs.clone(),
            model.worlds.len(),
            &model.r,
            &model.base,
        );
        Ok(Evaluator { model, engine })
    }

    pub fn model(&self) -> &'m FinitaryModel {
        self.model
    }

    /// Does the term justify the formula at the world, under the minimal
    /// evidence relation generated by the model's base?
    pub fn evidence(&self, term: &Term, formula: &Formula, world: usize) -> bool {
        self.engine.contains(term, formula, world)
    }

    pub fn eval(&self, f: &Formula, world: usize) -> bool {
        match f {
            Formula::Atom(i) => self.model.valuation.contains(&(world, *i)),
            Formula::Not(g) => !self.eval(g, world),
            Formula::Implies(a, b) => !self.eval(a, world) || self.eval(b, world),
            Formula::Just(t, g) => {
                self.engine.contains(t, g, world)
                    && self
                        .model
                        .r
                        .iter()
                        .filter(|(a, _)| *a == world)
                        .all(|(_, b)| self.eval(g, *b))
            }
        }
    }
}

/// True when the formula holds at every world of the model.
pub fn valid_in_model(model: &FinitaryModel, f: &Formula) -> Result<bool, Vec<ModelViolation>> {
    let ev = Evaluator::new(model)?;
    Ok((0..model.worlds.len()).all(|w| ev.eval(f, w)))
}

// Wire format:
//   {
//     "logic": "JT",
//     "cs": {"kind": "total"},
//     "worlds": ["w0", "w1"],
//     "R": [["w0", "w0"], ["w0", "w1"], ["w1", "w1"]],
//     "base": [{"term": "x1", "formula": "p1", "world": "w0"}],
//     "valuation": [{"world": "w0", "atom": "p1"}]
//   }

#[derive(Serialize, Deserialize)]
struct RawModel {
    logic: String,
    cs: serde_json::Value,
    worlds: Vec<String>,
    #[serde(rename = "R", default)]
    r: Vec<(String, String)>,
    #[serde(default)]
    base: Vec<RawBaseEntry>,
    #[serde(default)]
    valuation: Vec<RawValuationEntry>,
}

#[derive(Serialize, Deserialize)]
struct RawBaseEntry {
    term: String,
    formula: String,
    world: String,
}

#[derive(Serialize, Deserialize)]
struct RawValuationEntry {
    world: String,
    atom: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelFormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    BadLogic(#[from] UnknownLogic),
    #[error("bad constant specification: {0}")]
    BadCs(#[from] CsFormatError),
    #[error("constant specification does not fit the logic: {0}")]
    InvalidCs(#[from] CsError),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("duplicate world {0:?}")]
    DuplicateWorld(String),
    #[error("bad atom name {0:?}, expected p<i> with i >= 1")]
    BadAtom(String),
    #[error("bad term: {0}")]
    BadTerm(ParseError),
    #[error("bad formula: {0}")]
    BadFormula(ParseError),
}

fn atom_index(name: &str) -> Result<u32, ModelFormatError> {
    let bad = || ModelFormatError::BadAtom(name.to_string());
    let rest = name.strip_prefix('p').ok_or_else(bad)?;
    match rest.parse::<u32>() {
        Ok(i) if i >= 1 && rest.bytes().all(|b| b.is_ascii_digit()) => Ok(i),
        _ => Err(bad()),
    }
}

impl FinitaryModel {
    pub fn from_json(text: &str) -> Result<FinitaryModel, ModelFormatError> {
        let raw: RawModel =
            serde_json::from_str(text).map_err(|e| ModelFormatError::Json(e.to_string()))?;
        let logic = raw.logic.parse::<LogicId>()?;
        let cs = ConstantSpec::from_json(&raw.cs.to_string())?;
        cs.validate_for(logic)?;
        let mut index = std::collections::BTreeMap::new();
        for (i, name) in raw.worlds.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(ModelFormatError::DuplicateWorld(name.clone()));
            }
        }
        let world = |name: &str| {
            index.get(name).copied().ok_or_else(|| ModelFormatError::UnknownWorld(name.to_string()))
        };
        let mut r = BTreeSet::new();
        for (a, b) in &raw.r {
            r.insert((world(a)?, world(b)?));
        }
        let mut base = EvidenceBase::new();
        for e in &raw.base {
            let t = e.term.parse::<Term>().map_err(ModelFormatError::BadTerm)?;
            let f = e.formula.parse::<Formula>().map_err(ModelFormatError::BadFormula)?;
            base.insert((t, f, world(&e.world)?));
        }
        let mut valuation = BTreeSet::new();
        for e in &raw.valuation {
            valuation.insert((world(&e.world)?, atom_index(&e.atom)?));
        }
        Ok(FinitaryModel { logic, cs, worlds: raw.worlds, r, base, valuation })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let name = |w: usize| self.worlds[w].clone();
        let raw = RawModel {
            logic: self.logic.to_string(),
            cs: self.cs.to_json_value(),
            worlds: self.worlds.clone(),
            r: self.r.iter().map(|(a, b)| (name(*a), name(*b))).collect(),
            base: self
                .base
                .iter()
                .map(|(t, f, w)| RawBaseEntry {
                    term: t.to_string(),
                    formula: f.to_string(),
                    world: name(*w),
                })
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(w, a)| RawValuationEntry { world: name(*w), atom: format!("p{a}") })
                .collect(),
        };
        serde_json::to_value(raw).expect("model serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_term};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn model(logic: LogicId, n: usize, r: &[(usize, usize)]) -> FinitaryModel {
        FinitaryModel {
            logic,
            cs: ConstantSpec::Total,
            worlds: (0..n).map(|i| format!("w{i}")).collect(),
            r: r.iter().copied().collect(),
            base: EvidenceBase::new(),
            valuation: BTreeSet::new(),
        }
    }

    #[test]
    fn frame_violations() {
        assert!(model(LogicId::J, 2, &[(0, 1)]).violations().is_empty());
        let v = model(LogicId::JT, 2, &[(0, 0)]).violations();
        assert_eq!(v, vec![ModelViolation::NotReflexive { world: "w1".into() }]);
        assert_eq!(v[0].to_string(), "reflexive: missing edge (w1, w1)");

        let v = model(LogicId::JD, 2, &[(0, 1)]).violations();
        assert_eq!(v, vec![ModelViolation::NotSerial { world: "w1".into() }]);
        assert_eq!(v[0].to_string(), "serial: w1 has no successor");

        let v = model(LogicId::J4, 3, &[(0, 1), (1, 2)]).violations();
        assert_eq!(
            v,
            vec![ModelViolation::NotTransitive { a: "w0".into(), b: "w1".into(), c: "w2".into() }],
        );
        assert!(model(LogicId::J4, 3, &[(0, 1), (1, 2), (0, 2)]).violations().is_empty());
        assert!(model(LogicId::LP, 1, &[(0, 0)]).violations().is_empty());
        assert_eq!(model(LogicId::J, 0, &[]).violations(), vec![ModelViolation::NoWorlds]);
    }

    #[test]
    fn range_violations() {
        let mut m = model(LogicId::J, 1, &[(0, 2)]);
        m.base.insert((parse_term("x1").unwrap(), f("p1"), 5));
        let v = m.violations();
        assert!(v.contains(&ModelViolation::OutOfRange { context: "relation", index: 2 }));
        assert!(v.contains(&ModelViolation::OutOfRange { context: "base", index: 5 }));
        assert!(Evaluator::new(&m).is_err());
    }

    #[test]
    fn eval_boolean_connectives() {
        let mut m = model(LogicId::J, 1, &[]);
        m.valuation.insert((0, 1));
        let ev = Evaluator::new(&m).unwrap();
        assert!(ev.eval(&f("p1"), 0));
        assert!(!ev.eval(&f("p2"), 0));
        assert!(ev.eval(&f("~p2"), 0));
        assert!(ev.eval(&f("p2 -> p1"), 0));
        assert!(!ev.eval(&f("p1 -> p2"), 0));
        assert!(!ev.eval(&f("false"), 0));
        assert!(ev.eval(&f("p1 & ~p2"), 0));
    }

    #[test]
    fn justification_needs_evidence_and_successor_truth() {
        let mut m = model(LogicId::JT, 1, &[(0, 0)]);
        m.base.insert((parse_term("x1").unwrap(), f("p1"), 0));
        m.valuation.insert((0, 1));
        let ev = Evaluator::new(&m).unwrap();
        assert!(ev.eval(&f("x1 : p1"), 0));
        assert!(!ev.eval(&f("x2 : p1"), 0));

        let mut no_truth = m.clone();
        no_truth.valuation.clear();
        let ev = Evaluator::new(&no_truth).unwrap();
        assert!(!ev.eval(&f("x1 : p1"), 0));

        let mut no_evidence = m.clone();
        no_evidence.base.clear();
        let ev = Evaluator::new(&no_evidence).unwrap();
        assert!(!ev.eval(&f("x1 : p1"), 0));
    }

    #[test]
    fn justification_is_vacuous_over_no_successors() {
        // Without frame conditions a justified falsehood is satisfiable.
        let mut m = model(LogicId::J, 1, &[]);
        m.base.insert((parse_term("x1").unwrap(), f("false"), 0));
        let ev = Evaluator::new(&m).unwrap();
        assert!(ev.eval(&f("x1 : false"), 0));
    }

    #[test]
    fn validity_quantifies_over_worlds() {
        let mut m = model(LogicId::J, 2, &[(0, 1)]);
        m.valuation.insert((0, 1));
        assert_eq!(valid_in_model(&m, &f("p1 -> p1")), Ok(true));
        assert_eq!(valid_in_model(&m, &f("p1")), Ok(false));
    }

    #[test]
    fn axiom_instances_hold_in_models() {
        let mut m = model(LogicId::LP, 2, &[(0, 0), (0, 1), (1, 1)]);
        m.base.insert((parse_term("x1").unwrap(), f("p1"), 0));
        m.valuation.insert((0, 1));
        m.valuation.insert((1, 1));
        for inst in [
            "x1:p1 -> p1",
            "x1:p1 -> !x1:x1:p1",
            "x1:(p1 -> p2) -> (x2:p1 -> x1*x2:p2)",
            "x1:p1 | x2:p1 -> x1+x2:p1",
            "p1 -> p2 -> p1",
        ] {
            assert_eq!(valid_in_model(&m, &f(inst)), Ok(true), "{inst}");
        }
    }

    #[test]
    fn json_round_trip() {
        let mut m = model(LogicId::JT, 2, &[(0, 0), (1, 1), (0, 1)]);
        m.base.insert((parse_term("x1 + x2").unwrap(), f("p1 -> p2"), 1));
        m.valuation.insert((1, 3));
        let text = m.to_json_value().to_string();
        assert_eq!(FinitaryModel::from_json(&text).unwrap(), m);
    }

    #[test]
    fn json_errors() {
        let bad_world = r#"{"logic":"J","cs":{"kind":"total"},"worlds":["w0"],"R":[["w0","w9"]]}"#;
        assert!(matches!(
            FinitaryModel::from_json(bad_world),
            Err(ModelFormatError::UnknownWorld(w)) if w == "w9",
        ));
        let dup = r#"{"logic":"J","cs":{"kind":"total"},"worlds":["w0","w0"]}"#;
        assert!(matches!(FinitaryModel::from_json(dup), Err(ModelFormatError::DuplicateWorld(_))));
        let bad_atom =
            r#"{"logic":"J","cs":{"kind":"total"},"worlds":["w0"],"valuation":[{"world":"w0","atom":"q1"}]}"#;
        assert!(matches!(FinitaryModel::from_json(bad_atom), Err(ModelFormatError::BadAtom(_))));
    }
}
