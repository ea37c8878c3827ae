//! The six logics and their axiom schemes.
//!
//! Every logic extends the classical base cl1, cl2, cl3 plus the
//! justification schemes j2 (application) and j3 (sum):
//!
//! | logic | extra axioms | frame conditions        | necessitation |
//! |-------|--------------|-------------------------|---------------|
//! | J     |              |                         | iterated      |
//! | JD    | jd           | serial                  | iterated      |
//! | JT    | jt           | reflexive               | iterated      |
//! | J4    | j4           | transitive              | plain         |
//! | JD4   | jd, j4       | serial and transitive   | plain         |
//! | LP    | jt, j4       | reflexive and transitive| plain         |
//!
//! Logics with j4 internalize iteration through the `!` operator, so their
//! axiom necessitation rule introduces `c : A` only, and their evidence
//! relations are monotone along the accessibility relation. The logics
//! without j4 compensate with the iterated rule that introduces whole
//! towers `!!c : !c : c : A`.

use crate::syntax::{Formula, FormulaScheme, TermScheme};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use thiserror::Error;

/// One of the six supported logics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogicId {
    J,
    JD,
    JT,
    J4,
    JD4,
    LP,
}

impl LogicId {
    pub const ALL: [LogicId; 6] = [LogicId::J, LogicId::JD, LogicId::JT, LogicId::J4, LogicId::JD4, LogicId::LP];

    pub fn name(self) -> &'static str {
        match self {
            LogicId::J => "J",
            LogicId::JD => "JD",
            LogicId::JT => "JT",
            LogicId::J4 => "J4",
            LogicId::JD4 => "JD4",
            LogicId::LP => "LP",
        }
    }

    /// The static description of this logic.
    pub fn spec(self) -> &'static LogicSpec {
        &registry()[self as usize]
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown logic {0:?}, expected one of J, JD, JT, J4, JD4, LP")]
pub struct UnknownLogic(pub String);

impl FromStr for LogicId {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<LogicId, UnknownLogic> {
        let up = s.to_ascii_uppercase();
        LogicId::ALL
            .into_iter()
            .find(|l| l.name() == up)
            .ok_or_else(|| UnknownLogic(s.to_string()))
    }
}

/// Identifier of an axiom scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeId {
    Cl1,
    Cl2,
    Cl3,
    J2,
    J3,
    Jd,
    Jt,
    J4,
}

impl SchemeId {
    pub const ALL: [SchemeId; 8] = [
        SchemeId::Cl1,
        SchemeId::Cl2,
        SchemeId::Cl3,
        SchemeId::J2,
        SchemeId::J3,
        SchemeId::Jd,
        SchemeId::Jt,
        SchemeId::J4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Cl1 => "cl1",
            SchemeId::Cl2 => "cl2",
            SchemeId::Cl3 => "cl3",
            SchemeId::J2 => "j2",
            SchemeId::J3 => "j3",
            SchemeId::Jd => "jd",
            SchemeId::Jt => "jt",
            SchemeId::J4 => "j4",
        }
    }

    /// The scheme itself. Formula metavariables: 0 is A, 1 is B, 2 is C.
    /// Term metavariables: 0 is t, 1 is s.
    pub fn scheme(self) -> FormulaScheme {
        let a = || FormulaScheme::meta(0);
        let b = || FormulaScheme::meta(1);
        let c = || FormulaScheme::meta(2);
        let t = || TermScheme::meta(0);
        let s = || TermScheme::meta(1);
        let falsum = || FormulaScheme::from(&Formula::falsum());
        match self {
            // A -> (B -> A)
            SchemeId::Cl1 => FormulaScheme::implies(a(), FormulaScheme::implies(b(), a())),
            // (A -> (B -> C)) -> ((A -> B) -> (A -> C))
            SchemeId::Cl2 => FormulaScheme::implies(
                FormulaScheme::implies(a(), FormulaScheme::implies(b(), c())),
                FormulaScheme::implies(
                    FormulaScheme::implies(a(), b()),
                    FormulaScheme::implies(a(), c()),
                ),
            ),
            // (~A -> ~B) -> (B -> A)
            SchemeId::Cl3 => FormulaScheme::implies(
                FormulaScheme::implies(FormulaScheme::not(a()), FormulaScheme::not(b())),
                FormulaScheme::implies(b(), a()),
            ),
            // t:(A -> B) -> (s:A -> t*s:B)
            SchemeId::J2 => FormulaScheme::implies(
                FormulaScheme::just(t(), FormulaScheme::implies(a(), b())),
                FormulaScheme::implies(
                    FormulaScheme::just(s(), a()),
                    FormulaScheme::just(TermScheme::app(t(), s()), b()),
                ),
            ),
            // t:A | s:A -> t+s:A, with | expanded to its core form
            SchemeId::J3 => FormulaScheme::implies(
                FormulaScheme::implies(
                    FormulaScheme::not(FormulaScheme::just(t(), a())),
                    FormulaScheme::just(s(), a()),
                ),
                FormulaScheme::just(TermScheme::sum(t(), s()), a()),
            ),
            // t:false -> false
            SchemeId::Jd => FormulaScheme::implies(FormulaScheme::just(t(), falsum()), falsum()),
            // t:A -> A
            SchemeId::Jt => FormulaScheme::implies(FormulaScheme::just(t(), a()), a()),
            // t:A -> !t:t:A
            SchemeId::J4 => FormulaScheme::implies(
                FormulaScheme::just(t(), a()),
                FormulaScheme::just(
                    TermScheme::bang(t()),
                    FormulaScheme::just(t(), a()),
                ),
            ),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom scheme {0:?}")]
pub struct UnknownScheme(pub String);

impl FromStr for SchemeId {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<SchemeId, UnknownScheme> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownScheme(s.to_string()))
    }
}

/// Frame conditions a model's accessibility relation must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FrameConditions {
    pub reflexive: bool,
    pub transitive: bool,
    pub serial: bool,
}

/// Static description of one logic.
#[derive(Debug, Clone)]
pub struct LogicSpec {
    pub id: LogicId,
    /// Axiom schemes in registry order; `match_axiom` reports the first hit.
    pub axioms: Vec<SchemeId>,
    pub frame: FrameConditions,
    /// Whether the j4 scheme is present. Controls the shape of axiom
    /// necessitation and of the evidence closure conditions.
    pub uses_j4: bool,
    /// Evidence propagates along the accessibility relation exactly in the
    /// j4 logics.
    pub monotone_evidence: bool,
}

impl LogicSpec {
    /// Returns the first axiom scheme (in registry order) that the formula
    /// instantiates, if any.
    pub fn match_axiom(&self, f: &Formula) -> Option<SchemeId> {
        self.axioms.iter().copied().find(|sid| sid.scheme().matches(f).is_some())
    }

    pub fn has_axiom(&self, sid: SchemeId) -> bool {
        self.axioms.contains(&sid)
    }
}

fn registry() -> &'static [LogicSpec; 6] {
    static REGISTRY: OnceLock<[LogicSpec; 6]> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let base = [SchemeId::Cl1, SchemeId::Cl2, SchemeId::Cl3, SchemeId::J2, SchemeId::J3];
        let build = |id: LogicId, extra: &[SchemeId], frame: FrameConditions| {
            let uses_j4 = extra.contains(&SchemeId::J4);
            LogicSpec {
                id,
                axioms: base.iter().chain(extra).copied().collect(),
                frame,
                uses_j4,
                monotone_evidence: uses_j4,
            }
        };
        let none = FrameConditions::default();
        [
            build(LogicId::J, &[], none),
            build(LogicId::JD, &[SchemeId::Jd], FrameConditions { serial: true, ..none }),
            build(LogicId::JT, &[SchemeId::Jt], FrameConditions { reflexive: true, ..none }),
            build(LogicId::J4, &[SchemeId::J4], FrameConditions { transitive: true, ..none }),
            build(
                LogicId::JD4,
                &[SchemeId::Jd, SchemeId::J4],
                FrameConditions { serial: true, transitive: true, ..none },
            ),
            build(
                LogicId::LP,
                &[SchemeId::Jt, SchemeId::J4],
                FrameConditions { reflexive: true, transitive: true, ..none },
            ),
        ]
    })
}

/// A constant specification: which formulas each proof constant may be
/// asserted to justify by axiom necessitation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantSpec {
    /// Every constant justifies every axiom instance.
    Total,
    /// Each listed constant justifies all instances of its listed schemes.
    Schematic(BTreeMap<u32, BTreeSet<SchemeId>>),
    /// An explicit finite list of pairs. Entries must be axiom instances of
    /// the ambient logic; see [`ConstantSpec::validate_for`].
    Finite(Vec<(u32, Formula)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsError {
    #[error("constant specification entry c{constant} : {formula} is not an axiom instance of {logic}")]
    NotAnAxiom { constant: u32, formula: String, logic: LogicId },
    #[error("scheme {scheme} is not an axiom of {logic}")]
    SchemeNotInLogic { scheme: SchemeId, logic: LogicId },
}

impl ConstantSpec {
    /// Checks the specification against a logic: finite entries must be
    /// axiom instances, schematic entries must mention only axioms of the
    /// logic.
    pub fn validate_for(&self, logic: LogicId) -> Result<(), CsError> {
        let spec = logic.spec();
        match self {
            ConstantSpec::Total => Ok(()),
            ConstantSpec::Schematic(map) => {
                for ids in map.values() {
                    for sid in ids {
                        if !spec.has_axiom(*sid) {
                            return Err(CsError::SchemeNotInLogic { scheme: *sid, logic });
                        }
                    }
                }
                Ok(())
            }
            ConstantSpec::Finite(entries) => {
                for (c, f) in entries {
                    if spec.match_axiom(f).is_none() {
                        return Err(CsError::NotAnAxiom {
                            constant: *c,
                            formula: f.to_string(),
                            logic,
                        });
                    }
                }
                Ok(())
            }
        }
    }

    /// Does the specification let constant `c` justify formula `f`?
    pub fn contains(&self, logic: LogicId, c: u32, f: &Formula) -> bool {
        match self {
            ConstantSpec::Total => logic.spec().match_axiom(f).is_some(),
            ConstantSpec::Schematic(map) => map
                .get(&c)
                .is_some_and(|ids| ids.iter().any(|sid| sid.scheme().matches(f).is_some())),
            ConstantSpec::Finite(entries) => entries.iter().any(|(d, g)| *d == c && g == f),
        }
    }

    /// The schemes constant `c` justifies, as schemes. Finite entries come
    /// back as ground schemes. For `Total` this is every axiom of the logic.
    pub fn schemes_for(&self, logic: LogicId, c: u32) -> Vec<FormulaScheme> {
        match self {
            ConstantSpec::Total => logic.spec().axioms.iter().map(|sid| sid.scheme()).collect(),
            ConstantSpec::Schematic(map) => map
                .get(&c)
                .map(|ids| ids.iter().map(|sid| sid.scheme()).collect())
                .unwrap_or_default(),
            ConstantSpec::Finite(entries) => entries
                .iter()
                .filter(|(d, _)| *d == c)
                .map(|(_, f)| FormulaScheme::from(f))
                .collect(),
        }
    }

    /// A specification is axiomatically appropriate when every axiom of the
    /// logic is covered by some constant. Finite specifications never are:
    /// each scheme has infinitely many instances.
    pub fn is_axiomatically_appropriate(&self, logic: LogicId) -> bool {
        match self {
            ConstantSpec::Total => true,
            ConstantSpec::Schematic(map) => {
                let covered: BTreeSet<SchemeId> = map.values().flatten().copied().collect();
                logic.spec().axioms.iter().all(|sid| covered.contains(sid))
            }
            ConstantSpec::Finite(_) => false,
        }
    }
}

// Wire format:
//   {"kind":"total"}
//   {"kind":"schematic","map":{"c1":["jt","cl1"]}}
//   {"kind":"finite","entries":[{"constant":"c1","formula":"p1 -> p2 -> p1"}]}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawCs {
    Total,
    Schematic { map: BTreeMap<String, Vec<String>> },
    Finite { entries: Vec<RawCsEntry> },
}

#[derive(Serialize, Deserialize)]
struct RawCsEntry {
    constant: String,
    formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsFormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("bad constant name {0:?}, expected c<i> with i >= 1")]
    BadConstant(String),
    #[error("bad scheme id: {0}")]
    BadScheme(#[from] UnknownScheme),
    #[error("bad formula in entry: {0}")]
    BadFormula(#[from] crate::syntax::ParseError),
}

pub(crate) fn constant_index(name: &str) -> Result<u32, CsFormatError> {
    let rest = name.strip_prefix('c').ok_or_else(|| CsFormatError::BadConstant(name.to_string()))?;
    match rest.parse::<u32>() {
        Ok(i) if i >= 1 && rest.bytes().all(|b| b.is_ascii_digit()) => Ok(i),
        _ => Err(CsFormatError::BadConstant(name.to_string())),
    }
}

impl ConstantSpec {
    pub fn from_json(text: &str) -> Result<ConstantSpec, CsFormatError> {
        let raw: RawCs = serde_json::from_str(text).map_err(|e| CsFormatError::Json(e.to_string()))?;
        ConstantSpec::from_raw(raw)
    }

    fn from_raw(raw: RawCs) -> Result<ConstantSpec, CsFormatError> {
        Ok(match raw {
            RawCs::Total => ConstantSpec::Total,
            RawCs::Schematic { map } => {
                let mut out = BTreeMap::new();
                for (name, ids) in map {
                    let c = constant_index(&name)?;
                    let mut set = BTreeSet::new();
                    for id in ids {
                        set.insert(id.parse::<SchemeId>()?);
                    }
                    out.insert(c, set);
                }
                ConstantSpec::Schematic(out)
            }
            RawCs::Finite { entries } => {
                let mut out = Vec::new();
                for e in entries {
                    let c = constant_index(&e.constant)?;
                    let f: Formula = e.formula.parse()?;
                    out.push((c, f));
                }
                ConstantSpec::Finite(out)
            }
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = match self {
            ConstantSpec::Total => RawCs::Total,
            ConstantSpec::Schematic(map) => RawCs::Schematic {
                map: map
                    .iter()
                    .map(|(c, ids)| {
                        (format!("c{c}"), ids.iter().map(|sid| sid.name().to_string()).collect())
                    })
                    .collect(),
            },
            ConstantSpec::Finite(entries) => RawCs::Finite {
                entries: entries
                    .iter()
                    .map(|(c, f)| RawCsEntry { constant: format!("c{c}"), formula: f.to_string() })
                    .collect(),
            },
        };
        serde_json::to_value(raw).expect("constant spec serialization cannot fail")
    }
}
