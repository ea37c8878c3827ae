//! Justification logic toolkit.
//!
//! Implements the family J, JD, JT, J4, JD4, LP of justification logics:
//!
//! * [`syntax`]: terms, formulas, a parser and printer for the ASCII grammar,
//!   and scheme matching/unification over metavariables.
//! * [`logics`]: the axiom scheme registry, frame conditions, and constant
//!   specifications (total, schematic, finite).
//! * [`proof`]: Hilbert-style proofs with modus ponens and axiom
//!   necessitation, plus a line-by-line checker.
//! * [`evidence`]: minimal admissible evidence relations over a finite base,
//!   with decidable membership via scheme sets, and a brute-force saturation
//!   oracle for cross-checking.
//! * [`semantics`]: finitary Fitting models, validation, and evaluation.
//! * [`decider`]: bounded satisfiability and validity search with
//!   countermodel extraction.

pub mod decider;
pub mod evidence;
pub mod logics;
pub mod proof;
pub mod semantics;
pub mod syntax;

pub use decider::{decide_sat, decide_valid, enumerate_models, SatVerdict, SearchBounds, ValidityVerdict};
pub use evidence::{
    evidence_contains, evidence_schemes, saturation_oracle, EvidenceBase, EvidenceEngine,
    OracleResult, SchemeSet,
};
pub use logics::{ConstantSpec, LogicId, LogicSpec, SchemeId};
pub use proof::{an_formula, check_proof, Justification, Proof, ProofLine};
pub use semantics::{valid_in_model, Evaluator, FinitaryModel};
pub use syntax::{parse_formula, parse_term, Formula, FormulaScheme, MetaId, Substitution, Term, TermScheme};
