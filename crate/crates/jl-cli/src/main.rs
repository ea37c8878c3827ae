//! `jl`: command-line front end for the justification logic toolkit.
//!
//! Exit codes: 0 for an affirmative verdict (ok, true, valid, satisfiable),
//! 1 for a negative one (false, countermodel, unsatisfiable, rejected proof,
//! exhausted fuel), 2 for usage, parse, and validation errors.

use clap::{Parser, Subcommand, ValueEnum};
use jl_core::decider::{decide_sat, decide_valid, SatVerdict, SearchBounds, ValidityVerdict};
use jl_core::evidence::{saturation_oracle, OracleResult};
use jl_core::logics::{ConstantSpec, LogicId};
use jl_core::proof::{check_proof, Proof};
use jl_core::semantics::{Evaluator, FinitaryModel};
use jl_core::syntax::{parse_formula, parse_term};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "jl")]
#[command(about = "Justification logic toolkit: parse, check proofs, evaluate, decide")]
#[command(version)]
struct Cli {
    /// Emit structured JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it in canonical form
    Parse {
        /// Formula text, e.g. "x1:p1 -> p1"
        formula: String,
    },
    /// Check a proof file and report the first rule violations
    CheckProof {
        /// Path to a proof JSON file
        path: PathBuf,
    },
    /// Evaluate a formula at a world of a model
    Eval {
        /// Path to a model JSON file
        #[arg(long)]
        model: PathBuf,

        /// World name from the model file
        #[arg(long)]
        world: String,

        /// Formula text
        formula: String,
    },
    /// Decide satisfiability or validity within bounded search
    Decide {
        /// Logic name: J, JD, JT, J4, JD4, or LP
        #[arg(long)]
        logic: String,

        /// "total" or a path to a constant specification JSON file
        #[arg(long, default_value = "total")]
        cs: String,

        /// What to decide
        #[arg(long, value_enum, default_value_t = Mode::Valid)]
        mode: Mode,

        /// Bound on worlds per candidate model (default 3)
        #[arg(long)]
        max_worlds: Option<usize>,

        /// Bound on evidence base triples (default: subterm count, capped at 6)
        #[arg(long)]
        max_base: Option<usize>,

        /// Formula text
        formula: String,
    },
    /// Answer an evidence query by reference saturation
    Oracle {
        /// Path to a model JSON file supplying logic, CS, worlds, R, and base
        #[arg(long)]
        model: PathBuf,

        /// Term text, e.g. "x1 + c2"
        #[arg(long)]
        term: String,

        /// World name from the model file
        #[arg(long)]
        world: String,

        /// Saturation round budget
        #[arg(long, default_value_t = 64)]
        fuel: usize,

        /// Formula text
        formula: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Sat,
    Valid,
}

fn main() -> ExitCode {
    // Die quietly when a pipe closes early, as in `jl decide ... | head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Parse { formula } => cmd_parse(&formula, cli.json),
        Command::CheckProof { path } => cmd_check_proof(&path, cli.json),
        Command::Eval { model, world, formula } => cmd_eval(&model, &world, &formula, cli.json),
        Command::Decide { logic, cs, mode, max_worlds, max_base, formula } => {
            cmd_decide(&logic, &cs, mode, max_worlds, max_base, &formula, cli.json)
        }
        Command::Oracle { model, term, world, fuel, formula } => {
            cmd_oracle(&model, &term, &world, fuel, &formula, cli.json)
        }
    }
}

fn cmd_parse(text: &str, as_json: bool) -> Result<u8, String> {
    let f = parse_formula(text).map_err(|e| e.to_string())?;
    if as_json {
        println!("{}", json!({ "formula": f.to_string() }));
    } else {
        println!("{f}");
    }
    Ok(0)
}

fn cmd_check_proof(path: &Path, as_json: bool) -> Result<u8, String> {
    let text = read(path)?;
    let proof = Proof::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    match check_proof(&proof) {
        Ok(()) => {
            let conclusion = proof.lines.last().map(|l| l.formula.to_string());
            if as_json {
                println!(
                    "{}",
                    json!({ "ok": true, "lines": proof.lines.len(), "conclusion": conclusion })
                );
            } else {
                match conclusion {
                    Some(c) => println!("ok: {} lines, concludes {c}", proof.lines.len()),
                    None => println!("ok: empty proof"),
                }
            }
            Ok(0)
        }
        Err(errors) => {
            if as_json {
                let errors: Vec<_> = errors
                    .iter()
                    .map(|e| json!({ "line": e.line, "message": e.kind.to_string() }))
                    .collect();
                println!("{}", json!({ "ok": false, "errors": errors }));
            } else {
                for e in &errors {
                    println!("line {}: {}", e.line, e.kind);
                }
            }
            Ok(1)
        }
    }
}

fn cmd_eval(model: &Path, world: &str, formula: &str, as_json: bool) -> Result<u8, String> {
    let model = load_model(model)?;
    let w = world_index(&model, world)?;
    let f = parse_formula(formula).map_err(|e| e.to_string())?;
    let ev = Evaluator::new(&model).map_err(|violations| {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        format!("invalid model: {}", lines.join("; "))
    })?;
    let value = ev.eval(&f, w);
    if as_json {
        println!("{}", json!({ "value": value }));
    } else {
        println!("{value}");
    }
    Ok(if value { 0 } else { 1 })
}

fn cmd_decide(
    logic: &str,
    cs: &str,
    mode: Mode,
    max_worlds: Option<usize>,
    max_base: Option<usize>,
    formula: &str,
    as_json: bool,
) -> Result<u8, String> {
    let logic: LogicId = logic.parse().map_err(|e: jl_core::logics::UnknownLogic| e.to_string())?;
    let cs = load_cs(cs, logic)?;
    let f = parse_formula(formula).map_err(|e| e.to_string())?;
    let defaults = SearchBounds::for_formula(&f);
    let bounds = SearchBounds {
        max_worlds: max_worlds.unwrap_or(defaults.max_worlds),
        max_base: max_base.unwrap_or(defaults.max_base),
    };
    if bounds.max_worlds < 1 || bounds.max_worlds > 7 {
        return Err("--max-worlds must be between 1 and 7".into());
    }
    if f.atoms().len() * bounds.max_worlds > 63 {
        return Err("too many atoms for this many worlds".into());
    }
    if matches!(logic, LogicId::JD | LogicId::JD4) && !cs.is_axiomatically_appropriate(logic) {
        eprintln!(
            "note: {logic} expects an axiomatically appropriate constant specification; \
             this one is not, so validity within bounds may overreach"
        );
    }
    match mode {
        Mode::Valid => match decide_valid(logic, &cs, &f, bounds) {
            ValidityVerdict::Valid { bounds } => {
                if as_json {
                    println!("{}", json!({ "verdict": "valid", "bounds": bounds_json(bounds) }));
                } else {
                    println!(
                        "valid within bounds (worlds <= {}, base <= {})",
                        bounds.max_worlds, bounds.max_base
                    );
                }
                Ok(0)
            }
            ValidityVerdict::Countermodel { model, world } => {
                let name = model.worlds[world].clone();
                if as_json {
                    println!(
                        "{}",
                        json!({
                            "verdict": "countermodel",
                            "world": name,
                            "model": model.to_json_value(),
                        })
                    );
                } else {
                    println!("countermodel at world {name}:");
                    println!("{}", serde_json::to_string_pretty(&model.to_json_value()).unwrap());
                }
                Ok(1)
            }
        },
        Mode::Sat => match decide_sat(logic, &cs, &f, bounds) {
            SatVerdict::Satisfiable { model, world } => {
                let name = model.worlds[world].clone();
                if as_json {
                    println!(
                        "{}",
                        json!({
                            "verdict": "satisfiable",
                            "world": name,
                            "model": model.to_json_value(),
                        })
                    );
                } else {
                    println!("satisfiable at world {name}:");
                    println!("{}", serde_json::to_string_pretty(&model.to_json_value()).unwrap());
                }
                Ok(0)
            }
            SatVerdict::Unsatisfiable { bounds } => {
                if as_json {
                    println!(
                        "{}",
                        json!({ "verdict": "unsatisfiable", "bounds": bounds_json(bounds) })
                    );
                } else {
                    println!(
                        "unsatisfiable within bounds (worlds <= {}, base <= {})",
                        bounds.max_worlds, bounds.max_base
                    );
                }
                Ok(1)
            }
        },
    }
}

fn cmd_oracle(
    model: &Path,
    term: &str,
    world: &str,
    fuel: usize,
    formula: &str,
    as_json: bool,
) -> Result<u8, String> {
    let model = load_model(model)?;
    let w = world_index(&model, world)?;
    let t = parse_term(term).map_err(|e| e.to_string())?;
    let f = parse_formula(formula).map_err(|e| e.to_string())?;
    let result = saturation_oracle(
        model.logic,
        &model.cs,
        model.worlds.len(),
        &model.r,
        &model.base,
        &t,
        &f,
        w,
        fuel,
    );
    let (text, code) = match result {
        OracleResult::Derived => ("true", 0),
        OracleResult::NotDerived => ("false", 1),
        OracleResult::FuelExhausted => ("fuel exhausted", 1),
    };
    if as_json {
        let tag = match result {
            OracleResult::Derived => "derived",
            OracleResult::NotDerived => "not_derived",
            OracleResult::FuelExhausted => "fuel_exhausted",
        };
        println!("{}", json!({ "result": tag }));
    } else {
        println!("{text}");
    }
    Ok(code)
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_model(path: &Path) -> Result<FinitaryModel, String> {
    let text = read(path)?;
    FinitaryModel::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn world_index(model: &FinitaryModel, name: &str) -> Result<usize, String> {
    model
        .worlds
        .iter()
        .position(|w| w == name)
        .ok_or_else(|| format!("no world named {name:?} in the model"))
}

fn load_cs(spec: &str, logic: LogicId) -> Result<ConstantSpec, String> {
    if spec == "total" {
        return Ok(ConstantSpec::Total);
    }
    let text = read(Path::new(spec))?;
    let cs = ConstantSpec::from_json(&text).map_err(|e| format!("{spec}: {e}"))?;
    cs.validate_for(logic).map_err(|e| format!("{spec}: {e}"))?;
    Ok(cs)
}

fn bounds_json(bounds: SearchBounds) -> serde_json::Value {
    json!({ "max_worlds": bounds.max_worlds, "max_base": bounds.max_base })
}
