//! Command-line front end.
//!
//! Each subcommand is an ordinary library function that returns an
//! [`Outcome`] (exit code plus the exact stdout/stderr bytes); the binary is
//! a thin wrapper that prints and exits. Results go to stdout, diagnostics
//! to stderr, and all output is deterministic byte-for-byte for a given
//! input: state names are sorted and JSON key order is fixed.
//!
//! Exit codes: 0 success (an empty satisfying set is data, not failure);
//! 1 parse or validation error; 2 formula outside the checkable fragment;
//! 3 refinement budget exceeded; 4 automaton not deterministic.

use crate::checker::{check, check_with_trace, CheckError};
use crate::equivalence::{self, coarsest_stable, quotient, Certificate, EquivError, Relation};
use crate::fixpoint::StateSet;
use crate::formula::{parse, Quantifier};
use crate::io::{self, IoError, RawModel};
use crate::mdp::{AlternationCheck, Mdp, ModelError};
use crate::oracle::{self, OracleError, OracleLimits, PathEvent};
use crate::rabin::{check_star, RabinAutomaton, RabinError};
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_QRCTL: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_NONDETERMINISTIC: i32 = 4;

/// Qualitative verification for finite Markov decision processes.
#[derive(Debug, Parser)]
#[command(name = "qrctl", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a formula; prints the satisfying states sorted by name.
    Check {
        /// Model description (JSON).
        model: PathBuf,
        /// Formula text, or a path to a file containing it.
        formula: String,
        /// Print the satisfying set of every quantified subformula to stderr.
        #[arg(long)]
        trace: bool,
        /// Emit a machine-readable JSON report instead of plain lines.
        #[arg(long)]
        json: bool,
    },
    /// Compute the coarsest stable partition for an equivalence relation.
    Equiv {
        /// Model description (JSON).
        model: PathBuf,
        /// One of: bisim, simclo, sure, pos_next, pos.
        relation: String,
        /// Include the minimized (quotient) model in the report.
        #[arg(long)]
        quotient: bool,
        /// Refinement budget: the largest block count explored by the
        /// until-splitter phase.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Evaluate a quantified automaton objective over infinite paths.
    Star {
        /// Model description (JSON).
        model: PathBuf,
        /// Quantifier token, e.g. Eas or Asure.
        quantifier: String,
        /// Deterministic automaton description (JSON).
        automaton: PathBuf,
        /// Automaton for the complement language (required for universal
        /// quantifiers, which are answered through their existential dual).
        #[arg(long)]
        complement: Option<PathBuf>,
        /// Emit a machine-readable JSON report instead of plain lines.
        #[arg(long)]
        json: bool,
    },
    /// Split every state's action choice into a separate turn-labeled step.
    Alternate {
        /// Model description (JSON).
        model: PathBuf,
    },
    /// Brute-force verdict table for a single temporal operator.
    Oracle {
        /// Model description (JSON).
        model: PathBuf,
        /// Temporal operator: X, U, or W.
        op: String,
        /// Operand propositions (or `true`): one for X, two for U/W.
        operands: Vec<String>,
        /// Absolute tolerance for numeric probability iteration.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Emit a machine-readable JSON report instead of plain lines.
        #[arg(long)]
        json: bool,
    },
}

/// The result of running one command: exit code and exact output bytes.
#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, stderr: String) -> Outcome {
        Outcome {
            exit_code: EXIT_OK,
            stdout,
            stderr,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Failure {
        Failure::invalid(e.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Failure {
        Failure::invalid(e.to_string())
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Failure {
        let code = match e {
            CheckError::NotQrctl => EXIT_NOT_QRCTL,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<EquivError> for Failure {
    fn from(e: EquivError) -> Failure {
        Failure {
            code: EXIT_BUDGET,
            message: e.to_string(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        Failure::invalid(e.to_string())
    }
}

impl From<RabinError> for Failure {
    fn from(e: RabinError) -> Failure {
        match e {
            RabinError::NotDeterministic(violations) => {
                let mut message = String::from("automaton is not deterministic:");
                for v in &violations {
                    let _ = write!(message, "\n  clause {}: {}", v.clause, v.detail);
                }
                Failure {
                    code: EXIT_NONDETERMINISTIC,
                    message,
                }
            }
            other => Failure::invalid(other.to_string()),
        }
    }
}

/// Runs a parsed command and captures its outcome.
pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check {
            model,
            formula,
            trace,
            json,
        } => cmd_check(model, formula, *trace, *json),
        Command::Equiv {
            model,
            relation,
            quotient,
            budget,
        } => cmd_equiv(model, relation, *quotient, *budget),
        Command::Star {
            model,
            quantifier,
            automaton,
            complement,
            json,
        } => cmd_star(model, quantifier, automaton, complement.as_deref(), *json),
        Command::Alternate { model } => cmd_alternate(model),
        Command::Oracle {
            model,
            op,
            operands,
            tolerance,
            json,
        } => cmd_oracle(model, op, operands, *tolerance, *json),
    };
    match result {
        Ok(outcome) => outcome,
        Err(f) => Outcome {
            exit_code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn load_model(path: &Path) -> Result<(Mdp, String), Failure> {
    let (m, warnings) = io::read_model(path)?;
    let mut stderr = String::new();
    for w in warnings {
        let _ = writeln!(stderr, "warning: state {}: {}", w.state, w.message);
    }
    Ok((m, stderr))
}

fn sorted_names(m: &Mdp, set: &StateSet) -> Vec<String> {
    let mut names = m.names_of(set);
    names.sort();
    names
}

fn name_lines(names: &[String]) -> String {
    let mut out = String::new();
    for name in names {
        let _ = writeln!(out, "{name}");
    }
    out
}

#[derive(Serialize)]
struct CheckReport {
    formula: String,
    satisfying: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceReport>>,
}

#[derive(Serialize)]
struct TraceReport {
    formula: String,
    states: Vec<String>,
}

fn cmd_check(model: &Path, formula_arg: &str, trace: bool, json: bool) -> Result<Outcome, Failure> {
    let (m, mut stderr) = load_model(model)?;
    // The formula argument is either the text itself or a file holding it.
    let text = if Path::new(formula_arg).is_file() {
        std::fs::read_to_string(formula_arg)
            .map_err(|e| Failure::invalid(format!("{}: {e}", formula_arg)))?
            .trim()
            .to_string()
    } else {
        formula_arg.to_string()
    };
    let f = parse(&text).map_err(|e| Failure::invalid(e.to_string()))?;
    let (sat, entries) = if trace {
        let (sat, entries) = check_with_trace(&m, &f)?;
        (sat, Some(entries))
    } else {
        (check(&m, &f)?, None)
    };
    let names = sorted_names(&m, &sat);
    let trace_reports = entries.map(|entries| {
        entries
            .iter()
            .map(|e| TraceReport {
                formula: e.formula.clone(),
                states: sorted_names(&m, &e.states),
            })
            .collect::<Vec<_>>()
    });
    if json {
        let report = CheckReport {
            formula: text,
            satisfying: names,
            trace: trace_reports,
        };
        Ok(Outcome::ok(to_json_line(&report), stderr))
    } else {
        if let Some(reports) = &trace_reports {
            for t in reports {
                let _ = writeln!(stderr, "trace: {} = {{{}}}", t.formula, t.states.join(", "));
            }
        }
        Ok(Outcome::ok(name_lines(&names), stderr))
    }
}

#[derive(Serialize)]
struct EquivReport {
    relation: String,
    blocks: Vec<Vec<String>>,
    certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient: Option<RawModel>,
}

fn cmd_equiv(
    model: &Path,
    relation: &str,
    want_quotient: bool,
    budget: Option<usize>,
) -> Result<Outcome, Failure> {
    let (m, stderr) = load_model(model)?;
    let relation = Relation::from_token(relation).ok_or_else(|| {
        Failure::invalid(format!(
            "unknown relation '{relation}' (expected bisim, simclo, sure, pos_next, or pos)"
        ))
    })?;
    let budget = budget.unwrap_or(equivalence::DEFAULT_BUDGET);
    let (partition, certificates) = coarsest_stable(&m, relation.ops(), budget)?;
    let report = EquivReport {
        relation: relation.token().to_string(),
        blocks: partition.block_names(&m),
        certificates,
        quotient: want_quotient.then(|| quotient(&m, &partition).to_raw()),
    };
    Ok(Outcome::ok(to_json_line(&report), stderr))
}

#[derive(Serialize)]
struct StarReport {
    quantifier: String,
    satisfying: Vec<String>,
}

fn cmd_star(
    model: &Path,
    quantifier: &str,
    automaton: &Path,
    complement: Option<&Path>,
    json: bool,
) -> Result<Outcome, Failure> {
    let (m, stderr) = load_model(model)?;
    let q = Quantifier::from_token(quantifier).ok_or_else(|| {
        Failure::invalid(format!("unknown quantifier token '{quantifier}'"))
    })?;
    let a = RabinAutomaton::from_raw(&io::read_raw_dra(automaton)?)?;
    let comp = complement
        .map(|p| Ok::<_, Failure>(RabinAutomaton::from_raw(&io::read_raw_dra(p)?)?))
        .transpose()?;
    let sat = check_star(&m, q, &a, comp.as_ref())?;
    let names = sorted_names(&m, &sat);
    if json {
        let report = StarReport {
            quantifier: q.token().to_string(),
            satisfying: names,
        };
        Ok(Outcome::ok(to_json_line(&report), stderr))
    } else {
        Ok(Outcome::ok(name_lines(&names), stderr))
    }
}

fn cmd_alternate(model: &Path) -> Result<Outcome, Failure> {
    let (m, mut stderr) = load_model(model)?;
    if matches!(m.check_alternating(), AlternationCheck::Accepted(_)) {
        let _ = writeln!(
            stderr,
            "warning: the model is already alternating; transforming anyway"
        );
    }
    let t = m.alternate()?;
    let _ = writeln!(
        stderr,
        "alternation added {} states ({} -> {})",
        t.n_states() - m.n_states(),
        m.n_states(),
        t.n_states()
    );
    Ok(Outcome::ok(format!("{}\n", io::model_to_json(&t)), stderr))
}

#[derive(Serialize)]
struct OracleReport {
    op: String,
    operands: Vec<String>,
    verdicts: Vec<OracleRow>,
}

#[derive(Serialize)]
struct OracleRow {
    quantifier: String,
    states: Vec<String>,
}

fn cmd_oracle(
    model: &Path,
    op: &str,
    operands: &[String],
    tolerance: Option<f64>,
    json: bool,
) -> Result<Outcome, Failure> {
    let (m, stderr) = load_model(model)?;
    let operand_set = |name: &str| -> Result<StateSet, Failure> {
        if name == "true" {
            return Ok(m.full_set());
        }
        let p = m
            .prop_index(name)
            .ok_or_else(|| Failure::invalid(format!("unknown proposition '{name}'")))?;
        Ok(m.states_with_prop(p))
    };
    let arity = if op == "X" { 1 } else { 2 };
    if operands.len() != arity {
        return Err(Failure::invalid(format!(
            "operator {op} takes {arity} operand(s), got {}",
            operands.len()
        )));
    }
    let event = match op {
        "X" => PathEvent::Next(operand_set(&operands[0])?),
        "U" => PathEvent::Until(operand_set(&operands[0])?, operand_set(&operands[1])?),
        "W" => PathEvent::WaitFor(operand_set(&operands[0])?, operand_set(&operands[1])?),
        _ => {
            return Err(Failure::invalid(format!(
                "unknown operator '{op}' (expected X, U, or W)"
            )))
        }
    };
    let limits = OracleLimits {
        tolerance: tolerance.unwrap_or(OracleLimits::default().tolerance),
        ..OracleLimits::default()
    };
    let table = oracle::qualitative_verdict(&m, &event, &limits)?;
    let rows: Vec<OracleRow> = Quantifier::ALL
        .iter()
        .map(|&q| OracleRow {
            quantifier: q.token().to_string(),
            states: sorted_names(&m, table.get(q)),
        })
        .collect();
    if json {
        let report = OracleReport {
            op: op.to_string(),
            operands: operands.to_vec(),
            verdicts: rows,
        };
        Ok(Outcome::ok(to_json_line(&report), stderr))
    } else {
        let mut out = String::new();
        for row in &rows {
            let _ = writeln!(out, "{}: {}", row.quantifier, row.states.join(" "));
        }
        Ok(Outcome::ok(out, stderr))
    }
}

fn to_json_line(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}
