//! Command-line front end: expression evaluation, sign listings, the audit
//! harness, counterexample replay, and grid tables.

mod expr;

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use expr::{parse_program, Env, Value};
use surreal_core::audit::{run_audit, run_case, run_suite, CaseOutcome, CaseSpec, SUITES};
use surreal_core::logatomic::{la_rebuild, rho_of_position, Convention, Position};
use surreal_core::number::RunCursor;
use surreal_core::{set_run_budget, Error, Number};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "surreal", version, about = "Exact sign-sequence kernel for surreal numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConvFlag {
    /// Reading convention for the λ/ρ formulas.
    #[arg(long, default_value = "paper-verbatim")]
    convention: String,
}

impl ConvFlag {
    fn get(&self) -> Result<Convention, String> {
        Convention::from_name(&self.convention)
            .ok_or_else(|| format!("unknown convention {:?}", self.convention))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression (with optional `let` bindings).
    Eval {
        expr: String,
        /// Emit the value as JSON instead of notation.
        #[arg(long)]
        json: bool,
        /// Expand symbolic tails up to this many runs in the output.
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        conv: ConvFlag,
    },
    /// Compare two expressions; prints `lt`, `eq`, or `gt`.
    Cmp {
        a: String,
        b: String,
        #[command(flatten)]
        conv: ConvFlag,
    },
    /// List the leading sign runs of a number, tails included.
    Signs {
        expr: String,
        /// How many runs to print.
        #[arg(long, default_value_t = 16)]
        limit: usize,
        #[command(flatten)]
        conv: ConvFlag,
    },
    /// Run the formula audit and print its report.
    Audit {
        /// Restrict to one suite (default: all).
        #[arg(long)]
        suite: Option<String>,
        /// Convention name, or `all` for every convention.
        #[arg(long, default_value = "all")]
        convention: String,
        /// Corpus selection; only `default` is defined.
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Write the JSON report to this file (text summary still on stdout).
        #[arg(long)]
        report: Option<std::path::PathBuf>,
        /// Print the JSON report on stdout instead of the text summary.
        #[arg(long)]
        json: bool,
    },
    /// Re-run audit cases from a JSON file (a case, a list, or a report).
    Replay {
        file: std::path::PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate a map over a grid or interval family of positions.
    Table {
        /// Which map to tabulate.
        #[arg(long, default_value = "lambda")]
        map: String,
        /// Position family: `grid` or `interval`.
        #[arg(long, default_value = "grid")]
        family: String,
        /// Base point expression.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        /// Inclusive index range `I..J`.
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        n_range: String,
        /// Output format: `csv` or `json`.
        #[arg(long, default_value = "csv")]
        format: String,
        #[command(flatten)]
        conv: ConvFlag,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version output is not a usage error.
            if e.use_stderr() {
                let _ = write!(std::io::stderr(), "{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
    };
    if let Ok(text) = std::env::var("SURREAL_BUDGET") {
        match text.parse::<usize>() {
            Ok(n) if n > 0 => set_run_budget(n),
            _ => {
                eprintln!("SURREAL_BUDGET must be a positive integer, got {text:?}");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Eval(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

enum Failure {
    Usage(String),
    Eval(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Eval(other),
        }
    }
}

fn eval_value(text: &str, conv: Convention) -> Result<Value, Failure> {
    let program = parse_program(text)?;
    let mut env = Env::new(conv);
    Ok(env.eval_program(&program)?)
}

fn expand_runs(n: &Number, limit: usize) -> Result<(Vec<String>, bool), Failure> {
    let mut cursor = RunCursor::new(n.segments());
    let mut out = Vec::new();
    let mut truncated = false;
    for _ in 0..limit {
        match cursor.next_run() {
            Ok(Some(run)) => out.push(format!("{}{}", run.sign, run.len)),
            Ok(None) => return Ok((out, false)),
            Err(Error::BudgetExceeded(_)) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if !truncated {
        // One more probe decides whether the listing is complete.
        truncated = !matches!(cursor.next_run(), Ok(None));
    }
    Ok((out, truncated))
}

fn dispatch(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Eval { expr, json, limit, conv } => {
            let conv = conv.get().map_err(Failure::Usage)?;
            let value = eval_value(&expr, conv)?;
            match (&value, limit) {
                (Value::Num(n), Some(limit)) => {
                    let (runs, truncated) = expand_runs(n, limit)?;
                    let mut text = format!("[{}", runs.join(", "));
                    if truncated {
                        text.push_str(", ...");
                    }
                    text.push(']');
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "convention": conv.name(),
                                "runs": runs,
                                "truncated": truncated,
                            })
                        );
                    } else {
                        println!("{text}");
                    }
                }
                _ => {
                    if json {
                        let mut v = value.to_json();
                        if let Some(obj) = v.as_object_mut() {
                            obj.insert("convention".into(), conv.name().into());
                        }
                        println!("{v}");
                    } else {
                        println!("{}", value.render());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cmp { a, b, conv } => {
            let conv = conv.get().map_err(Failure::Usage)?;
            let va = eval_value(&a, conv)?;
            let vb = eval_value(&b, conv)?;
            let (Value::Num(na), Value::Num(nb)) = (&va, &vb) else {
                return Err(Failure::Usage("cmp expects two numbers".into()));
            };
            let ord = na.cmp_num(nb)?;
            println!("{}", Value::Cmp(ord).render());
            Ok(ExitCode::SUCCESS)
        }
        Command::Signs { expr, limit, conv } => {
            let conv = conv.get().map_err(Failure::Usage)?;
            let value = eval_value(&expr, conv)?;
            let Value::Num(n) = &value else {
                return Err(Failure::Usage("signs expects a number".into()));
            };
            let (runs, truncated) = expand_runs(n, limit)?;
            for r in &runs {
                println!("{r}");
            }
            if truncated {
                println!("...");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Audit { suite, convention, corpus, report, json } => {
            if corpus != "default" {
                return Err(Failure::Usage(format!(
                    "unknown corpus {corpus:?}; only `default` is defined"
                )));
            }
            if let Some(s) = &suite {
                if !SUITES.contains(&s.as_str()) {
                    return Err(Failure::Usage(format!(
                        "unknown suite {s:?}; expected one of {SUITES:?}"
                    )));
                }
            }
            let conventions: Vec<Convention> = if convention == "all" {
                Convention::ALL.to_vec()
            } else {
                vec![Convention::from_name(&convention).ok_or_else(|| {
                    Failure::Usage(format!("unknown convention {convention:?}"))
                })?]
            };
            let mut failures = 0usize;
            let mut budget = 0usize;
            let mut reports = Vec::new();
            for conv in &conventions {
                let rep = match &suite {
                    Some(s) => {
                        let suite_report = run_suite(s, conv);
                        surreal_core::audit::AuditReport {
                            schema_version: surreal_core::audit::SCHEMA_VERSION,
                            convention: conv.name().into(),
                            all_passed: suite_report.failed == 0
                                && suite_report.budget_exceeded == 0,
                            suites: vec![suite_report],
                        }
                    }
                    None => run_audit(conv),
                };
                for s in &rep.suites {
                    failures += s.failed;
                    budget += s.budget_exceeded;
                }
                if json {
                    println!("{}", rep.to_json());
                } else {
                    print!("{}", rep.to_text());
                }
                reports.push(rep.to_json());
            }
            if let Some(path) = report {
                let doc = serde_json::Value::Array(reports);
                let text = format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
                std::fs::write(&path, text)
                    .map_err(|e| Failure::Eval(Error::DomainError(e.to_string())))?;
            }
            Ok(audit_exit(failures, budget))
        }
        Command::Replay { file, json } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let specs = parse_replay_input(&text).map_err(Failure::Usage)?;
            let mut failures = 0usize;
            let mut budget = 0usize;
            for spec in specs {
                let outcome = run_case(&spec);
                match &outcome {
                    CaseOutcome::Pass => {}
                    CaseOutcome::Fail { .. } => failures += 1,
                    CaseOutcome::Budget { .. } => budget += 1,
                }
                if json {
                    println!(
                        "{}",
                        serde_json::json!({ "spec": spec, "outcome": outcome })
                    );
                } else {
                    let what = match outcome {
                        CaseOutcome::Pass => "pass".to_string(),
                        CaseOutcome::Fail { detail } => format!("FAIL {detail}"),
                        CaseOutcome::Budget { detail } => format!("BUDGET {detail}"),
                    };
                    println!("{} {:?} {:?}: {what}", spec.suite, spec.convention, spec.args);
                }
            }
            Ok(audit_exit(failures, budget))
        }
        Command::Table { map, family, a, n_range, format, conv } => {
            let conv = conv.get().map_err(Failure::Usage)?;
            let base_expr = expr::parse_expr(&a)?;
            let base = match Env::new(conv).eval(&base_expr)? {
                Value::Num(n) => n,
                _ => return Err(Failure::Usage("--a must evaluate to a number".into())),
            };
            let (lo, hi) = parse_range(&n_range).map_err(Failure::Usage)?;
            let mut rows = Vec::new();
            for n in lo..=hi {
                let pos = match family.as_str() {
                    "grid" => Position::Grid { a: base.clone(), n },
                    "interval" => Position::Interval { a: base.clone(), n, t: Number::zero() },
                    other => {
                        return Err(Failure::Usage(format!(
                            "unknown family {other:?}; expected grid or interval"
                        )))
                    }
                };
                let index = la_rebuild(&pos)?;
                let value = match map.as_str() {
                    "lambda" => surreal_core::logatomic::la_lambda(&index, &conv)?,
                    "rho" => rho_of_position(&pos, &conv)?,
                    other => {
                        return Err(Failure::Usage(format!(
                            "unknown map {other:?}; expected lambda or rho"
                        )))
                    }
                };
                rows.push((n, index, value));
            }
            match format.as_str() {
                "csv" => {
                    println!("n,index,value");
                    for (n, index, value) in rows {
                        println!("{n},{index},{value}");
                    }
                }
                "json" => {
                    let doc: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(n, index, value)| {
                            serde_json::json!({
                                "convention": conv.name(),
                                "n": n,
                                "index": index.to_string(),
                                "value": value.to_string(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(doc));
                }
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown format {other:?}; expected csv or json"
                    )))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn audit_exit(failures: usize, budget: usize) -> ExitCode {
    if budget > 0 {
        ExitCode::from(2)
    } else if failures > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

/// Accept a single case, a list of cases, or a whole report (its findings
/// are replayed).
fn parse_replay_input(text: &str) -> Result<Vec<CaseSpec>, String> {
    let doc: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    if let Ok(spec) = serde_json::from_value::<CaseSpec>(doc.clone()) {
        return Ok(vec![spec]);
    }
    if let Ok(specs) = serde_json::from_value::<Vec<CaseSpec>>(doc.clone()) {
        return Ok(specs);
    }
    // A report (or list of reports): replay every recorded finding.
    let mut out = Vec::new();
    let reports = match &doc {
        serde_json::Value::Array(items) => items.clone(),
        other => vec![other.clone()],
    };
    for rep in reports {
        let Some(suites) = rep.get("suites").and_then(|s| s.as_array()) else {
            return Err("expected a case, a list of cases, or an audit report".into());
        };
        for suite in suites {
            let Some(findings) = suite.get("findings").and_then(|f| f.as_array()) else {
                continue;
            };
            for finding in findings {
                let spec = finding
                    .get("spec")
                    .cloned()
                    .ok_or_else(|| "finding without spec".to_string())?;
                let spec: CaseSpec = serde_json::from_value(spec)
                    .map_err(|e| format!("bad case spec: {e}"))?;
                out.push(spec);
            }
        }
    }
    Ok(out)
}

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("bad range {text:?}; expected I..J"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok((lo, hi))
}
