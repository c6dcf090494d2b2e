//! `g2lap` — left-invariant G2-structure calculus and Laplacian soliton
//! search on 7-dimensional nilpotent Lie algebras.
//!
//! Commands: `catalog list`, `check`, `soliton`, `flow`, `report tables`.
//! Exit codes: 0 success, 1 no soliton / table mismatch, 2 parse or usage
//! error, 3 input form not positive, 4 positivity lost along the flow,
//! 5 closedness failure along or entering the flow.

mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use g2lap_core::catalog;
use g2lap_core::error::Error;
use g2lap_core::fileio;
use g2lap_core::flow;
use g2lap_core::scalar::{Mode, Scalar};
use g2lap_core::soliton;
use g2lap_core::{KForm, LieAlgebra};

use report::{render_check, render_soliton, table_diffs, CheckReport, TableReport};

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_POSITIVE: u8 = 3;
const EXIT_POSITIVITY_LOST: u8 = 4;
const EXIT_CLOSEDNESS: u8 = 5;

#[derive(Parser)]
#[command(name = "g2lap", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect the built-in algebra catalog.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Positivity, closedness, torsion, Laplacian and curvature of a form.
    Check {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the structure is a semi-algebraic Laplacian soliton.
    Soliton {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the Laplacian flow numerically.
    Flow {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long = "t-max", default_value_t = 1.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, value_enum, default_value_t = FlowFormat::Csv)]
        format: FlowFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduction reports.
    Report {
        #[command(subcommand)]
        cmd: ReportCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List the built-in algebras; JSON format emits the full definitions.
    List {
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Recompute the reference soliton tables and diff against the catalog.
    Tables {
        /// Restrict to one algebra (n2…n7).
        #[arg(long)]
        only: Option<String>,
        /// Corrupt one expected value (`<algebra>.<quantity>`), harness
        /// self-test only.
        #[arg(long, hide = true)]
        corrupt: Option<String>,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Built-in algebra name (n1…n12).
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Problem file with {algebra, form}.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Parameter overrides `k=v,...` for a built-in family.
    #[arg(long, requires = "builtin")]
    params: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlowFormat {
    Csv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::NotPositive => EXIT_NOT_POSITIVE,
        Error::PositivityLost(_) => EXIT_POSITIVITY_LOST,
        Error::NotClosed | Error::ClosednessDrift(_) => EXIT_CLOSEDNESS,
        _ => EXIT_PARSE,
    }
}

fn resolve_mode(cli_mode: Option<ModeArg>) -> Result<Mode, Failure> {
    if let Some(m) = cli_mode {
        return Ok(match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        });
    }
    match std::env::var("G2_MODE") {
        Ok(v) => match v.as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(fail(
                EXIT_PARSE,
                format!("G2_MODE must be `exact` or `float`, got `{other}`"),
            )),
        },
        Err(_) => Ok(Mode::Exact),
    }
}

fn parse_params(
    name: &str,
    overrides: Option<&str>,
    mode: Mode,
) -> Result<BTreeMap<String, Scalar>, Failure> {
    let mut params = catalog::default_params(name).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    if let Some(text) = overrides {
        for piece in text.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let Some((k, v)) = piece.split_once('=') else {
                return Err(fail(
                    EXIT_PARSE,
                    format!("bad parameter `{piece}`, want k=v"),
                ));
            };
            if !params.contains_key(k.trim()) {
                return Err(fail(
                    EXIT_PARSE,
                    format!("{name} has no parameter `{}`", k.trim()),
                ));
            }
            let value = Scalar::parse(v.trim(), Mode::Exact)
                .map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
            params.insert(k.trim().to_string(), value);
        }
    }
    Ok(params
        .into_iter()
        .map(|(k, v)| match mode {
            Mode::Exact => (k, v),
            Mode::Float => (k, v.to_float()),
        })
        .collect())
}

/// Materialize the problem: algebra plus candidate 3-form.
fn load_source(src: &Source, mode: Mode) -> Result<(LieAlgebra, KForm), Failure> {
    match (&src.builtin, &src.file) {
        (Some(name), None) => {
            let params = parse_params(name, src.params.as_deref(), mode)?;
            let entry = catalog::get(name, &params, mode)
                .map_err(|e| fail(error_exit_code(&e), e.to_string()))?;
            let form = entry.form.ok_or_else(|| {
                fail(
                    EXIT_PARSE,
                    format!("{name} has no candidate 3-form in the catalog"),
                )
            })?;
            Ok((entry.algebra, form))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
            let problem =
                fileio::problem_from_str(&text).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
            let algebra = fileio::algebra_from_file(&problem.algebra, mode)
                .map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
            if problem.form.is_empty() {
                return Err(fail(EXIT_PARSE, "problem file provides no 3-form"));
            }
            let form = fileio::form_from_file(&problem.form, mode)
                .map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
            if form.degree() != 3 {
                return Err(fail(
                    EXIT_PARSE,
                    format!("expected a 3-form, got degree {}", form.degree()),
                ));
            }
            Ok((algebra, form))
        }
        _ => Err(fail(
            EXIT_PARSE,
            "exactly one of --builtin or --file required",
        )),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display()))),
        None => {
            // tolerate a closed pipe (e.g. `g2lap ... | head`)
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Catalog { cmd } => match cmd {
            CatalogCmd::List { format, out } => cmd_catalog_list(format, &out),
        },
        Cmd::Check {
            src,
            mode,
            format,
            out,
        } => cmd_check(&src, mode, format, &out),
        Cmd::Soliton {
            src,
            mode,
            format,
            out,
        } => cmd_soliton(&src, mode, format, &out),
        Cmd::Flow {
            src,
            mode,
            t_max,
            dt,
            format,
            out,
        } => cmd_flow(&src, mode, t_max, dt, format, &out),
        Cmd::Report { cmd } => match cmd {
            ReportCmd::Tables {
                only,
                corrupt,
                format,
                out,
            } => cmd_report_tables(only.as_deref(), corrupt.as_deref(), format, &out),
        },
    }
}

fn cmd_catalog_list(format: TextFormat, out: &Option<PathBuf>) -> Result<u8, Failure> {
    match format {
        TextFormat::Json => {
            let export = fileio::catalog_export(Mode::Exact);
            let text = serde_json::to_string_pretty(&export).expect("serializable");
            emit(out, &text)?;
        }
        TextFormat::Text => {
            let mut lines = Vec::new();
            for name in catalog::NAMES {
                let entry = catalog::table_entry(name, Mode::Exact)
                    .map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
                let params = catalog::default_params(name).expect("known name");
                let param_text = if params.is_empty() {
                    String::from("-")
                } else {
                    params
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                let closed = entry.closedness_constraint.unwrap_or("-");
                let soliton = entry.soliton_constraint.unwrap_or("-");
                let form = if entry.form.is_some() {
                    "yes"
                } else {
                    "none provided"
                };
                lines.push(format!(
                    "{name:<4} form: {form:<14} closed iff: {closed:<24} soliton locus: {soliton:<28} defaults: {param_text}"
                ));
            }
            emit(out, &lines.join("\n"))?;
        }
    }
    Ok(0)
}

fn cmd_check(
    src: &Source,
    mode: Option<ModeArg>,
    format: TextFormat,
    out: &Option<PathBuf>,
) -> Result<u8, Failure> {
    let mode = resolve_mode(mode)?;
    let (algebra, form) = load_source(src, mode)?;
    let report = CheckReport::build(&algebra, &form)
        .map_err(|e| fail(error_exit_code(&e), e.to_string()))?;
    if !report.is_positive() {
        // still emit the verdict before failing
        let text = render_check(&report, format == TextFormat::Json);
        emit(out, &text)?;
        return Ok(EXIT_NOT_POSITIVE);
    }
    let text = render_check(&report, format == TextFormat::Json);
    emit(out, &text)?;
    Ok(0)
}

fn cmd_soliton(
    src: &Source,
    mode: Option<ModeArg>,
    format: TextFormat,
    out: &Option<PathBuf>,
) -> Result<u8, Failure> {
    let mode = resolve_mode(mode)?;
    let (algebra, form) = load_source(src, mode)?;
    match soliton::solve_soliton(&algebra, &form) {
        Ok(Some(sol)) => {
            let text = render_soliton(&sol, format == TextFormat::Json);
            emit(out, &text)?;
            Ok(0)
        }
        Ok(None) => {
            emit(
                out,
                "no semi-algebraic soliton: the linear system is inconsistent",
            )?;
            Ok(EXIT_MISMATCH)
        }
        Err(Error::NotClosed) => {
            emit(
                out,
                "form is not closed, hence not a closed Laplacian soliton",
            )?;
            Ok(EXIT_MISMATCH)
        }
        Err(e) => Err(fail(error_exit_code(&e), e.to_string())),
    }
}

fn cmd_flow(
    src: &Source,
    mode: Option<ModeArg>,
    t_max: f64,
    dt: f64,
    format: FlowFormat,
    out: &Option<PathBuf>,
) -> Result<u8, Failure> {
    if dt <= 0.0 || t_max < 0.0 {
        return Err(fail(EXIT_PARSE, "need dt > 0 and t-max >= 0"));
    }
    let mode = resolve_mode(mode)?;
    let (algebra, form) = load_source(src, mode)?;
    let traj = flow::integrate(&algebra, &form, t_max, dt)
        .map_err(|e| fail(error_exit_code(&e), e.to_string()))?;
    match format {
        FlowFormat::Csv => {
            let text = report::trajectory_csv(&traj);
            emit(out, &text)?;
        }
        FlowFormat::Json => {
            let fit = flow::fit_scaling(&traj).ok();
            let text = report::flow_summary_json(&traj, fit.as_ref());
            emit(out, &text)?;
        }
    }
    Ok(0)
}

fn cmd_report_tables(
    only: Option<&str>,
    corrupt: Option<&str>,
    format: TextFormat,
    out: &Option<PathBuf>,
) -> Result<u8, Failure> {
    let names: Vec<&str> = match only {
        Some(name) => {
            if !catalog::expected_rows().iter().any(|r| r.name == name) {
                return Err(fail(
                    EXIT_PARSE,
                    format!("--only wants one of n2…n7, got `{name}`"),
                ));
            }
            vec![catalog::expected_row(name).unwrap().name]
        }
        None => catalog::expected_rows().iter().map(|r| r.name).collect(),
    };
    let diffs = table_diffs(&names, corrupt).map_err(|f| fail(EXIT_PARSE, f))?;
    let mismatches = diffs.iter().filter(|d| !d.matched).count();
    let report = TableReport {
        algebras: names.iter().map(|s| s.to_string()).collect(),
        mismatches,
        diffs,
    };
    let text = match format {
        TextFormat::Json => serde_json::to_string_pretty(&report).expect("serializable"),
        TextFormat::Text => report.render_text(),
    };
    emit(out, &text)?;
    Ok(if mismatches == 0 { 0 } else { EXIT_MISMATCH })
}
