//! Command-line front end. `run` is the whole program minus process exit,
//! so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::atomdb::AtomDb;
use crate::diagram::{self, SpliceDiagram};
use crate::engine;
use crate::error::Error;
use crate::invariants;

#[derive(Debug, Parser)]
#[command(name = "splicegraph", version, about = "Companionship graphs of knots and links")]
pub struct Cli {
    /// Extra atom database files, merged over the seed; later files win.
    #[arg(long = "db", env = "SPLICEGRAPH_DB", value_delimiter = ',', global = true)]
    pub db: Vec<PathBuf>,

    /// Seed atom database; defaults to the bundled one.
    #[arg(long = "seed-db", env = "SPLICEGRAPH_SEED_DB", global = true)]
    pub seed_db: Option<PathBuf>,

    #[arg(long, value_enum, env = "SPLICEGRAPH_FORMAT", default_value = "text", global = true)]
    pub format: Format,

    /// Run the command once per line of FILE (concurrently); results are
    /// printed in input order.
    #[arg(long, global = true, value_name = "FILE")]
    pub batch: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Inputs are DSL expressions, or `@path` for a diagram JSON file (or a
/// file holding a DSL expression, when the path does not end in `.json`).
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check realizability, local Brunnian validity and, for knots, the
    /// knot-tree conditions.
    Validate { input: Option<String> },
    /// Print the canonical form.
    Canon { input: Option<String> },
    /// Decide equivalence of two inputs.
    Eq { a: String, b: String },
    /// Alexander polynomial of a knot tree.
    Alexander { input: Option<String> },
    /// Gromov norm (sum of atom volumes).
    Gromov { input: Option<String> },
    /// Strong Brunnian set over the external labels.
    Brunnian { input: Option<String> },
    /// List knot trees up to equivalence.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Graphviz DOT.
    ExportDot { input: Option<String> },
    /// Diagram JSON.
    ExportJson { input: Option<String> },
}

/// Failure of one command: exit code 1 for bad input, 2 for internal errors.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// a report belonging on stdout rather than a diagnostic
    pub report: bool,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        invalid(e.to_string())
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
        report: false,
    }
}

fn internal() -> Failure {
    Failure {
        code: 2,
        message: "internal error".into(),
        report: false,
    }
}

pub fn load_db(cli: &Cli) -> Result<AtomDb, Failure> {
    let read = |p: &PathBuf| {
        std::fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display())))
    };
    let mut db = match &cli.seed_db {
        Some(p) => AtomDb::load(&read(p)?)?,
        None => AtomDb::seed(),
    };
    for p in &cli.db {
        let extra = AtomDb::load(&read(p)?).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
        db = db.merged(&extra)?;
    }
    Ok(db)
}

pub fn load_input(input: &str, db: &AtomDb) -> Result<SpliceDiagram, Failure> {
    match input.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))?;
            if path.ends_with(".json") {
                Ok(diagram::json::from_json(&text, db)?)
            } else {
                Ok(crate::dsl::evaluate(text.trim(), db)?)
            }
        }
        None => Ok(crate::dsl::evaluate(input, db)?),
    }
}

fn single_input(cmd: &Command) -> Option<&Option<String>> {
    match cmd {
        Command::Validate { input }
        | Command::Canon { input }
        | Command::Alexander { input }
        | Command::Gromov { input }
        | Command::Brunnian { input }
        | Command::ExportDot { input }
        | Command::ExportJson { input } => Some(input),
        _ => None,
    }
}

fn render(format: Format, text: String, value: serde_json::Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => serde_json::to_string(&value).expect("json value serializes"),
    }
}

/// Runs a single-input command on `input`, returning its output line(s).
fn run_one(cmd: &Command, input: &str, db: &AtomDb, format: Format) -> Result<String, Failure> {
    let d = load_input(input, db)?;
    Ok(match cmd {
        Command::Validate { .. } => return validate(&d, format),
        Command::Canon { .. } => {
            let c = diagram::canonical_form(&d);
            render(format, c.clone(), json!({ "canonical": c }))
        }
        Command::Alexander { .. } => {
            let p = invariants::alexander(&d)?.to_string();
            render(format, p.clone(), json!({ "alexander": p }))
        }
        Command::Gromov { .. } => {
            let v = invariants::gromov_norm(&d)?.normalize().to_string();
            render(format, v.clone(), json!({ "gromov": v }))
        }
        Command::Brunnian { .. } => {
            let u = diagram::global_brunnian(&d);
            let members: Vec<Vec<&String>> = u.members().map(|m| m.iter().collect()).collect();
            render(format, u.to_string(), json!({ "strong_brunnian": members }))
        }
        Command::ExportDot { .. } => diagram::dot::to_dot(&d).trim_end().to_owned(),
        Command::ExportJson { .. } => match format {
            Format::Text => diagram::json::to_json(&d).trim_end().to_owned(),
            Format::Json => {
                let v: serde_json::Value = serde_json::from_str(&diagram::json::to_json(&d)).unwrap();
                serde_json::to_string(&v).unwrap()
            }
        },
        Command::Eq { .. } | Command::Enumerate { .. } => unreachable!("not single-input"),
    })
}

fn validate(d: &SpliceDiagram, format: Format) -> Result<String, Failure> {
    let mut problems: Vec<String> = Vec::new();
    let oriented = match diagram::derive_orientations(d) {
        Ok(o) => Some(o),
        Err(e) => {
            problems.push(e.to_string());
            None
        }
    };
    if let Some(o) = &oriented {
        let report = diagram::validate_local_brunnian(o);
        for v in &report.violations {
            problems.push(format!(
                "local Brunnian condition {} fails at {} ({})",
                v.condition,
                v.vertex,
                v.witness.iter().cloned().collect::<Vec<_>>().join(",")
            ));
        }
    }
    let mut knot = serde_json::Value::Null;
    if d.externals().len() == 1 {
        let report = engine::validate_knot_tree(d)?;
        for v in &report.violations {
            problems.push(format!("knot tree item {v}"));
        }
        knot = json!({ "valid": report.is_valid(), "violations": report.violations });
    }
    let ok = problems.is_empty();
    let text = if ok {
        "valid: true".to_string()
    } else {
        std::iter::once("valid: false".to_string())
            .chain(problems.iter().map(|p| format!("  {p}")))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let out = render(format, text, json!({ "valid": ok, "problems": problems, "knot_tree": knot }));
    if ok {
        Ok(out)
    } else {
        Err(Failure {
            code: 1,
            message: out,
            report: true,
        })
    }
}

fn run_command(cli: &Cli, db: &AtomDb) -> Result<String, Failure> {
    match &cli.command {
        Command::Eq { a, b } => {
            let eq = diagram::equivalent(&load_input(a, db)?, &load_input(b, db)?);
            Ok(render(cli.format, format!("equivalent: {eq}"), json!({ "equivalent": eq })))
        }
        Command::Enumerate { max_vertices, bound } => {
            let trees = engine::enumerate_knot_trees(*max_vertices, *bound, db)?;
            let keys: Vec<&String> = trees.iter().map(|(k, _)| k).collect();
            Ok(match cli.format {
                Format::Text => keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join("\n"),
                Format::Json => serde_json::to_string(&keys).unwrap(),
            })
        }
        cmd => {
            let input = single_input(cmd).unwrap();
            match (input, &cli.batch) {
                (Some(i), None) => run_one(cmd, i, db, cli.format),
                (None, Some(path)) => run_batch(cmd, path, db, cli.format),
                (Some(_), Some(_)) => Err(invalid("give either an input or --batch, not both")),
                (None, None) => Err(invalid("missing input")),
            }
        }
    }
}

fn run_batch(cmd: &Command, path: &PathBuf, db: &AtomDb, format: Format) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let results: Vec<Result<String, Failure>> = std::thread::scope(|s| {
        let handles: Vec<_> = lines
            .iter()
            .map(|l| s.spawn(move || run_one(cmd, l, db, format)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| Err(internal()))
            })
            .collect()
    });
    let mut out = Vec::new();
    let mut worst = 0;
    for r in results {
        match r {
            Ok(s) => out.push(s),
            Err(f) => {
                worst = worst.max(f.code);
                out.push(match format {
                    Format::Text => format!("error: {}", f.message),
                    Format::Json if f.message.starts_with('{') => f.message,
                    Format::Json => json!({ "error": f.message }).to_string(),
                });
            }
        }
    }
    let joined = out.join("\n");
    if worst == 0 {
        Ok(joined)
    } else {
        Err(Failure {
            code: worst,
            message: joined,
            report: true,
        })
    }
}

/// Runs the CLI, writing results to `out` and diagnostics to `err`;
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        let db = load_db(&cli)?;
        run_command(&cli, &db)
    }))
    .unwrap_or_else(|_| Err(internal()));
    match result {
        Ok(s) => {
            let _ = writeln!(out, "{s}");
            0
        }
        Err(f) => {
            let _ = if f.report {
                writeln!(out, "{}", f.message)
            } else {
                writeln!(err, "error: {}", f.message)
            };
            f.code
        }
    }
}
