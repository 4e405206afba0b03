//! Batch front end for the `qtorsion` library.
//!
//! [`run`] executes one parsed command and returns the report to print; the
//! binary maps errors to exit codes via [`CliError::exit_code`].

pub mod error;
pub mod schema;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qtorsion::complex::{torsion_bounded, torsion_periodic};
use qtorsion::group_rep::{quantum_torsion, QuotientKind};
use qtorsion::pearl::{self, ring};
use qtorsion::verify::{run_all, VerifyConfig};
use qtorsion::{RatFunc, Representation, TorsionValue, VarTable};

pub use error::CliError;
use schema::{parse_rep, parse_rep_flag, read_input, InputFile, Loaded};

#[derive(Parser, Debug)]
#[command(name = "qtorsion", version, about = "Exact Reidemeister and quantum torsion of chain complexes")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModArg {
    Signs,
    Units,
}

impl From<ModArg> for QuotientKind {
    fn from(m: ModArg) -> Self {
        match m {
            ModArg::Signs => QuotientKind::Signs,
            ModArg::Units => QuotientKind::Units,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Torsion of a bounded acyclic complex.
    TorsionBounded {
        #[arg(long)]
        input: PathBuf,
    },
    /// Torsion of a 2-periodic acyclic complex.
    TorsionPeriodic {
        #[arg(long)]
        input: PathBuf,
    },
    /// Quantum torsion of a group-ring complex under a representation.
    QuantumTorsion {
        #[arg(long)]
        input: PathBuf,
        /// Bindings such as `A=z1,B=z2`; replaces the file's representation.
        #[arg(long)]
        rep: Option<String>,
        #[arg(long = "mod", value_enum, default_value_t = ModArg::Signs)]
        quotient: ModArg,
    },
    /// Torsion of the first-page differential on a homology ring.
    D1Torsion {
        #[arg(long)]
        input: PathBuf,
    },
    /// Report E^2 dimensions; exits 2 if the data is not E1-narrow.
    E1Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the randomized invariant suites.
    Verify {
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyConfig::default().cases)]
        cases: usize,
        #[arg(long, default_value_t = VerifyConfig::default().max_dim)]
        max_dim: usize,
    },
    /// Built-in models.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Genus; for `star`, omit to take V = point.
        #[arg(long)]
        g: Option<usize>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long = "mod", value_enum)]
        quotient: Option<ModArg>,
        /// Print the model as an input file instead of its torsion.
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// Circle pearl complex with `n` maxima, `A -> z1`, `B -> z2`.
    Circle,
    /// Circle with a single disc class, `A -> z1`.
    Contractible,
    /// `T^m` with `d1(x_i) = r_i L`.
    Torus,
    /// `S^1 × Σ_g` with `d1(z) = c L`.
    Surface,
    /// `S^{2k+1} × V` with `d1(s) = r L`.
    Star,
    /// Both models of `S^1 × S^2`.
    S1xs2,
}

/// Output of a successful command.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    /// Nonzero when the command ran but its checks failed.
    pub exit_code: u8,
}

impl Report {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Report { text, json, exit_code: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json value"),
        }
    }
}

fn torsion_report(command: &str, t: &TorsionValue) -> Report {
    Report::ok(
        t.to_string(),
        json!({
            "command": command,
            "value": t.canonical().to_string(),
            "quotient": t.quotient().to_string(),
        }),
    )
}

fn load(path: &PathBuf) -> Result<InputFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    read_input(&text)
}

fn wrong_kind(expected: &str) -> CliError {
    CliError::Validation(format!("input does not describe a {expected}"))
}

fn with_rep(
    file: &InputFile,
    flag: Option<&str>,
    fallback: Option<Representation>,
) -> Result<Representation, CliError> {
    match flag {
        Some(s) => parse_rep(&parse_rep_flag(s)?, &file.vars()?),
        None => {
            fallback.ok_or_else(|| CliError::Validation("no representation in the file or on the command line".into()))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::TorsionBounded { input } => match load(input)?.load()? {
            Loaded::Bounded(c) => Ok(torsion_report("torsion-bounded", &torsion_bounded(&c)?)),
            _ => Err(wrong_kind("bounded complex")),
        },
        Command::TorsionPeriodic { input } => match load(input)?.load()? {
            Loaded::Periodic(p) => Ok(torsion_report("torsion-periodic", &torsion_periodic(&p)?)),
            _ => Err(wrong_kind("periodic complex")),
        },
        Command::QuantumTorsion { input, rep, quotient } => {
            let file = load(input)?;
            match file.load()? {
                Loaded::Group { complex, representation } => {
                    let rep = with_rep(&file, rep.as_deref(), representation)?;
                    Ok(torsion_report("quantum-torsion", &quantum_torsion(&complex, &rep, (*quotient).into())?))
                }
                _ => Err(wrong_kind("group-ring complex")),
            }
        }
        Command::D1Torsion { input } => match load(input)?.load()? {
            Loaded::D1(d1) => Ok(torsion_report("d1-torsion", &pearl::torsion_from_d1(&d1)?)),
            _ => Err(wrong_kind("ring with d1")),
        },
        Command::E1Check { input } => match load(input)?.load()? {
            Loaded::D1(d1) => {
                let r = pearl::e1_report(&d1);
                let json = json!({ "command": "e1-check", "narrow": r.narrow, "e2_dims": r.e2_dims });
                Ok(Report { text: r.to_string(), json, exit_code: if r.narrow { 0 } else { 2 } })
            }
            _ => Err(wrong_kind("ring with d1")),
        },
        Command::Verify { seed, cases, max_dim } => {
            let results = run_all(&VerifyConfig { seed: *seed, cases: *cases, max_dim: *max_dim });
            let passed = results.iter().all(|r| r.passed());
            let mut text: Vec<String> = results.iter().map(ToString::to_string).collect();
            text.push(if passed { "all suites passed".into() } else { "some suites FAILED".into() });
            let json = json!({
                "command": "verify",
                "passed": passed,
                "suites": results.iter().map(|r| json!({
                    "name": r.name, "cases": r.cases, "failures": r.failures,
                })).collect::<Vec<_>>(),
            });
            Ok(Report { text: text.join("\n"), json, exit_code: if passed { 0 } else { 1 } })
        }
        Command::Example { name, n, m, g, k, quotient, emit } => example(*name, *n, *m, *g, *k, *quotient, *emit),
    }
}

fn vars(names: &[&str]) -> VarTable {
    VarTable::new(names.iter().copied()).expect("valid names")
}

fn emitted(file: InputFile) -> Report {
    let json = serde_json::to_value(&file).expect("plain data");
    Report::ok(file.to_json(), json)
}

fn example(
    name: ExampleName,
    n: usize,
    m: usize,
    g: Option<usize>,
    k: usize,
    quotient: Option<ModArg>,
    emit: bool,
) -> Result<Report, CliError> {
    let command = "example";
    match name {
        ExampleName::Circle | ExampleName::Contractible => {
            let (c, rep, default) = if name == ExampleName::Circle {
                let v = vars(&["z1", "z2"]);
                (pearl::circle_pearl(n)?, Representation::parse(&v, &[("A", "z1"), ("B", "z2")])?, ModArg::Signs)
            } else {
                let v = vars(&["z1"]);
                (pearl::contractible_circle_pearl(n)?, Representation::parse(&v, &[("A", "z1")])?, ModArg::Units)
            };
            if emit {
                return Ok(emitted(InputFile::from_group(&c, Some(&rep))));
            }
            Ok(torsion_report(command, &quantum_torsion(&c, &rep, quotient.unwrap_or(default).into())?))
        }
        ExampleName::Torus | ExampleName::Surface | ExampleName::Star => {
            let d1 = match name {
                ExampleName::Torus => pearl::torus_d1(m)?,
                ExampleName::Surface => pearl::sigma_g_d1(g.unwrap_or(2))?,
                _ => {
                    let v = vars(&["r"]);
                    let space = match g {
                        None => ring::point(),
                        Some(g) => ring::surface(g)?,
                    };
                    pearl::product_star(&space, k, &RatFunc::var(&v, 0))?
                }
            };
            if emit {
                return Ok(emitted(InputFile::from_d1(&d1)));
            }
            Ok(torsion_report(command, &pearl::torsion_from_d1(&d1)?))
        }
        ExampleName::S1xs2 => {
            let v = vars(&["r", "beta", "r_bb"]);
            let d1 = pearl::s1xs2_possibility1(&RatFunc::var(&v, 0))?;
            let p = pearl::s1xs2_possibility2(&RatFunc::var(&v, 1), &RatFunc::var(&v, 2))?;
            if emit {
                let both = json!({
                    "possibility1": serde_json::to_value(InputFile::from_d1(&d1)).expect("plain data"),
                    "possibility2": serde_json::to_value(InputFile::from_periodic(&p)).expect("plain data"),
                });
                return Ok(Report::ok(serde_json::to_string_pretty(&both).expect("json value"), both));
            }
            let t1 = pearl::torsion_from_d1(&d1)?;
            let t2 = torsion_periodic(&p)?;
            Ok(Report::ok(
                format!("possibility 1: {t1}\npossibility 2: {t2}"),
                json!({
                    "command": command,
                    "possibility1": { "value": t1.canonical().to_string(), "quotient": t1.quotient().to_string() },
                    "possibility2": { "value": t2.canonical().to_string(), "quotient": t2.quotient().to_string() },
                }),
            ))
        }
    }
}
