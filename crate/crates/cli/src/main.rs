//! `jsl`: check, explain and enumerate finite join semilattices.
//!
//! Exit codes: 0 when the property holds, 1 when it fails or a witness is
//! found, 2 on usage or input errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jsl_core::enumerate::{validate_theorems_with, EnumConfig, ENUM_MAX};
use jsl_core::substructure::ForbiddenSummary;
use jsl_core::{
    builtin, check_omodular, find_m2, find_m4, parse_structure, run_pipeline, to_proof_labels,
    JoinSemilattice, StrengthSelection, StrongReading,
};
use serde::Serialize;

use report::{
    census_text, dot, CheckReport, ConstructReport, CountReport, ForbiddenReport, Quintuple,
    SubReport,
};

#[derive(Parser)]
#[command(name = "jsl", version, about = "Finite join semilattice toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide o-modularity and print a witness of failure.
    Check {
        /// Structure file, or `builtin:NAME`.
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// List embedded copies of M2 and M4 with their strength flags.
    Forbidden {
        file: String,
        #[arg(long, value_enum, default_value = "lu")]
        strength: Reading,
        #[arg(long)]
        json: bool,
    },
    /// Build T2, T4 and T5 from a failure of o-modularity.
    Construct {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all join semilattices of one size; optionally run the census.
    Enumerate {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        validate: bool,
        #[arg(long, value_enum, default_value = "lu")]
        strength: Selection,
        /// Worker threads for the enumeration.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Write every violating structure here as a structure file.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Print a builtin structure in the file format.
    Builtin {
        /// m2, m4, m3, chain:K or antichain-top:K.
        name: String,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Hasse diagram as a DOT digraph.
    Dot {
        file: String,
        /// Comma-separated element names to highlight.
        #[arg(long, value_delimiter = ',')]
        highlight: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    Strict,
    Lu,
}

impl From<Reading> for StrongReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::Strict => StrongReading::Strict,
            Reading::Lu => StrongReading::Lu,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Selection {
    Strict,
    Lu,
    Both,
}

impl From<Selection> for StrengthSelection {
    fn from(s: Selection) -> Self {
        match s {
            Selection::Strict => StrengthSelection::Strict,
            Selection::Lu => StrengthSelection::Lu,
            Selection::Both => StrengthSelection::Both,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Structure {
        path: String,
        source: jsl_core::Error,
    },
    #[error(transparent)]
    Core(#[from] jsl_core::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Holds,
    Fails,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Holds => ExitCode::SUCCESS,
            Outcome::Fails => ExitCode::from(1),
        }
    }
}

fn outcome(holds: bool) -> Outcome {
    if holds {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

fn load(file: &str) -> Result<JoinSemilattice, CliError> {
    if let Some(name) = file.strip_prefix("builtin:") {
        return builtin(name).map_err(|source| CliError::Structure {
            path: file.into(),
            source,
        });
    }
    let text = fs::read_to_string(file).map_err(|source| CliError::Io {
        path: file.into(),
        source,
    })?;
    parse_structure(&text).map_err(|source| CliError::Structure {
        path: file.into(),
        source,
    })
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        );
    } else {
        print!("{}", text(value));
    }
}

fn check(file: &str, json: bool) -> Result<Outcome, CliError> {
    let s = load(file)?;
    let report = match check_omodular(&s) {
        None => CheckReport {
            omodular: true,
            witness_definition_form: None,
            witness_proof_form: None,
        },
        Some(w) => {
            let labels = to_proof_labels(&s, &w)?;
            CheckReport {
                omodular: false,
                witness_definition_form: Some(Quintuple::definition_form(&s, &w)),
                witness_proof_form: Some(Quintuple::proof_form(&s, &labels)),
            }
        }
    };
    emit(json, &report, CheckReport::text);
    Ok(outcome(report.omodular))
}

fn forbidden(file: &str, reading: StrongReading, json: bool) -> Result<Outcome, CliError> {
    let s = load(file)?;
    let m2 = find_m2(&s);
    let m4 = find_m4(&s);
    let summary = ForbiddenSummary::of(&m2, &m4);
    let report = ForbiddenReport {
        strength: reading,
        embeddings: m2.iter().chain(&m4).map(|e| SubReport::new(&s, e)).collect(),
        forbidden_present: summary.forbidden(reading),
    };
    emit(json, &report, ForbiddenReport::text);
    Ok(outcome(!report.forbidden_present))
}

fn construct(file: &str, json: bool) -> Result<Outcome, CliError> {
    let s = load(file)?;
    let report = match run_pipeline(&s)? {
        None => ConstructReport::omodular(),
        Some(trace) => ConstructReport::new(&s, &trace),
    };
    emit(json, &report, ConstructReport::text);
    Ok(outcome(report.omodular))
}

fn dump(dir: &Path, report: &jsl_core::EnumerationReport) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    for (k, v) in report.violations.iter().enumerate() {
        let s = v.structure()?;
        let name = format!("{}-{:04}.txt", v.claim.replace(':', "-"), k + 1);
        let body = format!(
            "# violates {}\n# canonical {}\n{}",
            v.claim,
            v.canonical,
            s.to_structure_text()
        );
        fs::write(dir.join(name), body).map_err(io)?;
    }
    Ok(())
}

fn enumerate(
    n: usize,
    validate: bool,
    strength: StrengthSelection,
    jobs: Option<usize>,
    json: bool,
    dump_dir: Option<&Path>,
) -> Result<Outcome, CliError> {
    if !(1..=ENUM_MAX).contains(&n) {
        return Err(CliError::Usage(format!(
            "--n must be between 1 and {ENUM_MAX}, got {n}"
        )));
    }
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let config = EnumConfig {
        max_n: ENUM_MAX,
        jobs,
    };
    if !validate {
        let count = jsl_core::enumerate::enum_jsls_with(n, config)?.len();
        let report = CountReport { n, jsl_count: count };
        emit(json, &report, |r| format!("n={} structures={}\n", r.n, r.jsl_count));
        return Ok(Outcome::Holds);
    }
    let report = validate_theorems_with(n, strength, config)?;
    if let Some(dir) = dump_dir {
        dump(dir, &report)?;
    }
    emit(json, &report, census_text);
    Ok(outcome(report.passed()))
}

fn builtin_cmd(name: &str, output: Option<&Path>) -> Result<Outcome, CliError> {
    let s = builtin(name)?;
    let text = s.to_structure_text();
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(Outcome::Holds)
}

fn dot_cmd(file: &str, highlight: &[String]) -> Result<Outcome, CliError> {
    let s = load(file)?;
    let marked = highlight
        .iter()
        .filter(|h| !h.is_empty())
        .map(|h| {
            s.index_of(h)
                .ok_or_else(|| CliError::Usage(format!("--highlight: unknown element `{h}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", dot(&s, &marked));
    Ok(Outcome::Holds)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check { file, json } => check(&file, json),
        Command::Forbidden {
            file,
            strength,
            json,
        } => forbidden(&file, strength.into(), json),
        Command::Construct { file, json } => construct(&file, json),
        Command::Enumerate {
            n,
            validate,
            strength,
            jobs,
            json,
            dump_dir,
        } => enumerate(n, validate, strength.into(), jobs, json, dump_dir.as_deref()),
        Command::Builtin { name, output } => builtin_cmd(&name, output.as_deref()),
        Command::Dot { file, highlight } => dot_cmd(&file, &highlight),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(o) => o.into(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
