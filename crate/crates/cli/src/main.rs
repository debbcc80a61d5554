use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dofkit::io::{self, OperatorSpec};
use dofkit::minimax::SupOptions;
use dofkit::norms::DEFAULT_CAP;
use dofkit::oracles::brute_force_epsilon;
use dofkit::{
    dof_at_level, dof_function, essential_dimension, essential_dimension_order,
    greedy_profile_with, truncation_study, Error, SingularProfile,
};
use serde::Serialize;

/// Degrees of freedom, generalised singular values and essential dimension
/// of operators between finite-dimensional normed spaces.
#[derive(Parser)]
#[command(name = "dofkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy generalised-singular-value profile of an operator.
    Profile {
        #[command(flatten)]
        compute: ComputeArgs,
        #[arg(long)]
        spec: PathBuf,
        /// Write `m,epsilon_m,provenance` rows here ("-" for stdout).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Number of degrees of freedom at a level.
    Dof {
        #[arg(long)]
        level: f64,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        compute: ComputeArgs,
    },
    /// Step function ε ↦ N(ε).
    DofFunction {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        compute: ComputeArgs,
        /// Write `epsilon,N` samples here ("-" for stdout).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Essential dimension (of a given order).
    Essdim {
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        compute: ComputeArgs,
    },
    /// m-th greedy value of successive truncations of a generator.
    Truncate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        m: usize,
        /// Comma-separated, strictly increasing truncation sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Codomain rows of every truncation (default: enough for the largest n).
        #[arg(long)]
        m_rows: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write `n,epsilon_m_n,provenance` rows here ("-" for stdout).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Brute-force bracket on the (p+1)-th generalised singular value.
    Oracle {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 64)]
        grid_points: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Operator spec to profile first.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Precomputed profile JSON.
    #[arg(long)]
    profile: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct ComputeArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Greedy steps (default: the smaller matrix dimension).
    #[arg(long)]
    p_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Serialize)]
struct Meta {
    command: &'static str,
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::Core(e) => match e {
                Error::Parse(_) | Error::InvalidNorm(_) | Error::InvalidArgument(_) => 2,
                Error::CapExceeded { .. } => 3,
                Error::DimensionMismatch { .. }
                | Error::CodomainOverflow { .. }
                | Error::InvalidOperator(_) => 4,
                Error::OrderTooLarge { .. } => 5,
                _ => 1,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(msg) => f.write_str(msg),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_csv(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn compute_profile(spec: &Path, args: ComputeArgs) -> Result<SingularProfile, Failure> {
    let t = OperatorSpec::parse(&read(spec)?)?.build()?;
    let options = SupOptions {
        cap: args.cap,
        seed: args.seed,
        ..SupOptions::default()
    };
    let p_max = args.p_max.unwrap_or_else(|| t.rows().min(t.cols()));
    Ok(greedy_profile_with(&t, p_max, &options)?)
}

fn load_profile(source: &Source, args: ComputeArgs) -> Result<SingularProfile, Failure> {
    match (&source.spec, &source.profile) {
        (_, Some(path)) => Ok(io::parse_profile(&read(path)?)?),
        (Some(spec), None) => compute_profile(spec, args),
        (None, None) => Err(Failure::Io("either --spec or --profile is required".into())),
    }
}

/// Emits CSV to stdout when asked for "-", otherwise writes the file and
/// returns the JSON document.
fn json_or_csv(json: String, csv: Option<&Path>, rows: impl FnOnce() -> String) -> Outcome {
    match csv {
        Some(p) if p == Path::new("-") => Ok(rows()),
        Some(p) => {
            write_csv(p, &rows())?;
            Ok(json)
        }
        None => Ok(json),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Profile { compute, spec, csv } => {
            #[derive(Serialize)]
            struct Doc<'a> {
                meta: Meta,
                profile: &'a SingularProfile,
            }
            let profile = compute_profile(&spec, compute)?;
            let json = io::to_json(&Doc {
                meta: Meta {
                    command: "profile",
                    seed: compute.seed,
                },
                profile: &profile,
            })?;
            json_or_csv(json, csv.as_deref(), || io::profile_csv(&profile))
        }
        Command::Dof {
            level,
            source,
            compute,
        } => {
            if !(level > 0.0 && level.is_finite()) {
                return Err(Error::InvalidArgument(format!("level must be positive, got {level}")).into());
            }
            #[derive(Serialize)]
            struct Doc {
                meta: Meta,
                level: f64,
                dof: usize,
            }
            let profile = load_profile(&source, compute)?;
            Ok(io::to_json(&Doc {
                meta: Meta {
                    command: "dof",
                    seed: compute.seed,
                },
                level,
                dof: dof_at_level(&profile, level),
            })?)
        }
        Command::DofFunction {
            source,
            compute,
            csv,
        } => {
            #[derive(Serialize)]
            struct Doc<'a> {
                meta: Meta,
                step: &'a dofkit::DofStepFunction,
            }
            let step = dof_function(&load_profile(&source, compute)?);
            let json = io::to_json(&Doc {
                meta: Meta {
                    command: "dof-function",
                    seed: compute.seed,
                },
                step: &step,
            })?;
            json_or_csv(json, csv.as_deref(), || io::step_csv(&step))
        }
        Command::Essdim {
            order,
            source,
            compute,
        } => {
            #[derive(Serialize)]
            struct Doc {
                meta: Meta,
                report: dofkit::EssDimReport,
            }
            let profile = load_profile(&source, compute)?;
            let report = if order == 1 {
                essential_dimension(&profile)?
            } else {
                essential_dimension_order(&profile, order)?
            };
            Ok(io::to_json(&Doc {
                meta: Meta {
                    command: "essdim",
                    seed: compute.seed,
                },
                report,
            })?)
        }
        Command::Truncate {
            spec,
            m,
            n,
            m_rows,
            seed,
            csv,
        } => {
            #[derive(Serialize)]
            struct Doc<'a> {
                meta: Meta,
                m: usize,
                points: &'a [dofkit::TruncationPoint],
            }
            let parsed = OperatorSpec::parse(&read(&spec)?)?;
            let OperatorSpec::Generator { generator, .. } = &parsed else {
                return Err(Error::Parse("truncate needs a generator spec".into()).into());
            };
            let largest = n.iter().copied().max().unwrap_or(1);
            let spec_rows = match &parsed {
                OperatorSpec::Generator { m_rows, .. } => *m_rows,
                OperatorSpec::Inline(_) => None,
            };
            let rows = m_rows
                .or(spec_rows)
                .unwrap_or_else(|| generator.natural_rows(largest));
            let sequence = parsed.sequence_operator().expect("generator spec");
            let points = truncation_study(&sequence, m, &n, rows, seed)?;
            let json = io::to_json(&Doc {
                meta: Meta {
                    command: "truncate",
                    seed,
                },
                m,
                points: &points,
            })?;
            json_or_csv(json, csv.as_deref(), || io::truncation_csv(&points))
        }
        Command::Oracle {
            spec,
            p,
            grid_points,
        } => {
            #[derive(Serialize)]
            struct Doc {
                meta: Meta,
                p: usize,
                bracket: dofkit::oracles::Bracket,
            }
            let t = OperatorSpec::parse(&read(&spec)?)?.build()?;
            let bracket = brute_force_epsilon(&t, p, grid_points)?;
            Ok(io::to_json(&Doc {
                meta: Meta {
                    command: "oracle",
                    seed: 0,
                },
                p,
                bracket,
            })?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
