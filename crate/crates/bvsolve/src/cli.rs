use std::path::{Path, PathBuf};

use bvsolve_core::analysis::{self, format_sci};
use bvsolve_core::elimination::{gauss_solve, tnbd_solve};
use bvsolve_core::experiments::{run_experiment, Experiment, Report};
use bvsolve_core::{bernstein, condition_inf, factorize, solve, solve_dual, NodeSet, Vector};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::format::{self, FactorizationDoc};
use crate::report::render_text;
use crate::AppError;

#[derive(Debug, Parser)]
#[command(
    name = "bvsolve",
    version,
    about = "Bernstein-Vandermonde linear systems in O(n^2)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve A x = b (or A^T x = b with --dual).
    Solve(SolveArgs),
    /// Print the compact bidiagonal factorization of A^{-1}.
    Factorize(FactorizeArgs),
    /// Condition numbers and Chan-Foulser numbers.
    Analyze(AnalyzeArgs),
    /// Re-run the published experiments: table1, ex5.1 ... ex5.4 or all.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Structured O(n^2) solver.
    Mm,
    /// Dense Neville elimination.
    Tnbd,
    /// LU with partial pivoting.
    Gauss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_name = "FILE", required_unless_present = "bd")]
    pub nodes: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub rhs: PathBuf,
    #[arg(long)]
    pub dual: bool,
    #[arg(long, value_enum, default_value_t = Method::Mm)]
    pub method: Method,
    /// Use a saved factorization (text or JSON from `factorize`) instead of
    /// recomputing it.
    #[arg(long, value_name = "FILE", conflicts_with = "method")]
    pub bd: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    #[arg(long, value_name = "FILE")]
    pub nodes: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_name = "FILE")]
    pub nodes: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub rhs: Option<PathBuf>,
    #[arg(long)]
    pub cond_inf: bool,
    #[arg(long)]
    pub cond_2: bool,
    /// Needs --rhs or --left-singular.
    #[arg(long)]
    pub chan_foulser: bool,
    /// Use the K-th left singular vector (1-based) as the data vector.
    #[arg(long, value_name = "K", conflicts_with = "rhs")]
    pub left_singular: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    pub experiment: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Serialize)]
struct SolveDoc<'a> {
    n: usize,
    nodes: Option<&'a [f64]>,
    solution: &'a [f64],
    method: Method,
    dual: bool,
}

fn read_nodes(path: &Path) -> Result<NodeSet, AppError> {
    Ok(NodeSet::new(format::to_f64(&format::read_scalars(path)?))?)
}

fn read_vector(path: &Path) -> Result<Vec<f64>, AppError> {
    Ok(format::to_f64(&format::read_scalars(path)?))
}

pub fn run(cli: Cli) -> Result<String, AppError> {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Factorize(args) => cmd_factorize(&args),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Reproduce(args) => cmd_reproduce(&args),
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<String, AppError> {
    let nodes = args.nodes.as_deref().map(read_nodes).transpose()?;
    let b = read_vector(&args.rhs)?;
    let x: Vector = match (&args.bd, &nodes) {
        (Some(path), _) => {
            let f = format::read_factorization(path)?;
            if let Some(nodes) = &nodes {
                if nodes.order() != f.order() {
                    return Err(bvsolve_core::Error::DimensionMismatch {
                        expected: nodes.order(),
                        found: f.order(),
                    }
                    .into());
                }
            }
            if args.dual {
                solve_dual(&f, &b)?
            } else {
                solve(&f, &b)?
            }
        }
        (None, Some(nodes)) => match args.method {
            Method::Mm => {
                let f = factorize(nodes)?;
                if args.dual {
                    solve_dual(&f, &b)?
                } else {
                    solve(&f, &b)?
                }
            }
            Method::Tnbd | Method::Gauss => {
                let mut a = bernstein::build_matrix(nodes);
                if args.dual {
                    a = a.transpose();
                }
                if args.method == Method::Tnbd {
                    tnbd_solve(&a, &b)?
                } else {
                    gauss_solve(&a, &b)?
                }
            }
        },
        (None, None) => return Err(AppError::Usage("--nodes or --bd is required".into())),
    };
    match args.format {
        Format::Text => Ok(format::render_vector(&x)),
        Format::Json => {
            let doc = SolveDoc {
                n: x.len() - 1,
                nodes: nodes.as_ref().map(|s| s.as_slice()),
                solution: &x,
                method: args.method,
                dual: args.dual,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
    }
}

pub fn cmd_factorize(args: &FactorizeArgs) -> Result<String, AppError> {
    let nodes = read_nodes(&args.nodes)?;
    let f = factorize(&nodes)?;
    match args.format {
        Format::Text => Ok(format::render_factorization(&f)),
        Format::Json => {
            Ok(serde_json::to_string_pretty(&FactorizationDoc::new(&nodes, &f))? + "\n")
        }
    }
}

#[derive(Serialize, Default)]
struct AnalyzeDoc {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa_inf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa_2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chan_foulser: Option<f64>,
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<String, AppError> {
    let nodes = read_nodes(&args.nodes)?;
    let none_requested = !(args.cond_inf || args.cond_2 || args.chan_foulser);
    let mut doc = AnalyzeDoc {
        n: nodes.degree(),
        ..AnalyzeDoc::default()
    };
    if args.cond_inf || none_requested {
        doc.kappa_inf = Some(condition_inf(&nodes)?);
    }
    if args.cond_2 || args.chan_foulser || none_requested {
        let svd = analysis::svd(&bernstein::build_matrix(&nodes))?;
        if args.cond_2 || none_requested {
            doc.kappa_2 = Some(svd.condition_number());
        }
        if args.chan_foulser {
            let f = match (&args.rhs, args.left_singular) {
                (Some(path), _) => read_vector(path)?,
                (None, Some(k)) if (1..=nodes.order()).contains(&k) => {
                    svd.left_singular_vector(k - 1).into_inner()
                }
                (None, Some(k)) => {
                    return Err(bvsolve_core::Error::IndexOutOfRange {
                        index: k,
                        degree: nodes.degree(),
                    }
                    .into())
                }
                (None, None) => {
                    return Err(AppError::Usage(
                        "--chan-foulser needs --rhs FILE or --left-singular K".into(),
                    ))
                }
            };
            if f.len() != nodes.order() {
                return Err(bvsolve_core::Error::DimensionMismatch {
                    expected: nodes.order(),
                    found: f.len(),
                }
                .into());
            }
            doc.chan_foulser = Some(analysis::chan_foulser_with(&svd, &f)?);
        }
    }
    match args.format {
        Format::Json => Ok(serde_json::to_string_pretty(&doc)? + "\n"),
        Format::Text => {
            let mut out = String::new();
            for (label, v) in [
                ("kappa_inf", doc.kappa_inf),
                ("kappa_2", doc.kappa_2),
                ("chan_foulser", doc.chan_foulser),
            ] {
                if let Some(v) = v {
                    out += &format!("{label} {}\n", format_sci(v, 1));
                }
            }
            Ok(out)
        }
    }
}

pub fn cmd_reproduce(args: &ReproduceArgs) -> Result<String, AppError> {
    let experiments = if args.experiment.eq_ignore_ascii_case("all") {
        Experiment::all()
    } else {
        vec![Experiment::from_name(&args.experiment)
            .map_err(|_| AppError::Usage(format!("unknown experiment {:?}", args.experiment)))?]
    };
    let reports = experiments
        .iter()
        .map(run_experiment)
        .collect::<Result<Vec<Report>, _>>()?;
    match args.format {
        Format::Json => Ok(serde_json::to_string_pretty(&reports)? + "\n"),
        Format::Text => Ok(reports
            .iter()
            .map(render_text)
            .collect::<Vec<_>>()
            .join("\n")),
    }
}
