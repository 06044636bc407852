//! `sizefn`: size functions, matching distances and natural pseudodistance
//! bounds from the command line.

mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sizefn_core::extended::format_sig;
use sizefn_core::io::{graph_to_json, read_diagram_json, read_pair};
use sizefn_core::reparam::{estimate_upper_with, EstimateOptions};
use sizefn_core::sine_pairs::{self, SineOptions};
use sizefn_core::size_space::GraphWarnings;
use sizefn_core::{
    compute_diagram, lambda_lower_bound, natural_lower_bound, optimal_matching, Connectivity,
    DiscreteSizePair, Error, IntervalSamples, SeminormId,
};

#[derive(Parser)]
#[command(name = "sizefn", version, about = "Size functions and natural pseudodistance bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the size-function diagram of a pair (interval CSV or graph JSON).
    Diagram {
        input: PathBuf,
        #[command(flatten)]
        shared: Shared,
        /// Write the diagram JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the size function as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Build the product pair (u, v) ↦ φ(u) − φ(v) as graph JSON.
    Product {
        input: PathBuf,
        #[command(flatten)]
        shared: Shared,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matching distance between two diagram JSON files.
    Match {
        left: PathBuf,
        right: PathBuf,
        /// Write the optimal matching as JSON.
        #[arg(long)]
        matching: Option<PathBuf>,
    },
    /// Certified lower bound: base diagrams for `sup`, product diagrams for `range`.
    LowerBound {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        shared: Shared,
        /// Write the bound report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper estimate over monotone reparametrizations of two interval CSVs.
    Estimate {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        shared: Shared,
        /// Write the estimate as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the optimal path as JSON.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run the sin t / 2 sin 2t comparison on [0, π] and print the table.
    #[command(visible_alias = "paper-example")]
    SineExample {
        /// Number of evenly spaced samples; critical points are always added.
        #[arg(long, default_value_t = 129)]
        samples: usize,
        #[arg(long, default_value_t = Connectivity::Strong)]
        connectivity: Connectivity,
        #[arg(long, default_value_t = 0.0)]
        snap: f64,
        #[arg(long)]
        coarse: bool,
        /// Largest gap between bound and estimate still reported as attained.
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
        /// Write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Shared {
    #[arg(long, default_value_t = SeminormId::Range)]
    seminorm: SeminormId,
    /// Round values to multiples of this tolerance before computing (0: off).
    #[arg(long, default_value_t = 0.0)]
    snap: f64,
    #[arg(long, default_value_t = Connectivity::Strong)]
    connectivity: Connectivity,
    /// Range estimate: only try a subsample of candidate minima.
    #[arg(long)]
    coarse: bool,
}

enum Failure {
    Input(String),
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Diagram {
            input,
            shared,
            out,
            svg,
        } => {
            check_snap(shared.snap)?;
            let (pair, _) = load(&input, shared.snap)?;
            let diagram = compute_diagram(&pair);
            emit(out.as_deref(), &to_json(&diagram)?)?;
            if let Some(path) = svg {
                write(&path, &svg::render(&diagram, pair.label()))?;
            }
            Ok(())
        }
        Command::Product { input, shared, out } => {
            check_snap(shared.snap)?;
            let (pair, _) = load(&input, shared.snap)?;
            let product = pair.product_pair(shared.connectivity);
            emit(out.as_deref(), &(graph_to_json(&product)? + "\n"))
        }
        Command::Match {
            left,
            right,
            matching,
        } => {
            let d1 = read_diagram_json(open(&left)?)?;
            let d2 = read_diagram_json(open(&right)?)?;
            let (distance, pairs) = optimal_matching(&d1, &d2);
            println!("{distance}");
            if let Some(path) = matching {
                let body = json!({ "distance": distance, "pairs": pairs });
                write(&path, &to_json(&body)?)?;
            }
            Ok(())
        }
        Command::LowerBound {
            left,
            right,
            shared,
            out,
        } => {
            check_snap(shared.snap)?;
            let (a, _) = load(&left, shared.snap)?;
            let (b, _) = load(&right, shared.snap)?;
            let report = match shared.seminorm {
                SeminormId::Sup => natural_lower_bound(&a, &b),
                SeminormId::Range => lambda_lower_bound(&a, &b, shared.connectivity),
            };
            println!("{}", report.bound_value);
            if let Some(path) = out {
                write(&path, &to_json(&report)?)?;
            }
            Ok(())
        }
        Command::Estimate {
            left,
            right,
            shared,
            out,
            witness,
        } => {
            check_snap(shared.snap)?;
            let (_, a) = load(&left, shared.snap)?;
            let (_, b) = load(&right, shared.snap)?;
            let (Some(a), Some(b)) = (a, b) else {
                return Err(Failure::Config(
                    "estimate needs two interval CSV inputs".into(),
                ));
            };
            let options = EstimateOptions {
                coarse: shared.coarse,
            };
            let estimate = estimate_upper_with(&a, &b, shared.seminorm, options);
            println!("{}", format_sig(estimate.value, 12));
            if let Some(path) = out {
                write(&path, &to_json(&estimate)?)?;
            }
            if let Some(path) = witness {
                write(&path, &to_json(&estimate.witness)?)?;
            }
            Ok(())
        }
        Command::SineExample {
            samples,
            connectivity,
            snap,
            coarse,
            tolerance,
            csv,
            json,
        } => {
            if samples < 5 {
                return Err(Failure::Config(format!(
                    "--samples must be at least 5, got {samples}"
                )));
            }
            check_snap(snap)?;
            if !(tolerance.is_finite() && tolerance >= 0.0) {
                return Err(Failure::Config(format!("invalid --tolerance {tolerance}")));
            }
            let report = sine_pairs::run(&SineOptions {
                samples,
                connectivity,
                coarse,
                snap,
                sharpness_tolerance: tolerance,
            });
            let mut rows = report.rows();
            rows.push((
                "natural pseudodistance in".into(),
                format!("[{}, {}]", report.base_matching, format_sig(report.sup_estimate, 12)),
            ));
            rows.push((
                "range pseudodistance in".into(),
                format!(
                    "[{}, {}]",
                    report.product_matching,
                    format_sig(report.range_estimate, 12)
                ),
            ));
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in &rows {
                println!("{k:<width$}  {v}");
            }
            if let Some(path) = csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut put = |k: &str, v: &str| {
                    w.write_record([k, v])
                        .map_err(|e| Failure::Input(e.to_string()))
                };
                put("quantity", "value")?;
                for (k, v) in &rows {
                    put(k, v)?;
                }
                let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
                write(&path, &String::from_utf8_lossy(&bytes))?;
            }
            if let Some(path) = json {
                write(&path, &to_json(&report)?)?;
            }
            Ok(())
        }
    }
}

fn check_snap(tol: f64) -> Outcome {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Failure::Config(format!("invalid --snap {tol}")))
    }
}

fn open(path: &Path) -> Result<fs::File, Failure> {
    fs::File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Reads a pair, applies snapping and reports graph oddities on stderr.
fn load(path: &Path, snap: f64) -> Result<(DiscreteSizePair, Option<IntervalSamples>), Failure> {
    let (pair, samples, warnings) =
        read_pair(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    warn(path, warnings);
    Ok((pair.snapped(snap), samples.map(|s| s.snapped(snap))))
}

fn warn(path: &Path, w: GraphWarnings) {
    if w.self_loops > 0 {
        eprintln!("warning: {}: ignored {} self-loop(s)", path.display(), w.self_loops);
    }
    if w.duplicate_edges > 0 {
        eprintln!(
            "warning: {}: ignored {} duplicate edge(s)",
            path.display(),
            w.duplicate_edges
        );
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Input(e.to_string()))
}

fn write(path: &Path, body: &str) -> Outcome {
    fs::write(path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes `body` to `path`, or to standard output when no path is given.
fn emit(path: Option<&Path>, body: &str) -> Outcome {
    match path {
        Some(p) => write(p, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
