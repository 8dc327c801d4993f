//! `gtkc`: command-line front end for the grid tiling to k-Center lab.
//!
//! Exit codes: 0 all checks agree, 1 disagreement or structure failure,
//! 2 invalid input, 3 inconclusive because a budget was exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use gtkc_core::graph::GraphDocument;
use gtkc_core::gridtiling::{
    augment, normalize, random_covered_instance, random_instance, solve_bruteforce, GtInstance,
};
use gtkc_core::harness::{self, EquivalenceOptions, ExportFormat, SweepConfig};
use gtkc_core::hitting::NodeBudget;
use gtkc_core::kcenter::{decide, solve_exact};
use gtkc_core::params::{parameter_report, ParamOptions};
use gtkc_core::reduction::{build, ReducedInstance};
use gtkc_core::{Error, Exec, Rational};

const EXIT_DISAGREE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "gtkc", version, about = "Grid tiling to k-Center reduction lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Budgets {
    /// Search-node limit for exact solvers.
    #[arg(long, default_value_t = 2_000_000)]
    budget_nodes: usize,
    /// Vertex cap for the exact highway and doubling computations.
    #[arg(long)]
    budget_vertices: Option<usize>,
}

impl Budgets {
    fn nodes(&self) -> NodeBudget {
        NodeBudget::limit(self.budget_nodes)
    }

    fn params(&self) -> ParamOptions {
        let mut o = ParamOptions {
            nodes: self.nodes(),
            ..ParamOptions::default()
        };
        if let Some(v) = self.budget_vertices {
            o.hd_vertex_budget = v;
            o.doubling_vertex_budget = v;
        }
        o
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        n: u32,
        /// Pairs per cell (with --covered: pairs beyond one per b value).
        #[arg(long, default_value_t = 2)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Every cell contains a pair for every b.
        #[arg(long)]
        covered: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Augment an instance so that every cell covers every b.
    Augment {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the k-Center graph of an instance.
    Reduce {
        instance: PathBuf,
        /// Normalize (augment or embed) first, as the equivalence check does.
        #[arg(long)]
        normalize: bool,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance by brute force.
    SolveGt {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide (with --radius) or optimize k-Center on a graph document.
    SolveKcenter {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        radius: Option<String>,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equivalence verdict and structure report for an instance.
    Verify {
        instance: PathBuf,
        /// Also compute the exact k-Center optimum.
        #[arg(long)]
        optimum: bool,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameter report of the reduced graph.
    Params {
        instance: PathBuf,
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verify (and optionally params) over random instances.
    Sweep {
        /// Comma-separated list.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        chi: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        n: Vec<u32>,
        /// Comma-separated seeds or a range `a..b`.
        #[arg(long, default_value = "0..10")]
        seed: String,
        #[arg(long, default_value_t = 2)]
        pairs: usize,
        #[arg(long)]
        params: bool,
        #[command(flatten)]
        budgets: Budgets,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the reduced graph as JSON or DOT.
    Export {
        instance: PathBuf,
        #[arg(long)]
        normalize: bool,
        #[arg(long, default_value = "dot")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::VertexBudget { .. } => Failure::Budget(e.to_string()),
            Error::InvalidInstance(_)
            | Error::Parse(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::MissingBCoverage { .. }
            | Error::ChiTooSmall(_)
            | Error::UnknownLabel(_)
            | Error::NoSuchVertex(_)
            | Error::InvalidGraph(_)
            | Error::NegativeRadius(_)
            | Error::ShapeMismatch { .. } => Failure::Input(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn read_instance(path: &Path) -> Result<GtInstance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(GtInstance::from_json(&text)?)
}

fn reduced_of(path: &Path, normalized: bool) -> Result<ReducedInstance, Failure> {
    let inst = read_instance(path)?;
    let inst = if normalized { normalize(&inst)?.instance } else { inst };
    Ok(build(&inst)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::Input(format!("bad seed list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Gen {
            chi,
            n,
            pairs,
            seed,
            covered,
            out,
        } => {
            let inst = if covered {
                random_covered_instance(chi, n, pairs, seed)?
            } else {
                random_instance(chi, n, pairs, seed)?
            };
            emit(&out, &inst.to_json())?;
            Ok(0)
        }
        Command::Augment { instance, out } => {
            emit(&out, &augment(&read_instance(&instance)?)?.to_json())?;
            Ok(0)
        }
        Command::Reduce {
            instance,
            normalize,
            format,
            out,
        } => {
            let r = reduced_of(&instance, normalize)?;
            let f: ExportFormat = format.parse()?;
            emit(&out, &harness::export(&r, f))?;
            Ok(0)
        }
        Command::SolveGt { instance, out } => {
            let inst = read_instance(&instance)?;
            let sol = solve_bruteforce(&inst);
            emit(&out, &pretty(&json!({ "solvable": sol.is_some(), "solution": sol })))?;
            Ok(0)
        }
        Command::SolveKcenter {
            graph,
            k,
            radius,
            budgets,
            out,
        } => {
            let text = fs::read_to_string(&graph).map_err(|e| Failure::Input(format!("{}: {e}", graph.display())))?;
            let (g, labels) = GraphDocument::from_json(&text)?.into_graph()?;
            let label = |v: usize| labels[v].clone();
            let body = match radius {
                Some(r) => {
                    let r: Rational = r.parse()?;
                    let found = decide(&g, k, &r, budgets.nodes())?;
                    json!({ "k": k, "radius": r, "feasible": found.is_some(), "centers": found.map(|c| c.to_file(label)) })
                }
                None => {
                    let best = solve_exact(&g, k, budgets.nodes())?;
                    json!({ "k": k, "optimum": best.to_file(label) })
                }
            };
            emit(&out, &pretty(&body))?;
            Ok(0)
        }
        Command::Verify {
            instance,
            optimum,
            budgets,
            out,
        } => {
            let inst = read_instance(&instance)?;
            let opts = EquivalenceOptions {
                budget: budgets.nodes(),
                optimum,
                exec: Exec::default(),
            };
            let id = instance
                .file_stem()
                .map_or("instance".into(), |s| s.to_string_lossy().into_owned());
            let verdict = harness::verify_equivalence(&id, &inst, &opts)?;
            let reduced = build(&normalize(&inst)?.instance)?;
            let structure = harness::verify_structure(&reduced)?;
            emit(&out, &pretty(&json!({ "verdict": verdict, "structure": structure })))?;
            Ok(if verdict.inconclusive {
                EXIT_BUDGET
            } else if !verdict.fully_consistent() || !structure.all_passed() {
                EXIT_DISAGREE
            } else {
                0
            })
        }
        Command::Params {
            instance,
            normalize,
            budgets,
            out,
        } => {
            let r = reduced_of(&instance, normalize)?;
            emit(&out, &pretty(&parameter_report(&r, &budgets.params())?))?;
            Ok(0)
        }
        Command::Sweep {
            chi,
            n,
            seed,
            pairs,
            params,
            budgets,
            out,
        } => {
            let cfg = SweepConfig {
                chi,
                n,
                seeds: parse_seeds(&seed)?,
                pairs_per_cell: pairs,
                params,
                equivalence: EquivalenceOptions {
                    budget: budgets.nodes(),
                    ..EquivalenceOptions::default()
                },
                param_options: budgets.params(),
                exec: Exec::default(),
            };
            let report = harness::sweep(&cfg)?;
            match &out {
                Some(dir) => report.write_to(dir)?,
                None => print!("{}", report.table()),
            }
            if let Some(id) = &report.aborted_on {
                eprintln!("disagreement on {id}");
            }
            Ok(if !report.all_agree() || !report.structure_ok() {
                EXIT_DISAGREE
            } else if report.any_inconclusive() {
                EXIT_BUDGET
            } else {
                0
            })
        }
        Command::Export {
            instance,
            normalize,
            format,
            out,
        } => {
            let r = reduced_of(&instance, normalize)?;
            let f: ExportFormat = format.parse()?;
            emit(&out, &harness::export(&r, f))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("inconclusive: {m}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_DISAGREE)
        }
    }
}
