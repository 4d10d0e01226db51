//! `vne`: classify, solve and check VNE instances; generate hardness gadgets.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vne_core::dispatch::{dispatch, matrix, render_matrix, SolverKind};
use vne_core::fixtures;
use vne_core::io::{embedding_from_json, instance_from_json, to_pretty};
use vne_core::oracle::{solve_exact, OracleConfig};
use vne_core::reductions::{
    build_witness, extract_certificate, reduce, transform_wvne0_to_cvne, verify_source, Artifact,
    Certificate, ReduceOptions, Reduction, SourceProblem,
};
use vne_core::selftest::{self, Budget};
use vne_core::{
    check_capacities, edge_loads, embedding_cost, validate_embedding, Embedding, Instance,
    SolveResult, TopologyClass, Variant, VneError,
};

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "vne",
    version,
    about = "Virtual network embedding solvers and hardness gadgets"
)]
struct Cli {
    /// Largest instance the cost-only oracle accepts.
    #[arg(long, global = true, env = "VNE_ORACLE_MAX_N_WVNE", default_value_t = OracleConfig::default().max_n_wvne)]
    oracle_max_n_wvne: usize,

    /// Largest instance the capacitated oracle accepts.
    #[arg(long, global = true, env = "VNE_ORACLE_MAX_N_WCVNE", default_value_t = OracleConfig::default().max_n_wcvne)]
    oracle_max_n_wcvne: usize,

    /// Simple paths the oracle may enumerate per node pair.
    #[arg(long, global = true, env = "VNE_ORACLE_PATH_BUDGET", default_value_t = OracleConfig::default().path_budget)]
    oracle_path_budget: usize,

    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn oracle(&self) -> OracleConfig {
        OracleConfig {
            max_n_wvne: self.oracle_max_n_wvne,
            max_n_wcvne: self.oracle_max_n_wcvne,
            path_budget: self.oracle_path_budget,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverChoice {
    Auto,
    Brute,
    StarVn,
    StarPn,
    LineTree,
    OversubTree,
    LineLine,
}

#[derive(Clone, Copy, ValueEnum)]
enum BudgetArg {
    Small,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Topology classes, table cell and chosen solver of an instance.
    Classify { instance: PathBuf },
    /// Solve an instance; exit 2 when infeasible, 3 when no polynomial
    /// solver applies and the oracle budget is exceeded.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        solver: SolverChoice,
    },
    /// Solve with the exhaustive oracle.
    Oracle { instance: PathBuf },
    /// Build a hardness gadget from a source problem.
    Reduce {
        #[arg(long)]
        reduction: String,
        source: PathBuf,
        /// Emit gadgets below the size their hardness argument needs.
        #[arg(long = "unsafe")]
        allow_below_threshold: bool,
        /// Turn a cost-0 gadget into a capacity-only one.
        #[arg(long)]
        capacity_transform: bool,
    },
    /// Embedding of an artifact built from a source certificate.
    Witness {
        artifact: PathBuf,
        certificate: PathBuf,
    },
    /// Source certificate read off an embedding of an artifact.
    Extract {
        artifact: PathBuf,
        embedding: PathBuf,
    },
    /// Check an embedding against an instance, or a certificate against a
    /// source problem.
    Verify {
        instance: Option<PathBuf>,
        embedding: Option<PathBuf>,
        #[arg(long, requires = "certificate", conflicts_with_all = ["instance", "embedding"])]
        source: Option<PathBuf>,
        #[arg(long, requires = "source")]
        certificate: Option<PathBuf>,
    },
    /// Print the complexity tables.
    Matrix {
        #[arg(long)]
        json: bool,
    },
    /// Run the solver-versus-oracle and reduction round-trip suites.
    Selftest {
        #[arg(long, value_enum, default_value = "small")]
        budget: BudgetArg,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Shift every gadget theta before deciding (negative control).
        #[arg(long, default_value_t = 0, allow_negative_numbers = true, hide = true)]
        theta_shift: i64,
    },
    /// Regenerate the figure fixtures, or check them for drift.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
        #[arg(long)]
        check: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    instance_from_json(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_embedding(path: &Path) -> Result<Embedding> {
    embedding_from_json(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_artifact(path: &Path) -> Result<Artifact> {
    Artifact::from_json(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn print(value: &impl serde::Serialize) {
    println!("{}", to_pretty(value));
}

fn class_json(c: &TopologyClass) -> Value {
    json!({ "kind": c.kind.as_str(), "uniform": c.is_uniform, "label": c.label() })
}

fn classify(inst: &Instance) -> Value {
    let d = dispatch(inst);
    json!({
        "variant": inst.variant.as_str(),
        "vn": class_json(&d.vn),
        "pn": class_json(&d.pn),
        "row": d.row.map(|r| r.as_str()),
        "column": d.column,
        "cell": d.cell.map(|c| c.to_string()),
        "verdict": d.verdict.to_string(),
        "solver": d.verdict.solver().map(|k| k.as_str()),
    })
}

fn solver_kind(choice: SolverChoice) -> Option<SolverKind> {
    match choice {
        SolverChoice::StarVn => Some(SolverKind::StarVn),
        SolverChoice::StarPn => Some(SolverKind::StarPn),
        SolverChoice::LineTree => Some(SolverKind::LineTree),
        SolverChoice::OversubTree => Some(SolverKind::OversubTree),
        SolverChoice::LineLine => Some(SolverKind::LineLine),
        SolverChoice::Auto | SolverChoice::Brute => None,
    }
}

fn solve(inst: &Instance, choice: SolverChoice, cfg: &OracleConfig) -> Result<u8> {
    let (name, result) = match (choice, dispatch(inst).verdict.solver()) {
        (SolverChoice::Auto, Some(kind)) => (kind.as_str(), kind.run(inst)?),
        (SolverChoice::Auto | SolverChoice::Brute, _) => match solve_exact(inst, cfg) {
            Ok(res) => ("brute", res),
            Err(VneError::BudgetExceeded(why)) => {
                let verdict = dispatch(inst).verdict;
                eprintln!("open/np-hard cell, oracle budget exceeded ({verdict}; {why})");
                return Ok(EXIT_BUDGET);
            }
            Err(e) => return Err(e.into()),
        },
        (other, _) => {
            let kind = solver_kind(other).expect("named solver");
            (kind.as_str(), kind.run(inst)?)
        }
    };
    print(&json!({
        "status": result.status().as_str(),
        "cost": result.cost(),
        "embedding": result.witness(),
        "solver": name,
    }));
    Ok(match result {
        SolveResult::Infeasible => EXIT_INFEASIBLE,
        _ => 0,
    })
}

fn verify_embedding(inst: &Instance, emb: &Embedding) -> Result<u8> {
    let report = validate_embedding(inst, emb);
    if !report.is_valid() {
        print(&json!({
            "valid": false,
            "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }));
        return Ok(EXIT_INFEASIBLE);
    }
    let cost = embedding_cost(inst, emb)?;
    let capacities_ok = check_capacities(inst, emb)?;
    let within_theta = inst.theta.map(|t| cost <= t);
    let meets = match inst.variant {
        Variant::Wvne => within_theta.unwrap_or(true),
        Variant::Cvne => capacities_ok,
        Variant::Wcvne => capacities_ok && within_theta.unwrap_or(true),
    };
    print(&json!({
        "valid": true,
        "cost": cost,
        "loads": edge_loads(inst, emb)?,
        "capacities_ok": capacities_ok,
        "within_theta": within_theta,
        "meets_criterion": meets,
    }));
    Ok(if meets { 0 } else { EXIT_INFEASIBLE })
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = cli.oracle();
    match &cli.command {
        Command::Classify { instance } => {
            print(&classify(&load_instance(instance)?));
            Ok(0)
        }
        Command::Solve { instance, solver } => solve(&load_instance(instance)?, *solver, &cfg),
        Command::Oracle { instance } => solve(&load_instance(instance)?, SolverChoice::Brute, &cfg),
        Command::Reduce {
            reduction,
            source,
            allow_below_threshold,
            capacity_transform,
        } => {
            let reduction: Reduction = reduction.parse()?;
            let source: SourceProblem = load_json(source)?;
            let opts = ReduceOptions {
                allow_below_threshold: *allow_below_threshold,
            };
            let mut art = reduce(reduction, &source, opts)?;
            if *capacity_transform {
                art = transform_wvne0_to_cvne(&art)?;
            }
            if art.below_threshold {
                eprintln!("warning: source is below the size the hardness argument needs");
            }
            println!("{}", art.to_json());
            Ok(0)
        }
        Command::Witness {
            artifact,
            certificate,
        } => {
            let art = load_artifact(artifact)?;
            let cert: Certificate = load_json(certificate)?;
            print(&build_witness(&art, &cert)?);
            Ok(0)
        }
        Command::Extract {
            artifact,
            embedding,
        } => {
            let art = load_artifact(artifact)?;
            let emb = load_embedding(embedding)?;
            match extract_certificate(&art, &emb) {
                Ok(cert) => {
                    print(&cert);
                    Ok(0)
                }
                Err(VneError::CriterionNotMet(why)) => {
                    eprintln!("embedding does not meet the artifact criterion: {why}");
                    Ok(EXIT_INFEASIBLE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify {
            instance,
            embedding,
            source,
            certificate,
        } => {
            if let (Some(source), Some(certificate)) = (source, certificate) {
                let source: SourceProblem = load_json(source)?;
                let cert: Certificate = load_json(certificate)?;
                let ok = verify_source(&source, &cert)?;
                print(&json!({ "valid": ok }));
                return Ok(if ok { 0 } else { EXIT_INFEASIBLE });
            }
            let (Some(instance), Some(embedding)) = (instance, embedding) else {
                bail!("verify needs an instance and an embedding, or --source and --certificate");
            };
            verify_embedding(&load_instance(instance)?, &load_embedding(embedding)?)
        }
        Command::Matrix { json } => {
            if *json {
                print(&matrix());
            } else {
                print!("{}", render_matrix());
            }
            Ok(0)
        }
        Command::Selftest {
            budget,
            seed,
            theta_shift,
        } => {
            let mut opts = selftest::Options::new(match budget {
                BudgetArg::Small => Budget::Small,
                BudgetArg::Full => Budget::Full,
            });
            opts.seed = *seed;
            opts.oracle = cfg;
            opts.theta_shift = *theta_shift;
            let reports = selftest::run_all(&opts);
            for r in &reports {
                println!("{}", r.summary());
                for f in r.failures.iter().take(5) {
                    eprintln!("  {}: {f}", r.name);
                }
            }
            Ok(if selftest::all_passed(&reports) { 0 } else { 1 })
        }
        Command::Fixtures { dir, check } => {
            if *check {
                let stale = fixtures::drift(dir)?;
                for p in &stale {
                    eprintln!("drift: {}", p.display());
                }
                return Ok(if stale.is_empty() { 0 } else { 1 });
            }
            for p in fixtures::regenerate(dir)? {
                eprintln!("wrote {}", p.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
