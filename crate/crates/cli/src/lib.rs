//! The `diskscale` command line. Exit codes: 0 yes/accepted/ok, 1 no/rejected/mismatch, 2 error.

pub mod bench;
pub mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use diskscale_core::gadgets::{
    gen_gridtiling_connected_with, gen_is_enlarge, gen_random, gen_vc_shrink, gt_le_to_lt, gt_lt_to_gt, EmbeddedGraph,
    GadgetError, GridTilingInstance, IsVariant, Params, ReductionArtifact,
};
use diskscale_core::geom::{verify_solution, GraphClass, Instance, Rational, VerifyError};
use diskscale_core::harness::{run_fuzz, FuzzConfig};
use diskscale_core::io::{parse_rational, read_to_string, write_string, InstanceFile, IoError, SolutionFile};
use diskscale_core::lp::DEFAULT_LP_SEED;
use diskscale_core::oracle::OracleBudget;
use diskscale_core::solver::{solve, Algorithm, SolveError, SolveOptions};
use serde_json::json;
use thiserror::Error;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Usage(String),
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("writing output: {0}")]
    Output(String),
}

#[derive(Debug, Parser)]
#[command(name = "diskscale", version, about = "Decide and explore disk scaling problems on unit disk graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide an instance; writes a solution on yes.
    Solve(SolveArgs),
    /// Check a solution against an instance.
    Verify(VerifyArgs),
    /// Emit instances from the generators.
    Generate {
        #[command(subcommand)]
        generator: Generate,
    },
    /// Compare the solvers with the brute-force oracle on random instances.
    OracleCompare(CompareArgs),
    /// Render an instance (and solution) as SVG.
    Plot(PlotArgs),
    /// Time a solver over growing random instances; CSV on stdout.
    Bench(BenchArgs),
}

fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse()
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// cluster | complete | connected | edgeless; defaults to the file's class.
    #[arg(long, value_parser = parse_class)]
    pub class: Option<GraphClass>,
    /// auto | xp | cluster-fpt | complete | oracle
    #[arg(long, value_parser = parse_algo, default_value = "auto")]
    pub algo: Algorithm,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = "DISKSCALE_SEED")]
    pub seed: Option<u64>,
    /// Seconds; checked cooperatively between branches.
    #[arg(long)]
    pub timeout: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
    #[arg(long, value_parser = parse_class)]
    pub class: Option<GraphClass>,
}

#[derive(Debug, Subcommand)]
pub enum Generate {
    /// Uniform points on a 0.1 grid.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_parser = parse_rat, default_value = "0.5")]
        r_min: Rational,
        #[arg(long, value_parser = parse_rat, default_value = "1")]
        r_max: Rational,
        #[arg(long, default_value_t = 5)]
        box_size: u32,
        #[arg(long, value_parser = parse_class)]
        class: Option<GraphClass>,
        #[arg(long, env = "DISKSCALE_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex Cover reduction (shrinking, Cluster).
    VcShrink {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        kappa: usize,
        #[arg(long, value_parser = parse_rat)]
        r_min: Rational,
        #[arg(long, value_parser = parse_rat)]
        r_max: Option<Rational>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independent Set reduction (enlarging, Cluster).
    IsEnlarge {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        kappa: usize,
        #[arg(long, value_parser = parse_rat)]
        r_min: Rational,
        #[arg(long, value_parser = parse_rat)]
        r_max: Option<Rational>,
        #[arg(long, value_enum, default_value = "strict-enlarge")]
        variant: VariantArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid Tiling (>) reduction (enlarging, Connected).
    Gridtiling {
        #[arg(long)]
        tiles: PathBuf,
        /// Place disks with this γ instead of η² (negative controls).
        #[arg(long)]
        gamma: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a Grid Tiling instance between relation variants.
    GtTransform {
        #[arg(long)]
        tiles: PathBuf,
        #[arg(long, value_enum)]
        op: TransformOp,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    StrictEnlarge,
    UnitMin,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TransformOp {
    /// `≤` to `<`.
    LeToLt,
    /// `<` to `>`.
    LtToGt,
    /// Both, in order: `≤` to `>`.
    LeToGt,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = 2)]
    pub max_k: usize,
    #[arg(long, value_parser = parse_class, value_delimiter = ',')]
    pub classes: Vec<GraphClass>,
    #[arg(long, env = "DISKSCALE_SEED")]
    pub seed: Option<u64>,
    /// Flip the oracle's answers; the run must then report mismatches.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub solution: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: bench::Suite,
    /// Comma-separated point counts; may be empty.
    #[arg(long)]
    pub sizes: String,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, env = "DISKSCALE_SEED")]
    pub seed: Option<u64>,
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Verify(a) => cmd_verify(a, err),
        Command::Generate { generator } => cmd_generate(generator, out),
        Command::OracleCompare(a) => cmd_compare(a, out),
        Command::Plot(a) => cmd_plot(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

fn load_instance(path: &Path) -> Result<(Instance, Option<GraphClass>), CliError> {
    let file: InstanceFile = read_json(path)?;
    Ok((file.to_instance()?, file.class()?))
}

fn pick_class(flag: Option<GraphClass>, file: Option<GraphClass>) -> Result<GraphClass, CliError> {
    flag.or(file).ok_or_else(|| CliError::Usage("no --class given and the instance file names none".into()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => Ok(write_string(p, text)?),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string())),
    }
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (inst, file_class) = load_instance(&a.instance)?;
    let cls = pick_class(a.class, file_class)?;
    let deadline = match a.timeout {
        Some(t) if t.is_finite() && t >= 0.0 => Some(Instant::now() + Duration::from_secs_f64(t)),
        Some(t) => return Err(CliError::Usage(format!("bad timeout {t}"))),
        None => None,
    };
    let opts = SolveOptions { seed: a.seed.unwrap_or(DEFAULT_LP_SEED), deadline };
    let outcome = solve(&inst, cls, a.algo, &opts)?;
    let solution = outcome.witness.as_ref().map(SolutionFile::from_assignment);
    if let (Some(path), Some(sol)) = (&a.out, &solution) {
        write_string(path, &sol.to_json())?;
    }
    let report = json!({
        "answer": outcome.answer,
        "class": cls,
        "stats": outcome.stats,
        "solution": match (&a.out, &solution) {
            (Some(p), Some(_)) => json!(p.display().to_string()),
            (None, Some(s)) => json!(s),
            _ => serde_json::Value::Null,
        },
    });
    emit(out, None, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
    Ok(if outcome.is_yes() { EXIT_YES } else { EXIT_NO })
}

fn cmd_verify(a: VerifyArgs, err: &mut dyn Write) -> Result<i32, CliError> {
    let (inst, file_class) = load_instance(&a.instance)?;
    let cls = pick_class(a.class, file_class)?;
    let sol: SolutionFile = read_json(&a.solution)?;
    let r = sol.to_assignment(Some(inst.n()))?;
    let verdict = verify_solution(&inst, &r, cls)?;
    match verdict.violation {
        None => Ok(EXIT_YES),
        Some(v) => {
            let _ = writeln!(err, "rejected: {v}");
            Ok(EXIT_NO)
        }
    }
}

fn artifact_file(art: &ReductionArtifact, cls: GraphClass) -> InstanceFile {
    let provenance = json!({ "params": art.params, "groups": art.groups });
    InstanceFile::from_instance(&art.instance, Some(cls), Some(provenance))
}

fn cmd_generate(g: Generate, out: &mut dyn Write) -> Result<i32, CliError> {
    let (file, path) = match g {
        Generate::Random { n, k, r_min, r_max, box_size, class, seed, out: path } => {
            let seed = seed.unwrap_or(DEFAULT_LP_SEED);
            let inst = gen_random(n, k, r_min, r_max, box_size, seed)?;
            let provenance = json!({ "params": Params::Random { seed, box_size } });
            (InstanceFile::from_instance(&inst, class, Some(provenance)).to_json(), path)
        }
        Generate::VcShrink { embedding, kappa, r_min, r_max, out: path } => {
            let g = EmbeddedGraph::from_json(&read_to_string(&embedding)?)?;
            (artifact_file(&gen_vc_shrink(&g, kappa, r_min, r_max)?, GraphClass::Cluster).to_json(), path)
        }
        Generate::IsEnlarge { embedding, kappa, r_min, r_max, variant, out: path } => {
            let g = EmbeddedGraph::from_json(&read_to_string(&embedding)?)?;
            let variant = match variant {
                VariantArg::StrictEnlarge => IsVariant::StrictEnlarge,
                VariantArg::UnitMin => IsVariant::UnitMin,
            };
            (artifact_file(&gen_is_enlarge(&g, kappa, r_min, r_max, variant)?, GraphClass::Cluster).to_json(), path)
        }
        Generate::Gridtiling { tiles, gamma, out: path } => {
            let gt: GridTilingInstance = read_json(&tiles)?;
            let gt = GridTilingInstance::new(gt.eta, gt.kappa, gt.tiles)?;
            (artifact_file(&gen_gridtiling_connected_with(&gt, gamma)?, GraphClass::Connected).to_json(), path)
        }
        Generate::GtTransform { tiles, op, out: path } => {
            let gt: GridTilingInstance = read_json(&tiles)?;
            let gt = GridTilingInstance::new(gt.eta, gt.kappa, gt.tiles)?;
            let image = match op {
                TransformOp::LeToLt => gt_le_to_lt(&gt),
                TransformOp::LtToGt => gt_lt_to_gt(&gt),
                TransformOp::LeToGt => gt_lt_to_gt(&gt_le_to_lt(&gt)),
            };
            (serde_json::to_string_pretty(&image).expect("tiles serialize") + "\n", path)
        }
    };
    emit(out, path.as_deref(), &file)?;
    Ok(EXIT_YES)
}

fn cmd_compare(a: CompareArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.max_n == 0 {
        return Err(CliError::Usage("--max-n must be positive".into()));
    }
    let cfg = FuzzConfig {
        n: a.max_n.min(3)..=a.max_n,
        k: 0..=a.max_k,
        classes: if a.classes.is_empty() { GraphClass::ALL.to_vec() } else { a.classes },
        budget: OracleBudget { max_n: a.max_n, max_k: a.max_k, ..OracleBudget::default() },
        ..FuzzConfig::default()
    };
    let report = run_fuzz(&cfg, a.trials, a.seed.unwrap_or(DEFAULT_LP_SEED), a.inject_fault);
    emit(out, None, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
    Ok(if report.passed() { EXIT_YES } else { EXIT_NO })
}

fn cmd_plot(a: PlotArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (inst, _) = load_instance(&a.instance)?;
    let sol = match &a.solution {
        Some(p) => Some(read_json::<SolutionFile>(p)?.to_assignment(Some(inst.n()))?),
        None => None,
    };
    emit(out, a.out.as_deref(), &svg::render(&inst, sol.as_ref()))?;
    Ok(EXIT_YES)
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let sizes = a
        .sizes
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| CliError::Usage(format!("bad size `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = bench::run(a.suite, &sizes, a.k, a.repeats, a.seed.unwrap_or(DEFAULT_LP_SEED))?;
    bench::write_csv(&rows, out).map_err(|e| CliError::Output(e.to_string()))?;
    Ok(EXIT_YES)
}
