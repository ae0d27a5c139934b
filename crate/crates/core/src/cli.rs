//! Command-line front end: `generate`, `cluster`, `eval` and `bench`.
//!
//! Every flag can also be set through an environment variable named
//! `SUBSPACE_FP_<FLAG>`, e.g. `SUBSPACE_FP_MIN_SUP=0.3`. Exit codes: 0 on
//! success, 1 when the pipeline fails, 2 for usage and configuration errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::assembly::ClusteringResult;
use crate::base_search::{read_membership_csv, Policy};
use crate::bench::run_bench;
use crate::dataset::{
    generate_covariant_fixture, generate_synthetic, load_matrix, zscore_normalize, DataMatrix,
    FixtureMode, GroundTruth, SyntheticSpec,
};
use crate::error::{DataError, Error, ParamError};
use crate::eval::{flatten_for_nmi, nmi_with, pair_scores, NmiNorm};
use crate::fixtures;
use crate::fp::{min_count_from_sup, TieBreak};
use crate::pipeline::{aggregate, cluster, sweep, ClusterParams, DEFAULT_MINING_BUDGET, DEFAULT_MIN_RATIO};

pub const ENV_PREFIX: &str = "SUBSPACE_FP_";

#[derive(Debug, Parser)]
#[command(name = "subspace-fp", version, about = "Bottom-up subspace clustering")]
pub struct Cli {
    /// Worker threads for base clustering; results do not depend on it.
    #[arg(long, global = true, env = "SUBSPACE_FP_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic dataset (and its ground truth).
    Generate(GenerateArgs),
    /// Cluster a dataset and write the result as JSON.
    Cluster(RunConfig),
    /// Score a clustering result against ground truth.
    Eval(EvalArgs),
    /// Time both phases on synthetic data of several sizes.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// Three groups whose coordinates all come from one normal.
    Covariant,
    /// Three groups, each dense in one dimension only.
    IndependentDense,
    /// The five-point membership table of the worked example.
    RunningExample,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// TOML dataset description.
    #[arg(long, env = "SUBSPACE_FP_SPEC", conflicts_with = "fixture", required_unless_present = "fixture")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum, env = "SUBSPACE_FP_FIXTURE")]
    pub fixture: Option<Fixture>,
    /// Overrides the seed in the spec.
    #[arg(long, env = "SUBSPACE_FP_SEED")]
    pub seed: Option<u64>,
    /// Data CSV; standard output if absent.
    #[arg(long, env = "SUBSPACE_FP_OUT")]
    pub out: Option<PathBuf>,
    /// Ground-truth JSON.
    #[arg(long, env = "SUBSPACE_FP_TRUTH")]
    pub truth: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    /// Every pair of dimensions.
    All,
    /// A random sample; see `--count` and `--coverage`.
    Sample,
    /// All pairs below 100 dimensions, a sample above.
    Auto,
}

/// Settings of one `cluster` run.
#[derive(Debug, Args)]
pub struct RunConfig {
    /// Numeric CSV, one point per row.
    #[arg(long, env = "SUBSPACE_FP_INPUT", group = "source")]
    pub input: Option<PathBuf>,
    /// TOML dataset description to generate and cluster.
    #[arg(long, env = "SUBSPACE_FP_SPEC", group = "source")]
    pub spec: Option<PathBuf>,
    /// Precomputed membership table; skips the first phase.
    #[arg(long, env = "SUBSPACE_FP_MEMBERSHIP", group = "source")]
    pub membership: Option<PathBuf>,
    /// The input CSV has a header row.
    #[arg(long, env = "SUBSPACE_FP_HEADER")]
    pub header: bool,
    #[arg(long, default_value_t = ',', env = "SUBSPACE_FP_DELIMITER")]
    pub delimiter: char,
    /// Base clusters per subspace; several values run a sweep.
    #[arg(long, value_delimiter = ',', env = "SUBSPACE_FP_K")]
    pub k: Vec<usize>,
    /// Minimum cluster size as a fraction of the points.
    #[arg(long, env = "SUBSPACE_FP_MIN_SUP", group = "size")]
    pub min_sup: Option<f64>,
    /// Minimum cluster size in points.
    #[arg(long, env = "SUBSPACE_FP_MIN_CLUSTER_SIZE", group = "size")]
    pub min_cluster_size: Option<usize>,
    #[arg(long, value_enum, default_value = "auto", env = "SUBSPACE_FP_POLICY")]
    pub policy: PolicyArg,
    /// Number of sampled subspaces.
    #[arg(long, env = "SUBSPACE_FP_COUNT")]
    pub count: Option<usize>,
    /// Sampled subspaces containing each dimension.
    #[arg(long, env = "SUBSPACE_FP_COVERAGE")]
    pub coverage: Option<usize>,
    /// Dimensionality of the searched subspaces.
    #[arg(long, default_value_t = 2, env = "SUBSPACE_FP_P")]
    pub p: usize,
    /// Knee threshold; `inf` turns pruning off.
    #[arg(long, default_value_t = DEFAULT_MIN_RATIO, env = "SUBSPACE_FP_MIN_RATIO")]
    pub min_ratio: f64,
    /// `lexicographic` or an item list such as `(S6,1),(S1,1)`.
    #[arg(long, default_value = "lexicographic", env = "SUBSPACE_FP_TIE_BREAK")]
    pub tie_break: String,
    #[arg(long, default_value_t = 0, env = "SUBSPACE_FP_SEED")]
    pub seed: u64,
    /// Z-score every column first.
    #[arg(long, env = "SUBSPACE_FP_NORMALIZE")]
    pub normalize: bool,
    /// Base clusters below this size are dropped; defaults to the minimum
    /// cluster size.
    #[arg(long, env = "SUBSPACE_FP_MIN_BASE_SIZE")]
    pub min_base_size: Option<usize>,
    /// Smallest cluster dimensionality kept; defaults to p + 1.
    #[arg(long, env = "SUBSPACE_FP_MIN_DIMS")]
    pub min_dims: Option<usize>,
    /// Work cap for the pattern search.
    #[arg(long, default_value_t = DEFAULT_MINING_BUDGET, env = "SUBSPACE_FP_BUDGET")]
    pub budget: u64,
    /// Result JSON; standard output if absent. A sweep also writes
    /// `<out>.sweep.json`.
    #[arg(long, env = "SUBSPACE_FP_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Arithmetic,
    Geometric,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, env = "SUBSPACE_FP_RESULT")]
    pub result: PathBuf,
    #[arg(long, env = "SUBSPACE_FP_TRUTH")]
    pub truth: PathBuf,
    #[arg(long, value_enum, default_value = "arithmetic", env = "SUBSPACE_FP_NMI_NORM")]
    pub nmi_norm: NormArg,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated `NxD` sizes, e.g. `10000x10,100000x10`.
    #[arg(long, env = "SUBSPACE_FP_SIZES")]
    pub sizes: String,
    #[arg(long, default_value_t = 10, env = "SUBSPACE_FP_K")]
    pub k: usize,
    #[arg(long, default_value_t = 0.2, env = "SUBSPACE_FP_MIN_SUP")]
    pub min_sup: f64,
    #[arg(long, default_value_t = DEFAULT_MIN_RATIO, env = "SUBSPACE_FP_MIN_RATIO")]
    pub min_ratio: f64,
    #[arg(long, default_value_t = 0, env = "SUBSPACE_FP_SEED")]
    pub seed: u64,
    /// Report file: JSON if it ends in `.json`, CSV otherwise; standard
    /// output (CSV) if absent.
    #[arg(long, env = "SUBSPACE_FP_OUT")]
    pub out: Option<PathBuf>,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Pipeline(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Pipeline(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Param(_) | Error::Spec(_) => Failure::Usage(e.to_string()),
            Error::Io { ref source, .. } if source.kind() == io::ErrorKind::NotFound => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Pipeline(e.to_string()),
        }
    }
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parse `args` and run. Help and version print to stdout and exit 0.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Pipeline(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::Pipeline(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Generate(args) => cmd_generate(&args),
        Command::Cluster(cfg) => cmd_cluster(&cfg),
        Command::Eval(args) => cmd_eval(&args),
        Command::Bench(args) => cmd_bench(&args),
    })
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn open(path: &Path) -> Result<fs::File, Error> {
    fs::File::open(path).map_err(|e| Error::io(path, e))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Error::io(p, e)),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn load_spec(path: &Path) -> Result<SyntheticSpec, Error> {
    SyntheticSpec::from_toml(&read_text(path)?).map_err(|e| Error::format(path, e))
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<(), Failure> {
    let seed = args.seed;
    let (data, truth) = match (args.fixture, &args.spec) {
        (Some(Fixture::RunningExample), _) => {
            let mut text = Vec::new();
            fixtures::running_example_table()
                .write_csv(&mut text)
                .map_err(|e| Error::io("<membership>", e))?;
            (text, Some(fixtures::running_example_truth()))
        }
        (Some(fixture), _) => {
            let mode = match fixture {
                Fixture::Covariant => FixtureMode::Covariant,
                _ => FixtureMode::IndependentDense,
            };
            let x = generate_covariant_fixture(mode, seed.unwrap_or(0));
            let clusters = (0..3)
                .map(|g| crate::dataset::TruthCluster {
                    points: (g * 100..(g + 1) * 100).collect(),
                    dims: match mode {
                        FixtureMode::Covariant => vec![0, 1, 2],
                        FixtureMode::IndependentDense => vec![g],
                    },
                })
                .collect();
            (matrix_csv(&x)?, Some(GroundTruth::from_clusters(x.n(), clusters)))
        }
        (None, Some(path)) => {
            let mut spec = load_spec(path)?;
            if let Some(s) = seed {
                spec.seed = s;
            }
            let (x, truth) = generate_synthetic(&spec).map_err(Error::from)?;
            (matrix_csv(&x)?, Some(truth))
        }
        (None, None) => return Err(Failure::Usage("one of --spec or --fixture is required".into())),
    };
    write_output(args.out.as_deref(), &data)?;
    if let (Some(path), Some(truth)) = (&args.truth, truth) {
        let mut text = serde_json::to_string_pretty(&truth).expect("truth serializes");
        text.push('\n');
        fs::write(path, text).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

fn matrix_csv(x: &DataMatrix) -> Result<Vec<u8>, Error> {
    let mut out = Vec::new();
    x.write_csv(&mut out, b',').map_err(Error::from)?;
    Ok(out)
}

fn delimiter_byte(c: char) -> Result<u8, Failure> {
    u8::try_from(c)
        .ok()
        .filter(u8::is_ascii)
        .ok_or_else(|| Failure::Usage(format!("delimiter {c:?} must be a single ASCII character")))
}

fn policy(cfg: &RunConfig) -> Result<Option<Policy>, Failure> {
    match cfg.policy {
        PolicyArg::Auto => Ok(None),
        PolicyArg::All => Ok(Some(Policy::All)),
        PolicyArg::Sample => match (cfg.count, cfg.coverage) {
            (Some(count), Some(coverage)) => Ok(Some(Policy::Sample { count, coverage })),
            _ => Err(Failure::Usage("--policy sample needs --count and --coverage".into())),
        },
    }
}

/// Resolve everything but the data into pipeline parameters for `n` points.
fn params_for(cfg: &RunConfig, k: usize, n: usize) -> Result<ClusterParams, Failure> {
    let min_cluster_size = match (cfg.min_sup, cfg.min_cluster_size) {
        (Some(sup), None) => min_count_from_sup(sup, n)?,
        (None, Some(size)) => size,
        _ => {
            return Err(Failure::Usage(
                "exactly one of --min-sup or --min-cluster-size is required".into(),
            ))
        }
    };
    let mut params = ClusterParams::new(k, min_cluster_size)
        .with_min_ratio(cfg.min_ratio)
        .with_tie_break(TieBreak::parse(&cfg.tie_break)?)
        .with_seed(cfg.seed);
    params.policy = policy(cfg)?;
    params.p = cfg.p;
    params.min_base_size = cfg.min_base_size;
    params.min_dims = cfg.min_dims;
    params.mining_budget = cfg.budget;
    Ok(params)
}

pub fn cmd_cluster(cfg: &RunConfig) -> Result<(), Failure> {
    if let Some(path) = &cfg.membership {
        let table = read_membership_csv(open(path)?)
            .map_err(|e| Error::format(path, e))?;
        let k = cfg.k.first().copied().unwrap_or(1);
        let params = params_for(cfg, k, table.n())?;
        let (result, _) = aggregate(&table, &params)?;
        write_output(cfg.out.as_deref(), result.to_json().as_bytes())?;
        return Ok(());
    }

    let x = match (&cfg.input, &cfg.spec) {
        (Some(path), _) => {
            load_matrix(open(path)?, cfg.header, delimiter_byte(cfg.delimiter)?).map_err(|e| {
                let hint = match e {
                    DataError::NotNumeric { row: 1, .. } if !cfg.header => " (pass --header?)",
                    _ => "",
                };
                Error::format(path, format!("{e}{hint}"))
            })?
        }
        (None, Some(path)) => generate_synthetic(&load_spec(path)?).map_err(Error::from)?.0,
        (None, None) => {
            return Err(Failure::Usage(
                "one of --input, --spec or --membership is required".into(),
            ))
        }
    };
    let x = if cfg.normalize { zscore_normalize(&x) } else { x };
    if cfg.k.is_empty() {
        return Err(ParamError::EmptySweep.into());
    }
    let params = params_for(cfg, cfg.k[0], x.n())?;
    let result = if cfg.k.len() == 1 {
        cluster(&x, &params)?.0
    } else {
        let (result, entries) = sweep(&x, &params, &cfg.k)?;
        let mut summary = serde_json::to_string_pretty(&entries).expect("sweep serializes");
        summary.push('\n');
        match &cfg.out {
            Some(out) => {
                let mut side = out.clone().into_os_string();
                side.push(".sweep.json");
                fs::write(&side, summary).map_err(|e| Error::io(side, e))?;
            }
            None => eprint!("{summary}"),
        }
        result
    };
    write_output(cfg.out.as_deref(), result.to_json().as_bytes())?;
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs) -> Result<(), Failure> {
    let result = ClusteringResult::from_json(&read_text(&args.result)?)
        .map_err(|e| Error::format(&args.result, e))?;
    let truth: GroundTruth = serde_json::from_str(&read_text(&args.truth)?)
        .map_err(|e| Error::format(&args.truth, e))?;
    if result.n != truth.n {
        return Err(Error::Eval(crate::error::EvalError::PointCount {
            result: result.n,
            truth: truth.n,
        })
        .into());
    }
    let norm = match args.nmi_norm {
        NormArg::Arithmetic => NmiNorm::Arithmetic,
        NormArg::Geometric => NmiNorm::Geometric,
    };
    let nmi = nmi_with(&flatten_for_nmi(&result, result.n), &truth.labels(), norm)
        .map_err(Error::from)?;
    let scores = pair_scores(&result, &truth).map_err(Error::from)?;
    println!("nmi       {nmi:.4}");
    println!("precision {:.4}", scores.precision);
    println!("recall    {:.4}", scores.recall);
    println!("f1        {:.4}", scores.f1);
    Ok(())
}

/// Parse `10000x10,100000x10`.
pub fn parse_sizes(text: &str) -> Result<Vec<(usize, usize)>, ParamError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (n, d) = t
                .split_once(['x', 'X'])
                .ok_or_else(|| ParamError::Size(t.to_owned()))?;
            match (n.trim().parse(), d.trim().parse()) {
                (Ok(n), Ok(d)) => Ok((n, d)),
                _ => Err(ParamError::Size(t.to_owned())),
            }
        })
        .collect()
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let sizes = parse_sizes(&args.sizes)?;
    let params = ClusterParams::new(args.k, 1)
        .with_min_ratio(args.min_ratio)
        .with_seed(args.seed);
    let report = run_bench(&sizes, &params, args.min_sup)?;
    let json = args
        .out
        .as_deref()
        .is_some_and(|p| p.extension().is_some_and(|e| e == "json"));
    let bytes = if json {
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        text.into_bytes()
    } else {
        let mut out = Vec::new();
        report
            .write_csv(&mut out)
            .map_err(|e| Failure::Pipeline(e.to_string()))?;
        out
    };
    write_output(args.out.as_deref(), &bytes)?;
    for row in report.rows.iter().filter(|r| !r.is_ok()) {
        eprintln!("warning: {}x{} failed: {}", row.n, row.d, row.status);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_sizes("100x5, 10000X10").unwrap(), vec![(100, 5), (10000, 10)]);
        assert_eq!(parse_sizes("").unwrap(), vec![]);
        assert!(matches!(parse_sizes("100by5"), Err(ParamError::Size(_))));
    }

    #[test]
    fn size_flags_are_exclusive() {
        let parsed = Cli::try_parse_from([
            "subspace-fp", "cluster", "--input", "x.csv", "--k", "5",
            "--min-sup", "0.1", "--min-cluster-size", "4",
        ]);
        assert!(parsed.is_err());
    }

    #[test]
    fn k_list_splits_on_commas() {
        let cli = Cli::try_parse_from([
            "subspace-fp", "--threads", "2", "cluster", "--spec", "s.toml", "--k", "3,5,10",
            "--min-sup", "0.1",
        ])
        .unwrap();
        let Command::Cluster(cfg) = cli.command else { panic!("not cluster") };
        assert_eq!(cfg.k, vec![3, 5, 10]);
        assert_eq!(cli.threads, Some(2));
    }
}
