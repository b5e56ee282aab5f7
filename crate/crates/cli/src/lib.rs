//! Command implementations behind the `fremb` binary.
//!
//! Every command returns a [`RunReport`]: a JSON document holding the
//! parameters, the results and a set of named pass/fail checks. Reports are
//! pure functions of the inputs and flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use frechet_embed::cluster::{kl_center, kl_median, MedianMode, Objective};
use frechet_embed::dataset::{generate, load_dataset, to_jsonl, Dataset, Family, Format, GenerateParams};
use frechet_embed::frechet::{distance_matrix, Metric};
use frechet_embed::jl::{distortion_from_matrices, embed_curve_set, CertifyLevel, EmbedOptions, DEFAULT_BETA, DEFAULT_MAX_RETRIES};
use frechet_embed::oracle::resampled_frechet_band;
use frechet_embed::simplify::simplify_curve;
use frechet_embed::Error;

/// Exit status for a run whose checks all pass.
pub const EXIT_PASS: i32 = 0;
/// Exit status for a failed check or an algorithmic failure.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for bad flags or unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fremb", version, about = "Fréchet-preserving random embeddings of polygonal curves")]
pub struct Cli {
    /// Worker threads for pairwise computations (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Include wall-clock timings in the report (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic dataset as JSON lines.
    Generate(GenerateArgs),
    /// Embed a dataset with a certified random linear map.
    Embed(EmbedArgs),
    /// Pairwise Fréchet distance matrix.
    Dist(DistArgs),
    /// Compare pairwise distances before and after embedding.
    Verify(VerifyArgs),
    /// Vertex-restricted simplification of every curve.
    Simplify(SimplifyArgs),
    /// (k, ℓ)-center or (k, ℓ)-median clustering.
    Cluster(ClusterArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Zigzag,
    RandomWalk,
    Spike,
    PerturbedCopies,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Zigzag => Family::Zigzag,
            FamilyArg::RandomWalk => Family::RandomWalk,
            FamilyArg::Spike => Family::Spike,
            FamilyArg::PerturbedCopies => Family::PerturbedCopies,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Jsonl,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Jsonl => Format::Jsonl,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CertifyArg {
    Off,
    Lower,
    Full,
}

impl From<CertifyArg> for CertifyLevel {
    fn from(c: CertifyArg) -> Self {
        match c {
            CertifyArg::Off => CertifyLevel::Off,
            CertifyArg::Lower => CertifyLevel::Lower,
            CertifyArg::Full => CertifyLevel::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Discrete,
    Weak,
    Continuous,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Discrete => Metric::Discrete,
            MetricArg::Weak => Metric::Weak,
            MetricArg::Continuous => Metric::Continuous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Center,
    Median,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    LocalSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    Off,
    On,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 10.0)]
    pub separation: f64,
    /// Write the curves here.
    #[arg(long)]
    pub curves_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_BETA)]
    pub beta: f64,
    #[arg(long, value_enum, default_value = "lower")]
    pub certify: CertifyArg,
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    pub max_retries: usize,
    /// Override the computed target dimension.
    #[arg(long)]
    pub target_dim: Option<usize>,
}

impl MapArgs {
    fn options(&self) -> EmbedOptions {
        EmbedOptions {
            eps: self.eps,
            seed: self.seed,
            beta: self.beta,
            certify: self.certify.into(),
            max_retries: self.max_retries,
            target_dim: self.target_dim,
        }
    }
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub map: MapArgs,
    /// Write the embedded curves here.
    #[arg(long)]
    pub curves_out: Option<PathBuf>,
    /// Write the linear map here.
    #[arg(long)]
    pub map_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "continuous")]
    pub metric: MetricArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, value_enum, default_value = "continuous")]
    pub metric: MetricArg,
    /// Also bracket every original distance with the resampling oracle.
    #[arg(long, value_enum, default_value = "off")]
    pub oracle: Toggle,
}

#[derive(Debug, Args)]
pub struct SimplifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub curves_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub objective: ObjectiveArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ModeArg,
    /// Embed first with this accuracy (requires --seed).
    #[arg(long, requires = "seed")]
    pub eps: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_BETA)]
    pub beta: f64,
    #[arg(long, value_enum, default_value = "lower")]
    pub certify: CertifyArg,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Map<String, Value>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Map<String, Value>>,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            params: Map::new(),
            results: Map::new(),
            checks: Map::new(),
            passed: true,
            timings_ms: None,
        }
    }

    fn param(&mut self, key: &str, v: impl Serialize) {
        self.params.insert(key.into(), to_value(v));
    }

    fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.into(), to_value(v));
    }

    fn check(&mut self, key: &str, ok: bool) {
        self.checks.insert(key.into(), Value::Bool(ok));
        self.passed &= ok;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

/// A command failure, classified for the exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub error: Error,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.error.fmt(f)
    }
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        let code = match error {
            Error::Parse { .. }
            | Error::Io(_)
            | Error::ParamOutOfRange(_)
            | Error::DimensionMismatch { .. }
            | Error::DegenerateCurve(_)
            | Error::NonFinite => EXIT_USAGE,
            _ => EXIT_CHECK_FAILED,
        };
        CliError { code, error }
    }
}

type CmdResult = std::result::Result<RunReport, CliError>;

struct Clock {
    on: bool,
    start: Instant,
    laps: Map<String, Value>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock {
            on,
            start: Instant::now(),
            laps: Map::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        if self.on {
            let ms = self.start.elapsed().as_secs_f64() * 1e3;
            self.laps.insert(name.into(), json!(ms));
            self.start = Instant::now();
        }
    }

    fn attach(self, report: &mut RunReport) {
        if self.on {
            report.timings_ms = Some(self.laps);
        }
    }
}

fn load(input: &InputArgs) -> std::result::Result<Dataset, CliError> {
    Ok(load_dataset(&input.input, input.format.into())?)
}

fn write_file(path: &Path, contents: &str) -> std::result::Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::from(Error::from(e)))
}

fn dataset_params(report: &mut RunReport, ds: &Dataset) {
    report.param("n", ds.len());
    report.param("m", ds.max_complexity());
    report.param("d", ds.dimension);
}

fn map_params(report: &mut RunReport, m: &MapArgs) {
    report.param("eps", m.eps);
    report.param("seed", m.seed);
    report.param("beta", m.beta);
    report.param("certify", CertifyLevel::from(m.certify));
    report.param("max_retries", m.max_retries);
}

pub fn cmd_generate(args: &GenerateArgs, timings: bool) -> CmdResult {
    let mut clock = Clock::new(timings);
    let mut report = RunReport::new("generate");
    let params = GenerateParams {
        n: args.n,
        m: args.m,
        d: args.d,
        k: args.k,
        amplitude: args.amplitude,
        separation: args.separation,
    };
    report.param("family", Family::from(args.family));
    report.param("seed", args.seed);
    report.param("generator", &params);
    let ds = generate(args.family.into(), &params, args.seed)?;
    clock.lap("generate");
    let text = ds.to_jsonl();
    if let Some(path) = &args.curves_out {
        write_file(path, &text)?;
    } else {
        report.result("curves", &ds.curves);
    }
    report.result("count", ds.len());
    clock.attach(&mut report);
    Ok(report)
}

pub fn cmd_embed(args: &EmbedArgs, timings: bool) -> CmdResult {
    let mut clock = Clock::new(timings);
    let mut report = RunReport::new("embed");
    let ds = load(&args.input)?;
    dataset_params(&mut report, &ds);
    map_params(&mut report, &args.map);
    clock.lap("load");
    let emb = embed_curve_set(&ds.curves, &args.map.options())?;
    clock.lap("embed");
    report.param("d_prime", emb.map.d_prime);
    report.param("point_count", emb.point_count);
    report.param("epsilon_point", emb.epsilon_point);
    report.result("target_dim", emb.target_dim);
    report.result("no_reduction", emb.no_reduction);
    report.result("scheme", emb.map.scheme);
    report.result("attempts", emb.attempts);
    report.result("certificate", &emb.report);
    match &args.curves_out {
        Some(path) => write_file(path, &to_jsonl(&emb.curves))?,
        None => report.result("curves", &emb.curves),
    }
    if let Some(path) = &args.map_out {
        write_file(path, &emb.map.to_json())?;
    }
    if let Some(cert) = &emb.report {
        report.check("certificate_passed", cert.passed);
    }
    clock.attach(&mut report);
    Ok(report)
}

pub fn cmd_dist(args: &DistArgs, timings: bool) -> CmdResult {
    let mut clock = Clock::new(timings);
    let mut report = RunReport::new("dist");
    let ds = load(&args.input)?;
    dataset_params(&mut report, &ds);
    let metric: Metric = args.metric.into();
    report.param("metric", metric);
    clock.lap("load");
    let m = distance_matrix(&ds.curves, |a, b| metric.distance(a, b))?;
    clock.lap("distances");
    report.result("ids", ds.curves.iter().map(|c| c.id()).collect::<Vec<_>>());
    report.result("matrix", &m);
    clock.attach(&mut report);
    Ok(report)
}

pub fn cmd_verify(args: &VerifyArgs, timings: bool) -> CmdResult {
    let mut clock = Clock::new(timings);
    let mut report = RunReport::new("verify");
    let ds = load(&args.input)?;
    dataset_params(&mut report, &ds);
    map_params(&mut report, &args.map);
    let metric: Metric = args.metric.into();
    report.param("metric", metric);
    report.param("oracle", args.oracle == Toggle::On);
    clock.lap("load");

    let emb = embed_curve_set(&ds.curves, &args.map.options())?;
    clock.lap("embed");
    report.param("d_prime", emb.map.d_prime);
    report.param("point_count", emb.point_count);
    report.param("epsilon_point", emb.epsilon_point);
    report.result("target_dim", emb.target_dim);
    report.result("no_reduction", emb.no_reduction);
    report.result("scheme", emb.map.scheme);
    report.result("attempts", emb.attempts);
    report.result("certificate", &emb.report);

    let before = distance_matrix(&ds.curves, |a, b| metric.distance(a, b))?;
    let after = distance_matrix(&emb.curves, |a, b| metric.distance(a, b))?;
    clock.lap("distances");
    let dist = distortion_from_matrices(&before, &after, metric);
    report.result("ids", ds.curves.iter().map(|c| c.id()).collect::<Vec<_>>());
    report.result("before", &before);
    report.result("after", &after);
    report.result("max_distortion", dist.max_distortion);
    report.result("min_ratio", dist.min_ratio);
    report.result("max_ratio", dist.max_ratio);

    if let Some(cert) = &emb.report {
        report.check("certificate_passed", cert.passed);
    }
    report.check("distortion_within_eps", dist.max_distortion <= args.map.eps);

    if args.oracle == Toggle::On {
        let n = ds.len();
        let mut contained = true;
        let mut widest: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let band = resampled_frechet_band(&ds.curves[i], &ds.curves[j], 0.01)?;
                widest = widest.max(band.width());
                // the band brackets the continuous distance only
                if metric == Metric::Continuous {
                    contained &= band.contains(before[i][j], 1e-9);
                }
            }
        }
        clock.lap("oracle");
        report.result("oracle_max_band_width", widest);
        if metric == Metric::Continuous {
            report.check("oracle_band_contains_distance", contained);
        }
    }
    clock.attach(&mut report);
    Ok(report)
}

pub fn cmd_simplify(args: &SimplifyArgs, timings: bool) -> CmdResult {
    let mut clock = Clock::new(timings);
    let mut report = RunReport::new("simplify");
    let ds = load(&args.input)?;
    dataset_params(&mut report, &ds);
    report.param("ell", args.ell);
    clock.lap("load");
    let simplified = ds
        .curves
        .iter()
        .map(|c| simplify_curve(c, args.ell))
        .collect::<frechet_embed::Result<Vec<_>>>()?;
    clock.lap("simplify");
    let rows: Vec<Value> = ds
        .curves
        .iter()
        .zip(&simplified)
        .map(|(c, s)| {
            json!({
                "id": c.id(),
                "indices": s.indices,
                "bottleneck": s.bottleneck,
                "error": s.error,
            })
        })
        .collect();
    report.result("simplifications", rows);
    let curves: Vec<_> = simplified.into_iter().map(|s| s.curve).collect();
    match &args.curves_out {
        Some(path) => write_file(path, &to_jsonl(&curves))?,
        None => report.result("curves", &curves),
    }
    report.check(
        "error_within_bottleneck",
        report.results["simplifications"]
            .as_array()
            .expect("array")
            .iter()
            .all(|r| r["error"].as_f64() <= r["bottleneck"].as_f64().map(|b| b + 1e-9)),
    );
    clock.attach(&mut report);
    Ok(report)
}

pub fn cmd_cluster(args: &ClusterArgs, timings: bool) -> CmdResult {
    let mut clock = Clock::new(timings);
    let mut report = RunReport::new("cluster");
    let ds = load(&args.input)?;
    dataset_params(&mut report, &ds);
    report.param("objective", if args.objective == ObjectiveArg::Center { Objective::Center } else { Objective::Median });
    report.param("k", args.k);
    report.param("ell", args.ell);
    clock.lap("load");

    let curves = match (args.eps, args.seed) {
        (Some(eps), Some(seed)) => {
            let opts = EmbedOptions {
                eps,
                seed,
                beta: args.beta,
                certify: args.certify.into(),
                max_retries: DEFAULT_MAX_RETRIES,
                target_dim: None,
            };
            report.param("eps", eps);
            report.param("seed", seed);
            report.param("certify", opts.certify);
            let emb = embed_curve_set(&ds.curves, &opts)?;
            clock.lap("embed");
            report.param("d_prime", emb.map.d_prime);
            report.result("no_reduction", emb.no_reduction);
            if let Some(cert) = &emb.report {
                report.check("certificate_passed", cert.passed);
            }
            emb.curves
        }
        _ => ds.curves.clone(),
    };
    let result = match args.objective {
        ObjectiveArg::Center => kl_center(&curves, args.k, args.ell)?,
        ObjectiveArg::Median => {
            let mode = match args.mode {
                ModeArg::Exhaustive => MedianMode::Exhaustive,
                ModeArg::LocalSearch => MedianMode::LocalSearch,
            };
            report.param("mode", mode);
            kl_median(&curves, args.k, args.ell, mode)?
        }
    };
    clock.lap("cluster");
    report.check(
        "centers_within_ell",
        result.centers.iter().all(|c| c.len() <= args.ell),
    );
    report.result("clustering", &result);
    clock.attach(&mut report);
    Ok(report)
}

/// Runs a parsed command line, honoring `--threads`.
pub fn run(cli: &Cli) -> CmdResult {
    let body = || match &cli.command {
        Command::Generate(a) => cmd_generate(a, cli.timings),
        Command::Embed(a) => cmd_embed(a, cli.timings),
        Command::Dist(a) => cmd_dist(a, cli.timings),
        Command::Verify(a) => cmd_verify(a, cli.timings),
        Command::Simplify(a) => cmd_simplify(a, cli.timings),
        Command::Cluster(a) => cmd_cluster(a, cli.timings),
    };
    match cli.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| CliError::from(Error::ParamOutOfRange(e.to_string())))?;
            pool.install(body)
        }
        None => body(),
    }
}

/// Parses `args`, runs the command and writes the report. Returns the exit
/// status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = report.to_json();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("error: {e}");
                        return EXIT_USAGE;
                    }
                }
                None => print!("{text}"),
            }
            if report.passed {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}
