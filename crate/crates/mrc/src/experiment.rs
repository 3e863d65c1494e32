//! Sweeps over training sizes and repetitions with stratified subsampling.
//!
//! Every `(n, seed)` cell draws its own train/test split and trains all the
//! configured methods on it. Cells run in parallel; rows are sorted by
//! `(n, seed)` and then by the configured method order, so the output does
//! not depend on scheduling.

use std::path::{Path, PathBuf};

use mrc_core::features::fit_thresholds;
use mrc_core::{Dataset, LossKind, SolverConfig, StumpSpec, Variant};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::io::read_table;
use crate::pipeline::{fit, mean_loss, predict_rows, FitOptions};
use crate::policy::{LambdaPolicy, DEFAULT_LAMBDA};

/// Environment variable capping the number of cells run at once.
pub const THREADS_VAR: &str = "MRC_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "mrc-zero-one")]
    MrcZeroOne,
    #[serde(rename = "mrc-log")]
    MrcLog,
    #[serde(rename = "adv-zero-one")]
    AdvZeroOne,
    #[serde(rename = "logreg")]
    LogReg,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::MrcZeroOne, Method::MrcLog, Method::AdvZeroOne, Method::LogReg];

    pub fn name(self) -> &'static str {
        match self {
            Method::MrcZeroOne => "mrc-zero-one",
            Method::MrcLog => "mrc-log",
            Method::AdvZeroOne => "adv-zero-one",
            Method::LogReg => "logreg",
        }
    }

    pub fn loss(self) -> LossKind {
        match self {
            Method::MrcZeroOne | Method::AdvZeroOne => LossKind::ZeroOne,
            Method::MrcLog | Method::LogReg => LossKind::Log,
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            Method::MrcZeroOne | Method::MrcLog => Variant::ExpectationOnly,
            Method::AdvZeroOne | Method::LogReg => Variant::FixedInstanceMarginal,
        }
    }
}

/// A scalar width or any policy string accepted by `--lambda`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaSetting {
    Scalar(f64),
    Policy(String),
}

fn default_lambda() -> LambdaSetting {
    LambdaSetting::Scalar(DEFAULT_LAMBDA)
}

fn default_max_leaves() -> usize {
    20
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_max_iters() -> usize {
    SolverConfig::default().max_iters
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// CSV file, relative paths resolved against the config file.
    pub dataset: PathBuf,
    pub train_sizes: Vec<usize>,
    pub repetitions: usize,
    pub test_size: usize,
    pub seed: u64,
    #[serde(default = "default_lambda")]
    pub lambda: LambdaSetting,
    #[serde(default = "default_max_leaves")]
    pub max_leaves: usize,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    /// Compute lower bounds for the MRC methods.
    #[serde(default = "default_true")]
    pub lower: bool,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let mut config: Self =
            serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        if config.dataset.is_relative() {
            if let Some(dir) = path.parent() {
                config.dataset = dir.join(&config.dataset);
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.train_sizes.is_empty() || self.train_sizes.contains(&0) {
            return Err(CliError::input("train_sizes must be a nonempty list of positive sizes"));
        }
        if self.repetitions == 0 {
            return Err(CliError::input("repetitions must be positive"));
        }
        if self.test_size == 0 {
            return Err(CliError::input("test_size must be positive"));
        }
        if self.methods.is_empty() {
            return Err(CliError::input("methods must not be empty"));
        }
        if self.max_iters == 0 {
            return Err(CliError::input("max_iters must be positive"));
        }
        StumpSpec::new(self.max_leaves)?;
        self.lambda_policy()?;
        Ok(())
    }

    pub fn lambda_policy(&self) -> CliResult<LambdaPolicy> {
        match &self.lambda {
            LambdaSetting::Scalar(v) => LambdaPolicy::parse(&v.to_string()),
            LambdaSetting::Policy(s) => LambdaPolicy::parse(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub n: usize,
    pub seed: u64,
    pub method: String,
    pub risk: f64,
    pub upper: Option<f64>,
    pub lower: Option<f64>,
}

/// Splits `total` across classes proportionally to `sizes` by largest
/// remainders, never exceeding a class size.
pub fn stratified_counts(sizes: &[usize], total: usize) -> CliResult<Vec<usize>> {
    let pool: usize = sizes.iter().sum();
    if total > pool {
        return Err(CliError::input(format!("asked for {total} rows, only {pool} available")));
    }
    let mut counts: Vec<usize> = sizes.iter().map(|&s| s * total / pool).collect();
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    // Remainder of s * total / pool, compared exactly in integers.
    order.sort_by_key(|&c| (std::cmp::Reverse(sizes[c] * total % pool), c));
    let mut missing = total - counts.iter().sum::<usize>();
    for &c in order.iter().cycle() {
        if missing == 0 {
            break;
        }
        if counts[c] < sizes[c] {
            counts[c] += 1;
            missing -= 1;
        }
    }
    Ok(counts)
}

/// Disjoint stratified test and training index sets.
pub fn stratified_split(labels: &[usize], num_classes: usize, test_size: usize, n: usize, rng: &mut ChaCha8Rng) -> CliResult<(Vec<usize>, Vec<usize>)> {
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for (i, &y) in labels.iter().enumerate() {
        by_class[y].push(i);
    }
    for members in &mut by_class {
        members.shuffle(rng);
    }
    let sizes: Vec<usize> = by_class.iter().map(Vec::len).collect();
    let test_counts = stratified_counts(&sizes, test_size)?;
    let rest: Vec<usize> = sizes.iter().zip(&test_counts).map(|(s, t)| s - t).collect();
    let train_counts = stratified_counts(&rest, n)?;
    let (mut test, mut train) = (Vec::with_capacity(test_size), Vec::with_capacity(n));
    for (c, members) in by_class.iter().enumerate() {
        test.extend_from_slice(&members[..test_counts[c]]);
        train.extend_from_slice(&members[test_counts[c]..test_counts[c] + train_counts[c]]);
    }
    test.sort_unstable();
    train.sort_unstable();
    Ok((test, train))
}

fn cell_rng(seed: u64, n: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    rng
}

fn run_cell(config: &ExperimentConfig, data: &Dataset, policy: &LambdaPolicy, n: usize, seed: u64) -> CliResult<Vec<ResultRow>> {
    let mut rng = cell_rng(seed, n);
    let (test_idx, train_idx) = stratified_split(data.labels(), data.num_classes(), config.test_size, n, &mut rng)?;
    let train = data.subset(&train_idx)?;
    let test = data.subset(&test_idx)?;
    let fm = fit_thresholds(&train, StumpSpec::new(config.max_leaves)?)?;
    let lambda = policy.resolve(&fm)?;
    let solver = SolverConfig {
        max_iters: config.max_iters,
        ..SolverConfig::default()
    };
    let mut rows = Vec::with_capacity(config.methods.len());
    for &method in &config.methods {
        let opts = FitOptions {
            loss: method.loss(),
            variant: method.variant(),
            exact: false,
            with_lower: config.lower,
            delta: policy.delta(),
            solver,
        };
        let trained = fit(&train, &fm, &lambda, &opts)?;
        let probs = predict_rows(&trained.model, test.rows())?;
        let risk = mean_loss(&method.loss(), &probs, test.labels())?;
        rows.push(ResultRow {
            n,
            seed,
            method: method.name().to_string(),
            risk,
            upper: trained.report.map(|r| r.upper),
            lower: trained.report.and_then(|r| r.lower),
        });
    }
    Ok(rows)
}

fn thread_count() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(CliError::input(format!("{THREADS_VAR} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

/// Runs every `(n, seed)` cell of the sweep.
pub fn run(config: &ExperimentConfig) -> CliResult<Vec<ResultRow>> {
    config.validate()?;
    let table = read_table(&config.dataset, true)?;
    let num_classes = table.max_label().unwrap_or(0).max(2);
    let data = table.to_dataset(num_classes)?;
    let policy = config.lambda_policy()?;
    let cells: Vec<(usize, u64)> = config
        .train_sizes
        .iter()
        .flat_map(|&n| (0..config.repetitions as u64).map(move |r| (n, config.seed + r)))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_count()? {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::input(format!("thread pool: {e}")))?;
    let results: Vec<CliResult<Vec<ResultRow>>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(n, seed)| run_cell(config, &data, &policy, n, seed))
            .collect()
    });
    let mut rows = Vec::with_capacity(cells.len() * config.methods.len());
    for cell in results {
        rows.extend(cell?);
    }
    let rank = |name: &str| config.methods.iter().position(|m| m.name() == name);
    rows.sort_by_key(|p| (p.n, p.seed, rank(&p.method)));
    Ok(rows)
}

pub const RESULT_COLUMNS: [&str; 6] = ["n", "seed", "method", "risk", "upper", "lower"];

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_results<W: std::io::Write>(writer: W, rows: &[ResultRow]) -> CliResult<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(RESULT_COLUMNS)?;
    for r in rows {
        csv.write_record([
            r.n.to_string(),
            r.seed.to_string(),
            r.method.clone(),
            r.risk.to_string(),
            opt_cell(r.upper),
            opt_cell(r.lower),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_results<R: std::io::Read>(reader: R) -> CliResult<Vec<ResultRow>> {
    let mut csv = csv::Reader::from_reader(reader);
    let header: Vec<String> = csv.headers()?.iter().map(str::to_string).collect();
    if header != RESULT_COLUMNS {
        return Err(CliError::input(format!("unexpected results header {header:?}")));
    }
    let number = |s: &str| -> CliResult<f64> {
        s.parse::<f64>()
            .map_err(|_| CliError::input(format!("bad number `{s}` in results")))
    };
    let optional = |s: &str| -> CliResult<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            number(s).map(Some)
        }
    };
    let mut rows = Vec::new();
    for record in csv.records() {
        let r = record?;
        rows.push(ResultRow {
            n: r[0].parse().map_err(|_| CliError::input(format!("bad n `{}`", &r[0])))?,
            seed: r[1].parse().map_err(|_| CliError::input(format!("bad seed `{}`", &r[1])))?,
            method: r[2].to_string(),
            risk: number(&r[3])?,
            upper: optional(&r[4])?,
            lower: optional(&r[5])?,
        });
    }
    Ok(rows)
}
