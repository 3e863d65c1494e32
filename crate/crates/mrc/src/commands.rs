//! Subcommands of the `mrc` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mrc_core::bounds::bound_report;
use mrc_core::features::{constraint_atoms, estimate_expectations, fit_thresholds};
use mrc_core::oracle::{brute_force_max_entropy, exhaustive_minimax, TinyInstance};
use mrc_core::predict::LabelSampler;
use mrc_core::{ExpectationBox, FeatureMap, LossKind, MrcModel, SolverConfig, StumpSpec, Variant};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::experiment::{self, ExperimentConfig};
use crate::format::{parse_variant, read_json, write_json, FeatureFile, ModelFile, ModelMeta, StoredBounds};
use crate::io::{read_table, Table, LABEL_COLUMN};
use crate::pipeline::{fit, mean_loss, predict_rows, FitOptions};
use crate::policy::{loss_label, parse_loss, LambdaPolicy};

#[derive(Debug, Parser)]
#[command(name = "mrc", version, about = "Minimax risk classifiers: train, bound, predict and evaluate")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit threshold features on a labelled CSV and save them as JSON.
    Featurize(FeaturizeArgs),
    /// Train a classifier and report its risk bounds.
    Train(TrainArgs),
    /// Write per-instance labels and class probabilities.
    Predict(PredictArgs),
    /// Empirical risks of a model on a labelled CSV.
    Eval(EvalArgs),
    /// Recompute the risk bounds of a model from its training data.
    Bounds(BoundsArgs),
    /// Run a sweep described by a JSON config and write a results CSV.
    Experiment(ExperimentArgs),
    /// Brute-force maximum entropy over a tiny explicit instance space.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct FeaturizeArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Leaf budget of each per-dimension decision tree.
    #[arg(long, default_value_t = 20)]
    pub max_leaves: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// zero-one, log or alpha:<a>.
    #[arg(long)]
    pub loss: String,
    /// A width for every coordinate, theorem3:<delta>, or a file of widths.
    #[arg(long, default_value = "0.25")]
    pub lambda: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Features saved by `featurize`; fitted from the data when absent.
    #[arg(long)]
    pub features: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub max_leaves: usize,
    /// expectation or fixed-marginal.
    #[arg(long, default_value = "expectation")]
    pub variant: String,
    /// Number of classes; defaults to the largest label (at least 2).
    #[arg(long)]
    pub classes: Option<usize>,
    /// Solve the zero-one dual exactly as a linear program.
    #[arg(long)]
    pub exact: bool,
    /// Also compute the lower bound.
    #[arg(long)]
    pub lower: bool,
    /// Fail with exit code 3 when the solver does not converge.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, default_value_t = SolverConfig::default().max_iters)]
    pub max_iters: usize,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed of the label sampler used by zero-one models.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    /// Also print the bounds stored with the model.
    #[arg(long)]
    pub bounds: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// The data the model was trained on.
    #[arg(long)]
    pub data: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// JSON instance: `phi[x][y]` vectors, a box, optional marginal.
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value = "zero-one")]
    pub loss: String,
    #[arg(long, default_value_t = 0.02)]
    pub step: f64,
    /// Also run the exhaustive minimax search with this rule grid.
    #[arg(long)]
    pub rule_step: Option<f64>,
}

/// Tiny instance space for the `oracle` command. The box is given either
/// by `tau`, `lambda` and `n`, or by explicit `lower` and `upper` ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub phi: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    pub tau: Option<Vec<f64>>,
    #[serde(default)]
    pub lambda: Option<Vec<f64>>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub lower: Option<Vec<f64>>,
    #[serde(default)]
    pub upper: Option<Vec<f64>>,
    #[serde(default)]
    pub marginal: Option<Vec<f64>>,
}

impl OracleSpec {
    pub fn instance(&self) -> CliResult<TinyInstance> {
        let num_instances = self.phi.len();
        let num_classes = self.phi.first().map_or(0, Vec::len);
        let m = self.phi.first().and_then(|r| r.first()).map_or(0, Vec::len);
        let mut features = Vec::with_capacity(num_instances * num_classes * m);
        for row in &self.phi {
            if row.len() != num_classes || row.iter().any(|v| v.len() != m) {
                return Err(CliError::input("phi must be a |X| x |Y| x m array"));
            }
            features.extend(row.iter().flatten());
        }
        Ok(TinyInstance::new(num_instances, num_classes, m, features)?)
    }

    pub fn expectation_box(&self) -> CliResult<ExpectationBox> {
        match (&self.tau, &self.lambda, &self.lower, &self.upper) {
            (Some(tau), Some(lambda), None, None) => Ok(ExpectationBox::new(tau.clone(), lambda.clone(), self.n.unwrap_or(1))?),
            (None, None, Some(a), Some(b)) => Ok(ExpectationBox::from_bounds(a.clone(), b.clone(), self.n.unwrap_or(1))?),
            _ => Err(CliError::input("give either tau and lambda, or lower and upper")),
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Featurize(a) => featurize(a, out),
        Command::Train(a) => train(a, out),
        Command::Predict(a) => predict(a, out),
        Command::Eval(a) => eval(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Experiment(a) => run_experiment(a, out),
        Command::Oracle(a) => oracle(a, out),
    }
}

fn class_count(table: &Table, requested: Option<usize>) -> CliResult<usize> {
    let seen = table.max_label().unwrap_or(0);
    let k = requested.unwrap_or(seen.max(2));
    if k < 2 {
        return Err(CliError::input("at least two classes are needed"));
    }
    if seen > k {
        return Err(CliError::input(format!("label {seen} exceeds the {k} classes")));
    }
    Ok(k)
}

fn featurize(args: FeaturizeArgs, out: &mut dyn Write) -> CliResult<()> {
    let table = read_table(&args.data, true)?;
    let data = table.to_dataset(class_count(&table, None)?)?;
    let fm = fit_thresholds(&data, StumpSpec::new(args.max_leaves)?)?;
    write_json(&args.out, &FeatureFile::from_map(&fm, &table.feature_names))?;
    writeln!(out, "thresholds: {}", fm.thresholds().len())?;
    writeln!(out, "features: {}", fm.len())?;
    Ok(())
}

fn check_schema(expected: &[String], expected_dim: usize, table: &Table) -> CliResult<()> {
    if table.dim() != expected_dim {
        return Err(CliError::input(format!(
            "data has {} feature columns, the model expects {expected_dim}",
            table.dim()
        )));
    }
    if !expected.is_empty() && expected != table.feature_names.as_slice() {
        return Err(CliError::input(format!(
            "feature columns {:?} do not match the model's {:?}",
            table.feature_names, expected
        )));
    }
    Ok(())
}

fn write_bounds(out: &mut dyn Write, b: &StoredBounds) -> CliResult<()> {
    writeln!(out, "upper: {}", b.upper)?;
    if let Some(lower) = b.lower {
        writeln!(out, "lower: {lower}")?;
    }
    if let Some(delta) = b.delta {
        writeln!(out, "delta: {delta}")?;
    }
    writeln!(out, "interval_slack: {}", b.interval_slack)?;
    writeln!(out, "point_slack: {}", b.point_slack)?;
    Ok(())
}

fn train(args: TrainArgs, out: &mut dyn Write) -> CliResult<()> {
    let loss = parse_loss(&args.loss)?;
    let variant = parse_variant(&args.variant)?;
    let policy = LambdaPolicy::parse(&args.lambda)?;
    let table = read_table(&args.data, true)?;
    let (fm, data) = match &args.features {
        Some(path) => {
            let file: FeatureFile = read_json(path)?;
            check_schema(&file.feature_names, file.input_dim, &table)?;
            let fm = file.to_map()?;
            let k = class_count(&table, Some(args.classes.unwrap_or(fm.num_classes())))?;
            if k != fm.num_classes() {
                return Err(CliError::input("--classes disagrees with the feature file"));
            }
            (fm, table.to_dataset(k)?)
        }
        None => {
            let data = table.to_dataset(class_count(&table, args.classes)?)?;
            (fit_thresholds(&data, StumpSpec::new(args.max_leaves)?)?, data)
        }
    };
    let lambda = policy.resolve(&fm)?;
    let opts = FitOptions {
        loss,
        variant,
        exact: args.exact,
        with_lower: args.lower,
        delta: policy.delta(),
        solver: SolverConfig {
            max_iters: args.max_iters,
            ..SolverConfig::default()
        },
    };
    let trained = fit(&data, &fm, &lambda, &opts)?;
    let model = &trained.model;
    if args.strict && !(model.converged && model.objective_value.is_finite()) {
        return Err(CliError::Numeric(format!(
            "solver stopped after {} iterations without converging",
            model.iterations
        )));
    }
    let stored = trained.report.as_ref().map(StoredBounds::from);
    let meta = ModelMeta {
        feature_names: table.feature_names.clone(),
        lambda_policy: policy.to_string(),
        lambda,
        n: data.len(),
        bounds: stored.clone(),
    };
    write_json(&args.out, &ModelFile::new(model, meta)?)?;
    writeln!(out, "loss: {}", loss_label(&model.loss))?;
    writeln!(out, "variant: {}", args.variant)?;
    writeln!(out, "features: {}", fm.len())?;
    writeln!(out, "objective: {}", model.objective_value)?;
    writeln!(out, "iterations: {}", model.iterations)?;
    writeln!(out, "converged: {}", model.converged)?;
    if let Some(b) = &stored {
        write_bounds(out, b)?;
    }
    Ok(())
}

fn load_model(path: &Path) -> CliResult<(ModelFile, MrcModel)> {
    let file: ModelFile = read_json(path)?;
    let model = file.to_model()?;
    Ok((file, model))
}

fn predict(args: PredictArgs, out: &mut dyn Write) -> CliResult<()> {
    let (file, model) = load_model(&args.model)?;
    let table = read_table(&args.data, false)?;
    check_schema(&file.feature_names, file.input_dim, &table)?;
    let probs = predict_rows(&model, table.rows.iter().map(Vec::as_slice))?;
    let mut sampler = LabelSampler::new(args.seed);
    let mut buffer = Vec::new();
    {
        let mut csv = csv::Writer::from_writer(&mut buffer);
        let mut header = vec![LABEL_COLUMN.to_string()];
        header.extend((1..=file.num_classes).map(|c| format!("prob_{c}")));
        csv.write_record(&header)?;
        for h in &probs {
            let label = match model.loss {
                LossKind::ZeroOne => sampler.sample(h),
                _ => mrc_core::math::argmax(h),
            };
            let mut record = vec![(label + 1).to_string()];
            record.extend(h.iter().map(|p| p.to_string()));
            csv.write_record(&record)?;
        }
        csv.flush()?;
    }
    match &args.out {
        Some(path) => std::fs::write(path, &buffer).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?,
        None => out.write_all(&buffer)?,
    }
    Ok(())
}

fn eval(args: EvalArgs, out: &mut dyn Write) -> CliResult<()> {
    let (file, model) = load_model(&args.model)?;
    let table = read_table(&args.data, true)?;
    check_schema(&file.feature_names, file.input_dim, &table)?;
    let data = table.to_dataset(file.num_classes)?;
    let probs = predict_rows(&model, data.rows())?;
    writeln!(out, "n: {}", data.len())?;
    writeln!(out, "zero-one risk: {}", mean_loss(&LossKind::ZeroOne, &probs, data.labels())?)?;
    writeln!(out, "log risk: {}", mean_loss(&LossKind::Log, &probs, data.labels())?)?;
    if let LossKind::Alpha(_) = model.loss {
        writeln!(
            out,
            "{} risk: {}",
            loss_label(&model.loss),
            mean_loss(&model.loss, &probs, data.labels())?
        )?;
    }
    if args.bounds {
        match &file.bounds {
            Some(b) => write_bounds(out, b)?,
            None => writeln!(out, "bounds: none stored")?,
        }
    }
    Ok(())
}

fn bounds(args: BoundsArgs, out: &mut dyn Write) -> CliResult<()> {
    let (file, model) = load_model(&args.model)?;
    if model.variant != Variant::ExpectationOnly {
        return Err(CliError::input("bounds are defined for expectation models"));
    }
    let table = read_table(&args.data, true)?;
    check_schema(&file.feature_names, file.input_dim, &table)?;
    let data = table.to_dataset(file.num_classes)?;
    let fm: FeatureMap = file.feature_map()?;
    let bx = estimate_expectations(&fm, &data, &file.lambda)?;
    let atoms = constraint_atoms(&fm, &data)?;
    let delta = LambdaPolicy::parse(&file.lambda_policy).ok().and_then(|p| p.delta());
    let report = bound_report(&model, &bx, &atoms, delta)?;
    write_bounds(out, &StoredBounds::from(&report))
}

fn run_experiment(args: ExperimentArgs, out: &mut dyn Write) -> CliResult<()> {
    let config = ExperimentConfig::load(&args.config)?;
    let rows = experiment::run(&config)?;
    let file = std::fs::File::create(&args.out).map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    experiment::write_results(std::io::BufWriter::new(file), &rows)?;
    writeln!(out, "runs: {}", rows.len())?;
    Ok(())
}

fn oracle(args: OracleArgs, out: &mut dyn Write) -> CliResult<()> {
    let loss = parse_loss(&args.loss)?;
    let spec: OracleSpec = read_json(&args.instance)?;
    let inst = spec.instance()?;
    let bx = spec.expectation_box()?;
    let outcome = brute_force_max_entropy(&loss, &inst, &bx, spec.marginal.as_deref(), args.step)?;
    writeln!(out, "max_entropy: {}", outcome.value)?;
    writeln!(out, "feasible_points: {}", outcome.feasible_points)?;
    if let Some(note) = outcome.diagnostic() {
        writeln!(out, "note: {note}")?;
    }
    if let Some(rule_step) = args.rule_step {
        if spec.marginal.is_some() {
            return Err(CliError::input("the minimax search does not support a fixed marginal"));
        }
        let value = exhaustive_minimax(&loss, &inst, &bx, rule_step, args.step)?;
        writeln!(out, "minimax: {value}")?;
    }
    Ok(())
}
