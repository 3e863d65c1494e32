//! Training and scoring shared by the commands and the experiment runner.

use mrc_core::bounds::{bound_report, theorem3_report};
use mrc_core::dual::{train_mrc, train_zero_one_exact};
use mrc_core::entropy::score;
use mrc_core::features::{constraint_atoms, estimate_expectations};
use mrc_core::marginal::{train_adversarial01, train_logreg};
use mrc_core::predict::predict_proba;
use mrc_core::{BoundReport, Dataset, FeatureMap, LossKind, MrcModel, SolverConfig, Variant};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    pub loss: LossKind,
    pub variant: Variant,
    /// Solve the 0-1 dual as a linear program instead of by subgradients.
    pub exact: bool,
    /// Also compute the lower bound (one LP over the atoms).
    pub with_lower: bool,
    pub delta: Option<f64>,
    pub solver: SolverConfig,
}

impl FitOptions {
    pub fn new(loss: LossKind) -> Self {
        Self {
            loss,
            variant: Variant::ExpectationOnly,
            exact: false,
            with_lower: false,
            delta: None,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    pub model: MrcModel,
    /// Bounds of expectation-only models.
    pub report: Option<BoundReport>,
}

pub fn fit(data: &Dataset, fm: &FeatureMap, lambda: &[f64], opts: &FitOptions) -> CliResult<Fit> {
    match opts.variant {
        Variant::ExpectationOnly => {
            let bx = estimate_expectations(fm, data, lambda)?;
            let atoms = constraint_atoms(fm, data)?;
            let model = if opts.exact {
                if opts.loss != LossKind::ZeroOne {
                    return Err(CliError::input("--exact applies to the zero-one loss only"));
                }
                train_zero_one_exact(&bx, &atoms, &opts.solver)?
            } else {
                train_mrc(opts.loss.clone(), &bx, &atoms, &opts.solver)?
            };
            let model = model.with_feature_map(fm.clone());
            let mut report = if opts.with_lower {
                bound_report(&model, &bx, &atoms, opts.delta)?
            } else {
                let upper = mrc_core::bounds::upper_bound(&model, &bx)?;
                theorem3_report(upper, lambda, &model.mu, data.len())
            };
            report.delta = opts.delta;
            Ok(Fit {
                model,
                report: Some(report),
            })
        }
        Variant::FixedInstanceMarginal => {
            let model = match opts.loss {
                LossKind::ZeroOne => train_adversarial01(data, fm, lambda, &opts.solver)?,
                LossKind::Log => train_logreg(data, fm, lambda, &opts.solver)?,
                _ => return Err(CliError::input("the fixed-marginal variant supports zero-one and log")),
            };
            Ok(Fit { model, report: None })
        }
    }
}

/// Probability assessments of `model` on every row of `rows`.
pub fn predict_rows<'a, I>(model: &MrcModel, rows: I) -> CliResult<Vec<Vec<f64>>>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    rows.into_iter()
        .map(|x| predict_proba(model, x).map_err(CliError::from))
        .collect()
}

/// Mean loss of the assessments `probs` at the labels of `data`. The 0-1
/// loss is taken in expectation over the randomized rule, `1 - h(y|x)`.
pub fn mean_loss(loss: &LossKind, probs: &[Vec<f64>], labels: &[usize]) -> CliResult<f64> {
    if probs.len() != labels.len() || labels.is_empty() {
        return Err(CliError::input("predictions and labels differ in length"));
    }
    let mut total = 0.0;
    for (h, &y) in probs.iter().zip(labels) {
        total += match loss {
            LossKind::ZeroOne => {
                if y >= h.len() {
                    return Err(CliError::input(format!("label {} out of range", y + 1)));
                }
                1.0 - h[y]
            }
            other => score(other, h, y)?,
        };
    }
    Ok(total / labels.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mrc_core::features::fit_thresholds;
    use mrc_core::StumpSpec;

    fn toy() -> Dataset {
        let rows: Vec<Vec<f64>> = (0..40).map(|i| vec![(i % 10) as f64]).collect();
        let labels = (0..40).map(|i| usize::from(i % 10 >= 5)).collect();
        Dataset::from_rows(&rows, labels, 2).unwrap()
    }

    #[test]
    fn expectation_fit_reports_bounds() {
        let data = toy();
        let fm = fit_thresholds(&data, StumpSpec::new(2).unwrap()).unwrap();
        let lambda = vec![0.25; fm.len()];
        let mut opts = FitOptions::new(LossKind::ZeroOne);
        opts.with_lower = true;
        let fit = fit(&data, &fm, &lambda, &opts).unwrap();
        let report = fit.report.unwrap();
        let lower = report.lower.unwrap();
        assert!(lower <= report.upper + 1e-9);
        let probs = predict_rows(&fit.model, data.rows()).unwrap();
        let risk = mean_loss(&LossKind::ZeroOne, &probs, data.labels()).unwrap();
        assert!(risk <= report.upper + 1e-6, "{risk} {}", report.upper);
        opts.exact = true;
        let exact = super::fit(&data, &fm, &lambda, &opts).unwrap();
        assert!((exact.model.objective_value - fit.model.objective_value).abs() < 1e-3);
    }

    #[test]
    fn exact_requires_zero_one() {
        let data = toy();
        let fm = FeatureMap::intercept_only(2, 1).unwrap();
        let mut opts = FitOptions::new(LossKind::Log);
        opts.exact = true;
        assert!(matches!(fit(&data, &fm, &[0.1, 0.1], &opts), Err(CliError::Input(_))));
    }

    #[test]
    fn expected_zero_one_loss() {
        let probs = vec![vec![0.25, 0.75], vec![1.0, 0.0]];
        let risk = mean_loss(&LossKind::ZeroOne, &probs, &[1, 1]).unwrap();
        assert!((risk - 0.625).abs() < 1e-15);
        let log = mean_loss(&LossKind::Log, &probs, &[1, 0]).unwrap();
        assert!((log - 0.75f64.ln().abs() / 2.0).abs() < 1e-15);
    }
}
