//! Learners whose uncertainty set also fixes the instances' marginal to the
//! empirical one.
//!
//! The offset `nu` becomes instance dependent, `phi(mu, x)`, and the dual
//! turns into a regularized empirical risk:
//!
//! ```text
//! (1/n) sum_i [-Phi(x_i, y_i)^T mu - phi(mu, x_i)] + (1/sqrt(n)) lambda^T |mu|
//! ```
//!
//! For the 0-1 loss this is the adversarial (minimax-hinge) classifier, and
//! for the log loss it is L1-regularized logistic regression.

use alloc::vec;
use alloc::vec::Vec;

use crate::data::Dataset;
use crate::dual::{log_offset, minimize_subgradient, zero_one_offset, SolverConfig};
use crate::error::{MrcError, Result};
use crate::features::{constraint_atoms, empirical_mean, ConstraintAtoms, FeatureMap};
use crate::loss::LossKind;
use crate::math::{dot, softmax_into, sqrt};
use crate::model::{MrcModel, Variant};
use crate::predict::{log_rule, model_scores, zero_one_rule};

/// `phi_01(mu, x) = min_{C != {}} (1 - sum_{y in C} (Phi(x, y)^T mu + 1)) / |C|`.
pub fn phi01_instance(mu: &[f64], fm: &FeatureMap, x: &[f64]) -> Result<f64> {
    Ok(zero_one_offset(&fm.scores(x, mu)?))
}

/// `phi_log(mu, x) = -log sum_y exp(Phi(x, y)^T mu)`.
pub fn philog_instance(mu: &[f64], fm: &FeatureMap, x: &[f64]) -> Result<f64> {
    Ok(log_offset(&fm.scores(x, mu)?))
}

/// The regularized empirical objective for a 0-1 or log loss.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedMarginalObjective {
    loss: LossKind,
    atoms: ConstraintAtoms,
    tau: Vec<f64>,
    penalty: Vec<f64>,
    n: usize,
}

impl FixedMarginalObjective {
    pub fn new(loss: LossKind, fm: &FeatureMap, data: &Dataset, lambda: &[f64]) -> Result<Self> {
        if !matches!(loss, LossKind::ZeroOne | LossKind::Log) {
            return Err(MrcError::UnsupportedLoss("fixed-marginal learners exist for 0-1 and log"));
        }
        if lambda.len() != fm.len() {
            return Err(MrcError::DimensionMismatch {
                expected: fm.len(),
                found: lambda.len(),
            });
        }
        if let Some((index, &value)) = lambda.iter().enumerate().find(|(_, l)| !(l.is_finite() && **l >= 0.0)) {
            return Err(MrcError::InvalidLambda { index, value });
        }
        let tau = empirical_mean(fm, data)?;
        let atoms = constraint_atoms(fm, data)?;
        let root_n = sqrt(data.len() as f64);
        Ok(Self {
            loss,
            atoms,
            tau,
            penalty: lambda.iter().map(|l| l / root_n).collect(),
            n: data.len(),
        })
    }

    pub fn loss(&self) -> &LossKind {
        &self.loss
    }

    pub fn dim(&self) -> usize {
        self.tau.len()
    }

    fn offset(&self, scores: &[f64]) -> f64 {
        match self.loss {
            LossKind::ZeroOne => zero_one_offset(scores),
            _ => log_offset(scores),
        }
    }

    fn check(&self, mu: &[f64]) -> Result<()> {
        if mu.len() != self.dim() {
            return Err(MrcError::DimensionMismatch {
                expected: self.dim(),
                found: mu.len(),
            });
        }
        Ok(())
    }

    pub fn value(&self, mu: &[f64]) -> Result<f64> {
        self.check(mu)?;
        let n = self.n as f64;
        let mut scores = vec![0.0; self.atoms.num_classes()];
        let mut total = 0.0;
        for j in 0..self.atoms.len() {
            self.atoms.scores_into(j, mu, &mut scores);
            total += self.atoms.count(j) as f64 * self.offset(&scores);
        }
        let l1: f64 = self.penalty.iter().zip(mu).map(|(p, m)| p * m.abs()).sum();
        Ok(-dot(&self.tau, mu) - total / n + l1)
    }

    pub fn value_and_subgradient(&self, mu: &[f64]) -> Result<(f64, Vec<f64>)> {
        let value = self.value(mu)?;
        let n = self.n as f64;
        let num_classes = self.atoms.num_classes();
        let mut g: Vec<f64> = self
            .tau
            .iter()
            .zip(self.penalty.iter().zip(mu))
            .map(|(t, (p, m))| {
                let sign = if *m > 0.0 {
                    1.0
                } else if *m < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                p * sign - t
            })
            .collect();
        let mut scores = vec![0.0; num_classes];
        let mut weights = vec![0.0; num_classes];
        let mut order: Vec<usize> = Vec::with_capacity(num_classes);
        for j in 0..self.atoms.len() {
            self.atoms.scores_into(j, mu, &mut scores);
            match self.loss {
                LossKind::ZeroOne => {
                    order.clear();
                    order.extend(0..num_classes);
                    order.sort_by(|&p, &q| scores[q].total_cmp(&scores[p]).then(p.cmp(&q)));
                    let (mut best, mut best_k, mut prefix) = (f64::INFINITY, 0, 0.0);
                    for (i, &y) in order.iter().enumerate() {
                        prefix += scores[y] + 1.0;
                        let v = (1.0 - prefix) / (i + 1) as f64;
                        if v < best {
                            best = v;
                            best_k = i + 1;
                        }
                    }
                    weights.iter_mut().for_each(|w| *w = 0.0);
                    for &y in &order[..best_k] {
                        weights[y] = 1.0 / best_k as f64;
                    }
                }
                _ => softmax_into(&scores, &mut weights),
            }
            let scale = self.atoms.count(j) as f64 / n;
            for (y, w) in weights.iter().enumerate() {
                if *w == 0.0 {
                    continue;
                }
                for (gi, f) in g.iter_mut().zip(self.atoms.vector(j, y)) {
                    *gi += scale * w * f;
                }
            }
        }
        Ok((value, g))
    }
}

fn train(loss: LossKind, data: &Dataset, fm: &FeatureMap, lambda: &[f64], cfg: &SolverConfig) -> Result<MrcModel> {
    let obj = FixedMarginalObjective::new(loss, fm, data, lambda)?;
    let run = minimize_subgradient(|mu| obj.value_and_subgradient(mu), vec![0.0; obj.dim()], cfg)?;
    Ok(MrcModel {
        loss: obj.loss,
        mu: run.x,
        nu: None,
        objective_value: run.value,
        variant: Variant::FixedInstanceMarginal,
        feature_map: Some(fm.clone()),
        converged: run.converged,
        iterations: run.iterations,
    })
}

/// Adversarial 0-1 classifier (minimax-hinge empirical risk with L1 penalty).
pub fn train_adversarial01(data: &Dataset, fm: &FeatureMap, lambda: &[f64], cfg: &SolverConfig) -> Result<MrcModel> {
    train(LossKind::ZeroOne, data, fm, lambda, cfg)
}

/// L1-regularized logistic regression.
pub fn train_logreg(data: &Dataset, fm: &FeatureMap, lambda: &[f64], cfg: &SolverConfig) -> Result<MrcModel> {
    train(LossKind::Log, data, fm, lambda, cfg)
}

/// Rule of a fixed-marginal model from the scores at one instance.
pub fn fixed_marginal_rule(loss: &LossKind, scores: &[f64]) -> Result<Vec<f64>> {
    match loss {
        LossKind::ZeroOne => Ok(zero_one_rule(scores, zero_one_offset(scores))),
        LossKind::Log => Ok(log_rule(scores)),
        _ => Err(MrcError::UnsupportedLoss("fixed-marginal learners exist for 0-1 and log")),
    }
}

pub fn predict_fixed_marginal(model: &MrcModel, x: &[f64]) -> Result<Vec<f64>> {
    if model.variant != Variant::FixedInstanceMarginal {
        return Err(MrcError::UnsupportedVariant("expected a fixed-marginal model"));
    }
    fixed_marginal_rule(&model.loss, &model_scores(model, x)?)
}
