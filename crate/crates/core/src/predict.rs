//! Prediction rules of trained models.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MrcError, Result};
use crate::loss::LossKind;
use crate::marginal;
use crate::math::{argmax, positive_part, pow, softmax_into};
use crate::model::{MrcModel, Variant};

/// Slack allowed on the alpha dual constraint before prediction fails.
pub const ALPHA_FEASIBILITY_TOL: f64 = 1e-9;

/// 0-1 rule `(s_y + nu + 1)_+ / c`, uniform when `c = 0`.
pub fn zero_one_rule(scores: &[f64], nu: f64) -> Vec<f64> {
    let mut h: Vec<f64> = scores.iter().map(|s| positive_part(s + nu + 1.0)).collect();
    normalize_or_uniform(&mut h);
    h
}

pub(crate) fn normalize_or_uniform(h: &mut [f64]) {
    let total: f64 = h.iter().sum();
    if total > 0.0 {
        h.iter_mut().for_each(|v| *v /= total);
    } else {
        let u = 1.0 / h.len() as f64;
        h.iter_mut().for_each(|v| *v = u);
    }
}

/// Log rule: softmax of the scores.
pub fn log_rule(scores: &[f64]) -> Vec<f64> {
    let mut h = vec![0.0; scores.len()];
    softmax_into(scores, &mut h);
    h
}

/// Base masses `((s_y + nu) / beta + 1)_+^beta` of the alpha rule.
pub fn alpha_base(scores: &[f64], nu: f64, beta: f64) -> Vec<f64> {
    scores
        .iter()
        .map(|s| {
            let z = (s + nu) / beta + 1.0;
            if z > 0.0 {
                pow(z, beta)
            } else if beta > 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        })
        .collect()
}

/// Alpha rule: base masses plus an even share of the remaining mass.
pub fn alpha_rule(scores: &[f64], nu: f64, beta: f64) -> Result<Vec<f64>> {
    let mut h = alpha_base(scores, nu, beta);
    let total: f64 = h.iter().sum();
    if !(total <= 1.0 + ALPHA_FEASIBILITY_TOL) {
        return Err(MrcError::AlphaInfeasible(total));
    }
    let share = (1.0 - total) / h.len() as f64;
    h.iter_mut().for_each(|v| *v += share);
    Ok(h)
}

fn expectation_nu(model: &MrcModel) -> Result<f64> {
    if model.variant != Variant::ExpectationOnly {
        return Err(MrcError::UnsupportedVariant("rule needs the global offset nu"));
    }
    model
        .nu
        .ok_or_else(|| MrcError::Incompatible("model has no offset nu".into()))
}

/// The rule of an expectation-only model applied to precomputed scores
/// `s_y = Phi(x, y)^T mu`. Alpha models fall back to normalizing the base
/// masses when they exceed one.
pub fn rule_from_scores(model: &MrcModel, scores: &[f64]) -> Result<Vec<f64>> {
    let nu = expectation_nu(model)?;
    match &model.loss {
        LossKind::ZeroOne => Ok(zero_one_rule(scores, nu)),
        LossKind::Log => Ok(log_rule(scores)),
        LossKind::Alpha(a) => match alpha_rule(scores, nu, a.beta()) {
            Ok(h) => Ok(h),
            Err(MrcError::AlphaInfeasible(_)) => {
                let mut h = alpha_base(scores, nu, a.beta());
                if h.iter().any(|v| v.is_infinite()) {
                    let hits = h.iter().filter(|v| v.is_infinite()).count() as f64;
                    h.iter_mut().for_each(|v| *v = if v.is_infinite() { 1.0 / hits } else { 0.0 });
                } else {
                    normalize_or_uniform(&mut h);
                }
                Ok(h)
            }
            Err(e) => Err(e),
        },
        LossKind::LogRelative(_) => Err(MrcError::UnsupportedLoss("log-relative loss has no prediction rule")),
    }
}

pub(crate) fn model_scores(model: &MrcModel, x: &[f64]) -> Result<Vec<f64>> {
    let fm = model
        .feature_map
        .as_ref()
        .ok_or_else(|| MrcError::Incompatible("model has no feature map".into()))?;
    if fm.len() != model.mu.len() {
        return Err(MrcError::DimensionMismatch {
            expected: fm.len(),
            found: model.mu.len(),
        });
    }
    fm.scores(x, &model.mu)
}

fn require_loss(model: &MrcModel, wanted: &'static str) -> Result<()> {
    if model.loss.name() != wanted {
        return Err(MrcError::Incompatible(format!(
            "expected a {wanted} model, found {}",
            model.loss.name()
        )));
    }
    Ok(())
}

pub fn predict_zero_one(model: &MrcModel, x: &[f64]) -> Result<Vec<f64>> {
    require_loss(model, "zero-one")?;
    let nu = expectation_nu(model)?;
    Ok(zero_one_rule(&model_scores(model, x)?, nu))
}

pub fn predict_log(model: &MrcModel, x: &[f64]) -> Result<Vec<f64>> {
    require_loss(model, "log")?;
    expectation_nu(model)?;
    Ok(log_rule(&model_scores(model, x)?))
}

/// Alpha rule on `x`; fails with [`MrcError::AlphaInfeasible`] when the base
/// masses exceed one.
pub fn predict_alpha(model: &MrcModel, x: &[f64]) -> Result<Vec<f64>> {
    let LossKind::Alpha(a) = &model.loss else {
        return Err(MrcError::Incompatible("expected an alpha model".into()));
    };
    let nu = expectation_nu(model)?;
    alpha_rule(&model_scores(model, x)?, nu, a.beta())
}

/// Conditional distribution `h(.|x)` for any model.
pub fn predict_proba(model: &MrcModel, x: &[f64]) -> Result<Vec<f64>> {
    match model.variant {
        Variant::ExpectationOnly => rule_from_scores(model, &model_scores(model, x)?),
        Variant::FixedInstanceMarginal => marginal::predict_fixed_marginal(model, x),
    }
}

/// Most probable label, smallest index on ties.
pub fn predict_label(model: &MrcModel, x: &[f64]) -> Result<usize> {
    Ok(argmax(&predict_proba(model, x)?))
}

/// Seeded label sampler; the same seed yields the same label stream.
#[derive(Debug, Clone)]
pub struct LabelSampler {
    rng: ChaCha8Rng,
}

impl LabelSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Draws a label from the probability vector `h`.
    pub fn sample(&mut self, h: &[f64]) -> usize {
        let u = (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let total: f64 = h.iter().sum();
        let target = u * total;
        let mut acc = 0.0;
        for (y, p) in h.iter().enumerate() {
            acc += p;
            if target < acc {
                return y;
            }
        }
        h.iter().rposition(|p| *p > 0.0).unwrap_or(h.len() - 1)
    }
}
