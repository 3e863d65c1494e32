//! The loss taxonomy: 0-1, log, alpha and log-relative losses.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{MrcError, Result};

/// `beta = alpha / (alpha - 1)`, the exponent used by alpha-loss scores.
pub fn beta_of_alpha(alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha == 1.0 {
        return Err(MrcError::InvalidAlpha(alpha));
    }
    Ok(alpha / (alpha - 1.0))
}

/// A validated alpha-loss parameter, `alpha in (0, 1) U (1, inf)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha {
    alpha: f64,
    beta: f64,
}

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        let beta = beta_of_alpha(alpha)?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Reference label distribution of the log-relative loss. Strictly positive,
/// sums to one within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prior(Vec<f64>);

impl Prior {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(MrcError::TooFewClasses(probs.len()));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(MrcError::InvalidProbability(format!(
                "prior entries must be strictly positive (found {p})"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(MrcError::InvalidProbability(format!(
                "prior sums to {total}"
            )));
        }
        Ok(Self(probs))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LossKind {
    ZeroOne,
    Log,
    Alpha(Alpha),
    /// Supported for score and entropy evaluation only; there is no trainer.
    LogRelative(Prior),
}

impl LossKind {
    pub fn alpha(alpha: f64) -> Result<Self> {
        Alpha::new(alpha).map(LossKind::Alpha)
    }

    pub fn name(&self) -> &'static str {
        match self {
            LossKind::ZeroOne => "zero-one",
            LossKind::Log => "log",
            LossKind::Alpha(_) => "alpha",
            LossKind::LogRelative(_) => "log-relative",
        }
    }
}
