//! JSON persistence of feature maps and models.
//!
//! Threshold dimensions are 1-based in files. Floats are written in their
//! shortest round-trip form, so reading a file back reproduces every value
//! bit for bit.

use std::path::Path;

use mrc_core::bounds::BoundReport;
use mrc_core::{FeatureMap, LossKind, MrcModel, Threshold, Variant};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::policy::parse_loss;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureFile {
    pub format_version: u32,
    pub num_classes: usize,
    pub input_dim: usize,
    pub feature_names: Vec<String>,
    /// `(dimension, value)` pairs, dimensions counted from 1.
    pub thresholds: Vec<(usize, f64)>,
}

impl FeatureFile {
    pub fn from_map(fm: &FeatureMap, feature_names: &[String]) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            num_classes: fm.num_classes(),
            input_dim: fm.input_dim(),
            feature_names: feature_names.to_vec(),
            thresholds: encode_thresholds(fm),
        }
    }

    pub fn to_map(&self) -> CliResult<FeatureMap> {
        check_version(self.format_version)?;
        decode_map(self.num_classes, self.input_dim, &self.thresholds)
    }
}

fn encode_thresholds(fm: &FeatureMap) -> Vec<(usize, f64)> {
    fm.thresholds().iter().map(|t| (t.dim + 1, t.value)).collect()
}

fn decode_map(num_classes: usize, input_dim: usize, thresholds: &[(usize, f64)]) -> CliResult<FeatureMap> {
    let thresholds = thresholds
        .iter()
        .map(|&(dim, value)| {
            if dim == 0 {
                Err(CliError::input("threshold dimensions are counted from 1"))
            } else {
                Ok(Threshold { dim: dim - 1, value })
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(FeatureMap::new(num_classes, input_dim, thresholds)?)
}

fn check_version(version: u32) -> CliResult<()> {
    if version != FORMAT_VERSION {
        return Err(CliError::input(format!("unsupported format_version {version}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredBounds {
    pub upper: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub interval_slack: f64,
    pub point_slack: f64,
}

impl From<&BoundReport> for StoredBounds {
    fn from(r: &BoundReport) -> Self {
        Self {
            upper: r.upper,
            lower: r.lower,
            delta: r.delta,
            interval_slack: r.slack.interval_slack,
            point_slack: r.slack.point_slack,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    /// `zero-one`, `log` or `alpha`.
    pub loss: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// `expectation` or `fixed-marginal`.
    pub variant: String,
    pub num_classes: usize,
    pub input_dim: usize,
    pub feature_names: Vec<String>,
    pub thresholds: Vec<(usize, f64)>,
    pub mu: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    pub objective_value: f64,
    pub lambda_policy: String,
    pub lambda: Vec<f64>,
    pub n: usize,
    pub converged: bool,
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<StoredBounds>,
}

pub fn variant_name(variant: Variant) -> &'static str {
    match variant {
        Variant::ExpectationOnly => "expectation",
        Variant::FixedInstanceMarginal => "fixed-marginal",
    }
}

pub fn parse_variant(text: &str) -> CliResult<Variant> {
    match text {
        "expectation" => Ok(Variant::ExpectationOnly),
        "fixed-marginal" => Ok(Variant::FixedInstanceMarginal),
        other => Err(CliError::input(format!(
            "unknown variant `{other}` (expected expectation or fixed-marginal)"
        ))),
    }
}

/// Training context stored next to the parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelMeta {
    pub feature_names: Vec<String>,
    pub lambda_policy: String,
    pub lambda: Vec<f64>,
    pub n: usize,
    pub bounds: Option<StoredBounds>,
}

impl ModelFile {
    pub fn new(model: &MrcModel, meta: ModelMeta) -> CliResult<Self> {
        let fm = model
            .feature_map
            .as_ref()
            .ok_or_else(|| CliError::input("model has no feature map"))?;
        let alpha = match &model.loss {
            LossKind::Alpha(a) => Some(a.alpha()),
            _ => None,
        };
        Ok(Self {
            format_version: FORMAT_VERSION,
            loss: model.loss.name().to_string(),
            alpha,
            variant: variant_name(model.variant).to_string(),
            num_classes: fm.num_classes(),
            input_dim: fm.input_dim(),
            feature_names: meta.feature_names,
            thresholds: encode_thresholds(fm),
            mu: model.mu.clone(),
            nu: model.nu,
            objective_value: model.objective_value,
            lambda_policy: meta.lambda_policy,
            lambda: meta.lambda,
            n: meta.n,
            converged: model.converged,
            iterations: model.iterations,
            bounds: meta.bounds,
        })
    }

    pub fn loss_kind(&self) -> CliResult<LossKind> {
        match (self.loss.as_str(), self.alpha) {
            ("alpha", Some(a)) => Ok(LossKind::alpha(a)?),
            ("alpha", None) => Err(CliError::input("alpha model without an `alpha` field")),
            (name, _) => parse_loss(name),
        }
    }

    pub fn feature_map(&self) -> CliResult<FeatureMap> {
        decode_map(self.num_classes, self.input_dim, &self.thresholds)
    }

    pub fn to_model(&self) -> CliResult<MrcModel> {
        check_version(self.format_version)?;
        let fm = self.feature_map()?;
        if self.mu.len() != fm.len() {
            return Err(CliError::input(format!(
                "model has {} parameters, its feature map needs {}",
                self.mu.len(),
                fm.len()
            )));
        }
        if self.lambda.len() != fm.len() {
            return Err(CliError::input("lambda length does not match the feature map"));
        }
        let variant = parse_variant(&self.variant)?;
        if variant == Variant::ExpectationOnly && self.nu.is_none() {
            return Err(CliError::input("expectation model without `nu`"));
        }
        Ok(MrcModel {
            loss: self.loss_kind()?,
            mu: self.mu.clone(),
            nu: self.nu,
            objective_value: self.objective_value,
            variant,
            feature_map: Some(fm),
            converged: self.converged,
            iterations: self.iterations,
        })
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}
