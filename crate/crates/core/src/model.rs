use alloc::vec::Vec;

use crate::features::FeatureMap;
use crate::loss::LossKind;

/// Which uncertainty set the model was learned over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Only the feature expectations are constrained.
    ExpectationOnly,
    /// The instances' marginal is additionally fixed to the empirical one.
    FixedInstanceMarginal,
}

/// A trained classifier.
///
/// `nu` is the dual offset `min_j nu*_j(mu)`. Fixed-marginal models have no
/// global offset; prediction recomputes an instance-dependent one.
#[derive(Debug, Clone, PartialEq)]
pub struct MrcModel {
    pub loss: LossKind,
    pub mu: Vec<f64>,
    pub nu: Option<f64>,
    pub objective_value: f64,
    pub variant: Variant,
    /// Needed to predict on raw instances; trainers working on explicit
    /// atoms leave it empty.
    pub feature_map: Option<FeatureMap>,
    pub converged: bool,
    pub iterations: usize,
}

impl MrcModel {
    pub fn with_feature_map(mut self, fm: FeatureMap) -> Self {
        self.feature_map = Some(fm);
        self
    }

    pub fn num_features(&self) -> usize {
        self.mu.len()
    }
}
