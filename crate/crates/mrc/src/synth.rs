//! The two-class synthetic dataset bundled with the crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::Table;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub rows: usize,
    pub seed: u64,
    /// Probability of flipping the label given by the decision boundary.
    pub noise: f64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            rows: 10_000,
            seed: 20_240_601,
            noise: 0.1,
        }
    }
}

fn round3(v: f64) -> f64 {
    (v * 1000.0).round() / 1000.0
}

/// Two uniform inputs on `[0, 1]`, rounded to three decimals. The clean label
/// is 2 above the line `x1 + x2 / 2 = 0.75` and 1 below it.
pub fn generate(spec: SynthSpec) -> Table {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows = Vec::with_capacity(spec.rows);
    let mut labels = Vec::with_capacity(spec.rows);
    for _ in 0..spec.rows {
        let x1 = round3(rng.random::<f64>());
        let x2 = round3(rng.random::<f64>());
        let clean = usize::from(x1 + 0.5 * x2 > 0.75);
        let flip = rng.random::<f64>() < spec.noise;
        labels.push(if flip { 1 - clean } else { clean } + 1);
        rows.push(vec![x1, x2]);
    }
    Table {
        feature_names: vec!["x1".into(), "x2".into()],
        rows,
        labels: Some(labels),
    }
}
