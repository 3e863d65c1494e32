//! Brute-force references on tiny instance spaces.
//!
//! Distributions on `X x Y` are enumerated on the simplex lattice, filtered
//! by the expectation box, and scored directly. These are slow by design and
//! serve as independent checks of the dual solvers and bounds.

use alloc::vec;
use alloc::vec::Vec;

use crate::entropy::{score_unchecked, table_entropy};
use crate::error::{MrcError, Result};
use crate::features::{ExpectationBox, FeatureMap};
use crate::lattice::{for_each_composition, resolution};
use crate::loss::LossKind;

/// An explicit finite instance space: `Phi(x, y)` for every `x` and `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct TinyInstance {
    num_instances: usize,
    num_classes: usize,
    m: usize,
    features: Vec<f64>,
}

impl TinyInstance {
    /// `features[(x * |Y| + y) * m ..][..m] = Phi(x, y)`.
    pub fn new(num_instances: usize, num_classes: usize, m: usize, features: Vec<f64>) -> Result<Self> {
        if num_instances == 0 {
            return Err(MrcError::EmptyDataset);
        }
        if num_classes < 2 {
            return Err(MrcError::TooFewClasses(num_classes));
        }
        if features.len() != num_instances * num_classes * m {
            return Err(MrcError::DimensionMismatch {
                expected: num_instances * num_classes * m,
                found: features.len(),
            });
        }
        Ok(Self {
            num_instances,
            num_classes,
            m,
            features,
        })
    }

    pub fn from_feature_map(fm: &FeatureMap, instances: &[Vec<f64>]) -> Result<Self> {
        let mut features = Vec::with_capacity(instances.len() * fm.num_classes() * fm.len());
        for x in instances {
            for y in 0..fm.num_classes() {
                features.extend(fm.phi(x, y)?);
            }
        }
        Self::new(instances.len(), fm.num_classes(), fm.len(), features)
    }

    pub fn num_instances(&self) -> usize {
        self.num_instances
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn phi(&self, x: usize, y: usize) -> &[f64] {
        let start = (x * self.num_classes + y) * self.m;
        &self.features[start..start + self.m]
    }

    /// Largest absolute feature value.
    pub fn feature_sup(&self) -> f64 {
        self.features.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// `E_p Phi` for a row-major joint table.
    pub fn expectation(&self, table: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.m];
        self.expectation_into(table, &mut out);
        out
    }

    fn expectation_into(&self, table: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (cell, p) in table.iter().enumerate() {
            if *p == 0.0 {
                continue;
            }
            for (o, f) in out.iter_mut().zip(&self.features[cell * self.m..(cell + 1) * self.m]) {
                *o += p * f;
            }
        }
    }
}

/// Result of a brute-force maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    /// Maximum entropy, `-inf` when no lattice point passed the filter.
    pub value: f64,
    /// Number of lattice points inside the (slackened) box.
    pub feasible_points: usize,
    /// The maximizing table (row-major `|X| x |Y|`), if any.
    pub argmax: Option<Vec<f64>>,
}

impl OracleOutcome {
    pub fn diagnostic(&self) -> Option<&'static str> {
        (self.feasible_points == 0).then_some("no lattice distribution satisfies the box; refine the grid")
    }
}

fn check_inputs(inst: &TinyInstance, bx: &ExpectationBox, marginal: Option<&[f64]>, step: f64) -> Result<()> {
    if bx.len() != inst.dim() {
        return Err(MrcError::DimensionMismatch {
            expected: inst.dim(),
            found: bx.len(),
        });
    }
    if let Some(px) = marginal {
        if px.len() != inst.num_instances() {
            return Err(MrcError::DimensionMismatch {
                expected: inst.num_instances(),
                found: px.len(),
            });
        }
    }
    if !(step > 0.0 && step <= 1.0) {
        return Err(MrcError::InvalidConfig("grid step must lie in (0, 1]"));
    }
    Ok(())
}

/// Calls `visit` with every lattice table at `step` whose expectation lies in
/// the box up to `step * sup|Phi|` and, if given, whose instance marginal is
/// within `step` of `marginal`.
fn for_each_feasible<F>(inst: &TinyInstance, bx: &ExpectationBox, marginal: Option<&[f64]>, step: f64, mut visit: F)
where
    F: FnMut(&[f64]),
{
    let res = resolution(step);
    let slack = step * inst.feature_sup();
    let k = inst.num_classes();
    let mut table = vec![0.0; inst.num_instances() * k];
    let mut expectation = vec![0.0; inst.dim()];
    for_each_composition(res, table.len(), |counts| {
        for (t, c) in table.iter_mut().zip(counts) {
            *t = *c as f64 / res as f64;
        }
        if let Some(px) = marginal {
            let off = table
                .chunks(k)
                .zip(px)
                .any(|(row, p)| (row.iter().sum::<f64>() - p).abs() > step + 1e-12);
            if off {
                return true;
            }
        }
        inst.expectation_into(&table, &mut expectation);
        if bx.contains(&expectation, slack) {
            visit(&table);
        }
        true
    });
}

/// Largest closed-form entropy over the gridded uncertainty set.
pub fn brute_force_max_entropy(
    loss: &LossKind,
    inst: &TinyInstance,
    bx: &ExpectationBox,
    marginal: Option<&[f64]>,
    grid_step: f64,
) -> Result<OracleOutcome> {
    check_inputs(inst, bx, marginal, grid_step)?;
    if let LossKind::LogRelative(prior) = loss {
        if prior.probs().len() != inst.num_classes() {
            return Err(MrcError::DimensionMismatch {
                expected: inst.num_classes(),
                found: prior.probs().len(),
            });
        }
    }
    let mut best = OracleOutcome {
        value: f64::NEG_INFINITY,
        feasible_points: 0,
        argmax: None,
    };
    for_each_feasible(inst, bx, marginal, grid_step, |table| {
        best.feasible_points += 1;
        let h = table_entropy(loss, table, inst.num_classes());
        if h > best.value {
            best.value = h;
            best.argmax = Some(table.to_vec());
        }
    });
    Ok(best)
}

/// `min` over gridded rules of `max` over the gridded uncertainty set of the
/// expected loss. Returns `-inf` when the gridded set is empty.
pub fn exhaustive_minimax(
    loss: &LossKind,
    inst: &TinyInstance,
    bx: &ExpectationBox,
    rule_step: f64,
    dist_step: f64,
) -> Result<f64> {
    check_inputs(inst, bx, None, dist_step)?;
    check_inputs(inst, bx, None, rule_step)?;
    let mut tables: Vec<f64> = Vec::new();
    for_each_feasible(inst, bx, None, dist_step, |t| tables.extend_from_slice(t));
    if tables.is_empty() {
        return Ok(f64::NEG_INFINITY);
    }
    let (nx, k) = (inst.num_instances(), inst.num_classes());
    let cells = nx * k;

    // Candidate assessments q and their loss vectors L(q, .).
    let res = resolution(rule_step);
    let mut candidates: Vec<Vec<f64>> = Vec::new();
    let mut q = vec![0.0; k];
    for_each_composition(res, k, |counts| {
        for (qy, c) in q.iter_mut().zip(counts) {
            *qy = *c as f64 / res as f64;
        }
        candidates.push((0..k).map(|y| score_unchecked(loss, &q, y)).collect());
        true
    });

    // Enumerate rules as mixed-radix indices over the candidates per instance.
    let mut choice = vec![0usize; nx];
    let mut rule = vec![0.0; cells];
    let mut best = f64::INFINITY;
    loop {
        for x in 0..nx {
            rule[x * k..(x + 1) * k].copy_from_slice(&candidates[choice[x]]);
        }
        let mut worst = f64::NEG_INFINITY;
        for table in tables.chunks(cells) {
            let value: f64 = table
                .iter()
                .zip(&rule)
                .filter(|(p, _)| **p > 0.0)
                .map(|(p, l)| p * l)
                .sum();
            if value > worst {
                worst = value;
                if worst >= best {
                    break;
                }
            }
        }
        best = best.min(worst);
        let mut x = 0;
        loop {
            if x == nx {
                return Ok(best);
            }
            choice[x] += 1;
            if choice[x] < candidates.len() {
                break;
            }
            choice[x] = 0;
            x += 1;
        }
    }
}

/// 0-1 offset by enumerating all nonempty label subsets; each subset is
/// summed in decreasing order of its scores.
pub fn zero_one_offset_by_enumeration(scores: &[f64]) -> f64 {
    let n = scores.len();
    let mut best = f64::INFINITY;
    let mut members = Vec::with_capacity(n);
    for mask in 1usize..(1 << n) {
        members.clear();
        members.extend((0..n).filter(|y| mask >> y & 1 == 1).map(|y| scores[y]));
        members.sort_by(|a, b| b.total_cmp(a));
        let total = members.iter().fold(0.0, |acc, s| acc + (s + 1.0));
        best = best.min((1.0 - total) / members.len() as f64);
    }
    best
}

/// Minimax-hinge loss `max_C (sum_{y' in C} (s_{y'} - s_y) + |C| - 1) / |C|`
/// at label `y`, by enumeration.
pub fn minimax_hinge_by_enumeration(scores: &[f64], y: usize) -> f64 {
    let n = scores.len();
    let mut best = f64::NEG_INFINITY;
    for mask in 1usize..(1 << n) {
        let size = mask.count_ones() as f64;
        let total: f64 = (0..n)
            .filter(|c| mask >> c & 1 == 1)
            .map(|c| scores[c] - scores[y])
            .sum();
        best = best.max((total + size - 1.0) / size);
    }
    best
}
