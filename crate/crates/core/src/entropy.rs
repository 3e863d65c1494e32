//! Scores, risks and generalized entropies on explicit distributions.
//!
//! | loss          | score `L(q, y)`        | entropy `H(p)`                                 |
//! |---------------|------------------------|------------------------------------------------|
//! | 0-1           | `1 - q(y)`             | `1 - sum_x max_y p(x,y)`                       |
//! | log           | `-log q(y)`            | `sum p(x,y) log(p(x) / p(x,y))`                |
//! | alpha         | `beta (1 - q(y)^(1/beta))` | `beta (1 - sum_x (sum_y p(x,y)^alpha)^(1/alpha))` |
//! | log-relative  | `log(p0(y) / q(y))`    | `sum p(x,y) log(p(x) p0(y) / p(x,y))`          |
//!
//! `0 log 0 = 0`, and a log score at `q(y) = 0` is `+inf`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::data::Dataset;
use crate::error::{MrcError, Result};
use crate::lattice::{for_each_composition, resolution};
use crate::loss::LossKind;
use crate::math::{ln, pow};

/// A joint distribution on a small `|X| x |Y|` grid, stored row-major by
/// instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitDistribution {
    num_instances: usize,
    num_classes: usize,
    probs: Vec<f64>,
}

impl ExplicitDistribution {
    pub fn from_table(num_instances: usize, num_classes: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != num_instances * num_classes {
            return Err(MrcError::DimensionMismatch {
                expected: num_instances * num_classes,
                found: probs.len(),
            });
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(MrcError::InvalidProbability(format!("entry {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(MrcError::InvalidProbability(format!("sums to {total}")));
        }
        Ok(Self {
            num_instances,
            num_classes,
            probs,
        })
    }

    /// Builds the table from `(instance, class, probability)` triples;
    /// repeated pairs accumulate.
    pub fn from_pairs(num_instances: usize, num_classes: usize, pairs: &[(usize, usize, f64)]) -> Result<Self> {
        let mut probs = vec![0.0; num_instances * num_classes];
        for &(x, y, p) in pairs {
            if x >= num_instances || y >= num_classes {
                return Err(MrcError::LabelOutOfRange {
                    index: if x >= num_instances { x } else { y },
                    num_classes: if x >= num_instances { num_instances } else { num_classes },
                });
            }
            probs[x * num_classes + y] += p;
        }
        Self::from_table(num_instances, num_classes, probs)
    }

    pub fn num_instances(&self) -> usize {
        self.num_instances
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.num_classes + y]
    }

    /// Row `p(x, .)`.
    pub fn joint_row(&self, x: usize) -> &[f64] {
        &self.probs[x * self.num_classes..(x + 1) * self.num_classes]
    }

    pub fn instance_marginal(&self, x: usize) -> f64 {
        self.joint_row(x).iter().sum()
    }

    pub fn table(&self) -> &[f64] {
        &self.probs
    }

    /// `t p + (1 - t) q`.
    pub fn mix(&self, other: &Self, t: f64) -> Result<Self> {
        if self.num_instances != other.num_instances || self.num_classes != other.num_classes {
            return Err(MrcError::Incompatible("distribution shapes differ".into()));
        }
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| t * a + (1.0 - t) * b)
            .collect();
        Ok(Self {
            num_instances: self.num_instances,
            num_classes: self.num_classes,
            probs,
        })
    }
}

fn check_prior(loss: &LossKind, num_classes: usize) -> Result<()> {
    if let LossKind::LogRelative(prior) = loss {
        if prior.probs().len() != num_classes {
            return Err(MrcError::DimensionMismatch {
                expected: num_classes,
                found: prior.probs().len(),
            });
        }
    }
    Ok(())
}

/// Score without validating `q`.
pub(crate) fn score_unchecked(loss: &LossKind, q: &[f64], y: usize) -> f64 {
    match loss {
        LossKind::ZeroOne => 1.0 - q[y],
        LossKind::Log => -ln(q[y]),
        LossKind::Alpha(a) => {
            let beta = a.beta();
            beta * (1.0 - pow(q[y], 1.0 / beta))
        }
        LossKind::LogRelative(prior) => ln(prior.probs()[y] / q[y]),
    }
}

/// Score `L(q, y)` of the probability assessment `q` at class `y`.
pub fn score(loss: &LossKind, q: &[f64], y: usize) -> Result<f64> {
    if y >= q.len() {
        return Err(MrcError::LabelOutOfRange {
            index: y,
            num_classes: q.len(),
        });
    }
    if q.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(MrcError::InvalidProbability("negative or non-finite entry".into()));
    }
    let total: f64 = q.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(MrcError::InvalidProbability(format!("sums to {total}")));
    }
    check_prior(loss, q.len())?;
    Ok(score_unchecked(loss, q, y))
}

/// Mean score of the rule's assessments `rule[i]` at the labels of `data`.
/// A zero probability under log-loss yields `+inf`.
pub fn empirical_risk(loss: &LossKind, rule: &[Vec<f64>], data: &Dataset) -> Result<f64> {
    if rule.len() != data.len() {
        return Err(MrcError::DimensionMismatch {
            expected: data.len(),
            found: rule.len(),
        });
    }
    let mut total = 0.0;
    for (i, q) in rule.iter().enumerate() {
        if q.len() != data.num_classes() {
            return Err(MrcError::DimensionMismatch {
                expected: data.num_classes(),
                found: q.len(),
            });
        }
        total += score(loss, q, data.label(i))?;
    }
    Ok(total / data.len() as f64)
}

/// `p log(num / p)` with `0 log(.) = 0`.
fn plogratio(p: f64, num: f64) -> f64 {
    if p > 0.0 {
        p * ln(num / p)
    } else {
        0.0
    }
}

/// Entropy `H_l(p)` from its closed form.
pub fn closed_form_entropy(loss: &LossKind, p: &ExplicitDistribution) -> Result<f64> {
    check_prior(loss, p.num_classes())?;
    Ok(table_entropy(loss, p.table(), p.num_classes()))
}

/// Closed-form entropy of a row-major joint table; no validation.
pub(crate) fn table_entropy(loss: &LossKind, table: &[f64], num_classes: usize) -> f64 {
    let rows = table.chunks(num_classes);
    match loss {
        LossKind::ZeroOne => {
            1.0 - rows
                .map(|row| row.iter().copied().fold(0.0, f64::max))
                .sum::<f64>()
        }
        LossKind::Log => rows
            .map(|row| {
                let px: f64 = row.iter().sum();
                row.iter().map(|&pxy| plogratio(pxy, px)).sum::<f64>()
            })
            .sum(),
        LossKind::Alpha(a) => {
            let (alpha, beta) = (a.alpha(), a.beta());
            let inner: f64 = rows
                .map(|row| {
                    let s: f64 = row.iter().map(|&v| pow(v, alpha)).sum();
                    pow(s, 1.0 / alpha)
                })
                .sum();
            beta * (1.0 - inner)
        }
        LossKind::LogRelative(prior) => rows
            .map(|row| {
                let px: f64 = row.iter().sum();
                row.iter()
                    .zip(prior.probs())
                    .map(|(&pxy, &p0)| plogratio(pxy, px * p0))
                    .sum::<f64>()
            })
            .sum(),
    }
}

/// Expected score `sum_y w(y) L(q, y)` with `0 * inf = 0`.
pub(crate) fn expected_score(loss: &LossKind, weights: &[f64], q: &[f64]) -> f64 {
    weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w > 0.0)
        .map(|(y, w)| w * score_unchecked(loss, q, y))
        .sum()
}

/// Entropy from its definition: `sum_x min_q sum_y p(x, y) L(q, y)` with `q`
/// ranging over the simplex lattice of step `grid_step`. Test oracle for
/// [`closed_form_entropy`].
pub fn entropy_by_minimization(loss: &LossKind, p: &ExplicitDistribution, grid_step: f64) -> Result<f64> {
    check_prior(loss, p.num_classes())?;
    if !(grid_step > 0.0 && grid_step <= 1.0) {
        return Err(MrcError::InvalidConfig("grid_step must lie in (0, 1]"));
    }
    let res = resolution(grid_step);
    let k = p.num_classes();
    let mut q = vec![0.0; k];
    let mut total = 0.0;
    for x in 0..p.num_instances() {
        let row = p.joint_row(x);
        let mut best = f64::INFINITY;
        for_each_composition(res, k, |counts| {
            for (qy, c) in q.iter_mut().zip(counts) {
                *qy = *c as f64 / res as f64;
            }
            best = best.min(expected_score(loss, row, &q));
            true
        });
        total += best;
    }
    Ok(total)
}
