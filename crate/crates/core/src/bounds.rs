//! Risk bounds.
//!
//! The upper bound is the maximum entropy `F(mu*)`. The lower bound is the
//! smallest expected loss of the model's own rule over the distributions on
//! the atoms that satisfy the box, and the worst-case risk is the largest.
//! Both are linear programs over the atom distribution `p_{j,y}`; the
//! equivalent parametric forms in `(mu, eta, nu)` are provided as well.

use alloc::vec;
use alloc::vec::Vec;

use crate::entropy::score_unchecked;
use crate::error::{MrcError, Result};
use crate::features::{ConstraintAtoms, ExpectationBox};
use crate::loss::LossKind;
use crate::lp::{LinearProgram, LpStatus, Sense, VarBound};
use crate::math::{log_sum_exp, norm1, norm_inf, positive_part, sqrt};
use crate::model::{MrcModel, Variant};
use crate::predict::rule_from_scores;

/// Loss `eps_j(y)` of a rule at every atom and label.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonTable {
    num_classes: usize,
    values: Vec<f64>,
}

impl EpsilonTable {
    pub fn new(num_classes: usize, values: Vec<f64>) -> Result<Self> {
        if num_classes == 0 || !values.len().is_multiple_of(num_classes) {
            return Err(MrcError::DimensionMismatch {
                expected: num_classes,
                found: values.len(),
            });
        }
        Ok(Self { num_classes, values })
    }

    pub fn num_atoms(&self) -> usize {
        self.values.len() / self.num_classes
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn get(&self, j: usize, y: usize) -> f64 {
        self.values[j * self.num_classes + y]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn expectation_nu(model: &MrcModel) -> Result<f64> {
    if model.variant != Variant::ExpectationOnly {
        return Err(MrcError::UnsupportedVariant("bounds need an expectation-only model"));
    }
    model
        .nu
        .ok_or_else(|| MrcError::Incompatible("model has no offset nu".into()))
}

fn check_atoms(model: &MrcModel, atoms: &ConstraintAtoms) -> Result<()> {
    if atoms.dim() != model.mu.len() {
        return Err(MrcError::DimensionMismatch {
            expected: model.mu.len(),
            found: atoms.dim(),
        });
    }
    Ok(())
}

/// Closed-form losses of a 0-1 or log model at the atoms.
pub fn epsilon_table(model: &MrcModel, atoms: &ConstraintAtoms) -> Result<EpsilonTable> {
    let nu = expectation_nu(model)?;
    check_atoms(model, atoms)?;
    let num_classes = atoms.num_classes();
    let mut values = Vec::with_capacity(atoms.len() * num_classes);
    let mut scores = vec![0.0; num_classes];
    for j in 0..atoms.len() {
        atoms.scores_into(j, &model.mu, &mut scores);
        match &model.loss {
            LossKind::ZeroOne => {
                let c: f64 = scores.iter().map(|s| positive_part(s + nu + 1.0)).sum();
                for s in &scores {
                    values.push(if c == 0.0 {
                        1.0 - 1.0 / num_classes as f64
                    } else {
                        1.0 - positive_part(s + nu + 1.0) / c
                    });
                }
            }
            LossKind::Log => {
                let lse = log_sum_exp(&scores);
                values.extend(scores.iter().map(|s| lse - s));
            }
            _ => return Err(MrcError::UnsupportedLoss("closed-form epsilon exists for 0-1 and log only")),
        }
    }
    EpsilonTable::new(num_classes, values)
}

/// `eps_j(y) = L(h_j, y)` for arbitrary rule outputs `rule[j]` at the atoms.
pub fn rule_epsilon_table(loss: &LossKind, rule: &[Vec<f64>]) -> Result<EpsilonTable> {
    let num_classes = rule.first().map_or(0, Vec::len);
    let mut values = Vec::with_capacity(rule.len() * num_classes);
    for h in rule {
        if h.len() != num_classes {
            return Err(MrcError::DimensionMismatch {
                expected: num_classes,
                found: h.len(),
            });
        }
        values.extend((0..num_classes).map(|y| score_unchecked(loss, h, y)));
    }
    EpsilonTable::new(num_classes, values)
}

/// Loss table of the model's own prediction rule; works for every loss.
pub fn model_rule_table(model: &MrcModel, atoms: &ConstraintAtoms) -> Result<EpsilonTable> {
    check_atoms(model, atoms)?;
    let rule: Vec<Vec<f64>> = (0..atoms.len())
        .map(|j| rule_from_scores(model, &atoms.scores(j, &model.mu)))
        .collect::<Result<_>>()?;
    rule_epsilon_table(&model.loss, &rule)
}

/// `1/2 (b - a)^T |mu| - 1/2 (b + a)^T mu - nu`.
pub fn upper_bound(model: &MrcModel, bx: &ExpectationBox) -> Result<f64> {
    let nu = expectation_nu(model)?;
    if bx.len() != model.mu.len() {
        return Err(MrcError::DimensionMismatch {
            expected: model.mu.len(),
            found: bx.len(),
        });
    }
    let linear: f64 = model
        .mu
        .iter()
        .zip(bx.lower().iter().zip(bx.upper()))
        .map(|(m, (a, b))| 0.5 * (b - a) * m.abs() - 0.5 * (b + a) * m)
        .sum();
    Ok(linear - nu)
}

fn check_table(eps: &EpsilonTable, bx: &ExpectationBox, atoms: &ConstraintAtoms) -> Result<()> {
    if eps.num_atoms() != atoms.len() || eps.num_classes() != atoms.num_classes() {
        return Err(MrcError::DimensionMismatch {
            expected: atoms.len() * atoms.num_classes(),
            found: eps.values().len(),
        });
    }
    if bx.len() != atoms.dim() {
        return Err(MrcError::DimensionMismatch {
            expected: atoms.dim(),
            found: bx.len(),
        });
    }
    Ok(())
}

/// `min` (or `max`) of `sum p_{j,y} eps_j(y)` over distributions on the atoms
/// whose feature expectation lies in the box.
fn atom_distribution_lp(eps: &EpsilonTable, bx: &ExpectationBox, atoms: &ConstraintAtoms, maximize: bool) -> Result<f64> {
    check_table(eps, bx, atoms)?;
    let (r, num_classes, m) = (atoms.len(), atoms.num_classes(), atoms.dim());
    let sign = if maximize { -1.0 } else { 1.0 };
    let costs: Vec<f64> = eps.values().iter().map(|e| sign * e).collect();
    let mut lp = LinearProgram::minimize(costs, vec![VarBound::NONNEG; r * num_classes])?;
    lp.add_row(&vec![1.0; r * num_classes], Sense::Eq, 1.0)?;
    let mut row = vec![0.0; r * num_classes];
    for i in 0..m {
        for j in 0..r {
            for y in 0..num_classes {
                row[j * num_classes + y] = atoms.vector(j, y)[i];
            }
        }
        let (a, b) = (bx.lower()[i], bx.upper()[i]);
        if a.is_finite() {
            lp.add_row(&row, Sense::Ge, a)?;
        }
        if b.is_finite() {
            lp.add_row(&row, Sense::Le, b)?;
        }
    }
    let solution = lp.solve()?;
    match solution.status {
        LpStatus::Optimal => Ok(sign * solution.value),
        LpStatus::Infeasible => Err(MrcError::InfeasibleLp("no distribution on the atoms satisfies the box")),
        LpStatus::Unbounded => Err(MrcError::UnboundedLp("bound LP")),
    }
}

/// Smallest expected loss of the rule behind `eps` over the box.
pub fn lower_bound_from_table(eps: &EpsilonTable, bx: &ExpectationBox, atoms: &ConstraintAtoms) -> Result<f64> {
    atom_distribution_lp(eps, bx, atoms, false)
}

/// Largest expected loss of the rule behind `eps` over the box.
pub fn worst_case_risk(eps: &EpsilonTable, bx: &ExpectationBox, atoms: &ConstraintAtoms) -> Result<f64> {
    atom_distribution_lp(eps, bx, atoms, true)
}

/// Lower bound for a trained model. 0-1 and log models use the closed-form
/// table; alpha models use the losses of their emitted rule.
pub fn lower_bound(model: &MrcModel, bx: &ExpectationBox, atoms: &ConstraintAtoms) -> Result<f64> {
    let eps = match model.loss {
        LossKind::ZeroOne | LossKind::Log => epsilon_table(model, atoms)?,
        _ => model_rule_table(model, atoms)?,
    };
    lower_bound_from_table(&eps, bx, atoms)
}

/// Lower bound as `max 1/2 (b + a)^T mu - 1/2 (b - a)^T eta + nu` subject to
/// `f_j(y)^T mu + nu <= eps_j(y)` and `eta >= +-mu`.
pub fn lower_bound_parametric(eps: &EpsilonTable, bx: &ExpectationBox, atoms: &ConstraintAtoms) -> Result<f64> {
    check_table(eps, bx, atoms)?;
    let m = atoms.dim();
    let (half_width, center) = (bx.half_width(), bx.center());
    let mut costs: Vec<f64> = center.iter().map(|c| -c).collect();
    costs.extend_from_slice(&half_width);
    costs.push(-1.0);
    let mut bounds = vec![VarBound::FREE; m];
    bounds.extend(core::iter::repeat_n(VarBound::NONNEG, m));
    bounds.push(VarBound::FREE);
    let mut lp = LinearProgram::minimize(costs, bounds)?;
    let mut row = vec![0.0; 2 * m + 1];
    for j in 0..atoms.len() {
        for y in 0..atoms.num_classes() {
            row.iter_mut().for_each(|v| *v = 0.0);
            row[..m].copy_from_slice(atoms.vector(j, y));
            row[2 * m] = 1.0;
            lp.add_row(&row, Sense::Le, eps.get(j, y))?;
        }
    }
    for i in 0..m {
        for sign in [-1.0, 1.0] {
            row.iter_mut().for_each(|v| *v = 0.0);
            row[m + i] = 1.0;
            row[i] = sign;
            lp.add_row(&row, Sense::Ge, 0.0)?;
        }
    }
    let solution = lp.solve()?;
    match solution.status {
        LpStatus::Optimal => Ok(-solution.value),
        LpStatus::Infeasible => Err(MrcError::InfeasibleLp("parametric lower bound")),
        LpStatus::Unbounded => Err(MrcError::UnboundedLp("the box admits no distribution on the atoms")),
    }
}

/// Worst-case risk as `min b^T mu_b - a^T mu_a - nu` subject to
/// `f_j(y)^T (mu_a - mu_b) + nu <= -eps_j(y)`, `mu_a, mu_b >= 0`.
pub fn worst_case_risk_parametric(eps: &EpsilonTable, bx: &ExpectationBox, atoms: &ConstraintAtoms) -> Result<f64> {
    check_table(eps, bx, atoms)?;
    let m = atoms.dim();
    let mut costs: Vec<f64> = bx.lower().iter().map(|a| -a).collect();
    costs.extend_from_slice(bx.upper());
    costs.push(-1.0);
    let mut bounds = vec![VarBound::NONNEG; 2 * m];
    bounds.push(VarBound::FREE);
    let mut lp = LinearProgram::minimize(costs, bounds)?;
    let mut row = vec![0.0; 2 * m + 1];
    for j in 0..atoms.len() {
        for y in 0..atoms.num_classes() {
            let f = atoms.vector(j, y);
            row[..m].copy_from_slice(f);
            for (r, v) in row[m..2 * m].iter_mut().zip(f) {
                *r = -v;
            }
            row[2 * m] = 1.0;
            lp.add_row(&row, Sense::Le, -eps.get(j, y))?;
        }
    }
    let solution = lp.solve()?;
    match solution.status {
        LpStatus::Optimal => Ok(solution.value),
        LpStatus::Infeasible => Err(MrcError::InfeasibleLp("parametric worst-case risk")),
        LpStatus::Unbounded => Err(MrcError::UnboundedLp("the box admits no distribution on the atoms")),
    }
}

/// Additive slacks of the finite-sample guarantees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlackTerms {
    /// `2 ||lambda||_inf ||mu||_1 / sqrt(n)`: interval estimates.
    pub interval_slack: f64,
    /// `||lambda||_inf ||mu||_1 / sqrt(n)`: point estimates.
    pub point_slack: f64,
}

pub fn coverage_slack(lambda: &[f64], mu: &[f64], n: usize) -> SlackTerms {
    let base = norm_inf(lambda) * norm1(mu) / sqrt(n as f64);
    SlackTerms {
        interval_slack: 2.0 * base,
        point_slack: base,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub upper: f64,
    pub lower: Option<f64>,
    /// Confidence level behind `lambda`, when it came from one.
    pub delta: Option<f64>,
    pub slack: SlackTerms,
}

/// Upper bound with the slack terms; the lower bound is left empty.
pub fn theorem3_report(upper: f64, lambda: &[f64], mu: &[f64], n: usize) -> BoundReport {
    BoundReport {
        upper,
        lower: None,
        delta: None,
        slack: coverage_slack(lambda, mu, n),
    }
}

/// Both bounds for a trained model.
pub fn bound_report(model: &MrcModel, bx: &ExpectationBox, atoms: &ConstraintAtoms, delta: Option<f64>) -> Result<BoundReport> {
    let upper = upper_bound(model, bx)?;
    let lower = lower_bound(model, bx, atoms)?;
    Ok(BoundReport {
        upper,
        lower: Some(lower),
        delta,
        slack: coverage_slack(bx.lambda(), &model.mu, bx.n()),
    })
}
