//! The dual problem with `eta` and `nu` eliminated.
//!
//! With `eta = |mu|` and `nu = min_j nu*_j(mu)` the dual becomes the
//! unconstrained convex problem
//!
//! ```text
//! F(mu) = 1/2 (b - a)^T |mu| - 1/2 (b + a)^T mu - min_j nu*_j(mu)
//! ```
//!
//! where `nu*_j(mu)` is the largest offset keeping atom `j` feasible. It is
//! minimized by a normalized subgradient method for every loss; the 0-1 loss
//! also has an exact LP path.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{MrcError, Result};
use crate::features::{ConstraintAtoms, ExpectationBox};
use crate::loss::{Alpha, LossKind};
use crate::lp::{LinearProgram, LpStatus, Sense, VarBound};
use crate::math::{log_sum_exp, norm2, pow, softmax_into, sqrt};
use crate::model::{MrcModel, Variant};
use crate::MAX_EXACT_CLASSES;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    /// `c / sqrt(t + 1)` along the normalized subgradient.
    Diminishing,
    /// `c` along the normalized subgradient.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Relative improvement below which an iteration counts as stalled.
    pub tol: f64,
    pub step_rule: StepRule,
    pub c: f64,
    /// Alpha loss only: accuracy of the bisection for `nu*`.
    pub bisection_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            tol: 1e-6,
            step_rule: StepRule::Diminishing,
            c: 1.0,
            bisection_tol: 1e-10,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(MrcError::InvalidConfig("max_iters must be at least 1"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(MrcError::InvalidConfig("tol must be positive"));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(MrcError::InvalidConfig("step scale c must be positive"));
        }
        if !(self.bisection_tol > 0.0 && self.bisection_tol.is_finite()) {
            return Err(MrcError::InvalidConfig("bisection_tol must be positive"));
        }
        Ok(())
    }
}

/// 0-1 offset `min_{C != {}} (1 - sum_{y in C} (s_y + 1)) / |C|` by scanning
/// prefixes of the scores sorted in decreasing order. Writes the sort order
/// into `order` and returns the offset with the size of the minimizing prefix.
fn zero_one_scan(scores: &[f64], order: &mut Vec<usize>) -> (f64, usize) {
    order.clear();
    order.extend(0..scores.len());
    order.sort_by(|&p, &q| scores[q].total_cmp(&scores[p]).then(p.cmp(&q)));
    let mut best = f64::INFINITY;
    let mut best_k = 0;
    let mut prefix = 0.0;
    for (i, &y) in order.iter().enumerate() {
        prefix += scores[y] + 1.0;
        let k = i + 1;
        let value = (1.0 - prefix) / k as f64;
        if value < best {
            best = value;
            best_k = k;
        }
    }
    (best, best_k)
}

/// 0-1 offset from the scores `s_y = f(y)^T mu`.
pub fn zero_one_offset(scores: &[f64]) -> f64 {
    zero_one_scan(scores, &mut Vec::with_capacity(scores.len())).0
}

/// Log offset `-log sum_y exp(s_y)`.
pub fn log_offset(scores: &[f64]) -> f64 {
    -log_sum_exp(scores)
}

/// `sum_y ((s_y + nu) / beta + 1)_+^beta`, with `+inf` once a term leaves
/// the domain for negative `beta`. Nondecreasing in `nu` for both signs.
fn alpha_mass(scores: &[f64], nu: f64, beta: f64) -> f64 {
    let mut total = 0.0;
    for s in scores {
        let z = (s + nu) / beta + 1.0;
        if beta > 0.0 {
            if z > 0.0 {
                total += pow(z, beta);
            }
        } else if z <= 0.0 {
            return f64::INFINITY;
        } else {
            total += pow(z, beta);
        }
    }
    total
}

/// Alpha offset: the largest `nu` with `alpha_mass(nu) <= 1`, by bisection.
pub fn alpha_offset(scores: &[f64], beta: f64, bisection_tol: f64) -> Result<f64> {
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(MrcError::BracketFailure);
    }
    let feasible = |nu: f64| alpha_mass(scores, nu, beta) <= 1.0;
    // At `start` one term equals one and the rest are active, so the mass is
    // at least one and grows strictly beyond it.
    let start = if beta > 0.0 {
        -scores.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    } else {
        -scores.iter().copied().fold(f64::INFINITY, f64::min)
    };
    if feasible(start) {
        return Ok(start);
    }
    let mut hi = start;
    let mut step = 1.0;
    let mut lo = start - step;
    let mut bracketed = false;
    for _ in 0..1100 {
        if feasible(lo) {
            bracketed = true;
            break;
        }
        hi = lo;
        step *= 2.0;
        lo = start - step;
    }
    if !bracketed || !lo.is_finite() {
        return Err(MrcError::BracketFailure);
    }
    for _ in 0..400 {
        if hi - lo <= bisection_tol * (1.0 + lo.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Offset for `loss` together with the weights `pi` (summing to one) such
/// that `-sum_y pi_y f(y)` is a supergradient of the offset in `mu`.
fn offset_with_weights(
    loss: &LossKind,
    scores: &[f64],
    bisection_tol: f64,
    order: &mut Vec<usize>,
    weights: &mut [f64],
) -> Result<f64> {
    match loss {
        LossKind::ZeroOne => {
            let (nu, k) = zero_one_scan(scores, order);
            weights.iter_mut().for_each(|w| *w = 0.0);
            for &y in &order[..k] {
                weights[y] = 1.0 / k as f64;
            }
            Ok(nu)
        }
        LossKind::Log => {
            softmax_into(scores, weights);
            Ok(log_offset(scores))
        }
        LossKind::Alpha(a) => {
            let beta = a.beta();
            let nu = alpha_offset(scores, beta, bisection_tol)?;
            let mut total = 0.0;
            for (w, s) in weights.iter_mut().zip(scores) {
                let z = (s + nu) / beta + 1.0;
                *w = if z > 0.0 { pow(z, beta - 1.0) } else { 0.0 };
                total += *w;
            }
            if total > 0.0 && total.is_finite() {
                weights.iter_mut().for_each(|w| *w /= total);
            } else {
                let u = 1.0 / weights.len() as f64;
                weights.iter_mut().for_each(|w| *w = u);
            }
            Ok(nu)
        }
        LossKind::LogRelative(_) => Err(MrcError::UnsupportedLoss("log-relative loss has no dual trainer")),
    }
}

fn offset(loss: &LossKind, scores: &[f64], bisection_tol: f64) -> Result<f64> {
    match loss {
        LossKind::ZeroOne => Ok(zero_one_offset(scores)),
        LossKind::Log => Ok(log_offset(scores)),
        LossKind::Alpha(a) => alpha_offset(scores, a.beta(), bisection_tol),
        LossKind::LogRelative(_) => Err(MrcError::UnsupportedLoss("log-relative loss has no dual trainer")),
    }
}

/// `nu*_j(mu)` for the 0-1 loss.
pub fn nu_star_zero_one(atoms: &ConstraintAtoms, j: usize, mu: &[f64]) -> f64 {
    zero_one_offset(&atoms.scores(j, mu))
}

/// `nu*_j(mu)` for the log loss.
pub fn nu_star_log(atoms: &ConstraintAtoms, j: usize, mu: &[f64]) -> f64 {
    log_offset(&atoms.scores(j, mu))
}

/// `nu*_j(mu)` for the alpha loss.
pub fn nu_star_alpha(atoms: &ConstraintAtoms, j: usize, mu: &[f64], alpha: &Alpha, bisection_tol: f64) -> Result<f64> {
    alpha_offset(&atoms.scores(j, mu), alpha.beta(), bisection_tol)
}

/// `F(mu)` for a loss, a box and the atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedObjective {
    loss: LossKind,
    bx: ExpectationBox,
    atoms: ConstraintAtoms,
    half_width: Vec<f64>,
    center: Vec<f64>,
    bisection_tol: f64,
}

impl ReducedObjective {
    pub fn new(loss: LossKind, bx: ExpectationBox, atoms: ConstraintAtoms) -> Result<Self> {
        if bx.len() != atoms.dim() {
            return Err(MrcError::DimensionMismatch {
                expected: atoms.dim(),
                found: bx.len(),
            });
        }
        if matches!(loss, LossKind::LogRelative(_)) {
            return Err(MrcError::UnsupportedLoss("log-relative loss has no dual trainer"));
        }
        let half_width = bx.half_width();
        let center = bx.center();
        Ok(Self {
            loss,
            bx,
            atoms,
            half_width,
            center,
            bisection_tol: SolverConfig::default().bisection_tol,
        })
    }

    pub fn with_bisection_tol(mut self, tol: f64) -> Self {
        self.bisection_tol = tol;
        self
    }

    pub fn loss(&self) -> &LossKind {
        &self.loss
    }

    pub fn expectation_box(&self) -> &ExpectationBox {
        &self.bx
    }

    pub fn atoms(&self) -> &ConstraintAtoms {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.atoms.dim()
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

    /// `1/2 (b - a)^T |mu| - 1/2 (b + a)^T mu`.
    pub fn linear_part(&self, mu: &[f64]) -> f64 {
        mu.iter()
            .zip(self.half_width.iter().zip(&self.center))
            .map(|(m, (h, c))| h * m.abs() - c * m)
            .sum()
    }

    pub fn nu_star(&self, mu: &[f64], j: usize) -> Result<f64> {
        self.check(mu)?;
        offset(&self.loss, &self.atoms.scores(j, mu), self.bisection_tol)
    }

    /// `min_j nu*_j(mu)` and the smallest `j` attaining it.
    pub fn min_nu(&self, mu: &[f64]) -> Result<(f64, usize)> {
        self.check(mu)?;
        let mut scores = vec![0.0; self.atoms.num_classes()];
        let mut best = (f64::INFINITY, 0);
        for j in 0..self.atoms.len() {
            self.atoms.scores_into(j, mu, &mut scores);
            let nu = offset(&self.loss, &scores, self.bisection_tol)?;
            if nu < best.0 {
                best = (nu, j);
            }
        }
        Ok(best)
    }

    pub fn value(&self, mu: &[f64]) -> Result<f64> {
        let (nu, _) = self.min_nu(mu)?;
        Ok(self.linear_part(mu) - nu)
    }

    /// `F(mu)` and a subgradient. The `|mu|` term contributes zero at zero
    /// coordinates and the `min_j` term uses the smallest minimizing `j`.
    pub fn value_and_subgradient(&self, mu: &[f64]) -> Result<(f64, Vec<f64>)> {
        let (nu, j) = self.min_nu(mu)?;
        let num_classes = self.atoms.num_classes();
        let scores = self.atoms.scores(j, mu);
        let mut weights = vec![0.0; num_classes];
        let mut order = Vec::with_capacity(num_classes);
        offset_with_weights(&self.loss, &scores, self.bisection_tol, &mut order, &mut weights)?;
        let mut g: Vec<f64> = mu
            .iter()
            .zip(self.half_width.iter().zip(&self.center))
            .map(|(m, (h, c))| {
                let sign = if *m > 0.0 {
                    1.0
                } else if *m < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                h * sign - c
            })
            .collect();
        for (y, w) in weights.iter().enumerate() {
            if *w == 0.0 {
                continue;
            }
            for (gi, f) in g.iter_mut().zip(self.atoms.vector(j, y)) {
                *gi += w * f;
            }
        }
        Ok((self.linear_part(mu) - nu, g))
    }
}

pub fn reduced_value(obj: &ReducedObjective, mu: &[f64]) -> Result<f64> {
    obj.value(mu)
}

/// Outcome of [`minimize_subgradient`].
#[derive(Debug, Clone, PartialEq)]
pub struct SubgradientRun {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Normalized subgradient descent keeping the best iterate.
///
/// When the best value has not improved by more than `tol` (relative) for a
/// tenth of the budget, the step scale is halved. It reports convergence once
/// the scale has shrunk by `512` or a zero subgradient is met.
pub fn minimize_subgradient<F>(mut f: F, x0: Vec<f64>, cfg: &SolverConfig) -> Result<SubgradientRun>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    cfg.validate()?;
    // Ten phases fit in the budget; nine halvings reach the floor.
    let patience = (cfg.max_iters / 10).max(50);
    let (mut value, mut g) = f(&x0)?;
    let mut best_value = value;
    let mut best_x = x0.clone();
    let mut x = x0;
    let mut scale = cfg.c;
    let mut t = 0usize;
    let mut stalled = 0usize;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        let norm = norm2(&g);
        if norm == 0.0 {
            converged = true;
            break;
        }
        if !norm.is_finite() || !value.is_finite() {
            return Err(MrcError::Incompatible("objective or subgradient is not finite".into()));
        }
        let step = match cfg.step_rule {
            StepRule::Diminishing => scale / sqrt((t + 1) as f64),
            StepRule::Constant => scale,
        };
        for (xi, gi) in x.iter_mut().zip(&g) {
            *xi -= step * gi / norm;
        }
        (value, g) = f(&x)?;
        iterations += 1;
        t += 1;
        if value < best_value {
            if best_value - value > cfg.tol * (1.0 + best_value.abs()) {
                stalled = 0;
            } else {
                stalled += 1;
            }
            best_value = value;
            best_x.copy_from_slice(&x);
        } else {
            stalled += 1;
        }
        if stalled >= patience {
            // Shrink the steps but keep walking from the current point.
            scale *= 0.5;
            if scale < cfg.c / 512.0 {
                converged = true;
                break;
            }
            stalled = 0;
        }
    }
    Ok(SubgradientRun {
        x: best_x,
        value: best_value,
        iterations,
        converged,
    })
}

/// Learns an MRC by subgradient descent on `F`.
pub fn train_mrc(loss: LossKind, bx: &ExpectationBox, atoms: &ConstraintAtoms, cfg: &SolverConfig) -> Result<MrcModel> {
    cfg.validate()?;
    let obj = ReducedObjective::new(loss, bx.clone(), atoms.clone())?.with_bisection_tol(cfg.bisection_tol);
    let run = minimize_subgradient(|mu| obj.value_and_subgradient(mu), vec![0.0; obj.dim()], cfg)?;
    let (nu, _) = obj.min_nu(&run.x)?;
    Ok(MrcModel {
        loss: obj.loss,
        objective_value: run.value,
        mu: run.x,
        nu: Some(nu),
        variant: Variant::ExpectationOnly,
        feature_map: None,
        converged: run.converged,
        iterations: run.iterations,
    })
}

/// Exact 0-1 MRC through the LP over `(mu, eta, nu)` with one constraint per
/// atom and nonempty label subset:
/// `sum_{y in C} f_j(y)^T mu + |C| nu <= 1 - |C|`, and `eta >= +-mu`.
pub fn train_zero_one_exact(bx: &ExpectationBox, atoms: &ConstraintAtoms, cfg: &SolverConfig) -> Result<MrcModel> {
    cfg.validate()?;
    let num_classes = atoms.num_classes();
    if num_classes > MAX_EXACT_CLASSES {
        return Err(MrcError::TooManyClasses {
            num_classes,
            max: MAX_EXACT_CLASSES,
        });
    }
    let obj = ReducedObjective::new(LossKind::ZeroOne, bx.clone(), atoms.clone())?;
    let m = atoms.dim();
    let (half_width, center) = (bx.half_width(), bx.center());

    let mut costs = Vec::with_capacity(2 * m + 1);
    costs.extend(center.iter().map(|c| -c));
    costs.extend_from_slice(&half_width);
    costs.push(-1.0);
    let mut bounds = vec![VarBound::FREE; m];
    bounds.extend(core::iter::repeat_n(VarBound::NONNEG, m));
    bounds.push(VarBound::FREE);
    let mut lp = LinearProgram::minimize(costs, bounds)?;

    let mut row = vec![0.0; 2 * m + 1];
    for j in 0..atoms.len() {
        for mask in 1usize..(1 << num_classes) {
            row.iter_mut().for_each(|v| *v = 0.0);
            let size = mask.count_ones() as f64;
            for y in (0..num_classes).filter(|y| mask >> y & 1 == 1) {
                for (r, f) in row[..m].iter_mut().zip(atoms.vector(j, y)) {
                    *r += f;
                }
            }
            row[2 * m] = size;
            lp.add_row(&row, Sense::Le, 1.0 - size)?;
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
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(MrcError::InfeasibleLp("0-1 dual")),
        LpStatus::Unbounded => return Err(MrcError::UnboundedLp("0-1 dual; the box admits no distribution")),
    }
    let mu = solution.x[..m].to_vec();
    let (nu, _) = obj.min_nu(&mu)?;
    let objective_value = obj.linear_part(&mu) - nu;
    Ok(MrcModel {
        loss: LossKind::ZeroOne,
        mu,
        nu: Some(nu),
        objective_value,
        variant: Variant::ExpectationOnly,
        feature_map: None,
        converged: true,
        iterations: 0,
    })
}
