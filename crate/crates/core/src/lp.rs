//! Dense two-phase primal simplex.
//!
//! Problems are stated as `min c^T x` subject to rows `A_i x (<=|>=|=) b_i`
//! and per-variable bounds. Variables are shifted, mirrored or split so the
//! tableau only holds non-negative columns; phase one minimizes the sum of
//! artificial variables, phase two the objective. Entering and leaving
//! variables follow Bland's rule, so the method cannot cycle.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{MrcError, Result};

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-10;
const MAX_PIVOTS: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// Variable bounds; `None` means unbounded on that side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarBound {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl VarBound {
    pub const NONNEG: VarBound = VarBound {
        lower: Some(0.0),
        upper: None,
    };
    pub const FREE: VarBound = VarBound {
        lower: None,
        upper: None,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point; meaningful only when `status` is `Optimal`.
    pub x: Vec<f64>,
    /// Objective value; `+inf` when infeasible, `-inf` when unbounded.
    pub value: f64,
}

/// A minimization problem assembled row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    bounds: Vec<VarBound>,
    rows: Vec<f64>,
    senses: Vec<Sense>,
    rhs: Vec<f64>,
}

impl LinearProgram {
    /// `min objective^T x` with the given bounds.
    pub fn minimize(objective: Vec<f64>, bounds: Vec<VarBound>) -> Result<Self> {
        if objective.len() != bounds.len() {
            return Err(MrcError::DimensionMismatch {
                expected: objective.len(),
                found: bounds.len(),
            });
        }
        Ok(Self {
            objective,
            bounds,
            rows: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn add_row(&mut self, coefficients: &[f64], sense: Sense, rhs: f64) -> Result<()> {
        if coefficients.len() != self.num_vars() {
            return Err(MrcError::DimensionMismatch {
                expected: self.num_vars(),
                found: coefficients.len(),
            });
        }
        self.rows.extend_from_slice(coefficients);
        self.senses.push(sense);
        self.rhs.push(rhs);
        Ok(())
    }

    fn row(&self, i: usize) -> &[f64] {
        let n = self.num_vars();
        &self.rows[i * n..(i + 1) * n]
    }

    pub fn solve(&self) -> Result<LpSolution> {
        Tableau::build(self)?.run(self)
    }
}

/// Solves `min c^T x` s.t. `A x (sense) b` and `bounds`. `a` holds one row per
/// constraint.
pub fn solve_lp(
    c: &[f64],
    a: &[Vec<f64>],
    b: &[f64],
    senses: &[Sense],
    bounds: &[VarBound],
) -> Result<LpSolution> {
    if a.len() != b.len() || a.len() != senses.len() {
        return Err(MrcError::DimensionMismatch {
            expected: a.len(),
            found: if a.len() != b.len() { b.len() } else { senses.len() },
        });
    }
    let mut lp = LinearProgram::minimize(c.to_vec(), bounds.to_vec())?;
    for ((row, sense), rhs) in a.iter().zip(senses).zip(b) {
        lp.add_row(row, *sense, *rhs)?;
    }
    lp.solve()
}

/// How an original variable maps onto non-negative tableau columns:
/// `x = offset + sign * col_plus - col_minus`.
#[derive(Debug, Clone, Copy)]
struct VarMap {
    plus: usize,
    minus: Option<usize>,
    offset: f64,
    sign: f64,
}

struct Tableau {
    /// `rows x (cols + 1)`, right-hand side in the last column.
    cells: Vec<f64>,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
    structural: usize,
    artificial_start: usize,
    maps: Vec<VarMap>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Result<Self> {
        let mut maps = Vec::with_capacity(lp.num_vars());
        let mut structural = 0;
        // Extra rows for finite upper bounds on shifted variables.
        let mut upper_rows: Vec<(usize, f64)> = Vec::new();
        for bound in &lp.bounds {
            let map = match (bound.lower, bound.upper) {
                (Some(l), u) => {
                    if let Some(u) = u {
                        if u < l {
                            return Err(MrcError::Incompatible("variable upper bound below lower bound".into()));
                        }
                        upper_rows.push((structural, u - l));
                    }
                    VarMap {
                        plus: structural,
                        minus: None,
                        offset: l,
                        sign: 1.0,
                    }
                }
                (None, Some(u)) => VarMap {
                    plus: structural,
                    minus: None,
                    offset: u,
                    sign: -1.0,
                },
                (None, None) => {
                    structural += 1;
                    VarMap {
                        plus: structural - 1,
                        minus: Some(structural),
                        offset: 0.0,
                        sign: 1.0,
                    }
                }
            };
            structural += 1;
            maps.push(map);
        }

        // Standard-form rows over the structural columns.
        let mut std_rows: Vec<(Vec<f64>, Sense, f64)> = Vec::with_capacity(lp.num_rows() + upper_rows.len());
        for i in 0..lp.num_rows() {
            let mut coeffs = vec![0.0; structural];
            let mut rhs = lp.rhs[i];
            for (a, map) in lp.row(i).iter().zip(&maps) {
                if *a == 0.0 {
                    continue;
                }
                rhs -= a * map.offset;
                coeffs[map.plus] += a * map.sign;
                if let Some(minus) = map.minus {
                    coeffs[minus] -= a;
                }
            }
            std_rows.push((coeffs, lp.senses[i], rhs));
        }
        for (col, width) in upper_rows {
            let mut coeffs = vec![0.0; structural];
            coeffs[col] = 1.0;
            std_rows.push((coeffs, Sense::Le, width));
        }
        for (coeffs, sense, rhs) in std_rows.iter_mut() {
            if *rhs < 0.0 {
                coeffs.iter_mut().for_each(|c| *c = -*c);
                *rhs = -*rhs;
                *sense = match *sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
        }

        let rows = std_rows.len();
        let slack_count = std_rows.iter().filter(|r| r.1 != Sense::Eq).count();
        let artificial_count = std_rows.iter().filter(|r| r.1 != Sense::Le).count();
        let artificial_start = structural + slack_count;
        let cols = artificial_start + artificial_count;
        let width = cols + 1;
        let mut cells = vec![0.0; rows * width];
        let mut basis = vec![0; rows];
        let (mut next_slack, mut next_art) = (structural, artificial_start);
        for (i, (coeffs, sense, rhs)) in std_rows.iter().enumerate() {
            let row = &mut cells[i * width..(i + 1) * width];
            row[..structural].copy_from_slice(coeffs);
            row[cols] = *rhs;
            match sense {
                Sense::Le => {
                    row[next_slack] = 1.0;
                    basis[i] = next_slack;
                    next_slack += 1;
                }
                Sense::Ge => {
                    row[next_slack] = -1.0;
                    next_slack += 1;
                    row[next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
                Sense::Eq => {
                    row[next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
            }
        }
        Ok(Self {
            cells,
            rows,
            cols,
            basis,
            structural,
            artificial_start,
            maps,
        })
    }

    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.width() + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    /// Reduced-cost row for column costs `costs` given the current basis.
    fn reduced_costs(&self, costs: &[f64]) -> Vec<f64> {
        let width = self.width();
        let mut reduced = vec![0.0; width];
        reduced[..self.cols].copy_from_slice(&costs[..self.cols]);
        for i in 0..self.rows {
            let cb = costs[self.basis[i]];
            if cb == 0.0 {
                continue;
            }
            let row = &self.cells[i * width..(i + 1) * width];
            for (r, a) in reduced.iter_mut().zip(row) {
                *r -= cb * a;
            }
        }
        // Last entry holds -(c_B^T x_B).
        reduced
    }

    fn pivot(&mut self, reduced: &mut [f64], pr: usize, pc: usize) {
        let width = self.width();
        let inv = 1.0 / self.at(pr, pc);
        {
            let row = &mut self.cells[pr * width..(pr + 1) * width];
            row.iter_mut().for_each(|v| *v *= inv);
            row[pc] = 1.0;
        }
        let pivot_row: Vec<f64> = self.cells[pr * width..(pr + 1) * width].to_vec();
        for i in 0..self.rows {
            if i == pr {
                continue;
            }
            let factor = self.cells[i * width + pc];
            if factor == 0.0 {
                continue;
            }
            let row = &mut self.cells[i * width..(i + 1) * width];
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
            row[pc] = 0.0;
        }
        let factor = reduced[pc];
        if factor != 0.0 {
            for (v, p) in reduced.iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
            reduced[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Runs Bland-rule simplex iterations over columns `< allowed`.
    /// Returns `false` when the problem is unbounded.
    fn iterate(&mut self, reduced: &mut [f64], allowed: usize) -> Result<bool> {
        for _ in 0..MAX_PIVOTS {
            let Some(pc) = (0..allowed).find(|&j| reduced[j] < -COST_EPS) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, pc);
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best - 1e-12
                                || (ratio <= best + 1e-12 && self.basis[i] < self.basis[r])
                            {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            let Some((pr, _)) = leave else {
                return Ok(false);
            };
            self.pivot(reduced, pr, pc);
        }
        Err(MrcError::InvalidConfig("simplex pivot limit reached"))
    }

    fn run(mut self, lp: &LinearProgram) -> Result<LpSolution> {
        let n = lp.num_vars();
        let scale = 1.0 + (0..self.rows).map(|i| self.rhs(i).abs()).fold(0.0, f64::max);

        // Phase one.
        let mut costs = vec![0.0; self.cols];
        costs[self.artificial_start..].iter_mut().for_each(|c| *c = 1.0);
        let mut reduced = self.reduced_costs(&costs);
        self.iterate(&mut reduced, self.cols)?;
        let infeasibility = -reduced[self.cols];
        if infeasibility > 1e-8 * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: vec![0.0; n],
                value: f64::INFINITY,
            });
        }
        // Move zero-level artificials out of the basis where possible.
        for i in 0..self.rows {
            if self.basis[i] >= self.artificial_start {
                if let Some(pc) = (0..self.artificial_start).find(|&j| self.at(i, j).abs() > PIVOT_EPS) {
                    self.pivot(&mut reduced, i, pc);
                }
            }
        }

        // Phase two over structural and slack columns only.
        let mut costs = vec![0.0; self.cols];
        let mut constant = 0.0;
        for (map, c) in self.maps.iter().zip(&lp.objective) {
            constant += c * map.offset;
            costs[map.plus] += c * map.sign;
            if let Some(minus) = map.minus {
                costs[minus] -= c;
            }
        }
        let mut reduced = self.reduced_costs(&costs);
        if !self.iterate(&mut reduced, self.artificial_start)? {
            return Ok(LpSolution {
                status: LpStatus::Unbounded,
                x: vec![0.0; n],
                value: f64::NEG_INFINITY,
            });
        }

        let mut column_values = vec![0.0; self.structural];
        for i in 0..self.rows {
            if self.basis[i] < self.structural {
                column_values[self.basis[i]] = self.rhs(i);
            }
        }
        let x: Vec<f64> = self
            .maps
            .iter()
            .map(|m| {
                let minus = m.minus.map_or(0.0, |j| column_values[j]);
                m.offset + m.sign * column_values[m.plus] - minus
            })
            .collect();
        let value = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>();
        debug_assert!((value - (constant - reduced[self.cols])).abs() <= 1e-6 * (1.0 + value.abs()));
        Ok(LpSolution {
            status: LpStatus::Optimal,
            x,
            value,
        })
    }
}
