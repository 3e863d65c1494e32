//! Threshold feature maps, expectation boxes and constraint atoms.
//!
//! The feature map is `Phi(x, y) = e_y (x) Psi(x)` with
//! `Psi(x) = [1, 1{x[d_1] <= t_1}, ..., 1{x[d_k] <= t_k}]`, so
//! `m = |Y| (k + 1)`. Thresholds come from one-dimensional decision trees
//! grown per input dimension with the Gini criterion.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::data::Dataset;
use crate::error::{MrcError, Result};
use crate::math::{dot, ln, sqrt};

/// Leaf budget of the per-dimension decision trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StumpSpec {
    max_leaves: usize,
}

impl StumpSpec {
    pub fn new(max_leaves: usize) -> Result<Self> {
        if max_leaves < 2 {
            return Err(MrcError::InvalidConfig("max_leaves must be at least 2"));
        }
        Ok(Self { max_leaves })
    }

    pub fn max_leaves(&self) -> usize {
        self.max_leaves
    }
}

impl Default for StumpSpec {
    fn default() -> Self {
        Self { max_leaves: 20 }
    }
}

/// Indicator `1{x[dim] <= value}`; `dim` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub dim: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMap {
    num_classes: usize,
    input_dim: usize,
    thresholds: Vec<Threshold>,
}

impl FeatureMap {
    pub fn new(num_classes: usize, input_dim: usize, thresholds: Vec<Threshold>) -> Result<Self> {
        if num_classes < 2 {
            return Err(MrcError::TooFewClasses(num_classes));
        }
        for t in &thresholds {
            if t.dim >= input_dim {
                return Err(MrcError::DimensionMismatch {
                    expected: input_dim,
                    found: t.dim + 1,
                });
            }
            if !t.value.is_finite() {
                return Err(MrcError::Incompatible(format!(
                    "threshold on dimension {} is not finite",
                    t.dim
                )));
            }
        }
        Ok(Self {
            num_classes,
            input_dim,
            thresholds,
        })
    }

    /// Feature map with only the per-class intercepts (`k = 0`).
    pub fn intercept_only(num_classes: usize, input_dim: usize) -> Result<Self> {
        Self::new(num_classes, input_dim, Vec::new())
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn thresholds(&self) -> &[Threshold] {
        &self.thresholds
    }

    /// Length of `Psi(x)`, i.e. `k + 1`.
    pub fn block_len(&self) -> usize {
        self.thresholds.len() + 1
    }

    /// Length `m` of `Phi(x, y)`.
    pub fn len(&self) -> usize {
        self.num_classes * self.block_len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check_instance(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(MrcError::DimensionMismatch {
                expected: self.input_dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    fn check_class(&self, y: usize) -> Result<()> {
        if y >= self.num_classes {
            return Err(MrcError::LabelOutOfRange {
                index: y,
                num_classes: self.num_classes,
            });
        }
        Ok(())
    }

    fn psi_into(&self, x: &[f64], out: &mut [f64]) {
        out[0] = 1.0;
        for (o, t) in out[1..].iter_mut().zip(&self.thresholds) {
            *o = if x[t.dim] <= t.value { 1.0 } else { 0.0 };
        }
    }

    /// Instance features `Psi(x)`.
    pub fn psi(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_instance(x)?;
        let mut out = vec![0.0; self.block_len()];
        self.psi_into(x, &mut out);
        Ok(out)
    }

    /// `Phi(x, y)` for class index `y`.
    pub fn phi(&self, x: &[f64], y: usize) -> Result<Vec<f64>> {
        self.check_instance(x)?;
        self.check_class(y)?;
        let block = self.block_len();
        let mut out = vec![0.0; self.len()];
        self.psi_into(x, &mut out[y * block..(y + 1) * block]);
        Ok(out)
    }

    /// `Phi(x, y)^T mu` for every class.
    pub fn scores(&self, x: &[f64], mu: &[f64]) -> Result<Vec<f64>> {
        self.check_instance(x)?;
        if mu.len() != self.len() {
            return Err(MrcError::DimensionMismatch {
                expected: self.len(),
                found: mu.len(),
            });
        }
        let block = self.block_len();
        let mut psi = vec![0.0; block];
        self.psi_into(x, &mut psi);
        Ok(mu.chunks(block).map(|mu_y| dot(&psi, mu_y)).collect())
    }
}

/// Weighted Gini impurity `n * (1 - sum (c/n)^2) = n - sum c^2 / n`.
fn weighted_gini(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let sq: f64 = counts.iter().map(|&c| (c * c) as f64).sum();
    n as f64 - sq / n as f64
}

/// Thresholds chosen for one dimension by a greedy 1-D decision tree.
fn fit_dimension(values: &mut [(f64, usize)], num_classes: usize, max_leaves: usize) -> Vec<f64> {
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Distinct values with per-class cumulative counts.
    let mut distinct: Vec<f64> = Vec::new();
    let mut cumulative: Vec<Vec<usize>> = vec![vec![0; num_classes]];
    for &(v, label) in values.iter() {
        if distinct.last() != Some(&v) {
            distinct.push(v);
            let last = cumulative.last().unwrap().clone();
            cumulative.push(last);
        }
        cumulative.last_mut().unwrap()[label] += 1;
    }
    let counts_between = |lo: usize, hi: usize| -> Vec<usize> {
        (0..num_classes)
            .map(|c| cumulative[hi][c] - cumulative[lo][c])
            .collect()
    };

    let mut leaves: Vec<(usize, usize)> = vec![(0, distinct.len())];
    let mut thresholds = Vec::new();
    while leaves.len() < max_leaves {
        let mut best: Option<(usize, usize, f64)> = None;
        for (leaf_idx, &(lo, hi)) in leaves.iter().enumerate() {
            if hi - lo < 2 {
                continue;
            }
            let parent = weighted_gini(&counts_between(lo, hi));
            for split in lo + 1..hi {
                let decrease = parent
                    - weighted_gini(&counts_between(lo, split))
                    - weighted_gini(&counts_between(split, hi));
                if decrease > 1e-12 && best.is_none_or(|(_, _, d)| decrease > d) {
                    best = Some((leaf_idx, split, decrease));
                }
            }
        }
        let Some((leaf_idx, split, _)) = best else {
            break;
        };
        let (lo, hi) = leaves[leaf_idx];
        leaves[leaf_idx] = (lo, split);
        leaves.insert(leaf_idx + 1, (split, hi));
        thresholds.push(0.5 * (distinct[split - 1] + distinct[split]));
    }
    thresholds.sort_by(f64::total_cmp);
    thresholds
}

/// Fits threshold features with one decision tree per input dimension, each
/// limited to `spec.max_leaves()` leaves. Constant dimensions contribute no
/// thresholds.
pub fn fit_thresholds(data: &Dataset, spec: StumpSpec) -> Result<FeatureMap> {
    let mut thresholds = Vec::new();
    let mut column: Vec<(f64, usize)> = Vec::with_capacity(data.len());
    for dim in 0..data.dim() {
        column.clear();
        column.extend((0..data.len()).map(|i| (data.row(i)[dim], data.label(i))));
        for value in fit_dimension(&mut column, data.num_classes(), spec.max_leaves()) {
            thresholds.push(Threshold { dim, value });
        }
    }
    FeatureMap::new(data.num_classes(), data.dim(), thresholds)
}

/// Empirical feature mean `tau` and the interval box
/// `a = tau - lambda / sqrt(n)`, `b = tau + lambda / sqrt(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationBox {
    tau: Vec<f64>,
    lambda: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
    n: usize,
}

impl ExpectationBox {
    pub fn new(tau: Vec<f64>, lambda: Vec<f64>, n: usize) -> Result<Self> {
        if tau.len() != lambda.len() {
            return Err(MrcError::DimensionMismatch {
                expected: tau.len(),
                found: lambda.len(),
            });
        }
        if n == 0 {
            return Err(MrcError::EmptyDataset);
        }
        if let Some((index, &value)) = lambda
            .iter()
            .enumerate()
            .find(|(_, l)| !(l.is_finite() && **l >= 0.0))
        {
            return Err(MrcError::InvalidLambda { index, value });
        }
        let scale = 1.0 / sqrt(n as f64);
        let a = tau.iter().zip(&lambda).map(|(t, l)| t - l * scale).collect();
        let b = tau.iter().zip(&lambda).map(|(t, l)| t + l * scale).collect();
        Ok(Self {
            tau,
            lambda,
            a,
            b,
            n,
        })
    }

    /// A box with explicit bounds; `tau` is set to the midpoint and `lambda`
    /// to the matching half width.
    pub fn from_bounds(a: Vec<f64>, b: Vec<f64>, n: usize) -> Result<Self> {
        if a.len() != b.len() {
            return Err(MrcError::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if n == 0 {
            return Err(MrcError::EmptyDataset);
        }
        if a.iter().zip(&b).any(|(lo, hi)| !(lo <= hi)) {
            return Err(MrcError::Incompatible("box lower bound exceeds upper bound".into()));
        }
        let root_n = sqrt(n as f64);
        let tau = a.iter().zip(&b).map(|(lo, hi)| 0.5 * (lo + hi)).collect();
        let lambda = a.iter().zip(&b).map(|(lo, hi)| 0.5 * (hi - lo) * root_n).collect();
        Ok(Self {
            tau,
            lambda,
            a,
            b,
            n,
        })
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn lower(&self) -> &[f64] {
        &self.a
    }

    pub fn upper(&self) -> &[f64] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(b - a) / 2`.
    pub fn half_width(&self) -> Vec<f64> {
        self.a.iter().zip(&self.b).map(|(a, b)| 0.5 * (b - a)).collect()
    }

    /// `(b + a) / 2`.
    pub fn center(&self) -> Vec<f64> {
        self.a.iter().zip(&self.b).map(|(a, b)| 0.5 * (b + a)).collect()
    }

    /// True when `a <= v <= b` up to `slack` in every coordinate.
    pub fn contains(&self, v: &[f64], slack: f64) -> bool {
        v.len() == self.len()
            && v
                .iter()
                .zip(self.a.iter().zip(&self.b))
                .all(|(x, (lo, hi))| *x >= lo - slack && *x <= hi + slack)
    }
}

/// Mean of `Phi(x_i, y_i)` over the samples.
pub fn empirical_mean(fm: &FeatureMap, data: &Dataset) -> Result<Vec<f64>> {
    check_compatible(fm, data)?;
    let block = fm.block_len();
    let mut tau = vec![0.0; fm.len()];
    let mut psi = vec![0.0; block];
    for i in 0..data.len() {
        fm.psi_into(data.row(i), &mut psi);
        let y = data.label(i);
        for (t, p) in tau[y * block..(y + 1) * block].iter_mut().zip(&psi) {
            *t += p;
        }
    }
    let n = data.len() as f64;
    tau.iter_mut().for_each(|t| *t /= n);
    Ok(tau)
}

pub fn estimate_expectations(fm: &FeatureMap, data: &Dataset, lambda: &[f64]) -> Result<ExpectationBox> {
    if lambda.len() != fm.len() {
        return Err(MrcError::DimensionMismatch {
            expected: fm.len(),
            found: lambda.len(),
        });
    }
    let tau = empirical_mean(fm, data)?;
    ExpectationBox::new(tau, lambda.to_vec(), data.len())
}

/// Range `max - min` of every coordinate of `Phi` over all of `X x Y`.
///
/// Each coordinate is zero for the other classes; intercepts are one for their
/// class and every threshold indicator can take both values, so the range is
/// one everywhere.
pub fn feature_ranges(fm: &FeatureMap) -> Vec<f64> {
    vec![1.0; fm.len()]
}

/// `lambda = d * sqrt((log m + log(2 / delta)) / 2)` with `m = d.len()`.
pub fn lambda_from_ranges(ranges: &[f64], delta: f64) -> Result<Vec<f64>> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(MrcError::InvalidDelta(delta));
    }
    let m = ranges.len() as f64;
    let factor = sqrt((ln(m) + ln(2.0 / delta)) / 2.0);
    Ok(ranges.iter().map(|d| d * factor).collect())
}

/// Confidence-interval widths giving `p* in U` with probability `1 - delta`.
pub fn theorem3_lambda(fm: &FeatureMap, delta: f64) -> Result<Vec<f64>> {
    lambda_from_ranges(&feature_ranges(fm), delta)
}

/// Deduplicated families `{f_j(y)}_y` of feature vectors. Group `j` stores
/// `|Y|` vectors of length `m`; `count(j)` is how many samples produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintAtoms {
    num_classes: usize,
    m: usize,
    groups: Vec<f64>,
    counts: Vec<usize>,
}

impl ConstraintAtoms {
    /// Builds atoms from explicit groups, merging identical ones.
    pub fn from_groups(num_classes: usize, m: usize, groups: &[Vec<Vec<f64>>]) -> Result<Self> {
        let mut atoms = Self {
            num_classes,
            m,
            groups: Vec::new(),
            counts: Vec::new(),
        };
        let mut index: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        for group in groups {
            if group.len() != num_classes {
                return Err(MrcError::DimensionMismatch {
                    expected: num_classes,
                    found: group.len(),
                });
            }
            let mut flat = Vec::with_capacity(num_classes * m);
            for v in group {
                if v.len() != m {
                    return Err(MrcError::DimensionMismatch {
                        expected: m,
                        found: v.len(),
                    });
                }
                flat.extend_from_slice(v);
            }
            atoms.push(&mut index, flat);
        }
        if atoms.is_empty() {
            return Err(MrcError::EmptyDataset);
        }
        Ok(atoms)
    }

    fn push(&mut self, index: &mut BTreeMap<Vec<u64>, usize>, flat: Vec<f64>) {
        let key: Vec<u64> = flat.iter().map(|v| v.to_bits()).collect();
        match index.get(&key) {
            Some(&j) => self.counts[j] += 1,
            None => {
                index.insert(key, self.counts.len());
                self.groups.extend_from_slice(&flat);
                self.counts.push(1);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Feature length `m`.
    pub fn dim(&self) -> usize {
        self.m
    }

    /// `f_j(y)`.
    pub fn vector(&self, j: usize, y: usize) -> &[f64] {
        let start = (j * self.num_classes + y) * self.m;
        &self.groups[start..start + self.m]
    }

    pub fn count(&self, j: usize) -> usize {
        self.counts[j]
    }

    pub fn total_count(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `f_j(y)^T mu` for every class, written into `out`.
    pub fn scores_into(&self, j: usize, mu: &[f64], out: &mut [f64]) {
        for (y, o) in out.iter_mut().enumerate().take(self.num_classes) {
            *o = dot(self.vector(j, y), mu);
        }
    }

    pub fn scores(&self, j: usize, mu: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.num_classes];
        self.scores_into(j, mu, &mut out);
        out
    }
}

fn check_compatible(fm: &FeatureMap, data: &Dataset) -> Result<()> {
    if fm.input_dim() != data.dim() {
        return Err(MrcError::DimensionMismatch {
            expected: fm.input_dim(),
            found: data.dim(),
        });
    }
    if fm.num_classes() != data.num_classes() {
        return Err(MrcError::Incompatible(format!(
            "feature map has {} classes, dataset has {}",
            fm.num_classes(),
            data.num_classes()
        )));
    }
    Ok(())
}

/// Atoms `{Phi(x_i, y)}_y` over the training instances, deduplicated.
pub fn constraint_atoms(fm: &FeatureMap, data: &Dataset) -> Result<ConstraintAtoms> {
    check_compatible(fm, data)?;
    instance_atoms(fm, data.rows())
}

/// Atoms for an arbitrary collection of instances.
pub fn instance_atoms<'a, I>(fm: &FeatureMap, instances: I) -> Result<ConstraintAtoms>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let (num_classes, m, block) = (fm.num_classes(), fm.len(), fm.block_len());
    let mut atoms = ConstraintAtoms {
        num_classes,
        m,
        groups: Vec::new(),
        counts: Vec::new(),
    };
    let mut index = BTreeMap::new();
    let mut psi = vec![0.0; block];
    for x in instances {
        fm.check_instance(x)?;
        fm.psi_into(x, &mut psi);
        let mut flat = vec![0.0; num_classes * m];
        for y in 0..num_classes {
            let start = y * m + y * block;
            flat[start..start + block].copy_from_slice(&psi);
        }
        atoms.push(&mut index, flat);
    }
    if atoms.is_empty() {
        return Err(MrcError::EmptyDataset);
    }
    Ok(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_class_map() -> FeatureMap {
        FeatureMap::new(
            2,
            2,
            vec![
                Threshold { dim: 0, value: 0.5 },
                Threshold { dim: 1, value: -1.0 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn phi_examples() {
        let fm = two_class_map();
        let x = [0.3, 0.0];
        assert_eq!(fm.phi(&x, 0).unwrap(), vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(fm.phi(&x, 1).unwrap(), vec![0.0, 0.0, 0.0, 1.0, 1.0, 0.0]);
        let low = [-5.0, -5.0];
        assert_eq!(fm.phi(&low, 0).unwrap(), vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn phi_rejects_bad_inputs() {
        let fm = two_class_map();
        assert!(matches!(
            fm.phi(&[0.0], 0),
            Err(MrcError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            fm.phi(&[0.0, 0.0], 2),
            Err(MrcError::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn expectation_examples() {
        let fm = FeatureMap::intercept_only(2, 1).unwrap();
        let data = Dataset::from_rows(&[vec![0.0], vec![1.0], vec![2.0], vec![3.0]], vec![0; 4], 2).unwrap();
        let bx = estimate_expectations(&fm, &data, &[0.25, 0.25]).unwrap();
        assert_eq!(bx.tau(), &[1.0, 0.0]);
        assert_eq!(bx.lower(), &[0.875, -0.125]);
        assert_eq!(bx.upper(), &[1.125, 0.125]);

        let point = estimate_expectations(&fm, &data, &[0.0, 0.0]).unwrap();
        assert_eq!(point.lower(), point.upper());
        assert_eq!(point.lower(), point.tau());

        assert!(matches!(
            estimate_expectations(&fm, &data, &[0.1, -0.1]),
            Err(MrcError::InvalidLambda { index: 1, .. })
        ));
    }

    #[test]
    fn box_width_scales_with_root_n() {
        let small = ExpectationBox::new(vec![0.5], vec![0.3], 25).unwrap();
        let large = ExpectationBox::new(vec![0.5], vec![0.3], 100).unwrap();
        let w_small = small.upper()[0] - small.lower()[0];
        let w_large = large.upper()[0] - large.lower()[0];
        assert!((w_small - 2.0 * w_large).abs() < 1e-15);
    }

    #[test]
    fn lambda_examples() {
        let e2 = libm::exp(2.0);
        let l = lambda_from_ranges(&[1.0], 2.0 / e2).unwrap();
        assert!((l[0] - 1.0).abs() < 1e-12);

        // log(2/delta) -> 0 as delta -> 2; evaluate the limit directly.
        let limit = sqrt(ln(2.0) / 2.0);
        assert!((limit - 0.58870).abs() < 1e-5);
        let l = lambda_from_ranges(&[1.0, 1.0], 1.0 - 1e-15).unwrap();
        assert!((l[0] - sqrt((ln(2.0) + ln(2.0)) / 2.0)).abs() < 1e-12);

        let l = lambda_from_ranges(&[0.0, 1.0], 0.05).unwrap();
        assert_eq!(l[0], 0.0);
        assert!(lambda_from_ranges(&[1.0], 0.0).is_err());
        assert!(lambda_from_ranges(&[1.0], 1.0).is_err());
    }

    #[test]
    fn theorem3_lambda_uses_unit_ranges() {
        let fm = two_class_map();
        let l = theorem3_lambda(&fm, 0.05).unwrap();
        let expected = sqrt((ln(6.0) + ln(40.0)) / 2.0);
        assert_eq!(l.len(), 6);
        assert!(l.iter().all(|v| (v - expected).abs() < 1e-12));
    }

    #[test]
    fn atoms_examples() {
        let fm = FeatureMap::new(2, 1, vec![Threshold { dim: 0, value: 0.5 }]).unwrap();
        let same = Dataset::from_rows(&[vec![0.0], vec![0.0], vec![0.0], vec![0.0]], vec![0, 1, 0, 1], 2).unwrap();
        let atoms = constraint_atoms(&fm, &same).unwrap();
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms.count(0), 4);

        let two = Dataset::from_rows(&[vec![0.0], vec![1.0]], vec![0, 1], 2).unwrap();
        assert_eq!(constraint_atoms(&fm, &two).unwrap().len(), 2);

        let rows: Vec<Vec<f64>> = (0..50).map(|i| vec![i as f64 / 10.0]).collect();
        let many = Dataset::from_rows(&rows, vec![0; 50], 2).unwrap();
        assert!(constraint_atoms(&fm, &many).unwrap().len() <= 2);
    }

    #[test]
    fn atoms_cover_every_instance() {
        let fm = two_class_map();
        let rows = vec![vec![0.0, -2.0], vec![1.0, 0.0], vec![0.2, 3.0], vec![0.0, -2.0]];
        let data = Dataset::from_rows(&rows, vec![0, 1, 1, 0], 2).unwrap();
        let atoms = constraint_atoms(&fm, &data).unwrap();
        assert_eq!(atoms.len(), 3);
        for x in &rows {
            let found = (0..atoms.len())
                .any(|j| (0..2).all(|y| atoms.vector(j, y) == fm.phi(x, y).unwrap().as_slice()));
            assert!(found);
        }
    }

    #[test]
    fn stump_separable() {
        let data = Dataset::from_rows(&[vec![0.0], vec![0.0], vec![1.0], vec![1.0]], vec![0, 0, 1, 1], 2).unwrap();
        let fm = fit_thresholds(&data, StumpSpec::new(2).unwrap()).unwrap();
        assert_eq!(fm.thresholds().len(), 1);
        let t = fm.thresholds()[0];
        assert_eq!(t.dim, 0);
        assert!(t.value >= 0.0 && t.value < 1.0);
    }

    #[test]
    fn stump_constant_and_mixed_columns() {
        let rows = vec![vec![3.0, 0.0], vec![3.0, 0.0], vec![3.0, 1.0], vec![3.0, 1.0]];
        let data = Dataset::from_rows(&rows, vec![0, 1, 0, 1], 2).unwrap();
        let fm = fit_thresholds(&data, StumpSpec::new(2).unwrap()).unwrap();
        assert!(fm.thresholds().is_empty());
        assert_eq!(fm.len(), 2);
    }

    #[test]
    fn stump_respects_leaf_budget() {
        let rows: Vec<Vec<f64>> = (0..40).map(|i| vec![i as f64]).collect();
        let labels = (0..40).map(|i| (i / 3) % 2).collect();
        let data = Dataset::from_rows(&rows, labels, 2).unwrap();
        for leaves in [2, 3, 5, 20] {
            let fm = fit_thresholds(&data, StumpSpec::new(leaves).unwrap()).unwrap();
            assert!(fm.thresholds().len() < leaves);
            assert_eq!(fm.len(), 2 * (fm.thresholds().len() + 1));
        }
        assert!(StumpSpec::new(1).is_err());
    }
}
