#![allow(dead_code)]

use mrc_core::features::{constraint_atoms, estimate_expectations, Threshold};
use mrc_core::oracle::TinyInstance;
use mrc_core::{ConstraintAtoms, Dataset, ExpectationBox, FeatureMap};
use proptest::prelude::*;

/// 1-D instances on `{0, 1, 2}` with thresholds between consecutive points.
pub fn three_point_map(num_classes: usize) -> FeatureMap {
    FeatureMap::new(
        num_classes,
        1,
        vec![Threshold { dim: 0, value: 0.5 }, Threshold { dim: 0, value: 1.5 }],
    )
    .unwrap()
}

pub fn three_point_instance(fm: &FeatureMap) -> TinyInstance {
    TinyInstance::from_feature_map(fm, &[vec![0.0], vec![1.0], vec![2.0]]).unwrap()
}

pub fn dataset(rows: &[(f64, usize)], num_classes: usize) -> Dataset {
    let xs: Vec<Vec<f64>> = rows.iter().map(|r| vec![r.0]).collect();
    Dataset::from_rows(&xs, rows.iter().map(|r| r.1).collect(), num_classes).unwrap()
}

pub fn setup(fm: &FeatureMap, data: &Dataset, lambda: f64) -> (ExpectationBox, ConstraintAtoms) {
    let bx = estimate_expectations(fm, data, &vec![lambda; fm.len()]).unwrap();
    let atoms = constraint_atoms(fm, data).unwrap();
    (bx, atoms)
}

/// Samples over `{0, 1, 2}` covering every point at least once.
pub fn covering_rows(num_classes: usize) -> impl Strategy<Value = Vec<(f64, usize)>> {
    prop::collection::vec((0usize..3, 0..num_classes), 3..12).prop_map(|mut rows| {
        for (x, row) in rows.iter_mut().take(3).enumerate() {
            row.0 = x;
        }
        rows.into_iter().map(|(x, y)| (x as f64, y)).collect()
    })
}

/// Random atoms with entries in `[-1, 1]`.
pub fn random_atoms(num_classes: usize, m: usize, max_groups: usize) -> impl Strategy<Value = ConstraintAtoms> {
    prop::collection::vec(
        prop::collection::vec(prop::collection::vec(-1.0f64..1.0, m), num_classes),
        1..=max_groups,
    )
    .prop_map(move |groups| ConstraintAtoms::from_groups(num_classes, m, &groups).unwrap())
}

/// A random box around a random center.
pub fn random_box(m: usize) -> impl Strategy<Value = ExpectationBox> {
    (
        prop::collection::vec(-1.0f64..1.0, m),
        prop::collection::vec(0.0f64..2.0, m),
        1usize..400,
    )
        .prop_map(|(tau, lambda, n)| ExpectationBox::new(tau, lambda, n).unwrap())
}

pub fn vector(m: usize, scale: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-scale..scale, m)
}
