mod common;

use common::*;
use mrc_core::dual::{train_mrc, SolverConfig};
use mrc_core::entropy::closed_form_entropy;
use mrc_core::features::estimate_expectations;
use mrc_core::oracle::{brute_force_max_entropy, exhaustive_minimax};
use mrc_core::{ExplicitDistribution, LossKind};
use proptest::prelude::*;

fn table(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, n).prop_filter_map("positive mass", |v| {
        let total: f64 = v.iter().sum();
        (total > 1e-3).then(|| v.iter().map(|x| x / total).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn entropies_are_concave(p in table(6), q in table(6), t in 0.0f64..1.0) {
        let p = ExplicitDistribution::from_table(3, 2, p).unwrap();
        let q = ExplicitDistribution::from_table(3, 2, q).unwrap();
        let mix = p.mix(&q, t).unwrap();
        for loss in [LossKind::ZeroOne, LossKind::Log, LossKind::alpha(0.5).unwrap(), LossKind::alpha(3.0).unwrap()] {
            let lhs = closed_form_entropy(&loss, &mix).unwrap();
            let rhs = t * closed_form_entropy(&loss, &p).unwrap() + (1.0 - t) * closed_form_entropy(&loss, &q).unwrap();
            prop_assert!(lhs >= rhs - 1e-12);
        }
    }
}

/// The dual optimum matches the gridded primal maximum up to grid slack.
/// Boxes have interior so the slackened grid stays close to the true set.
#[test]
fn primal_dual_sandwich() {
    let fm = three_point_map(2);
    let inst = three_point_instance(&fm);
    let step = 0.02;
    let slack = 4.0 * step;
    let fixtures = [
        (vec![(0.0, 0), (0.0, 1), (1.0, 1), (2.0, 0), (2.0, 1)], 0.2),
        (vec![(0.0, 0), (1.0, 0), (2.0, 1), (2.0, 1)], 0.5),
        (vec![(0.0, 1), (1.0, 0), (1.0, 1), (2.0, 0)], 0.1),
    ];
    for (rows, lambda) in fixtures {
        let data = dataset(&rows, 2);
        let (bx, atoms) = setup(&fm, &data, lambda);
        for loss in [LossKind::ZeroOne, LossKind::Log, LossKind::alpha(2.0).unwrap()] {
            let dual = train_mrc(loss.clone(), &bx, &atoms, &SolverConfig::default()).unwrap().objective_value;
            let primal = brute_force_max_entropy(&loss, &inst, &bx, None, step).unwrap().value;
            assert!(dual >= primal - slack && dual <= primal + slack, "{}: dual {dual} primal {primal}", loss.name());
        }
    }
}

#[test]
fn zero_one_sandwich_with_a_point_box() {
    let fm = three_point_map(2);
    let inst = three_point_instance(&fm);
    let data = dataset(&[(0.0, 1), (1.0, 0), (1.0, 1), (2.0, 0)], 2);
    let (bx, atoms) = setup(&fm, &data, 0.0);
    let dual = mrc_core::dual::train_zero_one_exact(&bx, &atoms, &SolverConfig::default()).unwrap().objective_value;
    let primal = brute_force_max_entropy(&LossKind::ZeroOne, &inst, &bx, None, 0.02).unwrap().value;
    assert!((dual - 0.25).abs() < 1e-9);
    assert!(primal >= dual - 1e-12 && primal <= dual + 0.08);
}

#[test]
fn oracle_grows_with_the_box() {
    let fm = three_point_map(2);
    let inst = three_point_instance(&fm);
    let data = dataset(&[(0.0, 0), (0.0, 0), (1.0, 1), (2.0, 1), (2.0, 0)], 2);
    let mut previous = f64::NEG_INFINITY;
    for lambda in [0.0, 0.1, 0.3, 0.8, 2.0] {
        let bx = estimate_expectations(&fm, &data, &vec![lambda; fm.len()]).unwrap();
        let value = brute_force_max_entropy(&LossKind::ZeroOne, &inst, &bx, None, 0.05).unwrap().value;
        assert!(value >= previous, "{value} < {previous}");
        previous = value;
    }
}

#[test]
fn minimax_equals_max_entropy_on_grid() {
    let fm = mrc_core::FeatureMap::new(2, 1, vec![mrc_core::Threshold { dim: 0, value: 0.5 }]).unwrap();
    let inst = mrc_core::oracle::TinyInstance::from_feature_map(&fm, &[vec![0.0], vec![1.0]]).unwrap();
    let data = dataset(&[(0.0, 0), (0.0, 0), (0.0, 1), (1.0, 1), (1.0, 0)], 2);
    let bx = estimate_expectations(&fm, &data, &vec![0.2; fm.len()]).unwrap();
    let (rule_step, dist_step) = (0.05, 0.05);
    let mm = exhaustive_minimax(&LossKind::ZeroOne, &inst, &bx, rule_step, dist_step).unwrap();
    let h = brute_force_max_entropy(&LossKind::ZeroOne, &inst, &bx, None, dist_step).unwrap().value;
    assert!((mm - h).abs() <= 2.0 * (rule_step + dist_step), "{mm} vs {h}");
}
