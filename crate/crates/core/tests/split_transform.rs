mod common;

use common::*;
use ldp_hist::protocols::output_matrix;
use ldp_hist::prelude::*;

#[test]
fn two_repetitions_enumerated() {
    let eps = 1.8;
    let k = 3;
    let split = Split::build(SplitConfig::new(eps, None).unwrap(), |e| Krr::new(k, e)).unwrap();
    assert_eq!(split.config().repetitions(), 2);
    assert_eq!(split.message_space_size(), Some(9));

    let base = split.base();
    for x in 0..k {
        let joint = split.output_distribution(x).unwrap();
        let single = base.output_distribution(x).unwrap();
        for i in 0..9 {
            let msg = split.message(i);
            let a = base.message(i % 3);
            let b = base.message(i / 3);
            assert_eq!(msg, vec![a, b]);
            assert!((joint[i] - single[i % 3] * single[i / 3]).abs() < 1e-15);
        }
        let want: Vec<f64> = (0..k).map(|j| if j == x { 1.0 } else { 0.0 }).collect();
        assert!(max_abs_diff(&single_user_expectation(&split, x), &want) < 1e-12);
    }
}

#[test]
fn composed_budget_is_respected() {
    for eps in [1.5, 3.0, 4.5] {
        let split = Split::build(SplitConfig::new(eps, Some(3)).unwrap(), |e| Rappor::new(3, e)).unwrap();
        let direct = output_matrix(&split).unwrap();
        let composed = output_matrix(split.base()).unwrap().power(split.config().repetitions()).unwrap();
        assert_eq!(direct.rows(), composed.rows());
        for x in 0..3 {
            assert!(max_abs_diff(direct.column(x), composed.column(x)) < 1e-15);
        }
        let ratio = direct.max_privacy_ratio();
        assert!(ratio <= eps.exp() * (1.0 + 1e-9), "eps = {eps}: {ratio}");
        let per_use = split.config().per_use_epsilon();
        assert!(output_matrix(split.base()).unwrap().max_privacy_ratio() <= per_use.exp() * (1.0 + 1e-9));
    }
}

#[test]
fn flat_layout_counts_pseudo_users() {
    let split = Split::build(SplitConfig::new(3.0, None).unwrap(), |e| Krr::new(4, e)).unwrap();
    let data = Dataset::new(vec![0, 1, 2, 3, 0, 0], 4).unwrap();
    let mut stream = SeedSpec::new(4, 0).stream();
    let nested: Vec<_> = data.items().iter().map(|&x| split.randomize(x, &mut stream)).collect();
    let flat: Vec<_> = nested.iter().flatten().cloned().collect();
    assert_eq!(flat.len(), 18);
    assert_eq!(split.aggregate(&nested).unwrap(), split.aggregate_flat(&flat, 6).unwrap());
    assert!(split.aggregate_flat(&flat[..17], 6).is_err());
}
