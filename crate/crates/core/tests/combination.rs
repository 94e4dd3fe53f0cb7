use chtube::groups::{
    build_combination, combination_bisectors, combination_precondition, pingpong_check, regular_polygon_group,
    regular_polygon_inradius, verify_distance_realization, CFuchsianGroup, CombinationOptions,
};
use chtube::isometry::{axis_translation, line_rotation};
use chtube::lines::{line_distance, s_function};
use chtube::Error;

fn threshold() -> f64 {
    2.0 * s_function(regular_polygon_inradius(2).unwrap()).unwrap()
}

fn pair_at(distance: f64, rotation: f64) -> (CFuchsianGroup, CFuchsianGroup) {
    let g1 = regular_polygon_group(2).unwrap();
    let h = axis_translation((0.5 * distance).tanh()).unwrap().compose(&line_rotation(rotation));
    let g2 = g1.conjugate_by(&h);
    (g1, g2)
}

#[test]
fn optimal_tube_construction_certifies() {
    let (g1, g2) = pair_at(threshold() + 0.1, 0.0);
    let opts = CombinationOptions { seed: 7, ..CombinationOptions::default() };
    let c = build_combination(&g1, &g2, &opts).unwrap();
    let r = &c.report;
    assert!(r.precondition_satisfied);
    assert!((r.margin - 0.1).abs() < 1e-8, "margin {}", r.margin);
    assert_eq!(r.pingpong_samples_passed, r.pingpong_samples_total);
    assert_eq!(r.pingpong_samples_total, 10_000 * 16);
    assert!((r.min_distance_over_words - r.line_distance).abs() < 1e-9);
    assert!(r.distance_certificate && r.all_passed());
    assert_eq!(c.generators.len(), 8);
}

#[test]
fn rotated_placement_certifies() {
    let (g1, g2) = pair_at(threshold() + 0.3, 0.9);
    let opts = CombinationOptions { samples: 4000, word_depth: 3, seed: 1, ..CombinationOptions::default() };
    let c = build_combination(&g1, &g2, &opts).unwrap();
    assert!(c.report.all_passed(), "{:?}", c.report);
}

#[test]
fn below_threshold_control_fails() {
    let (g1, g2) = pair_at(2.0, 0.0);
    let pre = combination_precondition(&g1, &g2, 3).unwrap();
    assert!(!pre.ok && pre.margin < 0.0);
    assert!(matches!(
        build_combination(&g1, &g2, &CombinationOptions::default()),
        Err(Error::PreconditionFailed { margin }) if margin < 0.0
    ));
    let walls = combination_bisectors(&g1, &g2, &pre).unwrap();
    let counts = pingpong_check(&g1, &g2, &walls, 4000, 9);
    assert!(counts.passed < counts.total);
    assert!(!counts.failures.is_empty());
}

#[test]
fn margin_increases_with_distance() {
    let margins: Vec<f64> = [-0.4, -0.1, 0.0, 0.2, 1.0]
        .iter()
        .map(|e| {
            combination_precondition(&pair_at(threshold() + e, 0.0).0, &pair_at(threshold() + e, 0.0).1, 3)
                .unwrap()
                .margin
        })
        .collect();
    assert!(margins.windows(2).all(|w| w[0] < w[1]), "{margins:?}");
}

#[test]
fn distance_minimum_across_depths() {
    let (g1, g2) = pair_at(threshold() + 0.1, 0.2);
    let d = line_distance(g1.line(), g2.line()).unwrap();
    let minima: Vec<f64> = (1..=4).map(|k| verify_distance_realization(&g1, &g2, k).unwrap()).collect();
    assert!(minima.windows(2).all(|w| w[1] <= w[0]));
    assert!(minima.iter().all(|m| *m >= d - 1e-9 && *m <= d + 1e-9), "{minima:?} vs {d}");
    for gamma in g2.generators() {
        assert!(line_distance(g1.line(), &gamma.apply_line(g2.line())).unwrap() >= d - 1e-9);
    }
}

#[test]
fn pingpong_is_seed_deterministic() {
    let (g1, g2) = pair_at(threshold() + 0.1, 0.0);
    let pre = combination_precondition(&g1, &g2, 3).unwrap();
    let walls = combination_bisectors(&g1, &g2, &pre).unwrap();
    let a = pingpong_check(&g1, &g2, &walls, 3000, 42);
    let b = pingpong_check(&g1, &g2, &walls, 3000, 42);
    assert_eq!(a, b);
}

#[test]
fn word_budget_is_enforced() {
    let (g1, g2) = pair_at(threshold() + 0.1, 0.0);
    assert!(matches!(verify_distance_realization(&g1, &g2, 6), Err(Error::DepthTooLarge { .. })));
}
