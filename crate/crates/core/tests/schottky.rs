use chtube::groups::schottky_example;
use chtube::Error;

#[test]
fn gap_shrinks_with_offset_at_fixed_length() {
    let offsets = [0.2, 0.1, 0.05, 0.025];
    let examples: Vec<_> = offsets.iter().map(|o| schottky_example(6.0, *o).unwrap()).collect();
    let gaps: Vec<f64> = examples.iter().map(|e| e.axis_gap).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    assert!(gaps[3] < 0.05 && gaps[3] > 0.0);
    for e in &examples {
        for t in e.translation_lengths {
            assert!((t - 6.0).abs() < 1e-9, "{t}");
        }
    }
}

#[test]
fn small_offset_gap_is_small() {
    let e = schottky_example(6.0, 0.1).unwrap();
    assert!(e.axis_gap > 0.0 && e.axis_gap < 0.11);
}

#[test]
fn short_translation_reports_sample() {
    match schottky_example(1.0, 3.0) {
        Err(Error::NeighborhoodConditionFailed { generator, sample }) => {
            assert!(generator < 2);
            let r2: f64 = sample.iter().map(|v| v * v).sum();
            assert!((r2 - 1.0).abs() < 1e-9);
        }
        other => panic!("{other:?}"),
    }
}
