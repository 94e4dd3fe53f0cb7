use std::collections::BTreeMap;
use std::f64::consts::PI;

use chtube::measure::tube_volume;
use chtube::tubes::{
    case_split_minimum, collar_width_area, collar_width_chi, critical_distance, eigenvalue_bound_explicit,
    eigenvalue_bound_general, gauss_bonnet_area, tube_function_bounds, two_surface_width, two_surface_width_chi,
    volume_lower_bound, volume_lower_bound_area,
};

use super::{max_nan, min_nan, Check, Part};

pub const PARTS: &[Part] = &[("golden", golden), ("forms", forms), ("asymptotics", asymptotics), ("grids", grids)];

/// Offline high-precision values of the bound calculators.
pub const GOLDEN_JSON: &str = include_str!("../../../core/golden/golden.json");

pub fn golden_values() -> BTreeMap<String, f64> {
    let raw: BTreeMap<String, String> = serde_json::from_str(GOLDEN_JSON).expect("golden file parses");
    raw.into_iter().map(|(k, v)| (k, v.parse().expect("decimal"))).collect()
}

/// Relative agreement needed for 12 significant digits.
pub const TWELVE_DIGITS: f64 = 5e-12;

fn golden(_seed: u64) -> Vec<Check> {
    let g = golden_values();
    let bounds = tube_function_bounds(-2).unwrap();
    let cases = [
        ("collar_width_chi_m2", "c(chi) = (1/4) log(1/(pi |chi|) + 1), chi = -2", collar_width_chi(-2).unwrap()),
        (
            "volume_lower_bound_1_m2",
            "4 pi^2 n |chi| [cosh^4((1/16) log(1/(pi |chi|) + 1)) - 1], n = 1, chi = -2",
            volume_lower_bound(1, -2).unwrap(),
        ),
        (
            "eigenvalue_bound_explicit_100_m2",
            "64 pi^2 |chi| [cosh^4(l/8) - 1] / (l^2 (vol - 4 pi^2 |chi| [cosh^4(l/8) - 1])), vol = 100, chi = -2",
            eigenvalue_bound_explicit(100.0, -2).unwrap(),
        ),
        ("tube_bounds_m2_lower", "lower = (1/4) log(1/(pi |chi|) + 1), chi = -2", bounds.lower),
        ("tube_bounds_m2_upper", "upper = s(acosh(cot((pi/2)/(|chi| + 2)))), chi = -2", bounds.upper),
    ];
    cases
        .iter()
        .map(|(key, statement, got)| {
            let want = g[*key];
            Check::at_most(key, statement, 1, ((got - want) / want).abs(), TWELVE_DIGITS)
        })
        .collect()
}

fn forms(_seed: u64) -> Vec<Check> {
    let (mut collar, mut volume, mut two, mut eig) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for chi in -20i64..=-2 {
        let a = gauss_bonnet_area(chi).unwrap();
        collar = max_nan(collar, (collar_width_area(a).unwrap() - collar_width_chi(chi).unwrap()).abs());
        let v = volume_lower_bound(1, chi).unwrap();
        volume = max_nan(volume, (volume_lower_bound_area(1, a).unwrap() - v).abs() / v);
        for chi2 in -20i64..=-2 {
            let b = gauss_bonnet_area(chi2).unwrap();
            two = max_nan(two, (two_surface_width(a, b).unwrap() - two_surface_width_chi(chi, chi2).unwrap()).abs());
        }
        if chi >= -10 {
            let c = collar_width_chi(chi).unwrap();
            let general = eigenvalue_bound_general(100.0, tube_volume(a, c).unwrap(), c).unwrap();
            let explicit = eigenvalue_bound_explicit(100.0, chi).unwrap();
            eig = max_nan(eig, (general - explicit).abs() / explicit);
        }
    }
    vec![
        Check::at_most("collar_forms", "c(A) = c(chi) at A = 2 pi |chi|", 19, collar, 1e-12),
        Check::at_most("volume_forms", "A-form = chi-form of the volume lower bound", 19, volume, 1e-12),
        Check::at_most(
            "two_surface_forms",
            "(1/8) log(2/max A + 1) = (1/8) log(1/(pi max |chi|) + 1)",
            361,
            two,
            1e-12,
        ),
        Check::at_most(
            "eigenvalue_forms",
            "explicit bound = vol_N / (c^2 (vol_X - vol_N)) with c = c(chi)",
            9,
            eig,
            1e-12,
        ),
    ]
}

/// Scaled bounds at `|chi|`: `lower 4 pi |chi|` and `upper sqrt|chi| / (2 sqrt pi)`.
pub fn scaled_bounds(abs_chi: i64) -> (f64, f64) {
    let b = tube_function_bounds(-abs_chi).unwrap();
    let c = abs_chi as f64;
    (b.lower * 4.0 * PI * c, b.upper * c.sqrt() / (2.0 * PI.sqrt()))
}

fn asymptotics(_seed: u64) -> Vec<Check> {
    let (lo6, up6) = scaled_bounds(1_000_000);
    let (_, up3) = scaled_bounds(1_000);
    vec![
        Check::at_least("lower_scaled_min", "lower 4 pi |chi| >= 0.95 at |chi| = 10^6", 1, lo6, 0.95),
        Check::at_most("lower_scaled_max", "lower 4 pi |chi| <= 1 at |chi| = 10^6", 1, lo6, 1.0),
        Check::at_most(
            "upper_scaled",
            "|upper sqrt|chi| / (2 sqrt pi) - 1| <= 0.05 at |chi| = 10^6",
            1,
            (up6 - 1.0).abs(),
            0.05,
        ),
        Check::at_most(
            "upper_scaled_1e3",
            "|upper sqrt|chi| / (2 sqrt pi) - 1| <= 0.05 at |chi| = 10^3",
            1,
            (up3 - 1.0).abs(),
            0.05,
        ),
    ]
}

fn grids(_seed: u64) -> Vec<Check> {
    let n = 601u64;
    let (mut split, mut critical) = (0.0f64, 0.0f64);
    for i in 0..n {
        let a = 10f64.powf(-3.0 + 6.0 * i as f64 / (n - 1) as f64);
        let half = 0.5 * (2.0 / a).ln_1p();
        split = max_nan(split, (case_split_minimum(a).unwrap() - half).abs());
        critical = max_nan(critical, (critical_distance(a).unwrap() - half).abs());
    }
    let mut decreasing = true;
    let mut lower_gap = f64::INFINITY;
    for k in 1..=200i64 {
        let chi = -2 * k;
        decreasing &= collar_width_chi(chi).unwrap() > collar_width_chi(chi - 2).unwrap();
        decreasing &= volume_lower_bound(2, chi).unwrap() > volume_lower_bound(1, chi).unwrap();
        let b = tube_function_bounds(chi).unwrap();
        lower_gap = min_nan(lower_gap, b.upper - b.lower);
    }
    vec![
        Check::at_most("case_split", "min{log(pi/A + 1), (1/2) log(2/A + 1)} = (1/2) log(2/A + 1)", n, split, 1e-15),
        Check::at_most(
            "critical_distance",
            "1 - (1 + tanh(d/2))/2 = (A/2)(e^d - 1) at d = (1/2) log(2/A + 1)",
            n,
            critical,
            1e-9,
        ),
        Check::holds("monotone", "widths decrease in |chi|, volume bound increases in n", 200, decreasing),
        Check::at_least("bounds_ordered", "lower < upper", 200, lower_gap, f64::MIN_POSITIVE),
    ]
}
