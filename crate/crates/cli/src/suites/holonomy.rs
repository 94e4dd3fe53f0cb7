use std::f64::consts::PI;

use chtube::isometry::{
    holonomy_of, loxodromic_n_closed_form, normalized_loxodromic, reduce_stabilizer_element, trivial_holonomy_threshold,
};
use chtube::lines::{n_invariant, s_function};
use chtube::sampling::{random_isometry, random_unit_complex, rng_for};
use chtube::tubes::holonomy_cos_bound;
use chtube::{ComplexLine, HVector, C64};
use rand::Rng;

use super::{max_nan, min_nan, Check, Part};

pub const PARTS: &[Part] = &[
    ("displacement", displacement),
    ("trivial_threshold", trivial_threshold),
    ("angle", angle),
    ("homomorphism", homomorphism),
];

const SAMPLES: u64 = 100_000;

fn second_line(x: f64) -> ComplexLine {
    ComplexLine::from_polar(&HVector::real(1.0 / x, 0.0, 1.0).unwrap()).unwrap()
}

fn n_after(x: f64, w: C64, psi: f64) -> f64 {
    let l2 = second_line(x);
    n_invariant(&l2, &normalized_loxodromic(w, psi).unwrap().apply_line(&l2))
}

fn displacement(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x300);
    let (mut identity, mut least_n) = (0.0f64, f64::INFINITY);
    let mut nontrivial = 0u64;
    for _ in 0..SAMPLES {
        let x: f64 = rng.random_range(1e-3..1.0);
        let r: f64 = rng.random_range(1e-9..1.0);
        let psi: f64 = rng.random_range(-PI..PI);
        let n = n_after(x, random_unit_complex(&mut rng) * r, psi);
        let closed = loxodromic_n_closed_form(x, r, psi);
        identity = max_nan(identity, (n - closed).abs() / closed.max(1.0));
        if psi.abs() >= 1e-3 {
            nontrivial += 1;
            least_n = min_nan(least_n, n);
        }
    }
    vec![
        Check::at_most(
            "n_identity",
            "N(L2, g L2) = [(1-r^2) - x^2 sqrt(1-r^2)(e^{-i psi} + e^{i psi}) + x^4] / [(1-x^2)^2 (1-r^2)]",
            SAMPLES,
            identity,
            1e-9,
        ),
        // Disjointness claimed for every loxodromic with non-trivial holonomy.
        Check::at_least(
            "nontrivial_disjoint",
            "N(L2, g L2) > 1 when psi != 0",
            nontrivial,
            least_n - 1.0,
            f64::MIN_POSITIVE,
        ),
    ]
}

fn trivial_threshold(_seed: u64) -> Vec<Check> {
    let n = 100u64;
    let (mut r_err, mut reach_err) = (0.0f64, 0.0f64);
    let grid: Vec<f64> = (1..1200).map(|i| (0.025 * i as f64).tanh()).collect();
    for k in 1..=n {
        let x = k as f64 / (n + 1) as f64;
        let f = |r: f64| n_after(x, C64::new(r, 0.0), 0.0) - 1.0;
        let Some(i) = grid.windows(2).position(|w| f(w[0]) < 0.0 && f(w[1]) >= 0.0) else {
            r_err = f64::INFINITY;
            continue;
        };
        let (mut lo, mut hi) = (grid[i], grid[i + 1]);
        while hi - lo > 1e-15 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r_star = trivial_holonomy_threshold(x);
        r_err = max_nan(r_err, (0.5 * (lo + hi) - r_star).abs());
        let d = 2.0 * x.atanh();
        // 1 - r* = (1 - sqrt(1-x^2))^2 / (2 - x^2), kept free of cancellation since r* -> 1 as x -> 0.
        let gap = (x * x / (1.0 + (1.0 - x * x).sqrt())).powi(2) / (2.0 - x * x);
        let reach = ((2.0 - gap) / gap).ln();
        reach_err = max_nan(reach_err, (reach - 2.0 * s_function(d).unwrap()).abs() / reach);
    }
    vec![
        Check::at_most("threshold", "N(L2, g_r^0 L2) = 1 at r* = 2 sqrt(1-x^2)/(2-x^2)", n, r_err, 1e-9),
        Check::at_most("threshold_reach", "rho(0, (0, r*)) = 2 s(d)", n, reach_err, 1e-9),
    ]
}

fn angle(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x301);
    let mut admissible = 0u64;
    let mut worst = f64::NEG_INFINITY;
    while admissible < SAMPLES {
        let d: f64 = rng.random_range(0.01..8.0);
        let x = (0.5 * d).tanh();
        let l = rng.random_range(0.0..s_function(d).unwrap());
        let psi: f64 = rng.random_range(-PI..PI);
        let n = n_after(x, random_unit_complex(&mut rng) * (0.5 * l).tanh(), psi);
        // Admissible: the image of L2 is at least as far from L2 as L1 is.
        if n < (0.5 * d).cosh().powi(2) {
            continue;
        }
        admissible += 1;
        worst = max_nan(worst, psi.cos() - holonomy_cos_bound(d).unwrap());
    }
    vec![Check::at_most(
        "angle_bound",
        "cos psi <= (1 + tanh(d/2))/2 when g(0) in Pi_L1(L2) and rho(L2, g L2) >= d",
        admissible,
        worst,
        1e-12,
    )]
}

fn homomorphism(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x302);
    let n = 10_000u64;
    let (mut class, mut reduced, mut lox) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let h = random_isometry(&mut rng);
        let line = h.apply_line(&ComplexLine::coordinate_z2());
        let make = |rng: &mut rand_chacha::ChaCha8Rng| {
            let w = random_unit_complex(rng) * rng.random_range(0.0..0.9);
            let psi = rng.random_range(-PI..PI);
            (normalized_loxodromic(w, psi).unwrap().conjugate_by(&h), psi)
        };
        let (f, _) = make(&mut rng);
        let (g, psi) = make(&mut rng);
        let a = holonomy_of(&f.compose(&g), &line).unwrap();
        let b = holonomy_of(&g.compose(&f), &line).unwrap();
        class = max_nan(class, a.circle_distance(b.value()));
        lox = max_nan(lox, holonomy_of(&g, &line).unwrap().circle_distance(psi));

        let x: f64 = rng.random_range(0.1..0.9);
        let l2 = h.apply_line(&second_line(x));
        let gamma = f.compose(&g);
        let red = reduce_stabilizer_element(&gamma, &line, &l2).unwrap();
        let na = n_invariant(&l2, &gamma.apply_line(&l2));
        let nb = n_invariant(&l2, &red.apply_line(&l2));
        reduced = max_nan(reduced, (na - nb).abs() / na.max(1.0));
    }
    vec![
        Check::at_most("loxodromic_holonomy", "hol(g_w^psi) = psi", n, lox, 1e-9),
        Check::at_most("class_function", "hol(fg) = hol(gf)", n, class, 1e-10),
        Check::at_most("reduction", "N(L2, gamma L2) = N(L2, g L2) for the reduced g", n, reduced, 1e-10),
    ]
}
