use std::f64::consts::{PI, TAU};

use chtube::lines::s_function;
use chtube::measure::{
    disc_area, half_projection_disc_area, mc_wedge_volume, tube_volume, volume_density, wedge_volume, WedgeParams,
};
use chtube::sampling::rng_for;
use rand::Rng;

use super::{max_nan, min_nan, Check, Part};

pub const PARTS: &[Part] =
    &[("monte_carlo", monte_carlo), ("convergence", convergence), ("closed_forms", closed_forms)];

pub const MC_SAMPLES: usize = 10_000_000;

/// `(s, eps, psi)` triples checked against the closed form.
pub const TRIPLES: [(f64, f64, f64); 5] =
    [(1.0, 1.0, PI), (0.5, 0.3, TAU), (2.0, 0.5, 1.0), (0.3, 2.0, 4.0), (1.5, 1.5, 0.5)];

fn monte_carlo(seed: u64) -> Vec<Check> {
    let (mut z, mut rel) = (0.0f64, 0.0f64);
    for (k, (s, eps, psi)) in TRIPLES.into_iter().enumerate() {
        let w = WedgeParams::new(s, eps, psi).unwrap();
        let est = mc_wedge_volume(&w, MC_SAMPLES, seed.wrapping_add(k as u64)).unwrap();
        z = max_nan(z, (est.estimate - wedge_volume(&w)).abs() / est.std_error);
        rel = max_nan(rel, est.std_error / est.estimate);
    }
    let n = (TRIPLES.len() * MC_SAMPLES) as u64;
    vec![
        Check::at_most("wedge_z_score", "|MC - psi (cosh^4(eps/2) - 1) 4 pi sinh^2(s/2)| / se", n, z, 3.0),
        Check::at_most("wedge_relative_error", "se / MC", n, rel, 0.01),
    ]
}

fn convergence(seed: u64) -> Vec<Check> {
    let w = WedgeParams::new(1.0, 1.0, PI).unwrap();
    let small = mc_wedge_volume(&w, 100_000, seed).unwrap();
    let large = mc_wedge_volume(&w, MC_SAMPLES, seed).unwrap();
    let ratio = small.std_error / large.std_error;
    // Predicted ratio sqrt(100) = 10; allow a factor 1.5 either way.
    let off = (ratio / 10.0).max(10.0 / ratio);
    vec![Check::at_most("se_scaling", "se(10^5) / se(10^7) = 10", 2, off, 1.5)]
}

fn closed_forms(seed: u64) -> Vec<Check> {
    let grid = 796u64;
    let mut half = 0.0f64;
    for i in 0..grid {
        let d = 0.05 + 0.01 * i as f64;
        let a = disc_area(0.5 * s_function(d).unwrap()).unwrap();
        half = max_nan(half, (a - half_projection_disc_area(d).unwrap()).abs());
    }
    let mut rng = rng_for(seed, 0x400);
    let n = 10_000u64;
    let (mut full, mut monotone, mut density) = (0.0f64, true, f64::INFINITY);
    for _ in 0..n {
        let s: f64 = rng.random_range(0.01..5.0);
        let eps: f64 = rng.random_range(0.01..5.0);
        let psi: f64 = rng.random_range(0.01..TAU);
        let w = WedgeParams::new(s, eps, TAU).unwrap();
        let t = tube_volume(disc_area(s).unwrap(), eps).unwrap();
        full = max_nan(full, (wedge_volume(&w) - t).abs() / t);
        let base = wedge_volume(&WedgeParams::new(s, eps, psi).unwrap());
        let bumped = [
            WedgeParams::new(s * 1.01, eps, psi),
            WedgeParams::new(s, eps * 1.01, psi),
            WedgeParams::new(s, eps, (psi * 1.01).min(TAU)),
        ];
        monotone &= bumped.iter().all(|b| wedge_volume(b.as_ref().unwrap()) >= base);
        let z2: f64 = rng.random_range(0.0..1.0);
        let z1: f64 = rng.random_range(0.0..1.0 - z2);
        density = min_nan(density, volume_density(z1, z2));
    }
    vec![
        Check::at_most("half_disc_area", "4 pi sinh^2(s(d)/4) = 4 pi / (e^d - 1)", grid, half, 1e-11),
        Check::at_most("full_wedge", "W(s, eps, 2 pi) = 2 pi (cosh^4(eps/2) - 1) Area(D_s)", n, full, 1e-14),
        Check::holds("monotone", "wedge volume increasing in s, eps, psi", n, monotone),
        Check::at_least("density_positive", "16 / (1 - |z1|^2 - |z2|^2)^3 > 0", n, density, f64::MIN_POSITIVE),
    ]
}
