//! Seeded random sources and samplers for points, directions and isometries.
//!
//! Every stream is a ChaCha8 generator keyed by `(seed, stream)`, so work
//! split into shards reproduces the same numbers regardless of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::isometry::{axis_translation, line_rotation, normalized_loxodromic, Isometry};
use crate::vector::{BallPoint, C64};

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point of the unit sphere `S^3` in `C^2` (Marsaglia's method).
pub fn random_sphere_direction<R: Rng + ?Sized>(rng: &mut R) -> (C64, C64) {
    let (x1, y1, s1) = loop {
        let (x, y): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let s = x * x + y * y;
        if s < 1.0 {
            break (x, y, s);
        }
    };
    let (x2, y2, s2) = loop {
        let (x, y): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let s = x * x + y * y;
        if s < 1.0 && s > 0.0 {
            break (x, y, s);
        }
    };
    let k = ((1.0 - s1) / s2).sqrt();
    (C64::new(x1, y1), C64::new(x2 * k, y2 * k))
}

/// Uniform direction from the origin at a hyperbolic distance drawn
/// uniformly from `[0, max_distance]`.
pub fn random_ball_point<R: Rng + ?Sized>(rng: &mut R, max_distance: f64) -> BallPoint {
    let (a, b) = random_sphere_direction(rng);
    let r = (0.5 * rng.random_range(0.0..max_distance)).tanh();
    BallPoint::new(a * r, b * r).expect("radius below one")
}

pub fn random_unit_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// A random isometry, built as `g_{w1}^{a} f_x R_b g_{w2}^{c}`; the product
/// covers all of `PU(2,1)` and has moderate entries.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R) -> Isometry {
    let lox = |rng: &mut R| {
        let w = random_unit_complex(rng) * rng.random_range(0.0..0.8);
        normalized_loxodromic(w, rng.random_range(-3.1..3.1)).expect("|w| < 1")
    };
    let a = lox(rng);
    let f = axis_translation(rng.random_range(0.01..0.8)).expect("x in (0,1)");
    let r = line_rotation(rng.random_range(0.0..std::f64::consts::TAU));
    let b = lox(rng);
    a.compose(&f).compose(&r).compose(&b)
}
