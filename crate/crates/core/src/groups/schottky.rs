use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isometry::{normalized_loxodromic, signed_axis_translation, Isometry};
use crate::lines::bergman_distance;
use crate::sampling::{random_sphere_direction, rng_for};
use crate::vector::{BallPoint, BoundaryPoint, C64};

const SCHOTTKY_SAMPLES: usize = 20_000;
const SCHOTTKY_SEED: u64 = 0x5C07;

/// A two-generator loxodromic Schottky group with sampled neighborhood
/// certificate.
#[derive(Clone, Debug)]
pub struct SchottkyExample {
    pub generators: [Isometry; 2],
    /// Attracting and repelling fixed points of each generator.
    pub fixed_points: [[BoundaryPoint; 2]; 2],
    pub translation_lengths: [f64; 2],
    /// Distance between the two axes.
    pub axis_gap: f64,
    /// Chord radius of the four caps on the sphere.
    pub cap_radius: f64,
    pub samples_checked: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SchottkySummary {
    pub translation_lengths: [f64; 2],
    pub axis_gap: f64,
    pub cap_radius: f64,
    pub samples_checked: usize,
}

impl SchottkyExample {
    pub fn summary(&self) -> SchottkySummary {
        SchottkySummary {
            translation_lengths: self.translation_lengths,
            axis_gap: self.axis_gap,
            cap_radius: self.cap_radius,
            samples_checked: self.samples_checked,
        }
    }
}

fn boundary_image(g: &Isometry, p: (C64, C64)) -> (C64, C64) {
    let v = g.apply_raw(&Vector3::new(p.0, p.1, C64::new(1.0, 0.0)));
    (v[0] / v[2], v[1] / v[2])
}

fn chord(p: (C64, C64), q: (C64, C64)) -> f64 {
    ((p.0 - q.0).norm_sqr() + (p.1 - q.1).norm_sqr()).sqrt()
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let (a, b) = (hi - r * (hi - lo), lo + r * (hi - lo));
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    0.5 * (lo + hi)
}

/// Distance between the geodesics `t -> g1(tanh(t/2), 0)` and
/// `t -> g2(0, tanh(t/2))`, by grid search and alternating refinement.
fn axis_gap(g1: &Isometry, g2: &Isometry) -> f64 {
    let a = |s: f64| g1.apply_point(&BallPoint::real((0.5 * s).tanh(), 0.0).unwrap());
    let b = |t: f64| g2.apply_point(&BallPoint::real(0.0, (0.5 * t).tanh()).unwrap());
    let grid: Vec<f64> = (0..=64).map(|k| -8.0 + 0.25 * k as f64).collect();
    let (mut s, mut t, mut best) = (0.0, 0.0, f64::INFINITY);
    for &si in &grid {
        for &tj in &grid {
            let d = bergman_distance(&a(si), &b(tj));
            if d < best {
                (s, t, best) = (si, tj, d);
            }
        }
    }
    for _ in 0..20 {
        s = golden_min(|u| bergman_distance(&a(u), &b(t)), s - 0.5, s + 0.5);
        t = golden_min(|u| bergman_distance(&a(s), &b(u)), t - 0.5, t + 0.5);
    }
    bergman_distance(&a(s), &b(t)).min(best)
}

/// Two loxodromics translating by `translation_length` along axes at
/// distance `axis_offset`: the first along the real axis of `{(z,0)}`, the
/// second along a line perpendicular to `{(z,0)}` pushed off along the
/// imaginary axis.
///
/// Caps of chord radius `0.45` times the least separation of the four
/// fixed points are placed around them, and seeded samples of the sphere
/// check that each generator maps the complement of its repelling cap into
/// its attracting cap (and the inverse the other way).
pub fn schottky_example(translation_length: f64, axis_offset: f64) -> Result<SchottkyExample> {
    if !(translation_length > 0.0) || !translation_length.is_finite() {
        return Err(Error::NonPositiveDistance(translation_length));
    }
    if !axis_offset.is_finite() {
        return Err(Error::ParameterOutOfRange { name: "axis_offset", value: axis_offset });
    }
    let x = (0.5 * translation_length).tanh();
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let turn = Isometry::from_unitary(Matrix3::from_diagonal(&Vector3::new(C64::new(0.0, 1.0), one, one)))?;
    let h = signed_axis_translation((0.5 * axis_offset).tanh()).conjugate_by(&turn);
    let g1 = signed_axis_translation(x);
    let g2 = normalized_loxodromic(C64::new(x, 0.0), 0.0)?.conjugate_by(&h);

    let fixed1 = [(one, zero), (-one, zero)];
    let fixed2 = [boundary_image(&h, (zero, one)), boundary_image(&h, (zero, -one))];
    let all = [fixed1[0], fixed1[1], fixed2[0], fixed2[1]];
    let mut sep = f64::INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            sep = sep.min(chord(all[i], all[j]));
        }
    }
    let cap = 0.45 * sep;

    let generators = [g1, g2];
    let fixed = [fixed1, fixed2];
    for (k, (g, [attract, repel])) in generators.iter().zip(fixed).enumerate() {
        let inv = g.inverse();
        let mut rng = rng_for(SCHOTTKY_SEED, k as u64);
        for _ in 0..SCHOTTKY_SAMPLES {
            let p = random_sphere_direction(&mut rng);
            let bad = (chord(p, repel) >= cap && chord(boundary_image(g, p), attract) >= cap)
                || (chord(p, attract) >= cap && chord(boundary_image(&inv, p), repel) >= cap);
            if bad {
                return Err(Error::NeighborhoodConditionFailed {
                    generator: k,
                    sample: [p.0.re, p.0.im, p.1.re, p.1.im],
                });
            }
        }
    }

    let to_boundary = |p: (C64, C64)| BoundaryPoint::new(p.0, p.1);
    Ok(SchottkyExample {
        generators,
        fixed_points: [
            [to_boundary(fixed1[0])?, to_boundary(fixed1[1])?],
            [to_boundary(fixed2[0])?, to_boundary(fixed2[1])?],
        ],
        translation_lengths: [g1.translation_length(), g2.translation_length()],
        axis_gap: axis_gap(&Isometry::identity(), &h),
        cap_radius: cap,
        samples_checked: 2 * SCHOTTKY_SAMPLES,
    })
}
