//! Areas of discs in complex lines, volumes of tubes and wedges, and a
//! Monte Carlo integrator for the volume form in Fermi coordinates.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sampling::rng_for;

/// Samples drawn per independent random stream.
const SHARD: usize = 1 << 16;

/// Area `4 pi sinh^2(r/2)` of a disc of radius `r` in a complex line.
pub fn disc_area(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::NegativeRadius(r));
    }
    Ok(4.0 * PI * (0.5 * r).sinh().powi(2))
}

/// `4 pi / (e^d - 1)`, the area of the disc of radius `s(d)/2`.
pub fn half_projection_disc_area(d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::NonPositiveDistance(d));
    }
    Ok(4.0 * PI / d.exp_m1())
}

/// `cosh^4(eps/2) - 1`, the normal-disc factor shared by tubes and wedges.
pub(crate) fn normal_factor(eps: f64) -> f64 {
    let c = (0.5 * eps).cosh();
    // cosh^4 - 1 = sinh^2 (cosh^2 + 1), without cancellation at small eps.
    (0.5 * eps).sinh().powi(2) * (c * c + 1.0)
}

/// Volume `2 pi (cosh^4(eps/2) - 1) area` of the `eps`-tube over a region of
/// the given area in a complex line.
pub fn tube_volume(area: f64, eps: f64) -> Result<f64> {
    if !(area >= 0.0) {
        return Err(Error::NegativeInput { name: "area", value: area });
    }
    if !(eps >= 0.0) {
        return Err(Error::NegativeInput { name: "eps", value: eps });
    }
    Ok(TAU * normal_factor(eps) * area)
}

/// Wedge over the disc `D_s` of normal sectors of radius `eps` and angle `psi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WedgeParams {
    s: f64,
    eps: f64,
    psi: f64,
}

impl WedgeParams {
    pub fn new(s: f64, eps: f64, psi: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::ParameterOutOfRange { name: "s", value: s });
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::ParameterOutOfRange { name: "eps", value: eps });
        }
        if !(psi > 0.0 && psi <= TAU) {
            return Err(Error::ParameterOutOfRange { name: "psi", value: psi });
        }
        Ok(WedgeParams { s, eps, psi })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }
}

/// `psi (cosh^4(eps/2) - 1) disc_area(s)`.
pub fn wedge_volume(w: &WedgeParams) -> f64 {
    w.psi * normal_factor(w.eps) * 4.0 * PI * (0.5 * w.s).sinh().powi(2)
}

/// Riemannian volume density `16 / (1 - |z1|^2 - |z2|^2)^3` with respect to
/// Lebesgue measure on the ball.
pub fn volume_density(z1_sqr: f64, z2_sqr: f64) -> f64 {
    16.0 / (1.0 - z1_sqr - z2_sqr).powi(3)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0.0 {
            return o;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments { n, mean: self.mean + d * o.n / n, m2: self.m2 + o.m2 + d * d * self.n * o.n / n }
    }
}

/// Monte Carlo volume of a wedge.
///
/// `z2` is uniform on the Euclidean disc of radius `tanh(s/2)` and `z1`
/// uniform on the sector `|z1| <= sqrt(1 - |z2|^2) tanh(eps/2)`,
/// `|arg z1| <= psi/2`; each sample is weighted by the volume density times
/// the Euclidean measure of its cell. Shards are keyed by `(seed, shard)`
/// and combined in shard order, so the result does not depend on the thread
/// count.
pub fn mc_wedge_volume(w: &WedgeParams, samples: usize, seed: u64) -> Result<McEstimate> {
    if samples < 10_000 {
        return Err(Error::InsufficientSamples { got: samples, min: 10_000 });
    }
    let big_r = (0.5 * w.s).tanh();
    let t = (0.5 * w.eps).tanh();
    let disc = PI * big_r * big_r;
    let shards = samples.div_ceil(SHARD);
    let parts: Vec<Moments> = (0..shards)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(seed, k as u64);
            let count = SHARD.min(samples - k * SHARD);
            let mut m = Moments::default();
            for _ in 0..count {
                let r2 = big_r * big_r * rng.random::<f64>();
                let f2 = (1.0 - r2) * t * t;
                let rho2 = f2 * rng.random::<f64>();
                // Sector measure (psi/2) f^2 times disc measure.
                let cell = disc * 0.5 * w.psi * f2;
                m.push(cell * volume_density(rho2, r2));
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let var = total.m2 / (total.n - 1.0);
    Ok(McEstimate { estimate: total.mean, std_error: (var / total.n).sqrt(), samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::s_function;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn disc_area_examples() {
        assert_eq!(disc_area(0.0).unwrap(), 0.0);
        assert_relative_eq!(disc_area(2.0 * 1f64.asinh()).unwrap(), 4.0 * PI, epsilon = 1e-13);
        let r = 1e-4;
        assert_relative_eq!(disc_area(r).unwrap() / (PI * r * r), 1.0, epsilon = 1e-8);
        assert_eq!(disc_area(-1.0), Err(Error::NegativeRadius(-1.0)));
    }

    #[test]
    fn half_projection_examples() {
        assert_relative_eq!(half_projection_disc_area(2f64.ln()).unwrap(), 4.0 * PI, epsilon = 1e-13);
        assert!(half_projection_disc_area(700.0).unwrap() < 1e-300);
        assert!(half_projection_disc_area(0.0).is_err());
        for i in 0..=795 {
            let d = 0.05 + 0.01 * i as f64;
            let a = disc_area(0.5 * s_function(d).unwrap()).unwrap();
            let b = half_projection_disc_area(d).unwrap();
            assert!((a - b).abs() <= 1e-11 * b.max(1.0), "d {d}: {a} vs {b}");
        }
    }

    #[test]
    fn tube_volume_examples() {
        assert_eq!(tube_volume(3.0, 0.0).unwrap(), 0.0);
        let expected = TAU * (0.5f64.cosh().powi(4) - 1.0);
        assert_relative_eq!(tube_volume(1.0, 1.0).unwrap(), expected, epsilon = 1e-14);
        assert!(tube_volume(-1.0, 1.0).is_err() && tube_volume(1.0, -1.0).is_err());
        let w = WedgeParams::new(0.7, 0.4, TAU).unwrap();
        let tube = tube_volume(disc_area(0.7).unwrap(), 0.4).unwrap();
        assert_relative_eq!(wedge_volume(&w), tube, epsilon = 1e-14);
    }

    #[test]
    fn wedge_examples() {
        let full = WedgeParams::new(1.0, 1.0, PI).unwrap();
        let half = WedgeParams::new(1.0, 1.0, PI / 2.0).unwrap();
        assert_relative_eq!(wedge_volume(&half) * 2.0, wedge_volume(&full), epsilon = 1e-14);
        assert!(WedgeParams::new(0.0, 1.0, 1.0).is_err());
        assert!(WedgeParams::new(1.0, 1.0, 7.0).is_err());
    }

    #[test]
    fn monte_carlo_agrees_with_closed_form() {
        let w = WedgeParams::new(1.0, 1.0, PI).unwrap();
        let est = mc_wedge_volume(&w, 1_000_000, 3).unwrap();
        let exact = wedge_volume(&w);
        assert!((est.estimate - exact).abs() < 3.0 * est.std_error, "{est:?} vs {exact}");
        assert!(est.std_error / est.estimate < 0.01);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let w = WedgeParams::new(0.5, 0.3, 1.0).unwrap();
        let a = mc_wedge_volume(&w, 200_000, 9).unwrap();
        let b = mc_wedge_volume(&w, 200_000, 9).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        assert!(mc_wedge_volume(&w, 9_999, 9).is_err());
    }

    proptest! {
        #[test]
        fn wedge_monotone(s in 0.1f64..3.0, e in 0.1f64..3.0, p in 0.1f64..3.0, k in 1.01f64..2.0) {
            let base = wedge_volume(&WedgeParams::new(s, e, p).unwrap());
            prop_assert!(wedge_volume(&WedgeParams::new(s * k, e, p).unwrap()) > base);
            prop_assert!(wedge_volume(&WedgeParams::new(s, e * k, p).unwrap()) > base);
            prop_assert!(wedge_volume(&WedgeParams::new(s, e, p * k).unwrap()) > base);
        }

        #[test]
        fn density_positive_inside(a in 0.0f64..1.0, b in 0.0f64..1.0) {
            prop_assume!(a + b < 1.0);
            prop_assert!(volume_density(a, b) > 0.0);
        }
    }
}
