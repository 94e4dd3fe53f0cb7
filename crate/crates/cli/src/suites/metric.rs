use chtube::lines::bergman_distance;
use chtube::sampling::{random_ball_point, random_isometry, rng_for};
use chtube::vector::{hermitian_form, polar_of_span, projectivize, standard_lift};
use chtube::{BallPoint, HVector, ProjectivePoint, C64};
use rand::Rng;

use super::{max_nan, min_nan, Check, Part};

pub const PARTS: &[Part] = &[("bergman", bergman), ("restriction", restriction), ("form", form)];

const SAMPLES: u64 = 100_000;
// Points are drawn within this hyperbolic distance of the origin.
const REACH: f64 = 8.0;

fn bergman(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x100);
    let (mut asym, mut slack, mut self_dist, mut moved) = (0.0f64, f64::INFINITY, 0.0f64, 0.0f64);
    for _ in 0..SAMPLES {
        let p = random_ball_point(&mut rng, REACH);
        let q = random_ball_point(&mut rng, REACH);
        let r = random_ball_point(&mut rng, REACH);
        let (pq, qp) = (bergman_distance(&p, &q), bergman_distance(&q, &p));
        asym = max_nan(asym, (pq - qp).abs());
        slack = min_nan(slack, pq + bergman_distance(&q, &r) - bergman_distance(&p, &r));
        self_dist = max_nan(self_dist, bergman_distance(&p, &p));
        let g = random_isometry(&mut rng);
        let near_p = random_ball_point(&mut rng, 3.0);
        let near_q = random_ball_point(&mut rng, 3.0);
        let d = bergman_distance(&near_p, &near_q);
        moved = max_nan(moved, (bergman_distance(&g.apply_point(&near_p), &g.apply_point(&near_q)) - d).abs());
    }
    vec![
        Check::at_most("symmetry", "rho(p,q) = rho(q,p)", SAMPLES, asym, 0.0),
        Check::at_least("triangle", "rho(p,q) + rho(q,r) - rho(p,r) >= 0", SAMPLES, slack, -1e-12),
        Check::at_most("identity", "rho(p,p) = 0", SAMPLES, self_dist, 0.0),
        Check::at_most("isometry_invariance", "rho(gp,gq) = rho(p,q)", SAMPLES, moved, 1e-10),
    ]
}

/// Curvature -1 Poincare distance between points of the unit disc, via
/// `1 - t^2 = (1-|a|^2)(1-|b|^2)/|1 - a conj(b)|^2`.
fn poincare(a: C64, b: C64) -> f64 {
    let den = (C64::new(1.0, 0.0) - a * b.conj()).norm();
    let t = (a - b).norm() / den;
    let one_minus_t2 = (1.0 - a.norm_sqr()) * (1.0 - b.norm_sqr()) / (den * den);
    2.0 * t.ln_1p() - one_minus_t2.ln()
}

fn restriction(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x101);
    let mut worst = 0.0f64;
    let disc = |rng: &mut rand_chacha::ChaCha8Rng| {
        C64::from_polar((0.5 * rng.random_range(0.0f64..REACH)).tanh(), rng.random_range(0.0..std::f64::consts::TAU))
    };
    for i in 0..SAMPLES {
        let (a, b) = (disc(&mut rng), disc(&mut rng));
        let zero = C64::new(0.0, 0.0);
        let (p, q) = if i % 2 == 0 {
            (BallPoint::new(zero, a), BallPoint::new(zero, b))
        } else {
            (BallPoint::new(a, zero), BallPoint::new(b, zero))
        };
        let d = bergman_distance(&p.unwrap(), &q.unwrap());
        worst = max_nan(worst, (d - poincare(a, b)).abs());
    }
    vec![Check::at_most(
        "line_restriction",
        "rho((0,a),(0,b)) = log((1+t)/(1-t)), t = |a-b|/|1-a conj(b)|",
        SAMPLES,
        worst,
        1e-12,
    )]
}

fn form(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x102);
    let n = SAMPLES / 10;
    let (mut conj, mut orth, mut round_trip, mut invariance) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let rand_c = |rng: &mut rand_chacha::ChaCha8Rng| C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    for _ in 0..n {
        let p = HVector::new(rand_c(&mut rng), rand_c(&mut rng), rand_c(&mut rng)).unwrap();
        let q = HVector::new(rand_c(&mut rng), rand_c(&mut rng), rand_c(&mut rng)).unwrap();
        let scale = p.euclidean_norm() * q.euclidean_norm();
        conj = max_nan(conj, (hermitian_form(&p, &q) - hermitian_form(&q, &p).conj()).norm() / scale);
        if let Ok(m) = polar_of_span(&p, &q) {
            let s = m.euclidean_norm() * scale;
            orth = max_nan(orth, hermitian_form(&m, &p).norm() * q.euclidean_norm() / s);
            orth = max_nan(orth, hermitian_form(&m, &q).norm() * p.euclidean_norm() / s);
        }
        let b = random_ball_point(&mut rng, REACH);
        round_trip = max_nan(
            round_trip,
            match projectivize(&standard_lift(&b)) {
                Ok(ProjectivePoint::Interior(c)) => (c.z1() - b.z1()).norm().max((c.z2() - b.z2()).norm()),
                _ => f64::INFINITY,
            },
        );
        let g = random_isometry(&mut rng);
        let (gp, gq) = (g.apply_vector(&p), g.apply_vector(&q));
        let mag = gp.euclidean_norm() * gq.euclidean_norm();
        invariance = max_nan(invariance, (hermitian_form(&gp, &gq) - hermitian_form(&p, &q)).norm() / mag.max(scale));
    }
    vec![
        Check::at_most("conjugate_symmetry", "<p,q> = conj(<q,p>)", n, conj, 1e-15),
        Check::at_most("polar_orthogonality", "<n,p> = <n,q> = 0 for n = p x q", n, orth, 1e-9),
        Check::at_most("lift_round_trip", "P(lift(p)) = p", n, round_trip, 1e-15),
        Check::at_most("form_invariance", "<gp,gq> = <p,q>", n, invariance, 1e-9),
    ]
}
