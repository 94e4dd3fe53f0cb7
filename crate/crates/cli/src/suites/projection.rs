use chtube::isometry::{axis_translation, normalized_loxodromic};
use chtube::lines::{
    bergman_distance, distance_between_lifts, line_distance, n_invariant, normalize_pair, orthogonal_projection,
    s_function,
};
use chtube::sampling::{random_ball_point, random_isometry, random_unit_complex, rng_for};
use chtube::{BallPoint, ComplexLine, HVector, C64};
use rand::Rng;

use super::{max_nan, Check, Part};

pub const PARTS: &[Part] = &[("radius", radius), ("involution", involution), ("invariance", invariance)];

const PAIRS: u64 = 1000;
const PER_PAIR: u64 = 100;

fn radius(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x200);
    let (mut gap, mut excess) = (0.0f64, f64::NEG_INFINITY);
    for _ in 0..PAIRS {
        let h = random_isometry(&mut rng);
        let d: f64 = rng.random_range(0.05..6.0);
        let f = axis_translation((0.5 * d).tanh()).unwrap();
        let l1 = h.apply_line(&ComplexLine::coordinate_z2());
        let foot = h.apply_point(&BallPoint::origin()).lift();
        let s = s_function(d).unwrap();
        let mut sup = 0.0f64;
        for _ in 0..PER_PAIR {
            // Point of L2 at distance u from its foot.
            let u: f64 = rng.random_range(0.0..40.0);
            let w = random_unit_complex(&mut rng) * (0.5 * u).sinh();
            let v = HVector::new(C64::new(0.0, 0.0), w, C64::new((0.5 * u).cosh(), 0.0)).unwrap();
            let v = h.apply_vector(&f.apply_vector(&v));
            let r = distance_between_lifts(&l1.project_vector(&v), &foot);
            sup = max_nan(sup, r);
        }
        gap = max_nan(gap, (s - sup).abs());
        excess = max_nan(excess, sup - s);
    }
    vec![
        Check::at_most("sampled_radius", "sup rho(p1, Pi_L1(L2)) = s(d)", PAIRS * PER_PAIR, gap, 1e-6),
        Check::at_most("radius_bound", "rho(p1, Pi_L1(q)) <= s(d) for q in L2", PAIRS * PER_PAIR, excess, 1e-6),
    ]
}

fn involution(_seed: u64) -> Vec<Check> {
    let n = 1000;
    let grid: Vec<f64> = (0..n).map(|i| 0.01 + (10.0 - 0.01) * i as f64 / (n - 1) as f64).collect();
    let mut worst = 0.0f64;
    let mut decreasing = true;
    let mut prev = f64::INFINITY;
    for &d in &grid {
        let s = s_function(d).unwrap();
        worst = max_nan(worst, (s_function(s).unwrap() - d).abs());
        decreasing &= s < prev;
        prev = s;
    }
    vec![
        Check::at_most("involution", "s(s(d)) = d, s(d) = 2 asinh(1/sinh(d/2))", n as u64, worst, 1e-12),
        Check::holds("decreasing", "s strictly decreasing", n as u64, decreasing),
    ]
}

fn invariance(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x201);
    let n = 10_000u64;
    let (mut n_err, mut commute, mut normal) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let h = random_isometry(&mut rng);
        let x: f64 = rng.random_range(0.05..0.95);
        let l1 = h.apply_line(&ComplexLine::coordinate_z2());
        let l2 = h.apply_line(&ComplexLine::from_polar(&HVector::real(1.0 / x, 0.0, 1.0).unwrap()).unwrap());
        let g = random_isometry(&mut rng);
        let before = n_invariant(&l1, &l2);
        n_err = max_nan(n_err, (n_invariant(&g.apply_line(&l1), &g.apply_line(&l2)) - before).abs() / before.max(1.0));

        let w = random_unit_complex(&mut rng) * rng.random_range(0.0..0.9);
        let gamma = normalized_loxodromic(w, rng.random_range(-3.0..3.0)).unwrap().conjugate_by(&h);
        let p = random_ball_point(&mut rng, 4.0);
        let a = orthogonal_projection(&l1, &gamma.apply_point(&p));
        let b = gamma.apply_point(&orthogonal_projection(&l1, &p));
        commute = max_nan(commute, (a.z1() - b.z1()).norm().max((a.z2() - b.z2()).norm()));

        let pair = normalize_pair(&l1, &l2).unwrap();
        let m1 = pair.mover.apply_line(&l1);
        let m2 = pair.mover.apply_line(&l2);
        let d = line_distance(&l1, &l2).unwrap();
        let err = m1
            .polar()
            .projective_distance(&HVector::real(1.0, 0.0, 0.0).unwrap())
            .max(m2.polar().projective_distance(&HVector::real(1.0 / x, 0.0, 1.0).unwrap()))
            .max((pair.x - (0.5 * d).tanh()).abs())
            .max(bergman_distance(&pair.mover.apply_point(&h.apply_point(&BallPoint::origin())), &BallPoint::origin()));
        normal = max_nan(normal, err);
    }
    vec![
        Check::at_most("n_invariance", "N(gL, gM) = N(L, M)", n, n_err, 1e-9),
        Check::at_most("projection_commutes", "Pi_L(gamma p) = gamma Pi_L(p), gamma in Stab(L)", n, commute, 1e-9),
        Check::at_most("normal_form", "U L1 = {(0,w)}, U L2 has polar (1/x,0,1), x = tanh(d/2)", n, normal, 1e-9),
    ]
}
