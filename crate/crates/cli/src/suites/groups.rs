use chtube::groups::{
    build_combination, combination_bisectors, combination_precondition, pingpong_check, reduce, regular_polygon_group,
    regular_polygon_inradius, schottky_example, CFuchsianGroup, CombinationOptions, Letter,
};
use chtube::isometry::{axis_translation, holonomy_of, line_rotation};
use chtube::lines::s_function;
use chtube::sampling::{random_ball_point, random_isometry, rng_for};
use chtube::{BallPoint, Isometry, C64};
use nalgebra::Matrix3;
use rand::Rng;

use super::{max_nan, Check, Part};

pub const PARTS: &[Part] =
    &[("surface_group", surface_group), ("combination", combination), ("schottky", schottky), ("structure", structure)];

pub const SCHOTTKY_OFFSETS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];
pub const SCHOTTKY_LENGTH: f64 = 6.0;
/// Distance used for the below-threshold control run.
pub const CONTROL_DISTANCE: f64 = 2.0;
const CONTROL_SAMPLES: usize = 4000;

/// Distance from the identity up to a cube root of unity.
fn projective_residual(m: &Isometry) -> f64 {
    (0..3)
        .map(|k| {
            let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
            (m.matrix() - Matrix3::identity() * w).iter().map(|z| z.norm()).fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// `prod_j a_j b_j a_j^{-1} b_j^{-1}` with generators stored as `a_0, b_0, ...`.
pub fn relator(g: &CFuchsianGroup) -> Isometry {
    g.generators().chunks(2).fold(Isometry::identity(), |acc, ab| {
        acc.compose(&ab[0]).compose(&ab[1]).compose(&ab[0].inverse()).compose(&ab[1].inverse())
    })
}

/// Second copy of the genus-2 group moved to distance `d` after rotating by `rotation`.
pub fn genus2_pair(d: f64, rotation: f64) -> (CFuchsianGroup, CFuchsianGroup) {
    let g1 = regular_polygon_group(2).unwrap();
    let h = axis_translation((0.5 * d).tanh()).unwrap().compose(&line_rotation(rotation));
    let g2 = g1.conjugate_by(&h);
    (g1, g2)
}

/// `2 s(r_in)` for the genus-2 regular-polygon group.
pub fn genus2_threshold() -> f64 {
    2.0 * s_function(regular_polygon_inradius(2).unwrap()).unwrap()
}

fn surface_group(_seed: u64) -> Vec<Check> {
    let g = regular_polygon_group(2).unwrap();
    let inj = g.injectivity_radius(&BallPoint::origin(), 3).unwrap();
    let want = (1.0 + 2f64.sqrt()).acosh();
    let mut out = vec![
        Check::at_most(
            "commutator_relation",
            "min_w max|a0 b0 a0^-1 b0^-1 a1 b1 a1^-1 b1^-1 - w I|, w^3 = 1",
            1,
            projective_residual(&relator(&g)),
            1e-8,
        ),
        Check::at_most("injectivity_radius", "inj(0) = acosh(1 + sqrt 2), depth 3", 1, (inj - want).abs(), 1e-8),
    ];
    let mut rel = 0.0f64;
    for genus in 3..=5 {
        rel = max_nan(rel, projective_residual(&relator(&regular_polygon_group(genus).unwrap())));
    }
    out.push(Check::at_most("commutator_relation_g3_5", "prod_j [a_j, b_j] = 1, genus 3..5", 3, rel, 1e-8));
    out
}

fn combination(seed: u64) -> Vec<Check> {
    let d = genus2_threshold() + 0.1;
    let (g1, g2) = genus2_pair(d, 0.0);
    let opts = CombinationOptions { seed, ..CombinationOptions::default() };
    let c = build_combination(&g1, &g2, &opts).unwrap();
    let r = &c.report;
    let total = r.pingpong_samples_total as u64;

    let (c1, c2) = genus2_pair(CONTROL_DISTANCE, 0.0);
    let pre = combination_precondition(&c1, &c2, opts.injectivity_depth).unwrap();
    let walls = combination_bisectors(&c1, &c2, &pre).unwrap();
    let pp = pingpong_check(&c1, &c2, &walls, CONTROL_SAMPLES, seed);
    vec![
        Check::holds("precondition", "d(L1, L2) > s(inj1) + s(inj2)", 1, r.precondition_satisfied),
        Check::at_most("margin", "d - s(inj1) - s(inj2) = 0.1", 1, (r.margin - 0.1).abs(), 1e-8),
        Check::at_most(
            "pingpong_failures",
            "g(U_k) inside the opposite region for every generator",
            total,
            (r.pingpong_samples_total - r.pingpong_samples_passed) as f64,
            0.0,
        ),
        Check::at_most(
            "distance_realized",
            "min_gamma d(L1, gamma L2) = d(L1, L2), word depth 4",
            r.words_checked,
            (r.min_distance_over_words - r.line_distance).abs(),
            1e-9,
        ),
        Check::holds("control_precondition_fails", "d = 2 < s(inj1) + s(inj2)", 1, !pre.ok),
        Check::at_least(
            "control_pingpong_failures",
            "below threshold some sample leaves its region",
            pp.total as u64,
            (pp.total - pp.passed) as f64,
            1.0,
        ),
    ]
}

fn schottky(_seed: u64) -> Vec<Check> {
    let built: Vec<_> = SCHOTTKY_OFFSETS.iter().map(|o| schottky_example(SCHOTTKY_LENGTH, *o)).collect();
    if let Some(Err(e)) = built.iter().find(|r| r.is_err()) {
        return vec![Check::holds("neighborhoods", &format!("caps mapped into caps: {e}"), 0, false)];
    }
    let examples: Vec<_> = built.into_iter().flatten().collect();
    let gaps: Vec<f64> = examples.iter().map(|e| e.axis_gap).collect();
    let drop = gaps.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    let length = examples
        .iter()
        .flat_map(|e| e.translation_lengths)
        .fold(0.0, |acc, t| max_nan(acc, (t - SCHOTTKY_LENGTH).abs()));
    let samples = examples.iter().map(|e| e.samples_checked as u64).sum();
    vec![
        Check::at_most("gap_decreasing", "gap(o_{k+1}) - gap(o_k) < 0", 4, drop, -f64::MIN_POSITIVE),
        Check::at_most("smallest_gap", "gap at offset 0.025", 1, gaps[3], 0.05),
        Check::at_most("translation_lengths", "l(g1) = l(g2) = 6", 8, length, 1e-9),
        Check::holds("neighborhoods", "caps mapped into caps", samples, examples.len() == 4),
    ]
}

fn structure(seed: u64) -> Vec<Check> {
    let mut rng = rng_for(seed, 0x600);
    let n = 10_000u64;
    let mut idempotent = true;
    let mut shorter = true;
    for _ in 0..n {
        let len = rng.random_range(0..24);
        let w: Vec<Letter> = (0..len)
            .map(|_| {
                Letter::new(rng.random_range(0..2), rng.random_range(0..2), if rng.random_bool(0.5) { 1 } else { -1 })
            })
            .collect();
        let r = reduce(&w);
        idempotent &= reduce(&r) == r;
        shorter &= r.len() <= w.len() && r.windows(2).all(|p| p[1] != p[0].inverse());
    }
    let mut hol = 0.0f64;
    let mut gens = 0u64;
    for genus in 2..=5 {
        let g = regular_polygon_group(genus).unwrap();
        for a in g.generators() {
            gens += 1;
            hol = max_nan(hol, holonomy_of(a, g.line()).unwrap().circle_distance(0.0));
        }
    }
    let (g1, g2) = genus2_pair(genus2_threshold() + 0.1, 0.0);
    let pre = combination_precondition(&g1, &g2, 3).unwrap();
    let walls = combination_bisectors(&g1, &g2, &pre).unwrap();
    let mut transform = 0.0f64;
    let m = 1000u64;
    for _ in 0..m {
        let h = random_isometry(&mut rng);
        let p = random_ball_point(&mut rng, 6.0);
        for b in [&walls.b_q1, &walls.b_q, &walls.b_q2] {
            let moved = b.transform(&h).signed_distance(&h.apply_point(&p));
            transform = max_nan(transform, (moved - b.signed_distance(&p)).abs());
        }
    }
    vec![
        Check::holds("reduce_idempotent", "reduce(reduce(w)) = reduce(w)", n, idempotent),
        Check::holds("reduce_shortens", "|reduce(w)| <= |w|, no adjacent inverse pair", n, shorter),
        Check::at_most("generator_holonomy", "hol(a_j) = hol(b_j) = 0, genus 2..5", gens, hol, 1e-10),
        Check::at_most("bisector_transform", "dist(h p, h B) = dist(p, B)", 3 * m, transform, 1e-9),
    ]
}
