use nalgebra::Vector3;
use rayon::prelude::*;
use serde::Serialize;

use super::bisector::Bisector;
use super::fuchsian::CFuchsianGroup;
use super::word::{fold_words, Letter, Word, DEFAULT_WORD_BUDGET};
use crate::error::{Error, Result};
use crate::isometry::{signed_axis_translation, Isometry};
use crate::lines::{line_distance, n_invariant, normalize_pair, orthogeodesic_feet, s_function, ComplexLine};
use crate::sampling::{random_sphere_direction, rng_for};
use crate::tolerance;
use crate::vector::{BallPoint, C64};

/// Knobs for [`build_combination`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CombinationOptions {
    /// Word length used for the injectivity radii at the feet.
    pub injectivity_depth: usize,
    /// Word length for the distance-realization certificate.
    pub word_depth: usize,
    /// Ping-pong sample points per half-space.
    pub samples: usize,
    pub seed: u64,
    pub word_budget: u128,
}

impl Default for CombinationOptions {
    fn default() -> Self {
        CombinationOptions {
            injectivity_depth: 3,
            word_depth: 4,
            samples: 10_000,
            seed: 0,
            word_budget: DEFAULT_WORD_BUDGET,
        }
    }
}

/// The inequality `s(inj(p1)) + s(inj(p2)) < rho(L1, L2)` at the feet of the
/// orthogeodesic.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Precondition {
    pub ok: bool,
    pub margin: f64,
    pub distance: f64,
    pub injectivity_radii: [f64; 2],
    pub projection_radii: [f64; 2],
    pub depth: usize,
    #[serde(skip)]
    pub feet: [BallPoint; 2],
}

pub fn combination_precondition(g1: &CFuchsianGroup, g2: &CFuchsianGroup, depth: usize) -> Result<Precondition> {
    let distance = line_distance(g1.line(), g2.line())?;
    let (p1, p2) = orthogeodesic_feet(g1.line(), g2.line())?;
    let inj = [g1.injectivity_radius(&p1, depth)?, g2.injectivity_radius(&p2, depth)?];
    let radii = [s_function(inj[0])?, s_function(inj[1])?];
    let margin = distance - radii[0] - radii[1];
    Ok(Precondition {
        ok: margin > 0.0,
        margin,
        distance,
        injectivity_radii: inj,
        projection_radii: radii,
        depth,
        feet: [p1, p2],
    })
}

/// Side of a wall, `+1` or `-1`.
fn side_of(b: &Bisector, v: &Vector3<C64>) -> i8 {
    let d = b.signed_distance_vector(v);
    if d.abs() <= tolerance::GEOMETRIC {
        0
    } else {
        d.signum() as i8
    }
}

/// The three walls `B_{q1}`, `B_q`, `B_{q2}` across the orthogeodesic, and
/// the sides of each that hold the relevant line.
#[derive(Clone, Copy, Debug)]
pub struct Walls {
    pub b_q1: Bisector,
    pub b_q: Bisector,
    pub b_q2: Bisector,
    /// Distances of `q1`, `q`, `q2` from the foot on `L1`.
    pub positions: [f64; 3],
    /// Sides holding `U1` (of `b_q1`), `V2` (of `b_q`), `U2` (of `b_q2`) and
    /// `V1` (of `b_q`).
    pub sides: [i8; 4],
    // Isometry from the normal form back to the actual configuration.
    back: Isometry,
    x: f64,
}

/// Place the walls perpendicular to the orthogeodesic: `q1` at distance
/// `s(inj(p1))` from `L1`, `q2` at distance `s(inj(p2))` from `L2`, and `q`
/// at the midpoint between them. No check that the precondition holds.
pub fn combination_bisectors(g1: &CFuchsianGroup, g2: &CFuchsianGroup, pre: &Precondition) -> Result<Walls> {
    let pair = normalize_pair(g1.line(), g2.line())?;
    let back = pair.mover.inverse();
    let carrier = back.apply_line(&ComplexLine::coordinate_z1());
    let i = C64::new(0.0, 1.0);
    let wall = |t: f64| -> Result<Bisector> {
        let f = back.compose(&signed_axis_translation((0.5 * t).tanh()));
        let end = |z: C64| f.apply_raw(&Vector3::new(z, C64::new(0.0, 0.0), C64::new(1.0, 0.0)));
        Bisector::from_null_vectors(carrier, end(-i), end(i))
    };
    let t1 = pre.projection_radii[0];
    let t2 = pre.distance - pre.projection_radii[1];
    let tq = 0.5 * (t1 + t2);
    let (b_q1, b_q, b_q2) = (wall(t1)?, wall(tq)?, wall(t2)?);
    let p1 = back.apply_raw(&Vector3::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)));
    let p2 = back.apply_raw(&Vector3::new(C64::new(pair.x, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)));
    let sides = [side_of(&b_q1, &p1), side_of(&b_q, &p2), side_of(&b_q2, &p2), side_of(&b_q, &p1)];
    Ok(Walls { b_q1, b_q, b_q2, positions: [t1, tq, t2], sides, back, x: pair.x })
}

/// Pass and fail counts of the sampled ping-pong inclusions.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PingPongCounts {
    pub passed: usize,
    pub total: usize,
    /// Letters with at least one failing sample, with their failure counts.
    pub failures: Vec<(Letter, usize)>,
}

const PINGPONG_SHARD: usize = 1024;

/// Draw a point strictly inside the region `side` of `wall`: half of the
/// draws spread out from `center` to hyperbolic distance 12, half near the
/// sphere (radial pullback by `1 - 1e-6` of a uniform boundary point).
fn sample_region<R: rand::Rng>(
    rng: &mut R,
    wall: &Bisector,
    side: i8,
    center: &Isometry,
    near_sphere: bool,
) -> Vector3<C64> {
    loop {
        let (a, b) = random_sphere_direction(rng);
        let v = if near_sphere {
            let k = 1.0 - 1e-6;
            Vector3::new(a * k, b * k, C64::new(1.0, 0.0))
        } else {
            let u: f64 = rng.random_range(0.0..12.0);
            let (sh, ch) = ((0.5 * u).sinh(), (0.5 * u).cosh());
            center.apply_raw(&Vector3::new(a * sh, b * sh, C64::new(ch, 0.0)))
        };
        if side_of(wall, &v) == side {
            return v;
        }
    }
}

/// Sample points of `V2` and check that every generator and inverse of `G1`
/// moves them into `U1`; symmetrically `V1` into `U2` under `G2`.
pub fn pingpong_check(
    g1: &CFuchsianGroup,
    g2: &CFuchsianGroup,
    walls: &Walls,
    samples: usize,
    seed: u64,
) -> PingPongCounts {
    let [u1, v2, u2, v1] = walls.sides;
    let at_p1 = walls.back;
    let at_p2 = walls.back.compose(&signed_axis_translation(walls.x));
    let halves = [
        (g1.alphabet(0), v2, &walls.b_q, &at_p2, &walls.b_q1, u1, 0u64),
        (g2.alphabet(1), v1, &walls.b_q, &at_p1, &walls.b_q2, u2, 1u64 << 32),
    ];
    let mut counts = PingPongCounts::default();
    for (alphabet, from_side, from_wall, center, to_wall, to_side, stream) in halves {
        let shards = samples.div_ceil(PINGPONG_SHARD);
        let per_shard: Vec<Vec<usize>> = (0..shards)
            .into_par_iter()
            .map(|k| {
                let mut rng = rng_for(seed, stream + k as u64);
                let mut fails = vec![0usize; alphabet.len()];
                let n = PINGPONG_SHARD.min(samples - k * PINGPONG_SHARD);
                for i in 0..n {
                    let v = sample_region(&mut rng, from_wall, from_side, center, i % 2 == 1);
                    for (j, (_, g)) in alphabet.iter().enumerate() {
                        if side_of(to_wall, &g.apply_raw(&v)) != to_side {
                            fails[j] += 1;
                        }
                    }
                }
                fails
            })
            .collect();
        let mut fails = vec![0usize; alphabet.len()];
        for shard in per_shard {
            for (f, s) in fails.iter_mut().zip(shard) {
                *f += s;
            }
        }
        let total = samples * alphabet.len();
        let failed: usize = fails.iter().sum();
        counts.total += total;
        counts.passed += total - failed;
        counts.failures.extend(alphabet.iter().zip(fails).filter(|(_, f)| *f > 0).map(|((l, _), f)| (*l, f)));
    }
    counts
}

/// Minimum of `rho(L1, gamma L2)` over reduced free-product words of length
/// at most `depth`, including the identity.
pub fn verify_distance_realization(g1: &CFuchsianGroup, g2: &CFuchsianGroup, depth: usize) -> Result<f64> {
    Ok(verify_distance_realization_with_budget(g1, g2, depth, DEFAULT_WORD_BUDGET)?.0)
}

/// As [`verify_distance_realization`], also returning the number of words
/// checked.
///
/// A leading block from `G1` fixes `L1` and a trailing block from `G2` fixes
/// `L2`, so both are dropped before the distance is evaluated; this keeps
/// the near-minimal values free of the rounding that long products carry.
pub fn verify_distance_realization_with_budget(
    g1: &CFuchsianGroup,
    g2: &CFuchsianGroup,
    depth: usize,
    budget: u128,
) -> Result<(f64, u128)> {
    let (l1, l2) = (g1.line(), g2.line());
    let base = line_distance(l1, l2)?;
    let mut alphabet = g1.alphabet(0);
    alphabet.extend(g2.alphabet(1));
    let factors = [g1.generators(), g2.generators()];
    let distance = |l: &ComplexLine| {
        let n = n_invariant(l1, l);
        if n > 1.0 {
            2.0 * (n - 1.0).sqrt().asinh()
        } else {
            0.0
        }
    };
    let (min, count) = fold_words(
        &alphabet,
        depth,
        budget,
        base,
        |acc, letters, _| {
            let start = letters.iter().take_while(|l| l.factor == 0).count();
            let end = letters.len() - letters.iter().rev().take_while(|l| l.factor == 1).count();
            if start >= end {
                return acc;
            }
            let gamma = Word::new(&letters[start..end]).evaluate(&factors);
            acc.min(distance(&gamma.apply_line(l2)))
        },
        f64::min,
    )?;
    Ok((min, count + 1))
}

/// Everything certified about a combined group.
#[derive(Clone, Debug, Serialize)]
pub struct DiscretenessReport {
    pub precondition_satisfied: bool,
    pub margin: f64,
    pub line_distance: f64,
    pub injectivity_radii: [f64; 2],
    pub injectivity_depth: usize,
    pub wall_positions: [f64; 3],
    pub pingpong_samples_passed: usize,
    pub pingpong_samples_total: usize,
    pub min_distance_over_words: f64,
    pub depth: usize,
    pub words_checked: u64,
    pub distance_certificate: bool,
    pub seed: u64,
}

impl DiscretenessReport {
    pub fn assemble(
        pre: &Precondition,
        walls: &Walls,
        pp: &PingPongCounts,
        min: f64,
        words: u128,
        opts: &CombinationOptions,
    ) -> Self {
        DiscretenessReport {
            precondition_satisfied: pre.ok,
            margin: pre.margin,
            line_distance: pre.distance,
            injectivity_radii: pre.injectivity_radii,
            injectivity_depth: pre.depth,
            wall_positions: walls.positions,
            pingpong_samples_passed: pp.passed,
            pingpong_samples_total: pp.total,
            min_distance_over_words: min,
            depth: opts.word_depth,
            words_checked: words as u64,
            distance_certificate: min >= pre.distance - tolerance::CERTIFICATE,
            seed: opts.seed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.precondition_satisfied
            && self.pingpong_samples_passed == self.pingpong_samples_total
            && self.distance_certificate
    }
}

/// The group generated by `G1` and `G2` with its walls and certificates.
#[derive(Clone, Debug)]
pub struct Combination {
    /// Generators of `G1` followed by those of `G2`.
    pub generators: Vec<Isometry>,
    pub walls: Walls,
    pub precondition: Precondition,
    pub pingpong: PingPongCounts,
    pub report: DiscretenessReport,
}

pub fn build_combination(g1: &CFuchsianGroup, g2: &CFuchsianGroup, opts: &CombinationOptions) -> Result<Combination> {
    let pre = combination_precondition(g1, g2, opts.injectivity_depth)?;
    if !pre.ok {
        return Err(Error::PreconditionFailed { margin: pre.margin });
    }
    let walls = combination_bisectors(g1, g2, &pre)?;
    let pingpong = pingpong_check(g1, g2, &walls, opts.samples, opts.seed);
    let (min, words) = verify_distance_realization_with_budget(g1, g2, opts.word_depth, opts.word_budget)?;
    let report = DiscretenessReport::assemble(&pre, &walls, &pingpong, min, words, opts);
    let mut generators = g1.generators().to_vec();
    generators.extend_from_slice(g2.generators());
    Ok(Combination { generators, walls, precondition: pre, pingpong, report })
}
