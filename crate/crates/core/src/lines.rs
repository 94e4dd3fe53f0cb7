//! Complex lines, the Bergman metric, line-line invariants, orthogonal
//! projection and the normal form of an ultraparallel pair.

use nalgebra::{Matrix3, Vector3};
use rand::Rng;

use crate::error::{Error, Result};
use crate::isometry::{frame_from, Isometry};
use crate::sampling::rng_for;
use crate::tolerance;
use crate::vector::{cross3, form3, BallPoint, HVector, C64};

/// A complex line, carried by a polar vector of form-norm one.
#[derive(Clone, Copy, Debug)]
pub struct ComplexLine {
    polar: HVector,
}

impl ComplexLine {
    pub fn from_polar(v: &HVector) -> Result<Self> {
        let value = v.norm_form();
        if value <= tolerance::ALGEBRAIC * v.0.norm_squared() {
            return Err(Error::NotPolar(value));
        }
        Ok(Self::from_polar_unchecked(v.0))
    }

    pub(crate) fn from_polar_unchecked(v: Vector3<C64>) -> Self {
        let n = form3(&v, &v).re.sqrt();
        ComplexLine { polar: HVector(v * C64::new(1.0 / n, 0.0)) }
    }

    /// The line through two distinct points of the ball.
    pub fn through(p: &BallPoint, q: &BallPoint) -> Result<Self> {
        let n = crate::vector::polar_of_span(&p.lift(), &q.lift())?;
        Ok(Self::from_polar_unchecked(n.0))
    }

    /// `{(0, w)}`, with polar vector `(1, 0, 0)`.
    pub fn coordinate_z2() -> Self {
        ComplexLine { polar: HVector(Vector3::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0))) }
    }

    /// `{(z, 0)}`, with polar vector `(0, 1, 0)`.
    pub fn coordinate_z1() -> Self {
        ComplexLine { polar: HVector(Vector3::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0))) }
    }

    pub fn polar(&self) -> &HVector {
        &self.polar
    }

    pub fn same_line(&self, other: &ComplexLine, tol: f64) -> bool {
        self.polar.projective_eq(&other.polar, tol)
    }

    /// Bergman distance from `p` to the line.
    pub fn distance_to_point(&self, p: &BallPoint) -> f64 {
        let v = p.lift().0;
        let num = form3(&v, &self.polar.0).norm_sqr();
        let den = -form3(&v, &v).re;
        2.0 * (num / den).sqrt().asinh()
    }

    pub fn contains(&self, p: &BallPoint) -> bool {
        self.distance_to_point(p) <= tolerance::GEOMETRIC
    }

    /// Orthogonal projection onto the line; see [`orthogonal_projection`].
    pub fn project(&self, p: &BallPoint) -> BallPoint {
        BallPoint::from_negative(&self.project_raw(&p.lift().0))
    }

    /// Vector-level projection `v - <v,n> n`. It maps negative vectors to
    /// negative vectors and never leaves homogeneous coordinates, so it stays
    /// accurate for points far out towards the sphere.
    pub fn project_vector(&self, v: &HVector) -> HVector {
        HVector(self.project_raw(&v.0))
    }

    pub(crate) fn project_raw(&self, v: &Vector3<C64>) -> Vector3<C64> {
        let n = &self.polar.0;
        v - n * form3(v, n)
    }
}

/// Bergman distance, `cosh^2(rho/2) = |<p,q>|^2 / (<p,p><q,q>)`.
///
/// Evaluated through the equivalent cancellation-free expression
/// `sinh^2(rho/2) = (|q - p|^2 - |p1 (q2 - p2) - p2 (q1 - p1)|^2) / ((1 - |p|^2)(1 - |q|^2))`.
/// Arguments are put in a canonical order first, so the result is exactly
/// symmetric.
pub fn bergman_distance(p: &BallPoint, q: &BallPoint) -> f64 {
    let key = |a: &BallPoint| [a.z1().re, a.z1().im, a.z2().re, a.z2().im];
    let (ka, kb) = (key(p), key(q));
    let ord =
        ka.iter().zip(kb.iter()).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal);
    let (p, q) = if ord.is_gt() { (q, p) } else { (p, q) };
    let d1 = q.z1() - p.z1();
    let d2 = q.z2() - p.z2();
    let wedge = p.z1() * d2 - p.z2() * d1;
    let num = (d1.norm_sqr() + d2.norm_sqr() - wedge.norm_sqr()).max(0.0);
    let den = (1.0 - p.norm_sqr()) * (1.0 - q.norm_sqr());
    2.0 * (num / den).sqrt().asinh()
}

/// Bergman distance between the projectivizations of two negative vectors.
pub fn distance_between_lifts(v: &HVector, w: &HVector) -> f64 {
    bergman_distance(&BallPoint::from_negative(&v.0), &BallPoint::from_negative(&w.0))
}

/// `N(L, M) = |<n, m>|^2` for unit polar vectors.
pub fn n_invariant(l: &ComplexLine, m: &ComplexLine) -> f64 {
    form3(&l.polar.0, &m.polar.0).norm_sqr()
}

/// Relative position of two complex lines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LinePairClass {
    Ultraparallel { distance: f64 },
    AsymptoticOrEqual,
    Intersecting { angle: f64 },
}

pub fn classify_pair(l: &ComplexLine, m: &ComplexLine) -> LinePairClass {
    let n = n_invariant(l, m);
    if n > 1.0 + tolerance::CLASSIFY {
        LinePairClass::Ultraparallel { distance: 2.0 * (n - 1.0).sqrt().asinh() }
    } else if n < 1.0 - tolerance::CLASSIFY {
        LinePairClass::Intersecting { angle: n.sqrt().acos() }
    } else {
        LinePairClass::AsymptoticOrEqual
    }
}

/// Distance between ultraparallel lines.
pub fn line_distance(l: &ComplexLine, m: &ComplexLine) -> Result<f64> {
    match classify_pair(l, m) {
        LinePairClass::Ultraparallel { distance } => Ok(distance),
        _ => Err(Error::NotUltraparallel(n_invariant(l, m))),
    }
}

/// Nearest-point projection onto `l`: `P(p - <p,n>/<n,n> n)`.
pub fn orthogonal_projection(l: &ComplexLine, p: &BallPoint) -> BallPoint {
    l.project(p)
}

/// `s(d) = 2 asinh(1 / sinh(d/2)) = 2 log coth(d/4)`, the radius of the
/// projection of one line onto another at distance `d`.
pub fn s_function(d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::NonPositiveDistance(d));
    }
    Ok(2.0 * (1.0 / (0.5 * d).sinh()).asinh())
}

pub fn projection_radius_disjoint(l1: &ComplexLine, l2: &ComplexLine) -> Result<f64> {
    s_function(line_distance(l1, l2)?)
}

/// Radius `log((1 + |cos t|)/(1 - |cos t|))` of the projection of one line
/// onto another meeting it at angle `t`.
pub fn projection_radius_intersecting(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::AngleOutOfRange(theta));
    }
    let c = theta.cos().abs();
    Ok(2.0 * c.atanh())
}

/// Polar vector of the common perpendicular line, unnormalized.
fn perpendicular_raw(l1: &ComplexLine, l2: &ComplexLine) -> Result<Vector3<C64>> {
    let n = n_invariant(l1, l2);
    if !(n > 1.0 + tolerance::CLASSIFY) {
        return Err(Error::NotUltraparallel(n));
    }
    let m = cross3(&l1.polar.0, &l2.polar.0);
    if form3(&m, &m).re <= tolerance::PIVOT * m.norm_squared() {
        return Err(Error::NotUltraparallel(n));
    }
    Ok(m)
}

/// The complex line orthogonal to both of two ultraparallel lines.
pub fn common_perpendicular(l1: &ComplexLine, l2: &ComplexLine) -> Result<ComplexLine> {
    Ok(ComplexLine::from_polar_unchecked(perpendicular_raw(l1, l2)?))
}

/// Endpoints of the orthogeodesic: the points where the common perpendicular
/// meets `l1` and `l2`.
pub fn orthogeodesic_feet(l1: &ComplexLine, l2: &ComplexLine) -> Result<(BallPoint, BallPoint)> {
    let m = perpendicular_raw(l1, l2)?;
    let p1 = cross3(&l1.polar.0, &m);
    let p2 = cross3(&l2.polar.0, &m);
    Ok((BallPoint::from_negative(&p1), BallPoint::from_negative(&p2)))
}

/// An ultraparallel pair moved into normal form.
#[derive(Clone, Copy, Debug)]
pub struct NormalizedPair {
    /// Carries `L1` to `{(0,w)}`, the common perpendicular to `{(z,0)}`, the
    /// foot on `L1` to the origin and the foot on `L2` to `(x, 0)`.
    pub mover: Isometry,
    /// `tanh(d/2)` for the distance `d` between the lines.
    pub x: f64,
}

impl NormalizedPair {
    pub fn distance(&self) -> f64 {
        2.0 * self.x.atanh()
    }
}

/// Bring an ultraparallel pair to the normal form where `L1 = {(0,w)}`, the
/// common perpendicular is `{(z,0)}` and `L2` has polar `(1/x, 0, 1)`.
///
/// Built from one J-orthonormal frame: the polar of `L1`, the polar of the
/// common perpendicular, and the foot on `L1`. The frame's inverse already
/// performs the three normalizing steps at once; a phase on the first column
/// then turns the second foot onto the positive real axis.
pub fn normalize_pair(l1: &ComplexLine, l2: &ComplexLine) -> Result<NormalizedPair> {
    let m = perpendicular_raw(l1, l2)?;
    let m = m * C64::new(1.0 / form3(&m, &m).re.sqrt(), 0.0);
    let n1 = l1.polar.0;
    let foot1 = cross3(&n1, &m);
    if -form3(&foot1, &foot1).re <= tolerance::PIVOT * foot1.norm_squared() {
        return Err(Error::NotUltraparallel(n_invariant(l1, l2)));
    }
    let u = frame_from(&n1, &foot1).inverse();
    let foot2 = u.apply_raw(&cross3(&l2.polar.0, &m));
    let ratio = foot2[0] / foot2[2];
    let turn = C64::from_polar(1.0, -ratio.arg());
    let diag = Matrix3::from_diagonal(&Vector3::new(turn, C64::new(1.0, 0.0), C64::new(1.0, 0.0)));
    let mover = Isometry::from_unitary(diag * u.matrix())?;
    Ok(NormalizedPair { mover, x: ratio.norm() })
}

/// Sampled check that lines whose unit polars lie within `eps` of `M`'s
/// still meet `L`. Uses `10^4` samples and a fixed seed.
pub fn transversality_stability_check(l: &ComplexLine, m: &ComplexLine, eps: f64) -> Result<bool> {
    transversality_stability_check_with(l, m, eps, 10_000, 0x7A5E)
}

pub fn transversality_stability_check_with(
    l: &ComplexLine,
    m: &ComplexLine,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    let n = n_invariant(l, m);
    if !(n < 1.0 - tolerance::CLASSIFY) {
        return Err(Error::NotTransversal(n));
    }
    let max = 1.0 - n.sqrt();
    if !(eps > 0.0 && eps < max) {
        return Err(Error::EpsilonOutOfRange { eps, max });
    }
    // In a frame where L has polar e1, meeting L means |q1| < 1.
    let frame = crate::isometry::line_frame(l).inverse();
    let m0 = frame.apply_raw(&m.polar.0);
    let mut rng = rng_for(seed, 0);
    let mut accepted = 0;
    while accepted < samples {
        let delta = Vector3::from_fn(|_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        if delta.norm() >= 1.0 {
            continue;
        }
        let q = m0 + delta * C64::new(eps, 0.0);
        let value = form3(&q, &q).re;
        if value <= 0.0 {
            continue;
        }
        let q = q * C64::new(1.0 / value.sqrt(), 0.0);
        if (q - m0).norm() >= eps {
            continue;
        }
        accepted += 1;
        if q[0].norm_sqr() >= 1.0 {
            return Ok(false);
        }
    }
    Ok(true)
}
