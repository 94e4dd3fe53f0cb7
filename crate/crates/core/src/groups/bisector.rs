use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isometry::{line_frame, Isometry};
use crate::lines::{n_invariant, s_function, ComplexLine};
use crate::tolerance;
use crate::vector::{form3, BallPoint, BoundaryPoint, HVector, C64};

/// Outcome of [`bisector_membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub on: bool,
    pub side: i8,
}

/// The preimage under orthogonal projection onto a complex line `M` of a
/// geodesic (the spine) in `M`.
///
/// The spine is oriented from its first to its second endpoint; side `+1`
/// lies to the right of that direction.
#[derive(Clone, Copy, Debug)]
pub struct Bisector {
    carrier: ComplexLine,
    ends: [Vector3<C64>; 2],
    // Cached disc chart of the carrier.
    chart: Isometry,
    a: C64,
    b: C64,
    // Rotation taking (z - a)/(z - b) to the upper half plane.
    turn: C64,
}

impl Bisector {
    pub fn new(carrier: ComplexLine, start: &BoundaryPoint, end: &BoundaryPoint) -> Result<Self> {
        Self::from_null_vectors(carrier, start.lift().0, end.lift().0)
    }

    pub(crate) fn from_null_vectors(carrier: ComplexLine, e0: Vector3<C64>, e1: Vector3<C64>) -> Result<Self> {
        let m = carrier.polar().0;
        for e in [&e0, &e1] {
            let scale = e.norm_squared();
            let off = form3(e, &m).norm() / e.norm();
            let null = form3(e, e).re.abs() / scale;
            if off > tolerance::NULL || null > tolerance::NULL {
                return Err(Error::InvalidSpine(off.max(null)));
            }
        }
        if HVector(e0).projective_eq(&HVector(e1), 1e-9) {
            return Err(Error::InvalidSpine(0.0));
        }
        let chart = line_frame(&carrier).inverse();
        let disc = |e: &Vector3<C64>| {
            let v = chart.apply_raw(e);
            let z = v[1] / v[2];
            z / z.norm()
        };
        let (a, b) = (disc(&e0), disc(&e1));
        // Any third point of the circle fixes the direction of the image line.
        let probe = [-a, a * C64::new(0.0, 1.0), a * C64::new(0.0, -1.0)]
            .into_iter()
            .max_by(|p, q| (p - b).norm().total_cmp(&(q - b).norm()))
            .unwrap();
        let t = (probe - a) / (probe - b);
        let mut turn = t.conj() / t.norm();
        if ((a / b) * turn).im < 0.0 {
            turn = -turn;
        }
        Ok(Bisector { carrier, ends: [e0, e1], chart, a, b, turn })
    }

    pub fn carrier(&self) -> &ComplexLine {
        &self.carrier
    }

    pub fn endpoints(&self) -> [BoundaryPoint; 2] {
        self.ends.map(|e| {
            let (z1, z2) = (e[0] / e[2], e[1] / e[2]);
            let k = 1.0 / (z1.norm_sqr() + z2.norm_sqr()).sqrt();
            BoundaryPoint::new(z1 * k, z2 * k).expect("null vector")
        })
    }

    /// Image under an isometry, with the spine orientation carried along.
    pub fn transform(&self, g: &Isometry) -> Bisector {
        let carrier = g.apply_line(&self.carrier);
        Bisector::from_null_vectors(carrier, g.apply_raw(&self.ends[0]), g.apply_raw(&self.ends[1]))
            .expect("isometries preserve spines")
    }

    /// Upper-half-plane coordinate of the projection of `v` to the carrier.
    fn half_plane(&self, v: &Vector3<C64>) -> C64 {
        let u = self.chart.apply_raw(&self.carrier.project_raw(v));
        let z = u[1] / u[2];
        self.turn * (z - self.a) / (z - self.b)
    }

    /// Signed distance inside the carrier from the projection of `p` to the
    /// spine; positive on the right of the spine.
    pub fn signed_distance(&self, p: &BallPoint) -> f64 {
        self.signed_distance_vector(&p.lift().0)
    }

    pub(crate) fn signed_distance_vector(&self, v: &Vector3<C64>) -> f64 {
        let w = self.half_plane(v);
        (w.re / w.im).asinh()
    }

    pub fn membership(&self, p: &BallPoint) -> Membership {
        let d = self.signed_distance(p);
        if d.abs() <= tolerance::GEOMETRIC {
            Membership { on: true, side: 0 }
        } else {
            Membership { on: false, side: d.signum() as i8 }
        }
    }

    /// Negative lift of the spine point at arclength `t`, measured from the
    /// spine point whose upper-half-plane image is `i`.
    pub fn spine_vector(&self, t: f64) -> Vector3<C64> {
        let w = C64::new(0.0, t.exp()) / self.turn;
        let z = (self.a - w * self.b) / (C64::new(1.0, 0.0) - w);
        let v = Vector3::new(C64::new(0.0, 0.0), z, C64::new(1.0, 0.0));
        self.chart.inverse().apply_raw(&v)
    }

    pub fn spine_point(&self, t: f64) -> BallPoint {
        BallPoint::from_negative(&self.spine_vector(t))
    }
}

pub fn bisector_membership(b: &Bisector, p: &BallPoint) -> Membership {
    b.membership(p)
}

/// Radius `s(d)` of the projection of a bisector onto a complex line `L`
/// orthogonal to its carrier, where `d` is the distance inside the carrier
/// from `L` to the spine.
pub fn bisector_projection_radius(b: &Bisector, l: &ComplexLine) -> Result<f64> {
    if n_invariant(l, &b.carrier) > tolerance::GEOMETRIC {
        return Err(Error::NotInGeneralPosition("the line is not orthogonal to the bisector's carrier"));
    }
    // The point where L meets the carrier.
    let p = crate::vector::cross3(&l.polar().0, &b.carrier.polar().0);
    let d = b.signed_distance_vector(&p).abs();
    if d <= tolerance::GEOMETRIC {
        return Err(Error::NotInGeneralPosition("the line meets the spine"));
    }
    s_function(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::axis_translation;
    use crate::lines::bergman_distance;
    use crate::sampling::{random_ball_point, random_isometry, rng_for};
    use approx::assert_relative_eq;
    use rand::Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn imaginary_spine() -> Bisector {
        let m = ComplexLine::coordinate_z1();
        let lo = BoundaryPoint::new(c(0.0, -1.0), c(0.0, 0.0)).unwrap();
        let hi = BoundaryPoint::new(c(0.0, 1.0), c(0.0, 0.0)).unwrap();
        Bisector::new(m, &lo, &hi).unwrap()
    }

    #[test]
    fn membership_examples() {
        let b = imaginary_spine();
        let p = BallPoint::new(c(0.3, 0.0), c(0.1, 0.0)).unwrap();
        assert_eq!(b.membership(&p), Membership { on: false, side: 1 });
        // Poincare-disc oracle: distance from 0.3 to the imaginary axis.
        assert_relative_eq!(b.signed_distance(&p), 2.0 * 0.3f64.atanh(), epsilon = 1e-12);
        let on = BallPoint::new(c(0.0, 0.4), c(0.2, 0.1)).unwrap();
        assert_eq!(b.membership(&on), Membership { on: true, side: 0 });
        let [lo, hi] = b.endpoints();
        let flipped = Bisector::new(*b.carrier(), &hi, &lo).unwrap();
        assert_eq!(flipped.membership(&p).side, -1);
    }

    #[test]
    fn rejects_bad_spines() {
        let m = ComplexLine::coordinate_z1();
        let off = BoundaryPoint::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let on = BoundaryPoint::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(matches!(Bisector::new(m, &off, &on), Err(Error::InvalidSpine(_))));
        assert!(matches!(Bisector::new(m, &on, &on), Err(Error::InvalidSpine(_))));
    }

    #[test]
    fn membership_commutes_with_isometries() {
        let mut rng = rng_for(31, 0);
        let b = imaginary_spine();
        for _ in 0..200 {
            let g = random_isometry(&mut rng);
            let moved = b.transform(&g);
            let t = rng.random_range(-3.0..3.0);
            let on = b.spine_point(t);
            assert!(b.membership(&on).on);
            assert!(moved.membership(&g.apply_point(&on)).on);
            let p = random_ball_point(&mut rng, 3.0);
            let (d0, d1) = (b.signed_distance(&p), moved.signed_distance(&g.apply_point(&p)));
            assert!((d0 - d1).abs() < 1e-8, "{d0} {d1}");
        }
    }

    #[test]
    fn projection_radius_normal_configuration() {
        // L = {(0,w)} meets the carrier {(z,0)} at the origin; spine at distance 1.
        let x = 0.5f64.tanh();
        let f = axis_translation(x).unwrap();
        let b = imaginary_spine().transform(&f);
        let l = ComplexLine::coordinate_z2();
        let r = bisector_projection_radius(&b, &l).unwrap();
        assert_relative_eq!(r, s_function(1.0).unwrap(), epsilon = 1e-12);
        // Sampled: fibre points over the spine, projected to L.
        let m = b.carrier().polar().0;
        let mut rng = rng_for(32, 0);
        let mut sup = 0.0f64;
        for _ in 0..10_000 {
            let q = b.spine_vector(rng.random_range(-3.0..3.0));
            let q = q * C64::new(1.0 / (-form3(&q, &q).re).sqrt(), 0.0);
            let u: f64 = rng.random_range(0.0..14.0);
            let dir = C64::from_polar((0.5 * u).sinh(), rng.random_range(0.0..std::f64::consts::TAU));
            let v = q * C64::new((0.5 * u).cosh(), 0.0) + m * dir;
            let proj = BallPoint::from_negative(&l.project_raw(&v));
            sup = sup.max(bergman_distance(&BallPoint::origin(), &proj));
        }
        assert!(sup <= r + 1e-6 && r - sup < 1e-3, "sup {sup} r {r}");
        let far = imaginary_spine().transform(&axis_translation(7.5f64.tanh()).unwrap());
        assert_relative_eq!(
            bisector_projection_radius(&far, &l).unwrap(),
            s_function(15.0).unwrap(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn projection_radius_requires_orthogonality() {
        let b = imaginary_spine().transform(&axis_translation(0.3).unwrap());
        let l = ComplexLine::from_polar(&HVector::real(1.0, -1.0, 0.0).unwrap()).unwrap();
        assert!(matches!(bisector_projection_radius(&b, &l), Err(Error::NotInGeneralPosition(_))));
        let through = ComplexLine::coordinate_z2();
        assert!(matches!(
            bisector_projection_radius(&imaginary_spine(), &through),
            Err(Error::NotInGeneralPosition(_))
        ));
    }
}
