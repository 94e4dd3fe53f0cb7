//! Vectors of `C^{2,1}`, points of the ball and of its boundary sphere.

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

pub type C64 = Complex64;

/// The signature-(2,1) Hermitian form `p1 q1* + p2 q2* - p3 q3*`.
///
/// Linear in the first argument, conjugate-linear in the second.
pub fn hermitian_form(p: &HVector, q: &HVector) -> C64 {
    form3(&p.0, &q.0)
}

#[inline]
pub(crate) fn form3(p: &Vector3<C64>, q: &Vector3<C64>) -> C64 {
    p[0] * q[0].conj() + p[1] * q[1].conj() - p[2] * q[2].conj()
}

/// Hermitian cross product: the result is form-orthogonal to both inputs.
#[inline]
pub(crate) fn cross3(p: &Vector3<C64>, q: &Vector3<C64>) -> Vector3<C64> {
    Vector3::new(
        (p[1] * q[2] - p[2] * q[1]).conj(),
        (p[2] * q[0] - p[0] * q[2]).conj(),
        (p[1] * q[0] - p[0] * q[1]).conj(),
    )
}

/// A non-zero vector of `C^{2,1}`.
///
/// Equality is projective: see [`HVector::projective_eq`].
#[derive(Clone, Copy, Debug)]
pub struct HVector(pub(crate) Vector3<C64>);

impl HVector {
    pub fn new(v1: C64, v2: C64, v3: C64) -> Result<Self> {
        Self::from_vector(Vector3::new(v1, v2, v3))
    }

    pub fn from_vector(v: Vector3<C64>) -> Result<Self> {
        if v.iter().all(|c| c.norm_sqr() == 0.0) || v.iter().any(|c| !c.is_finite()) {
            return Err(Error::ZeroVector);
        }
        Ok(HVector(v))
    }

    /// Real-coordinate shorthand, mostly for tests and fixtures.
    pub fn real(v1: f64, v2: f64, v3: f64) -> Result<Self> {
        Self::new(C64::new(v1, 0.0), C64::new(v2, 0.0), C64::new(v3, 0.0))
    }

    pub fn as_vector(&self) -> &Vector3<C64> {
        &self.0
    }

    pub fn components(&self) -> [C64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    /// `<v, v>`, which is real.
    pub fn norm_form(&self) -> f64 {
        form3(&self.0, &self.0).re
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_negative(&self) -> bool {
        self.norm_form() < 0.0
    }

    pub fn is_positive(&self) -> bool {
        self.norm_form() > 0.0
    }

    /// Rescale so that the largest-magnitude coordinate is real and positive
    /// and the Euclidean norm is one.
    pub fn projective_normal_form(&self) -> Vector3<C64> {
        let pivot = self.0.iter().copied().max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr())).unwrap();
        let phase = pivot.conj() / pivot.norm();
        self.0 * (phase / self.0.norm())
    }

    /// Euclidean distance between the unit-normalized vectors after the
    /// best phase alignment; zero exactly for complex multiples.
    pub fn projective_distance(&self, other: &HVector) -> f64 {
        let a = self.0 * C64::new(1.0 / self.0.norm(), 0.0);
        let b = other.0 * C64::new(1.0 / other.0.norm(), 0.0);
        let inner = a.dotc(&b);
        if inner.norm() == 0.0 {
            return std::f64::consts::SQRT_2;
        }
        let phase = inner.conj() / inner.norm();
        (a - b * phase).norm()
    }

    /// True when `other` is a complex multiple of `self` within `tol`.
    pub fn projective_eq(&self, other: &HVector, tol: f64) -> bool {
        self.projective_distance(other) <= tol
    }
}

/// A point of the open unit ball in `C^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallPoint {
    z1: C64,
    z2: C64,
}

impl BallPoint {
    pub fn new(z1: C64, z2: C64) -> Result<Self> {
        let r2 = z1.norm_sqr() + z2.norm_sqr();
        if !(r2 < 1.0) {
            return Err(Error::OutsideBall(r2));
        }
        Ok(BallPoint { z1, z2 })
    }

    pub fn real(x1: f64, x2: f64) -> Result<Self> {
        Self::new(C64::new(x1, 0.0), C64::new(x2, 0.0))
    }

    pub fn origin() -> Self {
        BallPoint { z1: C64::new(0.0, 0.0), z2: C64::new(0.0, 0.0) }
    }

    pub fn z1(&self) -> C64 {
        self.z1
    }

    pub fn z2(&self) -> C64 {
        self.z2
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    /// The standard lift `(z1, z2, 1)`.
    pub fn lift(&self) -> HVector {
        standard_lift(self)
    }

    /// Projectivize a vector known to be negative.
    ///
    /// Rounding can push a vector that is negative in exact arithmetic just
    /// outside the ball; such points are pulled back radially to the largest
    /// representable radius below one.
    pub(crate) fn from_negative(v: &Vector3<C64>) -> Self {
        let z1 = v[0] / v[2];
        let z2 = v[1] / v[2];
        let r2 = z1.norm_sqr() + z2.norm_sqr();
        if r2 < 1.0 {
            BallPoint { z1, z2 }
        } else {
            let k = (1.0 - f64::EPSILON) / r2.sqrt();
            BallPoint { z1: z1 * k, z2: z2 * k }
        }
    }
}

/// A point of the boundary sphere `|z1|^2 + |z2|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    z1: C64,
    z2: C64,
}

impl BoundaryPoint {
    pub fn new(z1: C64, z2: C64) -> Result<Self> {
        let r2 = z1.norm_sqr() + z2.norm_sqr();
        if (r2 - 1.0).abs() > tolerance::UNIT || !r2.is_finite() {
            return Err(Error::NotOnBoundary(r2));
        }
        Ok(BoundaryPoint { z1, z2 })
    }

    pub fn z1(&self) -> C64 {
        self.z1
    }

    pub fn z2(&self) -> C64 {
        self.z2
    }

    /// The null vector `(z1, z2, 1)`.
    pub fn lift(&self) -> HVector {
        HVector(Vector3::new(self.z1, self.z2, C64::new(1.0, 0.0)))
    }

    /// Radial pullback into the ball by the factor `k < 1`.
    pub fn pulled_back(&self, k: f64) -> BallPoint {
        BallPoint::from_negative(&Vector3::new(self.z1 * k, self.z2 * k, C64::new(1.0, 0.0)))
    }
}

/// Result of [`projectivize`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectivePoint {
    Interior(BallPoint),
    Boundary(BoundaryPoint),
}

pub fn standard_lift(p: &BallPoint) -> HVector {
    HVector(Vector3::new(p.z1, p.z2, C64::new(1.0, 0.0)))
}

/// Affine chart `v -> (v1/v3, v2/v3)`, sorting negative from null vectors.
pub fn projectivize(v: &HVector) -> Result<ProjectivePoint> {
    let v3 = v.0[2];
    if v3.norm() <= tolerance::ALGEBRAIC * v.0.norm() {
        return Err(Error::PolarAtInfinity);
    }
    let z1 = v.0[0] / v3;
    let z2 = v.0[1] / v3;
    let value = z1.norm_sqr() + z2.norm_sqr() - 1.0;
    if value > tolerance::NULL {
        Err(Error::PositiveVector(value))
    } else if value >= -tolerance::NULL {
        let k = 1.0 / (value + 1.0).sqrt();
        Ok(ProjectivePoint::Boundary(BoundaryPoint { z1: z1 * k, z2: z2 * k }))
    } else {
        Ok(ProjectivePoint::Interior(BallPoint { z1, z2 }))
    }
}

/// Polar vector of the complex line spanned by two vectors.
pub fn polar_of_span(p: &HVector, q: &HVector) -> Result<HVector> {
    let n = cross3(&p.0, &q.0);
    if n.norm() <= tolerance::ALGEBRAIC * p.0.norm() * q.0.norm() {
        return Err(Error::DegenerateSpan);
    }
    Ok(HVector(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn form_examples() {
        let e1 = HVector::real(1.0, 0.0, 0.0).unwrap();
        let e3 = HVector::real(0.0, 0.0, 1.0).unwrap();
        assert_eq!(hermitian_form(&e1, &e1), c(1.0, 0.0));
        assert_eq!(hermitian_form(&e3, &e3), c(-1.0, 0.0));
        let p = HVector::new(c(1.0, 0.0), c(0.0, 2.0), c(1.0, 0.0)).unwrap();
        let q = HVector::new(c(0.0, 1.0), c(0.0, 0.0), c(2.0, 0.0)).unwrap();
        assert_eq!(hermitian_form(&p, &q), c(-2.0, -1.0));
    }

    #[test]
    fn lift_examples() {
        let v = standard_lift(&BallPoint::real(0.5, 0.0).unwrap());
        assert_relative_eq!(v.norm_form(), -0.75);
        let v = standard_lift(&BallPoint::new(c(0.0, 0.0), c(0.0, 0.8)).unwrap());
        assert_relative_eq!(v.norm_form(), -0.36, epsilon = 1e-15);
        assert_eq!(standard_lift(&BallPoint::origin()).components()[2], c(1.0, 0.0));
    }

    #[test]
    fn projectivize_examples() {
        let p = projectivize(&HVector::real(1.0, 0.0, 2.0).unwrap()).unwrap();
        assert_eq!(p, ProjectivePoint::Interior(BallPoint::real(0.5, 0.0).unwrap()));
        let p = projectivize(&HVector::real(0.0, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!(p, ProjectivePoint::Interior(BallPoint::origin()));
        match projectivize(&HVector::real(1.0, 0.0, 1.0).unwrap()).unwrap() {
            ProjectivePoint::Boundary(b) => assert_eq!(b.z1(), c(1.0, 0.0)),
            other => panic!("expected boundary point, got {other:?}"),
        }
        assert_eq!(projectivize(&HVector::real(1.0, 0.0, 0.0).unwrap()), Err(Error::PolarAtInfinity));
        assert!(matches!(projectivize(&HVector::real(2.0, 0.0, 1.0).unwrap()), Err(Error::PositiveVector(_))));
    }

    #[test]
    fn polar_examples() {
        let o = BallPoint::origin().lift();
        let n = polar_of_span(&o, &BallPoint::real(0.0, 0.5).unwrap().lift()).unwrap();
        assert!(n.projective_eq(&HVector::real(1.0, 0.0, 0.0).unwrap(), 1e-12));
        let n = polar_of_span(&o, &BallPoint::real(0.5, 0.0).unwrap().lift()).unwrap();
        assert!(n.projective_eq(&HVector::real(0.0, 1.0, 0.0).unwrap(), 1e-12));
        let p = HVector::new(c(0.1, 0.2), c(0.3, -0.1), c(1.0, 0.0)).unwrap();
        let q = HVector(p.0 * c(0.0, 2.0));
        assert_eq!(polar_of_span(&p, &q).unwrap_err(), Error::DegenerateSpan);
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(HVector::real(0.0, 0.0, 0.0).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn projective_equality_ignores_phase() {
        let v = HVector::new(c(0.3, 0.1), c(-0.2, 0.5), c(1.0, 0.0)).unwrap();
        let w = HVector(v.0 * C64::from_polar(3.0, 1.1));
        assert!(v.projective_eq(&w, 1e-14));
        let a = v.projective_normal_form();
        let b = w.projective_normal_form();
        assert!((a - b).norm() < 1e-14);
    }
}
