//! `SU(2,1)` representatives: explicit constructors, the group operations,
//! the action on points and lines, and holonomy about an invariant line.

use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::{Matrix2, Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::lines::{normalize_pair, ComplexLine};
use crate::tolerance;
use crate::vector::{form3, BallPoint, BoundaryPoint, HVector, C64};

const SIGNS: [f64; 3] = [1.0, 1.0, -1.0];

#[inline]
fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `J m* J`, the inverse of a J-unitary matrix.
fn j_adjoint(m: &Matrix3<C64>) -> Matrix3<C64> {
    Matrix3::from_fn(|i, j| m[(j, i)].conj() * (SIGNS[i] * SIGNS[j]))
}

fn max_abs(m: &Matrix3<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |m* J m - J|`, relative to `max(1, |m|_F^2)`.
fn unitarity_residual(m: &Matrix3<C64>) -> f64 {
    let r = j_adjoint(m) * m - Matrix3::identity();
    max_abs(&r) / m.norm_squared().max(1.0)
}

/// Multiply by the cube root that brings a unit determinant to one.
fn fix_determinant(m: Matrix3<C64>) -> Matrix3<C64> {
    let det = m.determinant();
    m * C64::from_polar(1.0, -det.arg() / 3.0)
}

/// An isometry of the ball, stored as a matrix in `SU(2,1)`.
#[derive(Clone, Copy, Debug)]
pub struct Isometry {
    m: Matrix3<C64>,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry { m: Matrix3::identity() }
    }

    /// Validate a J-unitary matrix of determinant one.
    pub fn from_matrix(m: Matrix3<C64>) -> Result<Self> {
        if m.iter().any(|z| !z.is_finite()) {
            return Err(Error::NotUnitary("non-finite entry".into()));
        }
        let res = unitarity_residual(&m);
        if res > tolerance::ALGEBRAIC {
            return Err(Error::NotUnitary(format!("m* J m - J has relative residual {res:e}")));
        }
        let det = m.determinant();
        if (det - c(1.0, 0.0)).norm() > tolerance::ALGEBRAIC {
            return Err(Error::NotUnitary(format!("determinant {det} is not 1")));
        }
        Ok(Isometry { m })
    }

    /// Accept a J-unitary matrix with any unit determinant, rescaling it by a
    /// cube root into `SU(2,1)`.
    pub fn from_unitary(m: Matrix3<C64>) -> Result<Self> {
        if m.iter().any(|z| !z.is_finite()) {
            return Err(Error::NotUnitary("non-finite entry".into()));
        }
        let res = unitarity_residual(&m);
        if res > tolerance::ALGEBRAIC {
            return Err(Error::NotUnitary(format!("m* J m - J has relative residual {res:e}")));
        }
        Ok(Isometry { m: fix_determinant(m) })
    }

    pub fn matrix(&self) -> &Matrix3<C64> {
        &self.m
    }

    pub fn det(&self) -> C64 {
        self.m.determinant()
    }

    /// Relative J-unitarity residual of the stored matrix.
    pub fn residual(&self) -> f64 {
        unitarity_residual(&self.m)
    }

    /// `self ∘ other`.
    ///
    /// Products drifting off the group by more than the re-unitarization
    /// threshold get one Newton step back onto it.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let m = self.m * other.m;
        if unitarity_residual(&m) > tolerance::REUNITARIZE {
            Isometry { m: (m * C64::new(3.0, 0.0) - m * j_adjoint(&m) * m) * C64::new(0.5, 0.0) }
        } else {
            Isometry { m }
        }
    }

    pub fn inverse(&self) -> Isometry {
        Isometry { m: j_adjoint(&self.m) }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i32) -> Isometry {
        let base = if k < 0 { self.inverse() } else { *self };
        (0..k.unsigned_abs()).fold(Isometry::identity(), |acc, _| acc.compose(&base))
    }

    pub fn conjugate_by(&self, h: &Isometry) -> Isometry {
        h.compose(self).compose(&h.inverse())
    }

    pub fn apply_vector(&self, v: &HVector) -> HVector {
        HVector(self.m * v.0)
    }

    pub(crate) fn apply_raw(&self, v: &Vector3<C64>) -> Vector3<C64> {
        self.m * v
    }

    pub fn apply_point(&self, p: &BallPoint) -> BallPoint {
        BallPoint::from_negative(&(self.m * p.lift().0))
    }

    pub fn apply_boundary(&self, b: &BoundaryPoint) -> BoundaryPoint {
        let v = self.m * b.lift().0;
        let z1 = v[0] / v[2];
        let z2 = v[1] / v[2];
        let k = 1.0 / (z1.norm_sqr() + z2.norm_sqr()).sqrt();
        BoundaryPoint::new(z1 * k, z2 * k).expect("renormalized onto the sphere")
    }

    /// Polar vectors transform by the same matrix as points.
    pub fn apply_line(&self, l: &ComplexLine) -> ComplexLine {
        ComplexLine::from_polar_unchecked(self.m * l.polar().0)
    }

    pub fn stabilizes(&self, l: &ComplexLine, tol: f64) -> bool {
        self.apply_line(l).same_line(l, tol)
    }

    /// Equality in `PU(2,1)`: after aligning the overall phase, entries
    /// agree within `tol` relative to the matrix scale.
    pub fn projective_eq(&self, other: &Isometry, tol: f64) -> bool {
        let inner: C64 = other.m.iter().zip(self.m.iter()).map(|(b, a)| b.conj() * a).sum();
        if inner.norm() == 0.0 {
            return false;
        }
        let b = other.m * (inner / inner.norm());
        max_abs(&(self.m - b)) <= tol * max_abs(&self.m).max(1.0)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.projective_eq(&Isometry::identity(), tol)
    }

    /// Roots of the characteristic polynomial.
    pub fn eigenvalues(&self) -> [C64; 3] {
        let m = &self.m;
        let tr = m.trace();
        let minors = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)] + m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)]
            + m[(1, 1)] * m[(2, 2)]
            - m[(1, 2)] * m[(2, 1)];
        cubic_roots(tr, minors, m.determinant())
    }

    /// `2 log |lambda_max|`: the translation length of a loxodromic element
    /// along its real geodesic axis.
    pub fn translation_length(&self) -> f64 {
        let top = self.eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max);
        2.0 * top.ln().max(0.0)
    }
}

impl Mul for Isometry {
    type Output = Isometry;
    fn mul(self, rhs: Isometry) -> Isometry {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a Isometry> for &'a Isometry {
    type Output = Isometry;
    fn mul(self, rhs: &Isometry) -> Isometry {
        self.compose(rhs)
    }
}

/// Roots of `z^3 - a z^2 + b z - c` by Durand-Kerner with Newton polishing.
fn cubic_roots(a: C64, b: C64, c0: C64) -> [C64; 3] {
    let p = |z: C64| ((z - a) * z + b) * z - c0;
    let dp = |z: C64| (z * 3.0 - a * 2.0) * z + b;
    let scale = 1.0 + a.norm().max(b.norm()).max(c0.norm());
    let seed = c(0.4, 0.9);
    let mut r = [seed * scale, seed * seed * scale, seed * seed * seed * scale];
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..3 {
            let mut denom = c(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    denom *= r[i] - r[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = c(1e-300, 0.0);
            }
            let step = p(r[i]) / denom;
            r[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-15 * scale {
            break;
        }
    }
    for z in r.iter_mut() {
        for _ in 0..3 {
            let d = dp(*z);
            if d.norm() == 0.0 {
                break;
            }
            *z -= p(*z) / d;
        }
    }
    r
}

/// Oriented rotation angle about an invariant line, in `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Holonomy(f64);

impl Holonomy {
    pub fn new(psi: f64) -> Self {
        let r = psi.rem_euclid(2.0 * PI);
        Holonomy(if r > PI { r - 2.0 * PI } else { r })
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// Distance to `other` on the circle.
    pub fn circle_distance(&self, other: f64) -> f64 {
        Holonomy::new(self.0 - other).0.abs()
    }
}

/// The normalized loxodromic `g_w^psi`: translation inside `{(0,w)}` taking
/// the origin to `(0,w)`, composed with rotation by `psi` about that line.
pub fn normalized_loxodromic(w: C64, psi: f64) -> Result<Isometry> {
    let r = w.norm();
    if !(r < 1.0) {
        return Err(Error::OutOfBall(r));
    }
    if !psi.is_finite() {
        return Err(Error::ParameterOutOfRange { name: "psi", value: psi });
    }
    let k = 1.0 / (1.0 - r * r).sqrt();
    let a = C64::from_polar(1.0, 2.0 * psi / 3.0);
    let b = C64::from_polar(k, -psi / 3.0);
    let zero = c(0.0, 0.0);
    let m = Matrix3::new(a, zero, zero, zero, b, w * b, zero, w.conj() * b, b);
    Ok(Isometry { m })
}

/// Translation `f_x` along the real axis of `{(z,0)}` taking the origin to `(x,0)`.
pub fn axis_translation(x: f64) -> Result<Isometry> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::ParameterOutOfRange { name: "x", value: x });
    }
    Ok(signed_axis_translation(x))
}

/// `f_x` for any `x` in `(-1, 1)`, including the identity at zero.
pub(crate) fn signed_axis_translation(x: f64) -> Isometry {
    let k = 1.0 / (1.0 - x * x).sqrt();
    let zero = c(0.0, 0.0);
    let (a, b) = (c(k, 0.0), c(x * k, 0.0));
    Isometry { m: Matrix3::new(a, zero, b, zero, c(1.0, 0.0), zero, b, zero, a) }
}

/// Rotation `(z1, z2) -> (z1, e^{i alpha} z2)`; it fixes `{(z,0)}` pointwise
/// and rotates `{(0,w)}` about the origin.
pub fn line_rotation(alpha: f64) -> Isometry {
    let mu = C64::from_polar(1.0, -alpha / 3.0);
    Isometry { m: Matrix3::from_diagonal(&Vector3::new(mu, mu * C64::from_polar(1.0, alpha), mu)) }
}

/// Block embedding `diag(1, B)` of an `SU(1,1)` matrix acting on `(z2, z3)`.
pub fn embed_su11(b: &Matrix2<C64>) -> Result<Isometry> {
    let zero = c(0.0, 0.0);
    let m = Matrix3::new(c(1.0, 0.0), zero, zero, zero, b[(0, 0)], b[(0, 1)], zero, b[(1, 0)], b[(1, 1)]);
    Isometry::from_matrix(m)
}

/// A J-orthonormal frame carrying `{(0,w)}` to `l` and the origin to `base`.
pub fn line_frame_at(l: &ComplexLine, base: &BallPoint) -> Result<Isometry> {
    let dist = l.distance_to_point(base);
    if dist > tolerance::GEOMETRIC {
        return Err(Error::PointOffLine(dist));
    }
    // Remove the residual off-line component before building the frame.
    let b = l.project_raw(&base.lift().0);
    Ok(frame_from(&l.polar().0, &b))
}

/// [`line_frame_at`] with the base point at the projection of the origin.
pub fn line_frame(l: &ComplexLine) -> Isometry {
    let b = l.project_raw(&BallPoint::origin().lift().0);
    frame_from(&l.polar().0, &b)
}

/// Frame with first column the unit positive `n` and third column the
/// normalized negative `b`, which must be form-orthogonal to `n`.
pub(crate) fn frame_from(n: &Vector3<C64>, b: &Vector3<C64>) -> Isometry {
    let e3 = b * C64::new(1.0 / (-form3(b, b).re).sqrt(), 0.0);
    let e2 = crate::vector::cross3(&e3, n);
    let e2 = e2 * C64::new(1.0 / form3(&e2, &e2).re.sqrt(), 0.0);
    let f = Matrix3::from_columns(&[*n, e2, e3]);
    Isometry { m: fix_determinant(f) }
}

/// Conjugate `g` into the frame and split off the `(1, 2x2)` block form.
fn stabilizer_blocks(g: &Isometry, frame: &Isometry) -> Result<(C64, Matrix2<C64>)> {
    let h = frame.inverse().m * g.m * frame.m;
    let off = [h[(0, 1)], h[(0, 2)], h[(1, 0)], h[(2, 0)]].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = max_abs(&h).max(1.0);
    if off > tolerance::ALGEBRAIC * scale {
        return Err(Error::NotStabilizing(off / scale));
    }
    let b = Matrix2::new(h[(1, 1)], h[(1, 2)], h[(2, 1)], h[(2, 2)]);
    Ok((h[(0, 0)], b))
}

/// Holonomy of `g` about its invariant line `l`.
///
/// In a frame where `l = {(0,w)}` the matrix is `diag(a, B)`. Writing
/// `B = e^{i phi} B0` with `B0` in `SU(1,1)` and `tr B0 > 0`, the holonomy is
/// `arg a - phi`. This is a class function on the stabilizer, so
/// `hol(fg) = hol(gf)`, and it returns `psi` on `g_w^psi`.
pub fn holonomy_of(g: &Isometry, l: &ComplexLine) -> Result<Holonomy> {
    let (a, b) = stabilizer_blocks(g, &line_frame(l))?;
    let root = b.determinant().sqrt();
    if root.norm() == 0.0 {
        return Err(Error::NotStabilizing(0.0));
    }
    let b0 = b / root;
    let tr = b0.trace().re;
    let ident = (b0 - Matrix2::identity()).norm().min((b0 + Matrix2::identity()).norm());
    let parabolic = (tr.abs() - 2.0).abs() <= 1e-12 && ident > 1e-9;
    if tr.abs() <= 1e-12 || parabolic {
        return Err(Error::NotStabilizing(tr));
    }
    let phi = if tr < 0.0 { root.arg() + PI } else { root.arg() };
    Ok(Holonomy::new(a.arg() - phi))
}

/// Holonomy of `g` measured at a base point of `l`.
///
/// `g` is split as a translation in `l` taking `base` to `g(base)`, followed
/// after a rotation fixing `base`; the result is the rotation angle normal to
/// `l` of that rotation, relative to its turning inside `l`.
pub fn foot_holonomy(g: &Isometry, l: &ComplexLine, base: &BallPoint) -> Result<Holonomy> {
    let frame = line_frame_at(l, base)?;
    let (a, b) = stabilizer_blocks(g, &frame)?;
    let w = b[(0, 1)] / b[(1, 1)];
    let k = 1.0 / (1.0 - w.norm_sqr()).sqrt();
    // Second diagonal entry of T_w^{-1} B.
    let c3 = (b[(1, 1)] - w.conj() * b[(0, 1)]) * k;
    Ok(Holonomy::new(a.arg() - c3.arg()))
}

/// Replace `gamma` in `Stab(l1)` by the normalized loxodromic with the same
/// image of the orthogeodesic foot and the same holonomy at that foot.
///
/// The normal form is taken with respect to the pair `(l1, l2)`; in that
/// frame the result is `g_w^psi` with `w = gamma(0)`.
pub fn reduce_stabilizer_element(gamma: &Isometry, l1: &ComplexLine, l2: &ComplexLine) -> Result<Isometry> {
    let pair = normalize_pair(l1, l2)?;
    let u = pair.mover;
    let local = gamma.conjugate_by(&u);
    let std_line = ComplexLine::coordinate_z2();
    let psi = foot_holonomy(&local, &std_line, &BallPoint::origin())?;
    let w = local.apply_point(&BallPoint::origin()).z2();
    let g = normalized_loxodromic(w, psi.value())?;
    Ok(g.conjugate_by(&u.inverse()))
}

/// `N(L2, g L2)` in closed form for `L1 = {(0,w)}`, `L2` with polar
/// `(1/x, 0, 1)` and `g = g_w^psi`, `|w| = r`.
pub fn loxodromic_n_closed_form(x: f64, r: f64, psi: f64) -> f64 {
    let (x2, q) = (x * x, 1.0 - r * r);
    (q - 2.0 * x2 * q.sqrt() * psi.cos() + x2 * x2) / ((1.0 - x2) * (1.0 - x2) * q)
}

/// Radius `r*` at which `N(L2, g_w^0 L2) = 1` for `L2` at `x = tanh(d/2)`.
pub fn trivial_holonomy_threshold(x: f64) -> f64 {
    2.0 * (1.0 - x * x).sqrt() / (2.0 - x * x)
}
