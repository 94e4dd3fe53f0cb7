//! Closed-form bounds: collar widths, the holonomy angle bound, widths of
//! disjoint tubes, volume lower bounds, eigenvalue upper bounds and the
//! bounds on the optimal tube function.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lines::s_function;
use crate::measure::{normal_factor, tube_volume};

/// A closed hyperbolic surface given by Euler characteristic or by area.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SurfaceData {
    EulerCharacteristic(i64),
    Area(f64),
}

impl SurfaceData {
    /// Area, converting an Euler characteristic by Gauss-Bonnet.
    pub fn area(&self) -> Result<f64> {
        match *self {
            SurfaceData::EulerCharacteristic(chi) => gauss_bonnet_area(chi),
            SurfaceData::Area(a) if a > 0.0 && a.is_finite() => Ok(a),
            SurfaceData::Area(a) => Err(Error::NonPositiveArea(a)),
        }
    }
}

/// `A = 2 pi |chi|` for a closed surface of curvature -1.
pub fn gauss_bonnet_area(chi: i64) -> Result<f64> {
    if chi >= 0 {
        return Err(Error::NonNegativeChi(chi));
    }
    Ok(TAU * chi.unsigned_abs() as f64)
}

fn check_area(a: f64) -> Result<f64> {
    if a > 0.0 && a.is_finite() {
        Ok(a)
    } else {
        Err(Error::NonPositiveArea(a))
    }
}

fn abs_chi(chi: i64) -> Result<f64> {
    if chi >= 0 {
        return Err(Error::NonNegativeChi(chi));
    }
    Ok(chi.unsigned_abs() as f64)
}

/// `c(A) = (1/4) log(2/A + 1)`.
pub fn collar_width_area(a: f64) -> Result<f64> {
    let a = check_area(a)?;
    Ok(0.25 * (2.0 / a).ln_1p())
}

/// `(1/4) log(1/(pi |chi|) + 1)`.
pub fn collar_width_chi(chi: i64) -> Result<f64> {
    Ok(0.25 * (1.0 / (PI * abs_chi(chi)?)).ln_1p())
}

/// `(1 + tanh(d/2)) / 2`, the bound on `cos psi` for elements moving a line
/// at distance `d` at least as far as `d`.
pub fn holonomy_cos_bound(d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::NonPositiveDistance(d));
    }
    Ok(0.5 * (1.0 + (0.5 * d).tanh()))
}

/// `(1/8) log(2/max(A1, A2) + 1)`.
pub fn two_surface_width(a1: f64, a2: f64) -> Result<f64> {
    let a = check_area(a1)?.max(check_area(a2)?);
    Ok(0.125 * (2.0 / a).ln_1p())
}

/// `(1/8) log(1/(pi max(|chi1|, |chi2|)) + 1)`.
pub fn two_surface_width_chi(chi1: i64, chi2: i64) -> Result<f64> {
    let c = abs_chi(chi1)?.max(abs_chi(chi2)?);
    Ok(0.125 * (1.0 / (PI * c)).ln_1p())
}

/// `4 pi^2 n |chi| [cosh^4((1/16) log(1/(pi|chi|) + 1)) - 1]`.
pub fn volume_lower_bound(n: u64, chi_max: i64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange { name: "n", value: 0.0 });
    }
    let c = abs_chi(chi_max).map_err(|_| Error::ParameterOutOfRange { name: "chi", value: chi_max as f64 })?;
    let width = 0.0625 * (1.0 / (PI * c)).ln_1p();
    Ok(4.0 * PI * PI * n as f64 * c * normal_factor(2.0 * width))
}

/// `2 pi n A [cosh^4((1/16) log(2/A + 1)) - 1]`.
pub fn volume_lower_bound_area(n: u64, a: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange { name: "n", value: 0.0 });
    }
    let a = check_area(a)?;
    let width = 0.0625 * (2.0 / a).ln_1p();
    Ok(TAU * n as f64 * a * normal_factor(2.0 * width))
}

/// `vol_N / (c^2 (vol_X - vol_N))`.
pub fn eigenvalue_bound_general(vol_x: f64, vol_n: f64, c: f64) -> Result<f64> {
    if !(vol_n > 0.0) {
        return Err(Error::ParameterOutOfRange { name: "vol_n", value: vol_n });
    }
    if !(c > 0.0) {
        return Err(Error::ParameterOutOfRange { name: "c", value: c });
    }
    if !(vol_x > vol_n) {
        return Err(Error::TubeExceedsManifold { vol_manifold: vol_x, vol_tube: vol_n });
    }
    Ok(vol_n / (c * c * (vol_x - vol_n)))
}

/// `64 pi^2 |chi| [cosh^4(l/8) - 1] / (l^2 (vol_X - 4 pi^2 |chi| [cosh^4(l/8) - 1]))`
/// with `l = log(1/(pi|chi|) + 1)`.
pub fn eigenvalue_bound_explicit(vol_x: f64, chi: i64) -> Result<f64> {
    let c = abs_chi(chi)?;
    let l = (1.0 / (PI * c)).ln_1p();
    let tube = 4.0 * PI * PI * c * normal_factor(0.25 * l);
    if !(vol_x > tube) {
        return Err(Error::TubeExceedsManifold { vol_manifold: vol_x, vol_tube: tube });
    }
    Ok(16.0 * tube / (l * l * (vol_x - tube)))
}

/// Lower and upper bounds on the optimal tube width for closed surfaces of
/// Euler characteristic `chi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TubeBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `lower = (1/4) log(1/(pi|chi|) + 1)`;
/// `upper = s(acosh(cot((pi/2)/(|chi| + 2))))`, from a pair of genus
/// `|chi|/2 + 1` regular-polygon groups.
pub fn tube_function_bounds(chi: i64) -> Result<TubeBounds> {
    if chi > -2 || chi % 2 != 0 {
        return Err(Error::InvalidChi(chi));
    }
    let c = chi.unsigned_abs() as f64;
    let lower = collar_width_chi(chi)?;
    let inradius = (1.0 / (0.5 * PI / (c + 2.0)).tan()).acosh();
    Ok(TubeBounds { lower, upper: s_function(inradius)? })
}

/// Summary for one surface.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TubeReport {
    pub surface: SurfaceData,
    pub area: f64,
    pub width: f64,
    pub volume_lower_bound: f64,
}

pub fn tube_report(surface: SurfaceData) -> Result<TubeReport> {
    let area = surface.area()?;
    Ok(TubeReport {
        surface,
        area,
        width: collar_width_area(area)?,
        volume_lower_bound: volume_lower_bound_area(1, area)?,
    })
}

/// `(A/2)(e^d - 1)`: the bound on the smallest holonomy angle of elements
/// whose projected discs overlap, for a surface of area `A` at distance `d`.
pub fn holonomy_budget(a: f64, d: f64) -> Result<f64> {
    let a = check_area(a)?;
    if !(d > 0.0) {
        return Err(Error::NonPositiveDistance(d));
    }
    Ok(0.5 * a * d.exp_m1())
}

/// Solve `1 - holonomy_cos_bound(d) = holonomy_budget(A, d)` by bisection.
///
/// Its closed form is `(1/2) log(2/A + 1)`.
pub fn critical_distance(a: f64) -> Result<f64> {
    let a = check_area(a)?;
    let f = |d: f64| (1.0 - 0.5 * (1.0 + (0.5 * d).tanh())) - 0.5 * a * d.exp_m1();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `min{log(pi/A + 1), (1/2) log(2/A + 1)}`.
pub fn case_split_minimum(a: f64) -> Result<f64> {
    let a = check_area(a)?;
    Ok((PI / a).ln_1p().min(0.5 * (2.0 / a).ln_1p()))
}

/// Volume of the `eps`-tube over a whole surface.
pub fn tube_volume_of_surface(surface: SurfaceData, eps: f64) -> Result<f64> {
    tube_volume(surface.area()?, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn collar_examples() {
        assert_relative_eq!(collar_width_area(2.0).unwrap(), 0.25 * 2f64.ln(), epsilon = 1e-16);
        assert!(collar_width_area(1e300).unwrap() < 1e-299);
        for chi in [-2, -4, -10] {
            let a = collar_width_area(gauss_bonnet_area(chi).unwrap()).unwrap();
            assert!((a - collar_width_chi(chi).unwrap()).abs() < 1e-14);
        }
        assert_eq!(collar_width_area(0.0), Err(Error::NonPositiveArea(0.0)));
        assert_eq!(collar_width_chi(1), Err(Error::NonNegativeChi(1)));
        let big = -1_000_000_000i64;
        let v = collar_width_chi(big).unwrap() * 4.0 * PI * 1e9;
        assert!((v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn holonomy_bound_limits() {
        assert_relative_eq!(holonomy_cos_bound(1e-12).unwrap(), 0.5, epsilon = 1e-12);
        assert!(holonomy_cos_bound(50.0).unwrap() > 1.0 - 1e-15);
        assert!(holonomy_cos_bound(0.0).is_err());
    }

    #[test]
    fn two_surface_examples() {
        assert_relative_eq!(two_surface_width(2.0, 2.0).unwrap(), 0.125 * 2f64.ln(), epsilon = 1e-16);
        assert_eq!(two_surface_width(3.0, 5.0).unwrap(), two_surface_width(5.0, 3.0).unwrap());
        assert_relative_eq!(
            two_surface_width(3.0, 5.0).unwrap(),
            0.5 * collar_width_area(5.0).unwrap(),
            epsilon = 1e-16
        );
        for (c1, c2) in [(-2, -4), (-6, -2), (-10, -10)] {
            let a = two_surface_width(gauss_bonnet_area(c1).unwrap(), gauss_bonnet_area(c2).unwrap()).unwrap();
            assert!((a - two_surface_width_chi(c1, c2).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn volume_bound_forms_agree() {
        for chi in -20..=-2 {
            let a = volume_lower_bound(1, chi).unwrap();
            let b = volume_lower_bound_area(1, gauss_bonnet_area(chi).unwrap()).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.max(1.0));
            assert_relative_eq!(volume_lower_bound(3, chi).unwrap(), 3.0 * a, max_relative = 1e-15);
        }
        assert!(volume_lower_bound(0, -2).is_err());
        assert!(volume_lower_bound(1, 0).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        assert_relative_eq!(eigenvalue_bound_general(10.0, 5.0, 1.0).unwrap(), 1.0);
        assert!(eigenvalue_bound_general(20.0, 5.0, 1.0).unwrap() < 1.0);
        assert!(matches!(eigenvalue_bound_general(5.0, 5.0, 1.0), Err(Error::TubeExceedsManifold { .. })));
        for chi in -10..=-2 {
            let c = collar_width_chi(chi).unwrap();
            let vol_n = tube_volume(gauss_bonnet_area(chi).unwrap(), c).unwrap();
            let general = eigenvalue_bound_general(100.0, vol_n, c).unwrap();
            let explicit = eigenvalue_bound_explicit(100.0, chi).unwrap();
            assert!((general - explicit).abs() <= 1e-12 * general, "{chi}: {general} {explicit}");
        }
        assert!(matches!(eigenvalue_bound_explicit(1e-3, -2), Err(Error::TubeExceedsManifold { .. })));
    }

    #[test]
    fn tube_function_examples() {
        let b = tube_function_bounds(-2).unwrap();
        assert!(b.lower < b.upper);
        assert!(matches!(tube_function_bounds(-3), Err(Error::InvalidChi(-3))));
        assert!(matches!(tube_function_bounds(0), Err(Error::InvalidChi(0))));
        for c in [1_000i64, 1_000_000] {
            let b = tube_function_bounds(-c).unwrap();
            let u = b.upper * (c as f64).sqrt() / (2.0 * PI.sqrt());
            assert!((u - 1.0).abs() < 0.05, "{c}: {u}");
            let l = b.lower * 4.0 * PI * c as f64;
            assert!(l <= 1.0 && l > 0.95);
        }
    }

    #[test]
    fn tube_report_fields() {
        let r = tube_report(SurfaceData::EulerCharacteristic(-2)).unwrap();
        assert_relative_eq!(r.area, 4.0 * PI);
        assert_relative_eq!(r.width, collar_width_chi(-2).unwrap(), epsilon = 1e-16);
        assert_relative_eq!(r.volume_lower_bound, volume_lower_bound(1, -2).unwrap(), max_relative = 1e-13);
        assert!(tube_report(SurfaceData::Area(-1.0)).is_err());
    }

    #[test]
    fn case_split_and_bisection() {
        for i in 0..=600 {
            let a = 10f64.powf(-3.0 + 0.01 * i as f64);
            let closed = 0.5 * (2.0 / a).ln_1p();
            assert!((case_split_minimum(a).unwrap() - closed).abs() <= 1e-15 * closed.max(1e-300));
            let solved = critical_distance(a).unwrap();
            assert!((solved - closed).abs() < 1e-9, "A {a}: {solved} vs {closed}");
        }
    }

    proptest! {
        #[test]
        fn widths_decrease(a in 1e-3f64..1e3, k in 1.001f64..10.0, c in 1i64..1000) {
            prop_assert!(collar_width_area(a * k).unwrap() < collar_width_area(a).unwrap());
            prop_assert!(collar_width_chi(-c - 1).unwrap() < collar_width_chi(-c).unwrap());
            prop_assert!(volume_lower_bound(2, -c).unwrap() > volume_lower_bound(1, -c).unwrap());
            prop_assert!(two_surface_width(a, a * k).unwrap() <= two_surface_width(a, a).unwrap());
        }
    }
}
