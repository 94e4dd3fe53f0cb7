//! Numerical tolerances shared across the crate.

/// Algebraic identity checks (form values, J-unitarity, projective equality).
pub const ALGEBRAIC: f64 = 1e-9;

/// Classification of null vectors: `|<v,v>| / |v3|^2` at or below this is null.
pub const NULL: f64 = 1e-9;

/// Boundary membership: `| |z|^2 - 1 |` at or below this is on the sphere.
pub const UNIT: f64 = 1e-9;

/// Width of the asymptotic band in the N-invariant trichotomy.
pub const CLASSIFY: f64 = 1e-9;

/// Geometric incidence decisions (point on a line, point on a bisector).
pub const GEOMETRIC: f64 = 1e-8;

/// Slack allowed in certificate inequalities.
pub const CERTIFICATE: f64 = 1e-9;

/// Pivot threshold for Gram-Schmidt under the indefinite form.
pub const PIVOT: f64 = 1e-12;

/// Relative J-unitarity residual above which a product is re-projected.
pub const REUNITARIZE: f64 = 1e-10;
