//! Complex hyperbolic 2-space in the ball model.
//!
//! Points of the ball `|z1|^2 + |z2|^2 < 1` are lifted to `C^{2,1}` with the
//! Hermitian form of signature (2,1). Complex lines are carried by unit
//! positive polar vectors and isometries by `SU(2,1)` matrices. On top of that
//! sit the tube and wedge volume formulas, the collar-width and eigenvalue
//! bound calculators, and the C-Fuchsian combination machinery (bisectors,
//! ping-pong sampling, free-product word enumeration).
//!
//! All lengths, areas and volumes use the normalization in which complex
//! lines have curvature -1.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod groups;
pub mod isometry;
pub mod lines;
pub mod measure;
pub mod sampling;
pub mod tolerance;
pub mod tubes;
pub mod vector;

pub use error::{Error, Result};
pub use isometry::{Holonomy, Isometry};
pub use lines::{ComplexLine, LinePairClass, NormalizedPair};
pub use vector::{BallPoint, BoundaryPoint, HVector, ProjectivePoint, C64};
