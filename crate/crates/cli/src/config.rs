//! TOML description of a pair of C-Fuchsian groups and their placement.
//!
//! ```toml
//! [group1]
//! construction = "regular_polygon"
//! genus = 2
//!
//! [group2]
//! construction = "schottky"
//! generators = 2
//! translation_length = 6.0
//!
//! [placement]
//! margin = 0.1      # or: distance = 4.2
//! rotation = 0.0
//! ```
//!
//! Both groups are described on the line `{(0,w)}` (or on the line with the
//! given `polar` for explicit matrices). The second group is then moved by
//! a translation of length `distance` along `{(z,0)}` after a rotation by
//! `rotation` about `{(z,0)}`.

use std::path::Path;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use chtube::groups::{regular_polygon_group, CFuchsianGroup};
use chtube::isometry::{axis_translation, line_rotation, normalized_loxodromic};
use chtube::lines::s_function;
use chtube::{BallPoint, ComplexLine, HVector, Isometry, C64};

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub group1: GroupSpec,
    pub group2: GroupSpec,
    pub placement: Placement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    RegularPolygon,
    Schottky,
    ExplicitMatrices,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub construction: Construction,
    /// Genus of the regular-polygon surface group.
    pub genus: Option<u32>,
    /// Number of Schottky generators.
    pub generators: Option<usize>,
    pub translation_length: Option<f64>,
    pub holonomy: Option<f64>,
    /// Rows of `"a+bi"` strings, one 3x3 matrix per generator.
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
    /// Polar vector of the invariant line as `"a+bi"` strings.
    pub polar: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Placement {
    pub distance: Option<f64>,
    pub margin: Option<f64>,
    #[serde(default)]
    pub rotation: f64,
}

/// Parse a config; errors lead with the dotted path of the offending key.
pub fn parse(text: &str) -> Result<Config, CliError> {
    let de = toml::Deserializer::parse(text).map_err(|e| CliError::Config(e.to_string()))?;
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Config(format!("{}: {}", e.path(), e.inner())))
}

pub fn load(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse(&text)
}

fn complex(key: &str, s: &str) -> Result<C64, CliError> {
    s.trim()
        .replace(' ', "")
        .parse::<C64>()
        .map_err(|_| CliError::Config(format!("{key}: `{s}` is not a complex number of the form a+bi")))
}

fn missing(group: &str, key: &str, construction: &str) -> CliError {
    CliError::Config(format!("{group}.{key}: required for construction {construction}"))
}

/// Loxodromics of translation length `t` along the `n` geodesics through the
/// origin of `{(0,w)}` at angles `k pi / n`, each with holonomy `psi`.
pub fn schottky_group(n: usize, t: f64, psi: f64) -> chtube::Result<CFuchsianGroup> {
    let r = (0.5 * t).tanh();
    let gens = (0..n)
        .map(|k| normalized_loxodromic(C64::from_polar(r, std::f64::consts::PI * k as f64 / n as f64), psi))
        .collect::<chtube::Result<Vec<_>>>()?;
    CFuchsianGroup::new(ComplexLine::coordinate_z2(), gens)
}

impl GroupSpec {
    pub fn build(&self, name: &str) -> Result<CFuchsianGroup, CliError> {
        match self.construction {
            Construction::RegularPolygon => {
                let genus = self.genus.ok_or_else(|| missing(name, "genus", "regular_polygon"))?;
                regular_polygon_group(genus).map_err(|e| CliError::Config(format!("{name}.genus: {e}")))
            }
            Construction::Schottky => {
                let n = self.generators.unwrap_or(2);
                let t = self.translation_length.ok_or_else(|| missing(name, "translation_length", "schottky"))?;
                if n == 0 || !(t > 0.0) {
                    return Err(CliError::Config(format!("{name}: need generators >= 1 and translation_length > 0")));
                }
                schottky_group(n, t, self.holonomy.unwrap_or(0.0)).map_err(|e| CliError::Config(format!("{name}: {e}")))
            }
            Construction::ExplicitMatrices => {
                let mats = self.matrices.as_ref().ok_or_else(|| missing(name, "matrices", "explicit_matrices"))?;
                let line = match &self.polar {
                    None => ComplexLine::coordinate_z2(),
                    Some(p) if p.len() == 3 => {
                        let key = format!("{name}.polar");
                        let v = HVector::new(complex(&key, &p[0])?, complex(&key, &p[1])?, complex(&key, &p[2])?)
                            .map_err(|e| CliError::Config(format!("{key}: {e}")))?;
                        ComplexLine::from_polar(&v).map_err(|e| CliError::Config(format!("{key}: {e}")))?
                    }
                    Some(_) => return Err(CliError::Config(format!("{name}.polar: expected 3 entries"))),
                };
                let mut gens = Vec::with_capacity(mats.len());
                for (i, m) in mats.iter().enumerate() {
                    let key = format!("{name}.matrices[{i}]");
                    if m.len() != 3 || m.iter().any(|row| row.len() != 3) {
                        return Err(CliError::Config(format!("{key}: expected a 3x3 matrix")));
                    }
                    let mut entries = [C64::new(0.0, 0.0); 9];
                    for (k, e) in entries.iter_mut().enumerate() {
                        *e = complex(&key, &m[k / 3][k % 3])?;
                    }
                    let mat = Matrix3::from_row_slice(&entries);
                    gens.push(Isometry::from_unitary(mat).map_err(|e| CliError::Config(format!("{key}: {e}")))?);
                }
                CFuchsianGroup::new(line, gens).map_err(|e| CliError::Config(format!("{name}.matrices: {e}")))
            }
        }
    }
}

/// `h G h^{-1}` for `h = f_x R_rotation` with `x = tanh(distance/2)`.
pub fn place(g: &CFuchsianGroup, distance: f64, rotation: f64) -> chtube::Result<CFuchsianGroup> {
    let h = axis_translation((0.5 * distance).tanh())?.compose(&line_rotation(rotation));
    Ok(g.conjugate_by(&h))
}

/// The two groups in position, with the translation distance used.
pub struct Placed {
    pub group1: CFuchsianGroup,
    pub group2: CFuchsianGroup,
    pub distance: f64,
    pub rotation: f64,
}

impl Config {
    pub fn build(&self, injectivity_depth: usize) -> Result<Placed, CliError> {
        let g1 = self.group1.build("group1")?;
        let g2 = self.group2.build("group2")?;
        let p = &self.placement;
        let distance = match (p.distance, p.margin) {
            (Some(d), None) if d > 0.0 => d,
            (Some(d), None) => return Err(CliError::Config(format!("placement.distance: must be positive, got {d}"))),
            (None, Some(m)) => {
                let std = ComplexLine::coordinate_z2();
                if !g1.line().same_line(&std, 1e-9) || !g2.line().same_line(&std, 1e-9) {
                    return Err(CliError::Config(
                        "placement.margin: only available when both groups act on {(0,w)}".into(),
                    ));
                }
                let o = BallPoint::origin();
                let s = |g: &CFuchsianGroup| -> Result<f64, CliError> {
                    let inj = g.injectivity_radius(&o, injectivity_depth).map_err(CliError::numeric)?;
                    s_function(inj).map_err(CliError::numeric)
                };
                let d = s(&g1)? + s(&g2)? + m;
                if !(d > 0.0) {
                    return Err(CliError::Config(format!("placement.margin: gives non-positive distance {d}")));
                }
                d
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Config("placement: give exactly one of distance, margin".into()))
            }
            (None, None) => return Err(CliError::Config("placement: one of distance, margin is required".into())),
        };
        let group2 = place(&g2, distance, p.rotation).map_err(CliError::numeric)?;
        Ok(Placed { group1: g1, group2, distance, rotation: p.rotation })
    }
}
