use std::f64::consts::PI;

use nalgebra::Matrix2;

use super::word::{fold_words, Letter, DEFAULT_WORD_BUDGET};
use crate::error::{Error, Result};
use crate::isometry::{embed_su11, foot_holonomy, Isometry};
use crate::lines::{bergman_distance, line_distance, orthogeodesic_feet, s_function, ComplexLine};
use crate::tolerance;
use crate::vector::{BallPoint, C64};

/// A complex line together with isometries stabilizing it.
#[derive(Clone, Debug)]
pub struct CFuchsianGroup {
    line: ComplexLine,
    generators: Vec<Isometry>,
}

impl CFuchsianGroup {
    pub fn new(line: ComplexLine, generators: Vec<Isometry>) -> Result<Self> {
        for g in &generators {
            let residual = g.apply_line(&line).polar().projective_distance(line.polar());
            if residual > tolerance::ALGEBRAIC {
                return Err(Error::NotStabilizing(residual));
            }
        }
        Ok(CFuchsianGroup { line, generators })
    }

    pub fn line(&self) -> &ComplexLine {
        &self.line
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    /// Generators and their inverses, tagged with `factor`.
    pub fn alphabet(&self, factor: u8) -> Vec<(Letter, Isometry)> {
        self.generators
            .iter()
            .enumerate()
            .flat_map(|(i, g)| [(Letter::new(factor, i, 1), *g), (Letter::new(factor, i, -1), g.inverse())])
            .collect()
    }

    /// The group `h G h^{-1}` acting on `h(line)`.
    pub fn conjugate_by(&self, h: &Isometry) -> CFuchsianGroup {
        CFuchsianGroup {
            line: h.apply_line(&self.line),
            generators: self.generators.iter().map(|g| g.conjugate_by(h)).collect(),
        }
    }

    pub fn injectivity_radius(&self, p: &BallPoint, depth: usize) -> Result<f64> {
        injectivity_radius(self, p, depth)
    }
}

/// Half the smallest displacement of `p` over non-identity words of length
/// at most `depth`. An upper bound for the injectivity radius at `p` that
/// can only decrease with depth.
pub fn injectivity_radius(g: &CFuchsianGroup, p: &BallPoint, depth: usize) -> Result<f64> {
    let off = g.line.distance_to_point(p);
    if off > tolerance::GEOMETRIC {
        return Err(Error::PointOffLine(off));
    }
    let alphabet = g.alphabet(0);
    let (min, _) = fold_words(
        &alphabet,
        depth,
        DEFAULT_WORD_BUDGET,
        f64::INFINITY,
        |acc, _, m| {
            if m.is_identity(1e-9) {
                acc
            } else {
                acc.min(bergman_distance(p, &m.apply_point(p)))
            }
        },
        f64::min,
    )?;
    Ok(0.5 * min)
}

/// Inradius `acosh(cot(pi/4g))` of the regular hyperbolic `4g`-gon with
/// interior angles `2 pi / 4g`.
pub fn regular_polygon_inradius(genus: u32) -> Result<f64> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    Ok((1.0 / (PI / (4.0 * genus as f64)).tan()).acosh())
}

fn rotation(phi: f64) -> Matrix2<C64> {
    Matrix2::new(
        C64::from_polar(1.0, 0.5 * phi),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::from_polar(1.0, -0.5 * phi),
    )
}

fn translation(t: f64) -> Matrix2<C64> {
    let (c, s) = (C64::new((0.5 * t).cosh(), 0.0), C64::new((0.5 * t).sinh(), 0.0));
    Matrix2::new(c, s, s, c)
}

/// Surface group of genus `g` acting on `{(0,w)}`.
///
/// The fundamental domain is the regular `4g`-gon centred at the origin
/// with side midpoints at angles `2 pi k / 4g`. Generators are
/// `a_j, b_j` for `j < g`, stored in the order `a_0, b_0, a_1, b_1, ...`;
/// `b_j` carries side `4j+1` to side `4j+3` and `a_j` carries side `4j+2`
/// to side `4j`. They satisfy `prod_j a_j b_j a_j^{-1} b_j^{-1} = 1` and
/// are embedded as `diag(1, B)` with `tr B > 0`, so they have no holonomy.
pub fn regular_polygon_group(genus: u32) -> Result<CFuchsianGroup> {
    let r = regular_polygon_inradius(genus)?;
    let n = 4.0 * genus as f64;
    let pairing = |k1: u32, k2: u32| {
        let (p1, p2) = (2.0 * PI * k1 as f64 / n, 2.0 * PI * k2 as f64 / n);
        rotation(p2) * translation(2.0 * r) * rotation(PI) * rotation(-p1)
    };
    let sl2_inverse = |m: Matrix2<C64>| Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]);
    let mut generators = Vec::with_capacity(2 * genus as usize);
    for j in 0..genus {
        for b in [sl2_inverse(pairing(4 * j, 4 * j + 2)), pairing(4 * j + 1, 4 * j + 3)] {
            let b = if b.trace().re < 0.0 { -b } else { b };
            generators.push(embed_su11(&b)?);
        }
    }
    CFuchsianGroup::new(ComplexLine::coordinate_z2(), generators)
}

/// Minimum absolute holonomy over the elements of `G` whose displacement of
/// the orthogeodesic foot on `G.line` towards `l2` is below `s(d)`.
///
/// Holonomy is measured at that foot (see [`foot_holonomy`]). Returns `None`
/// when no word of length at most `depth` qualifies.
pub fn stabilizer_min_holonomy(g: &CFuchsianGroup, l2: &ComplexLine, depth: usize) -> Result<Option<f64>> {
    let d = line_distance(&g.line, l2)?;
    let s = s_function(d)?;
    let (foot, _) = orthogeodesic_feet(&g.line, l2)?;
    let alphabet = g.alphabet(0);
    type Acc = (Option<f64>, Option<Error>);
    let merge = |a: Acc, b: Acc| -> Acc {
        let best = match (a.0, b.0) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        (best, a.1.or(b.1))
    };
    let ((best, err), _) = fold_words(
        &alphabet,
        depth,
        DEFAULT_WORD_BUDGET,
        (None, None),
        |acc: Acc, _, m| {
            if m.is_identity(1e-9) || bergman_distance(&foot, &m.apply_point(&foot)) >= s + tolerance::GEOMETRIC {
                return acc;
            }
            match foot_holonomy(m, &g.line, &foot) {
                Ok(h) => merge(acc, (Some(h.value().abs()), None)),
                Err(e) => merge(acc, (None, Some(e))),
            }
        },
        merge,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}
