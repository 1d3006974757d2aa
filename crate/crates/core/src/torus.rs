//! Realizing symmetric lattice polygons as dual balls of curve collections
//! on the torus.
//!
//! A collection of `m` parallel `(p, q)`-curves has norm
//! `a ↦ m·|det((p, q), a)|`, whose dual ball is the segment
//! `[-m·(-q, p), m·(-q, p)]`. A symmetric polygon with even edges is a
//! Minkowski sum of such segments, one per edge direction.

use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Signed;
use thiserror::Error;

use crate::diagram::{self, CurveMap, DiagramError, Passage};
use crate::polytope::{convex_hull, minkowski_sum, LatticePolytope, PolytopeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("polygon must live in the plane, got dimension {0}")]
    NotPlanar(usize),
    #[error("polygon is not centrally symmetric")]
    Asymmetric,
    #[error("edge {from:?} -> {to:?} is odd; vertices are not congruent mod 2")]
    OddEdge { from: [i64; 2], to: [i64; 2] },
    #[error("polygon is a single point")]
    Degenerate,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `multiplicity` parallel copies of the closed curve with primitive class
/// `class`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusCurve {
    pub class: [i64; 2],
    pub multiplicity: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorusCollection {
    pub curves: Vec<TorusCurve>,
}

fn half_plane(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Exact counterclockwise angle comparison of nonzero vectors.
fn by_angle(a: &[i64; 2], b: &[i64; 2]) -> Ordering {
    half_plane(*a)
        .cmp(&half_plane(*b))
        .then_with(|| 0.cmp(&det(*a, *b)))
}

fn planar(polygon: &LatticePolytope) -> Result<Vec<[i64; 2]>, TorusError> {
    if polygon.ambient_dimension() != 2 {
        return Err(TorusError::NotPlanar(polygon.ambient_dimension()));
    }
    Ok(polygon.vertices().iter().map(|v| [v[0], v[1]]).collect())
}

/// Generators `w_i` with `polygon = ⊕ [-w_i, w_i]`: half of each edge
/// vector along one half of the boundary.
pub fn zonotope_decompose(polygon: &LatticePolytope) -> Result<Vec<[i64; 2]>, TorusError> {
    let mut verts = planar(polygon)?;
    if !polygon.is_symmetric() {
        return Err(TorusError::Asymmetric);
    }
    if verts.len() == 1 {
        return Ok(Vec::new());
    }
    verts.sort_by(by_angle);
    let k = verts.len() / 2;
    let mut gens = Vec::with_capacity(k);
    for i in 0..k {
        let (from, to) = (verts[i], verts[(i + 1) % verts.len()]);
        let e = [to[0] - from[0], to[1] - from[1]];
        if e[0] % 2 != 0 || e[1] % 2 != 0 {
            return Err(TorusError::OddEdge { from, to });
        }
        gens.push([e[0] / 2, e[1] / 2]);
    }
    Ok(gens)
}

fn normalize(c: [i64; 2]) -> [i64; 2] {
    if c[0] < 0 || (c[0] == 0 && c[1] < 0) {
        [-c[0], -c[1]]
    } else {
        c
    }
}

pub fn realize(polygon: &LatticePolytope) -> Result<TorusCollection, TorusError> {
    let gens = zonotope_decompose(polygon)?;
    if gens.is_empty() {
        return Err(TorusError::Degenerate);
    }
    let mut curves: Vec<TorusCurve> = gens
        .iter()
        .map(|w| {
            let m = w[0].gcd(&w[1]);
            let u = [w[0] / m, w[1] / m];
            TorusCurve {
                class: normalize([u[1], -u[0]]),
                multiplicity: m,
            }
        })
        .collect();
    curves.sort();
    Ok(TorusCollection { curves })
}

pub fn torus_norm(collection: &TorusCollection, a: [i64; 2]) -> i64 {
    collection
        .curves
        .iter()
        .map(|c| c.multiplicity * det(c.class, a).abs())
        .sum()
}

impl TorusCollection {
    /// The dual ball, assembled as the Minkowski sum of one segment per
    /// curve family.
    pub fn dual_ball(&self) -> Result<LatticePolytope, TorusError> {
        let mut ball = convex_hull(&[vec![0, 0]])?;
        for c in &self.curves {
            let w = [-c.class[1] * c.multiplicity, c.class[0] * c.multiplicity];
            let seg = convex_hull(&[vec![w[0], w[1]], vec![-w[0], -w[1]]])?;
            ball = minkowski_sum(&ball, &seg)?;
        }
        Ok(ball)
    }

    /// The collection drawn with straight lines on `R²/Z²`, when at least two
    /// families are present (otherwise no curve meets another).
    pub fn to_map(&self) -> Result<Option<CurveMap>, TorusError> {
        if self.curves.len() < 2 {
            return Ok(None);
        }
        let lines: Vec<[i64; 2]> = self
            .curves
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.class, c.multiplicity as usize))
            .collect();
        for attempt in 0i64.. {
            let offsets: Vec<[Rational64; 2]> = (0..lines.len() as i64)
                .map(|j| {
                    [
                        Rational64::new((j * 37 + 11 + attempt * 5) % 97 + 1, 99),
                        Rational64::new((j * 53 + 17 + attempt * 7) % 89 + 1, 91),
                    ]
                })
                .collect();
            if let Some(cm) = draw_lines(&lines, &offsets)? {
                return Ok(Some(cm));
            }
        }
        unreachable!()
    }
}

struct Crossing {
    first: (usize, Rational64),
    second: (usize, Rational64),
    left_turn: bool,
}

/// Lines `offset + t·class`, `t ∈ [0, 1)`. `None` when the offsets produce a
/// triple point.
fn draw_lines(
    lines: &[[i64; 2]],
    offsets: &[[Rational64; 2]],
) -> Result<Option<CurveMap>, TorusError> {
    let mut crossings = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (c1, c2) = (lines[i], lines[j]);
            let d = det(c1, c2);
            if d == 0 {
                continue;
            }
            // s·c1 − t·c2 = o2 − o1 + n
            let reach = c1[0].abs() + c1[1].abs() + c2[0].abs() + c2[1].abs() + 2;
            for nx in -reach..=reach {
                for ny in -reach..=reach {
                    let rx = offsets[j][0] - offsets[i][0] + nx;
                    let ry = offsets[j][1] - offsets[i][1] + ny;
                    // Cramer on [[c1x, -c2x], [c1y, -c2y]]
                    let det_m = Rational64::from(-d);
                    let s = (rx * -c2[1] + ry * c2[0]) / det_m;
                    let t = (ry * c1[0] - rx * c1[1]) / det_m;
                    let unit = |x: Rational64| !x.is_negative() && x < Rational64::from(1);
                    if unit(s) && unit(t) {
                        crossings.push(Crossing {
                            first: (i, s),
                            second: (j, t),
                            left_turn: d > 0,
                        });
                    }
                }
            }
        }
    }
    let mut per_line: Vec<Vec<(Rational64, Passage)>> = vec![Vec::new(); lines.len()];
    for (x, c) in crossings.iter().enumerate() {
        per_line[c.first.0].push((c.first.1, Passage { crossing: x, second: false }));
        per_line[c.second.0].push((c.second.1, Passage { crossing: x, second: true }));
    }
    let mut curves = Vec::new();
    for list in &mut per_line {
        list.sort_by_key(|a| a.0);
        if list.windows(2).any(|w| w[0].0 == w[1].0) {
            return Ok(None);
        }
        curves.push(list.iter().map(|p| p.1).collect::<Vec<_>>());
    }
    let left: Vec<bool> = crossings.iter().map(|c| c.left_turn).collect();
    if curves.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    Ok(Some(diagram::build(&curves, &left)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(points: &[[i64; 2]]) -> LatticePolytope {
        convex_hull(&points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn square() {
        let sq = poly(&[[1, 1], [1, -1], [-1, 1], [-1, -1]]);
        let mut g = zonotope_decompose(&sq).unwrap();
        g.iter_mut().for_each(|w| *w = normalize(*w));
        g.sort();
        assert_eq!(g, vec![[0, 1], [1, 0]]);
        let col = realize(&sq).unwrap();
        assert_eq!(
            col.curves,
            vec![
                TorusCurve { class: [0, 1], multiplicity: 1 },
                TorusCurve { class: [1, 0], multiplicity: 1 }
            ]
        );
        assert_eq!(torus_norm(&col, [1, 1]), 2);
        assert_eq!(col.dual_ball().unwrap(), sq);
        let cm = col.to_map().unwrap().unwrap();
        assert_eq!(cm.map.vertex_count(), 1);
        assert_eq!(cm.map.faces().len(), 1);
    }

    #[test]
    fn vertical_segment() {
        for l in 1..5 {
            let seg = poly(&[[0, l], [0, -l]]);
            assert_eq!(zonotope_decompose(&seg).unwrap().len(), 1);
            let col = realize(&seg).unwrap();
            assert_eq!(col.curves, vec![TorusCurve { class: [1, 0], multiplicity: l }]);
            assert_eq!(torus_norm(&col, [0, 1]), l);
            assert_eq!(torus_norm(&col, [1, 0]), 0);
            assert!(col.to_map().unwrap().is_none());
        }
    }

    #[test]
    fn diagonal_segment() {
        let col = realize(&poly(&[[2, 2], [-2, -2]])).unwrap();
        assert_eq!(col.curves, vec![TorusCurve { class: [1, -1], multiplicity: 2 }]);
    }

    #[test]
    fn hexagon_round_trip() {
        let a = poly(&[[1, 0], [-1, 0]]);
        let b = poly(&[[1, 1], [-1, -1]]);
        let hex = minkowski_sum(&a, &b).unwrap();
        let mut g: Vec<[i64; 2]> = zonotope_decompose(&hex)
            .unwrap()
            .into_iter()
            .map(normalize)
            .collect();
        g.sort();
        assert_eq!(g, vec![[1, 0], [1, 1]]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            zonotope_decompose(&poly(&[[1, 0], [0, 1], [-1, -1]])),
            Err(TorusError::Asymmetric)
        ));
        assert!(matches!(
            zonotope_decompose(&poly(&[[1, 0], [0, 1], [-1, 0], [0, -1]])),
            Err(TorusError::OddEdge { .. })
        ));
        assert!(matches!(realize(&poly(&[[0, 0]])), Err(TorusError::Degenerate)));
    }

    #[test]
    fn diamond_map_has_two_faces() {
        let col = TorusCollection {
            curves: vec![
                TorusCurve { class: [1, -1], multiplicity: 1 },
                TorusCurve { class: [1, 1], multiplicity: 1 },
            ],
        };
        let cm = col.to_map().unwrap().unwrap();
        assert_eq!(cm.map.vertex_count(), 2);
        assert_eq!(cm.map.faces().len(), 2);
        assert_eq!(cm.map.genus(), 1);
    }
}
