//! Exact lattice polytopes given by their vertices.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::lp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ball is not centrally symmetric")]
    Asymmetric,
}

/// A lattice polytope stored as its sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolytope {
    ambient: usize,
    vertices: Vec<Vec<i64>>,
}

fn check_dims(points: &[Vec<i64>]) -> Result<usize, PolytopeError> {
    let n = points.first().ok_or(PolytopeError::Empty)?.len();
    for p in points {
        if p.len() != n {
            return Err(PolytopeError::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
    }
    Ok(n)
}

/// Smallest vertex set spanning the same polytope as `points`. A point is
/// kept iff it is not a convex combination of the other distinct points,
/// decided by exact linear programming. Midpoints of two other points are
/// dropped first without solving anything.
pub fn convex_hull(points: &[Vec<i64>]) -> Result<LatticePolytope, PolytopeError> {
    let ambient = check_dims(points)?;
    let distinct: Vec<Vec<i64>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let set: BTreeSet<&[i64]> = distinct.iter().map(Vec::as_slice).collect();
    let keep: Vec<bool> = (0..distinct.len())
        .into_par_iter()
        .map(|i| {
            let p = &distinct[i];
            let midpoint = distinct.iter().any(|q| {
                let r: Vec<i64> = p.iter().zip(q).map(|(a, b)| 2 * a - b).collect();
                q != p && set.contains(r.as_slice())
            });
            if midpoint {
                return false;
            }
            let others: Vec<Vec<i64>> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            !lp::in_convex_hull(&distinct[i], &others)
        })
        .collect();
    let vertices = distinct
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    Ok(LatticePolytope { ambient, vertices })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LatticePolytope {
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    /// Dimension of the affine hull.
    pub fn dimension(&self) -> usize {
        let base = &self.vertices[0];
        let diffs: Vec<Vec<i64>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        lp::rank(&diffs)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.ambient && lp::in_convex_hull(p, &self.vertices)
    }

    /// `max ⟨v, a⟩` over the vertices.
    pub fn support(&self, a: &[i64]) -> Result<i64, PolytopeError> {
        if a.len() != self.ambient {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.ambient,
                got: a.len(),
            });
        }
        Ok(self.vertices.iter().map(|v| dot(v, a)).max().unwrap())
    }

    pub fn is_symmetric(&self) -> bool {
        let set: BTreeSet<&Vec<i64>> = self.vertices.iter().collect();
        self.vertices
            .iter()
            .all(|v| set.contains(&v.iter().map(|x| -x).collect::<Vec<_>>()))
    }

    /// Whether all vertices are congruent modulo 2.
    pub fn mod2_congruent(&self) -> bool {
        let base = &self.vertices[0];
        self.vertices
            .iter()
            .all(|v| v.iter().zip(base).all(|(a, b)| (a - b) % 2 == 0))
    }

    /// Symmetric, inside `[-1, 1]⁴`, eight vertices and full-dimensional.
    pub fn is_p8(&self) -> Result<bool, PolytopeError> {
        if self.ambient != 4 {
            return Err(PolytopeError::DimensionMismatch {
                expected: 4,
                got: self.ambient,
            });
        }
        Ok(self.vertices.len() == 8
            && self.is_symmetric()
            && self.vertices.iter().flatten().all(|x| x.abs() <= 1)
            && self.dimension() == 4)
    }
}

pub fn minkowski_sum(
    p: &LatticePolytope,
    q: &LatticePolytope,
) -> Result<LatticePolytope, PolytopeError> {
    if p.ambient != q.ambient {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.ambient,
            got: q.ambient,
        });
    }
    let sums: Vec<Vec<i64>> = p
        .vertices
        .iter()
        .flat_map(|a| {
            q.vertices
                .iter()
                .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
        })
        .collect();
    convex_hull(&sums)
}

/// Norm given by the support function of a centrally symmetric ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormOracle {
    ball: LatticePolytope,
}

impl NormOracle {
    pub fn new(ball: LatticePolytope) -> Result<Self, PolytopeError> {
        if ball.is_symmetric() {
            Ok(Self { ball })
        } else {
            Err(PolytopeError::Asymmetric)
        }
    }

    pub fn ball(&self) -> &LatticePolytope {
        &self.ball
    }

    pub fn norm(&self, a: &[i64]) -> Result<i64, PolytopeError> {
        self.ball.support(a)
    }
}
