//! Smoothing a double point and the face-merging reduction.
//!
//! Smoothing vertex `v` deletes it and joins its four stubs in one of the
//! two non-crossing ways: `(h0 h1)(h2 h3)` or `(h1 h2)(h3 h0)`, where
//! `h0..h3` are the half-edges of `v` in counterclockwise order. The first
//! merges the corners between `h1, h2` and `h3, h0`; the second merges the
//! other two.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::coorientation::{enumerate_eulerian, CoOrientation};
use crate::homology::{evaluate, DualWalk, HomologyBasis, HomologyError};
use crate::map::{CombinatorialMap, HalfEdge};
use crate::polytope::{convex_hull, PolytopeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("vertex {vertex} out of range (map has {count})")]
    NoSuchVertex { vertex: usize, count: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reconnection {
    /// Stubs `(h0 h1)(h2 h3)` joined.
    First,
    /// Stubs `(h1 h2)(h3 h0)` joined.
    Second,
}

impl Reconnection {
    fn partner(self, slot: usize) -> usize {
        match self {
            Reconnection::First => slot ^ 1,
            Reconnection::Second => [3, 2, 1, 0][slot],
        }
    }
}

/// One smoothed child with the correspondence from parent half-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Child {
    pub reconnection: Reconnection,
    /// The child with the smoothed vertex removed; vertex-free loops dropped.
    pub map: CombinatorialMap,
    /// Set when joining the stubs closed off a loop with no vertex on it.
    pub degenerate: bool,
    /// `dart_map[h]`: the child half-edge running along the same stretch of
    /// curve, in the same direction, as parent half-edge `h`.
    pub dart_map: Vec<Option<usize>>,
}

impl Child {
    pub fn transport(&self, walk: &DualWalk) -> Option<DualWalk> {
        walk.steps
            .iter()
            .map(|h| self.dart_map[h.0].map(HalfEdge))
            .collect::<Option<Vec<_>>>()
            .map(DualWalk::new)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingResult {
    pub vertex: usize,
    pub children: [Child; 2],
}

pub fn smooth(map: &CombinatorialMap, vertex: usize) -> Result<SmoothingResult, MoveError> {
    if vertex >= map.vertex_count() {
        return Err(MoveError::NoSuchVertex {
            vertex,
            count: map.vertex_count(),
        });
    }
    Ok(SmoothingResult {
        vertex,
        children: [
            smooth_one(map, vertex, Reconnection::First),
            smooth_one(map, vertex, Reconnection::Second),
        ],
    })
}

fn smooth_one(map: &CombinatorialMap, v: usize, rec: Reconnection) -> Child {
    let n = map.half_edge_count();
    let at_v = |h: HalfEdge| h.vertex() == v;
    let partner = |h: HalfEdge| HalfEdge(4 * v + rec.partner(h.slot()));
    let shift = |h: HalfEdge| if h.vertex() > v { h.0 - 4 } else { h.0 };

    let mut pairing = vec![usize::MAX; n - 4];
    let mut dart_map = vec![None; n];
    for d in map.half_edges().filter(|&d| !at_v(d)) {
        let child = shift(d);
        let mut h = d;
        loop {
            dart_map[h.0] = Some(child);
            let x = map.pair(h);
            if at_v(x) {
                h = partner(x);
            } else {
                pairing[child] = shift(x);
                break;
            }
        }
    }
    let degenerate = (0..4).any(|i| dart_map[4 * v + i].is_none());
    Child {
        reconnection: rec,
        map: CombinatorialMap::from_pairing_unchecked(pairing),
        degenerate,
        dart_map,
    }
}

/// Class vectors of all Eulerian co-orientations of `map`, evaluated on
/// `walks` (which need only be closed curves on the ambient surface).
pub fn classes_on_walks(
    map: &CombinatorialMap,
    walks: &[DualWalk],
) -> Result<BTreeSet<Vec<i64>>, HomologyError> {
    let nus = enumerate_eulerian(map);
    let mut out = BTreeSet::new();
    for nu in &nus {
        let c = nu.cochain(map);
        out.insert(
            walks
                .iter()
                .map(|w| evaluate(&c, w))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionReport {
    pub parent: BTreeSet<Vec<i64>>,
    pub children: [BTreeSet<Vec<i64>>; 2],
    pub union_equal: bool,
    pub children_included: bool,
    pub hull_equal: bool,
}

impl UnionReport {
    pub fn holds(&self) -> bool {
        self.union_equal && self.children_included && self.hull_equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnionOutcome {
    /// A child is degenerate (or a basis walk meets a vanished loop).
    Inapplicable,
    Checked(UnionReport),
}

/// Compares the parent's class set with the union of the children's, all
/// evaluated on the parent's basis walks carried into each child.
pub fn eulco_union_check(
    map: &CombinatorialMap,
    vertex: usize,
    basis: &HomologyBasis,
) -> Result<UnionOutcome, MoveError> {
    let sm = smooth(map, vertex)?;
    if sm.children.iter().any(|c| c.degenerate || c.map.vertex_count() == 0) {
        return Ok(UnionOutcome::Inapplicable);
    }
    let parent = classes_on_walks(map, &basis.walks)?;
    let mut kids: [BTreeSet<Vec<i64>>; 2] = Default::default();
    for (slot, child) in kids.iter_mut().zip(&sm.children) {
        let walks: Option<Vec<DualWalk>> = basis.walks.iter().map(|w| child.transport(w)).collect();
        let Some(walks) = walks else {
            return Ok(UnionOutcome::Inapplicable);
        };
        *slot = classes_on_walks(&child.map, &walks)?;
    }
    let union: BTreeSet<Vec<i64>> = kids[0].union(&kids[1]).cloned().collect();
    let hull_equal = hull_of(&parent)? == hull_of(&union)?;
    Ok(UnionOutcome::Checked(UnionReport {
        union_equal: union == parent,
        children_included: kids.iter().all(|k| k.is_subset(&parent)),
        hull_equal,
        parent,
        children: kids,
    }))
}

fn hull_of(set: &BTreeSet<Vec<i64>>) -> Result<crate::polytope::LatticePolytope, PolytopeError> {
    convex_hull(&set.iter().cloned().collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// Vertex id in the map before this step.
    pub vertex: usize,
    pub reconnection: Reconnection,
    pub faces_before: usize,
    pub faces_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub map: CombinatorialMap,
    pub steps: Vec<ReductionStep>,
    /// Composite correspondence from the input's half-edges.
    pub dart_map: Vec<Option<usize>>,
}

impl Reduction {
    pub fn transport(&self, walk: &DualWalk) -> Option<DualWalk> {
        walk.steps
            .iter()
            .map(|h| self.dart_map[h.0].map(HalfEdge))
            .collect::<Option<Vec<_>>>()
            .map(DualWalk::new)
    }
}

/// Which reconnection at `v` joins two distinct opposed faces, if any.
fn joining_choices(face_of: impl Fn(HalfEdge) -> usize, v: usize) -> Vec<Reconnection> {
    let h = |i: usize| HalfEdge(4 * v + i);
    let mut out = Vec::new();
    // (h0 h1)(h2 h3) merges the corners whose faces are those of h2 and h0.
    if face_of(h(2)) != face_of(h(0)) {
        out.push(Reconnection::First);
    }
    if face_of(h(1)) != face_of(h(3)) {
        out.push(Reconnection::Second);
    }
    out
}

/// Repeatedly smooths the lowest vertex at which two different faces are
/// opposed, keeping the child that joins them, until no such vertex is left.
pub fn reduce(map: &CombinatorialMap) -> Reduction {
    let mut current = map.clone();
    let mut dart_map: Vec<Option<usize>> = (0..map.half_edge_count()).map(Some).collect();
    let mut steps = Vec::new();
    'outer: loop {
        let faces = current.faces();
        for v in 0..current.vertex_count() {
            for rec in joining_choices(|h| faces.face_of(h), v) {
                let child = smooth_one(&current, v, rec);
                if child.degenerate {
                    continue;
                }
                let faces_after = child.map.faces().len();
                steps.push(ReductionStep {
                    vertex: v,
                    reconnection: rec,
                    faces_before: faces.len(),
                    faces_after,
                });
                for d in dart_map.iter_mut() {
                    *d = d.and_then(|h| child.dart_map[h]);
                }
                current = child.map;
                continue 'outer;
            }
        }
        break;
    }
    Reduction {
        map: current,
        steps,
        dart_map,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Even iff the class of an Eulerian co-orientation is divisible by 2. The
/// class vectors of one map are all congruent mod 2, so one suffices; the
/// one induced by orienting every curve is used.
pub fn norm_parity(map: &CombinatorialMap, basis: &HomologyBasis) -> Result<Parity, MoveError> {
    let nu = CoOrientation::from_curve_orientation(map, &vec![false; map.curves().len()]);
    let c = nu.cochain(map);
    for w in &basis.walks {
        if evaluate(&c, w)? % 2 != 0 {
            return Ok(Parity::Odd);
        }
    }
    Ok(Parity::Even)
}
