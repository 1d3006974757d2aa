//! Eulerian co-orientations and their cohomology classes.
//!
//! A co-orientation picks, for every edge, the half-edge whose crossing
//! (from its right side to its left side) counts as positive. It is
//! Eulerian when the small circle around each vertex crosses two of its four
//! half-edges positively.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::homology::{class_of, Cochain, HomologyBasis, HomologyError};
use crate::map::{CombinatorialMap, HalfEdge};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoOrientation {
    /// Positive half-edge of each edge, indexed like [`CombinatorialMap::edges`].
    pub positive: Vec<HalfEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexType {
    Alternating,
    NonAlternating,
}

impl CoOrientation {
    /// `plus[e]` selects the smaller half-edge of edge `e`.
    pub fn from_signs(map: &CombinatorialMap, plus: &[bool]) -> Self {
        Self {
            positive: map
                .edges()
                .iter()
                .zip(plus)
                .map(|(&(lo, hi), &p)| if p { lo } else { hi })
                .collect(),
        }
    }

    /// The co-orientation induced by orienting every curve, each one
    /// reversed where `flip` is set. Crossings from right to left of the
    /// oriented curve are positive.
    pub fn from_curve_orientation(map: &CombinatorialMap, flip: &[bool]) -> Self {
        let index = map.edge_index();
        let mut positive = vec![HalfEdge(0); map.edge_count()];
        for (strand, &f) in map.curves().iter().zip(flip) {
            for &h in strand {
                positive[index[h.0]] = if f { map.pair(h) } else { h };
            }
        }
        Self { positive }
    }

    pub fn signs(&self, map: &CombinatorialMap) -> Vec<bool> {
        self.positive.iter().map(|&h| h < map.pair(h)).collect()
    }

    pub fn reversed(&self, map: &CombinatorialMap) -> Self {
        Self {
            positive: self.positive.iter().map(|&h| map.pair(h)).collect(),
        }
    }

    fn is_positive(&self, index: &[usize], h: HalfEdge) -> bool {
        self.positive[index[h.0]] == h
    }

    pub fn cochain(&self, map: &CombinatorialMap) -> Cochain {
        let index = map.edge_index();
        Cochain {
            values: map
                .half_edges()
                .map(|h| if self.is_positive(&index, h) { 1 } else { -1 })
                .collect(),
        }
    }

    pub fn is_eulerian(&self, map: &CombinatorialMap) -> bool {
        let index = map.edge_index();
        (0..map.vertex_count()).all(|v| {
            (0..4)
                .filter(|&i| self.is_positive(&index, HalfEdge(4 * v + i)))
                .count()
                == 2
        })
    }

    /// Whether the two strands through `vertex` are co-oriented alike.
    /// `None` when the vertex does not exist.
    pub fn vertex_type(&self, map: &CombinatorialMap, vertex: usize) -> Option<VertexType> {
        if vertex >= map.vertex_count() {
            return None;
        }
        let index = map.edge_index();
        let pos = |i: usize| self.is_positive(&index, HalfEdge(4 * vertex + i));
        let split = |a: usize, b: usize| pos(a) != pos(b);
        Some(if split(0, 2) && split(1, 3) {
            VertexType::NonAlternating
        } else {
            VertexType::Alternating
        })
    }
}

/// Edge decision order: edges in order of first incidence along a
/// breadth-first sweep of the vertices.
fn decision_order(map: &CombinatorialMap) -> Vec<usize> {
    let index = map.edge_index();
    let v = map.vertex_count();
    let mut seen_vertex = vec![false; v];
    let mut seen_edge = vec![false; map.edge_count()];
    let mut order = Vec::with_capacity(map.edge_count());
    for root in 0..v {
        if seen_vertex[root] {
            continue;
        }
        seen_vertex[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for i in 0..4 {
                let h = HalfEdge(4 * u + i);
                let e = index[h.0];
                if !seen_edge[e] {
                    seen_edge[e] = true;
                    order.push(e);
                }
                let w = map.pair(h).vertex();
                if !seen_vertex[w] {
                    seen_vertex[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    edges: &'a [(HalfEdge, HalfEdge)],
    order: &'a [usize],
    positive: Vec<u8>,
    open: Vec<u8>,
    choice: Vec<bool>,
}

impl Search<'_> {
    fn assign(&mut self, e: usize, plus: bool) -> bool {
        let (lo, hi) = self.edges[e];
        let (p, q) = if plus { (lo, hi) } else { (hi, lo) };
        self.choice[e] = plus;
        self.positive[p.vertex()] += 1;
        self.open[p.vertex()] -= 1;
        self.open[q.vertex()] -= 1;
        [p.vertex(), q.vertex()]
            .iter()
            .all(|&v| self.positive[v] <= 2 && self.positive[v] + self.open[v] >= 2)
    }

    fn undo(&mut self, e: usize, plus: bool) {
        let (lo, hi) = self.edges[e];
        let (p, q) = if plus { (lo, hi) } else { (hi, lo) };
        self.positive[p.vertex()] -= 1;
        self.open[p.vertex()] += 1;
        self.open[q.vertex()] += 1;
    }

    fn run(&mut self, depth: usize, out: &mut Vec<Vec<bool>>) {
        if depth == self.order.len() {
            out.push(self.choice.clone());
            return;
        }
        let e = self.order[depth];
        for plus in [true, false] {
            if self.assign(e, plus) {
                self.run(depth + 1, out);
            }
            self.undo(e, plus);
        }
    }
}

/// Number of leading decisions fixed per parallel task.
const SPLIT_DEPTH: usize = 4;

/// All Eulerian co-orientations, sorted.
pub fn enumerate_eulerian(map: &CombinatorialMap) -> Vec<CoOrientation> {
    let edges = map.edges();
    let order = decision_order(map);
    let split = SPLIT_DEPTH.min(order.len());
    let fresh = || Search {
        edges: &edges,
        order: &order,
        positive: vec![0; map.vertex_count()],
        open: vec![4; map.vertex_count()],
        choice: vec![false; edges.len()],
    };

    let mut found: Vec<Vec<bool>> = (0u32..1 << split)
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut s = fresh();
            let mut ok = true;
            for d in 0..split {
                ok &= s.assign(order[d], prefix >> d & 1 == 0);
            }
            let mut out = Vec::new();
            if ok {
                s.run(split, &mut out);
            }
            out
        })
        .collect();
    found.sort_unstable();
    found
        .into_iter()
        .map(|plus| CoOrientation::from_signs(map, &plus))
        .collect()
}

/// The deduplicated set of class vectors of all Eulerian co-orientations.
pub fn eulco_classes(
    map: &CombinatorialMap,
    basis: &HomologyBasis,
) -> Result<BTreeSet<Vec<i64>>, HomologyError> {
    classes_of(map, basis, &enumerate_eulerian(map))
}

pub fn classes_of(
    map: &CombinatorialMap,
    basis: &HomologyBasis,
    nus: &[CoOrientation],
) -> Result<BTreeSet<Vec<i64>>, HomologyError> {
    nus.par_iter()
        .map(|nu| class_of(map, &nu.cochain(map), basis))
        .collect::<Result<Vec<_>, _>>()
        .map(|v| v.into_iter().collect())
}
