//! Dual graph, transverse walks, integer homology bases and the intersection
//! form.
//!
//! A [`DualWalk`] is a cyclic list of half-edges. The step `h` crosses the
//! edge of `h` from its right side (the face of `h`) to its left side (the
//! face of `pair(h)`); consecutive steps must share that face.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::map::{CombinatorialMap, FaceSet, HalfEdge};
use crate::snf;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("walk step {step} references half-edge {half_edge}, map has {count}")]
    UnknownHalfEdge {
        step: usize,
        half_edge: usize,
        count: usize,
    },
    #[error("walk is not closed: step {step} leaves a face the next step does not start in")]
    NotClosed { step: usize },
    #[error("cochain does not vanish on the circle around vertex {vertex}")]
    NotCocycle { vertex: usize },
    #[error("cochain has {got} values, map has {expected} half-edges")]
    CochainLength { got: usize, expected: usize },
    #[error("expected {expected} basis walks, got {got}")]
    BasisSize { got: usize, expected: usize },
    #[error("walks do not form a basis: intersection determinant is {0}")]
    NotUnimodular(BigInt),
    #[error("homology presentation has torsion or wrong rank (rank {rank}, genus {genus})")]
    Presentation { rank: usize, genus: usize },
}

/// One link per edge of the map, joining the faces on its two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualLink {
    pub edge: usize,
    /// The edge's smaller half-edge; crossing it is the `+` direction.
    pub positive: HalfEdge,
    pub from_face: usize,
    pub to_face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub node_count: usize,
    pub links: Vec<DualLink>,
}

impl DualGraph {
    pub fn loop_count(&self) -> usize {
        self.links.iter().filter(|l| l.from_face == l.to_face).count()
    }
}

pub fn dual_graph(map: &CombinatorialMap) -> DualGraph {
    let faces = map.faces();
    let links = map
        .edges()
        .into_iter()
        .enumerate()
        .map(|(edge, (lo, hi))| DualLink {
            edge,
            positive: lo,
            from_face: faces.face_of(lo),
            to_face: faces.face_of(hi),
        })
        .collect();
    DualGraph {
        node_count: faces.len(),
        links,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DualWalk {
    pub steps: Vec<HalfEdge>,
}

impl DualWalk {
    pub fn new(steps: Vec<HalfEdge>) -> Self {
        Self { steps }
    }

    /// The small counterclockwise circle around `vertex`.
    pub fn vertex_circle(vertex: usize) -> Self {
        Self::new((0..4).map(|i| HalfEdge(4 * vertex + i)).collect())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self, map: &CombinatorialMap) -> Self {
        Self::new(self.steps.iter().rev().map(|&h| map.pair(h)).collect())
    }

    pub fn check(&self, map: &CombinatorialMap, faces: &FaceSet) -> Result<(), HomologyError> {
        let n = map.half_edge_count();
        for (step, h) in self.steps.iter().enumerate() {
            if h.0 >= n {
                return Err(HomologyError::UnknownHalfEdge {
                    step,
                    half_edge: h.0,
                    count: n,
                });
            }
        }
        for (step, &h) in self.steps.iter().enumerate() {
            let next = self.steps[(step + 1) % self.steps.len()];
            if faces.face_of(map.pair(h)) != faces.face_of(next) {
                return Err(HomologyError::NotClosed { step });
            }
        }
        Ok(())
    }

    /// Signed crossing count per edge, `+` meaning the smaller half-edge.
    pub fn chain(&self, map: &CombinatorialMap) -> Vec<i64> {
        let index = map.edge_index();
        let mut c = vec![0; map.edge_count()];
        for &h in &self.steps {
            c[index[h.0]] += if h < map.pair(h) { 1 } else { -1 };
        }
        c
    }

    /// `(edge, sign)` steps in the map-file notation.
    pub fn signed_steps(&self, map: &CombinatorialMap) -> Vec<(usize, bool)> {
        let index = map.edge_index();
        self.steps
            .iter()
            .map(|&h| (index[h.0], h < map.pair(h)))
            .collect()
    }

    pub fn from_signed_steps(map: &CombinatorialMap, steps: &[(usize, bool)]) -> Option<Self> {
        let edges = map.edges();
        steps
            .iter()
            .map(|&(e, plus)| edges.get(e).map(|&(lo, hi)| if plus { lo } else { hi }))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for DualWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|h| h.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// An integer value on every half-edge with `c(pair(h)) = -c(h)`: the
/// signed weight of crossing the edge from the right of `h` to its left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub values: Vec<i64>,
}

impl Cochain {
    /// Node potential coboundary: crossing from face `f` to face `g` is
    /// worth `potential[g] - potential[f]`.
    pub fn coboundary(map: &CombinatorialMap, potential: &[i64]) -> Self {
        let faces = map.faces();
        Self {
            values: map
                .half_edges()
                .map(|h| potential[faces.face_of(map.pair(h))] - potential[faces.face_of(h)])
                .collect(),
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

pub fn evaluate(cochain: &Cochain, walk: &DualWalk) -> Result<i64, HomologyError> {
    let mut total = 0;
    for (step, h) in walk.steps.iter().enumerate() {
        let v = cochain
            .values
            .get(h.0)
            .ok_or(HomologyError::UnknownHalfEdge {
                step,
                half_edge: h.0,
                count: cochain.values.len(),
            })?;
        total += v;
    }
    Ok(total)
}

/// Evidence that the basis generates `H₁(Σ, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Built from the dual graph: fundamental cycles modulo vertex circles.
    Presentation {
        cycle_dim: usize,
        boundary_rank: usize,
        divisors: Vec<BigInt>,
        /// Generator coordinates over the fundamental cycles, one row each.
        generators: Vec<Vec<BigInt>>,
    },
    /// Caller-supplied walks whose intersection matrix has determinant 1.
    Unimodular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyBasis {
    pub walks: Vec<DualWalk>,
    pub certificate: Certificate,
}

/// Spanning tree of the dual graph grown breadth-first from face 0, and the
/// fundamental walks of the remaining links, all based at face 0.
struct Fundamental {
    walks: Vec<DualWalk>,
    non_tree: Vec<usize>,
}

fn fundamental_walks(map: &CombinatorialMap, faces: &FaceSet) -> Fundamental {
    let f = faces.len();
    let mut path: Vec<Option<Vec<HalfEdge>>> = vec![None; f];
    let mut tree_edge = vec![false; map.edge_count()];
    let index = map.edge_index();
    path[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(face) = queue.pop_front() {
        let mut darts = faces.faces[face].clone();
        darts.sort_unstable();
        for h in darts {
            let g = faces.face_of(map.pair(h));
            if path[g].is_none() {
                let mut p = path[face].clone().unwrap();
                p.push(h);
                path[g] = Some(p);
                tree_edge[index[h.0]] = true;
                queue.push_back(g);
            }
        }
    }
    let mut walks = Vec::new();
    let mut non_tree = Vec::new();
    for (e, (lo, hi)) in map.edges().into_iter().enumerate() {
        if tree_edge[e] {
            continue;
        }
        let mut steps = path[faces.face_of(lo)].clone().expect("connected map");
        steps.push(lo);
        let back = path[faces.face_of(hi)].as_ref().expect("connected map");
        steps.extend(back.iter().rev().map(|&h| map.pair(h)));
        walks.push(DualWalk::new(steps));
        non_tree.push(e);
    }
    Fundamental { walks, non_tree }
}

/// Deterministic basis of `H₁(Σ, Z)` as dual walks, with its certificate.
pub fn homology_basis(map: &CombinatorialMap) -> Result<HomologyBasis, HomologyError> {
    let faces = map.faces();
    let genus = map.genus();
    let fund = fundamental_walks(map, &faces);
    let k = fund.walks.len();

    // Columns: vertex circles, written over the fundamental cycles (their
    // coefficients on the non-tree links).
    let mut boundary = vec![vec![BigInt::zero(); map.vertex_count()]; k];
    for v in 0..map.vertex_count() {
        let chain = DualWalk::vertex_circle(v).chain(map);
        for (row, &e) in fund.non_tree.iter().enumerate() {
            boundary[row][v] = BigInt::from(chain[e]);
        }
    }
    let sf = snf::smith(&boundary);
    let divisors = sf.divisors();
    if k - sf.rank != 2 * genus || divisors.iter().any(|d| !d.is_one()) {
        return Err(HomologyError::Presentation {
            rank: k - sf.rank,
            genus,
        });
    }

    let mut generators = Vec::new();
    let mut walks = Vec::new();
    for col in sf.rank..k {
        let coords: Vec<BigInt> = (0..k).map(|row| sf.u_inv[row][col].clone()).collect();
        let mut steps = Vec::new();
        for (j, c) in coords.iter().enumerate() {
            let reps = c.abs().to_usize().expect("small coefficient");
            let piece = if c.is_negative() {
                fund.walks[j].reversed(map)
            } else {
                fund.walks[j].clone()
            };
            for _ in 0..reps {
                steps.extend_from_slice(&piece.steps);
            }
        }
        walks.push(DualWalk::new(steps));
        generators.push(coords);
    }
    Ok(HomologyBasis {
        walks,
        certificate: Certificate::Presentation {
            cycle_dim: k,
            boundary_rank: sf.rank,
            divisors,
            generators,
        },
    })
}

impl HomologyBasis {
    /// Accepts caller-supplied walks after checking they are closed, that
    /// there are `2g` of them, and that their intersection matrix is
    /// unimodular.
    pub fn from_walks(map: &CombinatorialMap, walks: Vec<DualWalk>) -> Result<Self, HomologyError> {
        let faces = map.faces();
        for w in &walks {
            w.check(map, &faces)?;
        }
        let expected = 2 * map.genus();
        if walks.len() != expected {
            return Err(HomologyError::BasisSize {
                got: walks.len(),
                expected,
            });
        }
        let basis = Self {
            walks,
            certificate: Certificate::Unimodular,
        };
        let m = intersection_form(map, &basis);
        let det = determinant(&m);
        if !det.is_one() {
            return Err(HomologyError::NotUnimodular(det));
        }
        Ok(basis)
    }

    pub fn rank(&self) -> usize {
        self.walks.len()
    }
}

/// Evaluations of a cocycle on the basis walks. Rejects cochains that do
/// not vanish on every vertex circle.
pub fn class_of(
    map: &CombinatorialMap,
    cochain: &Cochain,
    basis: &HomologyBasis,
) -> Result<Vec<i64>, HomologyError> {
    if cochain.values.len() != map.half_edge_count() {
        return Err(HomologyError::CochainLength {
            got: cochain.values.len(),
            expected: map.half_edge_count(),
        });
    }
    for v in 0..map.vertex_count() {
        if evaluate(cochain, &DualWalk::vertex_circle(v))? != 0 {
            return Err(HomologyError::NotCocycle { vertex: v });
        }
    }
    basis.walks.iter().map(|w| evaluate(cochain, w)).collect()
}

/// Algebraic intersection numbers of the basis walks.
///
/// Each walk is a sequence of chords, one per face it passes through,
/// joining the point where it enters the face to the point where it leaves.
/// Crossing points on a shared edge are spread along the edge in a fixed
/// order, and two chords of one face cross iff their endpoints interleave
/// on the face boundary.
pub fn intersection_form(map: &CombinatorialMap, basis: &HomologyBasis) -> Vec<Vec<i64>> {
    let n = basis.walks.len();
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[i][j] = intersection_number(map, &basis.walks[i], &basis.walks[j]);
            }
        }
    }
    m
}

/// Boundary coordinate of a crossing point: position of the half-edge in its
/// face cycle, then position along the half-edge.
type Point = (usize, usize, i64);

pub fn intersection_number(map: &CombinatorialMap, a: &DualWalk, b: &DualWalk) -> i64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let faces = map.faces();
    let mut slot = vec![0usize; map.half_edge_count()];
    for cycle in &faces.faces {
        for (i, h) in cycle.iter().enumerate() {
            slot[h.0] = i;
        }
    }
    let index = map.edge_index();
    let mut next_rank = vec![0i64; map.edge_count()];
    let big = (a.len() + b.len()) as i64 + 1;

    // Rank of each crossing along its edge, measured from the smaller
    // half-edge's end.
    let mut ranks = |w: &DualWalk| -> Vec<i64> {
        w.steps
            .iter()
            .map(|h| {
                let e = index[h.0];
                next_rank[e] += 1;
                next_rank[e]
            })
            .collect()
    };
    let ra = ranks(a);
    let rb = ranks(b);

    let point = |h: HalfEdge, rank: i64| -> Point {
        let along = if h < map.pair(h) { rank } else { big - rank };
        (faces.face_of(h), slot[h.0], along)
    };
    let chords = |w: &DualWalk, r: &[i64]| -> BTreeMap<usize, Vec<(Point, Point)>> {
        let mut out: BTreeMap<usize, Vec<(Point, Point)>> = BTreeMap::new();
        let len = w.steps.len();
        for i in 0..len {
            let h = w.steps[i];
            let j = (i + 1) % len;
            let enter = point(map.pair(h), r[i]);
            let leave = point(w.steps[j], r[j]);
            out.entry(enter.0).or_default().push((enter, leave));
        }
        out
    };
    let ca = chords(a, &ra);
    let cb = chords(b, &rb);

    let mut total = 0;
    for (face, list_a) in &ca {
        let Some(list_b) = cb.get(face) else { continue };
        for &(p1, p2) in list_a {
            for &(q1, q2) in list_b {
                total += chord_sign(p1, p2, q1, q2);
            }
        }
    }
    total
}

/// Whether `x` lies strictly inside the cyclic interval running from `from`
/// up to `to`.
fn in_arc(from: Point, to: Point, x: Point) -> bool {
    if from < to {
        from < x && x < to
    } else {
        x > from || x < to
    }
}

fn chord_sign(p1: Point, p2: Point, q1: Point, q2: Point) -> i64 {
    let q1_right = in_arc(p2, p1, q1);
    let q2_right = in_arc(p2, p1, q2);
    match (q1_right, q2_right) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// The standard symplectic matrix on `(α₁, β₁, …, α_g, β_g)`.
pub fn standard_symplectic(genus: usize) -> Vec<Vec<i64>> {
    let n = 2 * genus;
    let mut m = vec![vec![0; n]; n];
    for i in 0..genus {
        m[2 * i][2 * i + 1] = 1;
        m[2 * i + 1][2 * i] = -1;
    }
    m
}
