//! Curve collections with transverse double points, encoded as 4-valent
//! combinatorial maps.
//!
//! A [`CombinatorialMap`] is stored in canonical form: vertex `v` owns the
//! half-edges `4v..4v+4`, listed in counterclockwise order, so the rotation
//! permutation is implicit and only the edge involution is kept. Half-edges
//! `4v + i` and `4v + (i + 2) % 4` are opposite at `v`: the curve passing
//! through the double point goes straight from one to the other.
//!
//! Faces are the orbits of `rotation ∘ pairing`. With counterclockwise
//! rotations, every half-edge read as a directed edge has its face on the
//! right, so face boundaries run clockwise.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// A dense half-edge index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge(pub usize);

impl HalfEdge {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }

    #[inline]
    pub fn vertex(self) -> usize {
        self.0 / 4
    }

    /// Position of the half-edge in its vertex's counterclockwise order.
    #[inline]
    pub fn slot(self) -> usize {
        self.0 % 4
    }

    /// Next half-edge counterclockwise around the same vertex.
    #[inline]
    pub fn ccw(self) -> HalfEdge {
        HalfEdge(self.0 - self.0 % 4 + (self.0 + 1) % 4)
    }

    #[inline]
    pub fn cw(self) -> HalfEdge {
        HalfEdge(self.0 - self.0 % 4 + (self.0 + 3) % 4)
    }

    /// The half-edge the same curve continues along through the vertex.
    #[inline]
    pub fn opposite(self) -> HalfEdge {
        HalfEdge(self.0 - self.0 % 4 + (self.0 + 2) % 4)
    }
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

/// One violated structural invariant of a [`RawMap`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    Empty,
    LengthMismatch { rotation: usize, pairing: usize },
    OutOfRange { half_edge: usize },
    RotationNotPermutation { half_edge: usize },
    OrbitSize { half_edge: usize, size: usize },
    PairingNotInvolution { half_edge: usize },
    FixedPoint { half_edge: usize },
    Disconnected { components: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Empty => write!(f, "map has no half-edges"),
            Diagnostic::LengthMismatch { rotation, pairing } => write!(
                f,
                "rotation has {rotation} entries but pairing has {pairing}"
            ),
            Diagnostic::OutOfRange { half_edge } => {
                write!(f, "half-edge id {half_edge} out of range")
            }
            Diagnostic::RotationNotPermutation { half_edge } => {
                write!(f, "rotation is not a permutation (h{half_edge} hit twice)")
            }
            Diagnostic::OrbitSize { half_edge, size } => write!(
                f,
                "orbit-size: vertex containing h{half_edge} has degree {size}, expected 4"
            ),
            Diagnostic::PairingNotInvolution { half_edge } => {
                write!(f, "pairing is not an involution at h{half_edge}")
            }
            Diagnostic::FixedPoint { half_edge } => {
                write!(f, "fixed-point: h{half_edge} is not paired with another half-edge")
            }
            Diagnostic::Disconnected { components } => {
                write!(f, "connectivity: map has {components} components")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("invalid map: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

/// Unchecked permutation data, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMap {
    pub rotation: Vec<usize>,
    pub pairing: Vec<usize>,
}

impl RawMap {
    /// Every structural violation, in a fixed order. Empty iff the map is a
    /// connected 4-valent map with a fixed-point-free edge involution.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let n = self.rotation.len();
        let mut out = Vec::new();
        if n == 0 && self.pairing.is_empty() {
            out.push(Diagnostic::Empty);
            return out;
        }
        if self.pairing.len() != n {
            out.push(Diagnostic::LengthMismatch {
                rotation: n,
                pairing: self.pairing.len(),
            });
            return out;
        }
        for &h in self.rotation.iter().chain(&self.pairing) {
            if h >= n {
                out.push(Diagnostic::OutOfRange { half_edge: h });
                return out;
            }
        }
        let mut hit = vec![false; n];
        for &h in &self.rotation {
            if std::mem::replace(&mut hit[h], true) {
                out.push(Diagnostic::RotationNotPermutation { half_edge: h });
                return out;
            }
        }

        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut size = 0;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                size += 1;
                h = self.rotation[h];
            }
            if size != 4 {
                out.push(Diagnostic::OrbitSize {
                    half_edge: start,
                    size,
                });
            }
        }
        for h in 0..n {
            let p = self.pairing[h];
            if p == h {
                out.push(Diagnostic::FixedPoint { half_edge: h });
            } else if self.pairing[p] != h {
                out.push(Diagnostic::PairingNotInvolution { half_edge: h });
            }
        }

        let components = count_components(n, |h| [self.rotation[h], self.pairing[h]]);
        if components > 1 {
            out.push(Diagnostic::Disconnected { components });
        }
        out
    }
}

fn count_components<F, I>(n: usize, neighbours: F) -> usize
where
    F: Fn(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for h in 0..n {
        for g in neighbours(h) {
            let (a, b) = (find(&mut parent, h), find(&mut parent, g));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).filter(|&h| find(&mut parent, h) == h).count()
}

/// The orbits of the face permutation, each starting at its smallest half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<HalfEdge>>,
    face_of: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Index of the face lying to the right of `h`.
    pub fn face_of(&self, h: HalfEdge) -> usize {
        self.face_of[h.0]
    }

    /// Sorted face degrees.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }
}

/// A 4-valent map in canonical form. See the module docs for conventions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialMap {
    pairing: Vec<usize>,
}

impl CombinatorialMap {
    /// Builds a map from a canonical pairing, checking every invariant.
    pub fn from_pairing(pairing: Vec<usize>) -> Result<Self, MapError> {
        let raw = RawMap {
            rotation: (0..pairing.len()).map(|h| HalfEdge(h).ccw().0).collect(),
            pairing,
        };
        let diags = if !raw.rotation.len().is_multiple_of(4) {
            vec![Diagnostic::OrbitSize {
                half_edge: raw.rotation.len() - raw.rotation.len() % 4,
                size: raw.rotation.len() % 4,
            }]
        } else {
            raw.validate()
        };
        if diags.is_empty() {
            Ok(Self {
                pairing: raw.pairing,
            })
        } else {
            Err(MapError::Invalid(diags))
        }
    }

    /// Canonical pairing without the connectivity check. Used for the
    /// intermediate results of local moves, which may split the map.
    pub(crate) fn from_pairing_unchecked(pairing: Vec<usize>) -> Self {
        debug_assert!(pairing.len().is_multiple_of(4));
        debug_assert!((0..pairing.len()).all(|h| pairing[h] != h && pairing[pairing[h]] == h));
        Self { pairing }
    }

    /// Validates `raw` and relabels it canonically. Also returns the
    /// relabelling `old id -> new id`.
    pub fn from_raw(raw: &RawMap) -> Result<(Self, Vec<usize>), MapError> {
        let diags = raw.validate();
        if !diags.is_empty() {
            return Err(MapError::Invalid(diags));
        }
        let n = raw.rotation.len();
        let mut relabel = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if relabel[start] != usize::MAX {
                continue;
            }
            let mut h = start;
            for _ in 0..4 {
                relabel[h] = next;
                next += 1;
                h = raw.rotation[h];
            }
        }
        let mut pairing = vec![0; n];
        for h in 0..n {
            pairing[relabel[h]] = relabel[raw.pairing[h]];
        }
        Ok((Self { pairing }, relabel))
    }

    pub fn to_raw(&self) -> RawMap {
        RawMap {
            rotation: (0..self.pairing.len()).map(|h| HalfEdge(h).ccw().0).collect(),
            pairing: self.pairing.clone(),
        }
    }

    pub fn half_edge_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.pairing.len() / 4
    }

    pub fn edge_count(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..self.pairing.len()).map(HalfEdge)
    }

    pub fn pairing_slice(&self) -> &[usize] {
        &self.pairing
    }

    #[inline]
    pub fn pair(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge(self.pairing[h.0])
    }

    /// Face permutation `rotation ∘ pairing`.
    #[inline]
    pub fn face_next(&self, h: HalfEdge) -> HalfEdge {
        self.pair(h).ccw()
    }

    /// Edges as `(smaller, larger)` half-edge pairs, indexed by the smaller id.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        (0..self.pairing.len())
            .filter(|&h| h < self.pairing[h])
            .map(|h| (HalfEdge(h), HalfEdge(self.pairing[h])))
            .collect()
    }

    /// Edge index of each half-edge (edges ranked by their smaller half-edge).
    pub fn edge_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.pairing.len()];
        let mut next = 0;
        for h in 0..self.pairing.len() {
            let p = self.pairing[h];
            if h < p {
                idx[h] = next;
                idx[p] = next;
                next += 1;
            }
        }
        idx
    }

    pub fn is_connected(&self) -> bool {
        self.pairing.is_empty()
            || count_components(self.pairing.len(), |h| [HalfEdge(h).ccw().0, self.pairing[h]])
                == 1
    }

    pub fn faces(&self) -> FaceSet {
        let n = self.pairing.len();
        let mut face_of = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let mut h = HalfEdge(start);
            while face_of[h.0] == usize::MAX {
                face_of[h.0] = id;
                cycle.push(h);
                h = self.face_next(h);
            }
            faces.push(cycle);
        }
        FaceSet { faces, face_of }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces().len() as i64
    }

    /// Genus of the surface the map is cellularly embedded in.
    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        assert!(chi <= 2 && chi % 2 == 0, "odd Euler characteristic {chi}");
        ((2 - chi) / 2) as usize
    }

    /// The closed curves of the collection. Each strand lists the half-edges
    /// it leaves vertices along, in traversal order.
    pub fn curves(&self) -> Vec<Vec<HalfEdge>> {
        let mut used = vec![false; self.pairing.len()];
        let mut out = Vec::new();
        for start in 0..self.pairing.len() {
            if used[start] {
                continue;
            }
            let mut strand = Vec::new();
            let mut h = HalfEdge(start);
            while !used[h.0] {
                used[h.0] = true;
                used[self.pairing[h.0]] = true;
                strand.push(h);
                h = self.pair(h).opposite();
            }
            out.push(strand);
        }
        out
    }

    /// The orientation-reversed map: every rotation inverted.
    pub fn mirror(&self) -> Self {
        let flip = |h: usize| h - h % 4 + (4 - h % 4) % 4;
        let mut pairing = vec![0; self.pairing.len()];
        for h in 0..self.pairing.len() {
            pairing[flip(h)] = flip(self.pairing[h]);
        }
        Self { pairing }
    }

    /// Applies a half-edge bijection `perm[old] = new` that maps whole vertex
    /// orbits onto vertex orbits while preserving each rotation.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut pairing = vec![0; self.pairing.len()];
        for h in 0..self.pairing.len() {
            pairing[perm[h]] = perm[self.pairing[h]];
        }
        Self { pairing }
    }

    /// Invariant code, equal for two connected maps iff they are isomorphic
    /// (orientation-preservingly, or in either orientation when
    /// `allow_reflection` is set).
    pub fn canonical_code(&self, allow_reflection: bool) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        let reflections: &[bool] = if allow_reflection {
            &[false, true]
        } else {
            &[false]
        };
        for &reflect in reflections {
            for start in 0..self.pairing.len() {
                let code = self.bfs_code(start, reflect);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }

    fn bfs_code(&self, start: usize, reflect: bool) -> Vec<u32> {
        let n = self.pairing.len();
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[start] = 0;
        order.push(start);
        let mut i = 0;
        let mut code = Vec::with_capacity(2 * n);
        while i < order.len() {
            let h = order[i];
            i += 1;
            let turn = if reflect {
                HalfEdge(h).cw().0
            } else {
                HalfEdge(h).ccw().0
            };
            for g in [turn, self.pairing[h]] {
                if label[g] == u32::MAX {
                    label[g] = order.len() as u32;
                    order.push(g);
                }
                code.push(label[g]);
            }
        }
        code
    }

    /// Decides isomorphism and returns a witness `phi[h_self] = h_other`.
    /// With `allow_reflection`, an orientation-reversing witness (rotation
    /// sent to inverse rotation) is tried when no orientation-preserving one
    /// exists.
    pub fn isomorphism(&self, other: &Self, allow_reflection: bool) -> Option<Isomorphism> {
        if self.pairing.len() != other.pairing.len() {
            return None;
        }
        if self.pairing.is_empty() {
            return Some(Isomorphism {
                map: Vec::new(),
                reflected: false,
            });
        }
        let reflections: &[bool] = if allow_reflection {
            &[false, true]
        } else {
            &[false]
        };
        for &reflected in reflections {
            for target in 0..other.pairing.len() {
                if let Some(map) = self.extend_from(other, target, reflected) {
                    return Some(Isomorphism { map, reflected });
                }
            }
        }
        None
    }

    fn extend_from(&self, other: &Self, target: usize, reflected: bool) -> Option<Vec<usize>> {
        let n = self.pairing.len();
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut queue = VecDeque::new();
        phi[0] = target;
        used[target] = true;
        queue.push_back(0);
        while let Some(h) = queue.pop_front() {
            let image = phi[h];
            let turned = if reflected {
                HalfEdge(image).cw().0
            } else {
                HalfEdge(image).ccw().0
            };
            let pairs = [
                (HalfEdge(h).ccw().0, turned),
                (self.pairing[h], other.pairing[image]),
            ];
            for (g, g_image) in pairs {
                if phi[g] == usize::MAX {
                    if used[g_image] {
                        return None;
                    }
                    phi[g] = g_image;
                    used[g_image] = true;
                    queue.push_back(g);
                } else if phi[g] != g_image {
                    return None;
                }
            }
        }
        phi.iter().all(|&p| p != usize::MAX).then_some(phi)
    }

    pub fn isomorphic(&self, other: &Self, allow_reflection: bool) -> bool {
        self.isomorphism(other, allow_reflection).is_some()
    }
}

/// A half-edge bijection between two maps commuting with the pairings and
/// with the rotations (inverted on one side when `reflected`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<usize>,
    pub reflected: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two loops at one vertex joining opposite half-edges: a meridian and a
    /// longitude on the torus.
    fn torus_eight() -> CombinatorialMap {
        CombinatorialMap::from_pairing(vec![2, 3, 0, 1]).unwrap()
    }

    /// Two loops joining adjacent half-edges: the planar figure-eight.
    fn planar_eight() -> CombinatorialMap {
        CombinatorialMap::from_pairing(vec![1, 0, 3, 2]).unwrap()
    }

    /// Brute-force face trace straight from the rotation/pairing definition.
    fn face_count_oracle(rotation: &[usize], pairing: &[usize]) -> usize {
        let n = rotation.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if !seen[s] {
                count += 1;
                let mut h = s;
                while !seen[h] {
                    seen[h] = true;
                    h = rotation[pairing[h]];
                }
            }
        }
        count
    }

    #[test]
    fn figure_eight_rotation_choices() {
        let pairing = [1, 0, 3, 2];
        // rotation (0 1 2 3): adjacent loops
        let planar = face_count_oracle(&[1, 2, 3, 0], &pairing);
        // rotation (0 2 1 3): the same pairing now joins opposite half-edges
        let toral = face_count_oracle(&[2, 3, 1, 0], &pairing);
        assert_eq!((planar, toral), (3, 1));
        assert_eq!(planar_eight().faces().len(), 3);
        assert_eq!(planar_eight().genus(), 0);
        assert_eq!(torus_eight().faces().len(), 1);
        assert_eq!(torus_eight().euler_characteristic(), 0);
        assert_eq!(torus_eight().genus(), 1);
    }

    #[test]
    fn strands() {
        assert_eq!(planar_eight().curves().len(), 1);
        assert_eq!(torus_eight().curves().len(), 2);
    }

    #[test]
    fn fixed_point_diagnostic() {
        let raw = RawMap {
            rotation: vec![1, 2, 3, 0],
            pairing: vec![0, 2, 1, 3],
        };
        let d = raw.validate();
        assert!(d.contains(&Diagnostic::FixedPoint { half_edge: 0 }));
        assert!(d.contains(&Diagnostic::FixedPoint { half_edge: 3 }));
    }

    #[test]
    fn orbit_size_diagnostic() {
        let raw = RawMap {
            rotation: vec![1, 2, 0, 4, 5, 3],
            pairing: vec![3, 4, 5, 0, 1, 2],
        };
        let d = raw.validate();
        assert_eq!(
            d,
            vec![
                Diagnostic::OrbitSize { half_edge: 0, size: 3 },
                Diagnostic::OrbitSize { half_edge: 3, size: 3 }
            ]
        );
    }

    #[test]
    fn disconnected_diagnostic() {
        let raw = RawMap {
            rotation: vec![1, 2, 3, 0, 5, 6, 7, 4],
            pairing: vec![1, 0, 3, 2, 5, 4, 7, 6],
        };
        assert_eq!(
            raw.validate(),
            vec![Diagnostic::Disconnected { components: 2 }]
        );
        assert!(CombinatorialMap::from_raw(&raw).is_err());
    }

    #[test]
    fn from_raw_relabels_canonically() {
        // vertex listed as (7 5 6 4) and (0 3 1 2)
        let raw = RawMap {
            rotation: {
                let mut r = vec![0; 8];
                for cyc in [[7, 5, 6, 4], [0, 3, 1, 2]] {
                    for i in 0..4 {
                        r[cyc[i]] = cyc[(i + 1) % 4];
                    }
                }
                r
            },
            pairing: vec![4, 5, 6, 7, 0, 1, 2, 3],
        };
        let (map, relabel) = CombinatorialMap::from_raw(&raw).unwrap();
        assert_eq!(map.vertex_count(), 2);
        for h in 0..8 {
            assert_eq!(relabel[raw.pairing[h]], map.pair(HalfEdge(relabel[h])).0);
            assert_eq!(relabel[raw.rotation[h]], HalfEdge(relabel[h]).ccw().0);
        }
    }

    #[test]
    fn mirror_is_isomorphic_with_reflection() {
        let m = CombinatorialMap::from_pairing(vec![4, 6, 9, 11, 0, 8, 1, 10, 5, 2, 7, 3]).unwrap();
        let r = m.mirror();
        let iso = m.isomorphism(&r, true).unwrap();
        for h in 0..12 {
            assert_eq!(iso.map[m.pairing[h]], r.pair(HalfEdge(iso.map[h])).0);
        }
        assert_eq!(m.canonical_code(true), r.canonical_code(true));
        assert_eq!(m.mirror().mirror(), m);
    }

    #[test]
    fn identity_witness() {
        let m = torus_eight();
        let iso = m.isomorphism(&m, false).unwrap();
        assert_eq!(iso.map, vec![0, 1, 2, 3]);
        assert!(!iso.reflected);
        assert!(!m.isomorphic(&planar_eight(), true));
    }
}
