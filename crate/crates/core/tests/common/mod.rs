//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use isonorm_core::census;
use isonorm_core::format::parse_map;
use isonorm_core::homology::{homology_basis, DualWalk, HomologyBasis};
use isonorm_core::polytope::{minkowski_sum, LatticePolytope};
use isonorm_core::{convex_hull, CombinatorialMap};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let seed = std::env::var("ISONORM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_261_015u64);
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub struct Fixture {
    pub name: String,
    pub map: CombinatorialMap,
    /// Basis walks shipped with the fixture, empty when none.
    pub walks: Vec<DualWalk>,
}

impl Fixture {
    fn new(name: &str, map: CombinatorialMap) -> Self {
        Self {
            name: name.into(),
            map,
            walks: Vec::new(),
        }
    }

    /// The shipped basis if any, else the computed one.
    pub fn basis(&self) -> HomologyBasis {
        if self.walks.is_empty() {
            homology_basis(&self.map).unwrap()
        } else {
            HomologyBasis::from_walks(&self.map, self.walks.clone()).unwrap()
        }
    }
}

pub fn census_map(i: usize) -> Fixture {
    let path = data_dir().join(format!("census{i}.map"));
    let doc = parse_map(&std::fs::read_to_string(&path).unwrap()).unwrap();
    Fixture {
        name: format!("census{i}"),
        map: doc.map,
        walks: doc.walks,
    }
}

/// Every fixture map: the golden census files, small hand-made maps, torus
/// drawings and the exhaustive one-faced list.
pub fn fixtures() -> Vec<Fixture> {
    let mut out: Vec<Fixture> = (1..=4).map(census_map).collect();
    let pm = |p: Vec<usize>| CombinatorialMap::from_pairing(p).unwrap();
    out.push(Fixture::new("torus eight", pm(vec![2, 3, 0, 1])));
    out.push(Fixture::new("planar eight", pm(vec![1, 0, 3, 2])));
    out.push(Fixture::new("two circles", pm(vec![7, 6, 5, 4, 3, 2, 1, 0])));
    for (name, gens) in [
        ("torus square", vec![[1, 0], [0, 1]]),
        ("torus diamond", vec![[1, 1], [1, -1]]),
        ("torus hexagon", vec![[1, 0], [0, 1], [1, 1]]),
        ("torus 2x1", vec![[2, 0], [0, 1]]),
    ] {
        let poly = zonotope(&gens);
        let col = isonorm_core::realize(&poly).unwrap();
        let cm = col.to_map().unwrap().unwrap();
        out.push(Fixture::new(name, cm.map));
    }
    for (i, m) in census::exhaustive_unicellular_maps().one_faced.into_iter().enumerate() {
        out.push(Fixture::new(&format!("unicellular {i}"), m));
    }
    out
}

pub fn zonotope(gens: &[[i64; 2]]) -> LatticePolytope {
    let mut p = convex_hull(&[vec![0, 0]]).unwrap();
    for w in gens {
        let seg = convex_hull(&[w.to_vec(), vec![-w[0], -w[1]]]).unwrap();
        p = minkowski_sum(&p, &seg).unwrap();
    }
    p
}

/// A uniformly random 4-valent pairing on `v` vertices, retried until
/// connected.
pub fn random_map(rng: &mut impl Rng, v: usize) -> CombinatorialMap {
    loop {
        let mut darts: Vec<usize> = (0..4 * v).collect();
        darts.shuffle(rng);
        let mut pairing = vec![0; 4 * v];
        for c in darts.chunks(2) {
            pairing[c[0]] = c[1];
            pairing[c[1]] = c[0];
        }
        if let Ok(m) = CombinatorialMap::from_pairing(pairing) {
            return m;
        }
    }
}

/// Sign vectors over the edges for which every vertex has exactly two
/// positive half-edges, by trying all `2^E` assignments.
pub fn brute_eulerian(map: &CombinatorialMap) -> BTreeSet<Vec<bool>> {
    let edges = map.edges();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << edges.len() {
        let mut count = vec![0; map.vertex_count()];
        for (e, &(lo, hi)) in edges.iter().enumerate() {
            let pos = if mask >> e & 1 == 1 { lo } else { hi };
            count[pos.vertex()] += 1;
        }
        if count.iter().all(|&c| c == 2) {
            out.insert((0..edges.len()).map(|e| mask >> e & 1 == 1).collect());
        }
    }
    out
}

type Q = Ratio<i128>;

/// Solves `Σ λ_i s_i = p`, `Σ λ_i = 1` when the `s_i` are affinely
/// independent; `None` otherwise or when inconsistent.
fn barycentric(subset: &[&Vec<i64>], p: &[i64]) -> Option<Vec<Q>> {
    let k = subset.len();
    let d = p.len();
    let mut rows: Vec<Vec<Q>> = (0..=d)
        .map(|r| {
            let mut row: Vec<Q> = subset
                .iter()
                .map(|s| Q::from(if r < d { s[r] as i128 } else { 1 }))
                .collect();
            row.push(Q::from(if r < d { p[r] as i128 } else { 1 }));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != Q::from(0)) else {
            return None;
        };
        rows.swap(pivot_row, r);
        let piv = rows[pivot_row][col];
        for c in col..=k {
            rows[pivot_row][c] /= piv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != Q::from(0) {
                let f = rows[r][col];
                for c in col..=k {
                    let delta = f * rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[k..].iter().any(|r| r[k] != Q::from(0)) {
        return None;
    }
    Some((0..k).map(|i| rows[i][k]).collect())
}

fn subsets<'a>(items: &[&'a Vec<i64>], k: usize, f: &mut impl FnMut(&[&'a Vec<i64>]) -> bool) -> bool {
    fn go<'a>(
        items: &[&'a Vec<i64>],
        k: usize,
        start: usize,
        cur: &mut Vec<&'a Vec<i64>>,
        f: &mut impl FnMut(&[&'a Vec<i64>]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            cur.push(items[i]);
            if go(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(items, k, 0, &mut Vec::new(), f)
}

/// Hull vertices by Carathéodory: a point is a vertex iff it is not a convex
/// combination of at most `d + 1` affinely independent other points.
pub fn caratheodory_vertices(points: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let distinct: BTreeSet<Vec<i64>> = points.iter().cloned().collect();
    let d = points[0].len();
    distinct
        .iter()
        .filter(|p| {
            let others: Vec<&Vec<i64>> = distinct.iter().filter(|q| q != p).collect();
            !(1..=(d + 1).min(others.len())).any(|k| {
                subsets(&others, k, &mut |s| {
                    barycentric(s, p).is_some_and(|l| l.iter().all(|x| *x >= Q::from(0)))
                })
            })
        })
        .cloned()
        .collect()
}
