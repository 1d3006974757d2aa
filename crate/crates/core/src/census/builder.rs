//! Drawing a word on the genus-2 surface and reading off its map.
//!
//! All crossings lie in the annulus. Its universal cover is modelled as the
//! upper half-plane with deck map `z ↦ 2z`: a boundary point `(y, k)` (position
//! `y ∈ [0, 1)` in turn `k`) sits at `(1 + y)·2^k` on the inner boundary and at
//! `-(1 + y)·2^k` on the outer one. Arcs are drawn as geodesics (half-circles),
//! which puts them in minimal position, and crossings and their order along
//! each arc are computed exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::annulus::{AnnulusArc, Point, Side, PERIOD};
use super::word::{ArcWord, Letter};
use super::CensusError;
use crate::diagram::{self, CurveMap, Passage};
use crate::homology::DualWalk;
use crate::map::{CombinatorialMap, HalfEdge};

fn two_pow(k: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::one() << k.unsigned_abs());
    if k >= 0 {
        p
    } else {
        p.recip()
    }
}

fn real(p: Point) -> BigRational {
    let turn = p.y.div_euclid(PERIOD);
    let y = BigRational::new(BigInt::from(p.y.rem_euclid(PERIOD)), BigInt::from(PERIOD));
    let x = (BigRational::one() + y) * two_pow(turn);
    match p.side {
        Side::Inner => x,
        Side::Outer => -x,
    }
}

#[derive(Clone, Debug)]
struct Geodesic {
    u: BigRational,
    v: BigRational,
}

impl Geodesic {
    fn of(arc: AnnulusArc) -> Self {
        Self {
            u: real(arc.from),
            v: real(arc.to),
        }
    }

    fn scaled(&self, k: i64) -> Self {
        let s = two_pow(k);
        Self {
            u: &self.u * &s,
            v: &self.v * &s,
        }
    }

    fn separates(&self, other: &Self) -> bool {
        let (lo, hi) = if self.u < self.v {
            (&self.u, &self.v)
        } else {
            (&self.v, &self.u)
        };
        let inside = |x: &BigRational| lo < x && x < hi;
        inside(&other.u) != inside(&other.v)
    }

    /// Real part of the crossing with another geodesic.
    fn meet(&self, other: &Self) -> BigRational {
        let num = &other.u * &other.v - &self.u * &self.v;
        let den = (&other.u + &other.v) - (&self.u + &self.v);
        num / den
    }

    /// Parameter increasing along the direction of travel.
    fn key(&self, x: &BigRational) -> BigRational {
        if self.u < self.v {
            x.clone()
        } else {
            -x
        }
    }

    /// Whether `other` passes from right to left across `self` at their
    /// crossing, i.e. turns left of it.
    fn left_turn(&self, other: &Self) -> bool {
        let s = |g: &Geodesic| if g.u < g.v { 1 } else { -1 };
        let c = |g: &Geodesic| &g.u + &g.v;
        let d = c(other) - c(self);
        s(self) * s(other) * if d.is_positive() { 1 } else { -1 } > 0
    }
}

/// A genus-2 map built from a word, with the dual walks of the standard
/// symplectic basis `(α1, β1, α2, β2)`: `α_i` crosses only the arc `b_i`, `β_i`
/// only the arc `a_i`.
#[derive(Clone, Debug)]
pub struct WordMap {
    pub map: CombinatorialMap,
    pub walks: [DualWalk; 4],
    /// Per letter, the half-edge running along it in its forward direction.
    pub handle_darts: [HalfEdge; 4],
}

pub fn word_to_map(word: &ArcWord) -> Result<WordMap, CensusError> {
    let arcs_per_curve: Vec<Vec<AnnulusArc>> = word.curves.iter().map(|c| c.arcs()).collect();
    let arcs: Vec<AnnulusArc> = arcs_per_curve.iter().flatten().copied().collect();
    let geo: Vec<Geodesic> = arcs.iter().map(|&a| Geodesic::of(a)).collect();

    let reach = arcs
        .iter()
        .flat_map(|a| [a.from.y, a.to.y])
        .map(|y| y.div_euclid(PERIOD).abs())
        .max()
        .unwrap_or(0)
        * 2
        + 3;

    // Crossings: (arc, key along it) for both passes, and the turn sign.
    let mut passes: Vec<Vec<(BigRational, Passage)>> = vec![Vec::new(); arcs.len()];
    let mut left = Vec::new();
    for i in 0..arcs.len() {
        for j in i..arcs.len() {
            for k in -reach..=reach {
                if i == j && k <= 0 {
                    continue;
                }
                let other = geo[j].scaled(k);
                if !geo[i].separates(&other) {
                    continue;
                }
                let x = geo[i].meet(&other);
                let id = left.len();
                left.push(geo[i].left_turn(&other));
                let back = &x * two_pow(-k);
                passes[i].push((geo[i].key(&x), Passage { crossing: id, second: false }));
                passes[j].push((geo[j].key(&back), Passage { crossing: id, second: true }));
            }
        }
    }
    for list in &mut passes {
        list.sort_by(|a, b| a.0.cmp(&b.0));
        if list.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CensusError::TriplePoint(word.to_string()));
        }
    }

    // Concatenate per curve; remember how many passes precede each letter.
    let mut curves = Vec::new();
    let mut letter_slot = [(0usize, 0usize, true); 4];
    let mut offset = 0;
    for (ci, curve) in word.curves.iter().enumerate() {
        let mut list = Vec::new();
        for ai in 0..curve.steps.len() {
            list.extend(passes[offset + ai].iter().map(|p| p.1));
            // the letter after arc `ai`
            let next = curve.steps[(ai + 1) % curve.steps.len()];
            letter_slot[next.letter as usize] = (ci, list.len(), next.forward);
        }
        offset += curve.steps.len();
        curves.push(list);
    }
    let cm: CurveMap = diagram::build(&curves, &left).map_err(|e| match e {
        diagram::DiagramError::NoCrossings(_) => CensusError::CrossingFreeCurve(word.to_string()),
        other => CensusError::Diagram(other),
    })?;

    let mut handle_darts = [HalfEdge(0); 4];
    for l in Letter::ALL {
        let (ci, after, forward) = letter_slot[l as usize];
        let len = curves[ci].len();
        let dart = if forward {
            cm.out_darts[ci][(after + len - 1) % len]
        } else {
            cm.in_darts[ci][after % len]
        };
        handle_darts[l as usize] = dart;
    }
    let along = |l: Letter| handle_darts[l as usize];
    let walks = [
        DualWalk::new(vec![cm.map.pair(along(Letter::B1))]),
        DualWalk::new(vec![along(Letter::A1)]),
        DualWalk::new(vec![cm.map.pair(along(Letter::B2))]),
        DualWalk::new(vec![along(Letter::A2)]),
    ];
    Ok(WordMap {
        map: cm.map,
        walks,
        handle_darts,
    })
}

/// Filling iff the map is cellularly embedded in genus 2.
pub fn is_filling(wm: &WordMap) -> bool {
    wm.map.genus() == 2
}
