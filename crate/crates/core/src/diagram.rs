//! Building a map from closed curves listed by the crossings they pass.
//!
//! Each crossing is met by exactly two passages. Its half-edges are laid out
//! counterclockwise from the directions of the two passages: `[+1, +2, -1, -2]`
//! when the second passage turns left of the first, `[+1, -2, -1, +2]`
//! otherwise, where `+k` leaves along passage `k` and `-k` points back the way
//! it came.

use thiserror::Error;

use crate::map::{CombinatorialMap, HalfEdge, MapError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("curve {0} has no crossings")]
    NoCrossings(usize),
    #[error("crossing {crossing} is met {count} times, expected 2")]
    Multiplicity { crossing: usize, count: usize },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// One pass of a curve through a crossing; `second` tells which of the two
/// passes it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub second: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveMap {
    pub map: CombinatorialMap,
    /// Per curve and passage, the half-edge leaving forward.
    pub out_darts: Vec<Vec<HalfEdge>>,
    /// Per curve and passage, the half-edge pointing backward.
    pub in_darts: Vec<Vec<HalfEdge>>,
}

/// `left_turn[x]`: whether the second passage of crossing `x` goes to the
/// left of the first.
pub fn build(curves: &[Vec<Passage>], left_turn: &[bool]) -> Result<CurveMap, DiagramError> {
    let mut count = vec![[0usize; 2]; left_turn.len()];
    for (i, c) in curves.iter().enumerate() {
        if c.is_empty() {
            return Err(DiagramError::NoCrossings(i));
        }
        for p in c {
            count[p.crossing][usize::from(p.second)] += 1;
        }
    }
    for (x, c) in count.iter().enumerate() {
        if *c != [1, 1] {
            return Err(DiagramError::Multiplicity {
                crossing: x,
                count: c[0] + c[1],
            });
        }
    }
    let slots = |p: &Passage| -> (usize, usize) {
        let (out, back) = match (p.second, left_turn[p.crossing]) {
            (false, _) => (0, 2),
            (true, true) => (1, 3),
            (true, false) => (3, 1),
        };
        (4 * p.crossing + out, 4 * p.crossing + back)
    };

    let n = 4 * left_turn.len();
    let mut pairing = vec![usize::MAX; n];
    let mut out_darts = Vec::new();
    let mut in_darts = Vec::new();
    for c in curves {
        let (outs, ins): (Vec<usize>, Vec<usize>) = c.iter().map(slots).unzip();
        for i in 0..c.len() {
            let a = outs[i];
            let b = ins[(i + 1) % c.len()];
            pairing[a] = b;
            pairing[b] = a;
        }
        out_darts.push(outs.into_iter().map(HalfEdge).collect());
        in_darts.push(ins.into_iter().map(HalfEdge).collect());
    }
    let map = CombinatorialMap::from_pairing(pairing)?;
    Ok(CurveMap {
        map,
        out_darts,
        in_darts,
    })
}
