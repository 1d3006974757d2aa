//! Arcs in the annulus joining the two one-holed tori, and their minimal
//! intersection numbers.
//!
//! Points on a boundary circle are recorded in the universal cover: `y` is a
//! position along the boundary line, and one turn around the annulus adds
//! [`PERIOD`]. Cut open along a transversal, the annulus is a strip whose
//! boundary read as a circle runs up the inner line and back down the outer
//! one, so two arcs cross iff their endpoints interleave in that order. Each
//! deck translate of one arc interleaving the other gives one crossing.

use std::fmt;

/// Length of one turn around the annulus in boundary coordinates.
pub const PERIOD: i64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// The boundary of the first one-holed torus.
    Inner,
    /// The boundary of the second one-holed torus.
    Outer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub side: Side,
    pub y: i64,
}

impl Point {
    pub fn new(side: Side, y: i64) -> Self {
        Self { side, y }
    }

    pub fn shifted(self, turns: i64) -> Self {
        Self {
            side: self.side,
            y: self.y + turns * PERIOD,
        }
    }
}

/// An oriented arc through the annulus, endpoints already lifted so that the
/// twist is built in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AnnulusArc {
    pub from: Point,
    pub to: Point,
}

/// The four labelled endpoints used to state the crossing formulas: `A` and
/// `C` on the inner boundary with `A` above `C`, `B` and `D` on the outer
/// boundary with `B` above `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    A,
    B,
    C,
    D,
}

impl Terminal {
    pub fn point(self) -> Point {
        match self {
            Terminal::A => Point::new(Side::Inner, 60),
            Terminal::B => Point::new(Side::Outer, 70),
            Terminal::C => Point::new(Side::Inner, 20),
            Terminal::D => Point::new(Side::Outer, 30),
        }
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl AnnulusArc {
    pub fn new(from: Point, to: Point) -> Self {
        Self { from, to }
    }

    /// The arc from `from` to `to` making `twist` turns, counted
    /// algebraically against a fixed transversal.
    pub fn labelled(from: Terminal, to: Terminal, twist: i64) -> Self {
        Self::new(from.point(), to.point().shifted(twist))
    }

    pub fn reversed(self) -> Self {
        Self::new(self.to, self.from)
    }

    pub fn is_crossing(self) -> bool {
        self.from.side != self.to.side
    }

    /// Inner and outer endpoint of an arc joining the two sides.
    fn ends(self) -> (i64, i64) {
        if self.from.side == Side::Inner {
            (self.from.y, self.to.y)
        } else {
            (self.to.y, self.from.y)
        }
    }

    /// Endpoints of an arc with both ends on one side, lower first.
    fn span(self) -> (i64, i64) {
        (self.from.y.min(self.to.y), self.from.y.max(self.to.y))
    }

    pub fn translate(self, turns: i64) -> Self {
        Self::new(self.from.shifted(turns), self.to.shifted(turns))
    }
}

/// Number of `k ∈ Z` with `k·PERIOD` strictly between `a` and `b`.
fn turns_between(a: i64, b: i64) -> i64 {
    let (lo, hi) = (a.min(b), a.max(b));
    if lo == hi {
        return 0;
    }
    // multiples of PERIOD in the open interval (lo, hi)
    let below_hi = (hi - 1).div_euclid(PERIOD);
    let upto_lo = lo.div_euclid(PERIOD);
    below_hi - upto_lo
}

/// Minimal number of crossings of two distinct arcs.
pub fn arc_intersection(a: AnnulusArc, b: AnnulusArc) -> i64 {
    match (a.is_crossing(), b.is_crossing()) {
        (true, true) => {
            let (s1, t1) = a.ends();
            let (s2, t2) = b.ends();
            turns_between(s1 - s2, t1 - t2)
        }
        (false, true) | (true, false) => {
            let (one_sided, crossing) = if a.is_crossing() { (b, a) } else { (a, b) };
            let (lo, hi) = one_sided.span();
            let (s, t) = crossing.ends();
            let z = if one_sided.from.side == Side::Inner { s } else { t };
            turns_between(lo - z, hi - z)
        }
        (false, false) => {
            if a.from.side != b.from.side {
                return 0;
            }
            let (a1, b1) = a.span();
            let (a2, b2) = b.span();
            // translates with exactly one endpoint of `b` inside `a`
            let first_in = turns_between(a1 - a2, b1 - a2);
            let second_in = turns_between(a1 - b2, b1 - b2);
            let both_in = if b1 - b2 > a1 - a2 {
                turns_between(a1 - a2, b1 - b2)
            } else {
                0
            };
            first_in + second_in - 2 * both_in
        }
    }
}

/// Minimal number of self-crossings of one arc.
pub fn arc_self_intersection(a: AnnulusArc) -> i64 {
    if a.is_crossing() {
        0
    } else {
        // translates by k and -k meet the arc at the same point
        arc_intersection(a, a) / 2
    }
}
