//! Words naming genus-2 collections: each curve is a cyclic sequence of the
//! arcs `a1, b1` (first handle) and `a2, b2` (second handle), each possibly
//! reversed, with twists `η^k` around the joining annulus in between.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::annulus::{AnnulusArc, Point, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A1,
    B1,
    A2,
    B2,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A1, Letter::B1, Letter::A2, Letter::B2];

    pub fn name(self) -> &'static str {
        match self {
            Letter::A1 => "a1",
            Letter::B1 => "b1",
            Letter::A2 => "a2",
            Letter::B2 => "b2",
        }
    }

    pub fn side(self) -> Side {
        match self {
            Letter::A1 | Letter::B1 => Side::Inner,
            Letter::A2 | Letter::B2 => Side::Outer,
        }
    }

    /// Boundary position of the arc's tail (`end = false`) or head.
    ///
    /// Going up the inner boundary the order is `b1+, a1-, b1-, a1+`, and
    /// going up the outer one `b2-, a2-, b2+, a2+`.
    pub fn endpoint(self, head: bool) -> Point {
        let y = match (self, head) {
            (Letter::B1, true) => 13,
            (Letter::A1, false) => 37,
            (Letter::B1, false) => 61,
            (Letter::A1, true) => 86,
            (Letter::B2, false) => 9,
            (Letter::A2, false) => 34,
            (Letter::B2, true) => 63,
            (Letter::A2, true) => 88,
        };
        Point::new(self.side(), y)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One arc letter and the twist of the annulus arc that follows it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub letter: Letter,
    pub forward: bool,
    pub twist: i64,
}

impl Step {
    pub fn new(letter: Letter, forward: bool, twist: i64) -> Self {
        Self {
            letter,
            forward,
            twist,
        }
    }

    /// Where the curve leaves this letter.
    pub fn exit(self) -> Point {
        self.letter.endpoint(self.forward)
    }

    /// Where the curve enters this letter.
    pub fn entry(self) -> Point {
        self.letter.endpoint(!self.forward)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveWord {
    pub steps: Vec<Step>,
}

impl CurveWord {
    /// The annulus arcs of the curve: arc `i` runs from the exit of letter
    /// `i` to the entry of letter `i + 1`, turning `twist_i` times.
    pub fn arcs(&self) -> Vec<AnnulusArc> {
        let n = self.steps.len();
        (0..n)
            .map(|i| {
                let s = self.steps[i];
                let next = self.steps[(i + 1) % n];
                AnnulusArc::new(s.exit(), next.entry().shifted(s.twist))
            })
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let n = self.steps.len();
        let steps = (0..n)
            .map(|i| {
                let s = self.steps[n - 1 - i];
                // the arc now following s is the one that preceded it
                let before = self.steps[(2 * n - 2 - i) % n];
                Step::new(s.letter, !s.forward, -before.twist)
            })
            .collect();
        Self { steps }
    }

    fn rotated(&self, k: usize) -> Self {
        let mut steps = self.steps.clone();
        steps.rotate_left(k);
        Self { steps }
    }

    /// Least rotation of the word or of its reverse.
    pub fn normalized(&self) -> Self {
        let rev = self.reversed();
        (0..self.steps.len())
            .flat_map(|k| [self.rotated(k), rev.rotated(k)])
            .min()
            .unwrap_or_else(|| self.clone())
    }

    pub fn twist_weight(&self) -> i64 {
        self.steps.iter().map(|s| s.twist.abs()).sum()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unexpected input at {0:?}")]
    Syntax(String),
    #[error("arc {0} is used {1} times; every arc must appear exactly once")]
    LetterCount(Letter, usize),
    #[error("empty curve")]
    EmptyCurve,
}

/// A collection of curve words using each of `a1, b1, a2, b2` exactly once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcWord {
    pub curves: Vec<CurveWord>,
}

impl ArcWord {
    pub fn new(curves: Vec<CurveWord>) -> Result<Self, WordError> {
        for c in &curves {
            if c.steps.is_empty() {
                return Err(WordError::EmptyCurve);
            }
        }
        for l in Letter::ALL {
            let n = curves
                .iter()
                .flat_map(|c| &c.steps)
                .filter(|s| s.letter == l)
                .count();
            if n != 1 {
                return Err(WordError::LetterCount(l, n));
            }
        }
        Ok(Self { curves })
    }

    pub fn arcs(&self) -> Vec<AnnulusArc> {
        self.curves.iter().flat_map(CurveWord::arcs).collect()
    }

    /// Representative of the word up to rotating or reversing each curve and
    /// reordering the curves.
    pub fn normalized(&self) -> Self {
        let mut curves: Vec<CurveWord> = self.curves.iter().map(CurveWord::normalized).collect();
        curves.sort();
        Self { curves }
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn twist_weight(&self) -> i64 {
        self.curves.iter().map(CurveWord::twist_weight).sum()
    }
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for c in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[c.to_digit(10).unwrap() as usize]);
    }
    s
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for s in &self.steps {
            parts.push(if s.forward {
                s.letter.to_string()
            } else {
                format!("{}⁻¹", s.letter)
            });
            match s.twist {
                0 => {}
                1 => parts.push("η".into()),
                t => parts.push(format!("η{}", superscript(t))),
            }
        }
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Display for ArcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.curves.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

struct Lexer<'a> {
    rest: &'a str,
}

impl Lexer<'_> {
    fn skip_space(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if let Some(r) = self.rest.strip_prefix(prefix) {
            self.rest = r;
            true
        } else {
            false
        }
    }

    fn superscript_int(&mut self) -> Option<i64> {
        let mut neg = false;
        let mut digits = String::new();
        let mut chars = self.rest.char_indices().peekable();
        let mut used = 0;
        if let Some(&(_, '⁻')) = chars.peek() {
            neg = true;
            used += '⁻'.len_utf8();
            chars.next();
        }
        for (_, c) in chars {
            let d = "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|x| x == c);
            match d {
                Some(d) => {
                    digits.push(char::from(b'0' + d as u8));
                    used += c.len_utf8();
                }
                None => break,
            }
        }
        if digits.is_empty() {
            return None;
        }
        self.rest = &self.rest[used..];
        let v: i64 = digits.parse().ok()?;
        Some(if neg { -v } else { v })
    }

    /// `^k`, `^{k}` or superscript digits.
    fn exponent(&mut self) -> Result<Option<i64>, WordError> {
        if let Some(v) = self.superscript_int() {
            return Ok(Some(v));
        }
        if !self.eat("^") {
            return Ok(None);
        }
        let braced = self.eat("{");
        let end = self
            .rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+'))))
            .map_or(self.rest.len(), |(i, _)| i);
        let v: i64 = self.rest[..end]
            .parse()
            .map_err(|_| WordError::Syntax(self.rest.to_string()))?;
        self.rest = &self.rest[end..];
        if braced && !self.eat("}") {
            return Err(WordError::Syntax(self.rest.to_string()));
        }
        Ok(Some(v))
    }
}

fn parse_curve(text: &str) -> Result<CurveWord, WordError> {
    let mut lx = Lexer { rest: text };
    let mut steps: Vec<Step> = Vec::new();
    let mut leading_twist = 0;
    loop {
        lx.skip_space();
        if lx.rest.is_empty() {
            break;
        }
        if lx.eat("η") || lx.eat("eta") || lx.eat("e") {
            let k = lx.exponent()?.unwrap_or(1);
            match steps.last_mut() {
                Some(s) => s.twist += k,
                None => leading_twist += k,
            }
            continue;
        }
        let letter = [Letter::A1, Letter::B1, Letter::A2, Letter::B2]
            .into_iter()
            .find(|l| lx.rest.starts_with(l.name()))
            .ok_or_else(|| WordError::Syntax(lx.rest.to_string()))?;
        lx.rest = &lx.rest[2..];
        let forward = match lx.exponent()? {
            None | Some(1) => !lx.eat("'"),
            Some(-1) => false,
            Some(_) => return Err(WordError::Syntax(lx.rest.to_string())),
        };
        steps.push(Step::new(letter, forward, 0));
    }
    // a twist written before the first letter follows the last one
    match steps.last_mut() {
        Some(s) => s.twist += leading_twist,
        None => return Err(WordError::EmptyCurve),
    }
    Ok(CurveWord { steps })
}

impl FromStr for CurveWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        parse_curve(s)
    }
}

impl FromStr for ArcWord {
    type Err = WordError;

    /// Accepts `{a1 a2⁻¹, b1 b2 η}` as well as the ASCII spelling
    /// `a1 a2^-1, b1 b2 eta` (`e` also stands for η; `x'` for `x⁻¹`).
    fn from_str(s: &str) -> Result<Self, WordError> {
        let t = s.trim();
        let t = t
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .unwrap_or(t);
        let curves = t
            .split(',')
            .map(parse_curve)
            .collect::<Result<Vec<_>, _>>()?;
        ArcWord::new(curves)
    }
}
