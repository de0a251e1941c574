//! Arm states, legality, local moves and physical independence of moves.
//!
//! A state is written left to right from the base as a string over
//! `u`, `d`, `r`. Links are 1-indexed from the base.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArmError {
    #[error("invalid character {ch:?} at position {pos}; states use only u, d, r")]
    Char { ch: char, pos: usize },
    #[error("links {pos} and {} reverse direction (ud/du self-intersects)", pos + 1)]
    Reversal { pos: usize },
    #[error("link {pos} leaves the tunnel: height {height} outside [0, {width}]")]
    Tunnel {
        pos: usize,
        height: i64,
        width: usize,
    },
    #[error("tunnel width must be at least 1")]
    ZeroWidth,
    #[error("move {mv} is not legal at state {state}")]
    IllegalMove { mv: Move, state: String },
}

/// Direction of a single unit link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Link {
    #[serde(rename = "u")]
    Up,
    #[serde(rename = "d")]
    Down,
    #[serde(rename = "r")]
    Right,
}

impl Link {
    pub fn as_char(self) -> char {
        match self {
            Link::Up => 'u',
            Link::Down => 'd',
            Link::Right => 'r',
        }
    }

    pub fn from_char(ch: char) -> Option<Link> {
        match ch {
            'u' => Some(Link::Up),
            'd' => Some(Link::Down),
            'r' => Some(Link::Right),
            _ => None,
        }
    }

    pub fn is_vertical(self) -> bool {
        self != Link::Right
    }

    /// Height change contributed by this link.
    pub fn rise(self) -> i64 {
        match self {
            Link::Up => 1,
            Link::Down => -1,
            Link::Right => 0,
        }
    }

    /// The opposite vertical direction; `Right` maps to itself.
    pub fn reversed(self) -> Link {
        match self {
            Link::Up => Link::Down,
            Link::Down => Link::Up,
            Link::Right => Link::Right,
        }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One of the two kinds of local moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "MoveRepr", try_from = "MoveRepr")]
pub enum Move {
    /// Swap links `i` and `i + 1` (1-based), which form a corner.
    SwitchCorner(usize),
    /// Rotate the last link to `target`.
    FlipEnd(Link),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum MoveRepr {
    Switch { index: usize },
    Flip { target: Link },
}

impl From<Move> for MoveRepr {
    fn from(mv: Move) -> Self {
        match mv {
            Move::SwitchCorner(index) => MoveRepr::Switch { index },
            Move::FlipEnd(target) => MoveRepr::Flip { target },
        }
    }
}

impl TryFrom<MoveRepr> for Move {
    type Error = String;

    fn try_from(repr: MoveRepr) -> Result<Self, Self::Error> {
        match repr {
            MoveRepr::Switch { index: 0 } => Err("switch index is 1-based".into()),
            MoveRepr::Switch { index } => Ok(Move::SwitchCorner(index)),
            MoveRepr::Flip { target } => Ok(Move::FlipEnd(target)),
        }
    }
}

impl Move {
    /// Inclusive 1-based range of link indices the move touches on an arm of
    /// length `n`.
    pub fn touched(self, n: usize) -> (usize, usize) {
        match self {
            Move::SwitchCorner(i) => (i, i + 1),
            Move::FlipEnd(_) => (n, n),
        }
    }

    fn overlaps(self, other: Move, n: usize) -> bool {
        let (a0, a1) = self.touched(n);
        let (b0, b1) = other.touched(n);
        a0 <= b1 && b0 <= a1
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::SwitchCorner(i) => write!(f, "switch({i})"),
            Move::FlipEnd(t) => write!(f, "flip({t})"),
        }
    }
}

/// A validated position of the arm in a tunnel of width `width`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArmState {
    width: usize,
    links: Vec<Link>,
}

fn validate(width: usize, links: &[Link]) -> Result<(), ArmError> {
    if width == 0 {
        return Err(ArmError::ZeroWidth);
    }
    let mut height = 0i64;
    for (k, link) in links.iter().enumerate() {
        height += link.rise();
        if height < 0 || height > width as i64 {
            return Err(ArmError::Tunnel {
                pos: k + 1,
                height,
                width,
            });
        }
        if k > 0 && link.is_vertical() && links[k - 1] == link.reversed() {
            return Err(ArmError::Reversal { pos: k });
        }
    }
    Ok(())
}

impl ArmState {
    pub fn new(width: usize, links: Vec<Link>) -> Result<Self, ArmError> {
        validate(width, &links)?;
        Ok(ArmState { width, links })
    }

    /// Parse a `u`/`d`/`r` string for a tunnel of the given width.
    pub fn parse(text: &str, width: usize) -> Result<Self, ArmError> {
        let links = text
            .chars()
            .enumerate()
            .map(|(k, ch)| Link::from_char(ch).ok_or(ArmError::Char { ch, pos: k + 1 }))
            .collect::<Result<Vec<_>, _>>()?;
        ArmState::new(width, links)
    }

    /// The fully horizontal position `r^n`.
    pub fn horizontal(width: usize, length: usize) -> Self {
        assert!(width >= 1, "tunnel width must be at least 1");
        ArmState {
            width,
            links: vec![Link::Right; length],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// Link at 1-based index `i`.
    pub fn link(&self, i: usize) -> Link {
        self.links[i - 1]
    }

    pub fn render(&self) -> String {
        self.links.iter().map(|l| l.as_char()).collect()
    }

    /// Heights `h_0 = 0, h_1, ..., h_n` after each prefix.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.links.len() + 1);
        let mut h = 0;
        out.push(h);
        for l in &self.links {
            h += l.rise();
            out.push(h);
        }
        out
    }

    /// Lattice points visited by the arm, starting at the base `(0, 0)`.
    pub fn polyline(&self) -> Vec<(i64, i64)> {
        let mut pts = vec![(0, 0)];
        let (mut x, mut y) = (0i64, 0i64);
        for l in &self.links {
            match l {
                Link::Right => x += 1,
                v => y += v.rise(),
            }
            pts.push((x, y));
        }
        pts
    }

    fn candidate(&self, mv: Move) -> Option<Vec<Link>> {
        let n = self.links.len();
        let mut links = self.links.clone();
        match mv {
            Move::SwitchCorner(i) => {
                if i == 0 || i >= n {
                    return None;
                }
                let (a, b) = (links[i - 1], links[i]);
                if a == b || (a != Link::Right && b != Link::Right) {
                    return None;
                }
                links.swap(i - 1, i);
            }
            Move::FlipEnd(target) => {
                let last = *links.last()?;
                let ok = match last {
                    Link::Right => target.is_vertical(),
                    _ => target == Link::Right,
                };
                if !ok {
                    return None;
                }
                *links.last_mut()? = target;
            }
        }
        validate(self.width, &links).ok().map(|_| links)
    }

    /// Whether `mv` can be performed at this state.
    pub fn is_legal(&self, mv: Move) -> bool {
        self.candidate(mv).is_some()
    }

    /// Every legal move: corner switches by index, then end flips (up before
    /// down).
    pub fn legal_moves(&self) -> Vec<Move> {
        let n = self.links.len();
        let mut out = Vec::new();
        for i in 1..n {
            let mv = Move::SwitchCorner(i);
            if self.is_legal(mv) {
                out.push(mv);
            }
        }
        if let Some(&last) = self.links.last() {
            let targets: &[Link] = if last == Link::Right {
                &[Link::Up, Link::Down]
            } else {
                &[Link::Right]
            };
            for &t in targets {
                if self.is_legal(Move::FlipEnd(t)) {
                    out.push(Move::FlipEnd(t));
                }
            }
        }
        out
    }

    pub fn apply(&self, mv: Move) -> Result<ArmState, ArmError> {
        match self.candidate(mv) {
            Some(links) => Ok(ArmState {
                width: self.width,
                links,
            }),
            None => Err(ArmError::IllegalMove {
                mv,
                state: self.render(),
            }),
        }
    }

    /// Physical independence of two distinct legal moves: they touch
    /// disjoint links, each stays legal after the other, and the two orders
    /// commute.
    pub fn independent(&self, a: Move, b: Move) -> Result<bool, ArmError> {
        let sa = self.apply(a)?;
        let sb = self.apply(b)?;
        if a == b || a.overlaps(b, self.len()) {
            return Ok(false);
        }
        let (Ok(ab), Ok(ba)) = (sa.apply(b), sb.apply(a)) else {
            return Ok(false);
        };
        Ok(ab == ba)
    }
}

impl fmt::Display for ArmState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for ArmState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}
