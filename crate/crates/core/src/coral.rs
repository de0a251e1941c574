//! Coral snakes, coral tableaux and numbered snakes.
//!
//! A state of the arm is encoded by recording, for every vertical link, one
//! cell of a tableau: the cell sits in the row where the step is taken (row
//! `y` for a step between heights `y` and `y + 1`) and holds the 0-indexed
//! x-coordinate of the step. Consecutive vertical links in the same direction
//! stack vertically in the snake; a change of direction moves the snake one
//! column to the right. The resulting cell path is a *coral snake* and the
//! filling a *coral tableau*.
//!
//! Every coral snake is determined by the vertical direction carried by each
//! of its cells: the first cell points up, a right step flips the direction
//! and a vertical step continues it. [`CoralSnake::directions`] recovers that
//! sequence, and it is what [`tableau_to_state`] writes back into links.
//!
//! Rows and columns are 0-indexed from the bottom-left cell. Cell indices
//! returned by this module are 0-based positions along the snake.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arm::{ArmError, ArmState, Link};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoralError {
    #[error("invalid snake step {0:?}")]
    StepChar(char),
    #[error("snake breaks the corner-color rule at step {0}")]
    NotCoral(usize),
    #[error("snake leaves the tunnel of width {width} (height {height})")]
    TooTall { width: usize, height: usize },
    #[error("tableau needs {cells} entries, got {entries}")]
    EntryCount { cells: usize, entries: usize },
    #[error("tableau entries violate the row/column inequalities at cell {0}")]
    NotMonotone(usize),
    #[error("tableau is not of type ({m}, {n})")]
    Type { m: usize, n: usize },
    #[error("numbered snake (s = {s}) exceeds the bound n - l - w + 1 = {bound}")]
    Bounds { s: i64, bound: i64 },
    #[error("empty snake cannot carry a number")]
    EmptySnake,
    #[error("tableau is not tight")]
    NotTight,
    #[error("set contains an inconsistent pair")]
    InconsistentIdeal,
    #[error("set is not an order ideal")]
    NotAnIdeal,
    #[error(transparent)]
    Arm(#[from] ArmError),
}

/// One step of a coral snake, from a cell to the next one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
    Right,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'u',
            Step::Down => 'd',
            Step::Right => 'r',
        }
    }

    pub fn from_char(ch: char) -> Option<Step> {
        match ch {
            'u' => Some(Step::Up),
            'd' => Some(Step::Down),
            'r' => Some(Step::Right),
            _ => None,
        }
    }
}

/// A coral snake, stored as the step sequence from the fixed start cell
/// `(row 0, column 0)`.
///
/// Ordering is the canonical one: lexicographic on the step string with
/// `u < d < r`, with the empty snake first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoralSnake {
    steps: Vec<Step>,
    cells: usize,
}

impl CoralSnake {
    pub fn empty() -> Self {
        CoralSnake {
            steps: Vec::new(),
            cells: 0,
        }
    }

    pub fn single() -> Self {
        CoralSnake {
            steps: Vec::new(),
            cells: 1,
        }
    }

    /// Build a non-empty snake from its steps, checking the corner-color
    /// rule. Rows are only bounded below; see [`CoralSnake::fits`].
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, CoralError> {
        let mut dir = Link::Up;
        let mut row = 0i64;
        for (k, &st) in steps.iter().enumerate() {
            match st {
                Step::Right => dir = dir.reversed(),
                Step::Up if dir == Link::Up => row += 1,
                Step::Down if dir == Link::Down => row -= 1,
                _ => return Err(CoralError::NotCoral(k)),
            }
            if row < 0 {
                return Err(CoralError::NotCoral(k));
            }
        }
        let cells = steps.len() + 1;
        Ok(CoralSnake { steps, cells })
    }

    /// Parse a step string. The empty string is the one-cell snake; use
    /// [`CoralSnake::empty`] for the snake with no cells.
    pub fn parse(text: &str) -> Result<Self, CoralError> {
        let steps = text
            .chars()
            .map(|c| Step::from_char(c).ok_or(CoralError::StepChar(c)))
            .collect::<Result<Vec<_>, _>>()?;
        CoralSnake::from_steps(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn step_string(&self) -> String {
        self.steps.iter().map(|s| s.as_char()).collect()
    }

    /// Number of cells, `l`.
    pub fn len(&self) -> usize {
        self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells == 0
    }

    /// `(row, column)` of every cell, in snake order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        if self.cells == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.cells);
        let (mut row, mut col) = (0usize, 0usize);
        out.push((row, col));
        for st in &self.steps {
            match st {
                Step::Up => row += 1,
                Step::Down => row -= 1,
                Step::Right => col += 1,
            }
            out.push((row, col));
        }
        out
    }

    /// Column of each cell.
    pub fn columns(&self) -> Vec<usize> {
        self.cells().into_iter().map(|(_, c)| c).collect()
    }

    /// Vertical direction of the arm link recorded by each cell.
    pub fn directions(&self) -> Vec<Link> {
        if self.cells == 0 {
            return Vec::new();
        }
        let mut dir = Link::Up;
        let mut out = vec![dir];
        for st in &self.steps {
            if *st == Step::Right {
                dir = dir.reversed();
            }
            out.push(dir);
        }
        out
    }

    /// Number of distinct rows, `h`.
    pub fn height(&self) -> usize {
        let cells = self.cells();
        match (
            cells.iter().map(|c| c.0).min(),
            cells.iter().map(|c| c.0).max(),
        ) {
            (Some(lo), Some(hi)) => hi - lo + 1,
            _ => 0,
        }
    }

    /// Number of distinct columns, `w`.
    pub fn width(&self) -> usize {
        if self.cells == 0 {
            0
        } else {
            1 + self.steps.iter().filter(|s| **s == Step::Right).count()
        }
    }

    /// Highest row index touched, or `None` for the empty snake.
    pub fn top_row(&self) -> Option<usize> {
        self.cells().into_iter().map(|c| c.0).max()
    }

    /// Whether every cell lies in a tunnel of width `m`.
    pub fn fits(&self, m: usize) -> bool {
        self.top_row().is_none_or(|r| r < m)
    }

    /// First `k` cells.
    pub fn prefix(&self, k: usize) -> CoralSnake {
        assert!(k <= self.cells);
        CoralSnake {
            steps: self.steps[..k.saturating_sub(1)].to_vec(),
            cells: k,
        }
    }

    /// `self ⪯ other`: `self` is an initial sub-snake of `other`.
    pub fn is_prefix_of(&self, other: &CoralSnake) -> bool {
        self.cells <= other.cells && (self.cells == 0 || other.steps.starts_with(&self.steps))
    }

    pub fn comparable(&self, other: &CoralSnake) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Largest snake contained in both.
    pub fn meet(&self, other: &CoralSnake) -> CoralSnake {
        if self.cells == 0 || other.cells == 0 {
            return CoralSnake::empty();
        }
        let common = self
            .steps
            .iter()
            .zip(&other.steps)
            .take_while(|(a, b)| a == b)
            .count();
        self.prefix(common + 1)
    }

    /// The coral extensions of this snake by one cell that stay inside a
    /// tunnel of width `m`.
    pub fn extensions(&self, m: usize) -> Vec<CoralSnake> {
        if self.cells == 0 {
            return if m >= 1 {
                vec![CoralSnake::single()]
            } else {
                Vec::new()
            };
        }
        let dir = *self.directions().last().unwrap();
        let (row, _) = *self.cells().last().unwrap();
        let mut out = Vec::with_capacity(2);
        let vertical = match dir {
            Link::Up if row + 1 < m => Some(Step::Up),
            Link::Down if row > 0 => Some(Step::Down),
            _ => None,
        };
        for st in vertical.into_iter().chain([Step::Right]) {
            let mut steps = self.steps.clone();
            steps.push(st);
            out.push(CoralSnake {
                steps,
                cells: self.cells + 1,
            });
        }
        out
    }

    /// Independent check of the corner-color rule straight from its
    /// geometric statement: for every vertical - horizontal - vertical turn
    /// with corners `C1`, `C2`, the two vertical segments face the same way
    /// iff the corners share a color. The first column counts as an upward
    /// segment.
    pub fn satisfies_color_rule(&self) -> bool {
        let cells = self.cells();
        let l = cells.len();
        let mut i = 0;
        while i < l {
            // Maximal horizontal run starting at i.
            let mut j = i;
            while j + 1 < l && cells[j + 1].0 == cells[i].0 && cells[j + 1].1 == cells[j].1 + 1 {
                j += 1;
            }
            if j > i && j + 1 < l {
                // Column segment ending at C1 = cells[i].
                let v1_up = if i == 0 {
                    true
                } else if cells[i - 1].1 == cells[i].1 {
                    cells[i - 1].0 < cells[i].0
                } else {
                    // Single-cell column not at the start cannot begin a run.
                    return false;
                };
                let v2_up = cells[j + 1].0 > cells[j].0;
                let same_color = (i % 2) == (j % 2);
                if (v1_up == v2_up) != same_color {
                    return false;
                }
            }
            i = j + 1;
        }
        true
    }
}

impl fmt::Display for CoralSnake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells == 0 {
            f.write_str("∅")
        } else {
            write!(f, "[{}]", self.step_string())
        }
    }
}

/// A coral tableau: one non-negative entry per cell in snake order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoralTableau {
    shape: CoralSnake,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    steps: String,
    entries: Vec<u32>,
}

impl Serialize for CoralTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableauRepr {
            steps: self.shape.step_string(),
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoralTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TableauRepr::deserialize(d)?;
        let shape = if repr.entries.is_empty() {
            if !repr.steps.is_empty() {
                return Err(serde::de::Error::custom("empty tableau with steps"));
            }
            CoralSnake::empty()
        } else {
            CoralSnake::parse(&repr.steps).map_err(serde::de::Error::custom)?
        };
        CoralTableau::new(shape, repr.entries).map_err(serde::de::Error::custom)
    }
}

impl CoralTableau {
    pub fn new(shape: CoralSnake, entries: Vec<u32>) -> Result<Self, CoralError> {
        if shape.len() != entries.len() {
            return Err(CoralError::EntryCount {
                cells: shape.len(),
                entries: entries.len(),
            });
        }
        for (k, st) in shape.steps().iter().enumerate() {
            let (a, b) = (entries[k], entries[k + 1]);
            let ok = match st {
                Step::Right => a < b,
                _ => a <= b,
            };
            if !ok {
                return Err(CoralError::NotMonotone(k));
            }
        }
        Ok(CoralTableau { shape, entries })
    }

    pub fn empty() -> Self {
        CoralTableau {
            shape: CoralSnake::empty(),
            entries: Vec::new(),
        }
    }

    pub fn shape(&self) -> &CoralSnake {
        &self.shape
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_entry(&self) -> Option<u32> {
        self.entries.last().copied()
    }

    /// `h(shape) ≤ m` and `max + l ≤ n`.
    pub fn is_type(&self, m: usize, n: usize) -> bool {
        self.shape.fits(m)
            && self
                .max_entry()
                .is_none_or(|mx| mx as usize + self.len() <= n)
    }

    pub fn is_tight(&self) -> bool {
        let cols = self.shape.columns();
        self.entries
            .iter()
            .zip(&cols)
            .all(|(&e, &c)| e as i64 - c as i64 == self.entries[0] as i64)
    }

    /// Restriction to the first `k` cells.
    pub fn prefix(&self, k: usize) -> CoralTableau {
        CoralTableau {
            shape: self.shape.prefix(k),
            entries: self.entries[..k].to_vec(),
        }
    }

    /// Extension to a larger shape, missing cells carrying the `None`
    /// sentinel for +infinity.
    pub fn extend_to(&self, shape: &CoralSnake) -> Option<Vec<Option<u32>>> {
        if !self.shape.is_prefix_of(shape) {
            return None;
        }
        let mut out: Vec<Option<u32>> = self.entries.iter().map(|&e| Some(e)).collect();
        out.resize(shape.len(), None);
        Some(out)
    }

    /// The tight tableau on the first `i + 1` cells agreeing with this one in
    /// cell `i`, as a numbered snake.
    pub fn tight_at(&self, i: usize) -> NumberedSnake {
        let col = self.shape.columns()[i] as u32;
        NumberedSnake {
            shape: self.shape.prefix(i + 1),
            s: self.entries[i] - col,
        }
    }
}

impl fmt::Display for CoralTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.shape, self.entries)
    }
}

/// An element `(λ, s)` of the coral PIP.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NumberedSnake {
    #[serde(serialize_with = "ser_snake")]
    pub shape: CoralSnake,
    pub s: u32,
}

fn ser_snake<S: serde::Serializer>(snake: &CoralSnake, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&snake.step_string())
}

impl NumberedSnake {
    pub fn new(shape: CoralSnake, s: u32, m: usize, n: usize) -> Result<Self, CoralError> {
        let e = NumberedSnake { shape, s };
        e.check(m, n)?;
        Ok(e)
    }

    /// Largest admissible number for `shape` in `C(m, n)`: `n - l - w + 1`.
    pub fn bound(shape: &CoralSnake, n: usize) -> i64 {
        n as i64 - shape.len() as i64 - shape.width() as i64 + 1
    }

    pub fn check(&self, m: usize, n: usize) -> Result<(), CoralError> {
        if self.shape.is_empty() {
            return Err(CoralError::EmptySnake);
        }
        if !self.shape.fits(m) {
            return Err(CoralError::TooTall {
                width: m,
                height: self.shape.height(),
            });
        }
        let bound = NumberedSnake::bound(&self.shape, n);
        if self.s as i64 > bound {
            return Err(CoralError::Bounds {
                s: self.s as i64,
                bound,
            });
        }
        Ok(())
    }

    /// PIP order: `(λ, s) ≤ (μ, t)` iff `λ ⪯ μ` and `s ≥ t`.
    pub fn le(&self, other: &NumberedSnake) -> bool {
        self.shape.is_prefix_of(&other.shape) && self.s >= other.s
    }

    pub fn lt(&self, other: &NumberedSnake) -> bool {
        self != other && self.le(other)
    }

    /// Neither shape contains the other.
    pub fn inconsistent(&self, other: &NumberedSnake) -> bool {
        !self.shape.comparable(&other.shape)
    }

    /// Elements covered by this one.
    pub fn lower_covers(&self, m: usize, n: usize) -> Vec<NumberedSnake> {
        let mut out = Vec::with_capacity(2);
        if self.shape.len() > 1 {
            out.push(NumberedSnake {
                shape: self.shape.prefix(self.shape.len() - 1),
                s: self.s,
            });
        }
        let up = NumberedSnake {
            shape: self.shape.clone(),
            s: self.s + 1,
        };
        if up.check(m, n).is_ok() {
            out.push(up);
        }
        out
    }

    /// Elements covering this one in `C(m, n)`.
    pub fn upper_covers(&self, m: usize, n: usize) -> Vec<NumberedSnake> {
        let mut out = Vec::new();
        if self.s > 0 {
            out.push(NumberedSnake {
                shape: self.shape.clone(),
                s: self.s - 1,
            });
        }
        for ext in self.shape.extensions(m) {
            let e = NumberedSnake {
                shape: ext,
                s: self.s,
            };
            if e.check(m, n).is_ok() {
                out.push(e);
            }
        }
        out
    }
}

impl fmt::Display for NumberedSnake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.shape, self.s)
    }
}

/// Encode an arm state as its coral tableau.
pub fn state_to_tableau(state: &ArmState) -> CoralTableau {
    let mut x = 0u32;
    let mut dirs: Vec<Link> = Vec::new();
    let mut entries = Vec::new();
    for &link in state.links() {
        if link == Link::Right {
            x += 1;
        } else {
            dirs.push(link);
            entries.push(x);
        }
    }
    if dirs.is_empty() {
        return CoralTableau::empty();
    }
    let steps = dirs
        .windows(2)
        .map(|w| match (w[0] == w[1], w[1]) {
            (true, Link::Up) => Step::Up,
            (true, _) => Step::Down,
            (false, _) => Step::Right,
        })
        .collect();
    let shape = CoralSnake {
        cells: dirs.len(),
        steps,
    };
    CoralTableau { shape, entries }
}

/// Decode a tableau of type `(m, n)` into an arm state of length `n`.
pub fn tableau_to_state(t: &CoralTableau, m: usize, n: usize) -> Result<ArmState, CoralError> {
    if !t.is_type(m, n) {
        return Err(CoralError::Type { m, n });
    }
    let mut links = Vec::with_capacity(n);
    let mut x = 0u32;
    for (&e, dir) in t.entries.iter().zip(t.shape.directions()) {
        while x < e {
            links.push(Link::Right);
            x += 1;
        }
        links.push(dir);
    }
    links.resize(n, Link::Right);
    Ok(ArmState::new(m, links)?)
}

/// The tight tableau of a numbered snake.
pub fn tight_tableau(e: &NumberedSnake, m: usize, n: usize) -> Result<CoralTableau, CoralError> {
    e.check(m, n)?;
    let entries = e
        .shape
        .columns()
        .into_iter()
        .map(|c| e.s + c as u32)
        .collect();
    Ok(CoralTableau {
        shape: e.shape.clone(),
        entries,
    })
}

/// Inverse of [`tight_tableau`]: `T ↦ (sh(T), min(T))`.
pub fn numbered_of_tight(t: &CoralTableau) -> Result<NumberedSnake, CoralError> {
    if t.is_empty() {
        return Err(CoralError::EmptySnake);
    }
    if !t.is_tight() {
        return Err(CoralError::NotTight);
    }
    Ok(NumberedSnake {
        shape: t.shape.clone(),
        s: t.entries[0],
    })
}

/// Cells of `t` (0-based) at which it jumps.
///
/// A cell other than the last jumps when raising its entry by one keeps the
/// tableau inequalities. The last cell always jumps: raising it either
/// stays within the type bound or, at the bound `n - l`, removes the cell
/// (the end flip). These cells index the maximal elements of the ideal of
/// `t`, i.e. the moves that bring the arm closer to horizontal.
pub fn jumps(t: &CoralTableau, m: usize, n: usize) -> Vec<usize> {
    debug_assert!(t.is_type(m, n));
    let l = t.len();
    (0..l)
        .filter(|&i| {
            if i + 1 == l {
                return true;
            }
            let raised = t.entries[i] + 1;
            match t.shape.steps[i] {
                Step::Right => raised < t.entries[i + 1],
                _ => raised <= t.entries[i + 1],
            }
        })
        .collect()
}

/// Componentwise minimum of tableaux whose shapes form a chain, with
/// missing cells treated as +infinity.
pub fn join(tableaux: &[CoralTableau]) -> Result<CoralTableau, CoralError> {
    let Some(top) = tableaux.iter().max_by_key(|t| t.len()) else {
        return Ok(CoralTableau::empty());
    };
    let shape = top.shape.clone();
    let mut acc: Vec<Option<u32>> = vec![None; shape.len()];
    for t in tableaux {
        let ext = t.extend_to(&shape).ok_or(CoralError::InconsistentIdeal)?;
        for (a, e) in acc.iter_mut().zip(ext) {
            *a = match (*a, e) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            };
        }
    }
    let entries = acc
        .into_iter()
        .map(|e| e.expect("top covers every cell"))
        .collect();
    CoralTableau::new(shape, entries)
}

/// Elements of the consistent order ideal `I(T) ⊆ C(m, n)`.
///
/// Cell `i` contributes `(λ_i, s)` for `T_i - col_i ≤ s ≤ n - l(λ_i) - w(λ_i) + 1`.
pub fn tableau_to_ideal(t: &CoralTableau, n: usize) -> BTreeSet<NumberedSnake> {
    let cols = t.shape.columns();
    let mut out = BTreeSet::new();
    for (i, (&e, &c)) in t.entries.iter().zip(&cols).enumerate() {
        let shape = t.shape.prefix(i + 1);
        let lo = e - c as u32;
        let hi = NumberedSnake::bound(&shape, n);
        for s in lo as i64..=hi {
            out.insert(NumberedSnake {
                shape: shape.clone(),
                s: s as u32,
            });
        }
    }
    out
}

/// Inverse of [`tableau_to_ideal`]: the join of the tight tableaux of a
/// consistent order ideal.
pub fn ideal_to_tableau<'a, I>(elements: I, m: usize, n: usize) -> Result<CoralTableau, CoralError>
where
    I: IntoIterator<Item = &'a NumberedSnake>,
{
    let elements: Vec<&NumberedSnake> = elements.into_iter().collect();
    let Some(top) = elements.iter().map(|e| &e.shape).max_by_key(|s| s.len()) else {
        return Ok(CoralTableau::empty());
    };
    if elements.iter().any(|e| !e.shape.is_prefix_of(top)) {
        return Err(CoralError::InconsistentIdeal);
    }
    let set: BTreeSet<&NumberedSnake> = elements.iter().copied().collect();
    for e in &elements {
        e.check(m, n)?;
        if e.lower_covers(m, n).iter().any(|c| !set.contains(c)) {
            return Err(CoralError::NotAnIdeal);
        }
    }
    let cols = top.columns();
    let mut min_s: Vec<Option<u32>> = vec![None; top.len()];
    for e in &elements {
        let k = e.shape.len() - 1;
        min_s[k] = Some(min_s[k].map_or(e.s, |v| v.min(e.s)));
    }
    // Entry at cell c is the smallest s + col(c) over elements reaching c.
    let mut entries = vec![0u32; top.len()];
    let mut best: Option<u32> = None;
    for c in (0..top.len()).rev() {
        if let Some(s) = min_s[c] {
            best = Some(best.map_or(s, |b| b.min(s)));
        }
        entries[c] = best.ok_or(CoralError::NotAnIdeal)? + cols[c] as u32;
    }
    CoralTableau::new(top.clone(), entries)
}
