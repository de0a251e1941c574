//! Distances, shortest move sequences and special positions.
//!
//! Every vertical link of a state of length `n` gets the label `n - i + 1`,
//! where `i` is its 1-based position. Splitting the labels of two states `P`
//! and `Q` by whether the link's tableau cell lies in the common part of
//! their snakes gives `P = v ∘ w` and `Q = v' ∘ w'`, and the edge distance is
//! `|w| + |v - v'| + |w'|` (`|·|` the sum of entries).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arm::{ArmError, ArmState, Link, Move};
use crate::coral::{self, CoralError, NumberedSnake};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("states have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("states have different widths ({0} and {1})")]
    WidthMismatch(usize, usize),
    #[error("decompositions have common parts of different lengths ({0} and {1})")]
    CommonLength(usize, usize),
    #[error("position needs length at least {need}, got {got}")]
    Bounds { need: usize, got: usize },
    #[error("width must be at least 1")]
    ZeroWidth,
    #[error(transparent)]
    Arm(#[from] ArmError),
    #[error(transparent)]
    Coral(#[from] CoralError),
}

fn check_pair(p: &ArmState, q: &ArmState) -> Result<(), PlanError> {
    if p.width() != q.width() {
        return Err(PlanError::WidthMismatch(p.width(), q.width()));
    }
    if p.len() != q.len() {
        return Err(PlanError::LengthMismatch(p.len(), q.len()));
    }
    Ok(())
}

/// Labels of the vertical links of `p`, in arm order.
pub fn vertical_labelling(p: &ArmState) -> Vec<u32> {
    let n = p.len();
    p.links()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_vertical())
        .map(|(i, _)| (n - i) as u32)
        .collect()
}

/// `v`: labels of the links whose cells lie in the common snake; `w`: the
/// rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub v: Vec<u32>,
    pub w: Vec<u32>,
}

/// The `(P, Q)`-decomposition of `P`.
pub fn decompose(p: &ArmState, q: &ArmState) -> Result<Decomposition, PlanError> {
    check_pair(p, q)?;
    let lam = coral::state_to_tableau(p);
    let mu = coral::state_to_tableau(q);
    let k = lam.shape().meet(mu.shape()).len();
    let mut v = vertical_labelling(p);
    let w = v.split_off(k);
    Ok(Decomposition { v, w })
}

/// The three summands `|w|`, `|v - v'|`, `|w'|` of the distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistanceParts {
    pub leave: u64,
    pub shift: u64,
    pub enter: u64,
}

impl DistanceParts {
    pub fn total(&self) -> u64 {
        self.leave + self.shift + self.enter
    }
}

/// Evaluate the distance formula on two decompositions.
pub fn distance_from_decompositions(
    a: &Decomposition,
    b: &Decomposition,
) -> Result<DistanceParts, PlanError> {
    if a.v.len() != b.v.len() {
        return Err(PlanError::CommonLength(a.v.len(), b.v.len()));
    }
    let sum = |xs: &[u32]| xs.iter().map(|&x| x as u64).sum::<u64>();
    Ok(DistanceParts {
        leave: sum(&a.w),
        shift: a
            .v
            .iter()
            .zip(&b.v)
            .map(|(&x, &y)| x.abs_diff(y) as u64)
            .sum(),
        enter: sum(&b.w),
    })
}

pub fn distance_parts(p: &ArmState, q: &ArmState) -> Result<DistanceParts, PlanError> {
    distance_from_decompositions(&decompose(p, q)?, &decompose(q, p)?)
}

/// Number of single moves on a shortest path from `p` to `q`.
pub fn distance_edge(p: &ArmState, q: &ArmState) -> Result<u64, PlanError> {
    Ok(distance_parts(p, q)?.total())
}

/// The same distance computed from the tableaux: cells outside the common
/// snake are charged their gap to the filling `n, n - 1, …` from the first
/// cell, common cells their entry difference.
pub fn distance_tableau(p: &ArmState, q: &ArmState) -> Result<u64, PlanError> {
    check_pair(p, q)?;
    let n = p.len() as u64;
    let t = coral::state_to_tableau(p);
    let u = coral::state_to_tableau(q);
    let k = t.shape().meet(u.shape()).len();
    let gap = |entries: &[u32]| {
        entries
            .iter()
            .enumerate()
            .skip(k)
            .map(|(i, &e)| n - i as u64 - e as u64)
            .sum::<u64>()
    };
    let common: u64 = t.entries()[..k]
        .iter()
        .zip(&u.entries()[..k])
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum();
    Ok(gap(t.entries()) + common + gap(u.entries()))
}

/// A shortest sequence of single moves from `p` to `q`.
///
/// Cells of `p`'s tableau outside the common snake are pushed to the end of
/// the arm and flipped away, last cell first. Common cells are then raised
/// to the componentwise maximum of both tableaux (last to first) and lowered
/// to their targets (first to last). Finally the remaining cells of `q` are
/// flipped in at the end of the arm and slid into place, first to last.
pub fn geodesic_edge(p: &ArmState, q: &ArmState) -> Result<Vec<Move>, PlanError> {
    check_pair(p, q)?;
    let n = p.len() as u32;
    let t = coral::state_to_tableau(p);
    let u = coral::state_to_tableau(q);
    let k = t.shape().meet(u.shape()).len();
    let mut entries = t.entries().to_vec();
    let mut moves = Vec::new();
    // 1-based position of cell i's link.
    let pos = |entries: &[u32], i: usize| (entries[i] + i as u32 + 1) as usize;

    for i in (k..entries.len()).rev() {
        let top = n - i as u32 - 1;
        while entries[i] < top {
            moves.push(Move::SwitchCorner(pos(&entries, i)));
            entries[i] += 1;
        }
        moves.push(Move::FlipEnd(Link::Right));
    }
    entries.truncate(k);

    let target = &u.entries()[..k];
    for i in (0..k).rev() {
        while entries[i] < target[i] {
            moves.push(Move::SwitchCorner(pos(&entries, i)));
            entries[i] += 1;
        }
    }
    for i in 0..k {
        while entries[i] > target[i] {
            moves.push(Move::SwitchCorner(pos(&entries, i) - 1));
            entries[i] -= 1;
        }
    }

    let dirs = u.shape().directions();
    for j in k..u.len() {
        moves.push(Move::FlipEnd(dirs[j]));
        entries.push(n - j as u32 - 1);
        while entries[j] > u.entries()[j] {
            moves.push(Move::SwitchCorner(pos(&entries, j) - 1));
            entries[j] -= 1;
        }
    }
    Ok(moves)
}

/// Apply a move sequence, failing on the first illegal move.
pub fn replay(p: &ArmState, moves: &[Move]) -> Result<Vec<ArmState>, ArmError> {
    let mut states = vec![p.clone()];
    for &mv in moves {
        let next = states.last().unwrap().apply(mv)?;
        states.push(next);
    }
    Ok(states)
}

/// One step of a cube path: a set of pairwise independent moves performed
/// together, and the state reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeStep {
    pub moves: Vec<Move>,
    pub state: ArmState,
}

/// A path with the fewest steps when any set of pairwise independent moves
/// may be performed at once.
///
/// Works on the ideals of both states in the coral PIP. With current ideal
/// `J` and target `I`, each step removes every maximal element of `J` not in
/// `I` and adds every element of `I` not in `J` whose lower covers are in `J`
/// and whose snake is comparable with those of `J`.
pub fn normal_cube_path(p: &ArmState, q: &ArmState) -> Result<Vec<CubeStep>, PlanError> {
    check_pair(p, q)?;
    let (m, n) = (p.width(), p.len());
    let target = coral::tableau_to_ideal(&coral::state_to_tableau(q), n);
    let mut current = coral::tableau_to_ideal(&coral::state_to_tableau(p), n);
    let mut state = p.clone();
    let mut steps = Vec::new();
    while current != target {
        let top = current
            .iter()
            .map(|e| &e.shape)
            .max_by_key(|s| s.len())
            .cloned()
            .unwrap_or_else(coral::CoralSnake::empty);
        let removals: Vec<NumberedSnake> = current
            .difference(&target)
            .filter(|e| e.upper_covers(m, n).iter().all(|u| !current.contains(u)))
            .cloned()
            .collect();
        let additions: Vec<NumberedSnake> = target
            .difference(&current)
            .filter(|e| {
                e.shape.comparable(&top) && e.lower_covers(m, n).iter().all(|c| current.contains(c))
            })
            .cloned()
            .collect();
        debug_assert!(!removals.is_empty() || !additions.is_empty());
        let mut moves = Vec::with_capacity(removals.len() + additions.len());
        for e in removals.iter().chain(&additions) {
            let mut toggled = current.clone();
            if !toggled.remove(e) {
                toggled.insert(e.clone());
            }
            let t = coral::ideal_to_tableau(&toggled, m, n)?;
            let next = coral::tableau_to_state(&t, m, n)?;
            let mv = state
                .legal_moves()
                .into_iter()
                .find(|&mv| state.apply(mv).is_ok_and(|s| s == next))
                .expect("toggling one element is a single move");
            moves.push(mv);
        }
        for e in &removals {
            current.remove(e);
        }
        current.extend(additions);
        let t = coral::ideal_to_tableau(&current, m, n)?;
        state = coral::tableau_to_state(&t, m, n)?;
        steps.push(CubeStep {
            moves,
            state: state.clone(),
        });
    }
    Ok(steps)
}

/// Number of steps of [`normal_cube_path`].
pub fn distance_cube(p: &ArmState, q: &ArmState) -> Result<u64, PlanError> {
    Ok(normal_cube_path(p, q)?.len() as u64)
}

/// The ideal of a state in the coral PIP, as a set of numbered snakes.
pub fn state_ideal(p: &ArmState) -> BTreeSet<NumberedSnake> {
    coral::tableau_to_ideal(&coral::state_to_tableau(p), p.len())
}

/// The left-justified position `u^m r d^m r u^m r …` cut to length `n`.
pub fn left(m: usize, n: usize) -> Result<ArmState, PlanError> {
    if m == 0 {
        return Err(PlanError::ZeroWidth);
    }
    let mut links = Vec::with_capacity(n);
    let mut dir = Link::Up;
    while links.len() < n {
        for _ in 0..m {
            links.push(dir);
        }
        links.push(Link::Right);
        dir = dir.reversed();
    }
    links.truncate(n);
    Ok(ArmState::new(m, links)?)
}

/// `urdr` followed by the left-justified position of length `n - 4`.
pub fn left_plus(m: usize, n: usize) -> Result<ArmState, PlanError> {
    if n < 4 {
        return Err(PlanError::Bounds { need: 4, got: n });
    }
    let tail = left(m, n - 4)?;
    let mut links = vec![Link::Up, Link::Right, Link::Down, Link::Right];
    links.extend_from_slice(tail.links());
    Ok(ArmState::new(m, links)?)
}

/// `L`, `L⁺` and the horizontal position `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialPositions {
    pub left: ArmState,
    pub left_plus: ArmState,
    pub horizontal: ArmState,
}

pub fn special_positions(m: usize, n: usize) -> Result<SpecialPositions, PlanError> {
    Ok(SpecialPositions {
        left: left(m, n)?,
        left_plus: left_plus(m, n)?,
        horizontal: ArmState::horizontal(m, n),
    })
}

/// `s_n = n(n + 1) / 2`.
pub fn s(n: u64) -> u64 {
    n * (n + 1) / 2
}

/// `z_{m,n} = (r + 1)k + C(k, 2)(m + 1)` for `n = (m + 1)k + r`, `0 ≤ r ≤ m`.
pub fn z(m: u64, n: u64) -> u64 {
    let (k, r) = (n / (m + 1), n % (m + 1));
    (r + 1) * k + k * k.saturating_sub(1) / 2 * (m + 1)
}

/// `d(L, H) = s_n - z_{m,n}`.
pub fn d_left_horizontal(m: u64, n: u64) -> u64 {
    s(n) - z(m, n)
}

/// `d(L, L⁺) = s_{n-1} - z_{m,n} + s_{n-2} - z_{m,m+n-3}`, for `n ≥ 4`.
pub fn d_left_left_plus(m: u64, n: u64) -> Option<u64> {
    if n < 4 {
        return None;
    }
    Some(s(n - 1) + s(n - 2) - z(m, n) - z(m, m + n - 3))
}

/// Diameter of the transition graph of `R(m, n)`.
pub fn diameter(m: u64, n: u64) -> u64 {
    if m == 1 {
        if n.is_multiple_of(2) {
            n * (n + 2) / 4
        } else {
            (n + 1) * (n + 1) / 4
        }
    } else if n < 6 {
        d_left_horizontal(m, n)
    } else {
        d_left_left_plus(m, n).expect("n ≥ 6")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str, m: usize) -> ArmState {
        ArmState::parse(s, m).unwrap()
    }

    #[test]
    fn labelling_examples() {
        assert!(vertical_labelling(&st("rrr", 2)).is_empty());
        assert_eq!(vertical_labelling(&st("uurddr", 2)), vec![6, 5, 3, 2]);
    }

    #[test]
    fn decompose_examples() {
        let p = st("uurddr", 2);
        assert_eq!(decompose(&p, &p).unwrap().w, Vec::<u32>::new());
        let d = decompose(&st("uu", 2), &st("rr", 2)).unwrap();
        assert_eq!((d.v, d.w), (vec![], vec![2, 1]));
        assert!(matches!(
            decompose(&st("uu", 2), &st("rrr", 2)),
            Err(PlanError::LengthMismatch(2, 3))
        ));
        assert!(matches!(
            decompose(&st("uu", 2), &st("uu", 3)),
            Err(PlanError::WidthMismatch(2, 3))
        ));
    }

    #[test]
    fn vector_instance() {
        let a = Decomposition {
            v: vec![21, 20, 19, 17, 16],
            w: vec![14, 12, 10, 8, 7, 5],
        };
        let b = Decomposition {
            v: vec![22, 19, 17, 14, 11],
            w: vec![10, 7, 5, 3, 1],
        };
        let d = distance_from_decompositions(&a, &b).unwrap();
        assert_eq!((d.leave, d.shift, d.enter, d.total()), (56, 12, 26, 94));
    }

    #[test]
    fn small_distances_and_paths() {
        let (rr, uu) = (st("rr", 2), st("uu", 2));
        assert_eq!(distance_edge(&rr, &uu).unwrap(), 3);
        assert_eq!(distance_tableau(&rr, &uu).unwrap(), 3);
        let path = geodesic_edge(&rr, &uu).unwrap();
        assert_eq!(
            path,
            vec![
                Move::FlipEnd(Link::Up),
                Move::SwitchCorner(1),
                Move::FlipEnd(Link::Up)
            ]
        );
        assert_eq!(replay(&rr, &path).unwrap().last(), Some(&uu));
        assert!(geodesic_edge(&uu, &uu).unwrap().is_empty());
        assert!(normal_cube_path(&uu, &uu).unwrap().is_empty());
    }

    #[test]
    fn special_positions_small() {
        let sp = special_positions(2, 6).unwrap();
        assert_eq!(sp.left.render(), "uurddr");
        assert_eq!(sp.left_plus.render(), "urdruu");
        assert_eq!(sp.horizontal.render(), "rrrrrr");
        assert_eq!(left(1, 4).unwrap().render(), "urdr");
        assert!(matches!(left_plus(2, 3), Err(PlanError::Bounds { .. })));
        let d = distance_parts(&sp.left, &sp.left_plus).unwrap();
        assert_eq!((d.leave, d.shift, d.enter), (10, 0, 7));
    }

    #[test]
    fn diameter_formulas() {
        assert_eq!(diameter(1, 4), 6);
        assert_eq!(diameter(2, 6), 17);
        assert_eq!(diameter(2, 4), 8);
        assert_eq!(z(2, 6), 5);
        assert_eq!(z(2, 5), 3);
        assert_eq!(d_left_horizontal(2, 6), 16);
    }

    #[test]
    fn left_horizontal_is_label_sum() {
        for m in 1..=4usize {
            for n in 0..=20usize {
                let l = left(m, n).unwrap();
                let sum: u64 = vertical_labelling(&l).iter().map(|&x| x as u64).sum();
                assert_eq!(sum, d_left_horizontal(m as u64, n as u64), "m={m} n={n}");
            }
        }
    }
}
