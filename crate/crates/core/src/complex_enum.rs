//! Brute-force ground truth: every state, every cube, BFS distances, and the
//! words of partial states in width 2.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::arm::{ArmState, Link, Move};
use crate::par::Execution;
use crate::pip::{Cube, CubeComplex};

/// Environment variable overriding the default state cap.
pub const MAX_STATES_VAR: &str = "ARMTUNNEL_MAX_STATES";
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("more than {cap} states; raise the cap with --max-states or {MAX_STATES_VAR}")]
    CapExceeded { cap: usize },
    #[error("state {0:?} is not a vertex of this graph")]
    UnknownVertex(String),
    #[error("partial-state words are only defined in width 2, not {0}")]
    WidthUnsupported(usize),
    #[error("factor {0:?} matches no irreducible family")]
    UnclassifiableFactor(String),
    #[error("width must be at least 1")]
    ZeroWidth,
}

/// The state cap from the environment, or the default.
pub fn max_states() -> usize {
    std::env::var(MAX_STATES_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_STATES)
}

/// Face counts `(f_0, f_1, …, f_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FVector {
    counts: Vec<u64>,
}

impl FVector {
    pub fn new(mut counts: Vec<u64>) -> Self {
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        FVector { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, d: usize) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// `m,n,f_0,…,f_d,chi`.
    pub fn csv_row(&self, m: usize, n: usize) -> String {
        format!("{m},{n},{},{}", self, self.euler_characteristic())
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn euler_characteristic(fv: &FVector) -> i64 {
    fv.euler_characteristic()
}

/// The transition graph of `R(m, n)`: vertices are states, edges single
/// moves. Vertex 0 is the horizontal position.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    width: usize,
    length: usize,
    states: Vec<ArmState>,
    index: HashMap<ArmState, usize>,
    adj: Vec<Vec<(usize, Move)>>,
}

/// All states of `R(m, n)` by breadth-first search from the horizontal
/// position, using the cap from [`max_states`].
pub fn enumerate_states(m: usize, n: usize) -> Result<TransitionGraph, EnumError> {
    enumerate_states_with(m, n, max_states(), Execution::default())
}

pub fn enumerate_states_with(
    m: usize,
    n: usize,
    cap: usize,
    exec: Execution,
) -> Result<TransitionGraph, EnumError> {
    if m == 0 {
        return Err(EnumError::ZeroWidth);
    }
    let start = ArmState::horizontal(m, n);
    let mut states = vec![start.clone()];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut adj: Vec<Vec<(usize, Move)>> = vec![Vec::new()];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let expanded = exec.map(&frontier, |&u| {
            let s = &states[u];
            s.legal_moves()
                .into_iter()
                .map(|mv| (mv, s.apply(mv).expect("legal move applies")))
                .collect::<Vec<_>>()
        });
        let mut next = Vec::new();
        for (&u, nbrs) in frontier.iter().zip(expanded) {
            for (mv, t) in nbrs {
                let v = match index.get(&t) {
                    Some(&v) => v,
                    None => {
                        if states.len() >= cap {
                            return Err(EnumError::CapExceeded { cap });
                        }
                        let v = states.len();
                        index.insert(t.clone(), v);
                        states.push(t);
                        adj.push(Vec::new());
                        next.push(v);
                        v
                    }
                };
                adj[u].push((v, mv));
            }
        }
        frontier = next;
    }
    Ok(TransitionGraph {
        width: m,
        length: n,
        states,
        index,
        adj,
    })
}

impl TransitionGraph {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn states(&self) -> &[ArmState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: &ArmState) -> Result<usize, EnumError> {
        self.index
            .get(s)
            .copied()
            .ok_or_else(|| EnumError::UnknownVertex(s.render()))
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, Move)] {
        &self.adj[u]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v, move at u)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, Move)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &(v, mv) in nbrs {
                if u < v {
                    out.push((u, v, mv));
                }
            }
        }
        out
    }

    /// BFS distances from vertex `src`.
    pub fn bfs_from(&self, src: usize) -> Vec<u32> {
        bfs(src, self.len(), |u| self.adj[u].iter().map(|&(v, _)| v))
    }

    pub fn bfs_distance(&self, u: &ArmState, v: &ArmState) -> Result<u64, EnumError> {
        let (a, b) = (self.index_of(u)?, self.index_of(v)?);
        Ok(self.bfs_from(a)[b] as u64)
    }

    /// Largest BFS distance over all pairs.
    pub fn all_pairs_diameter(&self) -> u64 {
        self.all_pairs_diameter_with(Execution::default())
    }

    pub fn all_pairs_diameter_with(&self, exec: Execution) -> u64 {
        exec.fold_range(
            self.len(),
            0u64,
            |s| self.bfs_from(s).into_iter().max().unwrap_or(0) as u64,
            u64::max,
        )
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph states {\n");
        for (i, s) in self.states.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", s.render());
        }
        for (u, v, mv) in self.edges() {
            let _ = writeln!(out, "  n{u} -- n{v} [label=\"{mv}\"];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Edge {
            from: usize,
            to: usize,
            #[serde(rename = "move")]
            mv: Move,
        }
        #[derive(Serialize)]
        struct Graph<'a> {
            width: usize,
            length: usize,
            vertices: &'a [ArmState],
            edges: Vec<Edge>,
        }
        let edges = self
            .edges()
            .into_iter()
            .map(|(from, to, mv)| Edge { from, to, mv })
            .collect();
        serde_json::to_value(Graph {
            width: self.width,
            length: self.length,
            vertices: &self.states,
            edges,
        })
        .expect("graph serializes")
    }
}

/// Unweighted BFS over an implicit graph on `0..n`. Unreachable vertices get
/// `u32::MAX`.
pub fn bfs<I, F>(src: usize, n: usize, nbrs: F) -> Vec<u32>
where
    I: IntoIterator<Item = usize>,
    F: Fn(usize) -> I,
{
    let mut dist = vec![u32::MAX; n];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for v in nbrs(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Every cube of `S(m, n)`, each counted once.
///
/// At each state every set of pairwise independent legal moves spans a
/// cube; the cube is kept only at the vertex whose rendering is
/// lexicographically smallest among its `2^k` vertices.
pub fn enumerate_cubes(g: &TransitionGraph) -> CubeComplex<ArmState, Move> {
    enumerate_cubes_with(g, None, Execution::default())
}

pub fn enumerate_cubes_with(
    g: &TransitionGraph,
    max_dim: Option<usize>,
    exec: Execution,
) -> CubeComplex<ArmState, Move> {
    let keys: Vec<String> = g.states.iter().map(|s| s.render()).collect();
    let per_state = exec.map_range(g.len(), |u| {
        let s = &g.states[u];
        let moves = s.legal_moves();
        let k = moves.len();
        let indep: Vec<Vec<bool>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| a != b && s.independent(moves[a], moves[b]).unwrap_or(false))
                    .collect()
            })
            .collect();
        let mut cubes = Vec::new();
        let mut clique = Vec::new();
        extend_cliques(&indep, 0, &mut clique, &mut |c: &[usize]| {
            if max_dim.is_some_and(|d| c.len() > d) {
                return;
            }
            let gens: Vec<Move> = c.iter().map(|&i| moves[i]).collect();
            let vertices: Vec<usize> = (0..1usize << gens.len())
                .map(|mask| {
                    let mut t = s.clone();
                    for (b, &mv) in gens.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            t = t.apply(mv).expect("independent moves stay legal");
                        }
                    }
                    g.index[&t]
                })
                .collect();
            if vertices[1..].iter().all(|&v| keys[v] > keys[u]) {
                cubes.push(Cube {
                    generators: gens,
                    vertices,
                });
            }
        });
        cubes
    });
    let cubes = per_state.into_iter().flatten().collect();
    CubeComplex::new(g.states.clone(), 0, cubes).expect("enumerated cubes are well formed")
}

fn extend_cliques(
    indep: &[Vec<bool>],
    from: usize,
    clique: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    for i in from..indep.len() {
        if clique.iter().all(|&j| indep[i][j]) {
            clique.push(i);
            emit(clique);
            extend_cliques(indep, i + 1, clique, emit);
            clique.pop();
        }
    }
}

/// Adjacency of the cube-move graph: two vertices are joined when they are
/// opposite corners of some cube, so one step may bundle any set of
/// pairwise independent moves.
pub fn cube_move_graph<V, G>(x: &CubeComplex<V, G>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); x.vertices().len()];
    for c in x.cubes() {
        let full = c.vertices.len() - 1;
        for mask in 0..c.vertices.len() {
            let (a, b) = (c.vertices[mask], c.vertices[full ^ mask]);
            if mask < full ^ mask {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
        nbrs.dedup();
    }
    adj
}

/// One symbol of a partial-state word. Vertical symbols carry the absolute
/// direction of their vertical step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// A static horizontal link.
    R,
    /// A static vertical link.
    V(Link),
    /// A corner switch covering two links.
    Square(Link),
    /// An end flip between right and vertical.
    Claw(Link),
}

impl Symbol {
    fn vertical(self) -> Option<Link> {
        match self {
            Symbol::R => None,
            Symbol::V(d) | Symbol::Square(d) | Symbol::Claw(d) => Some(d),
        }
    }

    fn glyph(self) -> &'static str {
        match self {
            Symbol::R => "r",
            Symbol::V(_) => "v",
            Symbol::Square(_) => "□",
            Symbol::Claw(_) => "⌞",
        }
    }

    /// `(x-degree, y-degree)`.
    pub fn weight(self) -> (usize, usize) {
        match self {
            Symbol::R | Symbol::V(_) => (1, 0),
            Symbol::Square(_) => (2, 1),
            Symbol::Claw(_) => (1, 1),
        }
    }
}

/// The word of a partial state: the superposition of the `2^d` vertices of
/// a cube in width 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialWord {
    symbols: Vec<Symbol>,
}

impl PartialWord {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        PartialWord { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// `(n, d)` of the weight `x^n y^d`.
    pub fn weight(&self) -> (usize, usize) {
        self.symbols
            .iter()
            .map(|s| s.weight())
            .fold((0, 0), |(a, b), (c, d)| (a + c, b + d))
    }

    /// The word with a prime on every vertical symbol whose direction is
    /// opposite to the previous vertical symbol (the first is compared with
    /// an upward step).
    pub fn primed(&self) -> String {
        let mut prev = Link::Up;
        let mut out = String::new();
        for s in &self.symbols {
            out.push_str(s.glyph());
            if let Some(d) = s.vertical() {
                if d != prev {
                    out.push('′');
                }
                prev = d;
            }
        }
        out
    }

    /// The same word with an extra horizontal link in front.
    pub fn with_leading_r(&self) -> PartialWord {
        let mut symbols = vec![Symbol::R];
        symbols.extend_from_slice(&self.symbols);
        PartialWord { symbols }
    }
}

impl fmt::Display for PartialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(s.glyph())?;
        }
        Ok(())
    }
}

/// Superimpose the vertices of the cube at `base` spanned by `moves`.
pub fn cube_to_word(base: &ArmState, moves: &[Move]) -> Result<PartialWord, EnumError> {
    if base.width() != 2 {
        return Err(EnumError::WidthUnsupported(base.width()));
    }
    let n = base.len();
    let links = base.links();
    let mut starts: HashMap<usize, Symbol> = HashMap::new();
    for &mv in moves {
        match mv {
            Move::SwitchCorner(i) => {
                let (a, b) = (links[i - 1], links[i]);
                let d = if a.is_vertical() { a } else { b };
                starts.insert(i - 1, Symbol::Square(d));
            }
            Move::FlipEnd(target) => {
                let last = links[n - 1];
                let d = if last.is_vertical() { last } else { target };
                starts.insert(n - 1, Symbol::Claw(d));
            }
        }
    }
    let mut symbols = Vec::new();
    let mut i = 0;
    while i < n {
        let sym = starts.get(&i).copied().unwrap_or(match links[i] {
            Link::Right => Symbol::R,
            d => Symbol::V(d),
        });
        i += match sym {
            Symbol::Square(_) => 2,
            _ => 1,
        };
        symbols.push(sym);
    }
    Ok(PartialWord { symbols })
}

/// Irreducible families of partial states in width 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::M1,
        Family::M2,
        Family::M3,
        Family::M4,
        Family::M5,
        Family::M6,
        Family::M7,
        Family::M8,
        Family::F1,
        Family::F2,
        Family::F3,
        Family::F4,
        Family::F5,
        Family::F6,
        Family::F7,
        Family::F8,
    ];

    pub fn is_final(self) -> bool {
        self >= Family::F1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Split a word that starts with `r` into irreducible factors: a factor ends
/// at every second vertical step (`v` or `□`), i.e. each time the arm
/// reaches a border again; what remains is the final factor.
pub fn factorize_word(w: &PartialWord) -> Result<Vec<(Family, PartialWord)>, EnumError> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut verticals = 0;
    for &s in &w.symbols {
        cur.push(s);
        if matches!(s, Symbol::V(_) | Symbol::Square(_)) {
            verticals += 1;
            if verticals == 2 {
                let f = PartialWord::new(std::mem::take(&mut cur));
                out.push((classify_moving(&f)?, f));
                verticals = 0;
            }
        }
    }
    let f = PartialWord::new(cur);
    out.push((classify_final(&f)?, f));
    Ok(out)
}

/// Split `r^a X r^b Y…` into runs of `r` and the non-`r` symbols.
fn runs(w: &PartialWord) -> (Vec<usize>, Vec<Symbol>) {
    let mut gaps = vec![0];
    let mut marks = Vec::new();
    for &s in &w.symbols {
        if s == Symbol::R {
            *gaps.last_mut().unwrap() += 1;
        } else {
            marks.push(s);
            gaps.push(0);
        }
    }
    (gaps, marks)
}

fn classify_moving(w: &PartialWord) -> Result<Family, EnumError> {
    let bad = || EnumError::UnclassifiableFactor(w.primed());
    let (gaps, marks) = runs(w);
    let [x, y] = marks[..] else { return Err(bad()) };
    if gaps[0] == 0 || gaps[2] != 0 {
        return Err(bad());
    }
    let same = x.vertical() == y.vertical();
    if !same && gaps[1] == 0 {
        return Err(bad());
    }
    use Symbol::*;
    Ok(match (x, y, same) {
        (Square(_), Square(_), true) => Family::M1,
        (Square(_), Square(_), false) => Family::M2,
        (Square(_), V(_), true) => Family::M3,
        (Square(_), V(_), false) => Family::M4,
        (V(_), Square(_), true) => Family::M5,
        (V(_), Square(_), false) => Family::M6,
        (V(_), V(_), true) => Family::M7,
        (V(_), V(_), false) => Family::M8,
        _ => return Err(bad()),
    })
}

fn classify_final(w: &PartialWord) -> Result<Family, EnumError> {
    let bad = || EnumError::UnclassifiableFactor(w.primed());
    let (gaps, marks) = runs(w);
    use Symbol::*;
    match marks[..] {
        [] => Ok(Family::F1),
        [Claw(_)] if gaps[0] >= 1 && gaps[1] == 0 => Ok(Family::F2),
        [Square(_)] if gaps[0] >= 1 => Ok(Family::F3),
        [V(_)] if gaps[0] >= 1 => Ok(Family::F6),
        [x @ (Square(_) | V(_)), Claw(c)] if gaps[0] >= 1 && gaps[2] == 0 => {
            let same = x.vertical() == Some(c);
            if !same && gaps[1] == 0 {
                return Err(bad());
            }
            Ok(match (x, same) {
                (Square(_), true) => Family::F4,
                (Square(_), false) => Family::F5,
                (_, true) => Family::F7,
                (_, false) => Family::F8,
            })
        }
        _ => Err(bad()),
    }
}
