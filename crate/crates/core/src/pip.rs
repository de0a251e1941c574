//! Posets with inconsistent pairs, their consistent ideals, the rooted cube
//! complexes they describe, and the reverse construction from hyperplanes.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::complex_enum::FVector;
use crate::coral::{self, CoralError, CoralSnake, CoralTableau, NumberedSnake};
use crate::par::Execution;

/// A set of PIP elements, by index.
pub type Ideal = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipError {
    #[error("not a poset with inconsistent pairs: {0}")]
    Invalid(String),
    #[error("complex is not connected: vertex {0} unreachable from the root")]
    Disconnected(usize),
    #[error(
        "crossing sets disagree at vertex {0}: the complex is not the complex of a PIP rooted here"
    )]
    NotCat0Evidence(usize),
    #[error("cube record is malformed: {0}")]
    BadCube(String),
    #[error("labelling failed: {0}")]
    Labelling(String),
    #[error("PIPs differ: {0}")]
    Mismatch(String),
}

/// A finite poset with inconsistent pairs over labels `L`.
///
/// Elements are indexed `0..len()` in the order the labels were supplied.
#[derive(Debug, Clone)]
pub struct Pip<L> {
    labels: Vec<L>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
    inconsistent: Vec<FixedBitSet>,
}

impl<L> Pip<L> {
    /// Build from a strict order `lt(i, j)` (`i < j`) and an inconsistency
    /// predicate. Every PIP axiom is checked.
    pub fn from_relation(
        labels: Vec<L>,
        lt: impl Fn(usize, usize) -> bool,
        inconsistent: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PipError> {
        let n = labels.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut incons = vec![FixedBitSet::with_capacity(n); n];
        for j in 0..n {
            for i in 0..n {
                if lt(i, j) {
                    below[j].insert(i);
                }
                if inconsistent(i, j) {
                    incons[j].insert(i);
                }
            }
        }
        for j in 0..n {
            if below[j].contains(j) {
                return Err(PipError::Invalid(format!("element {j} below itself")));
            }
            if incons[j].contains(j) {
                return Err(PipError::Invalid(format!(
                    "element {j} inconsistent with itself"
                )));
            }
            for i in below[j].ones() {
                if below[i].contains(j) {
                    return Err(PipError::Invalid(format!("{i} and {j} below each other")));
                }
                if !below[i].is_subset(&below[j]) {
                    return Err(PipError::Invalid(format!(
                        "order not transitive through {i} < {j}"
                    )));
                }
                if incons[j].contains(i) {
                    return Err(PipError::Invalid(format!(
                        "comparable {i} < {j} inconsistent"
                    )));
                }
                if !incons[i].is_subset(&incons[j]) {
                    return Err(PipError::Invalid(format!(
                        "inconsistency does not propagate from {i} up to {j}"
                    )));
                }
            }
            for i in incons[j].ones() {
                if !incons[i].contains(j) {
                    return Err(PipError::Invalid(format!(
                        "inconsistency {i}, {j} not symmetric"
                    )));
                }
            }
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for j in 0..n {
            for i in below[j].ones() {
                let covered = below[j].ones().all(|k| !below[k].contains(i));
                if covered {
                    lower[j].push(i);
                    upper[i].push(j);
                }
            }
        }
        Ok(Pip {
            labels,
            lower,
            upper,
            below,
            inconsistent: incons,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    /// `i < j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn is_inconsistent(&self, i: usize, j: usize) -> bool {
        self.inconsistent[j].contains(i)
    }

    /// Inconsistent pairs `(i, j)`, `i < j` as indices, that are minimal:
    /// no element strictly below either side is still inconsistent with
    /// the other side.
    pub fn minimal_inconsistent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in self.inconsistent[j].ones().filter(|&i| i < j) {
                let minimal = self.lower[i].iter().all(|&a| !self.is_inconsistent(a, j))
                    && self.lower[j].iter().all(|&b| !self.is_inconsistent(i, b));
                if minimal {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Hasse covers `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|j| self.lower[j].iter().map(move |&i| (i, j)))
            .collect()
    }

    pub fn empty_ideal(&self) -> Ideal {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn is_consistent_ideal(&self, ideal: &Ideal) -> bool {
        ideal
            .ones()
            .all(|e| self.below[e].is_subset(ideal) && self.inconsistent[e].is_disjoint(ideal))
    }

    /// Elements of the ideal with no upper cover inside it.
    pub fn maximal(&self, ideal: &Ideal) -> Vec<usize> {
        ideal
            .ones()
            .filter(|&e| self.upper[e].iter().all(|&u| !ideal.contains(u)))
            .collect()
    }

    /// A linear extension: an element has strictly more predecessors than
    /// any element below it.
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&e| (self.below[e].count_ones(..), e));
        order
    }

    fn extend_ideals(&self, order: &[usize], k: usize, cur: &mut Ideal, out: &mut Vec<Ideal>) {
        if k == order.len() {
            out.push(cur.clone());
            return;
        }
        self.extend_ideals(order, k + 1, cur, out);
        let e = order[k];
        if self.addable(e, cur) {
            cur.insert(e);
            self.extend_ideals(order, k + 1, cur, out);
            cur.set(e, false);
        }
    }

    fn addable(&self, e: usize, cur: &Ideal) -> bool {
        self.lower[e].iter().all(|&c| cur.contains(c)) && self.inconsistent[e].is_disjoint(cur)
    }
}

impl<L: Sync> Pip<L> {
    /// All consistent order ideals, the empty ideal first.
    pub fn enumerate_ideals(&self) -> Vec<Ideal> {
        self.enumerate_ideals_with(Execution::default())
    }

    /// [`Pip::enumerate_ideals`] with an explicit execution mode. The work is
    /// split on the decisions for the first few elements of a linear
    /// extension; the output order does not depend on the mode.
    pub fn enumerate_ideals_with(&self, exec: Execution) -> Vec<Ideal> {
        let order = self.linear_extension();
        let split = order.len().min(10);
        let mut prefixes = vec![self.empty_ideal()];
        for &e in &order[..split] {
            let mut next = Vec::with_capacity(prefixes.len() * 2);
            for p in prefixes {
                if self.addable(e, &p) {
                    let mut with = p.clone();
                    with.insert(e);
                    next.push(p);
                    next.push(with);
                } else {
                    next.push(p);
                }
            }
            prefixes = next;
        }
        exec.map(&prefixes, |p| {
            let mut cur = p.clone();
            let mut out = Vec::new();
            self.extend_ideals(&order, split, &mut cur, &mut out);
            out
        })
        .into_iter()
        .flatten()
        .collect()
    }
}

impl<L> Pip<L> {
    /// Graphviz rendering of the Hasse diagram with dotted edges between
    /// minimal inconsistent pairs.
    pub fn to_dot(&self, name: impl Fn(&L) -> String) -> String {
        let mut out = String::from("graph pip {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", name(l).replace('"', "'"));
        }
        for (i, j) in self.covers() {
            let _ = writeln!(out, "  n{i} -- n{j};");
        }
        for (i, j) in self.minimal_inconsistent_pairs() {
            let _ = writeln!(out, "  n{i} -- n{j} [style=dotted, constraint=false];");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize)]
struct PipJson<'a, L> {
    elements: &'a [L],
    covers: Vec<(usize, usize)>,
    inconsistent: Vec<(usize, usize)>,
    minimal_inconsistent: Vec<(usize, usize)>,
}

impl<L: Serialize> Pip<L> {
    pub fn to_json(&self) -> serde_json::Value {
        let inconsistent = (0..self.len())
            .flat_map(|j| {
                self.inconsistent[j]
                    .ones()
                    .filter(move |&i| i < j)
                    .map(move |i| (i, j))
            })
            .collect();
        serde_json::to_value(PipJson {
            elements: &self.labels,
            covers: self.covers(),
            inconsistent,
            minimal_inconsistent: self.minimal_inconsistent_pairs(),
        })
        .expect("PIP serializes")
    }
}

impl<L> Pip<L> {
    /// Check that `map` (an index map from `self` to `other`) is a bijection
    /// preserving order and inconsistency in both directions.
    pub fn check_isomorphism<M>(&self, other: &Pip<M>, map: &[usize]) -> Result<(), PipError> {
        if self.len() != other.len() || map.len() != self.len() {
            return Err(PipError::Mismatch(format!(
                "sizes {} and {} (map {})",
                self.len(),
                other.len(),
                map.len()
            )));
        }
        let mut seen = FixedBitSet::with_capacity(other.len());
        for &t in map {
            if t >= other.len() || seen.put(t) {
                return Err(PipError::Mismatch("map is not a bijection".into()));
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.lt(i, j) != other.lt(map[i], map[j]) {
                    return Err(PipError::Mismatch(format!("order differs on ({i}, {j})")));
                }
                if self.is_inconsistent(i, j) != other.is_inconsistent(map[i], map[j]) {
                    return Err(PipError::Mismatch(format!(
                        "inconsistency differs on ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One cube of a rooted complex: `vertices[b]` is the vertex reached from
/// `vertices[0]` by applying the generators selected by the bits of `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cube<G> {
    pub generators: Vec<G>,
    pub vertices: Vec<usize>,
}

impl<G> Cube<G> {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn base(&self) -> usize {
        self.vertices[0]
    }
}

/// A rooted cube complex with vertices tagged by `V` and cube generators
/// (moves or PIP elements) of type `G`. Cubes of dimension at least one are
/// recorded explicitly; vertices are the 0-cubes.
#[derive(Debug, Clone)]
pub struct CubeComplex<V, G> {
    vertices: Vec<V>,
    root: usize,
    cubes: Vec<Cube<G>>,
}

impl<V, G> CubeComplex<V, G> {
    pub fn new(vertices: Vec<V>, root: usize, cubes: Vec<Cube<G>>) -> Result<Self, PipError> {
        if root >= vertices.len() {
            return Err(PipError::BadCube(format!("root {root} out of range")));
        }
        for c in &cubes {
            if c.dim() == 0 || c.vertices.len() != 1 << c.dim() {
                return Err(PipError::BadCube(format!(
                    "{} vertices for dimension {}",
                    c.vertices.len(),
                    c.dim()
                )));
            }
            if c.vertices.iter().any(|&v| v >= vertices.len()) {
                return Err(PipError::BadCube("vertex index out of range".into()));
            }
        }
        Ok(CubeComplex {
            vertices,
            root,
            cubes,
        })
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn cubes(&self) -> &[Cube<G>] {
        &self.cubes
    }

    pub fn dimension(&self) -> usize {
        self.cubes.iter().map(|c| c.dim()).max().unwrap_or(0)
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0u64; self.dimension() + 1];
        counts[0] = self.vertices.len() as u64;
        for c in &self.cubes {
            counts[c.dim()] += 1;
        }
        FVector::new(counts)
    }

    /// The 1-cubes as vertex pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.cubes
            .iter()
            .filter(|c| c.dim() == 1)
            .map(|c| (c.vertices[0], c.vertices[1]))
            .collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// The complex `X(P)`: one vertex per consistent ideal, one cube per ideal
/// `I` and non-empty `M ⊆ I_max` (capped at `max_dim` when given). The root
/// is the empty ideal and a cube's vertex `b` is `I` minus the elements of
/// `M` selected by `b`.
pub fn complex_from_pip<L: Sync>(
    pip: &Pip<L>,
    max_dim: Option<usize>,
    exec: Execution,
) -> CubeComplex<Ideal, usize> {
    let ideals = pip.enumerate_ideals_with(exec);
    let index: HashMap<&Ideal, usize> = ideals.iter().enumerate().map(|(i, id)| (id, i)).collect();
    let per_ideal = exec.map(&ideals, |ideal| {
        let maxes = pip.maximal(ideal);
        let k = maxes.len();
        let mut cubes = Vec::new();
        for sel in 1u64..(1 << k) {
            let gens: Vec<usize> = (0..k)
                .filter(|b| sel >> b & 1 == 1)
                .map(|b| maxes[b])
                .collect();
            if max_dim.is_some_and(|d| gens.len() > d) {
                continue;
            }
            let vertices = (0..1usize << gens.len())
                .map(|mask| {
                    let mut v = ideal.clone();
                    for (b, &g) in gens.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            v.set(g, false);
                        }
                    }
                    index[&v]
                })
                .collect();
            cubes.push(Cube {
                generators: gens,
                vertices,
            });
        }
        cubes
    });
    let cubes = per_ideal.into_iter().flatten().collect();
    let root = index[&pip.empty_ideal()];
    CubeComplex::new(ideals, root, cubes).expect("cubes of X(P) are well formed")
}

/// Output of [`pip_from_complex`].
#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// Hyperplanes as PIP elements, labelled `0..h`.
    pub pip: Pip<usize>,
    /// `(u, v, hyperplane)` for every edge.
    pub edges: Vec<(usize, usize, usize)>,
    /// Hyperplanes separating each vertex from the root.
    pub crossing: Vec<FixedBitSet>,
}

/// Recover the PIP of a rooted cube complex from its hyperplanes.
///
/// Opposite edges of every square are identified; a hyperplane `H1` lies
/// below `H2` when every vertex beyond `H2` is also beyond `H1`, and the two
/// are inconsistent when no vertex lies beyond both.
pub fn pip_from_complex<V, G>(x: &CubeComplex<V, G>) -> Result<Reconstruction, PipError> {
    let nv = x.vertices().len();
    let mut edge_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edge_list = Vec::new();
    for (a, b) in x.edges() {
        let key = (a.min(b), a.max(b));
        edge_id.entry(key).or_insert_with(|| {
            edge_list.push(key);
            edge_list.len() - 1
        });
    }
    let lookup = |a: usize, b: usize| -> Result<usize, PipError> {
        edge_id.get(&(a.min(b), a.max(b))).copied().ok_or_else(|| {
            PipError::BadCube(format!("cube edge {a}-{b} missing from the 1-skeleton"))
        })
    };
    let mut uf = UnionFind::<usize>::new(edge_list.len());
    for c in x.cubes().iter().filter(|c| c.dim() >= 2) {
        for g in 0..c.dim() {
            let bit = 1usize << g;
            let mut first = None;
            for mask in (0..c.vertices.len()).filter(|m| m & bit == 0) {
                let e = lookup(c.vertices[mask], c.vertices[mask | bit])?;
                match first {
                    None => first = Some(e),
                    Some(f) => {
                        uf.union(f, e);
                    }
                }
            }
        }
    }

    // Number classes in order of discovery by BFS from the root.
    let mut adj = vec![Vec::new(); nv];
    for (e, &(a, b)) in edge_list.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut class_of_rep: HashMap<usize, usize> = HashMap::new();
    let mut edge_class = vec![usize::MAX; edge_list.len()];
    let mut crossing: Vec<Option<FixedBitSet>> = vec![None; nv];
    let mut queue = VecDeque::from([x.root()]);
    let mut order = Vec::with_capacity(nv);
    crossing[x.root()] = Some(FixedBitSet::new());
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &(v, e) in &adj[u] {
            let rep = uf.find(e);
            let next = class_of_rep.len();
            let cls = *class_of_rep.entry(rep).or_insert(next);
            edge_class[e] = cls;
            let mut set = crossing[u].clone().unwrap();
            set.grow(cls + 1);
            set.toggle(cls);
            match &crossing[v] {
                None => {
                    crossing[v] = Some(set);
                    queue.push_back(v);
                }
                Some(existing) => {
                    if !same_bits(existing, &set) {
                        return Err(PipError::NotCat0Evidence(v));
                    }
                }
            }
        }
    }
    let h = class_of_rep.len();
    let mut crossing_sets = Vec::with_capacity(nv);
    for (v, c) in crossing.into_iter().enumerate() {
        let mut c = c.ok_or(PipError::Disconnected(v))?;
        c.grow(h);
        crossing_sets.push(c);
    }
    let mut beyond = vec![FixedBitSet::with_capacity(nv); h];
    for (v, c) in crossing_sets.iter().enumerate() {
        for cls in c.ones() {
            beyond[cls].insert(v);
        }
    }
    let pip = Pip::from_relation(
        (0..h).collect(),
        |a, b| a != b && beyond[b].is_subset(&beyond[a]),
        |a, b| a != b && beyond[a].is_disjoint(&beyond[b]),
    )?;
    let edges = edge_list
        .iter()
        .zip(&edge_class)
        .map(|(&(a, b), &c)| (a, b, c))
        .collect();
    Ok(Reconstruction {
        pip,
        edges,
        crossing: crossing_sets,
    })
}

fn same_bits(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.ones().eq(b.ones())
}

impl Reconstruction {
    /// Label every hyperplane with the unique element of a target PIP that
    /// is toggled across each of its edges. `ideal_of(v)` gives the target
    /// ideal of vertex `v`. Fails unless the labelling is well defined and
    /// bijective.
    pub fn labelling(
        &self,
        target_len: usize,
        ideal_of: impl Fn(usize) -> Ideal,
    ) -> Result<Vec<usize>, PipError> {
        let h = self.pip.len();
        if h != target_len {
            return Err(PipError::Labelling(format!(
                "{h} hyperplanes for {target_len} elements"
            )));
        }
        let mut map = vec![usize::MAX; h];
        for &(a, b, cls) in &self.edges {
            let mut diff = ideal_of(a);
            diff.symmetric_difference_with(&ideal_of(b));
            let elems: Vec<usize> = diff.ones().collect();
            let [e] = elems[..] else {
                return Err(PipError::Labelling(format!(
                    "edge {a}-{b} toggles {} elements",
                    elems.len()
                )));
            };
            if map[cls] == usize::MAX {
                map[cls] = e;
            } else if map[cls] != e {
                return Err(PipError::Labelling(format!(
                    "hyperplane {cls} toggles both {} and {e}",
                    map[cls]
                )));
            }
        }
        Ok(map)
    }
}

/// The coral PIP `C(m, n)` with its element index.
#[derive(Debug, Clone)]
pub struct CoralPip {
    m: usize,
    n: usize,
    pip: Pip<NumberedSnake>,
    index: HashMap<NumberedSnake, usize>,
}

/// All coral snakes that fit a tunnel of width `m` and carry at least one
/// number for length `n` (`l + w - 1 ≤ n`), in canonical order.
pub fn coral_snakes(m: usize, n: usize) -> Vec<CoralSnake> {
    let mut out = Vec::new();
    let mut stack = vec![CoralSnake::empty()];
    while let Some(s) = stack.pop() {
        for ext in s.extensions(m) {
            if NumberedSnake::bound(&ext, n) >= 0 {
                stack.push(ext.clone());
                out.push(ext);
            }
        }
    }
    out.sort();
    out
}

/// Build `C(m, n)`: elements are the numbered snakes of type `(m, n)` in
/// canonical order.
pub fn build_coral_pip(m: usize, n: usize) -> CoralPip {
    let mut elems = Vec::new();
    for shape in coral_snakes(m, n) {
        let bound = NumberedSnake::bound(&shape, n);
        for s in 0..=bound as u32 {
            elems.push(NumberedSnake {
                shape: shape.clone(),
                s,
            });
        }
    }
    let pip = Pip::from_relation(
        elems.clone(),
        |i, j| elems[i].lt(&elems[j]),
        |i, j| elems[i].inconsistent(&elems[j]),
    )
    .expect("the coral PIP satisfies the PIP axioms");
    let index = elems.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    CoralPip { m, n, pip, index }
}

impl CoralPip {
    pub fn width(&self) -> usize {
        self.m
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn pip(&self) -> &Pip<NumberedSnake> {
        &self.pip
    }

    pub fn index_of(&self, e: &NumberedSnake) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// `I(T)` as a bitset over this PIP.
    pub fn tableau_to_ideal(&self, t: &CoralTableau) -> Result<Ideal, CoralError> {
        if !t.is_type(self.m, self.n) {
            return Err(CoralError::Type {
                m: self.m,
                n: self.n,
            });
        }
        let mut ideal = self.pip.empty_ideal();
        for e in coral::tableau_to_ideal(t, self.n) {
            ideal.insert(self.index[&e]);
        }
        Ok(ideal)
    }

    pub fn ideal_to_tableau(&self, ideal: &Ideal) -> Result<CoralTableau, CoralError> {
        coral::ideal_to_tableau(ideal.ones().map(|i| self.pip.label(i)), self.m, self.n)
    }

    pub fn to_dot(&self) -> String {
        self.pip.to_dot(|e| e.to_string())
    }
}
