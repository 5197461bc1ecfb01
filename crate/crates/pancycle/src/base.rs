//! The nine-vertex base graph: `K9` minus the spanning ring `1-2-…-9-1`.
//!
//! Two labels are adjacent exactly when they are distinct and *not*
//! consecutive on the deleted ring, i.e. when their circular distance is 2,
//! 3, or 4. The graph is 6-regular with 27 edges, and every adjacency
//! question asked by the higher layers (mesh embeddings, chord availability,
//! chain snakes) bottoms out here.
//!
//! The module also provides [`ExplicitGraph`], a small adjacency-set graph
//! used by the brute-force oracle and by the classical sufficient conditions
//! for hamiltonicity ([`dirac_holds`], [`ore_holds`],
//! [`bondy_classification`]).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Errors produced by base-graph types and predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    /// A label outside `1..=9`.
    #[error("label {0} is outside 1..=9")]
    LabelOutOfRange(u8),
    /// An ordering that is not a permutation of `1..=9`.
    #[error("ordering is not a permutation of 1..=9")]
    NotAPermutation,
    /// Consecutive ordering entries that are not adjacent in the base graph.
    #[error("ordering breaks at position {position}: {a} and {b} are not adjacent")]
    OrderingBreak { position: usize, a: u8, b: u8 },
    /// A chord constraint with an index outside `1..=9` or a repeated index.
    #[error("chord constraint ({s},{t}) is not a valid position pair")]
    BadConstraint { s: usize, t: usize },
    /// A vertex index outside an explicit graph.
    #[error("vertex {vertex} is outside 0..{vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    /// Self-loops are not representable.
    #[error("self-loop at vertex {0} rejected")]
    SelfLoop(usize),
    /// The hamiltonicity predicates require at least three vertices.
    #[error("predicate requires at least 3 vertices, got {0}")]
    TooFewVertices(usize),
}

/// A vertex of the base graph: an integer label in `1..=9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseLabel(u8);

impl BaseLabel {
    /// Wraps a raw label, rejecting anything outside `1..=9`.
    pub fn new(value: u8) -> Result<Self, BaseError> {
        if (1..=9).contains(&value) {
            Ok(Self(value))
        } else {
            Err(BaseError::LabelOutOfRange(value))
        }
    }

    /// Wraps a label already known to be in range.
    pub(crate) fn from_valid(value: u8) -> Self {
        debug_assert!((1..=9).contains(&value), "label {value} out of range");
        Self(value)
    }

    /// The raw label value.
    #[must_use]
    pub fn value(self) -> u8 {
        self.0
    }

    /// All nine labels in ascending order.
    pub fn all() -> impl Iterator<Item = Self> {
        (1..=9).map(Self)
    }
}

impl fmt::Display for BaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Circular distance of two raw labels on the deleted ring.
fn ring_distance(u: u8, v: u8) -> u8 {
    let d = u.abs_diff(v);
    d.min(9 - d)
}

/// Adjacency on raw labels; callers guarantee the range.
pub(crate) fn adjacent_raw(u: u8, v: u8) -> bool {
    // Circular distance on nine points is at most 4, so "at least 2" is the
    // same as "2, 3, or 4": distinct and not consecutive on the ring.
    ring_distance(u, v) >= 2
}

/// Adjacency in the base graph.
///
/// The deleted ring is fixed as `1-2-…-9-1`, so two labels are adjacent
/// exactly when their circular ring distance is 2, 3, or 4.
#[must_use]
pub fn base_adjacent(u: BaseLabel, v: BaseLabel) -> bool {
    adjacent_raw(u.value(), v.value())
}

/// The six neighbors of `u`, in ascending label order.
#[must_use]
pub fn base_neighbors(u: BaseLabel) -> Vec<BaseLabel> {
    BaseLabel::all().filter(|&v| base_adjacent(u, v)).collect()
}

/// Vertex count, edge count, and uniform degree of the base graph, computed
/// by enumerating `base_adjacent` over all label pairs rather than by
/// formula.
#[must_use]
pub fn base_edge_stats() -> (usize, usize, usize) {
    let labels: Vec<BaseLabel> = BaseLabel::all().collect();
    let mut edges = 0usize;
    let mut degrees = [0usize; 9];
    for (a, &u) in labels.iter().enumerate() {
        for &v in &labels[a + 1..] {
            if base_adjacent(u, v) {
                edges += 1;
                degrees[usize::from(u.value()) - 1] += 1;
                degrees[usize::from(v.value()) - 1] += 1;
            }
        }
    }
    let regularity = degrees[0];
    assert!(
        degrees.iter().all(|&d| d == regularity),
        "base graph must be regular, got degrees {degrees:?}"
    );
    (labels.len(), edges, regularity)
}

/// Ordering-position pairs `(s, t)` demanding that the labels placed at
/// positions `s` and `t` of a [`PathOrdering`] be adjacent in the base
/// graph.
///
/// Positions are 1-based, matching the `p_1..p_9` notation used by the mesh
/// constructions. Pairs are stored normalized with `s < t`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChordConstraintSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl ChordConstraintSet {
    /// The empty set: only the Hamiltonian-path property itself is demanded.
    #[must_use]
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a set from `(s, t)` position pairs, normalizing each so that
    /// the smaller position comes first.
    pub fn new<I>(pairs: I) -> Result<Self, BaseError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (s, t) in pairs {
            if s == t || !(1..=9).contains(&s) || !(1..=9).contains(&t) {
                return Err(BaseError::BadConstraint { s, t });
            }
            set.insert((s.min(t), s.max(t)));
        }
        Ok(Self { pairs: set })
    }

    /// Iterates the pairs in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// True when the (order-insensitive) pair is in the set.
    #[must_use]
    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.pairs.contains(&(s.min(t), s.max(t)))
    }

    /// Number of stored pairs.
    #[must_use]
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// True when no pair is stored.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A Hamiltonian path of the base graph, written as the label sequence
/// `p_1..p_9`. Positions are 1-based throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathOrdering {
    perm: [BaseLabel; 9],
}

impl PathOrdering {
    /// Validates that `perm` is a permutation of `1..=9` whose consecutive
    /// entries are adjacent in the base graph.
    pub fn new(perm: [BaseLabel; 9]) -> Result<Self, BaseError> {
        let mut seen = [false; 9];
        for label in perm {
            let slot = &mut seen[usize::from(label.value()) - 1];
            if *slot {
                return Err(BaseError::NotAPermutation);
            }
            *slot = true;
        }
        for t in 0..8 {
            if !base_adjacent(perm[t], perm[t + 1]) {
                return Err(BaseError::OrderingBreak {
                    position: t + 1,
                    a: perm[t].value(),
                    b: perm[t + 1].value(),
                });
            }
        }
        Ok(Self { perm })
    }

    /// Convenience constructor from raw label values.
    pub fn from_values(values: [u8; 9]) -> Result<Self, BaseError> {
        let mut perm = [BaseLabel::from_valid(1); 9];
        for (slot, v) in perm.iter_mut().zip(values) {
            *slot = BaseLabel::new(v)?;
        }
        Self::new(perm)
    }

    /// The label at 1-based position `pos`.
    ///
    /// # Panics
    ///
    /// When `pos` is outside `1..=9`.
    #[must_use]
    pub fn label(&self, pos: usize) -> BaseLabel {
        self.perm[pos - 1]
    }

    /// The labels in path order.
    #[must_use]
    pub fn as_slice(&self) -> &[BaseLabel; 9] {
        &self.perm
    }

    /// The raw label values in path order.
    #[must_use]
    pub fn values(&self) -> [u8; 9] {
        self.perm.map(BaseLabel::value)
    }

    /// True when every constraint pair maps to an adjacent label pair.
    #[must_use]
    pub fn satisfies(&self, constraints: &ChordConstraintSet) -> bool {
        constraints
            .iter()
            .all(|(s, t)| base_adjacent(self.label(s), self.label(t)))
    }
}

/// Finds the lexicographically first permutation of `1..=9` that forms a
/// Hamiltonian path of the base graph and satisfies every chord constraint.
///
/// The search is a depth-first scan that always tries the smallest unused
/// label first, pruning a prefix as soon as the path property breaks or a
/// constraint whose later position has just been filled fails. Pruning only
/// discards prefixes that no completion can repair, so the first complete
/// hit is exactly the lexicographic minimum over all 9! permutations, and
/// `None` is a proof that no ordering satisfies the set.
#[must_use]
pub fn find_path_ordering(constraints: &ChordConstraintSet) -> Option<PathOrdering> {
    // Constraints indexed by their later position: once position t is
    // filled, exactly the pairs in by_later[t] become checkable.
    let mut by_later: [Vec<usize>; 10] = Default::default();
    for (s, t) in constraints.iter() {
        by_later[t].push(s);
    }

    fn extend(
        slots: &mut [u8; 9],
        used: &mut [bool; 10],
        depth: usize,
        by_later: &[Vec<usize>; 10],
    ) -> bool {
        if depth == 9 {
            return true;
        }
        'candidates: for label in 1..=9u8 {
            if used[usize::from(label)] {
                continue;
            }
            if depth > 0 && !adjacent_raw(slots[depth - 1], label) {
                continue;
            }
            for &s in &by_later[depth + 1] {
                if !adjacent_raw(slots[s - 1], label) {
                    continue 'candidates;
                }
            }
            slots[depth] = label;
            used[usize::from(label)] = true;
            if extend(slots, used, depth + 1, by_later) {
                return true;
            }
            used[usize::from(label)] = false;
        }
        false
    }

    let mut slots = [0u8; 9];
    let mut used = [false; 10];
    extend(&mut slots, &mut used, 0, &by_later)
        .then(|| PathOrdering::from_values(slots).expect("search only emits valid orderings"))
}

/// A small explicit graph over vertex indices `0..vertex_count`, used by the
/// brute-force oracle and the hamiltonicity predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    adjacency: Vec<BTreeSet<usize>>,
}

impl ExplicitGraph {
    /// An edgeless graph on `vertex_count` vertices.
    #[must_use]
    pub fn new(vertex_count: usize) -> Self {
        Self {
            adjacency: vec![BTreeSet::new(); vertex_count],
        }
    }

    /// Adds the undirected edge `{u, v}`; re-adding an edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), BaseError> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(BaseError::VertexOutOfRange {
                    vertex: w,
                    vertex_count: n,
                });
            }
        }
        if u == v {
            return Err(BaseError::SelfLoop(u));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    /// Builds a graph from an edge list.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, BaseError> {
        let mut g = Self::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// The circulant graph on `vertex_count` vertices with the given
    /// connection offsets: `i` is adjacent to `i ± c` modulo the order.
    ///
    /// Offsets that collapse to 0 modulo the order are rejected as
    /// self-loops.
    pub fn circulant(vertex_count: usize, connections: &[usize]) -> Result<Self, BaseError> {
        let mut g = Self::new(vertex_count);
        for i in 0..vertex_count {
            for &c in connections {
                g.add_edge(i, (i + c) % vertex_count)?;
            }
        }
        Ok(g)
    }

    /// The complete graph on `vertex_count` vertices.
    #[must_use]
    pub fn complete(vertex_count: usize) -> Self {
        let mut g = Self::new(vertex_count);
        for u in 0..vertex_count {
            for v in u + 1..vertex_count {
                g.add_edge(u, v).expect("indices in range, u != v");
            }
        }
        g
    }

    /// The base graph as an explicit graph, with index `i` standing for
    /// label `i + 1`.
    #[must_use]
    pub fn base_graph() -> Self {
        let mut g = Self::new(9);
        for u in 1..=9u8 {
            for v in u + 1..=9 {
                if adjacent_raw(u, v) {
                    g.add_edge(usize::from(u) - 1, usize::from(v) - 1)
                        .expect("indices in range, u != v");
                }
            }
        }
        g
    }

    /// Number of vertices.
    #[must_use]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of undirected edges.
    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// True when `{u, v}` is an edge; false for unknown indices.
    #[must_use]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u).is_some_and(|s| s.contains(&v))
    }

    /// Degree of `u`.
    ///
    /// # Panics
    ///
    /// When `u` is out of range.
    #[must_use]
    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// Neighbors of `u` in ascending order.
    ///
    /// # Panics
    ///
    /// When `u` is out of range.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[u].iter().copied()
    }
}

/// Dirac's sufficient condition for hamiltonicity: every degree is at least
/// half the order. The comparison is exact (`2·deg ≥ n`), with no integer
/// rounding of `n/2`.
pub fn dirac_holds(g: &ExplicitGraph) -> Result<bool, BaseError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(BaseError::TooFewVertices(n));
    }
    Ok((0..n).all(|u| 2 * g.degree(u) >= n))
}

/// Ore's sufficient condition for hamiltonicity: every non-adjacent vertex
/// pair has degree sum at least the order. Vacuously true on complete
/// graphs.
pub fn ore_holds(g: &ExplicitGraph) -> Result<bool, BaseError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(BaseError::TooFewVertices(n));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) && g.degree(u) + g.degree(v) < n {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the edge-count bound that upgrades hamiltonicity to
/// pancyclicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondyOutcome {
    /// The bound applies: the graph is pancyclic unless it is exactly the
    /// balanced complete bipartite graph; the flag reports the structural
    /// check for that single exception.
    PancyclicOrBipartiteException {
        /// True when the graph is `K_{n/2,n/2}`.
        balanced_complete_bipartite: bool,
    },
    /// The bound does not apply; nothing is concluded either way.
    NoConclusion,
}

/// Applies the classical edge-count bound: a Hamiltonian graph on `n`
/// vertices with at least `n²/4` edges is pancyclic or equal to
/// `K_{n/2,n/2}`.
///
/// Hamiltonicity is an input because deciding it is the brute-force
/// oracle's job, not this predicate's.
#[must_use]
pub fn bondy_classification(g: &ExplicitGraph, is_hamiltonian: bool) -> BondyOutcome {
    let n = g.vertex_count();
    if is_hamiltonian && 4 * g.edge_count() >= n * n {
        BondyOutcome::PancyclicOrBipartiteException {
            balanced_complete_bipartite: is_balanced_complete_bipartite(g),
        }
    } else {
        BondyOutcome::NoConclusion
    }
}

/// Structural test for `K_{n/2,n/2}`: split the vertices by adjacency to
/// vertex 0 and demand equal sides, no edges inside a side, and all edges
/// across.
fn is_balanced_complete_bipartite(g: &ExplicitGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 || !n.is_multiple_of(2) {
        return false;
    }
    let in_a: Vec<bool> = (0..n).map(|v| v == 0 || !g.adjacent(0, v)).collect();
    if in_a.iter().filter(|&&x| x).count() * 2 != n {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            let same_side = in_a[u] == in_a[v];
            // A same-side pair must be non-adjacent and a cross pair must be
            // adjacent, so adjacency must equal "different side".
            if same_side == g.adjacent(u, v) {
                return false;
            }
        }
    }
    true
}
