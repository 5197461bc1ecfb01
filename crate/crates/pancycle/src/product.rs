//! Implicit model of the n-fold Cartesian power of the base graph.
//!
//! A vertex of the power is an n-tuple of base labels; two tuples are
//! adjacent exactly when they differ in one coordinate and the differing
//! labels are adjacent in the base graph. Nothing here materializes the
//! graph — adjacency, degrees, and statistics are all answered from the
//! coordinate representation, which is what lets the engine work at `9^n`
//! vertices.
//!
//! The module also fixes the mesh decomposition used by the cycle
//! constructions: coordinates 1 and 2 (row and column) address a 9×9 mesh
//! block, and the remaining n−2 coordinates select which block, with blocks
//! ordered along a boustrophedon Hamiltonian path so that consecutive blocks
//! are joined by a perfect matching.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base::{base_adjacent, find_path_ordering, BaseError, BaseLabel, PathOrdering};

/// Errors produced by product-graph types and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    /// A product vertex needs at least one coordinate.
    #[error("product vertex needs at least one coordinate")]
    EmptyVertex,
    /// Two vertices of different dimension were compared.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    /// The requested dimension is below the operation's minimum.
    #[error("dimension {n} is below the minimum {min} for this operation")]
    DimensionTooSmall { n: usize, min: usize },
    /// The requested dimension exceeds what fixed-width arithmetic covers.
    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },
    /// A mesh block index outside `1..=9^(n-2)`.
    #[error("mesh index {k} is outside 1..={max}")]
    MeshIndexOutOfRange { k: u64, max: u64 },
    /// A mesh row/column outside the 9×9 block.
    #[error("mesh coordinate ({i},{j}) is outside the 9x9 block")]
    MeshCoordOutOfRange { i: u8, j: u8 },
    /// An invalid base label inside a coordinate tuple.
    #[error(transparent)]
    Base(#[from] BaseError),
}

/// A vertex of the n-fold power: one base label per coordinate.
///
/// Coordinate 0 is the mesh row dimension, coordinate 1 the mesh column
/// dimension, and coordinates 2.. index the chain of mesh blocks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductVertex {
    coords: Vec<BaseLabel>,
}

impl ProductVertex {
    /// Wraps a non-empty coordinate tuple.
    pub fn new(coords: Vec<BaseLabel>) -> Result<Self, ProductError> {
        if coords.is_empty() {
            return Err(ProductError::EmptyVertex);
        }
        Ok(Self { coords })
    }

    /// Convenience constructor from raw label values.
    pub fn from_values(values: &[u8]) -> Result<Self, ProductError> {
        let coords = values
            .iter()
            .map(|&v| BaseLabel::new(v).map_err(ProductError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coords)
    }

    /// Number of coordinates.
    #[must_use]
    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// The coordinate tuple.
    #[must_use]
    pub fn coords(&self) -> &[BaseLabel] {
        &self.coords
    }

    /// The raw label values.
    #[must_use]
    pub fn values(&self) -> Vec<u8> {
        self.coords.iter().map(|l| l.value()).collect()
    }

    /// A copy with coordinate `t` replaced by `label`.
    fn with_coord(&self, t: usize, label: BaseLabel) -> Self {
        let mut coords = self.coords.clone();
        coords[t] = label;
        Self { coords }
    }
}

impl fmt::Display for ProductVertex {
    /// Renders the tuple dash-joined, e.g. `3-9-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, label) in self.coords.iter().enumerate() {
            if idx > 0 {
                write!(f, "-")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

/// Adjacency on tuples already known to share a dimension.
pub(crate) fn adjacent_same_dim(u: &ProductVertex, v: &ProductVertex) -> bool {
    let mut differing = None;
    for t in 0..u.dimension() {
        if u.coords[t] != v.coords[t] {
            if differing.is_some() {
                return false;
            }
            differing = Some(t);
        }
    }
    match differing {
        Some(t) => base_adjacent(u.coords[t], v.coords[t]),
        None => false,
    }
}

/// Cartesian-product adjacency: true exactly when the tuples differ in one
/// coordinate and the differing labels are adjacent in the base graph.
pub fn product_adjacent(u: &ProductVertex, v: &ProductVertex) -> Result<bool, ProductError> {
    if u.dimension() != v.dimension() {
        return Err(ProductError::DimensionMismatch {
            left: u.dimension(),
            right: v.dimension(),
        });
    }
    Ok(adjacent_same_dim(u, v))
}

/// Vertex count, edge count, and regularity of the n-fold power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertex_count: u128,
    pub edge_count: u128,
    pub regularity: u64,
}

/// Closed-form statistics of the n-fold power: `9^n` vertices, `3n·9^n`
/// edges, regularity `6n`.
pub fn graph_stats(n: usize) -> Result<GraphStats, ProductError> {
    if n < 1 {
        return Err(ProductError::DimensionTooSmall { n, min: 1 });
    }
    // 9^n and 3n·9^n must fit in u128; that caps n at 37.
    const MAX_N: usize = 37;
    if n > MAX_N {
        return Err(ProductError::DimensionTooLarge { n, max: MAX_N });
    }
    let vertex_count = 9u128.pow(n as u32);
    let edge_count = 3 * n as u128 * vertex_count;
    Ok(GraphStats {
        vertex_count,
        edge_count,
        regularity: 6 * n as u64,
    })
}

/// Counts the edges of the n-fold power by exhaustive enumeration, for
/// cross-checking the closed form. Bounded to `n ≤ 3` (6561 unordered
/// neighbor scans).
pub fn count_edges_by_enumeration(n: usize) -> Result<u128, ProductError> {
    if n < 1 {
        return Err(ProductError::DimensionTooSmall { n, min: 1 });
    }
    if n > 3 {
        return Err(ProductError::DimensionTooLarge { n, max: 3 });
    }
    let mut degree_sum: u128 = 0;
    let mut values = vec![1u8; n];
    loop {
        let vertex = ProductVertex::from_values(&values).expect("labels in range");
        degree_sum += neighbors(&vertex).len() as u128;
        // Odometer step over [1,9]^n in lexicographic order.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(degree_sum / 2);
            }
            pos -= 1;
            if values[pos] < 9 {
                values[pos] += 1;
                break;
            }
            values[pos] = 1;
        }
    }
}

/// The `6n` neighbors of `u`, ordered by coordinate position and then by
/// label value.
#[must_use]
pub fn neighbors(u: &ProductVertex) -> Vec<ProductVertex> {
    let mut out = Vec::with_capacity(6 * u.dimension());
    for t in 0..u.dimension() {
        for v in BaseLabel::all() {
            if base_adjacent(u.coords()[t], v) {
                out.push(u.with_coord(t, v));
            }
        }
    }
    out
}

/// A vertex in mesh coordinates: row `i` and column `j` inside mesh block
/// `k`. Rows, columns, and block indices are all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeshCoord {
    i: u8,
    j: u8,
    k: u64,
}

impl MeshCoord {
    /// Validates `1 ≤ i, j ≤ 9` and `k ≥ 1`. Whether `k` fits the chain of
    /// a particular dimension is checked by [`embed`].
    pub fn new(i: u8, j: u8, k: u64) -> Result<Self, ProductError> {
        if !(1..=9).contains(&i) || !(1..=9).contains(&j) {
            return Err(ProductError::MeshCoordOutOfRange { i, j });
        }
        if k == 0 {
            return Err(ProductError::MeshIndexOutOfRange { k, max: u64::MAX });
        }
        Ok(Self { i, j, k })
    }

    /// The row inside the block.
    #[must_use]
    pub fn i(self) -> u8 {
        self.i
    }

    /// The column inside the block.
    #[must_use]
    pub fn j(self) -> u8 {
        self.j
    }

    /// The block index along the chain.
    #[must_use]
    pub fn k(self) -> u64 {
        self.k
    }
}

impl fmt::Display for MeshCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})@{}", self.i, self.j, self.k)
    }
}

/// The scaffolding of the mesh decomposition for dimension `n ≥ 2`: path
/// orderings realizing each 9×9 block, plus a boustrophedon Hamiltonian
/// path over the remaining n−2 coordinates that strings the blocks together
/// so that consecutive blocks differ in exactly one adjacent coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshChain {
    n: usize,
    row_order: PathOrdering,
    col_order: PathOrdering,
}

/// Dimensions above this would overflow the `u64` block index.
const MAX_CHAIN_DIMENSION: usize = 20;

impl MeshChain {
    /// Builds a chain with explicit row and column orderings.
    pub fn with_orders(
        n: usize,
        row_order: PathOrdering,
        col_order: PathOrdering,
    ) -> Result<Self, ProductError> {
        if n < 2 {
            return Err(ProductError::DimensionTooSmall { n, min: 2 });
        }
        if n > MAX_CHAIN_DIMENSION {
            return Err(ProductError::DimensionTooLarge {
                n,
                max: MAX_CHAIN_DIMENSION,
            });
        }
        Ok(Self {
            n,
            row_order,
            col_order,
        })
    }

    /// The ambient dimension.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// The row ordering `p_1..p_9`.
    #[must_use]
    pub fn row_order(&self) -> &PathOrdering {
        &self.row_order
    }

    /// The column ordering `q_1..q_9`.
    #[must_use]
    pub fn col_order(&self) -> &PathOrdering {
        &self.col_order
    }

    /// Number of mesh blocks, `9^(n-2)`.
    #[must_use]
    pub fn mesh_count(&self) -> u64 {
        9u64.pow((self.n - 2) as u32)
    }

    /// The (n−2)-tuple of block `idx` (0-based) along the boustrophedon
    /// path. Consecutive indices yield tuples differing in exactly one
    /// coordinate by an adjacent label pair.
    ///
    /// # Panics
    ///
    /// When `idx ≥ mesh_count()`.
    #[must_use]
    pub fn chain_vertex(&self, idx: u64) -> Vec<BaseLabel> {
        assert!(
            idx < self.mesh_count(),
            "chain index {idx} outside 0..{}",
            self.mesh_count()
        );
        let d = self.n - 2;
        let mut coords = Vec::with_capacity(d);
        let mut remaining = idx;
        let mut block = self.mesh_count();
        // Peel digits most-significant first; after an odd digit the rest of
        // the index is mirrored, which is exactly the snake turning around.
        for _ in 0..d {
            block /= 9;
            let digit = remaining / block;
            remaining %= block;
            coords.push(self.row_order.label(digit as usize + 1));
            if digit % 2 == 1 {
                remaining = block - 1 - remaining;
            }
        }
        coords
    }

    /// All chain tuples in path order. Intended for small n; the lazy
    /// accessor [`Self::chain_vertex`] serves the general case.
    #[must_use]
    pub fn chain_vertices(&self) -> Vec<Vec<BaseLabel>> {
        (0..self.mesh_count())
            .map(|idx| self.chain_vertex(idx))
            .collect()
    }
}

/// Builds the mesh chain for dimension `n ≥ 2`.
///
/// Row and column orderings are both the lexicographically first Hamiltonian
/// path satisfying the chord constraints exported by the mesh constructions;
/// the chain coordinates reuse the same ordering for the boustrophedon
/// path.
pub fn build_mesh_chain(n: usize) -> Result<MeshChain, ProductError> {
    let order = find_path_ordering(&crate::mesh::chord_constraints())
        .expect("the exported chord constraints are satisfiable");
    MeshChain::with_orders(n, order.clone(), order)
}

/// Maps a mesh coordinate to its product vertex: the row label, the column
/// label, then the chain tuple of block `k`.
pub fn embed(coord: MeshCoord, chain: &MeshChain) -> Result<ProductVertex, ProductError> {
    if coord.k() > chain.mesh_count() {
        return Err(ProductError::MeshIndexOutOfRange {
            k: coord.k(),
            max: chain.mesh_count(),
        });
    }
    let mut coords = Vec::with_capacity(chain.n());
    coords.push(chain.row_order().label(coord.i() as usize));
    coords.push(chain.col_order().label(coord.j() as usize));
    coords.extend(chain.chain_vertex(coord.k() - 1));
    ProductVertex::new(coords)
}
