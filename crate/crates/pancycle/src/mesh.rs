//! Cycle constructions inside one 9×9 mesh block.
//!
//! A mesh block is the grid of cells `(i, j)` with `1 ≤ i, j ≤ 9`, where
//! cells are joined by *grid edges* (row or column neighbors at distance 1)
//! and by *chord edges*: cell pairs in the same column whose rows form a
//! pair in [`chord_constraints`], or in the same row whose columns do. The
//! embedding of the block into the product graph realizes grid edges for
//! free and chord edges through the chord-constrained path orderings, so
//! every cycle built here maps to a genuine product cycle.
//!
//! Cycles are grown by two editing moves starting from tiny seeds: replace a
//! cycle edge by a detour path (adds vertices), or cut a vertex out and
//! bridge the hole (trades one vertex for the bridge). The exact move
//! sequence for each target length is recorded in a [`LengthSchedule`] so
//! that every produced cycle is traceable to its construction step.
//!
//! Even lengths 4–80 use grid edges only. Odd lengths 3–81 close a column-1
//! path with one chord and then grow the same way; lengths 57 and 81 use
//! the vertex-cut move and the chord repairs that make the count come out.
//! [`cycle_with_ports`] additionally guarantees that designated row-1 edges
//! (splice "ports") lie on the cycle, switching to special small routings
//! where the standard shapes are too short to reach them.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::base::ChordConstraintSet;
use crate::product::{MeshCoord, ProductError};

/// Errors produced by mesh-cycle constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    /// Even constructions cover even lengths 4–80 only.
    #[error("even cycle length must be an even value in 4..=80, got {0}")]
    BadEvenLength(usize),
    /// Odd constructions cover odd lengths 3–81 only.
    #[error("odd cycle length must be an odd value in 3..=81, got {0}")]
    BadOddLength(usize),
    /// Ported constructions cover lengths 4–81 (6–81 when both ports are
    /// demanded).
    #[error("no {demand} routing for a cycle of length {length}")]
    InfeasiblePorts { length: usize, demand: PortDemand },
    /// Port routings exist for the standard port edges only.
    #[error("unsupported port edge {edge:?}; only the standard row-1 ports have routings")]
    UnsupportedPortEdge { edge: ((u8, u8), (u8, u8)) },
    /// A port specification that is not a row-1 grid edge.
    #[error("port edges must be grid edges in row 1")]
    MalformedPortEdge,
    /// Both ports of a two-port specification must be disjoint.
    #[error("the two port edges must not share a cell")]
    OverlappingPorts,
    /// A mesh cycle needs at least three distinct cells in one block.
    #[error("mesh cycle needs at least 3 cells, got {0}")]
    CycleTooShort(usize),
    /// All cells of a mesh cycle must carry the same block index.
    #[error("mesh cycle mixes block indices {first} and {second}")]
    MixedBlocks { first: u64, second: u64 },
    /// Cells of a mesh cycle must be distinct.
    #[error("mesh cycle repeats the cell ({i},{j})")]
    RepeatedCell { i: u8, j: u8 },
    /// Anything rejected by coordinate validation.
    #[error(transparent)]
    Product(#[from] ProductError),
}

/// The chord constraints consumed by the odd constructions, exported so the
/// embedding can pick row and column orderings that realize them.
///
/// Pairs are ordering positions: `(s, t)` demands that the labels placed at
/// positions `s` and `t` be adjacent, making `(s, t)` usable as a same-row
/// or same-column chord in every mesh block.
///
/// * `(1,3)`, `(1,5)`, `(1,7)` — row pairs closing the odd column-1 seeds.
/// * `(4,6)` — the row pair that reinserts the cell cut out at length 57
///   (and, as a column pair, carries the smallest two-port routing).
/// * `(3,9)`, `(4,9)` — column pairs that absorb the far corner at 81.
#[must_use]
pub fn chord_constraints() -> ChordConstraintSet {
    ChordConstraintSet::new([(1, 3), (1, 5), (1, 7), (4, 6), (3, 9), (4, 9)])
        .expect("static pairs are valid positions")
}

/// A grid cell `(row, column)` inside one block, both 1-based.
pub type Cell = (u8, u8);

/// True for a horizontal or vertical grid step of length one.
fn grid_step(a: Cell, b: Cell) -> bool {
    let dr = a.0.abs_diff(b.0);
    let dc = a.1.abs_diff(b.1);
    dr + dc == 1
}

/// True when `{a, b}` is realized by a chord pair: same row with the column
/// pair constrained, or same column with the row pair constrained.
fn chord_step(a: Cell, b: Cell, chords: &ChordConstraintSet) -> bool {
    if a.0 == b.0 && a.1 != b.1 {
        chords.contains(a.1 as usize, b.1 as usize)
    } else if a.1 == b.1 && a.0 != b.0 {
        chords.contains(a.0 as usize, b.0 as usize)
    } else {
        false
    }
}

/// A cycle of cells inside one mesh block, stored in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshCycle {
    coords: Vec<MeshCoord>,
}

impl MeshCycle {
    /// Validates distinctness, a uniform block index, and minimum length.
    /// Whether consecutive cells are joined by grid or chord edges is the
    /// verifier's business once the cycle is embedded.
    pub fn new(coords: Vec<MeshCoord>) -> Result<Self, MeshError> {
        if coords.len() < 3 {
            return Err(MeshError::CycleTooShort(coords.len()));
        }
        let block = coords[0].k();
        let mut seen = BTreeSet::new();
        for c in &coords {
            if c.k() != block {
                return Err(MeshError::MixedBlocks {
                    first: block,
                    second: c.k(),
                });
            }
            if !seen.insert((c.i(), c.j())) {
                return Err(MeshError::RepeatedCell { i: c.i(), j: c.j() });
            }
        }
        Ok(Self { coords })
    }

    fn from_cells(cells: &[Cell], block: u64) -> Result<Self, MeshError> {
        let coords = cells
            .iter()
            .map(|&(i, j)| MeshCoord::new(i, j, block).map_err(MeshError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coords)
    }

    /// The cells in traversal order.
    #[must_use]
    pub fn coords(&self) -> &[MeshCoord] {
        &self.coords
    }

    /// Number of cells on the cycle.
    #[must_use]
    pub fn length(&self) -> usize {
        self.coords.len()
    }

    /// The common block index.
    #[must_use]
    pub fn block(&self) -> u64 {
        self.coords[0].k()
    }

    /// True when `{a, b}` is an edge of the cycle (in either direction,
    /// including the wrap-around edge).
    #[must_use]
    pub fn contains_edge(&self, a: Cell, b: Cell) -> bool {
        let len = self.coords.len();
        (0..len).any(|idx| {
            let u = self.coords[idx];
            let v = self.coords[(idx + 1) % len];
            ((u.i(), u.j()) == a && (v.i(), v.j()) == b)
                || ((u.i(), u.j()) == b && (v.i(), v.j()) == a)
        })
    }

    /// True when every consecutive step (wrap-around included) is a unit
    /// grid step or a chord realized by `chords` — i.e. the cycle asks
    /// nothing of the block orderings beyond the declared constraint set.
    #[must_use]
    pub fn uses_only_declared_steps(&self, chords: &ChordConstraintSet) -> bool {
        let len = self.coords.len();
        (0..len).all(|idx| {
            let u = self.coords[idx];
            let v = self.coords[(idx + 1) % len];
            let a = (u.i(), u.j());
            let b = (v.i(), v.j());
            grid_step(a, b) || chord_step(a, b, chords)
        })
    }
}

/// A cycle under construction: a cyclic cell sequence plus the two editing
/// moves the length schedules are written in. Move arguments name cells, so
/// a bad move is a construction bug; the methods panic rather than return,
/// and the exhaustive length tests plus embedded verification keep that
/// honest.
#[derive(Debug, Clone)]
struct CycleSketch {
    cells: Vec<Cell>,
}

impl CycleSketch {
    fn new(cells: Vec<Cell>) -> Self {
        debug_assert!(cells.len() >= 3);
        Self { cells }
    }

    fn len(&self) -> usize {
        self.cells.len()
    }

    fn position_of(&self, c: Cell) -> Option<usize> {
        self.cells.iter().position(|&x| x == c)
    }

    /// Inserts `path` into the traversal right after position `at`.
    fn insert_after(&mut self, at: usize, path: &[Cell]) {
        if at + 1 == self.cells.len() {
            self.cells.extend_from_slice(path);
        } else {
            self.cells.splice(at + 1..at + 1, path.iter().copied());
        }
    }

    /// Replaces the cycle edge `{a, b}` by the detour `a → path… → b`.
    fn replace_edge(&mut self, a: Cell, b: Cell, path: &[Cell]) {
        let len = self.len();
        let ia = self
            .position_of(a)
            .unwrap_or_else(|| panic!("cell {a:?} not on the cycle"));
        if self.cells[(ia + 1) % len] == b {
            self.insert_after(ia, path);
        } else if self.cells[(ia + len - 1) % len] == b {
            let reversed: Vec<Cell> = path.iter().rev().copied().collect();
            self.insert_after((ia + len - 1) % len, &reversed);
        } else {
            panic!("{a:?}-{b:?} is not an edge of the sketch");
        }
    }

    /// Cuts `v` out of the cycle and reconnects its former neighbors with
    /// `prev → bridge… → next`.
    fn excise_vertex(&mut self, v: Cell, bridge: &[Cell]) {
        let iv = self
            .position_of(v)
            .unwrap_or_else(|| panic!("cell {v:?} not on the cycle"));
        let prev = self.cells[(iv + self.len() - 1) % self.len()];
        self.cells.remove(iv);
        let ip = self
            .position_of(prev)
            .expect("the predecessor stays on the cycle");
        self.insert_after(ip, bridge);
    }

    fn into_cells(self) -> Vec<Cell> {
        self.cells
    }
}

/// Construction step identifiers, named by their role in the move sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScheduleStep {
    /// The 4-cycle seed of the even family.
    Seed,
    /// Downward growth in columns 1–2.
    Step1,
    /// Rightward growth of row pairs (even family).
    Step2,
    /// Row-9 absorption in column pairs (even family).
    Step3,
    /// Rightward growth of row pairs (odd family).
    Step2a,
    /// The vertex-cut detour through rows 7–8.
    Step2b,
    /// Rightward growth of rows 7–8.
    Step2c,
    /// Row-9 absorption in column pairs (odd family).
    Step2d,
    /// Chord repairs that reach the full block.
    Step2e,
}

impl fmt::Display for ScheduleStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ScheduleStep::Seed => "seed",
            ScheduleStep::Step1 => "step1",
            ScheduleStep::Step2 => "step2",
            ScheduleStep::Step3 => "step3",
            ScheduleStep::Step2a => "step2a",
            ScheduleStep::Step2b => "step2b",
            ScheduleStep::Step2c => "step2c",
            ScheduleStep::Step2d => "step2d",
            ScheduleStep::Step2e => "step2e",
        };
        f.write_str(name)
    }
}

/// One schedule row: the step (with its loop indices, where the step has
/// them) that first reaches `length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub step: ScheduleStep,
    pub i: Option<u8>,
    pub j: Option<u8>,
    pub length: usize,
}

impl ScheduleEntry {
    /// A compact label such as `step2[i=1,j=7]`, used in provenance strings.
    #[must_use]
    pub fn label(&self) -> String {
        match (self.i, self.j) {
            (Some(i), Some(j)) => format!("{}[i={i},j={j}]", self.step),
            (Some(i), None) => format!("{}[i={i}]", self.step),
            (None, Some(j)) => format!("{}[j={j}]", self.step),
            (None, None) => self.step.to_string(),
        }
    }
}

/// Which length family a schedule covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// The complete length-to-step map of one construction family.
///
/// Constructors check totality internally: each family covers its full
/// length range exactly once (even: 4, 6, …, 80; odd: 3, 5, …, 81).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSchedule {
    parity: Parity,
    entries: Vec<ScheduleEntry>,
}

impl LengthSchedule {
    fn checked(parity: Parity, entries: Vec<ScheduleEntry>) -> Self {
        let (lo, hi) = match parity {
            Parity::Even => (4usize, 80usize),
            Parity::Odd => (3, 81),
        };
        let mut seen = BTreeSet::new();
        for e in &entries {
            assert!(
                e.length >= lo && e.length <= hi && (e.length - lo) % 2 == 0,
                "schedule length {} outside its family",
                e.length
            );
            assert!(
                seen.insert(e.length),
                "schedule repeats length {}",
                e.length
            );
        }
        assert_eq!(
            seen.len(),
            (hi - lo) / 2 + 1,
            "schedule must cover every {parity} length in {lo}..={hi}"
        );
        Self { parity, entries }
    }

    /// The family's parity.
    #[must_use]
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// All rows in construction order.
    #[must_use]
    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    /// The row that first reaches `length`.
    #[must_use]
    pub fn entry_for(&self, length: usize) -> Option<&ScheduleEntry> {
        self.entries.iter().find(|e| e.length == length)
    }
}

/// The even-length schedule: seed 4, downward growth to 18, rightward row
/// pairs to 74, row-9 absorption to 80.
#[must_use]
pub fn even_schedule() -> LengthSchedule {
    let mut entries = vec![ScheduleEntry {
        step: ScheduleStep::Seed,
        i: None,
        j: None,
        length: 4,
    }];
    for i in 2..=8u8 {
        entries.push(ScheduleEntry {
            step: ScheduleStep::Step1,
            i: Some(i),
            j: None,
            length: 2 * (usize::from(i) + 1),
        });
    }
    // Step 2's indices count iterations (1..=7 per row pair); the move they
    // trigger extends the pair into column j+1.
    for i in 1..=4u8 {
        for j in 1..=7u8 {
            entries.push(ScheduleEntry {
                step: ScheduleStep::Step2,
                i: Some(i),
                j: Some(j),
                length: 14 * usize::from(i) + 2 * usize::from(j) + 4,
            });
        }
    }
    for i in 1..=3u8 {
        entries.push(ScheduleEntry {
            step: ScheduleStep::Step3,
            i: Some(i),
            j: None,
            length: 74 + 2 * usize::from(i),
        });
    }
    LengthSchedule::checked(Parity::Even, entries)
}

/// The odd-length schedule: column seeds 3–7, rightward row pairs to 55,
/// the vertex-cut detour at 57, rows 7–8 growth to 71, row-9 absorption to
/// 79, chord repairs at 81.
#[must_use]
pub fn odd_schedule() -> LengthSchedule {
    let mut entries = Vec::new();
    for j in 1..=3u8 {
        entries.push(ScheduleEntry {
            step: ScheduleStep::Step1,
            i: None,
            j: Some(j),
            length: 2 * usize::from(j) + 1,
        });
    }
    for i in 1..=3u8 {
        for j in 1..=8u8 {
            entries.push(ScheduleEntry {
                step: ScheduleStep::Step2a,
                i: Some(i),
                j: Some(j),
                length: 16 * usize::from(i) + 2 * usize::from(j) - 9,
            });
        }
    }
    entries.push(ScheduleEntry {
        step: ScheduleStep::Step2b,
        i: None,
        j: None,
        length: 57,
    });
    for i in 2..=8u8 {
        entries.push(ScheduleEntry {
            step: ScheduleStep::Step2c,
            i: Some(i),
            j: None,
            length: 55 + 2 * usize::from(i),
        });
    }
    for i in 1..=4u8 {
        entries.push(ScheduleEntry {
            step: ScheduleStep::Step2d,
            i: Some(i),
            j: None,
            length: 71 + 2 * usize::from(i),
        });
    }
    entries.push(ScheduleEntry {
        step: ScheduleStep::Step2e,
        i: None,
        j: None,
        length: 81,
    });
    LengthSchedule::checked(Parity::Odd, entries)
}

/// Runs the even move sequence until the sketch reaches `length`.
///
/// Grid edges only. The growth order is: seed rectangle in rows 1–2 of
/// columns 1–2; extend down to row 9 (length 18); extend the row pairs
/// (1,2), (3,4), (5,6), (7,8) rightward one column at a time (length 74);
/// absorb row 9 in column pairs (length 80, leaving only cell (9,9) out).
fn even_sketch(length: usize) -> CycleSketch {
    debug_assert!(length.is_multiple_of(2) && (4..=80).contains(&length));
    let mut c = CycleSketch::new(vec![(1, 1), (1, 2), (2, 2), (2, 1)]);
    for i in 2..=8u8 {
        if c.len() == length {
            return c;
        }
        c.replace_edge((i, 2), (i, 1), &[(i + 1, 2), (i + 1, 1)]);
    }
    for i in 1..=4u8 {
        for j in 2..=8u8 {
            if c.len() == length {
                return c;
            }
            c.replace_edge(
                (2 * i - 1, j),
                (2 * i, j),
                &[(2 * i - 1, j + 1), (2 * i, j + 1)],
            );
        }
    }
    for i in 1..=3u8 {
        if c.len() == length {
            return c;
        }
        c.replace_edge(
            (8, 2 * i + 1),
            (8, 2 * i + 2),
            &[(9, 2 * i + 1), (9, 2 * i + 2)],
        );
    }
    assert_eq!(c.len(), length, "even moves are exhausted at 80");
    c
}

/// Runs the odd move sequence until the sketch reaches `length`.
///
/// Seeds are column-1 paths of length 3, 5, 7 closed by the row-pair chords
/// (1,3), (1,5), (1,7). From the 7-seed the row pairs (1,2), (3,4), (5,6)
/// grow rightward (length 55); the vertex-cut detour trades cell (6,1) for
/// a path through rows 7–8 (length 57); rows 7–8 grow rightward (71); row 9
/// is absorbed in column pairs (79); finally (6,1) returns via the (4,6)
/// row-pair chord and (9,9) via the (3,9)/(4,9) column-pair chords (81).
fn odd_sketch(length: usize) -> CycleSketch {
    debug_assert!(length % 2 == 1 && (3..=81).contains(&length));
    if length <= 7 {
        let rows = length as u8;
        return CycleSketch::new((1..=rows).map(|r| (r, 1)).collect());
    }
    let mut c = CycleSketch::new((1..=7).map(|r| (r, 1)).collect());
    for i in 1..=3u8 {
        for j in 1..=8u8 {
            if c.len() == length {
                return c;
            }
            c.replace_edge(
                (2 * i - 1, j),
                (2 * i, j),
                &[(2 * i - 1, j + 1), (2 * i, j + 1)],
            );
        }
    }
    if c.len() == length {
        return c;
    }
    c.excise_vertex((6, 1), &[(7, 2), (8, 2), (8, 1)]);
    for i in 2..=8u8 {
        if c.len() == length {
            return c;
        }
        c.replace_edge((7, i), (8, i), &[(7, i + 1), (8, i + 1)]);
    }
    for i in 1..=4u8 {
        if c.len() == length {
            return c;
        }
        c.replace_edge((8, 2 * i - 1), (8, 2 * i), &[(9, 2 * i - 1), (9, 2 * i)]);
    }
    if c.len() == length {
        return c;
    }
    c.replace_edge((4, 1), (5, 1), &[(6, 1)]);
    c.replace_edge((9, 3), (9, 4), &[(9, 9)]);
    assert_eq!(c.len(), length, "odd moves are exhausted at 81");
    c
}

/// Builds the even cycle of the given length in block `k`.
pub fn even_cycle(length: usize, k: u64) -> Result<MeshCycle, MeshError> {
    if !length.is_multiple_of(2) || !(4..=80).contains(&length) {
        return Err(MeshError::BadEvenLength(length));
    }
    let cycle = MeshCycle::from_cells(&even_sketch(length).into_cells(), k)?;
    debug_assert!(cycle.uses_only_declared_steps(&chord_constraints()));
    Ok(cycle)
}

/// Builds the odd cycle of the given length in block `k`.
pub fn odd_cycle(length: usize, k: u64) -> Result<MeshCycle, MeshError> {
    if length % 2 != 1 || !(3..=81).contains(&length) {
        return Err(MeshError::BadOddLength(length));
    }
    let cycle = MeshCycle::from_cells(&odd_sketch(length).into_cells(), k)?;
    debug_assert!(cycle.uses_only_declared_steps(&chord_constraints()));
    Ok(cycle)
}

/// Which of a cycle's two port edges are demanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortDemand {
    /// Only the left port edge must lie on the cycle.
    Left,
    /// Only the right port edge must lie on the cycle.
    Right,
    /// Both port edges must lie on the cycle.
    Both,
}

impl fmt::Display for PortDemand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PortDemand::Left => "left-port",
            PortDemand::Right => "right-port",
            PortDemand::Both => "two-port",
        })
    }
}

/// The pair of row-1 grid edges a mesh cycle can expose for splicing, plus
/// which of them the construction must provide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PortSpec {
    left_edge: (Cell, Cell),
    right_edge: (Cell, Cell),
    demand: PortDemand,
}

impl PortSpec {
    /// The standard left port edge.
    pub const LEFT_EDGE: (Cell, Cell) = ((1, 1), (1, 2));
    /// The standard right port edge.
    pub const RIGHT_EDGE: (Cell, Cell) = ((1, 3), (1, 4));

    /// A specification with explicit edges. Each edge must be a row-1 grid
    /// edge, and the two must be disjoint.
    pub fn new(
        left_edge: (Cell, Cell),
        right_edge: (Cell, Cell),
        demand: PortDemand,
    ) -> Result<Self, MeshError> {
        let normalize = |(a, b): (Cell, Cell)| if a <= b { (a, b) } else { (b, a) };
        let left_edge = normalize(left_edge);
        let right_edge = normalize(right_edge);
        for (a, b) in [left_edge, right_edge] {
            if a.0 != 1 || b.0 != 1 || !grid_step(a, b) {
                return Err(MeshError::MalformedPortEdge);
            }
        }
        let cells = [left_edge.0, left_edge.1, right_edge.0, right_edge.1];
        let distinct: BTreeSet<Cell> = cells.iter().copied().collect();
        if distinct.len() != 4 {
            return Err(MeshError::OverlappingPorts);
        }
        Ok(Self {
            left_edge,
            right_edge,
            demand,
        })
    }

    /// The standard ports with only the left edge demanded.
    #[must_use]
    pub fn left_only() -> Self {
        Self {
            left_edge: Self::LEFT_EDGE,
            right_edge: Self::RIGHT_EDGE,
            demand: PortDemand::Left,
        }
    }

    /// The standard ports with only the right edge demanded.
    #[must_use]
    pub fn right_only() -> Self {
        Self {
            left_edge: Self::LEFT_EDGE,
            right_edge: Self::RIGHT_EDGE,
            demand: PortDemand::Right,
        }
    }

    /// The standard ports with both edges demanded.
    #[must_use]
    pub fn both() -> Self {
        Self {
            left_edge: Self::LEFT_EDGE,
            right_edge: Self::RIGHT_EDGE,
            demand: PortDemand::Both,
        }
    }

    /// The left port edge.
    #[must_use]
    pub fn left_edge(&self) -> (Cell, Cell) {
        self.left_edge
    }

    /// The right port edge.
    #[must_use]
    pub fn right_edge(&self) -> (Cell, Cell) {
        self.right_edge
    }

    /// Which edges are demanded.
    #[must_use]
    pub fn demand(&self) -> PortDemand {
        self.demand
    }

    /// The demanded edges, left first.
    #[must_use]
    pub fn demanded_edges(&self) -> Vec<(Cell, Cell)> {
        match self.demand {
            PortDemand::Left => vec![self.left_edge],
            PortDemand::Right => vec![self.right_edge],
            PortDemand::Both => vec![self.left_edge, self.right_edge],
        }
    }
}

/// A wide-top shape for mid-range two-port and right-port lengths: rows 1–2
/// span columns 1–4 (so both standard ports lie in row 1), and the shape
/// grows downward in columns 1–2. Covers even lengths 8–22.
fn wide_top_sketch(length: usize) -> CycleSketch {
    debug_assert!(length.is_multiple_of(2) && (8..=22).contains(&length));
    let mut c = CycleSketch::new(vec![
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 4),
        (2, 3),
        (2, 2),
        (2, 1),
    ]);
    for r in 2..=8u8 {
        if c.len() == length {
            return c;
        }
        c.replace_edge((r, 2), (r, 1), &[(r + 1, 2), (r + 1, 1)]);
    }
    assert_eq!(c.len(), length, "wide-top moves are exhausted at 22");
    c
}

/// Odd wide-top shape for lengths 9 and 11: the 8-cell wide top plus a
/// column-1 tail closed by the (1,3) or (1,5) row-pair chord.
fn wide_top_odd_sketch(length: usize) -> CycleSketch {
    debug_assert!(length == 9 || length == 11);
    let tail_end = (length - 6) as u8; // 3 or 5; the closing chord is (1, tail_end)
    let mut cells = vec![
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 4),
        (2, 3),
        (2, 2),
        (2, 1),
    ];
    cells.extend((3..=tail_end).map(|r| (r, 1)));
    CycleSketch::new(cells)
}

/// Routes a cycle of the given length through the demanded standard ports.
fn ported_sketch(length: usize, demand: PortDemand) -> Result<CycleSketch, MeshError> {
    let infeasible = || MeshError::InfeasiblePorts { length, demand };
    let even = length.is_multiple_of(2);
    let sketch = match demand {
        PortDemand::Left => {
            // The standard shapes keep ((1,1),(1,2)) from the start; only
            // the two smallest odd seeds (pure column paths) miss it.
            match (even, length) {
                (true, _) => even_sketch(length),
                (false, 5) => CycleSketch::new(vec![(1, 1), (1, 2), (2, 2), (2, 1), (3, 1)]),
                (false, 7) => {
                    CycleSketch::new(vec![(1, 1), (1, 2), (2, 2), (2, 1), (3, 1), (4, 1), (5, 1)])
                }
                (false, _) => odd_sketch(length),
            }
        }
        PortDemand::Right => match (even, length) {
            // Up to 18 the even shape lives in columns 1–2; shift it to
            // columns 3–4 where the right port is.
            (true, 4..=18) => {
                let cells: Vec<Cell> = even_sketch(length)
                    .into_cells()
                    .into_iter()
                    .map(|(i, j)| (i, j + 2))
                    .collect();
                CycleSketch::new(cells)
            }
            (true, 20) => wide_top_sketch(20),
            (true, _) => even_sketch(length),
            (false, 5) => CycleSketch::new(vec![(1, 3), (1, 4), (2, 4), (2, 3), (3, 3)]),
            (false, 7) => {
                CycleSketch::new(vec![(1, 3), (1, 4), (2, 4), (2, 3), (3, 3), (4, 3), (5, 3)])
            }
            (false, 9 | 11) => wide_top_odd_sketch(length),
            (false, _) => odd_sketch(length),
        },
        PortDemand::Both => match (even, length) {
            // The all-row-1 hexagon: grid steps to (1,4), the (4,6)
            // column-pair chord out to (1,6), then home through (1,5) and
            // its (1,5) column-pair chord.
            (true, 6) => CycleSketch::new(vec![(1, 1), (1, 2), (1, 3), (1, 4), (1, 6), (1, 5)]),
            (true, 8..=20) => wide_top_sketch(length),
            (true, 22..) => even_sketch(length),
            // Rows 1–2 over columns 1–4 minus cell (2,2): the step from
            // (2,3) to (2,1) rides the (1,3) column-pair chord in row 2.
            (false, 7) => {
                CycleSketch::new(vec![(1, 1), (1, 2), (1, 3), (1, 4), (2, 4), (2, 3), (2, 1)])
            }
            (false, 9 | 11) => wide_top_odd_sketch(length),
            (false, 13..) => odd_sketch(length),
            _ => return Err(infeasible()),
        },
    };
    Ok(sketch)
}

/// Builds a cycle of the given length in block `k` that contains every
/// demanded port edge.
///
/// Routings exist for the standard port pair only; a specification naming
/// any other edges is reported as unsupported rather than silently moved.
/// Feasible lengths are 4–81 for a single demanded port and 6–81 when both
/// are demanded; anything else is reported infeasible, never adjusted.
pub fn cycle_with_ports(length: usize, k: u64, ports: &PortSpec) -> Result<MeshCycle, MeshError> {
    if ports.left_edge() != PortSpec::LEFT_EDGE {
        return Err(MeshError::UnsupportedPortEdge {
            edge: ports.left_edge(),
        });
    }
    if ports.right_edge() != PortSpec::RIGHT_EDGE {
        return Err(MeshError::UnsupportedPortEdge {
            edge: ports.right_edge(),
        });
    }
    let min = match ports.demand() {
        PortDemand::Both => 6,
        _ => 4,
    };
    if !(min..=81).contains(&length) {
        return Err(MeshError::InfeasiblePorts {
            length,
            demand: ports.demand(),
        });
    }
    let sketch = ported_sketch(length, ports.demand())?;
    let cycle = MeshCycle::from_cells(&sketch.into_cells(), k)?;
    for (a, b) in ports.demanded_edges() {
        assert!(
            cycle.contains_edge(a, b),
            "routing for length {length} lost the port edge {a:?}-{b:?}"
        );
    }
    debug_assert!(cycle.uses_only_declared_steps(&chord_constraints()));
    Ok(cycle)
}
