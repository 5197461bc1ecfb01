//! Long cycles across the chain of mesh blocks.
//!
//! Lengths up to 81 live inside a single block. Everything longer is built
//! by planning per-block lengths ([`plan_chain`]), constructing each block's
//! cycle with the splice edges it must expose, and then merging neighbors
//! ([`splice`]): remove one matched row-1 edge from each cycle and reconnect
//! across the perfect matching that joins consecutive blocks. Each splice is
//! length-additive, so the plan's part sums are the certificate's length.
//!
//! Splice edges alternate between the two standard ports from gap to gap —
//! a splice consumes its edge, so a block in the middle of the chain must
//! expose both ports, which every part length the planner emits (78–81) can
//! do. The final certificate is re-verified before it leaves this module.

use std::fmt::Write as _;

use thiserror::Error;

use crate::base::ExplicitGraph;
use crate::mesh::{
    cycle_with_ports, even_cycle, even_schedule, odd_cycle, odd_schedule, Cell, MeshCycle,
    MeshError, Parity, PortDemand, PortSpec,
};
use crate::product::{
    adjacent_same_dim, build_mesh_chain, embed, MeshChain, MeshCoord, ProductError, ProductVertex,
};
use crate::verify::{verify_cycle, VerificationError};

/// An unordered product edge, written as an ordered pair.
pub type ProductEdge = (ProductVertex, ProductVertex);

/// Errors produced while planning, splicing, or generating certificates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    /// The operation needs a higher dimension.
    #[error("operation requires dimension at least {min}, got {n}")]
    DimensionTooSmall { n: usize, min: usize },
    /// The requested length is outside the graph's cycle spectrum segment
    /// served by the operation.
    #[error("length {length} is outside {min}..={max} for dimension {n}")]
    LengthOutOfRange {
        n: usize,
        length: usize,
        min: usize,
        max: usize,
    },
    /// Spliced certificates must share a dimension.
    #[error("certificate dimensions disagree: {left} vs {right}")]
    SpliceDimensionMismatch { left: usize, right: usize },
    /// The named port edge is not an edge of the cycle it was named for.
    #[error("port edge {a}~{b} is not an edge of the cycle")]
    PortEdgeAbsent { a: ProductVertex, b: ProductVertex },
    /// Port endpoints must be matched across consecutive mesh blocks.
    #[error("{a}~{b} is not a matching edge: spliced cycles must lie in consecutive blocks")]
    MeshesNotConsecutive { a: ProductVertex, b: ProductVertex },
    /// A certificate's vertices must share its declared dimension.
    #[error("certificate vertices must all have dimension {expected}, found {found}")]
    MixedDimensions { expected: usize, found: usize },
    /// The exhaustive base search found nothing (the base graph is
    /// pancyclic, so this signals a broken oracle, not a missing cycle).
    #[error("no cycle of length {length} exists in the base graph")]
    BaseCycleMissing { length: usize },
    /// An internally generated certificate failed its own verification.
    #[error("generated certificate failed verification at length {length}: {source}")]
    Verification {
        length: usize,
        #[source]
        source: VerificationError,
    },
    /// A mesh construction failure.
    #[error(transparent)]
    Mesh(#[from] MeshError),
    /// A coordinate or embedding failure.
    #[error(transparent)]
    Product(#[from] ProductError),
}

/// An explicit cycle in the n-fold power, carried as evidence: the claimed
/// dimension and length, the full vertex sequence, and a provenance string
/// recording which construction produced it.
///
/// Construction validates only structure (uniform dimension); whether the
/// sequence actually is a cycle of the claimed length is exactly what
/// [`crate::verify::verify_cycle`] decides, so deliberately wrong
/// certificates can be built for testing the checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCertificate {
    n: usize,
    length: usize,
    vertices: Vec<ProductVertex>,
    provenance: String,
}

impl CycleCertificate {
    /// Wraps a vertex sequence as a certificate. Every vertex must have
    /// dimension `n`; nothing else is checked here.
    pub fn new(
        n: usize,
        length: usize,
        vertices: Vec<ProductVertex>,
        provenance: String,
    ) -> Result<Self, ChainError> {
        if n < 1 {
            return Err(ChainError::DimensionTooSmall { n, min: 1 });
        }
        for v in &vertices {
            if v.dimension() != n {
                return Err(ChainError::MixedDimensions {
                    expected: n,
                    found: v.dimension(),
                });
            }
        }
        Ok(Self {
            n,
            length,
            vertices,
            provenance,
        })
    }

    /// The ambient dimension.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// The claimed cycle length (the verifier checks it against the vertex
    /// count).
    #[must_use]
    pub fn length(&self) -> usize {
        self.length
    }

    /// The vertex sequence in traversal order.
    #[must_use]
    pub fn vertices(&self) -> &[ProductVertex] {
        &self.vertices
    }

    /// Where the certificate came from.
    #[must_use]
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// The same certificate under a different provenance label.
    #[must_use]
    pub fn with_provenance(mut self, provenance: String) -> Self {
        self.provenance = provenance;
        self
    }
}

/// One planned part: which mesh block and how long a cycle inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshPart {
    /// 1-based block index along the chain.
    pub mesh: u64,
    /// Cycle length inside that block.
    pub length: usize,
}

/// A decomposition of a target length into consecutive mesh parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPlan {
    target_length: usize,
    parts: Vec<MeshPart>,
}

impl ChainPlan {
    /// The planned total.
    #[must_use]
    pub fn target_length(&self) -> usize {
        self.target_length
    }

    /// The parts, one per consecutive block starting at block 1.
    #[must_use]
    pub fn parts(&self) -> &[MeshPart] {
        &self.parts
    }
}

/// The largest cycle length of dimension `n`, i.e. `9^n`.
fn max_length(n: usize) -> usize {
    9usize
        .checked_pow(n as u32)
        .expect("dimension guard keeps 9^n within usize")
}

/// Splits a target length into per-block cycle lengths: full 81-cycles with
/// one tail part, rebalancing the last two parts when the remainder would
/// fall below the smallest constructible part (4).
///
/// Every emitted part is in `4..=81`, so it is constructible with any port
/// demand the chain assembly asks of it.
pub fn plan_chain(n: usize, length: usize) -> Result<ChainPlan, ChainError> {
    if n < 3 {
        return Err(ChainError::DimensionTooSmall { n, min: 3 });
    }
    let max = max_length(n);
    if !(82..=max).contains(&length) {
        return Err(ChainError::LengthOutOfRange {
            n,
            length,
            min: 82,
            max,
        });
    }
    let blocks = length.div_ceil(81);
    let remainder = length - 81 * (blocks - 1);
    let mut lengths = vec![81usize; blocks];
    lengths[blocks - 1] = remainder;
    if remainder < 4 {
        lengths[blocks - 2] = 81 - (4 - remainder);
        lengths[blocks - 1] = 4;
    }
    debug_assert_eq!(lengths.iter().sum::<usize>(), length);
    let parts = lengths
        .into_iter()
        .enumerate()
        .map(|(idx, part_length)| MeshPart {
            mesh: idx as u64 + 1,
            length: part_length,
        })
        .collect();
    Ok(ChainPlan {
        target_length: length,
        parts,
    })
}

/// The port template consumed by gap `g` (between blocks `g` and `g+1`):
/// gaps alternate between the left and right standard edges so that no
/// block is asked for the same edge twice.
fn gap_template(gap: usize) -> (Cell, Cell) {
    if gap % 2 == 1 {
        PortSpec::LEFT_EDGE
    } else {
        PortSpec::RIGHT_EDGE
    }
}

/// The ports block `position` (1-based of `total`) must expose: its left
/// gap's edge, its right gap's edge, or both for blocks in the middle.
fn part_demand(position: usize, total: usize) -> PortDemand {
    debug_assert!(total >= 2 && (1..=total).contains(&position));
    if position == 1 {
        // Only gap 1 touches the first block, and odd gaps use the left edge.
        PortDemand::Left
    } else if position < total {
        PortDemand::Both
    } else if (total - 1) % 2 == 1 {
        PortDemand::Left
    } else {
        PortDemand::Right
    }
}

/// Embeds a mesh cycle into the product graph as a certificate.
fn embed_mesh_cycle(
    cycle: &MeshCycle,
    chain: &MeshChain,
    provenance: String,
) -> Result<CycleCertificate, ChainError> {
    let vertices = cycle
        .coords()
        .iter()
        .map(|&coord| embed(coord, chain))
        .collect::<Result<Vec<_>, _>>()?;
    CycleCertificate::new(chain.n(), cycle.length(), vertices, provenance)
}

/// Embeds one endpoint pair of a port template in a given block.
fn embed_port(
    template: (Cell, Cell),
    block: u64,
    chain: &MeshChain,
) -> Result<ProductEdge, ChainError> {
    let ((i1, j1), (i2, j2)) = template;
    let a = embed(MeshCoord::new(i1, j1, block)?, chain)?;
    let b = embed(MeshCoord::new(i2, j2, block)?, chain)?;
    Ok((a, b))
}

/// Cuts a cyclic sequence at the edge `{u, v}`, returning the path that
/// starts just after the edge and ends just before it. `None` when `{u, v}`
/// is not an edge of the cycle.
fn cut_at_edge(
    vertices: &[ProductVertex],
    u: &ProductVertex,
    v: &ProductVertex,
) -> Option<Vec<ProductVertex>> {
    let len = vertices.len();
    for idx in 0..len {
        let a = &vertices[idx];
        let b = &vertices[(idx + 1) % len];
        if (a == u && b == v) || (a == v && b == u) {
            let mut path = Vec::with_capacity(len);
            path.extend_from_slice(&vertices[(idx + 1) % len..]);
            if idx + 1 < len {
                path.extend_from_slice(&vertices[..=idx]);
            }
            return Some(path);
        }
    }
    None
}

/// Merges two vertex-disjoint cycles into one through a pair of matched
/// port edges: the port edge is removed from each cycle and the four loose
/// ends are reconnected across the inter-block matching.
///
/// Port endpoints are paired positionally: `left_port.0` with
/// `right_port.0` and `left_port.1` with `right_port.1` must each be
/// product-adjacent (which also rules out splicing a cycle with itself —
/// a vertex is never adjacent to itself). The result's length is exactly
/// the sum of the input lengths.
pub fn splice(
    left: &CycleCertificate,
    right: &CycleCertificate,
    left_port: &ProductEdge,
    right_port: &ProductEdge,
) -> Result<CycleCertificate, ChainError> {
    if left.n() != right.n() {
        return Err(ChainError::SpliceDimensionMismatch {
            left: left.n(),
            right: right.n(),
        });
    }
    let left_path = cut_at_edge(left.vertices(), &left_port.0, &left_port.1).ok_or_else(|| {
        ChainError::PortEdgeAbsent {
            a: left_port.0.clone(),
            b: left_port.1.clone(),
        }
    })?;
    let right_path =
        cut_at_edge(right.vertices(), &right_port.0, &right_port.1).ok_or_else(|| {
            ChainError::PortEdgeAbsent {
                a: right_port.0.clone(),
                b: right_port.1.clone(),
            }
        })?;
    for (a, b) in [(&left_port.0, &right_port.0), (&left_port.1, &right_port.1)] {
        if a.dimension() != b.dimension() || !adjacent_same_dim(a, b) {
            return Err(ChainError::MeshesNotConsecutive {
                a: a.clone(),
                b: b.clone(),
            });
        }
    }
    // left_path ends at one endpoint of the left port; enter the right
    // cycle at that endpoint's matched partner and walk to the other end,
    // whose partner is where left_path begins — closing the new cycle.
    let left_end = left_path.last().expect("cycles are non-empty");
    let partner = if *left_end == left_port.0 {
        &right_port.0
    } else {
        &right_port.1
    };
    let mut right_path = right_path;
    if right_path.first() != Some(partner) {
        right_path.reverse();
    }
    debug_assert_eq!(right_path.first(), Some(partner));
    let mut vertices = left_path;
    vertices.extend(right_path);
    let length = left.length() + right.length();
    let provenance = format!("splice[{}+{}]", left.length(), right.length());
    CycleCertificate::new(left.n(), length, vertices, provenance)
}

/// Builds the single-block certificate for a length in `3..=81`, block 1,
/// with provenance naming the schedule step that produced it.
pub fn mesh_certificate(chain: &MeshChain, length: usize) -> Result<CycleCertificate, ChainError> {
    let (cycle, parity) = if length.is_multiple_of(2) {
        (even_cycle(length, 1)?, Parity::Even)
    } else {
        (odd_cycle(length, 1)?, Parity::Odd)
    };
    let entry = match parity {
        Parity::Even => even_schedule().entry_for(length).copied(),
        Parity::Odd => odd_schedule().entry_for(length).copied(),
    }
    .expect("schedules cover 3..=81");
    let mut provenance = format!("mesh:{parity}:{}", entry.label());
    if length == 80 {
        // The one cell the even construction never reaches.
        provenance.push_str(":omits=(9,9)");
    }
    let cert = embed_mesh_cycle(&cycle, chain, provenance)?;
    verify_cycle(&cert).map_err(|source| ChainError::Verification { length, source })?;
    Ok(cert)
}

/// Builds a cycle certificate of length `82..=9^n` by executing a chain
/// plan against a prebuilt mesh chain and splicing block by block.
pub fn long_cycle_in(chain: &MeshChain, length: usize) -> Result<CycleCertificate, ChainError> {
    let n = chain.n();
    let plan = plan_chain(n, length)?;
    let parts = plan.parts();
    let total = parts.len();
    let mut merged: Option<CycleCertificate> = None;
    for (idx, part) in parts.iter().enumerate() {
        let position = idx + 1;
        let demand = part_demand(position, total);
        let spec = match demand {
            PortDemand::Left => PortSpec::left_only(),
            PortDemand::Right => PortSpec::right_only(),
            PortDemand::Both => PortSpec::both(),
        };
        let cycle = cycle_with_ports(part.length, part.mesh, &spec)?;
        let cert = embed_mesh_cycle(
            &cycle,
            chain,
            format!("mesh:block={}:len={}", part.mesh, part.length),
        )?;
        merged = Some(match merged.take() {
            None => cert,
            Some(left) => {
                let gap = idx; // joins blocks at positions idx and idx + 1
                let template = gap_template(gap);
                let left_port = embed_port(template, parts[idx - 1].mesh, chain)?;
                let right_port = embed_port(template, part.mesh, chain)?;
                splice(&left, &cert, &left_port, &right_port)?
            }
        });
    }
    let mut provenance = format!("chain:blocks={total}:parts=");
    for (idx, part) in parts.iter().enumerate() {
        if idx > 0 {
            provenance.push('+');
        }
        write!(provenance, "{}", part.length).expect("writing to a string cannot fail");
    }
    let cert = merged
        .expect("plans have at least two parts")
        .with_provenance(provenance);
    verify_cycle(&cert).map_err(|source| ChainError::Verification { length, source })?;
    Ok(cert)
}

/// Builds a cycle certificate of length `82..=9^n` for dimension `n ≥ 3`.
pub fn long_cycle(n: usize, length: usize) -> Result<CycleCertificate, ChainError> {
    if n < 3 {
        return Err(ChainError::DimensionTooSmall { n, min: 3 });
    }
    let chain = build_mesh_chain(n)?;
    long_cycle_in(&chain, length)
}

/// Builds the certificate for one length against a prebuilt chain:
/// single-block constructions up to 81, spliced chains beyond.
pub fn certificate_in(chain: &MeshChain, length: usize) -> Result<CycleCertificate, ChainError> {
    let n = chain.n();
    let max = max_length(n);
    if !(3..=max).contains(&length) {
        return Err(ChainError::LengthOutOfRange {
            n,
            length,
            min: 3,
            max,
        });
    }
    if length <= 81 {
        mesh_certificate(chain, length)
    } else {
        long_cycle_in(chain, length)
    }
}

/// Builds the certificate for one length of the base graph itself through
/// the exhaustive search, so dimension 1 rests on the oracle rather than on
/// any construction.
pub fn base_certificate(length: usize) -> Result<CycleCertificate, ChainError> {
    if !(3..=9).contains(&length) {
        return Err(ChainError::LengthOutOfRange {
            n: 1,
            length,
            min: 3,
            max: 9,
        });
    }
    let cycle = crate::verify::brute_force_cycle(&ExplicitGraph::base_graph(), length)
        .expect("length range was checked")
        .ok_or(ChainError::BaseCycleMissing { length })?;
    let vertices = cycle
        .iter()
        .map(|&idx| ProductVertex::from_values(&[idx as u8 + 1]))
        .collect::<Result<Vec<_>, _>>()?;
    let cert = CycleCertificate::new(1, length, vertices, "base:brute-force".to_string())?;
    verify_cycle(&cert).map_err(|source| ChainError::Verification { length, source })?;
    Ok(cert)
}

/// Builds the certificate for one `(n, length)` pair, constructing the mesh
/// chain on the fly for `n ≥ 2`.
pub fn certificate_for_length(n: usize, length: usize) -> Result<CycleCertificate, ChainError> {
    match n {
        0 => Err(ChainError::DimensionTooSmall { n, min: 1 }),
        1 => base_certificate(length),
        _ => {
            let chain = build_mesh_chain(n)?;
            certificate_in(&chain, length)
        }
    }
}

/// A stream of one verified certificate per length, ascending over the full
/// range `3..=9^n`. The stream fuses after the first error.
#[derive(Debug)]
pub struct CertificateStream {
    n: usize,
    chain: Option<MeshChain>,
    next_length: usize,
    max: usize,
    stopped: bool,
}

impl Iterator for CertificateStream {
    type Item = Result<CycleCertificate, ChainError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.stopped || self.next_length > self.max {
            return None;
        }
        let length = self.next_length;
        self.next_length += 1;
        let result = match &self.chain {
            None => base_certificate(length),
            Some(chain) => certificate_in(chain, length),
        };
        if result.is_err() {
            self.stopped = true;
        }
        Some(result)
    }
}

/// Streams certificates for every length `3..=9^n` in ascending order,
/// verifying each one before it is yielded; generation aborts at the first
/// internal failure.
pub fn pancyclic_certificates(n: usize) -> Result<CertificateStream, ChainError> {
    match n {
        0 => Err(ChainError::DimensionTooSmall { n, min: 1 }),
        1 => Ok(CertificateStream {
            n,
            chain: None,
            next_length: 3,
            max: 9,
            stopped: false,
        }),
        _ => {
            let chain = build_mesh_chain(n)?;
            let max = max_length(n);
            Ok(CertificateStream {
                n,
                chain: Some(chain),
                next_length: 3,
                max,
                stopped: false,
            })
        }
    }
}

impl CertificateStream {
    /// The dimension the stream serves.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }
}
