//! Serialization of cycle certificates and edge-list rendering.
//!
//! A [`CertificateDocument`] is the stable on-disk form of a
//! [`CycleCertificate`]: a small JSON object carrying a schema version, the
//! claimed dimension and length, the vertex sequence as coordinate arrays,
//! and the provenance string. Parsing checks structure only — coordinate
//! labels in range, uniform dimension — and leaves the cycle claims to
//! [`crate::verify::verify_cycle`], so a stored certificate that lies about
//! its cycle is loadable and then rejected by the checker, never silently
//! repaired.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{ChainError, CycleCertificate};
use crate::product::{neighbors, ProductError, ProductVertex};

/// Version tag written into every document this crate produces.
pub const CERTIFICATE_SCHEMA_VERSION: &str = "1";

/// Errors produced while reading or rendering certificate documents.
#[derive(Debug, Error)]
pub enum DocumentError {
    /// The text was not a valid document.
    #[error("invalid certificate document: {0}")]
    Json(#[from] serde_json::Error),
    /// A vertex coordinate was outside `1..=9`.
    #[error(transparent)]
    Vertex(#[from] ProductError),
    /// The vertex list did not match the declared dimension.
    #[error(transparent)]
    Structure(#[from] ChainError),
    /// Whole-graph edge lists are only rendered for small dimensions.
    #[error("graph edge lists are only rendered for dimension 1..={max}, got {n}")]
    DimensionTooLarge { n: usize, max: usize },
}

/// The on-disk form of a cycle certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    /// Document format version; see [`CERTIFICATE_SCHEMA_VERSION`].
    pub schema_version: String,
    /// Ambient dimension of the power graph.
    pub n: usize,
    /// Claimed cycle length.
    pub length: usize,
    /// Vertex sequence in traversal order, one coordinate array per vertex.
    pub vertices: Vec<Vec<u8>>,
    /// Which construction produced the cycle.
    pub provenance: String,
}

impl CertificateDocument {
    /// Captures a certificate into its on-disk form.
    #[must_use]
    pub fn from_certificate(cert: &CycleCertificate) -> Self {
        Self {
            schema_version: CERTIFICATE_SCHEMA_VERSION.to_string(),
            n: cert.n(),
            length: cert.length(),
            vertices: cert.vertices().iter().map(ProductVertex::values).collect(),
            provenance: cert.provenance().to_string(),
        }
    }

    /// Rebuilds the in-memory certificate. Structural violations (bad
    /// labels, mixed dimensions) are errors here; whether the sequence is a
    /// cycle of the claimed length is the verifier's question.
    pub fn to_certificate(&self) -> Result<CycleCertificate, DocumentError> {
        let vertices = self
            .vertices
            .iter()
            .map(|values| ProductVertex::from_values(values))
            .collect::<Result<Vec<_>, _>>()?;
        let cert = CycleCertificate::new(self.n, self.length, vertices, self.provenance.clone())?;
        Ok(cert)
    }

    /// Whether the document carries the schema version this crate writes.
    #[must_use]
    pub fn is_current_schema(&self) -> bool {
        self.schema_version == CERTIFICATE_SCHEMA_VERSION
    }

    /// Serializes to pretty-printed JSON with a trailing newline, byte-
    /// deterministic for a given document.
    #[must_use]
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents serialize infallibly");
        text.push('\n');
        text
    }

    /// Parses a document from JSON text.
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Renders a certificate's edges in traversal order, one `u v` line per
/// step including the wraparound, vertices written as dash-joined
/// coordinates.
#[must_use]
pub fn render_cycle_edgelist(cert: &CycleCertificate) -> String {
    let vertices = cert.vertices();
    let mut out = String::new();
    for (idx, u) in vertices.iter().enumerate() {
        let v = &vertices[(idx + 1) % vertices.len()];
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Renders every edge of the `n`-fold power as sorted `u v` lines, the
/// lexicographically smaller endpoint first. Limited to `n ≤ 3` (6 561
/// edges); higher powers are too large to print usefully.
pub fn render_graph_edgelist(n: usize) -> Result<String, DocumentError> {
    const MAX_RENDER_DIMENSION: usize = 3;
    if !(1..=MAX_RENDER_DIMENSION).contains(&n) {
        return Err(DocumentError::DimensionTooLarge {
            n,
            max: MAX_RENDER_DIMENSION,
        });
    }
    let total = 9usize.pow(n as u32);
    let mut lines = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut values = vec![0u8; n];
        for slot in (0..n).rev() {
            values[slot] = (rest % 9) as u8 + 1;
            rest /= 9;
        }
        let u = ProductVertex::from_values(&values)?;
        for v in neighbors(&u) {
            if u < v {
                lines.push(format!("{u} {v}"));
            }
        }
    }
    lines.sort();
    let mut out = lines.join("\n");
    out.push('\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::certificate_for_length;
    use crate::verify::{verify_cycle, VerificationErrorKind};

    #[test]
    fn documents_round_trip_through_json() {
        let cert = certificate_for_length(2, 17).expect("single-block length");
        let doc = CertificateDocument::from_certificate(&cert);
        assert_eq!(doc.schema_version, CERTIFICATE_SCHEMA_VERSION);
        assert!(doc.is_current_schema());
        let text = doc.to_json();
        assert!(text.ends_with('\n'));
        let reparsed = CertificateDocument::from_json(&text).expect("own output parses");
        assert_eq!(reparsed, doc);
        let rebuilt = reparsed.to_certificate().expect("structurally valid");
        assert_eq!(rebuilt.vertices(), cert.vertices());
        assert_eq!(rebuilt.length(), cert.length());
        assert_eq!(rebuilt.n(), cert.n());
        assert_eq!(rebuilt.provenance(), cert.provenance());
        assert_eq!(verify_cycle(&rebuilt), Ok(()));
    }

    #[test]
    fn serialization_is_byte_deterministic() {
        let cert = certificate_for_length(2, 40).expect("single-block length");
        let doc = CertificateDocument::from_certificate(&cert);
        assert_eq!(doc.to_json(), doc.to_json());
        let reparsed = CertificateDocument::from_json(&doc.to_json()).expect("parses");
        assert_eq!(reparsed.to_json(), doc.to_json());
    }

    #[test]
    fn parsing_rejects_bad_labels_but_not_length_lies() {
        let bad_label = CertificateDocument {
            schema_version: CERTIFICATE_SCHEMA_VERSION.to_string(),
            n: 2,
            length: 1,
            vertices: vec![vec![0, 1]],
            provenance: "test".to_string(),
        };
        assert!(matches!(
            bad_label.to_certificate(),
            Err(DocumentError::Vertex(_))
        ));

        let mixed = CertificateDocument {
            schema_version: CERTIFICATE_SCHEMA_VERSION.to_string(),
            n: 2,
            length: 1,
            vertices: vec![vec![1, 1, 1]],
            provenance: "test".to_string(),
        };
        assert!(matches!(
            mixed.to_certificate(),
            Err(DocumentError::Structure(_))
        ));

        // Length lies load fine and then fail verification.
        let liar = CertificateDocument {
            schema_version: CERTIFICATE_SCHEMA_VERSION.to_string(),
            n: 1,
            length: 99,
            vertices: vec![vec![1], vec![3], vec![5]],
            provenance: "test".to_string(),
        };
        let cert = liar.to_certificate().expect("structurally fine");
        let err = verify_cycle(&cert).expect_err("length lie caught");
        assert_eq!(err.kind(), VerificationErrorKind::LengthMismatch);
    }

    #[test]
    fn malformed_json_is_reported() {
        assert!(matches!(
            CertificateDocument::from_json("{\"schema_version\":"),
            Err(DocumentError::Json(_))
        ));
        assert!(matches!(
            CertificateDocument::from_json("{}"),
            Err(DocumentError::Json(_))
        ));
    }

    #[test]
    fn cycle_edgelists_follow_traversal_order() {
        let cert = certificate_for_length(1, 3).expect("base triangle");
        let rendered = render_cycle_edgelist(&cert);
        assert_eq!(rendered, "1 3\n3 5\n5 1\n");

        let cert = certificate_for_length(2, 4).expect("seed square");
        let rendered = render_cycle_edgelist(&cert);
        assert_eq!(rendered.lines().count(), 4);
        for line in rendered.lines() {
            let parts: Vec<&str> = line.split(' ').collect();
            assert_eq!(parts.len(), 2);
            assert_eq!(parts[0].split('-').count(), 2, "n=2 vertices");
        }
    }

    #[test]
    fn graph_edgelists_have_known_sizes() {
        let base = render_graph_edgelist(1).expect("small dimension");
        assert_eq!(base.lines().count(), 27, "9 vertices of degree 6");
        assert!(base.contains("1 3\n"));
        assert!(!base.contains("1 2\n"), "ring edges are deleted");

        let squared = render_graph_edgelist(2).expect("small dimension");
        assert_eq!(squared.lines().count(), 486, "81 vertices of degree 12");

        let mut sorted: Vec<&str> = base.lines().collect();
        sorted.sort_unstable();
        assert_eq!(sorted, base.lines().collect::<Vec<_>>(), "sorted output");
    }

    #[test]
    fn graph_edgelists_respect_the_dimension_cap() {
        assert!(matches!(
            render_graph_edgelist(4),
            Err(DocumentError::DimensionTooLarge { n: 4, max: 3 })
        ));
        assert!(matches!(
            render_graph_edgelist(0),
            Err(DocumentError::DimensionTooLarge { n: 0, max: 3 })
        ));
    }
}
