//! Turning a finalized certificate into an answer.

use serde::{Deserialize, Serialize};

use crate::cert::{bipartition_verdict, build_bipartite_certificate, msf_weight, BipartitionVerdict, Certificate, CertificateKind};
use crate::error::GraphError;
use crate::graph::{component_count, components, Edge, VertexId};
use crate::oracle::{is_k_edge_connected, is_k_vertex_connected, ConnectivityCheck};
use crate::weight::EdgeWeight;

/// Result of postprocessing a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict<W> {
    /// Canonical (smallest member) component label per vertex.
    Components { labels: Vec<VertexId>, count: usize },
    Bipartition(BipartitionVerdict),
    VertexConnectivity(ConnectivityCheck),
    EdgeConnectivity(ConnectivityCheck),
    Msf { edges: Vec<Edge<W>>, weight: W },
}

impl<W> Verdict<W> {
    pub fn components(&self) -> Option<&[VertexId]> {
        match self {
            Verdict::Components { labels, .. } => Some(labels),
            _ => None,
        }
    }
}

/// Answers the certificate's question.
///
/// A bipartiteness certificate may carry a raw final group with several odd
/// edges, so it is reduced once more before the coloring pass.
pub fn postprocess<W: EdgeWeight>(cert: &Certificate<W>) -> Result<Verdict<W>, GraphError> {
    let g = &cert.graph;
    Ok(match cert.kind {
        CertificateKind::SpanningForest => {
            let labels = components(g);
            let count = component_count(&labels);
            Verdict::Components { labels, count }
        }
        CertificateKind::Bipartite => Verdict::Bipartition(bipartition_verdict(&build_bipartite_certificate(g))),
        CertificateKind::KConnVertex(k) => Verdict::VertexConnectivity(is_k_vertex_connected(g, k)?),
        CertificateKind::KConnEdge(k) => Verdict::EdgeConnectivity(is_k_edge_connected(g, k)?),
        CertificateKind::Msf => Verdict::Msf {
            edges: cert.edges().to_vec(),
            weight: msf_weight(cert)?,
        },
    })
}

/// Both connectivity verdicts from one k-connectivity certificate; the
/// same certificate preserves vertex and edge connectivity up to `k`.
pub fn postprocess_both<W: EdgeWeight>(
    cert: &Certificate<W>,
) -> Result<(ConnectivityCheck, ConnectivityCheck), GraphError> {
    let k = match cert.kind {
        CertificateKind::KConnVertex(k) | CertificateKind::KConnEdge(k) => k,
        other => {
            return Err(GraphError::KindMismatch {
                expected: CertificateKind::KConnVertex(1).name(),
                actual: other.name(),
            })
        }
    };
    Ok((is_k_vertex_connected(&cert.graph, k)?, is_k_edge_connected(&cert.graph, k)?))
}
