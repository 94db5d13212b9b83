//! One-pass, bounded-memory processing of graph edge streams.
//!
//! A [`StreamState`] keeps a sparse certificate of everything seen so far
//! for one question (connected components, bipartiteness, k-vertex or
//! k-edge connectivity, minimum spanning forest). Edges are buffered in
//! groups; a full group is merged with the certificate by a recompute job
//! that runs in small slices during the following ingests, so both the
//! stored edge count and the work per edge stay bounded. At the end,
//! [`postprocess`] answers the question from the final certificate.
//!
//! ```
//! use semistream::{postprocess, CertificateKind, StreamConfig, StreamState, Verdict};
//!
//! let mut s = StreamState::open(CertificateKind::SpanningForest, 4, StreamConfig::default())?;
//! for (u, v) in [(0, 1), (2, 3), (1, 0)] {
//!     s.ingest_edge(u, v)?;
//! }
//! let cert = s.finalize()?;
//! assert_eq!(postprocess(&cert)?, Verdict::Components { labels: vec![0, 0, 2, 2], count: 2 });
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Edge weights are generic over [`EdgeWeight`]; the aliases at the crate
//! root fix them to `u64`, the width of the wire format.

pub mod cert;
pub mod engine;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod union_find;
pub mod verdict;
pub mod weight;

pub use cert::{CertificateKind, RecomputeJob};
pub use engine::{default_group_size, run_stream, StreamConfig};
pub use error::{GraphError, InvariantViolation, StreamError};
pub use graph::VertexId;
pub use metrics::MetricsLedger;
pub use union_find::UnionFind;
pub use verdict::{postprocess, postprocess_both};
pub use weight::EdgeWeight;

/// Weight type of the wire formats.
pub type Weight = u64;
pub type Edge = graph::Edge<Weight>;
pub type EdgeSet = graph::EdgeSet<Weight>;
pub type Certificate = cert::Certificate<Weight>;
pub type BipartiteCertificate = cert::BipartiteCertificate<Weight>;
pub type StreamState = engine::StreamState<Weight>;
pub type Verdict = verdict::Verdict<Weight>;
