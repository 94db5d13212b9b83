//! Sparse strong certificates and the resumable jobs that build them.
//!
//! Every builder runs as a [`RecomputeJob`]: a continuation over the merged
//! edge set (previous certificate followed by one buffered group) that can
//! be advanced a bounded number of work units at a time. The one-shot
//! builders (`build_forest_certificate`, `build_msf`, ...) simply run a job
//! to completion, so the sliced and unsliced paths share one implementation.
//!
//! A work unit is one elementary graph operation: moving or scanning an
//! edge, one union-find operation, one comparison, or initializing one array
//! slot. Each job computes an upper bound on its total work when it is
//! created (the k-connectivity builder may raise it once, see
//! [`RecomputeJob::bound_settled`]); exceeding it is reported as an
//! invariant violation.

mod bipartite;
mod forest;
mod kconn;
mod msf;

use serde::{Deserialize, Serialize};

use crate::error::InvariantViolation;
use crate::graph::{Edge, EdgeSet};
use crate::weight::EdgeWeight;

pub use bipartite::{bipartition_verdict, build_bipartite_certificate, BipartiteCertificate, BipartitionVerdict};
pub use forest::build_forest_certificate;
pub use kconn::{build_k_certificate, decompose_forests, ForestDecomposition};
pub use msf::{build_msf, msf_weight};
pub(crate) use msf::ceil_log2;

/// The property a certificate is maintained for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    /// Connected components; certificate is a spanning forest.
    SpanningForest,
    /// Bipartiteness; spanning forest plus at most one odd-cycle edge.
    Bipartite,
    /// Vertex connectivity up to `k`.
    KConnVertex(u32),
    /// Edge connectivity up to `k`.
    KConnEdge(u32),
    /// Minimum spanning forest.
    Msf,
}

impl CertificateKind {
    /// Maximum number of edges a certificate of this kind may hold.
    pub fn bound(&self, n: usize) -> usize {
        match *self {
            CertificateKind::SpanningForest | CertificateKind::Msf => n.saturating_sub(1),
            CertificateKind::Bipartite => n,
            CertificateKind::KConnVertex(k) | CertificateKind::KConnEdge(k) => k as usize * n,
        }
    }

    pub fn k(&self) -> Option<u32> {
        match *self {
            CertificateKind::KConnVertex(k) | CertificateKind::KConnEdge(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self, CertificateKind::Msf)
    }

    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::SpanningForest => "spanning-forest",
            CertificateKind::Bipartite => "bipartite",
            CertificateKind::KConnVertex(_) => "k-vertex-connectivity",
            CertificateKind::KConnEdge(_) => "k-edge-connectivity",
            CertificateKind::Msf => "msf",
        }
    }
}

/// A sparse edge set over the stream's vertex set, tagged with its kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate<W> {
    pub kind: CertificateKind,
    pub graph: EdgeSet<W>,
    pub bound: usize,
}

impl<W: EdgeWeight> Certificate<W> {
    pub fn empty(kind: CertificateKind, n: usize) -> Self {
        Self {
            kind,
            graph: EdgeSet::new(n),
            bound: kind.bound(n),
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.graph.edges
    }

    pub fn len(&self) -> usize {
        self.graph.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.edges.is_empty()
    }

    pub fn within_bound(&self) -> bool {
        self.len() <= self.bound
    }
}

/// Builds the certificate of `merged` for `kind` in one go.
pub fn recompute<W: EdgeWeight>(kind: CertificateKind, merged: &EdgeSet<W>) -> Certificate<W> {
    let mut job = RecomputeJob::new(kind, merged.n, merged.edges.clone(), Vec::new());
    job.run_to_completion();
    job.finish()
        .expect("recompute job stayed within its own work bound")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    /// Flag certificate edges, then move group edges behind them.
    Gather,
    Build,
    /// Squeeze kept edges to the front, preserving order.
    Compact,
    Done,
}

#[derive(Debug)]
enum Builder {
    Forest(forest::ForestScan),
    Bipartite(bipartite::ParityScan),
    KConn(kconn::AdjacencyScan),
    Msf(msf::SortSweep),
}

impl Builder {
    fn new(kind: CertificateKind, n: usize, m: usize) -> Self {
        match kind {
            CertificateKind::SpanningForest => Builder::Forest(forest::ForestScan::new(n, m)),
            CertificateKind::Bipartite => Builder::Bipartite(bipartite::ParityScan::new(n, m)),
            CertificateKind::KConnVertex(k) | CertificateKind::KConnEdge(k) => {
                Builder::KConn(kconn::AdjacencyScan::new(n, m, k))
            }
            CertificateKind::Msf => Builder::Msf(msf::SortSweep::new(n, m)),
        }
    }

    fn work_bound(kind: CertificateKind, n: usize, m: usize) -> u64 {
        match kind {
            CertificateKind::SpanningForest => forest::ForestScan::work_bound(n, m),
            CertificateKind::Bipartite => bipartite::ParityScan::work_bound(n, m),
            CertificateKind::KConnVertex(_) | CertificateKind::KConnEdge(_) => {
                kconn::AdjacencyScan::work_bound(n, m)
            }
            CertificateKind::Msf => msf::SortSweep::work_bound(n, m),
        }
    }

    fn advance<W: EdgeWeight>(&mut self, edges: &[Edge<W>], keep: &mut [bool], budget: u64) -> u64 {
        match self {
            Builder::Forest(b) => b.advance(edges, keep, budget),
            Builder::Bipartite(b) => b.advance(edges, keep, budget),
            Builder::KConn(b) => b.advance(edges, keep, budget),
            Builder::Msf(b) => b.advance(edges, keep, budget),
        }
    }

    /// Work beyond the creation-time bound that the builder has since
    /// discovered it needs.
    fn extra_bound(&self) -> u64 {
        match self {
            Builder::KConn(b) => b.extra_bound(),
            _ => 0,
        }
    }

    /// True once [`Builder::extra_bound`] can no longer change.
    fn settled(&self) -> bool {
        match self {
            Builder::KConn(b) => b.settled(),
            _ => true,
        }
    }

    fn done(&self) -> bool {
        match self {
            Builder::Forest(b) => b.done(),
            Builder::Bipartite(b) => b.done(),
            Builder::KConn(b) => b.done(),
            Builder::Msf(b) => b.done(),
        }
    }
}

/// Resumable recompute of the certificate of `certificate ∪ group`.
///
/// Creating a job is O(1): the two edge vectors are moved in, not copied.
/// All remaining work, including merging the vectors and compacting the
/// result, happens inside [`RecomputeJob::advance`].
#[derive(Debug)]
pub struct RecomputeJob<W> {
    kind: CertificateKind,
    n: usize,
    merged: Vec<Edge<W>>,
    group: Vec<Edge<W>>,
    keep: Vec<bool>,
    certificate_len: usize,
    /// Gather: next position to flag/move. Compact: read cursor.
    cursor: usize,
    write: usize,
    builder: Option<Builder>,
    phase: Phase,
    used: u64,
    bound: u64,
    /// work added by the builder after creation
    extra: u64,
}

impl<W: EdgeWeight> RecomputeJob<W> {
    pub fn new(kind: CertificateKind, n: usize, certificate: Vec<Edge<W>>, group: Vec<Edge<W>>) -> Self {
        let certificate_len = certificate.len();
        let m = certificate_len + group.len();
        // gather + build + compact
        let bound = m as u64 + Builder::work_bound(kind, n, m) + m as u64;
        let mut merged = certificate;
        // no-op when the caller keeps spare capacity (the engine does)
        merged.reserve_exact(group.len());
        Self {
            kind,
            n,
            merged,
            group,
            keep: Vec::with_capacity(m),
            certificate_len,
            cursor: 0,
            write: 0,
            builder: None,
            phase: Phase::Gather,
            used: 0,
            bound,
            extra: 0,
        }
    }

    pub fn kind(&self) -> CertificateKind {
        self.kind
    }

    /// Upper bound on the total work units this job will spend, as far as
    /// it is known. The k-connectivity builder may raise it once, when its
    /// scan shows that parallel copies need the flow phase; see
    /// [`RecomputeJob::bound_settled`].
    pub fn work_bound(&self) -> u64 {
        self.bound + self.extra
    }

    /// True once [`RecomputeJob::work_bound`] is final.
    pub fn bound_settled(&self) -> bool {
        match self.phase {
            Phase::Gather => self.kind.k().is_none(),
            Phase::Build => self.builder.as_ref().is_none_or(Builder::settled),
            Phase::Compact | Phase::Done => true,
        }
    }

    pub fn remaining_bound(&self) -> u64 {
        self.work_bound().saturating_sub(self.used)
    }

    pub fn work_used(&self) -> u64 {
        self.used
    }

    pub fn is_done(&self) -> bool {
        self.phase == Phase::Done
    }

    /// Edge records currently held by the job.
    pub fn stored_edges(&self) -> usize {
        match self.phase {
            Phase::Gather => {
                let moved = self.cursor.saturating_sub(self.certificate_len);
                self.merged.len() + (self.group.len() - moved)
            }
            Phase::Build => self.merged.len(),
            // edges before `write` are kept, edges from `cursor` on are still pending
            Phase::Compact => self.write + (self.merged.len() - self.cursor),
            Phase::Done => self.merged.len(),
        }
    }

    /// Runs at most roughly `budget` work units (a single step may overshoot
    /// by a small constant). Returns the units spent. Moving between phases
    /// is free and never waits for budget, so once every unit of the bound
    /// has been paid the job is done.
    pub fn advance(&mut self, budget: u64) -> u64 {
        let mut spent = 0u64;
        loop {
            match self.phase {
                Phase::Gather => {
                    let certificate_len = self.certificate_len;
                    if self.cursor < certificate_len + self.group.len() {
                        if spent >= budget {
                            break;
                        }
                        if self.cursor >= certificate_len {
                            let e = self.group[self.cursor - certificate_len];
                            self.merged.push(e);
                        }
                        self.keep.push(false);
                        self.cursor += 1;
                        spent += 1;
                    } else {
                        self.group = Vec::new();
                        self.builder = Some(Builder::new(self.kind, self.n, self.merged.len()));
                        self.phase = Phase::Build;
                    }
                }
                Phase::Build => {
                    let builder = self.builder.as_mut().expect("builder exists in build phase");
                    spent += builder.advance(&self.merged, &mut self.keep, budget.saturating_sub(spent));
                    self.extra = builder.extra_bound();
                    if !builder.done() {
                        break;
                    }
                    self.builder = None;
                    self.cursor = 0;
                    self.write = 0;
                    self.phase = Phase::Compact;
                }
                Phase::Compact => {
                    if self.cursor < self.merged.len() {
                        if spent >= budget {
                            break;
                        }
                        if self.keep[self.cursor] {
                            self.merged[self.write] = self.merged[self.cursor];
                            self.write += 1;
                        }
                        self.cursor += 1;
                        spent += 1;
                    } else {
                        self.merged.truncate(self.write);
                        self.keep = Vec::new();
                        self.phase = Phase::Done;
                    }
                }
                Phase::Done => break,
            }
        }
        self.used += spent;
        spent
    }

    pub fn run_to_completion(&mut self) -> u64 {
        let mut spent = 0;
        while !self.is_done() {
            spent += self.advance(u64::MAX);
        }
        spent
    }

    /// The finished certificate. Fails if the job overran its work bound or
    /// produced more edges than the kind allows.
    pub fn finish(self) -> Result<Certificate<W>, InvariantViolation> {
        assert!(self.is_done(), "finish called on a pending recompute job");
        if self.used > self.work_bound() {
            return Err(InvariantViolation::WorkBound {
                used: self.used,
                bound: self.work_bound(),
            });
        }
        let certificate = Certificate {
            kind: self.kind,
            bound: self.kind.bound(self.n),
            graph: EdgeSet {
                n: self.n,
                edges: self.merged,
            },
        };
        if !certificate.within_bound() {
            return Err(InvariantViolation::Sparsity {
                len: certificate.len(),
                bound: certificate.bound,
            });
        }
        Ok(certificate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = EdgeSet<u64>;

    #[test]
    fn bounds_per_kind() {
        assert_eq!(CertificateKind::SpanningForest.bound(10), 9);
        assert_eq!(CertificateKind::Bipartite.bound(10), 10);
        assert_eq!(CertificateKind::KConnVertex(3).bound(10), 30);
        assert_eq!(CertificateKind::KConnEdge(2).bound(10), 20);
        assert_eq!(CertificateKind::Msf.bound(10), 9);
        assert_eq!(CertificateKind::Msf.bound(1), 0);
    }

    #[test]
    fn recompute_of_path_is_the_path() {
        let g = G::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = recompute(CertificateKind::SpanningForest, &g);
        assert_eq!(c.graph, g);
    }

    #[test]
    fn recompute_msf_of_weighted_triangle() {
        let g = G::from_weighted(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        let c = recompute(CertificateKind::Msf, &g);
        let weights: Vec<u64> = c.edges().iter().map(|e| e.weight).collect();
        assert_eq!(weights, vec![1, 2]);
    }

    #[test]
    fn sliced_job_matches_one_shot_and_respects_bound() {
        let mut pairs = Vec::new();
        for u in 0..7u32 {
            for v in u + 1..7 {
                pairs.push((u, v));
            }
        }
        let g = G::from_pairs(7, &pairs).unwrap();
        let (cert_part, group) = g.edges.split_at(9);
        for kind in [
            CertificateKind::SpanningForest,
            CertificateKind::Bipartite,
            CertificateKind::KConnVertex(2),
            CertificateKind::Msf,
        ] {
            let expected = recompute(kind, &g);
            let mut job = RecomputeJob::new(kind, 7, cert_part.to_vec(), group.to_vec());
            let bound = job.work_bound();
            let mut slices = 0;
            while !job.is_done() {
                job.advance(3);
                assert!(job.stored_edges() <= g.len());
                slices += 1;
            }
            assert!(job.work_used() <= bound, "{kind:?}");
            assert!(slices as u64 >= bound / 6, "{kind:?}: suspiciously few slices");
            assert_eq!(job.finish().unwrap(), expected, "{kind:?}");
        }
    }

    #[test]
    fn empty_job_finishes() {
        let mut job = RecomputeJob::<u64>::new(CertificateKind::Bipartite, 3, Vec::new(), Vec::new());
        job.run_to_completion();
        assert!(job.finish().unwrap().is_empty());
    }
}
