//! The one-pass engine: a certificate, a fill buffer and at most one pending
//! recompute.
//!
//! Edges are appended to the fill buffer. Each time the buffer reaches
//! `group_size` edges it is handed, together with the current certificate,
//! to a new [`RecomputeJob`]; while the next group fills, every ingest call
//! advances that job by its remaining work bound divided by the number of
//! ingests left before the next swap, so the job finishes in time and work
//! is spread evenly. A job whose bound may still grow (k-connectivity on
//! multigraphs) is paced to finish its known part within the first half of
//! the group, leaving the second half for whatever it discovers. No single
//! ingest does more than about `2·W / group_size` work for a job of bound
//! `W`.
//!
//! Storage is audited on every call: certificate, buffer and the job's
//! working set together may never exceed `2·group_size + bound` edges.

use crate::cert::{Certificate, CertificateKind, RecomputeJob};
use crate::cert::ceil_log2;
use crate::error::{InvariantViolation, StreamError};
use crate::graph::{Edge, EdgeSet, VertexId};
use crate::metrics::MetricsLedger;
use crate::weight::EdgeWeight;

/// Options fixed when a stream is opened.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StreamConfig {
    /// Edges per group; `None` picks the default for the kind.
    pub group_size: Option<usize>,
    /// Recompute over the last partial group instead of appending it raw.
    pub final_recompute: bool,
    /// Count and drop loop edges instead of aborting.
    pub skip_loops: bool,
}

/// `n` for connectivity kinds, `n·⌈log₂ n⌉` for minimum spanning forests
/// (1 when `n = 1`).
pub fn default_group_size(kind: CertificateKind, n: usize) -> usize {
    match kind {
        CertificateKind::Msf => (n * ceil_log2(n) as usize).max(1),
        _ => n.max(1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Open,
    Aborted,
    Finalized,
}

/// Live state of one stream.
#[derive(Debug)]
pub struct StreamState<W> {
    kind: CertificateKind,
    n: usize,
    group_size: usize,
    bound: usize,
    config: StreamConfig,
    certificate: Vec<Edge<W>>,
    buffer: Vec<Edge<W>>,
    pending: Option<RecomputeJob<W>>,
    ledger: MetricsLedger,
    next_index: u64,
    status: Status,
}

impl<W: EdgeWeight> StreamState<W> {
    pub fn open(kind: CertificateKind, n: usize, config: StreamConfig) -> Result<Self, StreamError> {
        if n == 0 {
            return Err(StreamError::NoVertices);
        }
        if kind.k() == Some(0) {
            return Err(StreamError::ZeroK);
        }
        let group_size = match config.group_size {
            Some(0) => return Err(StreamError::ZeroGroupSize),
            Some(g) => g,
            None => default_group_size(kind, n),
        };
        let bound = kind.bound(n);
        Ok(Self {
            kind,
            n,
            group_size,
            bound,
            config,
            // room for a full merge so recompute never reallocates
            certificate: Vec::with_capacity(bound + group_size),
            buffer: Vec::with_capacity(group_size),
            pending: None,
            ledger: MetricsLedger::new(2 * group_size + bound),
            next_index: 0,
            status: Status::Open,
        })
    }

    pub fn kind(&self) -> CertificateKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group_size(&self) -> usize {
        self.group_size
    }

    pub fn config(&self) -> StreamConfig {
        self.config
    }

    /// Sparsity bound of the maintained certificate.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn storage_limit(&self) -> usize {
        2 * self.group_size + self.bound
    }

    /// Edge records currently held.
    pub fn stored_edges(&self) -> usize {
        self.certificate.len() + self.buffer.len() + self.pending.as_ref().map_or(0, RecomputeJob::stored_edges)
    }

    pub fn buffered(&self) -> usize {
        self.buffer.len()
    }

    pub fn has_pending(&self) -> bool {
        self.pending.is_some()
    }

    /// Snapshot of the ledger.
    pub fn metrics(&self) -> MetricsLedger {
        self.ledger.clone()
    }

    pub fn ledger(&self) -> &MetricsLedger {
        &self.ledger
    }

    fn abort<T>(&mut self, err: StreamError) -> Result<T, StreamError> {
        self.status = Status::Aborted;
        Err(err)
    }

    fn check_storage(&mut self) -> Result<(), StreamError> {
        let stored = self.stored_edges();
        self.ledger.observe_storage(stored);
        let limit = self.storage_limit();
        if stored > limit {
            return self.abort(
                InvariantViolation::Storage {
                    stored,
                    limit,
                    ingest: self.next_index,
                }
                .into(),
            );
        }
        Ok(())
    }

    /// Budget for the pending job on this ingest; `left` counts this ingest
    /// and the ones still to come before the buffer is full.
    fn slice(job: &RecomputeJob<W>, left: usize, group_size: usize) -> u64 {
        let left = if job.bound_settled() {
            left
        } else {
            left.saturating_sub(group_size / 2).max(1)
        };
        job.remaining_bound().div_ceil(left as u64)
    }

    /// Runs this ingest's share of the pending job, installing its result
    /// if it ends. `None` drains the job.
    fn advance_pending(&mut self, left: Option<usize>) -> Result<u64, StreamError> {
        let Some(job) = self.pending.as_mut() else {
            return Ok(0);
        };
        let mut spent = 0;
        loop {
            let settled = job.bound_settled();
            let budget = left.map_or(u64::MAX, |left| Self::slice(job, left, self.group_size));
            spent += job.advance(budget);
            // a bound that just grew gets its share of this ingest too
            if job.is_done() || settled || !job.bound_settled() {
                break;
            }
        }
        if job.is_done() {
            let job = self.pending.take().expect("pending job present");
            match job.finish() {
                Ok(cert) => self.certificate = cert.graph.edges,
                Err(violation) => return self.abort(violation.into()),
            }
        }
        Ok(spent)
    }

    /// Ingests one edge. `weight` is required for minimum spanning forest
    /// streams and optional otherwise (unweighted edges weigh zero).
    pub fn ingest(&mut self, u: VertexId, v: VertexId, weight: Option<W>) -> Result<(), StreamError> {
        match self.status {
            Status::Open => {}
            Status::Aborted | Status::Finalized => return Err(StreamError::Aborted),
        }
        let index = self.next_index;
        if u == v {
            if self.config.skip_loops {
                self.ledger.skipped_loops += 1;
                self.ledger.record_ingest(1);
                return Ok(());
            }
            return self.abort(StreamError::LoopEdge { index, vertex: u });
        }
        for vertex in [u, v] {
            if vertex as usize >= self.n {
                return self.abort(StreamError::VertexOutOfRange {
                    index,
                    vertex,
                    n: self.n,
                });
            }
        }
        let weight = match weight {
            Some(w) if w < W::zero() => return self.abort(StreamError::NegativeWeight { index }),
            Some(w) => w,
            None if self.kind.is_weighted() => return self.abort(StreamError::MissingWeight { index }),
            None => W::zero(),
        };

        self.next_index += 1;
        self.ledger.total_edges += 1;
        self.buffer.push(Edge {
            u,
            v,
            weight,
            stream_index: index,
        });
        let mut units = 1;
        self.check_storage()?;

        let left = self.group_size - self.buffer.len() + 1;
        units += self.advance_pending(Some(left))?;
        self.check_storage()?;

        if self.buffer.len() == self.group_size {
            if self.pending.is_some() {
                return self.abort(InvariantViolation::Scheduling { ingest: index }.into());
            }
            let group = std::mem::replace(&mut self.buffer, Vec::with_capacity(self.group_size));
            let certificate = std::mem::take(&mut self.certificate);
            let job = RecomputeJob::new(self.kind, self.n, certificate, group);
            self.pending = Some(job);
            self.ledger.recompute_count += 1;
            units += 1;
        }
        self.ledger.record_ingest(units);
        Ok(())
    }

    /// Convenience wrapper for unweighted edges.
    pub fn ingest_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), StreamError> {
        self.ingest(u, v, None)
    }

    /// Ends the stream and returns the final certificate.
    ///
    /// Any pending recompute is drained. The last partial group is then
    /// recomputed for minimum spanning forests (and for every kind when
    /// `final_recompute` is set); otherwise it is appended unchanged, so the
    /// result can exceed the kind's bound by up to `group_size` edges.
    pub fn finalize(&mut self) -> Result<Certificate<W>, StreamError> {
        match self.status {
            Status::Open => {}
            Status::Aborted | Status::Finalized => return Err(StreamError::Aborted),
        }
        let drained = self.advance_pending(None)?;
        self.ledger.finalize_work += drained;

        let group = std::mem::take(&mut self.buffer);
        if !group.is_empty() {
            if self.kind == CertificateKind::Msf || self.config.final_recompute {
                let certificate = std::mem::take(&mut self.certificate);
                let mut job = RecomputeJob::new(self.kind, self.n, certificate, group);
                self.ledger.recompute_count += 1;
                self.ledger.finalize_work += job.run_to_completion();
                match job.finish() {
                    Ok(cert) => self.certificate = cert.graph.edges,
                    Err(violation) => return self.abort(violation.into()),
                }
            } else {
                self.certificate.extend(group);
            }
        }
        self.check_storage()?;
        self.status = Status::Finalized;
        Ok(Certificate {
            kind: self.kind,
            graph: EdgeSet {
                n: self.n,
                edges: std::mem::take(&mut self.certificate),
            },
            bound: self.bound,
        })
    }
}

/// Streams `edges` through a fresh engine and finalizes it.
pub fn run_stream<W: EdgeWeight>(
    kind: CertificateKind,
    n: usize,
    config: StreamConfig,
    edges: impl IntoIterator<Item = (VertexId, VertexId, Option<W>)>,
) -> Result<(Certificate<W>, MetricsLedger), StreamError> {
    let mut state = StreamState::open(kind, n, config)?;
    for (u, v, w) in edges {
        state.ingest(u, v, w)?;
    }
    let cert = state.finalize()?;
    Ok((cert, state.metrics()))
}
