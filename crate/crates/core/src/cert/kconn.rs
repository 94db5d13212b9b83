//! Sparse certificate for local vertex and edge connectivity up to `k`.
//!
//! The forests come from a maximum-adjacency scan over the underlying simple
//! graph: repeatedly pick the unscanned vertex with the most distinct
//! neighbors in the already scanned part, and scan its edges to unscanned
//! neighbors. The first copy of an edge scanned from `x` to `y` lands in
//! forest `r(y) + 1`, where `r(y)` counts distinct neighbors already scanned
//! into `y`. Keeping forests `1..=k` yields at most `k·n` edges and preserves
//! `min(κ(x, y), k)` for every pair of a simple graph.
//!
//! Parallel copies count as separate paths, so a multigraph needs more than
//! the forests. Counting every copy in `r(y)` (the usual multigraph scan)
//! keeps edge connectivity but can lose vertex connectivity: in a triangle
//! with two doubled sides and `k = 2`, the single side gets pushed to forest
//! 3. Instead, each kept pair `x–y` with extra copies keeps
//! `min(p, k - c)` of its `p` copies, where `c` is the number of internally
//! disjoint `x–y` paths (capped at `k - 1`) in the forests minus that pair,
//! found by a small unit-capacity flow. Pairs in forest `k` never need more
//! than one copy, and simple graphs never run a flow at all. The flow phase
//! also never lets the certificate grow past `k·n` edges.

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, EdgeSet};
use crate::weight::EdgeWeight;

use super::{Certificate, CertificateKind};

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    InitOffsets,
    CountDegrees,
    PrefixSums,
    InitCursor,
    InitEntries,
    Fill,
    InitVertices,
    InitBuckets,
    LinkVertices,
    Select,
    ScanEdges,
    // flow phase, only entered when some kept pair has extra copies
    VertexArcs,
    EdgeArcs,
    CountArcs,
    ArcPrefix,
    InitArcCursor,
    FillArcs,
    PairStart,
    BfsStart,
    Bfs,
    Augment,
    KeepCopies,
    Reset,
    Done,
}

/// Resumable maximum-adjacency scan with a bucket queue keyed by `r`,
/// followed by the flow phase for parallel copies.
#[derive(Debug)]
pub(super) struct AdjacencyScan {
    n: usize,
    m: usize,
    k: u32,
    step: Step,
    i: usize,
    offsets: Vec<usize>,
    cursor: Vec<usize>,
    /// (neighbor, edge position)
    entries: Vec<(u32, u32)>,
    max_degree: usize,
    /// forest index of each first copy, 1-based; 0 for extra copies
    class: Vec<u32>,
    r: Vec<u32>,
    scanned: Vec<bool>,
    next: Vec<u32>,
    prev: Vec<u32>,
    head: Vec<u32>,
    max_r: usize,
    current: u32,
    end: usize,
    /// vertex that last scanned an edge into this vertex, and the position
    /// of that bundle's first copy
    stamp: Vec<u32>,
    first: Vec<u32>,
    /// extra copies of a bundle, chained from its first copy in stream order
    copy_head: Vec<u32>,
    copy_next: Vec<u32>,
    copy_tail: Vec<u32>,
    /// first copies of kept bundles that have extra copies and sit below
    /// forest `k`
    candidates: Vec<u32>,
    kept: usize,
    flow: FlowState,
    extra_bound: u64,
}

/// Vertex-split unit network over the kept first copies: vertex `v` becomes
/// `2v -> 2v+1`, arcs come in pairs `a`, `a ^ 1`.
#[derive(Debug, Default)]
struct FlowState {
    head: Vec<u32>,
    cap: Vec<u8>,
    offsets: Vec<u32>,
    cursor: Vec<u32>,
    adjacency: Vec<u32>,
    /// first arc of each kept edge's pair of forward arcs
    edge_arc: Vec<u32>,
    visited: Vec<u32>,
    parent: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
    queue_head: usize,
    arc: u32,
    touched: Vec<u32>,
    candidate: usize,
    source: u32,
    sink: u32,
    value: u32,
    walk: u32,
    taken: u32,
}

impl FlowState {
    fn tail(&self, a: u32) -> u32 {
        self.head[(a ^ 1) as usize]
    }

    fn push_pair(&mut self, from: u32, to: u32) {
        self.head.push(to);
        self.cap.push(1);
        self.head.push(from);
        self.cap.push(0);
    }
}

impl AdjacencyScan {
    pub(super) fn new(n: usize, m: usize, k: u32) -> Self {
        Self {
            n,
            m,
            k,
            step: Step::InitOffsets,
            i: 0,
            offsets: Vec::with_capacity(n + 1),
            cursor: Vec::with_capacity(n),
            entries: Vec::with_capacity(2 * m),
            max_degree: 0,
            class: Vec::with_capacity(m),
            r: Vec::with_capacity(n),
            scanned: Vec::with_capacity(n),
            next: Vec::with_capacity(n),
            prev: Vec::with_capacity(n),
            head: Vec::new(),
            max_r: 0,
            current: NIL,
            end: 0,
            stamp: Vec::with_capacity(n),
            first: Vec::with_capacity(n),
            copy_head: Vec::with_capacity(m),
            copy_next: Vec::with_capacity(m),
            copy_tail: Vec::with_capacity(n),
            candidates: Vec::new(),
            kept: 0,
            flow: FlowState::default(),
            extra_bound: 0,
        }
    }

    /// Bound for the scan. The flow phase adds [`Self::extra_bound`] once
    /// the scan has shown whether it is needed.
    pub(super) fn work_bound(n: usize, m: usize) -> u64 {
        let (n, m) = (n as u64, m as u64);
        // offsets n+1, degrees m, prefix n, cursor n, entries 2m, fill m,
        // vertex slots n, buckets <= m+1, linking n, picks n,
        // bucket pointer drops <= m, entry scans 2m, bucket moves m
        6 * n + 10 * m + 2
    }

    /// Work the flow phase may still add; zero until the scan is over.
    pub(super) fn extra_bound(&self) -> u64 {
        self.extra_bound
    }

    /// True once [`Self::extra_bound`] is final.
    pub(super) fn settled(&self) -> bool {
        !matches!(
            self.step,
            Step::InitOffsets
                | Step::CountDegrees
                | Step::PrefixSums
                | Step::InitCursor
                | Step::InitEntries
                | Step::Fill
                | Step::InitVertices
                | Step::InitBuckets
                | Step::LinkVertices
                | Step::Select
                | Step::ScanEdges
        )
    }

    fn flow_bound(&self) -> u64 {
        let (n, m, k) = (self.n as u64, self.m as u64, self.k as u64);
        let nodes = 2 * n;
        let arcs = 2 * n + 4 * self.kept as u64;
        // one BFS touches every node and arc once; a path has at most
        // `nodes` arcs and is both augmented and undone
        let per_pair = k * (arcs + nodes + 1) + 2 * (k - 1) * nodes + k + 2;
        n + m + arcs + (nodes + 1) + nodes + arcs + self.candidates.len() as u64 * per_pair + 2
    }

    fn unlink(&mut self, x: u32) {
        let (p, nx) = (self.prev[x as usize], self.next[x as usize]);
        if p == NIL {
            self.head[self.r[x as usize] as usize] = nx;
        } else {
            self.next[p as usize] = nx;
        }
        if nx != NIL {
            self.prev[nx as usize] = p;
        }
    }

    fn link(&mut self, x: u32) {
        let bucket = self.r[x as usize] as usize;
        let h = self.head[bucket];
        self.prev[x as usize] = NIL;
        self.next[x as usize] = h;
        if h != NIL {
            self.prev[h as usize] = x;
        }
        self.head[bucket] = x;
    }

    pub(super) fn advance<W: EdgeWeight>(&mut self, edges: &[Edge<W>], keep: &mut [bool], budget: u64) -> u64 {
        let (n, m) = (self.n, self.m);
        let mut spent = 0;
        // steps between phases are free and always taken, so a scan whose
        // last unit has been paid for is done
        loop {
            match self.step {
                Step::InitOffsets => {
                    if self.i <= n {
                        if spent >= budget {
                            break;
                        }
                        self.offsets.push(0);
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::CountDegrees;
                    }
                }
                Step::CountDegrees => {
                    if self.i < m {
                        if spent >= budget {
                            break;
                        }
                        let e = &edges[self.i];
                        self.offsets[e.u as usize + 1] += 1;
                        self.offsets[e.v as usize + 1] += 1;
                        self.class.push(0);
                        self.copy_head.push(NIL);
                        self.copy_next.push(NIL);
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::PrefixSums;
                    }
                }
                Step::PrefixSums => {
                    if self.i < n {
                        if spent >= budget {
                            break;
                        }
                        let degree = self.offsets[self.i + 1];
                        self.max_degree = self.max_degree.max(degree);
                        self.offsets[self.i + 1] += self.offsets[self.i];
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::InitCursor;
                    }
                }
                Step::InitCursor => {
                    if self.i < n {
                        if spent >= budget {
                            break;
                        }
                        self.cursor.push(self.offsets[self.i]);
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::InitEntries;
                    }
                }
                Step::InitEntries => {
                    if self.i < 2 * m {
                        if spent >= budget {
                            break;
                        }
                        self.entries.push((0, 0));
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::Fill;
                    }
                }
                Step::Fill => {
                    if self.i < m {
                        if spent >= budget {
                            break;
                        }
                        let e = &edges[self.i];
                        let (u, v) = (e.u as usize, e.v as usize);
                        self.entries[self.cursor[u]] = (e.v, self.i as u32);
                        self.cursor[u] += 1;
                        self.entries[self.cursor[v]] = (e.u, self.i as u32);
                        self.cursor[v] += 1;
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.cursor = Vec::new();
                        self.i = 0;
                        self.step = Step::InitVertices;
                    }
                }
                Step::InitVertices => {
                    if self.i < n {
                        if spent >= budget {
                            break;
                        }
                        self.r.push(0);
                        self.scanned.push(false);
                        self.next.push(NIL);
                        self.prev.push(NIL);
                        self.stamp.push(NIL);
                        self.first.push(NIL);
                        self.copy_tail.push(NIL);
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.head = Vec::with_capacity(self.max_degree + 1);
                        self.step = Step::InitBuckets;
                    }
                }
                Step::InitBuckets => {
                    if self.head.len() <= self.max_degree {
                        if spent >= budget {
                            break;
                        }
                        self.head.push(NIL);
                        spent += 1;
                    } else {
                        self.step = Step::LinkVertices;
                    }
                }
                Step::LinkVertices => {
                    // reverse order so that vertex 0 heads bucket 0
                    if self.i < n {
                        if spent >= budget {
                            break;
                        }
                        self.link((n - 1 - self.i) as u32);
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::Select;
                    }
                }
                Step::Select => {
                    let x = self.head.get(self.max_r).copied().unwrap_or(NIL);
                    if x == NIL && self.max_r == 0 {
                        self.finish_scan();
                        continue;
                    }
                    if spent >= budget {
                        break;
                    }
                    spent += 1;
                    if x == NIL {
                        self.max_r -= 1;
                        continue;
                    }
                    self.unlink(x);
                    self.scanned[x as usize] = true;
                    self.current = x;
                    self.i = self.offsets[x as usize];
                    self.end = self.offsets[x as usize + 1];
                    self.step = Step::ScanEdges;
                }
                Step::ScanEdges => {
                    if self.i == self.end {
                        self.step = Step::Select;
                        continue;
                    }
                    if spent >= budget {
                        break;
                    }
                    let (y, pos) = self.entries[self.i];
                    self.i += 1;
                    spent += 1;
                    let yi = y as usize;
                    if self.scanned[yi] {
                        continue;
                    }
                    if self.stamp[yi] == self.current {
                        // another copy of the bundle current -> y
                        let first = self.first[yi] as usize;
                        if self.copy_head[first] == NIL {
                            self.copy_head[first] = pos;
                            if self.class[first] < self.k {
                                self.candidates.push(first as u32);
                            }
                        } else {
                            self.copy_next[self.copy_tail[yi] as usize] = pos;
                        }
                        self.copy_tail[yi] = pos;
                        continue;
                    }
                    self.stamp[yi] = self.current;
                    self.first[yi] = pos;
                    let forest = self.r[yi] + 1;
                    self.class[pos as usize] = forest;
                    if forest <= self.k {
                        keep[pos as usize] = true;
                        self.kept += 1;
                    }
                    self.unlink(y);
                    self.r[yi] = forest;
                    self.link(y);
                    self.max_r = self.max_r.max(forest as usize);
                    spent += 1;
                }
                Step::VertexArcs => {
                    if self.i < n {
                        if spent >= budget {
                            break;
                        }
                        let v = self.i as u32;
                        self.flow.push_pair(2 * v, 2 * v + 1);
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::EdgeArcs;
                    }
                }
                Step::EdgeArcs => {
                    if self.i < m {
                        if spent >= budget {
                            break;
                        }
                        let mut arc = NIL;
                        if keep[self.i] {
                            let e = &edges[self.i];
                            arc = self.flow.head.len() as u32;
                            self.flow.push_pair(2 * e.u + 1, 2 * e.v);
                            self.flow.push_pair(2 * e.v + 1, 2 * e.u);
                        }
                        self.flow.edge_arc.push(arc);
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.flow.offsets = Vec::with_capacity(2 * n + 1);
                        self.flow.offsets.push(0);
                        self.flow.offsets.resize(2 * n + 1, 0);
                        self.step = Step::CountArcs;
                    }
                }
                Step::CountArcs => {
                    if self.i < self.flow.head.len() {
                        if spent >= budget {
                            break;
                        }
                        let tail = self.flow.tail(self.i as u32);
                        self.flow.offsets[tail as usize + 1] += 1;
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::ArcPrefix;
                    }
                }
                Step::ArcPrefix => {
                    if self.i < 2 * n {
                        if spent >= budget {
                            break;
                        }
                        self.flow.offsets[self.i + 1] += self.flow.offsets[self.i];
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.step = Step::InitArcCursor;
                    }
                }
                Step::InitArcCursor => {
                    if self.i < 2 * n {
                        if spent >= budget {
                            break;
                        }
                        self.flow.cursor.push(self.flow.offsets[self.i]);
                        self.flow.visited.push(0);
                        self.flow.parent.push(NIL);
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.i = 0;
                        self.flow.adjacency = vec![0; self.flow.head.len()];
                        self.step = Step::FillArcs;
                    }
                }
                Step::FillArcs => {
                    if self.i < self.flow.head.len() {
                        if spent >= budget {
                            break;
                        }
                        let a = self.i as u32;
                        let tail = self.flow.tail(a) as usize;
                        let slot = self.flow.cursor[tail] as usize;
                        self.flow.adjacency[slot] = a;
                        self.flow.cursor[tail] += 1;
                        self.i += 1;
                        spent += 1;
                    } else {
                        self.flow.cursor = Vec::new();
                        self.flow.candidate = 0;
                        self.step = Step::PairStart;
                    }
                }
                Step::PairStart => {
                    if self.flow.candidate == self.candidates.len() {
                        self.step = Step::Done;
                        continue;
                    }
                    if spent >= budget {
                        break;
                    }
                    let pos = self.candidates[self.flow.candidate] as usize;
                    let e = &edges[pos];
                    let arc = self.flow.edge_arc[pos] as usize;
                    // the pair's own edge is not one of the paths sought
                    self.flow.cap[arc] = 0;
                    self.flow.cap[arc + 2] = 0;
                    self.flow.source = 2 * e.u + 1;
                    self.flow.sink = 2 * e.v;
                    self.flow.value = 0;
                    spent += 1;
                    self.step = Step::BfsStart;
                }
                Step::BfsStart => {
                    if spent >= budget {
                        break;
                    }
                    let f = &mut self.flow;
                    f.epoch += 1;
                    f.queue.clear();
                    f.queue.push(f.source);
                    f.visited[f.source as usize] = f.epoch;
                    f.queue_head = 0;
                    f.arc = f.offsets[f.source as usize];
                    spent += 1;
                    self.step = Step::Bfs;
                }
                Step::Bfs => {
                    if spent >= budget {
                        break;
                    }
                    spent += 1;
                    let f = &mut self.flow;
                    if f.queue_head == f.queue.len() {
                        self.step = Step::KeepCopies;
                        self.start_keep();
                        continue;
                    }
                    let node = f.queue[f.queue_head] as usize;
                    if f.arc == f.offsets[node + 1] {
                        f.queue_head += 1;
                        if let Some(&next) = f.queue.get(f.queue_head) {
                            f.arc = f.offsets[next as usize];
                        }
                        continue;
                    }
                    let a = f.adjacency[f.arc as usize];
                    f.arc += 1;
                    let to = f.head[a as usize];
                    if f.cap[a as usize] > 0 && f.visited[to as usize] != f.epoch {
                        f.visited[to as usize] = f.epoch;
                        f.parent[to as usize] = a;
                        if to == f.sink {
                            f.walk = to;
                            self.step = Step::Augment;
                        } else {
                            f.queue.push(to);
                        }
                    }
                }
                Step::Augment => {
                    let f = &mut self.flow;
                    if f.walk == f.source {
                        f.value += 1;
                        if f.value + 1 >= self.k {
                            self.step = Step::KeepCopies;
                            self.start_keep();
                        } else {
                            self.step = Step::BfsStart;
                        }
                        continue;
                    }
                    if spent >= budget {
                        break;
                    }
                    let a = f.parent[f.walk as usize];
                    f.cap[a as usize] -= 1;
                    f.cap[(a ^ 1) as usize] += 1;
                    f.touched.push(a);
                    f.walk = f.tail(a);
                    spent += 1;
                }
                Step::KeepCopies => {
                    // `taken` copies besides the first are still wanted
                    let pos = self.flow.walk;
                    if pos == NIL || self.flow.taken == 0 || self.kept >= self.k as usize * n {
                        self.step = Step::Reset;
                        continue;
                    }
                    if spent >= budget {
                        break;
                    }
                    keep[pos as usize] = true;
                    self.kept += 1;
                    self.flow.taken -= 1;
                    self.flow.walk = self.copy_next[pos as usize];
                    spent += 1;
                }
                Step::Reset => {
                    let f = &mut self.flow;
                    if let Some(&a) = f.touched.last() {
                        if spent >= budget {
                            break;
                        }
                        f.cap[a as usize] += 1;
                        f.cap[(a ^ 1) as usize] -= 1;
                        f.touched.pop();
                        spent += 1;
                    } else {
                        let pos = self.candidates[f.candidate] as usize;
                        let arc = f.edge_arc[pos] as usize;
                        f.cap[arc] = 1;
                        f.cap[arc + 2] = 1;
                        f.candidate += 1;
                        self.step = Step::PairStart;
                    }
                }
                Step::Done => break,
            }
        }
        spent
    }

    /// Ends the scan: either the certificate is complete or the flow phase
    /// is sized and entered.
    fn finish_scan(&mut self) {
        self.i = 0;
        if self.candidates.is_empty() {
            self.step = Step::Done;
            return;
        }
        self.extra_bound = self.flow_bound();
        self.entries = Vec::new();
        self.head = Vec::new();
        let n = self.n;
        self.flow.head.reserve(4 * n + 4 * self.kept);
        self.flow.edge_arc.reserve(self.m);
        self.step = Step::VertexArcs;
    }

    /// With `c` disjoint paths found, the pair keeps `min(p, k - c)` copies;
    /// the first is already kept.
    fn start_keep(&mut self) {
        let pos = self.candidates[self.flow.candidate] as usize;
        self.flow.taken = self.k - 1 - self.flow.value;
        self.flow.walk = self.copy_head[pos];
    }

    pub(super) fn done(&self) -> bool {
        self.step == Step::Done
    }

    fn classes(&self) -> &[u32] {
        &self.class
    }
}

/// The edge-disjoint forests `F1, ..., Fk` of the scan, plus the parallel
/// copies the certificate keeps beside them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestDecomposition<W> {
    pub k: u32,
    pub forests: Vec<EdgeSet<W>>,
    pub parallel: EdgeSet<W>,
}

impl<W: EdgeWeight> ForestDecomposition<W> {
    /// All certificate edges in stream order.
    pub fn union(&self) -> EdgeSet<W> {
        let mut edges: Vec<Edge<W>> = self
            .forests
            .iter()
            .chain(std::iter::once(&self.parallel))
            .flat_map(|f| f.edges.iter().copied())
            .collect();
        edges.sort_by_key(|e| e.stream_index);
        EdgeSet {
            n: self.parallel.n,
            edges,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.forests.iter().map(EdgeSet::len).sum::<usize>() + self.parallel.len()
    }
}

fn scan_classes<W: EdgeWeight>(merged: &EdgeSet<W>, k: u32) -> (Vec<bool>, Vec<u32>) {
    let m = merged.len();
    let mut scan = AdjacencyScan::new(merged.n, m, k);
    let mut keep = vec![false; m];
    while !scan.done() {
        scan.advance(&merged.edges, &mut keep, u64::MAX);
    }
    (keep, scan.classes().to_vec())
}

/// Splits `merged` into `k` forests and the retained parallel copies;
/// everything else is dropped.
pub fn decompose_forests<W: EdgeWeight>(merged: &EdgeSet<W>, k: u32) -> ForestDecomposition<W> {
    assert!(k >= 1, "k must be at least 1");
    let (keep, class) = scan_classes(merged, k);
    let mut forests = vec![EdgeSet::new(merged.n); k as usize];
    let mut parallel = EdgeSet::new(merged.n);
    for ((e, &c), kept) in merged.edges.iter().zip(&class).zip(keep) {
        if !kept {
            continue;
        }
        if c == 0 {
            parallel.edges.push(*e);
        } else {
            forests[c as usize - 1].edges.push(*e);
        }
    }
    ForestDecomposition { k, forests, parallel }
}

/// Certificate `F1 ∪ ... ∪ Fk` plus retained parallel copies, tagged for
/// vertex connectivity. The same edge set certifies edge connectivity.
pub fn build_k_certificate<W: EdgeWeight>(merged: &EdgeSet<W>, k: u32) -> Certificate<W> {
    assert!(k >= 1, "k must be at least 1");
    let (keep, _) = scan_classes(merged, k);
    let edges = merged
        .edges
        .iter()
        .zip(keep)
        .filter_map(|(e, kept)| kept.then_some(*e))
        .collect();
    let kind = CertificateKind::KConnVertex(k);
    Certificate {
        kind,
        bound: kind.bound(merged.n),
        graph: EdgeSet { n: merged.n, edges },
    }
}
