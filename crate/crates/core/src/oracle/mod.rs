//! Full-memory reference computations.
//!
//! Local connectivities come from unit-capacity max flow (vertex-split for
//! κ). Global k-connectivity verdicts are what the engine runs on its final
//! certificate, and the exhaustive separator/cut enumerators exist to check
//! the flow answers on small graphs.

mod flow;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{component_count, components, components_excluding, EdgeSet, VertexId};
use crate::union_find::UnionFind;
use crate::weight::EdgeWeight;

pub use flow::FlowNetwork;
use flow::INFINITE;

/// An edge named in a cut witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub stream_index: u64,
}

/// A vertex separator or an edge cut. An empty witness means the graph is
/// disconnected to begin with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutWitness {
    Separator { vertices: Vec<VertexId> },
    Cut { edges: Vec<CutEdge> },
}

impl CutWitness {
    pub fn size(&self) -> usize {
        match self {
            CutWitness::Separator { vertices } => vertices.len(),
            CutWitness::Cut { edges } => edges.len(),
        }
    }

    /// Whether removing the witness from `g` leaves more components than
    /// `g` has (or `g` is already disconnected and the witness is empty).
    pub fn disconnects<W: EdgeWeight>(&self, g: &EdgeSet<W>) -> bool {
        let before = component_count(&components(g));
        match self {
            CutWitness::Separator { vertices } if vertices.is_empty() => before > 1,
            CutWitness::Cut { edges } if edges.is_empty() => before > 1,
            CutWitness::Separator { vertices } => {
                let mut removed = vec![false; g.n];
                for &x in vertices {
                    removed[x as usize] = true;
                }
                count_labels(&components_excluding(g, &removed)) > before
            }
            CutWitness::Cut { edges } => {
                let gone: Vec<u64> = edges.iter().map(|e| e.stream_index).collect();
                component_count(&components(&g.without_edges(&gone))) > before
            }
        }
    }
}

/// Outcome of a global k-connectivity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityCheck {
    pub k: u32,
    pub connected: bool,
    /// `min(connectivity, k)`.
    pub value: u32,
    /// A minimum separator or cut when `connected` is false and one exists
    /// (complete graphs on at most `k` vertices have none).
    pub witness: Option<CutWitness>,
}

fn count_labels(labels: &[VertexId]) -> usize {
    labels
        .iter()
        .enumerate()
        .filter(|&(x, &l)| l != VertexId::MAX && l as usize == x)
        .count()
}

fn check_pair<W: EdgeWeight>(g: &EdgeSet<W>, x: VertexId, y: VertexId) -> Result<(), GraphError> {
    for z in [x, y] {
        if z as usize >= g.n {
            return Err(GraphError::VertexOutOfRange { vertex: z, n: g.n });
        }
    }
    if x == y {
        return Err(GraphError::SamePair { vertex: x });
    }
    Ok(())
}

fn vertex_in(v: usize) -> usize {
    2 * v
}

fn vertex_out(v: usize) -> usize {
    2 * v + 1
}

enum Source<'a> {
    Vertex(VertexId),
    /// An extra node joined to all of these vertices.
    Super(&'a [VertexId]),
}

/// Max number of internally vertex-disjoint paths from `source` to `sink`
/// avoiding edges between `source` and `sink`, plus the vertices of a
/// minimum separator when the flow stayed below `limit`.
fn vertex_flow<W: EdgeWeight>(g: &EdgeSet<W>, source: Source, sink: VertexId, limit: u64) -> (u64, Vec<VertexId>) {
    let n = g.n;
    let mut net = FlowNetwork::new(2 * n + 1);
    let direct = |a: VertexId, b: VertexId| match source {
        Source::Vertex(x) => (a == x && b == sink) || (a == sink && b == x),
        Source::Super(_) => false,
    };
    for v in 0..n {
        let terminal = v == sink as usize || matches!(source, Source::Vertex(x) if x as usize == v);
        net.add_arc(vertex_in(v), vertex_out(v), if terminal { INFINITE } else { 1 });
    }
    for e in &g.edges {
        if direct(e.u, e.v) {
            continue;
        }
        net.add_arc(vertex_out(e.u as usize), vertex_in(e.v as usize), INFINITE);
        net.add_arc(vertex_out(e.v as usize), vertex_in(e.u as usize), INFINITE);
    }
    let s = match source {
        Source::Vertex(x) => vertex_out(x as usize),
        Source::Super(members) => {
            let hub = 2 * n;
            for &x in members {
                net.add_arc(hub, vertex_in(x as usize), INFINITE);
            }
            hub
        }
    };
    let flow = net.max_flow(s, vertex_in(sink as usize), limit);
    let mut separator = Vec::new();
    if flow < limit {
        let reach = net.residual_reachable(s);
        for v in 0..n {
            if v != sink as usize && reach[vertex_in(v)] && !reach[vertex_out(v)] {
                separator.push(v as VertexId);
            }
        }
    }
    (flow, separator)
}

/// Number of internally vertex-disjoint paths between `x` and `y`; each of
/// `p` parallel `x`–`y` edges counts as one path.
pub fn local_kappa<W: EdgeWeight>(g: &EdgeSet<W>, x: VertexId, y: VertexId) -> Result<u64, GraphError> {
    check_pair(g, x, y)?;
    let direct = g.multiplicity(x, y) as u64;
    let (flow, _) = vertex_flow(g, Source::Vertex(x), y, u64::MAX);
    Ok(direct + flow)
}

fn edge_flow<W: EdgeWeight>(g: &EdgeSet<W>, s: VertexId, t: VertexId, limit: u64) -> (u64, Option<Vec<bool>>) {
    let mut net = FlowNetwork::new(g.n);
    for e in &g.edges {
        net.add_pair(e.u as usize, e.v as usize, 1, 1);
    }
    let flow = net.max_flow(s as usize, t as usize, limit);
    let side = (flow < limit).then(|| net.residual_reachable(s as usize));
    (flow, side)
}

/// Number of edge-disjoint paths between `x` and `y`.
pub fn local_lambda<W: EdgeWeight>(g: &EdgeSet<W>, x: VertexId, y: VertexId) -> Result<u64, GraphError> {
    check_pair(g, x, y)?;
    Ok(edge_flow(g, x, y, u64::MAX).0)
}

enum Probe {
    Pass,
    Fail(Option<Vec<VertexId>>),
}

/// Even's test for `κ(G) ≥ k` with vertex order `0, 1, ..., n-1`: every
/// pair among the first `k` vertices needs `k` disjoint paths, and each
/// later vertex `j` needs `k` disjoint paths to the set `{0, ..., j-1}`.
fn even_probe<W: EdgeWeight>(g: &EdgeSet<W>, k: u32) -> Probe {
    let n = g.n;
    let k64 = k as u64;
    if n <= k as usize {
        return Probe::Fail(None);
    }
    for i in 0..k {
        for j in i + 1..k {
            // a bundle of parallel edges is one adjacency: deleting vertices
            // cannot cut it, but it only ever counts as one path
            let direct = (g.multiplicity(i, j) > 0) as u64;
            if direct >= k64 {
                continue;
            }
            let (flow, separator) = vertex_flow(g, Source::Vertex(i), j, k64 - direct);
            if direct + flow < k64 {
                let witness = if direct == 0 {
                    separator
                } else {
                    adjacent_pair_separator(g, i, j, separator)
                };
                return Probe::Fail(Some(witness));
            }
        }
    }
    let order: Vec<VertexId> = (0..n as VertexId).collect();
    for j in k as usize..n {
        let (flow, separator) = vertex_flow(g, Source::Super(&order[..j]), j as VertexId, k64);
        if flow < k64 {
            return Probe::Fail(Some(separator));
        }
    }
    Probe::Pass
}

/// `separator` splits `x` from `y` once their direct edges are gone; adding
/// whichever endpoint still has company on its side separates `g` itself.
fn adjacent_pair_separator<W: EdgeWeight>(
    g: &EdgeSet<W>,
    x: VertexId,
    y: VertexId,
    mut separator: Vec<VertexId>,
) -> Vec<VertexId> {
    let key = if x < y { (x, y) } else { (y, x) };
    let h = EdgeSet {
        n: g.n,
        edges: g.edges.iter().filter(|e| e.endpoints() != key).copied().collect(),
    };
    let mut removed = vec![false; g.n];
    for &s in &separator {
        removed[s as usize] = true;
    }
    let labels = components_excluding(&h, &removed);
    let x_has_company = (0..g.n).any(|v| v != x as usize && labels[v] == labels[x as usize]);
    separator.push(if x_has_company { x } else { y });
    separator.sort_unstable();
    separator
}

/// `min(κ(G), cap)` with a minimum separator when below `cap`. A complete
/// graph on `n` vertices has connectivity `n - 1`; a single vertex has 0.
pub fn vertex_connectivity<W: EdgeWeight>(g: &EdgeSet<W>, cap: u32) -> (u32, Option<Vec<VertexId>>) {
    // probing k = 1, 2, ... makes the first failing witness minimum
    for k in 1..=cap {
        if let Probe::Fail(witness) = even_probe(g, k) {
            return (k - 1, witness);
        }
    }
    (cap, None)
}

/// `min(λ(G), cap)` with a minimum cut when below `cap`. A single vertex
/// counts as arbitrarily edge connected.
pub fn edge_connectivity<W: EdgeWeight>(g: &EdgeSet<W>, cap: u32) -> (u32, Option<Vec<CutEdge>>) {
    let mut best = cap as u64;
    let mut witness = None;
    for v in 1..g.n as VertexId {
        let (flow, side) = edge_flow(g, 0, v, best);
        if flow < best {
            let side = side.expect("cut side computed below limit");
            let cut = g
                .edges
                .iter()
                .filter(|e| side[e.u as usize] != side[e.v as usize])
                .map(|e| CutEdge {
                    u: e.u,
                    v: e.v,
                    stream_index: e.stream_index,
                })
                .collect();
            best = flow;
            witness = Some(cut);
            if best == 0 {
                break;
            }
        }
    }
    (best as u32, witness)
}

/// Whether removing any `k - 1` vertices leaves `g` connected, with at
/// least `k + 1` vertices required.
pub fn is_k_vertex_connected<W: EdgeWeight>(g: &EdgeSet<W>, k: u32) -> Result<ConnectivityCheck, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroK);
    }
    let (value, separator) = vertex_connectivity(g, k);
    Ok(ConnectivityCheck {
        k,
        connected: value >= k,
        value,
        witness: separator.map(|vertices| CutWitness::Separator { vertices }),
    })
}

/// Whether removing any `k - 1` edges leaves `g` connected.
pub fn is_k_edge_connected<W: EdgeWeight>(g: &EdgeSet<W>, k: u32) -> Result<ConnectivityCheck, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroK);
    }
    let (value, cut) = edge_connectivity(g, k);
    Ok(ConnectivityCheck {
        k,
        connected: value >= k,
        value,
        witness: cut.map(|edges| CutWitness::Cut { edges }),
    })
}

/// The pairwise definition, checked over every pair: `n > k` and at least
/// `k` internally disjoint paths between all `x ≠ y`, parallel edges
/// counting as a single path. Quadratically many flows; for tests.
pub fn is_k_vertex_connected_all_pairs<W: EdgeWeight>(g: &EdgeSet<W>, k: u32) -> bool {
    if g.n <= k as usize {
        return false;
    }
    (0..g.n as VertexId).all(|x| {
        (x + 1..g.n as VertexId).all(|y| {
            let direct = (g.multiplicity(x, y) > 0) as u64;
            direct + vertex_flow(g, Source::Vertex(x), y, u64::MAX).0 >= k as u64
        })
    })
}

const ENUMERATION_VERTEX_LIMIT: usize = 12;
const ENUMERATION_SUBSET_LIMIT: usize = 2_000_000;

/// Every vertex set of size `1..=max_size` whose removal leaves more
/// components than `g` has. Exponential; `n ≤ 12` only.
pub fn enumerate_separators<W: EdgeWeight>(g: &EdgeSet<W>, max_size: usize) -> Result<Vec<CutWitness>, GraphError> {
    if g.n > ENUMERATION_VERTEX_LIMIT {
        return Err(GraphError::TooLarge {
            limit: ENUMERATION_VERTEX_LIMIT,
            actual: g.n,
        });
    }
    let before = component_count(&components(g));
    let mut found = Vec::new();
    for size in 1..=max_size.min(g.n) {
        for_each_combination(g.n, size, |subset| {
            let mut removed = vec![false; g.n];
            for &x in subset {
                removed[x] = true;
            }
            if count_labels(&components_excluding(g, &removed)) > before {
                found.push(CutWitness::Separator {
                    vertices: subset.iter().map(|&x| x as VertexId).collect(),
                });
            }
        });
    }
    Ok(found)
}

/// Every edge set of size `1..=max_size` whose removal leaves more
/// components than `g` has.
pub fn enumerate_cuts<W: EdgeWeight>(g: &EdgeSet<W>, max_size: usize) -> Result<Vec<CutWitness>, GraphError> {
    let m = g.len();
    let total: usize = (1..=max_size.min(m)).map(|r| binomial(m, r)).sum();
    if total > ENUMERATION_SUBSET_LIMIT {
        return Err(GraphError::TooLarge {
            limit: ENUMERATION_SUBSET_LIMIT,
            actual: total,
        });
    }
    let before = component_count(&components(g));
    let mut found = Vec::new();
    for size in 1..=max_size.min(m) {
        for_each_combination(m, size, |subset| {
            let mut uf = UnionFind::new(g.n);
            let mut skip = subset.iter().peekable();
            for (pos, e) in g.edges.iter().enumerate() {
                if skip.peek() == Some(&&pos) {
                    skip.next();
                    continue;
                }
                uf.union(e.u as usize, e.v as usize);
            }
            if uf.count() > before {
                found.push(CutWitness::Cut {
                    edges: subset
                        .iter()
                        .map(|&pos| {
                            let e = &g.edges[pos];
                            CutEdge {
                                u: e.u,
                                v: e.v,
                                stream_index: e.stream_index,
                            }
                        })
                        .collect(),
                });
            }
        });
    }
    Ok(found)
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Calls `f` with every increasing `r`-subset of `0..n`, in lexicographic
/// order.
fn for_each_combination(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sort-based minimum spanning forest over the whole graph under the
/// `(weight, stream_index)` order, kept in stream order.
pub fn offline_msf<W: EdgeWeight>(g: &EdgeSet<W>) -> EdgeSet<W> {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&i| g.edges[i].key());
    let mut uf = UnionFind::new(g.n);
    let mut kept: Vec<usize> = order
        .into_iter()
        .filter(|&i| uf.union(g.edges[i].u as usize, g.edges[i].v as usize))
        .collect();
    kept.sort_unstable();
    EdgeSet {
        n: g.n,
        edges: kept.into_iter().map(|i| g.edges[i]).collect(),
    }
}

/// Breadth-first two-coloring of the whole graph.
pub fn offline_is_bipartite<W: EdgeWeight>(g: &EdgeSet<W>) -> bool {
    let adj = crate::graph::Adjacency::build(g);
    let mut color: Vec<Option<bool>> = vec![None; g.n];
    for root in 0..g.n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root as VertexId]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x as usize].unwrap();
            for &(y, _) in adj.neighbors(x) {
                match color[y as usize] {
                    None => {
                        color[y as usize] = Some(!cx);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}
