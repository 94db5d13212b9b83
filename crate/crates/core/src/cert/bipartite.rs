use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{Adjacency, Edge, EdgeSet, VertexId};
use crate::weight::EdgeWeight;

use super::{Certificate, CertificateKind};

/// Union-find that also tracks each vertex's color parity relative to its
/// root, so an edge inside one tree can be classified as closing an even or
/// an odd cycle.
#[derive(Debug)]
struct ParityUnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    /// parity of the edge to `parent`
    parity: Vec<u8>,
}

impl ParityUnionFind {
    fn with_capacity(n: usize) -> Self {
        Self {
            parent: Vec::with_capacity(n),
            rank: Vec::with_capacity(n),
            parity: Vec::with_capacity(n),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn push_singleton(&mut self) {
        self.parent.push(self.parent.len() as u32);
        self.rank.push(0);
        self.parity.push(0);
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let mut root = x;
        let mut to_root = 0u8;
        while self.parent[root] as usize != root {
            to_root ^= self.parity[root];
            root = self.parent[root] as usize;
        }
        let (mut node, mut p) = (x, to_root);
        while node != root {
            let next = self.parent[node] as usize;
            let next_p = p ^ self.parity[node];
            self.parent[node] = root as u32;
            self.parity[node] = p;
            node = next;
            p = next_p;
        }
        (root, to_root)
    }

    /// Links the trees of `a` and `b` with `a` and `b` colored differently.
    /// Returns `Link::Merged`, or, if they already share a tree, whether the
    /// edge would close an odd cycle.
    fn link(&mut self, a: usize, b: usize) -> Link {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa == pb { Link::OddCycle } else { Link::EvenCycle };
        }
        let (big, small) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big as u32;
        self.parity[small] = pa ^ pb ^ 1;
        if self.rank[big] == self.rank[small] {
            self.rank[big] += 1;
        }
        Link::Merged
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Link {
    Merged,
    EvenCycle,
    OddCycle,
}

/// Scan-order construction of the forest plus the first edge that closes an
/// odd cycle with it.
#[derive(Debug)]
pub(super) struct ParityScan {
    n: usize,
    uf: ParityUnionFind,
    next: usize,
    m: usize,
    odd: Option<usize>,
}

impl ParityScan {
    pub(super) fn new(n: usize, m: usize) -> Self {
        Self {
            n,
            uf: ParityUnionFind::with_capacity(n),
            next: 0,
            m,
            odd: None,
        }
    }

    pub(super) fn work_bound(n: usize, m: usize) -> u64 {
        n as u64 + 3 * m as u64
    }

    pub(super) fn advance<W: EdgeWeight>(&mut self, edges: &[Edge<W>], keep: &mut [bool], budget: u64) -> u64 {
        let mut spent = 0;
        while spent < budget {
            if self.uf.len() < self.n {
                self.uf.push_singleton();
                spent += 1;
            } else if self.next < self.m {
                let e = &edges[self.next];
                keep[self.next] = match self.uf.link(e.u as usize, e.v as usize) {
                    Link::Merged => true,
                    Link::OddCycle if self.odd.is_none() => {
                        self.odd = Some(self.next);
                        true
                    }
                    _ => false,
                };
                self.next += 1;
                spent += 3;
            } else {
                break;
            }
        }
        spent
    }

    pub(super) fn done(&self) -> bool {
        self.uf.len() == self.n && self.next == self.m
    }
}

/// A spanning forest plus, if the graph has an odd cycle, one edge closing
/// an odd cycle with the forest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCertificate<W> {
    pub forest: EdgeSet<W>,
    pub odd_edge: Option<Edge<W>>,
}

impl<W: EdgeWeight> BipartiteCertificate<W> {
    pub fn len(&self) -> usize {
        self.forest.len() + self.odd_edge.is_some() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Forest and odd edge as one stream-ordered certificate.
    pub fn to_certificate(&self) -> Certificate<W> {
        let mut graph = self.forest.clone();
        if let Some(e) = self.odd_edge {
            graph.edges.push(e);
            graph.edges.sort_by_key(|e| e.stream_index);
        }
        Certificate {
            kind: CertificateKind::Bipartite,
            bound: CertificateKind::Bipartite.bound(graph.n),
            graph,
        }
    }
}

/// Builds the bipartiteness certificate of `merged`. When several edges close
/// odd cycles, the first one in scan order is kept.
pub fn build_bipartite_certificate<W: EdgeWeight>(merged: &EdgeSet<W>) -> BipartiteCertificate<W> {
    let m = merged.len();
    let mut scan = ParityScan::new(merged.n, m);
    let mut keep = vec![false; m];
    while !scan.done() {
        scan.advance(&merged.edges, &mut keep, u64::MAX);
    }
    let mut forest = EdgeSet::new(merged.n);
    let mut odd_edge = None;
    for (pos, e) in merged.edges.iter().enumerate() {
        if Some(pos) == scan.odd {
            odd_edge = Some(*e);
        } else if keep[pos] {
            forest.edges.push(*e);
        }
    }
    BipartiteCertificate { forest, odd_edge }
}

/// Either a two-coloring of the vertices or an odd cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BipartitionVerdict {
    Bipartite {
        left: Vec<VertexId>,
        right: Vec<VertexId>,
    },
    /// Closed walk `v0, v1, ..., v0` of odd length.
    OddCycle { cycle: Vec<VertexId> },
}

impl BipartitionVerdict {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, BipartitionVerdict::Bipartite { .. })
    }

    /// Checks the verdict against `g`: a bipartition must cover every vertex
    /// with no edge of `g` inside a part; a cycle must be an odd closed walk
    /// whose every step is an edge of `g`.
    pub fn is_valid_for<W: EdgeWeight>(&self, g: &EdgeSet<W>) -> bool {
        match self {
            BipartitionVerdict::Bipartite { left, right } => {
                let mut side = vec![None; g.n];
                for (part, members) in [(0u8, left), (1u8, right)] {
                    for &x in members {
                        match side.get_mut(x as usize) {
                            Some(slot @ None) => *slot = Some(part),
                            _ => return false,
                        }
                    }
                }
                side.iter().all(Option::is_some)
                    && g.edges.iter().all(|e| side[e.u as usize] != side[e.v as usize])
            }
            BipartitionVerdict::OddCycle { cycle } => {
                let steps = cycle.len().saturating_sub(1);
                steps >= 3
                    && steps % 2 == 1
                    && cycle.first() == cycle.last()
                    && cycle.windows(2).all(|w| g.multiplicity(w[0], w[1]) > 0)
            }
        }
    }
}

/// Two-colors the certificate's forest, or turns its odd edge into an
/// explicit odd cycle (forest path between the endpoints plus the edge).
/// Each tree's smallest vertex, and so every isolated vertex, goes left.
pub fn bipartition_verdict<W: EdgeWeight>(cert: &BipartiteCertificate<W>) -> BipartitionVerdict {
    let n = cert.forest.n;
    let adj = Adjacency::build(&cert.forest);
    match cert.odd_edge {
        None => {
            let mut color: Vec<Option<u8>> = vec![None; n];
            let mut queue = VecDeque::new();
            for root in 0..n as VertexId {
                if color[root as usize].is_some() {
                    continue;
                }
                color[root as usize] = Some(0);
                queue.push_back(root);
                while let Some(x) = queue.pop_front() {
                    let cx = color[x as usize].unwrap();
                    for &(y, _) in adj.neighbors(x) {
                        if color[y as usize].is_none() {
                            color[y as usize] = Some(cx ^ 1);
                            queue.push_back(y);
                        }
                    }
                }
            }
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (x, c) in color.into_iter().enumerate() {
                if c == Some(0) {
                    left.push(x as VertexId);
                } else {
                    right.push(x as VertexId);
                }
            }
            BipartitionVerdict::Bipartite { left, right }
        }
        Some(odd) => {
            let mut parent: Vec<Option<VertexId>> = vec![None; n];
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([odd.u]);
            seen[odd.u as usize] = true;
            while let Some(x) = queue.pop_front() {
                if x == odd.v {
                    break;
                }
                for &(y, _) in adj.neighbors(x) {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        parent[y as usize] = Some(x);
                        queue.push_back(y);
                    }
                }
            }
            let mut path = vec![odd.v];
            let mut x = odd.v;
            while let Some(p) = parent[x as usize] {
                path.push(p);
                x = p;
            }
            debug_assert_eq!(x, odd.u, "odd edge endpoints share a tree");
            path.reverse();
            path.push(odd.u);
            BipartitionVerdict::OddCycle { cycle: path }
        }
    }
}
