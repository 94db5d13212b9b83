//! Vertices, edges and the small set of graph primitives every certificate
//! builder leans on.
//!
//! Graphs are undirected multigraphs without loops over a fixed vertex set
//! `0..n`. Each edge remembers its position in the stream, which doubles as
//! its identity (parallel copies stay distinguishable) and as the tie-breaker
//! for equal weights.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::union_find::UnionFind;
use crate::weight::EdgeWeight;

/// Dense zero-based vertex identifier.
pub type VertexId = u32;

/// An undirected edge with a weight and its arrival position in the stream.
///
/// Unweighted streams carry `W::zero()` as the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge<W> {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: W,
    pub stream_index: u64,
}

impl<W: EdgeWeight> Edge<W> {
    pub fn new(u: VertexId, v: VertexId, weight: W, stream_index: u64) -> Result<Self, GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge { vertex: u });
        }
        if weight < W::zero() {
            return Err(GraphError::NegativeWeight);
        }
        Ok(Self {
            u,
            v,
            weight,
            stream_index,
        })
    }

    pub fn unweighted(u: VertexId, v: VertexId, stream_index: u64) -> Result<Self, GraphError> {
        Self::new(u, v, W::zero(), stream_index)
    }

    /// Endpoints as `(min, max)`, so `(u, v)` and `(v, u)` compare equal.
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    /// The endpoint opposite `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Lexicographic `(weight, stream_index)` key; distinct across a stream.
    pub fn key(&self) -> (W, u64) {
        (self.weight, self.stream_index)
    }
}

/// A multiset of edges over vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSet<W> {
    pub n: usize,
    pub edges: Vec<Edge<W>>,
}

impl<W: EdgeWeight> EdgeSet<W> {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    /// Builds a set from edges already validated elsewhere; endpoints are
    /// still range-checked.
    pub fn from_edges(n: usize, edges: Vec<Edge<W>>) -> Result<Self, GraphError> {
        let set = Self { n, edges };
        set.validate()?;
        Ok(set)
    }

    /// Unweighted edges, stream indices assigned in slice order.
    pub fn from_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut set = Self::new(n);
        for &(u, v) in pairs {
            set.push(u, v, W::zero())?;
        }
        Ok(set)
    }

    pub fn from_weighted(n: usize, triples: &[(VertexId, VertexId, W)]) -> Result<Self, GraphError> {
        let mut set = Self::new(n);
        for &(u, v, w) in triples {
            set.push(u, v, w)?;
        }
        Ok(set)
    }

    /// Appends an edge whose stream index is the current length.
    pub fn push(&mut self, u: VertexId, v: VertexId, weight: W) -> Result<(), GraphError> {
        let edge = Edge::new(u, v, weight, self.edges.len() as u64)?;
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.edges.push(edge);
        Ok(())
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        for e in &self.edges {
            if e.u == e.v {
                return Err(GraphError::LoopEdge { vertex: e.u });
            }
            if e.weight < W::zero() {
                return Err(GraphError::NegativeWeight);
            }
            self.check_vertex(e.u)?;
            self.check_vertex(e.v)?;
        }
        Ok(())
    }

    fn check_vertex(&self, x: VertexId) -> Result<(), GraphError> {
        if (x as usize) < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: x, n: self.n })
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self ∪ other` as a multiset; `other`'s edges keep their indices.
    pub fn union(&self, other: &EdgeSet<W>) -> EdgeSet<W> {
        debug_assert_eq!(self.n, other.n);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        EdgeSet { n: self.n, edges }
    }

    /// The graph left after deleting every edge incident to a removed vertex.
    /// Removed vertices stay in the vertex set as isolated points; use
    /// [`components_excluding`] to ignore them.
    pub fn without_vertices(&self, removed: &[bool]) -> EdgeSet<W> {
        let edges = self
            .edges
            .iter()
            .filter(|e| !removed[e.u as usize] && !removed[e.v as usize])
            .copied()
            .collect();
        EdgeSet { n: self.n, edges }
    }

    /// Drops every edge whose stream index is in `removed` (sorted or not).
    pub fn without_edges(&self, removed: &[u64]) -> EdgeSet<W> {
        let edges = self
            .edges
            .iter()
            .filter(|e| !removed.contains(&e.stream_index))
            .copied()
            .collect();
        EdgeSet { n: self.n, edges }
    }

    /// Number of edges with endpoints `{x, y}`.
    pub fn multiplicity(&self, x: VertexId, y: VertexId) -> usize {
        let key = if x <= y { (x, y) } else { (y, x) };
        self.edges.iter().filter(|e| e.endpoints() == key).count()
    }
}

/// Compressed adjacency lists: for each vertex, `(neighbor, edge position)`
/// pairs in edge order.
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<usize>,
    entries: Vec<(VertexId, usize)>,
}

impl Adjacency {
    pub fn build<W: EdgeWeight>(g: &EdgeSet<W>) -> Self {
        let mut offsets = vec![0usize; g.n + 1];
        for e in &g.edges {
            offsets[e.u as usize + 1] += 1;
            offsets[e.v as usize + 1] += 1;
        }
        for i in 0..g.n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut entries = vec![(0, 0); 2 * g.edges.len()];
        for (pos, e) in g.edges.iter().enumerate() {
            entries[cursor[e.u as usize]] = (e.v, pos);
            cursor[e.u as usize] += 1;
            entries[cursor[e.v as usize]] = (e.u, pos);
            cursor[e.v as usize] += 1;
        }
        Self { offsets, entries }
    }

    pub fn neighbors(&self, x: VertexId) -> &[(VertexId, usize)] {
        &self.entries[self.offsets[x as usize]..self.offsets[x as usize + 1]]
    }

    pub fn degree(&self, x: VertexId) -> usize {
        self.offsets[x as usize + 1] - self.offsets[x as usize]
    }
}

/// Spanning forest found by depth-first search from each unvisited vertex
/// in increasing id order. Neighbors are explored in edge order, so the
/// output is deterministic.
pub fn dfs_forest<W: EdgeWeight>(g: &EdgeSet<W>) -> EdgeSet<W> {
    let adj = Adjacency::build(g);
    let mut visited = vec![false; g.n];
    let mut forest = Vec::with_capacity(g.n.saturating_sub(1));
    // (vertex, next adjacency slot to look at)
    let mut stack: Vec<(VertexId, usize)> = Vec::new();
    for root in 0..g.n as VertexId {
        if visited[root as usize] {
            continue;
        }
        visited[root as usize] = true;
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let (x, slot) = *top;
            let nbrs = adj.neighbors(x);
            if slot == nbrs.len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let (y, pos) = nbrs[slot];
            if !visited[y as usize] {
                visited[y as usize] = true;
                forest.push(g.edges[pos]);
                stack.push((y, 0));
            }
        }
    }
    forest.sort_by_key(|e| e.stream_index);
    EdgeSet {
        n: g.n,
        edges: forest,
    }
}

/// Component labels: each vertex maps to the smallest vertex id in its
/// connected component.
pub fn components<W: EdgeWeight>(g: &EdgeSet<W>) -> Vec<VertexId> {
    let mut uf = UnionFind::new(g.n);
    for e in &g.edges {
        uf.union(e.u as usize, e.v as usize);
    }
    canonical_labels(&mut uf)
}

pub(crate) fn canonical_labels(uf: &mut UnionFind) -> Vec<VertexId> {
    let n = uf.len();
    let mut root_label = vec![VertexId::MAX; n];
    let mut labels = Vec::with_capacity(n);
    for x in 0..n {
        let r = uf.find(x);
        if root_label[r] == VertexId::MAX {
            root_label[r] = x as VertexId;
        }
        labels.push(root_label[r]);
    }
    labels
}

/// Number of distinct labels.
pub fn component_count(labels: &[VertexId]) -> usize {
    labels
        .iter()
        .enumerate()
        .filter(|&(x, &l)| l as usize == x)
        .count()
}

/// Component labels of the graph restricted to vertices not in `removed`.
/// Removed vertices get `VertexId::MAX`.
pub fn components_excluding<W: EdgeWeight>(g: &EdgeSet<W>, removed: &[bool]) -> Vec<VertexId> {
    let labels = components(&g.without_vertices(removed));
    labels
        .into_iter()
        .enumerate()
        .map(|(x, l)| if removed[x] { VertexId::MAX } else { l })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type G = EdgeSet<u64>;

    fn pairs(g: &G) -> Vec<(VertexId, VertexId)> {
        g.edges.iter().map(|e| e.endpoints()).collect()
    }

    #[test]
    fn edge_rejects_loops_and_negative_weights() {
        assert_eq!(
            Edge::<u64>::unweighted(3, 3, 0),
            Err(GraphError::LoopEdge { vertex: 3 })
        );
        assert_eq!(Edge::new(0, 1, -1i64, 0), Err(GraphError::NegativeWeight));
        let e = Edge::new(4, 2, 7u64, 9).unwrap();
        assert_eq!(e.endpoints(), (2, 4));
        assert_eq!(e.other(4), 2);
        assert_eq!(e.key(), (7, 9));
    }

    #[test]
    fn edge_set_range_checks() {
        assert_eq!(
            G::from_pairs(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn dfs_forest_of_empty_graph() {
        let g = G::new(4);
        let f = dfs_forest(&g);
        assert!(f.is_empty());
        assert_eq!(component_count(&components(&f)), 4);
    }

    #[test]
    fn dfs_forest_keeps_acyclic_input() {
        let g = G::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(dfs_forest(&g), g);
    }

    #[test]
    fn dfs_forest_of_triangle() {
        let g = G::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(pairs(&dfs_forest(&g)), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn dfs_forest_drops_parallel_copies() {
        let g = G::from_pairs(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        let f = dfs_forest(&g);
        assert_eq!(f.len(), 1);
        assert_eq!(f.edges[0].stream_index, 0);
    }

    #[test]
    fn labels_are_canonical_minimum() {
        assert_eq!(components(&G::new(3)), vec![0, 1, 2]);
        let g = G::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(components(&g), vec![0, 0, 2, 2]);
        let g = G::from_pairs(5, &[(4, 2), (2, 1)]).unwrap();
        assert_eq!(components(&g), vec![0, 1, 1, 3, 1]);
    }

    #[test]
    fn components_excluding_marks_removed() {
        let g = G::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let labels = components_excluding(&g, &[false, true, false]);
        assert_eq!(labels, vec![0, VertexId::MAX, 2]);
    }

    #[test]
    fn adjacency_lists_both_directions() {
        let g = G::from_pairs(3, &[(0, 1), (0, 2), (0, 1)]).unwrap();
        let adj = Adjacency::build(&g);
        assert_eq!(adj.neighbors(0), &[(1, 0), (2, 1), (1, 2)]);
        assert_eq!(adj.degree(1), 2);
        assert_eq!(adj.degree(2), 1);
    }

    fn arb_graph() -> impl Strategy<Value = G> {
        (1usize..=6).prop_flat_map(|n| {
            let n32 = n as VertexId;
            prop::collection::vec((0..n32, 0..n32), 0..16).prop_map(move |raw| {
                let pairs: Vec<_> = raw.into_iter().filter(|(u, v)| u != v).collect();
                G::from_pairs(n, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn forest_preserves_components(g in arb_graph()) {
            let f = dfs_forest(&g);
            let labels = components(&g);
            prop_assert_eq!(components(&f), labels.clone());
            prop_assert_eq!(f.len(), g.n - component_count(&labels));
            let mut uf = UnionFind::new(g.n);
            for e in &f.edges {
                prop_assert!(uf.insert(e).unwrap());
            }
        }
    }
}
