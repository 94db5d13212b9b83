use crate::error::GraphError;
use crate::graph::Edge;
use crate::weight::EdgeWeight;

/// Disjoint sets over `0..n` with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            sets: n,
        }
    }

    /// No vertices yet; grow with [`UnionFind::push_singleton`] one slot at a
    /// time so that initialization can be metered.
    pub(crate) fn with_capacity(n: usize) -> Self {
        Self {
            parent: Vec::with_capacity(n),
            rank: Vec::with_capacity(n),
            sets: 0,
        }
    }

    pub(crate) fn push_singleton(&mut self) {
        self.parent.push(self.parent.len() as u32);
        self.rank.push(0);
        self.sets += 1;
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of disjoint sets.
    pub fn count(&self) -> usize {
        self.sets
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut node = x;
        while self.parent[node] as usize != root {
            let next = self.parent[node] as usize;
            self.parent[node] = root as u32;
            node = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.rank[ra] < self.rank[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        if self.rank[ra] == self.rank[rb] {
            self.rank[ra] += 1;
        }
        self.sets -= 1;
        true
    }

    /// Inserts an edge; `Ok(true)` iff it joined two different sets.
    pub fn insert<W: EdgeWeight>(&mut self, e: &Edge<W>) -> Result<bool, GraphError> {
        for x in [e.u, e.v] {
            if x as usize >= self.len() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.len(),
                });
            }
        }
        Ok(self.union(e.u as usize, e.v as usize))
    }
}
