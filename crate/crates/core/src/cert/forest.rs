use crate::graph::{Edge, EdgeSet};
use crate::union_find::UnionFind;
use crate::weight::EdgeWeight;

use super::{recompute, Certificate, CertificateKind};

/// Spanning forest that keeps each edge joining two trees, scanning in
/// order. Over a stream-ordered input this is the first-arrival forest,
/// which is the same no matter how the stream was cut into groups.
#[derive(Debug)]
pub(super) struct ForestScan {
    n: usize,
    uf: UnionFind,
    next: usize,
    m: usize,
}

impl ForestScan {
    pub(super) fn new(n: usize, m: usize) -> Self {
        Self {
            n,
            uf: UnionFind::with_capacity(n),
            next: 0,
            m,
        }
    }

    pub(super) fn work_bound(n: usize, m: usize) -> u64 {
        // one unit per union-find slot, scan + two finds per edge
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
                keep[self.next] = self.uf.union(e.u as usize, e.v as usize);
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

/// Spanning forest certificate for connectivity: acyclic, same components
/// as `merged`, at most `n - 1` edges.
pub fn build_forest_certificate<W: EdgeWeight>(merged: &EdgeSet<W>) -> Certificate<W> {
    recompute(CertificateKind::SpanningForest, merged)
}
