use crate::error::GraphError;
use crate::graph::{Edge, EdgeSet};
use crate::union_find::UnionFind;
use crate::weight::{checked_sum, EdgeWeight};

use super::{recompute, Certificate, CertificateKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    InitOrder,
    Sort,
    InitUnionFind,
    Sweep,
    Done,
}

/// Kruskal over a bottom-up merge sort of edge positions by
/// `(weight, stream_index)`. Every merge output slot is one work unit, so the
/// sort costs `m·⌈log₂ m⌉` units and can be paused after any element.
#[derive(Debug)]
pub(super) struct SortSweep {
    n: usize,
    m: usize,
    step: Step,
    src: Vec<u32>,
    dst: Vec<u32>,
    width: usize,
    // current merge: src[lo..mid] with src[mid..hi], i and j read, out writes
    lo: usize,
    i: usize,
    j: usize,
    out: usize,
    uf: UnionFind,
    next: usize,
}

pub(crate) fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

impl SortSweep {
    pub(super) fn new(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            step: Step::InitOrder,
            src: Vec::with_capacity(m),
            dst: Vec::with_capacity(m),
            width: 1,
            lo: 0,
            i: 0,
            j: 0,
            out: 0,
            uf: UnionFind::with_capacity(n),
            next: 0,
        }
    }

    pub(super) fn work_bound(n: usize, m: usize) -> u64 {
        let m64 = m as u64;
        // order init, merge passes, union-find slots, sweep
        m64 + m64 * ceil_log2(m) as u64 + n as u64 + 3 * m64
    }

    fn start_merge(&mut self) {
        self.i = self.lo;
        self.j = (self.lo + self.width).min(self.m);
    }

    pub(super) fn advance<W: EdgeWeight>(&mut self, edges: &[Edge<W>], keep: &mut [bool], budget: u64) -> u64 {
        let m = self.m;
        let mut spent = 0;
        // free steps are always taken; see the adjacency scan
        loop {
            match self.step {
                Step::InitOrder => {
                    if self.src.len() < m {
                        if spent >= budget {
                            break;
                        }
                        self.src.push(self.src.len() as u32);
                        spent += 1;
                    } else {
                        self.width = 1;
                        self.lo = 0;
                        self.out = 0;
                        self.start_merge();
                        self.step = if m > 1 { Step::Sort } else { Step::InitUnionFind };
                    }
                }
                Step::Sort => {
                    let mid = (self.lo + self.width).min(m);
                    let hi = (self.lo + 2 * self.width).min(m);
                    if self.out < hi {
                        if spent >= budget {
                            break;
                        }
                        let take_left = self.j >= hi
                            || (self.i < mid
                                && edges[self.src[self.i] as usize].key() <= edges[self.src[self.j] as usize].key());
                        let pick = if take_left {
                            self.i += 1;
                            self.src[self.i - 1]
                        } else {
                            self.j += 1;
                            self.src[self.j - 1]
                        };
                        if self.dst.len() == self.out {
                            self.dst.push(pick);
                        } else {
                            self.dst[self.out] = pick;
                        }
                        self.out += 1;
                        spent += 1;
                    } else if hi < m {
                        self.lo = hi;
                        self.start_merge();
                    } else {
                        std::mem::swap(&mut self.src, &mut self.dst);
                        self.width *= 2;
                        if self.width >= m {
                            self.dst = Vec::new();
                            self.step = Step::InitUnionFind;
                        } else {
                            self.lo = 0;
                            self.out = 0;
                            self.start_merge();
                        }
                    }
                }
                Step::InitUnionFind => {
                    if self.uf.len() < self.n {
                        if spent >= budget {
                            break;
                        }
                        self.uf.push_singleton();
                        spent += 1;
                    } else {
                        self.step = Step::Sweep;
                    }
                }
                Step::Sweep => {
                    if self.next < m {
                        if spent >= budget {
                            break;
                        }
                        let pos = self.src[self.next] as usize;
                        let e = &edges[pos];
                        keep[pos] = self.uf.union(e.u as usize, e.v as usize);
                        self.next += 1;
                        spent += 3;
                    } else {
                        self.step = Step::Done;
                    }
                }
                Step::Done => break,
            }
        }
        spent
    }

    pub(super) fn done(&self) -> bool {
        self.step == Step::Done
    }
}

/// Minimum spanning forest of `merged` under the `(weight, stream_index)`
/// order. The result is unique and kept in stream order.
pub fn build_msf<W: EdgeWeight>(merged: &EdgeSet<W>) -> Certificate<W> {
    recompute(CertificateKind::Msf, merged)
}

/// Total weight of a minimum spanning forest certificate.
pub fn msf_weight<W: EdgeWeight>(cert: &Certificate<W>) -> Result<W, GraphError> {
    if cert.kind != CertificateKind::Msf {
        return Err(GraphError::KindMismatch {
            expected: CertificateKind::Msf.name(),
            actual: cert.kind.name(),
        });
    }
    checked_sum(cert.edges().iter().map(|e| e.weight)).ok_or(GraphError::WeightOverflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::build_forest_certificate;
    use crate::graph::components;
    use proptest::prelude::*;

    type G = EdgeSet<u64>;

    #[test]
    fn log2_rounding() {
        assert_eq!(ceil_log2(0), 0);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(100), 7);
        assert_eq!(ceil_log2(1024), 10);
    }

    #[test]
    fn triangle() {
        let g = G::from_weighted(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        let c = build_msf(&g);
        assert_eq!(c.len(), 2);
        assert_eq!(msf_weight(&c), Ok(3));
    }

    #[test]
    fn equal_weights_give_first_arrival_forest() {
        let g = G::from_weighted(4, &[(0, 3, 5), (1, 2, 5), (0, 1, 5), (2, 3, 5), (1, 3, 5)]).unwrap();
        assert_eq!(build_msf(&g).graph, build_forest_certificate(&g).graph);
    }

    #[test]
    fn two_components() {
        let g = G::from_weighted(
            6,
            &[(0, 1, 4), (1, 2, 1), (2, 0, 2), (3, 4, 9), (4, 5, 9), (5, 3, 1)],
        )
        .unwrap();
        let c = build_msf(&g);
        assert_eq!(c.len(), 4);
        assert_eq!(components(&c.graph), vec![0, 0, 0, 3, 3, 3]);
        assert_eq!(msf_weight(&c), Ok(1 + 2 + 1 + 9));
    }

    #[test]
    fn empty_certificate_weighs_nothing() {
        assert_eq!(msf_weight(&Certificate::<u64>::empty(CertificateKind::Msf, 4)), Ok(0));
    }

    #[test]
    fn weight_needs_msf_kind() {
        let c = Certificate::<u64>::empty(CertificateKind::SpanningForest, 4);
        assert!(matches!(msf_weight(&c), Err(GraphError::KindMismatch { .. })));
    }

    #[test]
    fn overflow_is_reported() {
        let g = EdgeSet::<u8>::from_weighted(3, &[(0, 1, 200), (1, 2, 100)]).unwrap();
        assert_eq!(msf_weight(&build_msf(&g)), Err(GraphError::WeightOverflow));
    }

    proptest! {
        #[test]
        fn sort_matches_std_sort(weights in prop::collection::vec(0u64..5, 0..70)) {
            let m = weights.len();
            let n = 12usize;
            let triples: Vec<_> = weights.iter().enumerate()
                .map(|(i, &w)| ((i % n) as u32, ((i * 7 + 1) % n) as u32, w))
                .filter(|(u, v, _)| u != v)
                .collect();
            let g = G::from_weighted(n, &triples).unwrap();
            let m = g.len().min(m);
            let mut sweep = SortSweep::new(n, m);
            let mut keep = vec![false; m];
            let mut used = 0;
            while sweep.step != Step::InitUnionFind && sweep.step != Step::Done {
                used += sweep.advance(&g.edges, &mut keep, 2);
                if sweep.step == Step::InitUnionFind { break; }
            }
            let sorted: Vec<(u64, u64)> = sweep.src.iter().map(|&p| g.edges[p as usize].key()).collect();
            let mut expected: Vec<(u64, u64)> = g.edges.iter().map(|e| e.key()).collect();
            expected.sort();
            prop_assert_eq!(sorted, expected);
            prop_assert!(used <= m as u64 * (1 + ceil_log2(m) as u64) + 2);
        }
    }
}
