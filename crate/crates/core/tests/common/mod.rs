//! Independent reference answers for the integration tests. Nothing here
//! calls into the crate's own graph algorithms: these are brute-force or
//! textbook versions written against plain edge lists.

#![allow(dead_code)]

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semistream::{run_stream, CertificateKind, EdgeSet, StreamConfig};

pub type Pair = (u32, u32);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random loopless multigraph edge list: `m` uniform pairs.
pub fn random_pairs(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Pair> {
    if n < 2 {
        return Vec::new();
    }
    (0..m)
        .map(|_| loop {
            let u = rng.gen_range(0..n as u32);
            let v = rng.gen_range(0..n as u32);
            if u != v {
                break (u, v);
            }
        })
        .collect()
}

/// Random graph, sometimes dense, sometimes sparse, sometimes with
/// duplicated edges.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_m: usize) -> Vec<Pair> {
    let m = rng.gen_range(0..=max_m);
    let mut pairs = random_pairs(rng, n, m);
    if rng.gen_bool(0.3) && !pairs.is_empty() {
        let extra = rng.gen_range(1..=3);
        for _ in 0..extra {
            let e = pairs[rng.gen_range(0..pairs.len())];
            pairs.push(e);
        }
    }
    pairs
}

pub fn shuffled(rng: &mut ChaCha8Rng, pairs: &[Pair]) -> Vec<Pair> {
    let mut out = pairs.to_vec();
    out.shuffle(rng);
    out
}

pub fn edge_set(n: usize, pairs: &[Pair]) -> EdgeSet {
    EdgeSet::from_pairs(n, pairs).unwrap()
}

pub fn pairs_of(g: &EdgeSet) -> Vec<Pair> {
    g.edges.iter().map(|e| (e.u, e.v)).collect()
}

/// Canonical component labels by a separate union-find.
pub fn labels(n: usize, pairs: &[Pair]) -> Vec<u32> {
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut p: Vec<usize> = (0..n).collect();
    for &(u, v) in pairs {
        let (a, b) = (find(&mut p, u as usize), find(&mut p, v as usize));
        // keep the smaller root so roots are component minima
        if a < b {
            p[b] = a;
        } else {
            p[a] = b;
        }
    }
    (0..n).map(|x| find(&mut p, x) as u32).collect()
}

pub fn component_count(n: usize, pairs: &[Pair]) -> usize {
    let l = labels(n, pairs);
    (0..n).filter(|&x| l[x] as usize == x).count()
}

/// Component count after deleting the vertices in `removed`, counting only
/// surviving vertices.
pub fn count_without(n: usize, pairs: &[Pair], removed: &[bool]) -> usize {
    let kept: Vec<Pair> = pairs
        .iter()
        .copied()
        .filter(|&(u, v)| !removed[u as usize] && !removed[v as usize])
        .collect();
    let l = labels(n, &kept);
    (0..n).filter(|&x| !removed[x] && l[x] as usize == x).count()
}

pub fn labels_without(n: usize, pairs: &[Pair], removed: &[bool]) -> Vec<Option<u32>> {
    let kept: Vec<Pair> = pairs
        .iter()
        .copied()
        .filter(|&(u, v)| !removed[u as usize] && !removed[v as usize])
        .collect();
    let l = labels(n, &kept);
    (0..n).map(|x| (!removed[x]).then_some(l[x])).collect()
}

/// Breadth-first two-coloring.
pub fn two_colorable(n: usize, pairs: &[Pair]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        adj[u as usize].push(v as usize);
        adj[v as usize].push(u as usize);
    }
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    q.push_back(y);
                } else if color[y] == color[x] {
                    return false;
                }
            }
        }
    }
    true
}

/// Kruskal with std sort under `(weight, index)`; returns kept indices in
/// increasing order.
pub fn kruskal(n: usize, weighted: &[(u32, u32, u64)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weighted.len()).collect();
    order.sort_by_key(|&i| (weighted[i].2, i));
    let mut kept = Vec::new();
    let mut forest: Vec<Pair> = Vec::new();
    let mut l = labels(n, &forest);
    for i in order {
        let (u, v, _) = weighted[i];
        if l[u as usize] != l[v as usize] {
            forest.push((u, v));
            kept.push(i);
            l = labels(n, &forest);
        }
    }
    kept.sort_unstable();
    kept
}

fn subsets(universe: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << universe)
}

/// Minimum number of vertices (other than `x`, `y`) separating `x` from
/// `y`, plus the number of direct `x`–`y` edges; by exhaustive search.
pub fn brute_kappa(n: usize, pairs: &[Pair], x: u32, y: u32) -> usize {
    let direct = pairs
        .iter()
        .filter(|&&(u, v)| (u, v) == (x, y) || (u, v) == (y, x))
        .count();
    let rest: Vec<Pair> = pairs
        .iter()
        .copied()
        .filter(|&(u, v)| (u, v) != (x, y) && (u, v) != (y, x))
        .collect();
    let others: Vec<usize> = (0..n).filter(|&v| v != x as usize && v != y as usize).collect();
    let mut best = others.len();
    for mask in subsets(others.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut removed = vec![false; n];
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                removed[v] = true;
            }
        }
        let l = labels_without(n, &rest, &removed);
        if l[x as usize] != l[y as usize] {
            best = size;
        }
    }
    direct + best
}

/// Minimum number of edges crossing a vertex bipartition with `x` on one
/// side and `y` on the other.
pub fn brute_lambda(n: usize, pairs: &[Pair], x: u32, y: u32) -> usize {
    let others: Vec<usize> = (0..n).filter(|&v| v != x as usize && v != y as usize).collect();
    let mut best = usize::MAX;
    for mask in subsets(others.len()) {
        let mut side = vec![false; n];
        side[x as usize] = true;
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                side[v] = true;
            }
        }
        let crossing = pairs.iter().filter(|&&(u, v)| side[u as usize] != side[v as usize]).count();
        best = best.min(crossing);
    }
    best
}

/// `n > k` and no set of fewer than `k` vertices disconnects the graph.
pub fn brute_k_vertex_connected(n: usize, pairs: &[Pair], k: usize) -> bool {
    if n <= k {
        return false;
    }
    subsets(n).all(|mask| {
        if mask.count_ones() as usize >= k {
            return true;
        }
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        count_without(n, pairs, &removed) <= 1
    })
}

/// No set of fewer than `k` edges disconnects the graph (one vertex counts
/// as connected).
pub fn brute_k_edge_connected(n: usize, pairs: &[Pair], k: usize) -> bool {
    if n == 1 {
        return true;
    }
    // the smallest disconnecting edge set is the smallest cut over all
    // vertex bipartitions
    (0..(1u32 << (n - 1))).all(|mask| {
        let side = |v: u32| v == 0 || mask >> (v - 1) & 1 == 1;
        let all_in = (1..n as u32).all(side);
        all_in || pairs.iter().filter(|&&(u, v)| side(u) != side(v)).count() >= k
    })
}

/// Runs an unweighted stream through the engine.
pub fn stream_cert(kind: CertificateKind, n: usize, pairs: &[Pair], cfg: StreamConfig) -> semistream::Certificate {
    run_stream::<u64>(kind, n, cfg, pairs.iter().map(|&(u, v)| (u, v, None)))
        .unwrap()
        .0
}

pub fn group(g: usize) -> StreamConfig {
    StreamConfig {
        group_size: Some(g),
        ..StreamConfig::default()
    }
}
