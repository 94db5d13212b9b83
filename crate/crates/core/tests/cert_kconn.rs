mod common;

use common::*;
use rand::Rng;
use semistream::cert::{build_k_certificate, decompose_forests};
use semistream::{EdgeSet, UnionFind};

fn k_cert(n: usize, pairs: &[Pair], k: u32) -> Vec<Pair> {
    pairs_of(&build_k_certificate(&edge_set(n, pairs), k).graph)
}

/// Graphs where most edges come in bundles of up to `max_copies`.
fn bundled_graph(r: &mut rand_chacha::ChaCha8Rng, n: usize, max_pairs: usize, max_copies: usize) -> Vec<Pair> {
    let m = r.gen_range(0..=max_pairs);
    let base = random_pairs(r, n, m);
    let mut pairs = Vec::new();
    for p in base {
        for _ in 0..r.gen_range(1..=max_copies) {
            pairs.push(p);
        }
    }
    shuffled(r, &pairs)
}

fn assert_local_preservation(n: usize, pairs: &[Pair], k: u32) {
    let c = k_cert(n, pairs, k);
    let k = k as usize;
    assert!(c.len() <= k * n, "{} edges > {k}·{n}", c.len());
    for x in 0..n as u32 {
        for y in x + 1..n as u32 {
            let (kg, kc) = (brute_kappa(n, pairs, x, y), brute_kappa(n, &c, x, y));
            assert!(kc >= kg.min(k), "kappa({x},{y}) {kg} -> {kc}, k={k}, {pairs:?}");
            let (lg, lc) = (brute_lambda(n, pairs, x, y), brute_lambda(n, &c, x, y));
            assert!(lc >= lg.min(k), "lambda({x},{y}) {lg} -> {lc}, k={k}, {pairs:?}");
        }
    }
}

#[test]
fn local_connectivity_preserved_on_random_graphs() {
    let mut r = rng(31);
    for _ in 0..120 {
        let n = r.gen_range(1..=8);
        let pairs = random_graph(&mut r, n, 24);
        for k in 1..=4 {
            assert_local_preservation(n, &pairs, k);
        }
    }
}

#[test]
fn local_connectivity_preserved_with_heavy_parallel_bundles() {
    let mut r = rng(32);
    for _ in 0..80 {
        let n = r.gen_range(2..=7);
        let pairs = bundled_graph(&mut r, n, 14, 5);
        for k in 1..=4 {
            assert_local_preservation(n, &pairs, k);
        }
    }
}

#[test]
fn small_separators_leave_the_same_components() {
    let mut r = rng(33);
    for _ in 0..50 {
        let n = r.gen_range(2..=8);
        let pairs = random_graph(&mut r, n, 22);
        for k in 1..=3usize {
            let c = k_cert(n, &pairs, k as u32);
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize >= k {
                    continue;
                }
                let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
                // the certificate splits into the same pieces as the graph
                assert_eq!(
                    labels_without(n, &c, &removed),
                    labels_without(n, &pairs, &removed),
                    "k={k} S={removed:?} {pairs:?}"
                );
            }
        }
    }
}

#[test]
fn small_edge_cuts_leave_the_same_components() {
    let mut r = rng(34);
    for _ in 0..50 {
        let n = r.gen_range(2..=7);
        let pairs = random_graph(&mut r, n, 16);
        let g = edge_set(n, &pairs);
        for k in 1..=3usize {
            let cert = build_k_certificate(&g, k as u32).graph;
            let m = cert.len();
            // every edge set of size < k drawn from the certificate
            let mut chosen = Vec::new();
            fn walk(start: usize, m: usize, left: usize, chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
                f(chosen);
                if left == 0 {
                    return;
                }
                for i in start..m {
                    chosen.push(i);
                    walk(i + 1, m, left - 1, chosen, f);
                    chosen.pop();
                }
            }
            walk(0, m, k - 1, &mut chosen, &mut |cut| {
                let ids: Vec<u64> = cut.iter().map(|&i| cert.edges[i].stream_index).collect();
                let c_rest = pairs_of(&cert.without_edges(&ids));
                let g_rest = pairs_of(&g.without_edges(&ids));
                assert_eq!(labels(n, &c_rest), labels(n, &g_rest), "k={k} cut={ids:?} {pairs:?}");
            });
        }
    }
}

#[test]
fn strong_certificate_against_added_edges() {
    let mut r = rng(35);
    for _ in 0..150 {
        let n = r.gen_range(2..=8);
        let g = random_graph(&mut r, n, 20);
        let h = random_graph(&mut r, n, 6);
        for k in 1..=3usize {
            let c = k_cert(n, &g, k as u32);
            let gh: Vec<Pair> = g.iter().chain(&h).copied().collect();
            let ch: Vec<Pair> = c.iter().chain(&h).copied().collect();
            assert_eq!(
                brute_k_vertex_connected(n, &gh, k),
                brute_k_vertex_connected(n, &ch, k),
                "vertex k={k} G={g:?} H={h:?}"
            );
            assert_eq!(
                brute_k_edge_connected(n, &gh, k),
                brute_k_edge_connected(n, &ch, k),
                "edge k={k} G={g:?} H={h:?}"
            );
        }
    }
}

#[test]
fn certificate_of_certificate_still_preserves_connectivity() {
    let mut r = rng(36);
    for _ in 0..60 {
        let n = r.gen_range(2..=7);
        let pairs = random_graph(&mut r, n, 22);
        for k in 1..=3u32 {
            let once = build_k_certificate(&edge_set(n, &pairs), k).graph;
            let twice = pairs_of(&build_k_certificate(&once, k).graph);
            for x in 0..n as u32 {
                for y in x + 1..n as u32 {
                    let kk = k as usize;
                    assert!(brute_kappa(n, &twice, x, y) >= brute_kappa(n, &pairs, x, y).min(kk));
                    assert!(brute_lambda(n, &twice, x, y) >= brute_lambda(n, &pairs, x, y).min(kk));
                }
            }
        }
    }
}

#[test]
fn decomposition_shape() {
    let mut r = rng(37);
    for _ in 0..100 {
        let n = r.gen_range(1..=12);
        let pairs = bundled_graph(&mut r, n, 30, 3);
        let g = edge_set(n, &pairs);
        for k in 1..=4 {
            let d = decompose_forests(&g, k);
            assert_eq!(d.forests.len(), k as usize);
            let mut seen = std::collections::HashSet::new();
            for f in &d.forests {
                let mut uf = UnionFind::new(n);
                for e in &f.edges {
                    assert!(uf.union(e.u as usize, e.v as usize), "forest has a cycle");
                    assert!(seen.insert(e.stream_index));
                }
            }
            // retained copies always sit beside a kept first copy of the same pair
            let forest_union: EdgeSet = d.forests.iter().fold(EdgeSet::new(n), |acc, f| acc.union(f));
            for e in &d.parallel.edges {
                assert!(seen.insert(e.stream_index));
                assert!(forest_union.multiplicity(e.u, e.v) == 1);
            }
            assert_eq!(d.union(), build_k_certificate(&g, k).graph);
            assert!(d.edge_count() <= k as usize * n);
        }
    }
}

#[test]
fn k5_two_certificate() {
    let mut pairs = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            pairs.push((u, v));
        }
    }
    let c = k_cert(5, &pairs, 2);
    assert!(c.len() <= 7);
    assert!(brute_k_vertex_connected(5, &c, 2));
}
