mod common;

use common::*;
use rand::Rng;
use semistream::cert::{build_msf, msf_weight};
use semistream::{run_stream, CertificateKind, EdgeSet, StreamConfig};

fn weighted(r: &mut rand_chacha::ChaCha8Rng, n: usize, max_m: usize, max_w: u64) -> Vec<(u32, u32, u64)> {
    random_graph(r, n, max_m)
        .into_iter()
        .map(|(u, v)| (u, v, r.gen_range(0..=max_w)))
        .collect()
}

fn kept_indices(edges: &EdgeSet) -> Vec<usize> {
    edges.edges.iter().map(|e| e.stream_index as usize).collect()
}

#[test]
fn offline_build_matches_kruskal() {
    let mut r = rng(51);
    for _ in 0..300 {
        let n = r.gen_range(1..=12);
        // few distinct weights, so ties are common
        let t = weighted(&mut r, n, 60, 4);
        let g = EdgeSet::from_weighted(n, &t).unwrap();
        let c = build_msf(&g);
        assert_eq!(kept_indices(&c.graph), kruskal(n, &t));
        let expected: u64 = kruskal(n, &t).iter().map(|&i| t[i].2).sum();
        assert_eq!(msf_weight(&c).unwrap(), expected);
    }
}

#[test]
fn streamed_msf_exact_for_every_group_size() {
    let mut r = rng(52);
    for _ in 0..150 {
        let n = r.gen_range(1..=12);
        let t = weighted(&mut r, n, 150, 20);
        let m = t.len().max(1);
        let log = (n as f64).log2().ceil().max(1.0) as usize;
        let expected = kruskal(n, &t);
        for g in [1, 2, n, n * log, m] {
            let cfg = StreamConfig {
                group_size: Some(g.max(1)),
                ..StreamConfig::default()
            };
            let (cert, _) =
                run_stream::<u64>(CertificateKind::Msf, n, cfg, t.iter().map(|&(u, v, w)| (u, v, Some(w)))).unwrap();
            let mut got = kept_indices(&cert.graph);
            got.sort_unstable();
            assert_eq!(got, expected, "g={g} n={n}");
        }
    }
}

#[test]
fn ties_broken_by_arrival() {
    let g = EdgeSet::from_weighted(3, &[(0, 1, 5), (1, 2, 5), (0, 2, 5)]).unwrap();
    assert_eq!(kept_indices(&build_msf(&g).graph), vec![0, 1]);
}

#[test]
fn msf_needs_weights() {
    let err = run_stream::<u64>(CertificateKind::Msf, 3, StreamConfig::default(), [(0, 1, None)]);
    assert!(err.is_err());
}
