//! Seeded synthetic edge streams.

use std::collections::HashSet;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::{Record, StreamHeader};
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// `m` edges drawn uniformly (without repetition unless multigraph).
    Gnm,
    Cycle,
    Complete,
    /// Complete bipartite graph between the first `⌈n/2⌉` vertices and the rest.
    Bipartite,
    /// Two complete halves joined by a single bridge `(0, ⌈n/2⌉)`.
    TwoBlocks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    Random,
    SortedByEndpoint,
    /// Decreasing endpoint degree sum, so the densest region arrives first
    /// and fills the early groups with mostly redundant edges.
    AdversarialDenseFirst,
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "gnm" => Model::Gnm,
            "cycle" => Model::Cycle,
            "complete" => Model::Complete,
            "bipartite" => Model::Bipartite,
            "two-blocks" => Model::TwoBlocks,
            _ => return Err(format!("unknown model `{s}`")),
        })
    }
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "random" => Order::Random,
            "sorted-by-endpoint" => Order::SortedByEndpoint,
            "adversarial-dense-first" => Order::AdversarialDenseFirst,
            _ => return Err(format!("unknown order `{s}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Edge count; `None` takes the model's full edge set (`2n` for gnm).
    pub m: Option<usize>,
    pub model: Model,
    pub order: Order,
    pub seed: u64,
    /// Allow repeated edges, needed when `m` exceeds the model's capacity.
    pub multigraph: bool,
    /// Attach uniform weights in `0..=max_weight`.
    pub max_weight: Option<u64>,
}

impl GeneratorConfig {
    pub fn new(n: usize, model: Model) -> Self {
        Self {
            n,
            m: None,
            model,
            order: Order::Random,
            seed: 0,
            multigraph: false,
            max_weight: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("vertex count must be at least 1")]
    NoVertices,
    #[error("{m} edges requested but the model has only {capacity} distinct edges; pass the multigraph flag")]
    OverCapacity { m: usize, capacity: usize },
    #[error("cannot place {m} edges on a model without edges")]
    NoEdges { m: usize },
}

/// Number of distinct edges the model offers on `n` vertices.
pub fn capacity(model: Model, n: usize) -> usize {
    let half = n.div_ceil(2);
    match model {
        Model::Gnm | Model::Complete => n * n.saturating_sub(1) / 2,
        Model::Cycle => match n {
            0 | 1 => 0,
            2 => 1,
            _ => n,
        },
        Model::Bipartite => half * (n - half),
        Model::TwoBlocks => {
            let rest = n - half;
            half * half.saturating_sub(1) / 2 + rest * rest.saturating_sub(1) / 2 + (rest > 0) as usize
        }
    }
}

fn base_edges(model: Model, n: usize) -> Vec<(VertexId, VertexId)> {
    let n32 = n as VertexId;
    let half = n.div_ceil(2) as VertexId;
    let clique = |lo: VertexId, hi: VertexId, out: &mut Vec<(VertexId, VertexId)>| {
        for u in lo..hi {
            for v in u + 1..hi {
                out.push((u, v));
            }
        }
    };
    let mut out = Vec::new();
    match model {
        Model::Gnm | Model::Complete => clique(0, n32, &mut out),
        Model::Cycle => match n {
            0 | 1 => {}
            2 => out.push((0, 1)),
            _ => out.extend((0..n32).map(|i| (i, (i + 1) % n32))),
        },
        Model::Bipartite => {
            for u in 0..half {
                for v in half..n32 {
                    out.push((u, v));
                }
            }
        }
        Model::TwoBlocks => {
            clique(0, half, &mut out);
            clique(half, n32, &mut out);
            if half < n32 {
                out.push((0, half));
            }
        }
    }
    out
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (VertexId, VertexId) {
    let u = rng.gen_range(0..n as VertexId);
    let mut v = rng.gen_range(0..n as VertexId - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

fn gnm_edges(rng: &mut ChaCha8Rng, n: usize, m: usize, multigraph: bool) -> Vec<(VertexId, VertexId)> {
    if multigraph {
        return (0..m).map(|_| random_pair(rng, n)).collect();
    }
    let cap = capacity(Model::Gnm, n);
    if m * 2 > cap {
        let mut all = base_edges(Model::Gnm, n);
        all.shuffle(rng);
        all.truncate(m);
        return all;
    }
    let mut seen = HashSet::with_capacity(m);
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let (u, v) = random_pair(rng, n);
        if seen.insert((u.min(v), u.max(v))) {
            out.push((u, v));
        }
    }
    out
}

/// Generates a stream. The same configuration always yields the same stream.
pub fn generate(cfg: &GeneratorConfig) -> Result<(StreamHeader, Vec<Record>), GenerateError> {
    if cfg.n == 0 {
        return Err(GenerateError::NoVertices);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cap = capacity(cfg.model, cfg.n);
    let m = cfg.m.unwrap_or(match cfg.model {
        Model::Gnm => (2 * cfg.n).min(cap),
        _ => cap,
    });
    if m > cap && !cfg.multigraph {
        return Err(GenerateError::OverCapacity { m, capacity: cap });
    }
    if m > 0 && cap == 0 {
        return Err(GenerateError::NoEdges { m });
    }

    let mut pairs = match cfg.model {
        Model::Gnm => gnm_edges(&mut rng, cfg.n, m, cfg.multigraph),
        model => {
            let mut base = base_edges(model, cfg.n);
            if m <= base.len() {
                base.shuffle(&mut rng);
                base.truncate(m);
            } else {
                let extra: Vec<_> = (base.len()..m).map(|_| base[rng.gen_range(0..base.len())]).collect();
                base.extend(extra);
            }
            base
        }
    };

    match cfg.order {
        Order::Random => pairs.shuffle(&mut rng),
        Order::SortedByEndpoint => pairs.sort_by_key(|&(u, v)| (u.min(v), u.max(v))),
        Order::AdversarialDenseFirst => {
            let mut degree = vec![0u64; cfg.n];
            for &(u, v) in &pairs {
                degree[u as usize] += 1;
                degree[v as usize] += 1;
            }
            pairs.sort_by_key(|&(u, v)| {
                let d = degree[u as usize] + degree[v as usize];
                (std::cmp::Reverse(d), u.min(v), u.max(v))
            });
        }
    }

    let records = pairs
        .into_iter()
        .map(|(u, v)| Record {
            u,
            v,
            weight: cfg.max_weight.map(|w| rng.gen_range(0..=w)),
        })
        .collect();
    let header = StreamHeader {
        n: cfg.n,
        weighted: cfg.max_weight.is_some(),
    };
    Ok((header, records))
}
