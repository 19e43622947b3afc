//! Random graph models: uniform regular graphs via the configuration model,
//! binomial graphs, dense deterministic seeds, and randomly perturbed unions.
//!
//! Everything is a pure function of (parameters, seed): the same inputs
//! produce the same graph, byte for byte. Parallel trial runners derive one
//! sub-seed per trial with [`sub_seed`] and never share generator state.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("regular model needs n·d even and d < n, got n={n}, d={d}")]
    BadRegularParams { n: usize, d: usize },
    #[error("edge probability must lie in [0,1], got {p}")]
    BadProbability { p: f64 },
    #[error("rejection sampling failed after {attempts} attempts (n={n}, d={d}); d is too large for whole-sample rejection")]
    RejectionExhausted { n: usize, d: usize, attempts: u64 },
    #[error("dense seed parameters unsatisfiable: {reason}")]
    Unsatisfiable { reason: String },
    #[error("pair-rejection sampler got stuck after {restarts} restarts (n={n}, d={d})")]
    PairingStuck { n: usize, d: usize, restarts: u32 },
}

/// A 64-bit seed. Identical seed and parameters give a bit-identical sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(u64);

impl Seed {
    #[must_use]
    pub const fn new(value: u64) -> Self {
        Self(value)
    }

    #[must_use]
    pub const fn value(self) -> u64 {
        self.0
    }

    #[must_use]
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream splitting: trial `index` under a master seed draws from
/// `hash(master, index)`. Serial and parallel runs therefore agree.
#[must_use]
pub fn sub_seed(master: Seed, index: u64) -> Seed {
    Seed(splitmix64(
        master.0 ^ splitmix64(index.wrapping_add(0xA076_1D64_78BD_642F)),
    ))
}

/// Dense deterministic seed families with minimum degree at least δn.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenseSeedFamily {
    /// Two disjoint cliques covering all vertices, the smaller of size
    /// ⌈δn⌉+1. Disconnected, hence non-Hamiltonian before perturbation.
    TwoCliques,
    /// Complete bipartite graph with smaller side ⌈δn⌉.
    UnbalancedBipartite,
    /// G(n, q) resampled until the minimum degree reaches ⌈δn⌉.
    RandomMinDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseSeedSpec {
    pub family: DenseSeedFamily,
    pub n: usize,
    pub delta: f64,
}

/// Model parameters for one sampled graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    Regular { n: usize, d: usize },
    Multiregular { n: usize, d: usize },
    Gnp { n: usize, p: f64 },
    Perturbed { seed_graph: DenseSeedSpec, p: f64 },
}

impl ModelSpec {
    pub fn validate(&self) -> Result<(), ModelError> {
        match *self {
            ModelSpec::Regular { n, d } | ModelSpec::Multiregular { n, d } => {
                if d >= n.max(1) && !(n == 1 && matches!(self, ModelSpec::Multiregular { .. })) {
                    return Err(ModelError::BadRegularParams { n, d });
                }
                if (n * d) % 2 != 0 {
                    return Err(ModelError::BadRegularParams { n, d });
                }
                Ok(())
            }
            ModelSpec::Gnp { p, .. } | ModelSpec::Perturbed { p, .. } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(ModelError::BadProbability { p });
                }
                Ok(())
            }
        }
    }

    /// Graph size this spec produces.
    #[must_use]
    pub fn n(&self) -> usize {
        match *self {
            ModelSpec::Regular { n, .. }
            | ModelSpec::Multiregular { n, .. }
            | ModelSpec::Gnp { n, .. } => n,
            ModelSpec::Perturbed { seed_graph, .. } => seed_graph.n,
        }
    }

    /// Samples a simple graph. Multigraph pairings are simplified by
    /// dropping loops and collapsing repeated edges.
    pub fn sample(&self, seed: Seed) -> Result<Graph, ModelError> {
        self.validate()?;
        match *self {
            ModelSpec::Regular { n, d } => Ok(sample_regular(n, d, seed)?.graph),
            ModelSpec::Multiregular { n, d } => Ok(sample_multiregular(n, d, seed).simplify()),
            ModelSpec::Gnp { n, p } => sample_gnp(n, p, seed),
            ModelSpec::Perturbed { seed_graph, p } => {
                let h = dense_seed(seed_graph.family, seed_graph.n, seed_graph.delta, seed)?;
                perturb(&h, p, sub_seed(seed, 1))
            }
        }
    }
}

/// A raw configuration-model pairing: a perfect matching on n·d half-edges.
#[derive(Clone, Debug)]
pub struct Multigraph {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl Multigraph {
    #[must_use]
    pub fn loop_count(&self) -> usize {
        self.pairs.iter().filter(|&&(u, v)| u == v).count()
    }

    /// Number of pairs beyond the first occurrence of each edge.
    #[must_use]
    pub fn multi_edge_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        self.pairs
            .iter()
            .filter(|&&(u, v)| u != v && !seen.insert((u.min(v), u.max(v))))
            .count()
    }

    #[must_use]
    pub fn is_simple(&self) -> bool {
        self.loop_count() == 0 && self.multi_edge_count() == 0
    }

    /// Drops loops and collapses repeated edges.
    #[must_use]
    pub fn simplify(&self) -> Graph {
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::new();
        for &(u, v) in &self.pairs {
            if u != v && seen.insert((u.min(v), u.max(v))) {
                edges.push((u, v));
            }
        }
        Graph::new(self.n, &edges).expect("simplified multigraph is simple")
    }
}

/// Uniform random pairing of the n·d half-edges.
#[must_use]
pub fn sample_multiregular(n: usize, d: usize, seed: Seed) -> Multigraph {
    assert!((n * d) % 2 == 0, "n·d must be even");
    let mut rng = seed.rng();
    let mut stubs: Vec<u32> = (0..n).flat_map(|v| std::iter::repeat(v as u32).take(d)).collect();
    stubs.shuffle(&mut rng);
    let pairs = stubs
        .chunks_exact(2)
        .map(|c| (c[0] as usize, c[1] as usize))
        .collect();
    Multigraph { n, pairs }
}

#[derive(Clone, Debug)]
pub struct RegularSample {
    pub graph: Graph,
    /// Pairings drawn before one came out simple.
    pub attempts: u64,
    /// Whether the complement graph was sampled instead (exact-uniformity
    /// preserving shortcut for d > (n-1)/2).
    pub via_complement: bool,
}

pub const DEFAULT_REGULAR_ATTEMPTS: u64 = 2_000_000;

/// Uniform simple d-regular graph: configuration model with whole-sample
/// rejection of any loop or multi-edge.
///
/// When `n-1-d < d` the complement degree is sampled instead and the graph
/// complemented; complementation is a bijection between the two families, so
/// uniformity is preserved while the rejection rate drops enormously.
/// Acceptance decays like exp(-(d²-1)/4), so for d large relative to what
/// rejection can bear within `max_attempts` this fails explicitly.
pub fn sample_regular(n: usize, d: usize, seed: Seed) -> Result<RegularSample, ModelError> {
    sample_regular_with(n, d, seed, DEFAULT_REGULAR_ATTEMPTS)
}

pub fn sample_regular_with(
    n: usize,
    d: usize,
    seed: Seed,
    max_attempts: u64,
) -> Result<RegularSample, ModelError> {
    if d >= n || (n * d) % 2 != 0 {
        return Err(ModelError::BadRegularParams { n, d });
    }
    let d_complement = n - 1 - d;
    if d_complement < d {
        let inner = sample_regular_with(n, d_complement, seed, max_attempts)?;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !inner.graph.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let graph = Graph::new(n, &edges).expect("complement of a simple graph is simple");
        return Ok(RegularSample {
            graph,
            attempts: inner.attempts,
            via_complement: true,
        });
    }
    if d == 0 {
        return Ok(RegularSample {
            graph: Graph::new(n, &[]).unwrap(),
            attempts: 0,
            via_complement: false,
        });
    }

    let mut rng = seed.rng();
    let mut stubs: Vec<u32> = (0..n).flat_map(|v| std::iter::repeat(v as u32).take(d)).collect();
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    let mut placed: Vec<(usize, usize)> = Vec::with_capacity(n * d / 2);
    for attempt in 1..=max_attempts {
        stubs.shuffle(&mut rng);
        placed.clear();
        let mut ok = true;
        for c in stubs.chunks_exact(2) {
            let (u, v) = (c[0] as usize, c[1] as usize);
            if u == v || adj[u * words + v / 64] >> (v % 64) & 1 == 1 {
                ok = false;
                break;
            }
            adj[u * words + v / 64] |= 1 << (v % 64);
            adj[v * words + u / 64] |= 1 << (u % 64);
            placed.push((u, v));
        }
        if ok {
            let graph = Graph::new(n, &placed).expect("accepted pairing is simple");
            return Ok(RegularSample {
                graph,
                attempts: attempt,
                via_complement: false,
            });
        }
        for &(u, v) in &placed {
            adj[u * words + v / 64] &= !(1 << (v % 64));
            adj[v * words + u / 64] &= !(1 << (u % 64));
        }
    }
    Err(ModelError::RejectionExhausted {
        n,
        d,
        attempts: max_attempts,
    })
}

/// Fast d-regular sampler: pair half-edges uniformly among *valid* choices,
/// restarting when stuck. Approximately (not exactly) uniform; use where
/// exact uniformity is not load-bearing, e.g. stress instances for the
/// switcher pipeline where whole-sample rejection would never terminate.
pub fn sample_regular_fast(n: usize, d: usize, seed: Seed) -> Result<Graph, ModelError> {
    if d >= n || (n * d) % 2 != 0 {
        return Err(ModelError::BadRegularParams { n, d });
    }
    let mut rng = seed.rng();
    let max_restarts = 10_000;
    for _restart in 0..max_restarts {
        let mut stubs: Vec<u32> =
            (0..n).flat_map(|v| std::iter::repeat(v as u32).take(d)).collect();
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * d / 2);
        let mut seen = std::collections::HashSet::new();
        let mut stuck = false;
        while !stubs.is_empty() {
            let mut placed = false;
            for _try in 0..200 {
                let i = rng.gen_range(0..stubs.len());
                let mut j = rng.gen_range(0..stubs.len());
                while j == i {
                    j = rng.gen_range(0..stubs.len());
                }
                let (u, v) = (stubs[i] as usize, stubs[j] as usize);
                if u == v || seen.contains(&(u.min(v), u.max(v))) {
                    continue;
                }
                seen.insert((u.min(v), u.max(v)));
                edges.push((u, v));
                let (hi, lo) = (i.max(j), i.min(j));
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                stuck = true;
                break;
            }
        }
        if !stuck {
            return Ok(Graph::new(n, &edges).expect("pairing is simple by construction"));
        }
    }
    Err(ModelError::PairingStuck {
        n,
        d,
        restarts: max_restarts,
    })
}

/// G(n, p): every pair independently with probability p.
pub fn sample_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph, ModelError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ModelError::BadProbability { p });
    }
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, &edges).expect("gnp sample is simple"))
}

/// Union of `h` with a fresh G(n,p) sample on the same vertex set. Edges of
/// `h` keep their indices; new random edges are appended in pair order.
pub fn perturb(h: &Graph, p: f64, seed: Seed) -> Result<Graph, ModelError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ModelError::BadProbability { p });
    }
    let n = h.vertex_count();
    let mut rng = seed.rng();
    let mut edges: Vec<(usize, usize)> = h.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            // The Bernoulli draw happens for every pair so the perturbation
            // is the same G(n,p) sample regardless of h.
            if rng.gen::<f64>() < p && !h.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, &edges).expect("union of simple graphs is simple"))
}

/// Deterministic or seeded n-vertex graph with minimum degree ≥ δn.
pub fn dense_seed(
    family: DenseSeedFamily,
    n: usize,
    delta: f64,
    seed: Seed,
) -> Result<Graph, ModelError> {
    if !(0.0..1.0).contains(&delta) || (delta * n as f64) < 1.0 {
        return Err(ModelError::Unsatisfiable {
            reason: format!("need 1 <= delta*n and delta in (0,1), got n={n}, delta={delta}"),
        });
    }
    let threshold = (delta * n as f64).ceil() as usize;
    match family {
        DenseSeedFamily::TwoCliques => {
            let s = threshold + 1;
            if s + 2 > n || n - s - 1 < threshold {
                return Err(ModelError::Unsatisfiable {
                    reason: format!(
                        "two cliques of sizes {s} and {} cannot both reach min degree {threshold}",
                        n - s
                    ),
                });
            }
            let mut edges = Vec::new();
            for u in 0..s {
                for v in u + 1..s {
                    edges.push((u, v));
                }
            }
            for u in s..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Ok(Graph::new(n, &edges).unwrap())
        }
        DenseSeedFamily::UnbalancedBipartite => {
            let a = threshold;
            if a == 0 || a > n - a {
                return Err(ModelError::Unsatisfiable {
                    reason: format!("bipartite sides {a} and {} are invalid", n - a),
                });
            }
            Ok(Graph::complete_bipartite(a, n - a))
        }
        DenseSeedFamily::RandomMinDegree => {
            let q = (delta + 0.15 + 2.0 / n as f64).min(1.0);
            for attempt in 0..10_000u64 {
                let g = sample_gnp(n, q, sub_seed(seed, attempt))?;
                if g.min_degree() >= threshold {
                    return Ok(g);
                }
            }
            Err(ModelError::Unsatisfiable {
                reason: format!("G({n},{q}) never reached min degree {threshold}"),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_seed_is_stable_and_spread() {
        let master = Seed::new(42);
        let a = sub_seed(master, 0);
        let b = sub_seed(master, 1);
        assert_ne!(a, b);
        assert_eq!(a, sub_seed(master, 0));
    }

    #[test]
    fn only_cubic_graph_on_four_vertices_is_k4() {
        let s = sample_regular(4, 3, Seed::new(7)).unwrap();
        assert_eq!(s.graph.edge_count(), 6);
        assert_eq!(s.graph.regular_degree(), Some(3));
    }

    #[test]
    fn two_regular_graphs_are_unions_of_cycles() {
        for seed in 0..20 {
            let s = sample_regular(6, 2, Seed::new(seed)).unwrap();
            assert_eq!(s.graph.regular_degree(), Some(2));
            assert_eq!(s.graph.edge_count(), 6);
            for block in s.graph.components() {
                assert!(block.len() >= 3);
            }
        }
    }

    #[test]
    fn regular_samples_are_regular_and_deterministic() {
        for seed in 0..50 {
            let s = sample_regular(12, 4, Seed::new(seed)).unwrap();
            assert_eq!(s.graph.vertex_count(), 12);
            assert_eq!(s.graph.edge_count(), 24);
            assert_eq!(s.graph.regular_degree(), Some(4));
        }
        let a = sample_regular(12, 4, Seed::new(3)).unwrap();
        let b = sample_regular(12, 4, Seed::new(3)).unwrap();
        assert_eq!(a.graph.to_text(), b.graph.to_text());
    }

    #[test]
    fn complement_route_is_used_for_high_degree() {
        // 8-regular on 9 vertices is K_9, reachable only via the complement.
        let s = sample_regular(9, 8, Seed::new(0)).unwrap();
        assert!(s.via_complement);
        assert_eq!(s.graph.edge_count(), 36);
        assert_eq!(s.graph.regular_degree(), Some(8));
        let s = sample_regular(13, 8, Seed::new(5)).unwrap();
        assert!(s.via_complement);
        assert_eq!(s.graph.regular_degree(), Some(8));
    }

    #[test]
    fn fast_sampler_matches_degree_sequence() {
        for seed in 0..10 {
            let g = sample_regular_fast(30, 10, Seed::new(seed)).unwrap();
            assert_eq!(g.regular_degree(), Some(10));
        }
    }

    #[test]
    fn multiregular_forced_cases() {
        let m = sample_multiregular(2, 1, Seed::new(1));
        assert_eq!(m.pairs.len(), 1);
        assert!(m.is_simple());
        let m = sample_multiregular(1, 2, Seed::new(1));
        assert_eq!(m.loop_count(), 1);
    }

    #[test]
    fn gnp_extremes() {
        let empty = sample_gnp(8, 0.0, Seed::new(1)).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = sample_gnp(8, 1.0, Seed::new(1)).unwrap();
        assert_eq!(full.edge_count(), 28);
    }

    #[test]
    fn gnp_mean_edge_count_concentrates() {
        let n = 400;
        let p = 10.0 / n as f64;
        let expect = (n * (n - 1) / 2) as f64 * p;
        let mut total = 0usize;
        let trials = 60;
        for t in 0..trials {
            total += sample_gnp(n, p, Seed::new(t)).unwrap().edge_count();
        }
        let mean = total as f64 / trials as f64;
        assert!(
            (mean - expect).abs() < 0.05 * expect,
            "mean {mean} vs expected {expect}"
        );
    }

    #[test]
    fn perturb_preserves_host_edges_and_indices() {
        let h = dense_seed(DenseSeedFamily::TwoCliques, 15, 0.3, Seed::new(2)).unwrap();
        let g = perturb(&h, 0.4, Seed::new(9)).unwrap();
        assert!(g.edge_count() >= h.edge_count());
        for (i, (u, v)) in h.edges().enumerate() {
            assert_eq!(g.edge_endpoints(i), (u, v));
        }
        assert!(g.min_degree() >= h.min_degree());
        let same = perturb(&h, 0.0, Seed::new(9)).unwrap();
        assert_eq!(same.to_text(), h.to_text());
        let empty = Graph::new(6, &[]).unwrap();
        let full = perturb(&empty, 1.0, Seed::new(1)).unwrap();
        assert_eq!(full.edge_count(), 15);
    }

    #[test]
    fn dense_seed_families_meet_min_degree() {
        let g = dense_seed(DenseSeedFamily::TwoCliques, 21, 0.3, Seed::new(1)).unwrap();
        assert!(g.min_degree() >= 7);
        assert_eq!(g.component_count(), 2);

        let g = dense_seed(DenseSeedFamily::UnbalancedBipartite, 15, 0.2, Seed::new(1)).unwrap();
        assert_eq!(g.min_degree(), 3);
        assert_eq!(g.edge_count(), 3 * 12);

        let g = dense_seed(DenseSeedFamily::RandomMinDegree, 101, 0.25, Seed::new(1)).unwrap();
        assert!(g.min_degree() >= 26);
    }

    #[test]
    fn model_spec_json_round_trip() {
        let spec = ModelSpec::Regular { n: 13, d: 6 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"regular","n":13,"d":6}"#);
        assert_eq!(serde_json::from_str::<ModelSpec>(&json).unwrap(), spec);

        let spec = ModelSpec::Perturbed {
            seed_graph: DenseSeedSpec {
                family: DenseSeedFamily::TwoCliques,
                n: 15,
                delta: 0.3,
            },
            p: 0.5,
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<ModelSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(ModelSpec::Regular { n: 5, d: 3 }.validate().is_err());
        assert!(ModelSpec::Gnp { n: 5, p: 1.5 }.validate().is_err());
        assert!(sample_regular(5, 3, Seed::new(1)).is_err());
    }
}
