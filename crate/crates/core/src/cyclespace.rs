//! Cycle space, cut space, Hamilton-cycle span and witness subgraphs.
//!
//! The edge space of a graph is GF(2)^m with XOR as symmetric difference.
//! The cycle space C(G) is spanned by incidence vectors of cycles
//! (dimension m - n + #components); the cut space is its orthogonal
//! complement, spanned by vertex stars. C_k(G) is the subspace spanned by
//! cycles of length exactly k; k = n gives the Hamilton-cycle span.
//!
//! When C_n(G) is a proper subspace of C(G) there is a witness edge set R
//! with even intersection with every Hamilton cycle (R lies in C_n(G)^⊥)
//! that is not a cut. [`find_witness`] searches for one; the parity-switcher
//! pipeline then tries to contradict it constructively.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector, IncrementalBasis};
use crate::graph::{Cycle, EdgeSet, Graph, GraphError};
use crate::hamilton::{for_each_cycle_of_len, EnumerationEnd, HamiltonBudget};

#[derive(Debug, Error)]
pub enum CycleSpaceError {
    #[error("k = {k} out of range 3..={n}")]
    BadK { k: usize, n: usize },
    #[error("edge {index} is not a chord of the cycle")]
    NotAChord { index: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceKind {
    CycleSpace,
    CycleK(usize),
    CutSpace,
    /// Orthogonal complement of the Hamilton-cycle span.
    HamiltonOrthogonal,
}

/// A row-reduced basis of a subspace of the edge space.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub kind: SubspaceKind,
    pub basis: BitMatrix,
    /// True when an enumeration budget tripped before the construction was
    /// complete: the basis is then only a lower bound on the subspace.
    pub truncated: bool,
    /// Cycles fed into the basis (for the enumerated kinds).
    pub enumerated: usize,
}

impl SubspaceBasis {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.row_count()
    }
}

/// Fundamental-cycle basis from a BFS spanning forest.
///
/// Dimension is m - n + #components.
#[must_use]
pub fn cycle_space_basis(g: &Graph) -> SubspaceBasis {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut depth = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut tree_edge = vec![false; m];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                let w = w as usize;
                if !visited[w] {
                    visited[w] = true;
                    let e = g.edge_index_of(u, w).unwrap();
                    parent[w] = u;
                    parent_edge[w] = Some(e);
                    depth[w] = depth[u] + 1;
                    tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut basis = IncrementalBasis::new(m);
    for e in 0..m {
        if tree_edge[e] {
            continue;
        }
        let (mut u, mut v) = g.edge_endpoints(e);
        let mut row = BitVector::zeros(m);
        row.set(e);
        // walk both endpoints up to their meeting point
        while u != v {
            if depth[u] < depth[v] {
                std::mem::swap(&mut u, &mut v);
            }
            row.flip(parent_edge[u].expect("non-root has a parent edge"));
            u = parent[u];
        }
        basis.insert(row);
    }
    let expected = m + g.component_count() - n;
    debug_assert_eq!(basis.rank(), expected);
    SubspaceBasis {
        kind: SubspaceKind::CycleSpace,
        enumerated: basis.rank(),
        basis: basis.into_matrix(),
        truncated: false,
    }
}

/// Star basis of the cut space: ∂(v) for all v except one representative
/// per component. Dimension is n - #components.
#[must_use]
pub fn cut_space_basis(g: &Graph) -> SubspaceBasis {
    let m = g.edge_count();
    let mut skip = vec![false; g.vertex_count()];
    for block in g.components() {
        skip[block[0]] = true;
    }
    let mut basis = IncrementalBasis::new(m);
    for v in 0..g.vertex_count() {
        if !skip[v] {
            basis.insert(g.star(v).into_bits());
        }
    }
    debug_assert_eq!(basis.rank(), g.vertex_count() - g.component_count());
    SubspaceBasis {
        kind: SubspaceKind::CutSpace,
        enumerated: 0,
        basis: basis.into_matrix(),
        truncated: false,
    }
}

/// Basis of C_k(G) by incremental rank over enumerated k-cycles.
///
/// Stops early once the rank reaches dim C(G), since no further cycle can
/// add rank. A tripped budget before either saturation or exhaustion marks
/// the result truncated (a lower bound only).
pub fn cycle_k_space(
    g: &Graph,
    k: usize,
    budget: &HamiltonBudget,
) -> Result<SubspaceBasis, CycleSpaceError> {
    let n = g.vertex_count();
    if k < 3 || k > n {
        return Err(CycleSpaceError::BadK { k, n });
    }
    let target = cycle_space_basis(g).dim();
    let mut basis = IncrementalBasis::new(g.edge_count());
    let mut enumerated = 0usize;
    let result = for_each_cycle_of_len(g, k, budget, |c| {
        enumerated += 1;
        basis.insert(c.edges().bits().clone());
        if basis.rank() == target {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(SubspaceBasis {
        kind: SubspaceKind::CycleK(k),
        enumerated,
        basis: basis.into_matrix(),
        truncated: result.end == EnumerationEnd::Budget,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanStatus {
    Yes,
    No,
    /// Enumeration budget tripped before the question was settled.
    Truncated,
}

#[derive(Clone, Debug)]
pub struct SpanResult {
    pub status: SpanStatus,
    pub k: usize,
    pub dim_ck: usize,
    pub dim_c: usize,
    pub enumerated: usize,
}

/// Does C_k(G) = C(G)?
pub fn spans(g: &Graph, k: usize, budget: &HamiltonBudget) -> Result<SpanResult, CycleSpaceError> {
    let dim_c = cycle_space_basis(g).dim();
    let ck = cycle_k_space(g, k, budget)?;
    let status = if ck.dim() == dim_c {
        SpanStatus::Yes
    } else if ck.truncated {
        SpanStatus::Truncated
    } else {
        SpanStatus::No
    };
    Ok(SpanResult {
        status,
        k,
        dim_ck: ck.dim(),
        dim_c,
        enumerated: ck.enumerated,
    })
}

/// Proof data carried by a witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessCertificate {
    /// Rank of the enumerated Hamilton-cycle basis the witness was checked
    /// against.
    pub hamilton_rank: usize,
    pub cycle_rank: usize,
    /// Re-verified: the witness has even intersection with every basis
    /// Hamilton cycle.
    pub orthogonal_to_hamilton_basis: bool,
    /// Re-verified: the witness is not a cut (not G[A,B] for any partition).
    pub outside_cut_space: bool,
}

/// A witness edge set R: even intersection with every Hamilton cycle, yet
/// not a cut. Exists iff the Hamilton cycles fail to span the cycle space.
#[derive(Clone, Debug)]
pub struct WitnessR {
    pub edges: EdgeSet,
    pub certificate: WitnessCertificate,
    /// Whether the greedy min-degree normalization ran.
    pub normalized: bool,
    /// R equals the whole edge set (violates R ≠ G); kept only when no
    /// proper witness was found at the configured search depth.
    pub degenerate: bool,
}

#[derive(Clone, Debug)]
pub struct WitnessConfig {
    pub budget: HamiltonBudget,
    /// XOR-combination depth of null-space basis vectors to scan (the basis
    /// vectors themselves are depth 1).
    pub combination_depth: usize,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            budget: HamiltonBudget::generous(),
            combination_depth: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub witness: Option<WitnessR>,
    /// The Hamilton enumeration behind the search tripped its budget; a
    /// returned witness is then advisory (it may fail on cycles never seen).
    pub truncated: bool,
    pub hamilton_rank: usize,
    pub cycle_rank: usize,
}

/// Searches for a witness R.
///
/// Computes the orthogonal complement of the enumerated Hamilton-cycle span
/// and scans it (basis vectors first, then XOR combinations up to the
/// configured depth) for a vector outside the cut space. Returns no witness
/// exactly when C_n(G) = C(G), provided the enumeration completed.
pub fn find_witness(g: &Graph, config: &WitnessConfig) -> Result<WitnessSearch, CycleSpaceError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(CycleSpaceError::BadK { k: n, n });
    }
    let dim_c = cycle_space_basis(g).dim();
    let hamilton = cycle_k_space(g, n, &config.budget)?;
    let truncated = hamilton.truncated;
    if hamilton.dim() == dim_c {
        // Saturated: the Hamilton cycles span, no witness exists.
        return Ok(WitnessSearch {
            witness: None,
            truncated: false,
            hamilton_rank: hamilton.dim(),
            cycle_rank: dim_c,
        });
    }
    let complement = hamilton.basis.null_space();
    let cut = cut_space_basis(g);
    let rows = complement.rows();
    let mut best: Option<BitVector> = None;
    let full = EdgeSet::full(g).into_bits();

    // Returns true when a non-degenerate witness is settled.
    let consider = |v: &BitVector, best: &mut Option<BitVector>| -> bool {
        if v.is_zero() || cut.basis.span_contains(v).expect("width matches") {
            return false;
        }
        let degenerate = *v == full;
        match best {
            None => *best = Some(v.clone()),
            Some(b) if *b == full && !degenerate => *best = Some(v.clone()),
            _ => {}
        }
        !degenerate
    };

    'search: for depth in 1..=config.combination_depth.max(1) {
        match depth {
            1 => {
                for r in rows {
                    if consider(r, &mut best) {
                        break 'search;
                    }
                }
            }
            2 => {
                for i in 0..rows.len() {
                    for j in i + 1..rows.len() {
                        let v = rows[i].xor(&rows[j]);
                        if consider(&v, &mut best) {
                            break 'search;
                        }
                    }
                }
            }
            _ => {
                for i in 0..rows.len() {
                    for j in i + 1..rows.len() {
                        let ij = rows[i].xor(&rows[j]);
                        for row in rows.iter().skip(j + 1) {
                            let v = ij.xor(row);
                            if consider(&v, &mut best) {
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
    }

    let witness = best.map(|bits| {
        let orthogonal = hamilton.basis.rows().iter().all(|h| !h.dot(&bits));
        let in_cut = cut.basis.span_contains(&bits).expect("width matches");
        let degenerate = bits == full;
        WitnessR {
            edges: EdgeSet::from_bits(g, bits),
            certificate: WitnessCertificate {
                hamilton_rank: hamilton.dim(),
                cycle_rank: dim_c,
                orthogonal_to_hamilton_basis: orthogonal,
                outside_cut_space: !in_cut,
            },
            normalized: false,
            degenerate,
        }
    });
    Ok(WitnessSearch {
        witness,
        truncated,
        hamilton_rank: hamilton.dim(),
        cycle_rank: dim_c,
    })
}

/// Greedy min-degree normalization: while some vertex has fewer than half
/// its incident edges in R, XOR in its star. |R| grows strictly at every
/// flip, so this terminates; the output stays in the same coset of the cut
/// space, preserving both the even-intersection property and non-cut
/// membership.
#[must_use]
pub fn normalize_witness(g: &Graph, r: &WitnessR) -> WitnessR {
    let mut edges = r.edges.clone();
    loop {
        let mut flipped = false;
        for v in 0..g.vertex_count() {
            let have = edges.degree_at(g, v);
            if 2 * have < g.deg(v) {
                edges.xor_assign(&g.star(v));
                flipped = true;
            }
        }
        if !flipped {
            break;
        }
    }
    let cut = cut_space_basis(g);
    let in_cut = cut.basis.span_contains(edges.bits()).expect("width matches");
    let degenerate = edges == EdgeSet::full(g);
    WitnessR {
        certificate: WitnessCertificate {
            outside_cut_space: !in_cut,
            ..r.certificate.clone()
        },
        edges,
        normalized: true,
        degenerate,
    }
}

/// Exhaustive check of the partition condition: for every partition
/// V = A ∪ B, e_R(A,B) ≥ e_G(A,B)/2 and R ≠ G[A,B]. Only feasible for small
/// n (2^(n-1) partitions); returns None above the cutoff.
#[must_use]
pub fn full_partition_condition(g: &Graph, r: &EdgeSet, max_n: usize) -> Option<bool> {
    let n = g.vertex_count();
    if n > max_n || n >= 64 {
        return None;
    }
    for a_mask in 0..(1u64 << (n.saturating_sub(1))) {
        let mut a = BitVector::zeros(n);
        for v in 0..n.saturating_sub(1) {
            if a_mask >> v & 1 == 1 {
                a.set(v);
            }
        }
        let cut = g.cut_edge_set(&a);
        if 2 * r.intersection_size(&cut) < cut.len() {
            return Some(false);
        }
        if *r == cut {
            return Some(false);
        }
    }
    Some(true)
}

/// Splits a cycle along a chord into two shorter cycles whose XOR is the
/// original cycle. Both parts contain the chord.
pub fn chord_decompose(
    g: &Graph,
    h: &Cycle,
    chord: usize,
) -> Result<(Cycle, Cycle), CycleSpaceError> {
    if chord >= g.edge_count() || h.edges().contains(chord) {
        return Err(CycleSpaceError::NotAChord { index: chord });
    }
    let (u, v) = g.edge_endpoints(chord);
    let verts = h.vertices();
    let pu = verts.iter().position(|&x| x == u);
    let pv = verts.iter().position(|&x| x == v);
    let (Some(pu), Some(pv)) = (pu, pv) else {
        return Err(CycleSpaceError::NotAChord { index: chord });
    };
    let len = verts.len();
    // Arc from pu forward to pv (inclusive), closing back via the chord.
    let mut arc1 = Vec::new();
    let mut i = pu;
    loop {
        arc1.push(verts[i]);
        if i == pv {
            break;
        }
        i = (i + 1) % len;
    }
    // Arc from pv forward to pu (inclusive).
    let mut arc2 = Vec::new();
    let mut i = pv;
    loop {
        arc2.push(verts[i]);
        if i == pu {
            break;
        }
        i = (i + 1) % len;
    }
    let c1 = Cycle::new(g, arc1)?;
    let c2 = Cycle::new(g, arc2)?;
    debug_assert_eq!(
        c1.edges().symmetric_difference(c2.edges()),
        *h.edges(),
        "chord parts must XOR back to the cycle"
    );
    Ok((c1, c2))
}

/// JSON shape for basis dumps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisDump {
    pub kind: SubspaceKind,
    pub dimension: usize,
    pub truncated: bool,
    pub rows: Vec<Vec<usize>>,
}

impl BasisDump {
    #[must_use]
    pub fn from_basis(b: &SubspaceBasis) -> Self {
        Self {
            kind: b.kind,
            dimension: b.dim(),
            truncated: b.truncated,
            rows: b.basis.rows().iter().map(BitVector::to_indices).collect(),
        }
    }
}

/// JSON shape for witness dumps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessDump {
    pub found: bool,
    pub truncated: bool,
    pub normalized: bool,
    pub degenerate: bool,
    pub edge_indices: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub hamilton_rank: usize,
    pub cycle_rank: usize,
}

impl WitnessDump {
    #[must_use]
    pub fn from_search(g: &Graph, s: &WitnessSearch) -> Self {
        match &s.witness {
            Some(w) => Self {
                found: true,
                truncated: s.truncated,
                normalized: w.normalized,
                degenerate: w.degenerate,
                edge_indices: w.edges.bits().to_indices(),
                pairs: w.edges.to_pairs(g),
                hamilton_rank: s.hamilton_rank,
                cycle_rank: s.cycle_rank,
            },
            None => Self {
                found: false,
                truncated: s.truncated,
                normalized: false,
                degenerate: false,
                edge_indices: Vec::new(),
                pairs: Vec::new(),
                hamilton_rank: s.hamilton_rank,
                cycle_rank: s.cycle_rank,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamilton::enumerate_hamilton_cycles;

    fn budget() -> HamiltonBudget {
        HamiltonBudget::generous()
    }

    #[test]
    fn cycle_space_dimensions() {
        let tree = Graph::path_graph(6);
        assert_eq!(cycle_space_basis(&tree).dim(), 0);
        assert_eq!(cycle_space_basis(&Graph::cycle_graph(5)).dim(), 1);
        assert_eq!(cycle_space_basis(&Graph::complete(5)).dim(), 6);
    }

    #[test]
    fn cycle_basis_rows_are_even_subgraphs() {
        let g = Graph::petersen();
        let basis = cycle_space_basis(&g);
        for row in basis.basis.rows() {
            let es = EdgeSet::from_bits(&g, row.clone());
            for v in 0..g.vertex_count() {
                assert_eq!(es.degree_at(&g, v) % 2, 0);
            }
        }
    }

    #[test]
    fn cut_space_dimensions_and_orthogonality() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(cut_space_basis(&k2).dim(), 1);
        let c4 = Graph::cycle_graph(4);
        let cut = cut_space_basis(&c4);
        assert_eq!(cut.dim(), 3);
        for row in cut.basis.rows() {
            assert_eq!(row.count_ones() % 2, 0, "cuts of an even cycle are even");
        }
        for g in [Graph::petersen(), Graph::complete(6), Graph::cycle_graph(7)] {
            let cyc = cycle_space_basis(&g);
            let cut = cut_space_basis(&g);
            assert_eq!(cyc.dim() + cut.dim(), g.edge_count());
            for a in cyc.basis.rows() {
                for b in cut.basis.rows() {
                    assert!(!a.dot(b), "cycle and cut bases must be orthogonal");
                }
            }
        }
    }

    #[test]
    fn cycle_k_space_ground_truths() {
        let c5 = Graph::cycle_graph(5);
        let b = cycle_k_space(&c5, 5, &budget()).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(!b.truncated);

        let pet = Graph::petersen();
        let b = cycle_k_space(&pet, 10, &budget()).unwrap();
        assert_eq!(b.dim(), 0);
        assert!(!b.truncated);

        // Oracle for K_5: reduce all 12 Hamilton cycles in one batch.
        let k5 = Graph::complete(5);
        let (cycles, res) = enumerate_hamilton_cycles(&k5, &budget());
        assert!(res.complete());
        assert_eq!(cycles.len(), 12);
        let rows: Vec<BitVector> = cycles.iter().map(|c| c.edges().bits().clone()).collect();
        let batch_rank = BitMatrix::from_rows(k5.edge_count(), rows)
            .unwrap()
            .row_reduce()
            .1;
        assert_eq!(batch_rank, 6);
        let b = cycle_k_space(&k5, 5, &budget()).unwrap();
        assert_eq!(b.dim(), 6);
    }

    #[test]
    fn spans_ground_truths() {
        assert_eq!(
            spans(&Graph::cycle_graph(7), 7, &budget()).unwrap().status,
            SpanStatus::Yes
        );
        assert_eq!(
            spans(&Graph::petersen(), 10, &budget()).unwrap().status,
            SpanStatus::No
        );
        // K_{3,3} at k = 6: brute-force comparison of dimensions.
        let g = Graph::complete_bipartite(3, 3);
        let (cycles, res) = enumerate_hamilton_cycles(&g, &budget());
        assert!(res.complete());
        let rows: Vec<BitVector> = cycles.iter().map(|c| c.edges().bits().clone()).collect();
        let rank = BitMatrix::from_rows(g.edge_count(), rows)
            .unwrap()
            .row_reduce()
            .1;
        let want = if rank == cycle_space_basis(&g).dim() {
            SpanStatus::Yes
        } else {
            SpanStatus::No
        };
        assert_eq!(spans(&g, 6, &budget()).unwrap().status, want);
    }

    #[test]
    fn truncation_is_reported_not_hidden() {
        let k7 = Graph::complete(7);
        let tight = HamiltonBudget::generous().with_max_nodes(10);
        let b = cycle_k_space(&k7, 7, &tight).unwrap();
        assert!(b.truncated);
        let s = spans(&k7, 7, &tight).unwrap();
        assert_eq!(s.status, SpanStatus::Truncated);
    }

    #[test]
    fn witness_none_on_spanning_graphs() {
        for g in [Graph::cycle_graph(5), Graph::complete(5)] {
            let s = find_witness(&g, &WitnessConfig::default()).unwrap();
            assert!(s.witness.is_none(), "no witness when C_n = C");
            assert!(!s.truncated);
        }
    }

    #[test]
    fn witness_on_petersen_is_a_non_cut() {
        let g = Graph::petersen();
        let s = find_witness(&g, &WitnessConfig::default()).unwrap();
        assert_eq!(s.hamilton_rank, 0, "Petersen has no Hamilton cycles");
        let w = s.witness.expect("C_10 = 0 so any non-cut vector works");
        assert!(w.certificate.outside_cut_space);
        assert!(w.certificate.orthogonal_to_hamilton_basis);
        assert!(!w.degenerate);
        let cut = cut_space_basis(&g);
        assert!(!cut.basis.span_contains(w.edges.bits()).unwrap());
    }

    #[test]
    fn witness_duality_on_random_small_graphs() {
        use crate::models::{sample_gnp, Seed};
        for seed in 0..40 {
            let g = sample_gnp(8, 0.5, Seed::new(seed)).unwrap();
            let span = spans(&g, 8, &budget()).unwrap();
            if span.status == SpanStatus::Truncated {
                continue;
            }
            let search = find_witness(&g, &WitnessConfig::default()).unwrap();
            assert!(!search.truncated);
            assert_eq!(
                search.witness.is_none(),
                span.status == SpanStatus::Yes,
                "duality failed on seed {seed}"
            );
            // Spanning implies bipartite or odd n (n = 8 here, so bipartite).
            if span.status == SpanStatus::Yes {
                assert!(g.bipartition().is_some());
            }
            // Any witness must have even intersection with every Hamilton cycle.
            if let Some(w) = &search.witness {
                let (cycles, res) = enumerate_hamilton_cycles(&g, &budget());
                assert!(res.complete());
                for c in &cycles {
                    assert_eq!(c.edges().intersection_size(&w.edges) % 2, 0);
                }
            }
        }
    }

    #[test]
    fn normalize_witness_on_c5_single_edge() {
        let g = Graph::cycle_graph(5);
        let r = WitnessR {
            edges: EdgeSet::from_indices(&g, &[0]).unwrap(),
            certificate: WitnessCertificate {
                hamilton_rank: 0,
                cycle_rank: 1,
                orthogonal_to_hamilton_basis: true,
                outside_cut_space: true,
            },
            normalized: false,
            degenerate: false,
        };
        let out = normalize_witness(&g, &r);
        assert!(out.normalized);
        for v in 0..5 {
            assert!(
                2 * out.edges.degree_at(&g, v) >= g.deg(v),
                "vertex {v} still below half degree"
            );
        }
        // The moves stay inside the cut-space coset.
        let diff = out.edges.symmetric_difference(&r.edges);
        let cut = cut_space_basis(&g);
        assert!(cut.basis.span_contains(diff.bits()).unwrap());
    }

    #[test]
    fn normalize_is_identity_on_satisfying_input() {
        let g = Graph::complete(4);
        let r = WitnessR {
            edges: EdgeSet::full(&g),
            certificate: WitnessCertificate {
                hamilton_rank: 0,
                cycle_rank: 3,
                orthogonal_to_hamilton_basis: false,
                outside_cut_space: false,
            },
            normalized: false,
            degenerate: true,
        };
        let out = normalize_witness(&g, &r);
        assert_eq!(out.edges, r.edges);
    }

    #[test]
    fn chord_decompose_square_with_diagonal() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let h = Cycle::new(&g, vec![0, 1, 2, 3]).unwrap();
        let chord = g.edge_index_of(0, 2).unwrap();
        let (c1, c2) = chord_decompose(&g, &h, chord).unwrap();
        assert_eq!(c1.len(), 3);
        assert_eq!(c2.len(), 3);
        assert!(c1.edges().contains(chord) && c2.edges().contains(chord));
        assert_eq!(c1.edges().symmetric_difference(c2.edges()), *h.edges());
    }

    #[test]
    fn chord_decompose_k5_lengths() {
        let g = Graph::complete(5);
        let h = Cycle::new(&g, vec![0, 1, 2, 3, 4]).unwrap();
        let chord = g.edge_index_of(1, 3).unwrap();
        let (c1, c2) = chord_decompose(&g, &h, chord).unwrap();
        assert_eq!(c1.len() + c2.len(), h.len() + 2);
        assert!(c1.len().max(c2.len()) <= h.len() - 1);
        // Non-chords are rejected.
        let on_cycle = g.edge_index_of(0, 1).unwrap();
        assert!(chord_decompose(&g, &h, on_cycle).is_err());
    }

    #[test]
    fn full_partition_condition_flags_cuts() {
        let g = Graph::cycle_graph(4);
        // A cut fails the R ≠ G[A,B] clause; so does the full edge set of a
        // bipartite graph, which equals the bipartition cut.
        let cut = g.cut_edge_set(&crate::graph::vertex_set(4, &[0]));
        assert_eq!(full_partition_condition(&g, &cut, 18), Some(false));
        assert_eq!(full_partition_condition(&g, &EdgeSet::full(&g), 18), Some(false));
        // The full edge set of a non-bipartite graph passes both clauses.
        let k4 = Graph::complete(4);
        assert_eq!(full_partition_condition(&k4, &EdgeSet::full(&k4), 18), Some(true));
        let k5 = Graph::complete(5);
        assert_eq!(full_partition_condition(&k5, &EdgeSet::full(&k5), 4), None);
    }
}
