//! The parity-switcher pipeline.
//!
//! Given a graph G and an edge set R that is neither all of E(G) nor a cut,
//! the pipeline hunts for a Hamilton cycle of G with an *odd* number of
//! R-edges. The gadget is a parity switcher W: an even cycle C with an odd
//! number of R-edges, plus vertex-disjoint connector paths joining opposite
//! cycle vertices. W admits Hamilton paths of both R-parities between two
//! antipodal terminals, so once the rest of the graph is covered by a
//! Hamilton path between those terminals, the W-path of the complementary
//! parity closes a Hamilton cycle of odd R-parity.
//!
//! Every stage re-verifies its output, and a standalone verifier
//! ([`verify_certificate`]) re-checks finished certificates from raw
//! adjacency with no code shared with the builders.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checkers::degree_split;
use crate::cyclespace::cut_space_basis;
use crate::gf2::BitVector;
use crate::graph::{Cycle, EdgeSet, Graph, GraphError, Path};
use crate::hamilton::{hamilton_path_between, HamiltonBudget, SearchStatus};
use crate::models::{sub_seed, Seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Preconditions,
    DegreeSplit,
    OddCycle,
    Connectors,
    Assemble,
    ComplementPath,
    Verify,
}

#[derive(Debug, Error)]
pub enum SwitcherError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no admissible odd-R cycle: {0}")]
    OddCycle(String),
    #[error("connector {index} failed: {reason}")]
    Connector { index: usize, reason: String },
    #[error("switcher structure invalid: {0}")]
    Structure(String),
    #[error("W has {found_even} even and {found_odd} odd Hamilton paths between its terminals; need one of each")]
    MissingParityClass { found_even: usize, found_odd: usize },
    #[error("no Hamilton path in the complement graph ({0:?})")]
    ComplementPath(SearchStatus),
    #[error("degree split failed: {0}")]
    Split(String),
    #[error("final verification failed: {0}")]
    Verify(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
#[error("pipeline failed at {stage:?}: {error}")]
pub struct PipelineFailure {
    pub stage: Stage,
    #[source]
    pub error: SwitcherError,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitMode {
    /// Split when the input graph is regular, skip otherwise.
    Auto,
    On,
    Off,
}

#[derive(Clone, Debug)]
pub struct SwitcherConfig {
    /// Cap on the switcher cycle length; None uses 10·log n/log d.
    pub cycle_len_bound: Option<usize>,
    /// Cap on individual connector lengths; None uses the cycle bound.
    pub connector_len_bound: Option<usize>,
    /// Total connector construction attempts before giving up.
    pub connector_retries: usize,
    /// Alternative paths tried per connector while backtracking.
    pub connector_alternatives: usize,
    pub split: SplitMode,
    pub split_attempts: u32,
    pub hamilton_budget: HamiltonBudget,
    /// Node cap for enumerating Hamilton paths inside W.
    pub w_enum_nodes: u64,
    pub seed: Seed,
}

impl Default for SwitcherConfig {
    fn default() -> Self {
        Self {
            cycle_len_bound: None,
            connector_len_bound: None,
            connector_retries: 200,
            connector_alternatives: 6,
            split: SplitMode::Auto,
            split_attempts: 500,
            hamilton_budget: HamiltonBudget::generous(),
            w_enum_nodes: 2_000_000,
            seed: Seed::new(0),
        }
    }
}

/// Default length cap: K·log n / log d with K = 10, floored at 6.
#[must_use]
pub fn default_cycle_len_bound(g: &Graph) -> usize {
    let n = g.vertex_count().max(3) as f64;
    let d = g.min_degree().max(2) as f64;
    ((10.0 * n.ln() / d.ln()).ceil() as usize).max(6)
}

/// The assembled gadget: even cycle, connectors, and one Hamilton path of W
/// per R-parity between the terminals.
#[derive(Clone, Debug)]
pub struct ParitySwitcher {
    pub cycle: Cycle,
    pub connectors: Vec<Path>,
    /// Sorted vertex set of W.
    pub w_vertices: Vec<usize>,
    /// v_1 and v_{k+1}: antipodal on the cycle.
    pub terminals: (usize, usize),
    pub even_path: Path,
    pub odd_path: Path,
}

fn r_parity(r: &EdgeSet, edges: &EdgeSet) -> usize {
    r.intersection_size(edges) % 2
}

/// Preconditions shared by the cycle search and the pipeline: R must not be
/// the whole edge set and must not be a cut (equivalently, must lie outside
/// the cut space; the empty set is the trivial cut).
pub fn check_r_preconditions(g: &Graph, r: &EdgeSet) -> Result<(), SwitcherError> {
    if *r == EdgeSet::full(g) {
        return Err(SwitcherError::Precondition("R equals the whole edge set".into()));
    }
    let cut = cut_space_basis(g);
    if cut.basis.span_contains(r.bits()).expect("width matches") {
        return Err(SwitcherError::Precondition(
            "R is a cut G[A,B] (it lies in the cut space)".into(),
        ));
    }
    Ok(())
}

/// Output of [`find_odd_r_cycle`]. Constructive results carry at most one
/// non-R edge; fallback results only promise even length and odd R-count.
#[derive(Clone, Debug)]
pub struct OddRCycle {
    pub cycle: Cycle,
    pub constructive: bool,
}

/// Finds an even cycle with an odd number of R-edges, of length at most
/// `max_len`.
///
/// Two constructive cases, driven by whether the spanning subgraph (V, R)
/// is bipartite:
///
/// - bipartite: pick a non-R edge of G joining the two colour classes of
///   one R-component; the shortest R-path between its endpoints has odd
///   length, so closing it with the edge gives an even cycle with exactly
///   one non-R edge.
/// - non-bipartite: take a shortest odd cycle C' of (V, R), a non-R edge
///   xy of G, disjoint R-paths from x and y to two distinct vertices of
///   C', and close through whichever arc of C' makes the total length
///   even.
///
/// Both need R to reach the closing edge through R-paths. When R is too
/// sparse or disconnected for that (the constructive cases are guaranteed
/// only under robust-connectivity hypotheses), a bounded exhaustive scan
/// over short even cycles takes over. The result is re-verified before
/// returning.
pub fn find_odd_r_cycle(g: &Graph, r: &EdgeSet, max_len: usize) -> Result<OddRCycle, SwitcherError> {
    check_r_preconditions(g, r)?;
    let n = g.vertex_count();
    let r_pairs = r.to_pairs(g);
    let rg = Graph::new(n, &r_pairs).expect("edge subset is simple");

    let constructed = match rg.bipartition() {
        Some((a, _b)) => bipartite_case(g, r, &rg, &a, max_len),
        None => non_bipartite_case(g, r, &rg, max_len),
    };
    let (cycle, constructive) = match constructed {
        Ok(c) => (c, true),
        Err(primary) => match fallback_even_cycle_scan(g, r, max_len) {
            Some(c) => (c, false),
            None => return Err(primary),
        },
    };

    // re-verify everything the construction promises
    if cycle.len() % 2 != 0 {
        return Err(SwitcherError::OddCycle(format!(
            "constructed cycle has odd length {}",
            cycle.len()
        )));
    }
    let in_r = r.intersection_size(cycle.edges());
    if in_r % 2 != 1 {
        return Err(SwitcherError::OddCycle(format!(
            "constructed cycle has even R-count {in_r}"
        )));
    }
    if constructive && cycle.len() - in_r > 1 {
        return Err(SwitcherError::OddCycle(format!(
            "constructed cycle has {} non-R edges",
            cycle.len() - in_r
        )));
    }
    if cycle.len() > max_len {
        return Err(SwitcherError::OddCycle(format!(
            "constructed cycle length {} exceeds bound {max_len}",
            cycle.len()
        )));
    }
    Ok(OddRCycle { cycle, constructive })
}

/// Budgeted scan over even cycle lengths, shortest first, for any cycle
/// with odd R-count.
fn fallback_even_cycle_scan(g: &Graph, r: &EdgeSet, max_len: usize) -> Option<Cycle> {
    use crate::hamilton::for_each_cycle_of_len;
    use std::ops::ControlFlow;
    use std::time::Duration;
    let budget = HamiltonBudget::new(2_000_000, usize::MAX, Duration::from_secs(10));
    let mut found: Option<Cycle> = None;
    for k in (4..=max_len.min(g.vertex_count())).step_by(2) {
        for_each_cycle_of_len(g, k, &budget, |c| {
            if r.intersection_size(c.edges()) % 2 == 1 {
                found = Some(c.clone());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

fn bipartite_case(
    g: &Graph,
    r: &EdgeSet,
    rg: &Graph,
    class_a: &[usize],
    max_len: usize,
) -> Result<Cycle, SwitcherError> {
    let n = g.vertex_count();
    let mut colour = vec![false; n];
    for &v in class_a {
        colour[v] = true;
    }
    let comps = rg.components();
    let mut comp_of = vec![usize::MAX; n];
    for (i, block) in comps.iter().enumerate() {
        for &v in block {
            comp_of[v] = i;
        }
    }
    // candidate closing edges: non-R edges of G joining the two colour
    // classes within one R-component
    let mut best: Option<Path> = None;
    let none = BitVector::zeros(n);
    for (i, (u, v)) in g.edges().enumerate() {
        if r.contains(i) || comp_of[u] != comp_of[v] || colour[u] == colour[v] {
            continue;
        }
        if let Some(path) = rg.shortest_path(u, v, &none) {
            if path.len() + 1 <= max_len
                && best.as_ref().is_none_or(|b| path.len() < b.len())
            {
                best = Some(path);
            }
        }
    }
    let path = best.ok_or_else(|| {
        SwitcherError::OddCycle(
            "R is bipartite and no closable cross-class non-R edge exists within the length bound"
                .into(),
        )
    })?;
    // odd path + closing edge = even cycle
    Cycle::new(g, path.vertices().to_vec()).map_err(SwitcherError::Graph)
}

/// Shortest odd closed walk in `rg`, as a vertex list; extracted to a simple
/// odd cycle.
fn shortest_odd_cycle(rg: &Graph) -> Option<Vec<usize>> {
    let n = rg.vertex_count();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        // BFS with parents
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in rg.neighbours(u) {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        for (a, b) in rg.edges() {
            if dist[a] == usize::MAX || dist[b] == usize::MAX {
                continue;
            }
            let walk_len = dist[a] + dist[b] + 1;
            if walk_len % 2 == 0 {
                continue;
            }
            if best.as_ref().is_some_and(|c| c.len() <= walk_len) {
                continue;
            }
            // build the closed walk s..a, b..s
            let mut left = vec![a];
            let mut cur = a;
            while cur != s {
                cur = parent[cur];
                left.push(cur);
            }
            left.reverse(); // s .. a
            let mut right = vec![b];
            let mut cur = b;
            while cur != s {
                cur = parent[cur];
                right.push(cur);
            }
            // right is b .. s; append skipping the duplicate s at the end
            let mut walk = left;
            walk.extend(right.into_iter().take_while(|&v| v != s));
            // walk is a closed odd walk (s .. a b .. back); extract a simple
            // odd cycle by splitting at repeated vertices
            let cycle = extract_odd_cycle(walk);
            if best.as_ref().is_none_or(|c| cycle.len() < c.len()) {
                best = Some(cycle);
            }
        }
    }
    best
}

/// Splits a closed odd walk at repeated vertices until simple. The walk is
/// a cyclic vertex list; at least one split part is always odd.
fn extract_odd_cycle(mut walk: Vec<usize>) -> Vec<usize> {
    'outer: loop {
        debug_assert!(walk.len() % 2 == 1);
        let mut pos = std::collections::HashMap::new();
        for (i, &v) in walk.iter().enumerate() {
            if let Some(&j) = pos.get(&v) {
                // two closed sub-walks: walk[j..i] and the rest
                let inner: Vec<usize> = walk[j..i].to_vec();
                let outer: Vec<usize> = walk[..j].iter().chain(&walk[i..]).copied().collect();
                walk = if inner.len() % 2 == 1 { inner } else { outer };
                continue 'outer;
            }
            pos.insert(v, i);
        }
        return walk;
    }
}

fn non_bipartite_case(
    g: &Graph,
    r: &EdgeSet,
    rg: &Graph,
    max_len: usize,
) -> Result<Cycle, SwitcherError> {
    let n = g.vertex_count();
    let core = shortest_odd_cycle(rg)
        .ok_or_else(|| SwitcherError::OddCycle("no odd cycle in a non-bipartite R?".into()))?;
    let mut on_core = vec![false; n];
    for &v in &core {
        on_core[v] = true;
    }

    // try every non-R edge of G, both endpoint orders
    for (i, (eu, ev)) in g.edges().enumerate() {
        if r.contains(i) {
            continue;
        }
        for (x, y) in [(eu, ev), (ev, eu)] {
            if let Some(cycle) = attach_via_core(g, rg, &core, &on_core, x, y, max_len) {
                let in_r = r.intersection_size(cycle.edges());
                if cycle.len() % 2 == 0 && in_r % 2 == 1 && cycle.len() <= max_len {
                    return Ok(cycle);
                }
            }
        }
    }
    Err(SwitcherError::OddCycle(
        "no non-R edge could be attached to the shortest odd R-cycle within the bound".into(),
    ))
}

/// Attempts the non-bipartite closing: R-paths from x and from y to two
/// distinct core vertices (internally avoiding the core and each other),
/// closed through the core arc of the parity that makes the total even.
fn attach_via_core(
    g: &Graph,
    rg: &Graph,
    core: &[usize],
    on_core: &[bool],
    x: usize,
    y: usize,
    max_len: usize,
) -> Option<Cycle> {
    let n = rg.vertex_count();
    // path from x into the core, avoiding y
    let px: Vec<usize> = if on_core[x] {
        vec![x]
    } else {
        let mut forbidden = BitVector::zeros(n);
        forbidden.set(y);
        bfs_to_set(rg, x, on_core, &forbidden)?
    };
    let u = *px.last().unwrap();
    // path from y into the core minus u, avoiding all of px
    let py: Vec<usize> = if on_core[y] && y != u {
        vec![y]
    } else if on_core[y] {
        return None; // y == u: cannot reuse the same core vertex
    } else {
        let mut forbidden = BitVector::zeros(n);
        for &v in &px {
            forbidden.set(v);
        }
        let mut target = on_core.to_vec();
        target[u] = false;
        bfs_to_set(rg, y, &target, &forbidden)?
    };
    let v = *py.last().unwrap();
    debug_assert_ne!(u, v);

    // arcs of the core between u and v
    let pu = core.iter().position(|&c| c == u).unwrap();
    let pv = core.iter().position(|&c| c == v).unwrap();
    let len = core.len();
    let mut arc1 = Vec::new(); // u -> v forward (exclusive of u, v)
    let mut i = (pu + 1) % len;
    while i != pv {
        arc1.push(core[i]);
        i = (i + 1) % len;
    }
    let mut arc2 = Vec::new(); // u -> v backward
    let mut i = (pu + len - 1) % len;
    while i != pv {
        arc2.push(core[i]);
        i = (i + len - 1) % len;
    }

    // total = |px|-1 + 1 + |py|-1 + (arc + 1) edges; choose arc parity so
    // the cycle is even
    let base = (px.len() - 1) + 1 + (py.len() - 1) + 1;
    let pick_even = |arc: &Vec<usize>| (base + arc.len()) % 2 == 0;
    let arcs = if pick_even(&arc1) { [&arc1, &arc2] } else { [&arc2, &arc1] };
    for arc in arcs {
        if !pick_even(arc) {
            continue;
        }
        // assemble u..x, y..v, arc v->u
        let mut vertices: Vec<usize> = px.iter().rev().copied().collect(); // u .. x
        vertices.extend(py.iter().copied()); // y .. v
        vertices.extend(arc.iter().rev().copied()); // arc back to u (exclusive)
        if vertices.len() > max_len {
            continue;
        }
        if let Ok(cycle) = Cycle::new(g, vertices) {
            return Some(cycle);
        }
    }
    None
}

/// BFS from `start` through non-target vertices until hitting a target;
/// returns start..target inclusive.
fn bfs_to_set(
    rg: &Graph,
    start: usize,
    target: &[bool],
    forbidden: &BitVector,
) -> Option<Vec<usize>> {
    let n = rg.vertex_count();
    if forbidden.get(start) {
        return None;
    }
    let mut parent = vec![usize::MAX; n];
    parent[start] = start;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in rg.neighbours(u) {
            let w = w as usize;
            if parent[w] != usize::MAX || forbidden.get(w) {
                continue;
            }
            parent[w] = u;
            if target[w] {
                let mut path = vec![w];
                let mut cur = w;
                while cur != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            // targets are only endpoints, never interior
            queue.push_back(w);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectorMode<'a> {
    Plain,
    /// Internal vertices restricted to the given set.
    Restricted(&'a BitVector),
}

/// Builds the connector paths P_2..P_k for an even cycle
/// C = (v_1..v_{2k}): P_i joins v_i and v_{2k-i+2}, all pairwise
/// vertex-disjoint, internally avoiding C and `reserved`.
///
/// Sequential BFS, shortest first, with bounded backtracking: when a
/// connector cannot be routed, the previous one is rebuilt along its next
/// alternative (found by banning one internal vertex at a time, or the
/// direct edge).
pub fn build_connectors(
    g: &Graph,
    c: &Cycle,
    reserved: &BitVector,
    mode: ConnectorMode<'_>,
    config: &SwitcherConfig,
) -> Result<Vec<Path>, SwitcherError> {
    let n = g.vertex_count();
    let len = c.len();
    if len % 2 != 0 {
        return Err(SwitcherError::Structure("cycle must be even".into()));
    }
    let k = len / 2;
    if k < 2 {
        return Ok(Vec::new());
    }
    let verts = c.vertices();
    let len_bound = config
        .connector_len_bound
        .unwrap_or_else(|| default_cycle_len_bound(g));

    // base forbidden set: the whole cycle plus reserved vertices
    let mut base_forbidden = reserved.clone();
    for &v in verts {
        base_forbidden.set(v);
    }

    let endpoint = |i: usize| (verts[i - 1], verts[2 * k - i + 1]);

    // BFS for one connector given the current used-set and an alternative
    // index: alt 0 is the shortest path; alt t >= 1 bans the t-th internal
    // vertex of the alt-0 path (or the direct edge if there is none).
    let route = |used: &BitVector, i: usize, alt: usize| -> Option<Path> {
        let (a, b) = endpoint(i);
        let mut forbidden = base_forbidden.clone();
        forbidden.or_assign(used);
        if let ConnectorMode::Restricted(allowed) = mode {
            let mut blocked = allowed.complement();
            blocked.clear(a);
            blocked.clear(b);
            forbidden.or_assign(&blocked);
        }
        forbidden.clear(a);
        forbidden.clear(b);
        let shortest = connector_bfs(g, a, b, &forbidden, false)?;
        let path = if alt == 0 {
            shortest
        } else if shortest.len() == 1 {
            // direct edge: the only alternative family avoids that edge
            if alt > 1 {
                return None;
            }
            connector_bfs(g, a, b, &forbidden, true)?
        } else {
            let internals: Vec<usize> = shortest.vertices()[1..shortest.vertices().len() - 1].to_vec();
            if alt > internals.len() {
                return None;
            }
            let mut f2 = forbidden.clone();
            f2.set(internals[alt - 1]);
            connector_bfs(g, a, b, &f2, false)?
        };
        (path.len() <= len_bound).then_some(path)
    };

    // depth-first assembly over connector indices with per-connector
    // alternative counters
    let mut alts = vec![0usize; k + 1];
    let mut built: Vec<Path> = Vec::new();
    let mut used = BitVector::zeros(n);
    let mut tries = 0usize;
    let mut i = 2;
    while i <= k {
        tries += 1;
        if tries > config.connector_retries {
            return Err(SwitcherError::Connector {
                index: i,
                reason: format!("retry budget {} exhausted", config.connector_retries),
            });
        }
        match route(&used, i, alts[i]) {
            Some(path) => {
                for &v in &path.vertices()[1..path.vertices().len() - 1] {
                    used.set(v);
                }
                built.push(path);
                i += 1;
            }
            None => {
                // backtrack: advance the previous connector's alternative
                alts[i] = 0;
                loop {
                    if i == 2 {
                        return Err(SwitcherError::Connector {
                            index: 2,
                            reason: "no routing survives backtracking".into(),
                        });
                    }
                    i -= 1;
                    let prev = built.pop().expect("built tracks index");
                    for &v in &prev.vertices()[1..prev.vertices().len() - 1] {
                        used.clear(v);
                    }
                    if alts[i] + 1 <= config.connector_alternatives {
                        alts[i] += 1;
                        break;
                    }
                    alts[i] = 0;
                }
            }
        }
    }
    Ok(built)
}

/// Plain BFS between two vertices avoiding a vertex set; optionally bans the
/// direct a-b edge.
fn connector_bfs(
    g: &Graph,
    a: usize,
    b: usize,
    forbidden: &BitVector,
    ban_direct: bool,
) -> Option<Path> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    parent[a] = a;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            let w = w as usize;
            if parent[w] != usize::MAX || (w != b && forbidden.get(w)) {
                continue;
            }
            if ban_direct && u == a && w == b {
                continue;
            }
            parent[w] = u;
            if w == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Path::new(g, path).ok();
            }
            queue.push_back(w);
        }
    }
    None
}

/// Validates the switcher structure and finds one Hamilton path of W per
/// R-parity between the terminals, by exhaustive enumeration inside W.
pub fn assemble_switcher(
    g: &Graph,
    r: &EdgeSet,
    c: &Cycle,
    connectors: &[Path],
) -> Result<ParitySwitcher, SwitcherError> {
    let n = g.vertex_count();
    let len = c.len();
    if len % 2 != 0 || len < 4 {
        return Err(SwitcherError::Structure(format!(
            "cycle length {len} is not even and >= 4"
        )));
    }
    if r.intersection_size(c.edges()) % 2 != 1 {
        return Err(SwitcherError::Structure("cycle has even R-count".into()));
    }
    let k = len / 2;
    if connectors.len() != k - 1 {
        return Err(SwitcherError::Structure(format!(
            "expected {} connectors, got {}",
            k - 1,
            connectors.len()
        )));
    }
    let verts = c.vertices();
    let mut on_cycle = vec![false; n];
    for &v in verts {
        on_cycle[v] = true;
    }
    let mut used = vec![false; n];
    for (j, p) in connectors.iter().enumerate() {
        let i = j + 2;
        let want = (verts[i - 1], verts[2 * k - i + 1]);
        let got = p.endpoints();
        if got != want && (got.1, got.0) != want {
            return Err(SwitcherError::Structure(format!(
                "connector {i} joins {got:?}, expected {want:?}"
            )));
        }
        for &v in &p.vertices()[1..p.vertices().len() - 1] {
            if on_cycle[v] {
                return Err(SwitcherError::Structure(format!(
                    "connector {i} passes through cycle vertex {v}"
                )));
            }
            if used[v] {
                return Err(SwitcherError::Structure(format!(
                    "connectors share internal vertex {v}"
                )));
            }
            used[v] = true;
        }
        for e in p.edges().indices() {
            if c.edges().contains(e) {
                return Err(SwitcherError::Structure(format!(
                    "connector {i} reuses a cycle edge"
                )));
            }
        }
    }

    // W as its own graph
    let mut w_vertices: Vec<usize> = verts.to_vec();
    w_vertices.extend((0..n).filter(|&v| used[v]));
    w_vertices.sort_unstable();
    let mut w_index = vec![usize::MAX; n];
    for (i, &v) in w_vertices.iter().enumerate() {
        w_index[v] = i;
    }
    let mut w_edges: Vec<(usize, usize)> = Vec::new();
    let mut push_edges = |vs: &[usize], cyclic: bool| {
        for t in 0..vs.len() - if cyclic { 0 } else { 1 } {
            let a = vs[t];
            let b = vs[(t + 1) % vs.len()];
            w_edges.push((w_index[a], w_index[b]));
        }
    };
    push_edges(verts, true);
    for p in connectors {
        push_edges(p.vertices(), false);
    }
    let w_graph = Graph::new(w_vertices.len(), &w_edges)
        .map_err(|e| SwitcherError::Structure(format!("W is not simple: {e}")))?;

    let terminals = (verts[0], verts[k]);
    let (t1, t2) = (w_index[terminals.0], w_index[terminals.1]);

    // exhaustive Hamilton-path enumeration inside W, stopping once both
    // parities are seen
    let mut even_path: Option<Vec<usize>> = None;
    let mut odd_path: Option<Vec<usize>> = None;
    let mut found_even = 0usize;
    let mut found_odd = 0usize;
    enumerate_w_paths(&w_graph, t1, t2, &mut |w_path| {
        let g_path: Vec<usize> = w_path.iter().map(|&i| w_vertices[i]).collect();
        let path = Path::new(g, g_path).expect("W path is valid in g");
        if r_parity(r, path.edges()) == 0 {
            found_even += 1;
            even_path.get_or_insert_with(|| path.vertices().to_vec());
        } else {
            found_odd += 1;
            odd_path.get_or_insert_with(|| path.vertices().to_vec());
        }
        even_path.is_some() && odd_path.is_some()
    });
    match (even_path, odd_path) {
        (Some(e), Some(o)) => Ok(ParitySwitcher {
            cycle: c.clone(),
            connectors: connectors.to_vec(),
            w_vertices,
            terminals,
            even_path: Path::new(g, e)?,
            odd_path: Path::new(g, o)?,
        }),
        _ => Err(SwitcherError::MissingParityClass {
            found_even,
            found_odd,
        }),
    }
}

/// DFS over all Hamilton t1->t2 paths of a small graph. The visitor returns
/// true to stop.
fn enumerate_w_paths(w: &Graph, t1: usize, t2: usize, visit: &mut impl FnMut(&[usize]) -> bool) {
    let n = w.vertex_count();
    let mut on = vec![false; n];
    let mut path = vec![t1];
    on[t1] = true;
    fn dfs(
        w: &Graph,
        t2: usize,
        path: &mut Vec<usize>,
        on: &mut Vec<bool>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        let cur = *path.last().unwrap();
        if path.len() == w.vertex_count() {
            return cur == t2 && visit(path);
        }
        for &next in w.neighbours(cur) {
            let next = next as usize;
            if on[next] || (next == t2 && path.len() != w.vertex_count() - 1) {
                continue;
            }
            on[next] = true;
            path.push(next);
            if dfs(w, t2, path, on, visit) {
                return true;
            }
            path.pop();
            on[next] = false;
        }
        false
    }
    dfs(w, t2, &mut path, &mut on, visit);
}

/// A self-contained, JSON-serializable certificate of one pipeline run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SwitcherCertificate {
    pub n: usize,
    pub r_edge_indices: Vec<usize>,
    pub cycle: Vec<usize>,
    pub connectors: Vec<Vec<usize>>,
    pub even_path: Vec<usize>,
    pub odd_path: Vec<usize>,
    pub hamilton_cycle: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PipelineSuccess {
    pub cycle: Cycle,
    pub switcher: ParitySwitcher,
    pub certificate: SwitcherCertificate,
    pub split_used: bool,
}

/// Runs the full pipeline: find an odd-R even cycle, reserve half the
/// remaining vertices when splitting, route connectors, assemble W, cover
/// the complement with a Hamilton path between the terminals, and close
/// with the W-path of complementary parity. The returned Hamilton cycle is
/// re-verified to have odd R-count before returning.
pub fn odd_parity_hamilton(
    g: &Graph,
    r: &EdgeSet,
    config: &SwitcherConfig,
) -> Result<PipelineSuccess, PipelineFailure> {
    let fail = |stage: Stage| move |error: SwitcherError| PipelineFailure { stage, error };
    check_r_preconditions(g, r).map_err(fail(Stage::Preconditions))?;

    let n = g.vertex_count();
    let bound = config
        .cycle_len_bound
        .unwrap_or_else(|| default_cycle_len_bound(g));
    let cycle = find_odd_r_cycle(g, r, bound)
        .map_err(fail(Stage::OddCycle))?
        .cycle;

    // optional degree split: reserve a half A of the non-cycle vertices for
    // the final path; connectors stay inside B = V \ A
    let do_split = match config.split {
        SplitMode::On => true,
        SplitMode::Off => false,
        SplitMode::Auto => g.regular_degree().is_some(),
    };
    let mut reserved = BitVector::zeros(n);
    let mut allowed_b: Option<BitVector> = None;
    let mut split_used = false;
    if do_split {
        let on_cycle: Vec<bool> = {
            let mut v = vec![false; n];
            for &u in cycle.vertices() {
                v[u] = true;
            }
            v
        };
        let y: Vec<usize> = (0..n).filter(|&v| !on_cycle[v]).collect();
        if y.len() >= 4 {
            let a = y.len() / 2;
            let b = y.len() - a;
            match degree_split(g, &y, a, b, sub_seed(config.seed, 11), config.split_attempts) {
                Ok(split) => {
                    for &v in &split.a_set {
                        reserved.set(v);
                    }
                    allowed_b = Some(reserved.complement());
                    split_used = true;
                }
                Err(e) => {
                    if config.split == SplitMode::On {
                        return Err(PipelineFailure {
                            stage: Stage::DegreeSplit,
                            error: SwitcherError::Split(e.to_string()),
                        });
                    }
                    // Auto mode: continue without the reservation
                }
            }
        }
    }

    let mode = match &allowed_b {
        Some(b) => ConnectorMode::Restricted(b),
        None => ConnectorMode::Plain,
    };
    let connectors =
        build_connectors(g, &cycle, &reserved, mode, config).map_err(fail(Stage::Connectors))?;

    let switcher =
        assemble_switcher(g, r, &cycle, &connectors).map_err(fail(Stage::Assemble))?;

    // complement graph: everything outside W plus the two terminals
    let mut remove = BitVector::zeros(n);
    for &v in &switcher.w_vertices {
        remove.set(v);
    }
    remove.clear(switcher.terminals.0);
    remove.clear(switcher.terminals.1);
    let sub = g.induced_delete(&remove);
    let x = sub.new_of_old[switcher.terminals.0].expect("terminal survives");
    let y = sub.new_of_old[switcher.terminals.1].expect("terminal survives");
    let outcome = hamilton_path_between(
        &sub.graph,
        x,
        y,
        &config.hamilton_budget,
        sub_seed(config.seed, 13),
    );
    let Some(sub_path) = outcome.payload else {
        return Err(PipelineFailure {
            stage: Stage::ComplementPath,
            error: SwitcherError::ComplementPath(outcome.status),
        });
    };
    let g_path: Vec<usize> = sub_path
        .vertices()
        .iter()
        .map(|&v| sub.old_of_new[v])
        .collect();
    let complement_path = Path::new(g, g_path).map_err(|e| PipelineFailure {
        stage: Stage::ComplementPath,
        error: SwitcherError::Graph(e),
    })?;

    // close with the W-path of complementary parity
    let w_path = if r_parity(r, complement_path.edges()) == 0 {
        &switcher.odd_path
    } else {
        &switcher.even_path
    };
    let mut vertices = complement_path.vertices().to_vec();
    let w_rev: Vec<usize> = w_path.vertices().iter().rev().copied().collect();
    vertices.extend(&w_rev[1..w_rev.len() - 1]);
    let hamilton = Cycle::new(g, vertices).map_err(|e| PipelineFailure {
        stage: Stage::Verify,
        error: SwitcherError::Graph(e),
    })?;

    if !hamilton.is_hamiltonian(g) {
        return Err(PipelineFailure {
            stage: Stage::Verify,
            error: SwitcherError::Verify(format!(
                "closed cycle covers {} of {} vertices",
                hamilton.len(),
                n
            )),
        });
    }
    if r_parity(r, hamilton.edges()) != 1 {
        return Err(PipelineFailure {
            stage: Stage::Verify,
            error: SwitcherError::Verify("closed Hamilton cycle has even R-count".into()),
        });
    }

    let certificate = SwitcherCertificate {
        n,
        r_edge_indices: r.bits().to_indices(),
        cycle: switcher.cycle.vertices().to_vec(),
        connectors: switcher
            .connectors
            .iter()
            .map(|p| p.vertices().to_vec())
            .collect(),
        even_path: switcher.even_path.vertices().to_vec(),
        odd_path: switcher.odd_path.vertices().to_vec(),
        hamilton_cycle: hamilton.vertices().to_vec(),
    };
    Ok(PipelineSuccess {
        cycle: hamilton,
        switcher,
        certificate,
        split_used,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("certificate rejected: {reason}")]
pub struct CertificateError {
    pub reason: String,
}

fn reject(reason: impl Into<String>) -> CertificateError {
    CertificateError {
        reason: reason.into(),
    }
}

/// Independent certificate verifier.
///
/// Re-checks the switcher structure, both W-path parities and the final
/// Hamilton cycle directly against the graph's adjacency; it shares no code
/// with the pipeline builders above.
pub fn verify_certificate(g: &Graph, cert: &SwitcherCertificate) -> Result<(), CertificateError> {
    let n = g.vertex_count();
    if cert.n != n {
        return Err(reject(format!("certificate n={} but graph n={n}", cert.n)));
    }
    let m = g.edge_count();
    let mut in_r = vec![false; m];
    for &e in &cert.r_edge_indices {
        if e >= m {
            return Err(reject(format!("R edge index {e} out of range")));
        }
        in_r[e] = true;
    }
    let edge_of = |a: usize, b: usize| -> Result<usize, CertificateError> {
        if a >= n || b >= n {
            return Err(reject(format!("vertex {} out of range", a.max(b))));
        }
        g.edge_index_of(a, b)
            .ok_or_else(|| reject(format!("{a} and {b} are not adjacent")))
    };

    // cycle: even, distinct, adjacent, odd R-count
    let cyc = &cert.cycle;
    if cyc.len() < 4 || cyc.len() % 2 != 0 {
        return Err(reject(format!("cycle length {} not even and >= 4", cyc.len())));
    }
    let mut seen = vec![false; n];
    for &v in cyc {
        if v >= n {
            return Err(reject(format!("cycle vertex {v} out of range")));
        }
        if seen[v] {
            return Err(reject(format!("cycle repeats vertex {v}")));
        }
        seen[v] = true;
    }
    let mut cycle_edges = std::collections::HashSet::new();
    let mut r_count = 0usize;
    for t in 0..cyc.len() {
        let e = edge_of(cyc[t], cyc[(t + 1) % cyc.len()])?;
        cycle_edges.insert(e);
        if in_r[e] {
            r_count += 1;
        }
    }
    if r_count % 2 != 1 {
        return Err(reject(format!("cycle has even R-count {r_count}")));
    }

    // connectors
    let k = cyc.len() / 2;
    if cert.connectors.len() != k - 1 {
        return Err(reject(format!(
            "expected {} connectors, got {}",
            k - 1,
            cert.connectors.len()
        )));
    }
    let mut w_member = seen.clone(); // cycle vertices so far
    let mut w_edges = cycle_edges.clone();
    for (j, conn) in cert.connectors.iter().enumerate() {
        let i = j + 2;
        if conn.len() < 2 {
            return Err(reject(format!("connector {i} too short")));
        }
        let want = (cyc[i - 1], cyc[2 * k - i + 1]);
        let got = (conn[0], *conn.last().unwrap());
        if got != want && (got.1, got.0) != want {
            return Err(reject(format!(
                "connector {i} endpoints {got:?} do not match {want:?}"
            )));
        }
        let mut local = std::collections::HashSet::new();
        for &v in conn {
            if v >= n {
                return Err(reject(format!("connector vertex {v} out of range")));
            }
            if !local.insert(v) {
                return Err(reject(format!("connector {i} repeats vertex {v}")));
            }
        }
        for &v in &conn[1..conn.len() - 1] {
            if w_member[v] {
                return Err(reject(format!(
                    "connector {i} reuses vertex {v} of W"
                )));
            }
            w_member[v] = true;
        }
        for w in conn.windows(2) {
            let e = edge_of(w[0], w[1])?;
            if cycle_edges.contains(&e) {
                return Err(reject(format!("connector {i} uses a cycle edge")));
            }
            w_edges.insert(e);
        }
    }

    // the two W-paths: permutations of W between the terminals, using only
    // W edges, with the stated parities
    let w_size = w_member.iter().filter(|&&b| b).count();
    let terminals = (cyc[0], cyc[k]);
    for (path, want_parity, label) in [
        (&cert.even_path, 0usize, "even"),
        (&cert.odd_path, 1usize, "odd"),
    ] {
        if path.len() != w_size {
            return Err(reject(format!(
                "{label} path covers {} of {} W vertices",
                path.len(),
                w_size
            )));
        }
        if (path[0], *path.last().unwrap()) != terminals {
            return Err(reject(format!(
                "{label} path endpoints {:?} are not the terminals {terminals:?}",
                (path[0], *path.last().unwrap())
            )));
        }
        let mut visited = vec![false; n];
        for &v in path {
            if v >= n || !w_member[v] {
                return Err(reject(format!("{label} path leaves W at {v}")));
            }
            if visited[v] {
                return Err(reject(format!("{label} path repeats vertex {v}")));
            }
            visited[v] = true;
        }
        let mut parity = 0usize;
        for w in path.windows(2) {
            let e = edge_of(w[0], w[1])?;
            if !w_edges.contains(&e) {
                return Err(reject(format!(
                    "{label} path uses non-W edge {}-{}",
                    w[0], w[1]
                )));
            }
            if in_r[e] {
                parity ^= 1;
            }
        }
        if parity != want_parity {
            return Err(reject(format!("{label} path has parity {parity}")));
        }
    }

    // final Hamilton cycle with odd R-parity
    let ham = &cert.hamilton_cycle;
    if ham.len() != n {
        return Err(reject(format!(
            "hamilton cycle covers {} of {n} vertices",
            ham.len()
        )));
    }
    let mut visited = vec![false; n];
    for &v in ham {
        if v >= n {
            return Err(reject(format!("hamilton vertex {v} out of range")));
        }
        if visited[v] {
            return Err(reject(format!("hamilton cycle repeats vertex {v}")));
        }
        visited[v] = true;
    }
    let mut parity = 0usize;
    for t in 0..n {
        let e = edge_of(ham[t], ham[(t + 1) % n])?;
        if in_r[e] {
            parity ^= 1;
        }
    }
    if parity != 1 {
        return Err(reject("hamilton cycle has even R-count"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamilton::for_each_cycle_of_len;
    use std::ops::ControlFlow;

    /// All even cycles of `g` with odd R-intersection, by exhaustive scan.
    fn oracle_valid_cycles(g: &Graph, r: &EdgeSet) -> Vec<Cycle> {
        let mut out = Vec::new();
        for k in (4..=g.vertex_count()).step_by(2) {
            for_each_cycle_of_len(g, k, &HamiltonBudget::generous(), |c| {
                if r.intersection_size(c.edges()) % 2 == 1 {
                    out.push(c.clone());
                }
                ControlFlow::Continue(())
            });
        }
        out
    }

    #[test]
    fn c6_with_five_r_edges_returns_the_hexagon() {
        let g = Graph::cycle_graph(6);
        let r = EdgeSet::from_indices(&g, &[0, 1, 2, 3, 4]).unwrap();
        let c = find_odd_r_cycle(&g, &r, 10).unwrap();
        assert!(c.constructive);
        assert_eq!(c.cycle.len(), 6);
        assert_eq!(r.intersection_size(c.cycle.edges()), 5);
    }

    #[test]
    fn k4_with_spanning_path_r() {
        let g = Graph::complete(4);
        let r = EdgeSet::from_pairs(&g, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = find_odd_r_cycle(&g, &r, 10).unwrap();
        assert!(c.constructive);
        // constructive output carries at most one non-R edge
        let in_r = r.intersection_size(c.cycle.edges());
        assert!(c.cycle.len() - in_r <= 1);
        let valid = oracle_valid_cycles(&g, &r);
        assert!(
            valid.iter().any(|v| v.edges() == c.cycle.edges()),
            "returned cycle must be among the oracle's valid answers"
        );
    }

    #[test]
    fn k4_with_triangle_r_has_no_valid_cycle() {
        // Exhaustive scan shows K_4 has no even cycle with odd intersection
        // against a triangle; the constructive search must agree by failing.
        let g = Graph::complete(4);
        let r = EdgeSet::from_pairs(&g, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(oracle_valid_cycles(&g, &r).is_empty());
        assert!(find_odd_r_cycle(&g, &r, 10).is_err());
    }

    #[test]
    fn sparse_r_falls_back_to_exhaustive_scan() {
        // K_5 with a single R-edge: no cycle with exactly one non-R edge can
        // exist, but plenty of short even cycles with odd R-count do.
        let g = Graph::complete(5);
        let r = EdgeSet::from_pairs(&g, &[(0, 1)]).unwrap();
        let c = find_odd_r_cycle(&g, &r, 10).unwrap();
        assert!(!c.constructive);
        assert_eq!(c.cycle.len() % 2, 0);
        assert_eq!(r.intersection_size(c.cycle.edges()) % 2, 1);
        let valid = oracle_valid_cycles(&g, &r);
        assert!(valid.iter().any(|v| v.edges() == c.cycle.edges()));
    }

    #[test]
    fn r_equal_to_everything_is_rejected() {
        let g = Graph::complete(4);
        let r = EdgeSet::full(&g);
        assert!(matches!(
            find_odd_r_cycle(&g, &r, 10),
            Err(SwitcherError::Precondition(_))
        ));
    }

    #[test]
    fn r_equal_to_a_cut_is_rejected() {
        let g = Graph::complete(5);
        let r = EdgeSet::from_bits(&g, g.star(0).into_bits());
        assert!(matches!(
            find_odd_r_cycle(&g, &r, 10),
            Err(SwitcherError::Precondition(_))
        ));
    }

    #[test]
    fn non_bipartite_r_case_verified_by_oracle() {
        // R = 5-cycle plus a chord pattern that keeps an odd cycle
        let g = Graph::complete(6);
        let r = EdgeSet::from_pairs(&g, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let c = find_odd_r_cycle(&g, &r, 12).unwrap();
        let valid = oracle_valid_cycles(&g, &r);
        assert!(valid.iter().any(|v| v.edges() == c.cycle.edges()));
    }

    #[test]
    fn connectors_in_complete_graph() {
        let g = Graph::complete(8);
        let c = Cycle::new(&g, vec![0, 1, 2, 3]).unwrap();
        let reserved = BitVector::zeros(8);
        let conns = build_connectors(
            &g,
            &c,
            &reserved,
            ConnectorMode::Plain,
            &SwitcherConfig::default(),
        )
        .unwrap();
        assert_eq!(conns.len(), 1);
        assert_eq!(conns[0].endpoints(), (1, 3));
        // internal vertices (if any) avoid the cycle
        for &v in &conns[0].vertices()[1..conns[0].vertices().len() - 1] {
            assert!(!c.vertices().contains(&v));
        }
    }

    #[test]
    fn connector_disjointness_on_longer_cycle() {
        let g = Graph::complete(12);
        let c = Cycle::new(&g, vec![0, 1, 2, 3, 4, 5]).unwrap();
        let reserved = BitVector::zeros(12);
        let conns = build_connectors(
            &g,
            &c,
            &reserved,
            ConnectorMode::Plain,
            &SwitcherConfig::default(),
        )
        .unwrap();
        assert_eq!(conns.len(), 2);
        assert_eq!(conns[0].endpoints(), (1, 5));
        assert_eq!(conns[1].endpoints(), (2, 4));
        let mut seen = std::collections::HashSet::new();
        for p in &conns {
            for &v in &p.vertices()[1..p.vertices().len() - 1] {
                assert!(seen.insert(v), "connectors share {v}");
            }
        }
    }

    #[test]
    fn assemble_rejects_shared_connector_vertices() {
        let g = Graph::complete(10);
        let c = Cycle::new(&g, vec![0, 1, 2, 3, 4, 5]).unwrap();
        let r = EdgeSet::from_pairs(&g, &[(0, 1)]).unwrap();
        // both connectors pass through vertex 7
        let p2 = Path::new(&g, vec![1, 7, 5]).unwrap();
        let p3 = Path::new(&g, vec![2, 7, 4]).unwrap();
        assert!(matches!(
            assemble_switcher(&g, &r, &c, &[p2, p3]),
            Err(SwitcherError::Structure(_))
        ));
    }

    #[test]
    fn assembled_switcher_paths_have_opposite_parity() {
        let g = Graph::complete(10);
        // cycle 0..5 with exactly one R edge
        let c = Cycle::new(&g, vec![0, 1, 2, 3, 4, 5]).unwrap();
        let r = EdgeSet::from_pairs(&g, &[(0, 1)]).unwrap();
        let reserved = BitVector::zeros(10);
        let conns = build_connectors(
            &g,
            &c,
            &reserved,
            ConnectorMode::Plain,
            &SwitcherConfig::default(),
        )
        .unwrap();
        let sw = assemble_switcher(&g, &r, &c, &conns).unwrap();
        assert_eq!(r_parity(&r, sw.even_path.edges()), 0);
        assert_eq!(r_parity(&r, sw.odd_path.edges()), 1);
        assert_eq!(sw.terminals, (0, 3));
        // both paths cover W exactly
        let wset: std::collections::HashSet<usize> = sw.w_vertices.iter().copied().collect();
        for p in [&sw.even_path, &sw.odd_path] {
            let pset: std::collections::HashSet<usize> = p.vertices().iter().copied().collect();
            assert_eq!(pset, wset);
        }
    }

    #[test]
    fn pipeline_on_k5_single_edge_r() {
        let g = Graph::complete(5);
        let r = EdgeSet::from_pairs(&g, &[(0, 1)]).unwrap();
        let out = odd_parity_hamilton(&g, &r, &SwitcherConfig::default()).unwrap();
        assert!(out.cycle.is_hamiltonian(&g));
        assert_eq!(r_parity(&r, out.cycle.edges()), 1);
        verify_certificate(&g, &out.certificate).unwrap();
    }

    #[test]
    fn pipeline_on_k5_hamilton_r_checked_against_parity_table() {
        let g = Graph::complete(5);
        let r = EdgeSet::from_pairs(&g, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        // exhaustive parity table over all 12 Hamilton cycles
        let (cycles, res) =
            crate::hamilton::enumerate_hamilton_cycles(&g, &HamiltonBudget::generous());
        assert!(res.complete());
        let odd_exists = cycles
            .iter()
            .any(|c| r.intersection_size(c.edges()) % 2 == 1);
        assert!(odd_exists);
        let out = odd_parity_hamilton(&g, &r, &SwitcherConfig::default()).unwrap();
        assert_eq!(r_parity(&r, out.cycle.edges()), 1);
        assert!(cycles.iter().any(|c| c.edges() == out.cycle.edges()));
    }

    #[test]
    fn pipeline_never_succeeds_against_a_true_witness() {
        // K_4 with a triangle R: R is orthogonal to every Hamilton cycle, so
        // the pipeline must fail at some stage and never return a cycle.
        let g = Graph::complete(4);
        let r = EdgeSet::from_pairs(&g, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let err = odd_parity_hamilton(&g, &r, &SwitcherConfig::default()).unwrap_err();
        assert_eq!(err.stage, Stage::OddCycle);
    }

    #[test]
    fn pipeline_on_random_regular_with_half_degree_r() {
        use rand::Rng;
        let seed = Seed::new(77);
        let g = crate::models::sample_regular(24, 6, seed).unwrap().graph;
        // R: per vertex, mark 3 incident edges; union guarantees min degree 3
        let mut rng = seed.rng();
        let mut r = EdgeSet::empty(&g);
        for v in 0..24 {
            let nbs = g.neighbours(v);
            let mut picks: Vec<usize> = (0..nbs.len()).collect();
            for i in (1..picks.len()).rev() {
                let j = rng.gen_range(0..=i);
                picks.swap(i, j);
            }
            for &pi in picks.iter().take(3) {
                r.insert(g.edge_index_of(v, nbs[pi] as usize).unwrap());
            }
        }
        if check_r_preconditions(&g, &r).is_err() {
            return; // astronomically unlikely; nothing to test then
        }
        let config = SwitcherConfig {
            seed,
            ..SwitcherConfig::default()
        };
        let out = odd_parity_hamilton(&g, &r, &config).unwrap();
        assert!(out.cycle.is_hamiltonian(&g));
        assert_eq!(r_parity(&r, out.cycle.edges()), 1);
        verify_certificate(&g, &out.certificate).unwrap();
    }

    #[test]
    fn verifier_rejects_corrupted_fields() {
        let g = Graph::complete(5);
        let r = EdgeSet::from_pairs(&g, &[(0, 1)]).unwrap();
        let cert = odd_parity_hamilton(&g, &r, &SwitcherConfig::default())
            .unwrap()
            .certificate;
        verify_certificate(&g, &cert).unwrap();

        let mut bad = cert.clone();
        bad.hamilton_cycle[0] = bad.hamilton_cycle[1];
        assert!(verify_certificate(&g, &bad).is_err());

        let mut bad = cert.clone();
        std::mem::swap(&mut bad.even_path, &mut bad.odd_path);
        assert!(verify_certificate(&g, &bad).is_err());

        let mut bad = cert.clone();
        bad.cycle.pop();
        assert!(verify_certificate(&g, &bad).is_err());

        let mut bad = cert;
        bad.r_edge_indices = vec![g.edge_count()];
        assert!(verify_certificate(&g, &bad).is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let g = Graph::complete(5);
        let r = EdgeSet::from_pairs(&g, &[(0, 1)]).unwrap();
        let cert = odd_parity_hamilton(&g, &r, &SwitcherConfig::default())
            .unwrap()
            .certificate;
        let json = serde_json::to_string(&cert).unwrap();
        let back: SwitcherCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
