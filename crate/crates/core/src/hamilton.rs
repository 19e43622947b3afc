//! Hamilton cycle enumeration and Hamilton path construction.
//!
//! The enumerator is a canonical backtracking search: cycles start at vertex
//! 0 and the second vertex is required to be smaller than the last, so every
//! Hamilton cycle is emitted exactly once. Pruning is a reachability check on
//! the remaining graph plus degree-2 forcing (an unvisited vertex whose only
//! available neighbours are the current endpoint and one other vertex forces
//! the next move; two such vertices kill the branch).
//!
//! Path construction between prescribed endpoints runs a rotation-extension
//! heuristic first and falls back to exact backtracking, so a negative answer
//! is always the result of an exhaustive search.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2::BitVector;
use crate::graph::{Cycle, Graph, Path};
use crate::models::Seed;

/// Explicit resource limits; every search takes one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonBudget {
    pub max_nodes_expanded: u64,
    pub max_cycles: usize,
    pub time_limit: Duration,
}

impl HamiltonBudget {
    #[must_use]
    pub fn new(max_nodes_expanded: u64, max_cycles: usize, time_limit: Duration) -> Self {
        assert!(max_nodes_expanded > 0 && max_cycles > 0 && !time_limit.is_zero());
        Self {
            max_nodes_expanded,
            max_cycles,
            time_limit,
        }
    }

    /// Roomy default for desk-scale graphs.
    #[must_use]
    pub fn generous() -> Self {
        Self::new(200_000_000, usize::MAX, Duration::from_secs(120))
    }

    #[must_use]
    pub fn with_max_cycles(mut self, max_cycles: usize) -> Self {
        self.max_cycles = max_cycles;
        self
    }

    #[must_use]
    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes_expanded = max_nodes;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome<T> {
    pub status: SearchStatus,
    pub payload: Option<T>,
    pub stats: SearchStats,
}

impl<T> SearchOutcome<T> {
    #[must_use]
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

/// Why an enumeration stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationEnd {
    /// The search space was exhausted: the emitted set is complete.
    Exhausted,
    /// The caller's visitor stopped the enumeration early.
    CallbackStop,
    /// A budget limit tripped.
    Budget,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationResult {
    pub end: EnumerationEnd,
    pub cycles_emitted: usize,
    pub stats: SearchStats,
}

impl EnumerationResult {
    /// True iff every cycle in the class was emitted.
    #[must_use]
    pub fn complete(&self) -> bool {
        self.end == EnumerationEnd::Exhausted
    }
}

struct Searcher<'a> {
    g: &'a Graph,
    n: usize,
    adj: Vec<BitVector>,
    visited: BitVector,
    path: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, budget: &HamiltonBudget) -> Self {
        let n = g.vertex_count();
        let adj = (0..n)
            .map(|v| match g.neighbour_bits(v) {
                Some(b) => b.clone(),
                None => BitVector::from_indices(
                    n,
                    &g.neighbours(v).iter().map(|&w| w as usize).collect::<Vec<_>>(),
                ),
            })
            .collect();
        Self {
            g,
            n,
            adj,
            visited: BitVector::zeros(n),
            path: Vec::with_capacity(n),
            nodes: 0,
            max_nodes: budget.max_nodes_expanded,
            deadline: Instant::now() + budget.time_limit,
            timed_out: false,
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.max_nodes {
            self.timed_out = true;
        } else if self.nodes % 4096 == 0 && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        self.timed_out
    }

    /// All unvisited vertices (plus `also`) reachable from `from` through
    /// unvisited vertices.
    fn remaining_connected(&self, from: usize, also: usize) -> bool {
        let mut allowed = self.visited.complement();
        allowed.set(also);
        let mut reach = BitVector::zeros(self.n);
        let mut frontier = vec![from];
        reach.set(from);
        while let Some(u) = frontier.pop() {
            let mut nb = self.adj[u].clone();
            nb.and_assign(&allowed);
            nb.and_not_assign(&reach);
            for v in nb.to_indices() {
                reach.set(v);
                frontier.push(v);
            }
        }
        allowed.and_not_assign(&reach);
        allowed.clear(from);
        allowed.is_zero()
    }
}

/// Visits every Hamilton cycle of `g` exactly once.
///
/// The visitor returns [`ControlFlow::Break`] to stop early (used by the
/// rank-saturation loops). Each emitted cycle is canonical: it starts at
/// vertex 0 and its second vertex is smaller than its last.
pub fn for_each_hamilton_cycle<F>(
    g: &Graph,
    budget: &HamiltonBudget,
    mut visit: F,
) -> EnumerationResult
where
    F: FnMut(&Cycle) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    let start = Instant::now();
    if n < 3 {
        return EnumerationResult {
            end: EnumerationEnd::Exhausted,
            cycles_emitted: 0,
            stats: SearchStats {
                nodes_expanded: 0,
                elapsed: start.elapsed(),
            },
        };
    }
    let mut s = Searcher::new(g, budget);
    s.visited.set(0);
    s.path.push(0);
    let mut emitted = 0usize;
    let mut end = EnumerationEnd::Exhausted;

    fn dfs<F: FnMut(&Cycle) -> ControlFlow<()>>(
        s: &mut Searcher,
        visit: &mut F,
        emitted: &mut usize,
        max_cycles: usize,
        end: &mut EnumerationEnd,
    ) -> ControlFlow<()> {
        if s.tick() {
            *end = EnumerationEnd::Budget;
            return ControlFlow::Break(());
        }
        let current = *s.path.last().unwrap();
        if s.path.len() == s.n {
            if s.adj[current].get(0) && s.path[1] < s.path[s.n - 1] {
                let cycle = Cycle::new(s.g, s.path.clone()).expect("search path is a valid cycle");
                *emitted += 1;
                if visit(&cycle) == ControlFlow::Break(()) {
                    *end = EnumerationEnd::CallbackStop;
                    return ControlFlow::Break(());
                }
                if *emitted >= max_cycles {
                    *end = EnumerationEnd::Budget;
                    return ControlFlow::Break(());
                }
            }
            return ControlFlow::Continue(());
        }

        // Candidate moves: unvisited neighbours of the endpoint.
        let mut cand = s.adj[current].clone();
        cand.and_not_assign(&s.visited);
        if cand.is_zero() {
            return ControlFlow::Continue(());
        }

        // Degree prune and forcing. A vertex's available neighbours are the
        // unvisited ones plus the current endpoint plus vertex 0 (which can
        // still serve as the closing neighbour). Forcing only applies once
        // the endpoint's predecessor is fixed: at the root, vertex 0 still
        // has both cycle slots free, so a degree-2 neighbour of 0 may close
        // the cycle instead of starting it.
        let remaining = s.n - s.path.len();
        let mut forced: Option<usize> = None;
        if remaining >= 2 {
            let mut avail_mask = s.visited.complement();
            avail_mask.set(current);
            avail_mask.set(0);
            let may_force = s.path.len() >= 2;
            let mut forced_count = 0;
            for v in 0..s.n {
                if s.visited.get(v) {
                    continue;
                }
                let avail = s.adj[v].and_count(&avail_mask);
                if avail < 2 {
                    return ControlFlow::Continue(());
                }
                if may_force && avail == 2 && cand.get(v) {
                    forced_count += 1;
                    forced = Some(v);
                }
            }
            if forced_count >= 2 {
                return ControlFlow::Continue(());
            }
            if !s.remaining_connected(current, 0) {
                return ControlFlow::Continue(());
            }
        }

        let moves: Vec<usize> = match forced {
            Some(v) => vec![v],
            None => cand.to_indices(),
        };
        for v in moves {
            s.visited.set(v);
            s.path.push(v);
            let flow = dfs(s, visit, emitted, max_cycles, end);
            s.path.pop();
            s.visited.clear(v);
            flow?;
        }
        ControlFlow::Continue(())
    }

    let _ = dfs(&mut s, &mut visit, &mut emitted, budget.max_cycles, &mut end);
    EnumerationResult {
        end,
        cycles_emitted: emitted,
        stats: SearchStats {
            nodes_expanded: s.nodes,
            elapsed: start.elapsed(),
        },
    }
}

/// Collects all Hamilton cycles (use budgets to cap the materialised list).
pub fn enumerate_hamilton_cycles(g: &Graph, budget: &HamiltonBudget) -> (Vec<Cycle>, EnumerationResult) {
    let mut cycles = Vec::new();
    let result = for_each_hamilton_cycle(g, budget, |c| {
        cycles.push(c.clone());
        ControlFlow::Continue(())
    });
    (cycles, result)
}

/// Visits every cycle of length exactly `k` once (canonical form: rooted at
/// the cycle's smallest vertex, direction fixed by second < last).
pub fn for_each_cycle_of_len<F>(
    g: &Graph,
    k: usize,
    budget: &HamiltonBudget,
    mut visit: F,
) -> EnumerationResult
where
    F: FnMut(&Cycle) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    assert!(k >= 3, "cycles have length at least 3");
    if k == n {
        return for_each_hamilton_cycle(g, budget, visit);
    }
    let start = Instant::now();
    if k > n {
        return EnumerationResult {
            end: EnumerationEnd::Exhausted,
            cycles_emitted: 0,
            stats: SearchStats {
                nodes_expanded: 0,
                elapsed: start.elapsed(),
            },
        };
    }
    let mut s = Searcher::new(g, budget);
    let mut emitted = 0usize;
    let mut end = EnumerationEnd::Exhausted;

    struct KCtx {
        k: usize,
        root: usize,
        dist_to_root: Vec<u32>,
    }

    fn dfs<F: FnMut(&Cycle) -> ControlFlow<()>>(
        s: &mut Searcher,
        ctx: &KCtx,
        visit: &mut F,
        emitted: &mut usize,
        max_cycles: usize,
        end: &mut EnumerationEnd,
    ) -> ControlFlow<()> {
        if s.tick() {
            *end = EnumerationEnd::Budget;
            return ControlFlow::Break(());
        }
        let current = *s.path.last().unwrap();
        if s.path.len() == ctx.k {
            if s.adj[current].get(ctx.root) && s.path[1] < s.path[ctx.k - 1] {
                let cycle = Cycle::new(s.g, s.path.clone()).expect("valid k-cycle");
                *emitted += 1;
                if visit(&cycle) == ControlFlow::Break(()) {
                    *end = EnumerationEnd::CallbackStop;
                    return ControlFlow::Break(());
                }
                if *emitted >= max_cycles {
                    *end = EnumerationEnd::Budget;
                    return ControlFlow::Break(());
                }
            }
            return ControlFlow::Continue(());
        }
        let remaining = ctx.k - s.path.len();
        let mut cand = s.adj[current].clone();
        cand.and_not_assign(&s.visited);
        for v in cand.to_indices() {
            if v <= ctx.root {
                continue;
            }
            // Must still be able to get back to the root in time.
            if ctx.dist_to_root[v] as usize > remaining {
                continue;
            }
            s.visited.set(v);
            s.path.push(v);
            let flow = dfs(s, ctx, visit, emitted, max_cycles, end);
            s.path.pop();
            s.visited.clear(v);
            flow?;
        }
        ControlFlow::Continue(())
    }

    'roots: for root in 0..n {
        // BFS distances to the root inside the subgraph of vertices > root.
        let mut dist = vec![u32::MAX; n];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                let w = w as usize;
                if w > root && dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let ctx = KCtx {
            k,
            root,
            dist_to_root: dist,
        };
        s.visited.set(root);
        s.path.push(root);
        let flow = dfs(&mut s, &ctx, &mut visit, &mut emitted, budget.max_cycles, &mut end);
        s.path.pop();
        s.visited.clear(root);
        if flow == ControlFlow::Break(()) {
            break 'roots;
        }
    }
    EnumerationResult {
        end,
        cycles_emitted: emitted,
        stats: SearchStats {
            nodes_expanded: s.nodes,
            elapsed: start.elapsed(),
        },
    }
}

/// Exact backtracking search for a Hamilton path from `x` to `y`.
///
/// `ExhaustedNone` is a proof that no such path exists.
pub fn hamilton_path_between_exact(
    g: &Graph,
    x: usize,
    y: usize,
    budget: &HamiltonBudget,
) -> SearchOutcome<Path> {
    assert!(x != y, "endpoints must differ");
    let n = g.vertex_count();
    let start = Instant::now();
    if n == 2 {
        let status = if g.has_edge(x, y) {
            SearchStatus::Found
        } else {
            SearchStatus::ExhaustedNone
        };
        return SearchOutcome {
            status,
            payload: (status == SearchStatus::Found)
                .then(|| Path::new(g, vec![x, y]).unwrap()),
            stats: SearchStats {
                nodes_expanded: 1,
                elapsed: start.elapsed(),
            },
        };
    }
    let mut s = Searcher::new(g, budget);
    s.visited.set(x);
    s.path.push(x);
    let mut found: Option<Vec<usize>> = None;

    fn dfs(s: &mut Searcher, y: usize, found: &mut Option<Vec<usize>>) -> ControlFlow<bool> {
        if s.tick() {
            return ControlFlow::Break(false);
        }
        let current = *s.path.last().unwrap();
        if s.path.len() == s.n {
            return if current == y {
                *found = Some(s.path.clone());
                ControlFlow::Break(true)
            } else {
                ControlFlow::Continue(())
            };
        }
        let last_step = s.path.len() == s.n - 1;
        let mut cand = s.adj[current].clone();
        cand.and_not_assign(&s.visited);
        if !last_step {
            // y is only allowed as the final vertex.
            if cand.get(y) {
                cand.clear(y);
            }
            if cand.is_zero() {
                return ControlFlow::Continue(());
            }
            let mut avail_mask = s.visited.complement();
            avail_mask.set(current);
            let mut forced: Option<usize> = None;
            let mut forced_count = 0;
            for v in 0..s.n {
                if s.visited.get(v) {
                    continue;
                }
                let avail = s.adj[v].and_count(&avail_mask);
                let need = if v == y { 1 } else { 2 };
                if avail < need {
                    return ControlFlow::Continue(());
                }
                if v != y && avail == 2 && cand.get(v) {
                    forced_count += 1;
                    forced = Some(v);
                }
            }
            if forced_count >= 2 {
                return ControlFlow::Continue(());
            }
            if !s.remaining_connected(current, y) {
                return ControlFlow::Continue(());
            }
            if let Some(v) = forced {
                s.visited.set(v);
                s.path.push(v);
                let flow = dfs(s, y, found);
                s.path.pop();
                s.visited.clear(v);
                return flow;
            }
        } else if !cand.get(y) {
            return ControlFlow::Continue(());
        } else {
            cand = BitVector::from_indices(s.n, &[y]);
        }
        for v in cand.to_indices() {
            s.visited.set(v);
            s.path.push(v);
            let flow = dfs(s, y, found);
            s.path.pop();
            s.visited.clear(v);
            flow?;
        }
        ControlFlow::Continue(())
    }

    let outcome = dfs(&mut s, y, &mut found);
    let stats = SearchStats {
        nodes_expanded: s.nodes,
        elapsed: start.elapsed(),
    };
    match outcome {
        ControlFlow::Break(true) => SearchOutcome {
            status: SearchStatus::Found,
            payload: Some(Path::new(g, found.expect("success recorded a path")).expect("search path is valid")),
            stats,
        },
        ControlFlow::Break(false) => SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            payload: None,
            stats,
        },
        ControlFlow::Continue(()) => SearchOutcome {
            status: SearchStatus::ExhaustedNone,
            payload: None,
            stats,
        },
    }
}

/// Rotation-extension heuristic: grow a path from `x`, Pósa-rotate the free
/// endpoint when stuck, then rotate until `y` is the endpoint.
fn posa_heuristic(
    g: &Graph,
    x: usize,
    y: usize,
    step_cap: u64,
    rng: &mut ChaCha8Rng,
) -> (Option<Vec<usize>>, u64) {
    let n = g.vertex_count();
    let mut steps = 0u64;
    let mut restarts = 0;
    while steps < step_cap && restarts < 64 {
        restarts += 1;
        let mut path = vec![x];
        let mut on_path = vec![false; n];
        on_path[x] = true;
        while steps < step_cap {
            steps += 1;
            let e = *path.last().unwrap();
            if path.len() == n {
                if e == y {
                    return (Some(path), steps);
                }
                // Try to expose y: rotating at the vertex just before y on
                // the path makes y the endpoint.
                let pos_y = path.iter().position(|&v| v == y).unwrap();
                if pos_y > 0 && g.has_edge(e, path[pos_y - 1]) {
                    path[pos_y..].reverse();
                    continue;
                }
            }
            // Extend if possible (never through y unless it finishes).
            let fresh: Vec<usize> = g
                .neighbours(e)
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| !on_path[w] && (w != y || path.len() == n - 1))
                .collect();
            if !fresh.is_empty() {
                let v = fresh[rng.gen_range(0..fresh.len())];
                on_path[v] = true;
                path.push(v);
                continue;
            }
            // Rotate: pick a pivot p_i adjacent to the endpoint.
            let t = path.len() - 1;
            let pivots: Vec<usize> = (0..t.saturating_sub(1))
                .filter(|&i| g.has_edge(e, path[i]))
                .collect();
            if pivots.is_empty() {
                break; // stuck; restart
            }
            let i = pivots[rng.gen_range(0..pivots.len())];
            path[i + 1..].reverse();
        }
    }
    (None, steps)
}

/// Hamilton path between `x` and `y`: rotation-extension first, exact
/// backtracking on heuristic failure.
pub fn hamilton_path_between(
    g: &Graph,
    x: usize,
    y: usize,
    budget: &HamiltonBudget,
    seed: Seed,
) -> SearchOutcome<Path> {
    assert!(x != y, "endpoints must differ");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.value());
    let heuristic_cap = (budget.max_nodes_expanded / 2).max(1);
    let (found, steps) = posa_heuristic(g, x, y, heuristic_cap, &mut rng);
    if let Some(vertices) = found {
        return SearchOutcome {
            status: SearchStatus::Found,
            payload: Some(Path::new(g, vertices).expect("heuristic path is valid")),
            stats: SearchStats {
                nodes_expanded: steps,
                elapsed: start.elapsed(),
            },
        };
    }
    let rest = HamiltonBudget {
        max_nodes_expanded: budget.max_nodes_expanded.saturating_sub(steps).max(1),
        max_cycles: budget.max_cycles,
        time_limit: budget
            .time_limit
            .saturating_sub(start.elapsed())
            .max(Duration::from_millis(1)),
    };
    let mut outcome = hamilton_path_between_exact(g, x, y, &rest);
    outcome.stats.nodes_expanded += steps;
    outcome.stats.elapsed = start.elapsed();
    outcome
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamiltonConnectivity {
    Yes,
    /// Some pair admits no Hamilton path; the pair is the witness.
    No { x: usize, y: usize },
    BudgetExceeded { x: usize, y: usize },
}

/// Exhaustive Hamilton-connectivity check over all unordered pairs.
pub fn is_hamilton_connected(g: &Graph, budget: &HamiltonBudget) -> HamiltonConnectivity {
    let n = g.vertex_count();
    assert!(n >= 3);
    let start = Instant::now();
    let mut nodes_left = budget.max_nodes_expanded;
    for x in 0..n {
        for y in x + 1..n {
            let per_pair = HamiltonBudget {
                max_nodes_expanded: nodes_left.max(1),
                max_cycles: budget.max_cycles,
                time_limit: budget
                    .time_limit
                    .saturating_sub(start.elapsed())
                    .max(Duration::from_millis(1)),
            };
            let out = hamilton_path_between_exact(g, x, y, &per_pair);
            nodes_left = nodes_left.saturating_sub(out.stats.nodes_expanded);
            match out.status {
                SearchStatus::Found => {}
                SearchStatus::ExhaustedNone => return HamiltonConnectivity::No { x, y },
                SearchStatus::BudgetExceeded => {
                    return HamiltonConnectivity::BudgetExceeded { x, y }
                }
            }
        }
    }
    HamiltonConnectivity::Yes
}
