//! Immutable simple graphs with stable edge indices.
//!
//! Vertices are dense integers `0..n`. Edge indices are assigned in insertion
//! order and never reused, so a subset of edges is exactly a [`BitVector`]
//! over `0..m` and all the GF(2) subspace machinery applies directly.
//!
//! Graphs are immutable after construction; "deleting" vertices produces a
//! new graph plus explicit index maps back to the original.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use thiserror::Error;

use crate::gf2::BitVector;

/// Past this vertex count we skip the per-vertex adjacency bitsets (they cost
/// n²/8 bytes) and fall back to sorted neighbour lists.
const ADJACENCY_BITSET_MAX_N: usize = 16_384;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range (n={n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {v}")]
    Loop { v: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertices {u} and {v} are not adjacent")]
    NotAdjacent { u: usize, v: usize },
    #[error("repeated vertex {v} in path or cycle")]
    RepeatedVertex { v: usize },
    #[error("a cycle needs at least 3 vertices, got {got}")]
    CycleTooShort { got: usize },
    #[error("edge {index} is not in the graph (m={m})")]
    EdgeOutOfRange { index: usize, m: usize },
}

#[derive(Debug, Error)]
pub enum GraphParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An immutable simple graph.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    adj_bits: Option<Vec<BitVector>>,
    edge_index: HashMap<(u32, u32), u32>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Edge indices follow
    /// list order. Loops and duplicates are rejected.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut edge_index = HashMap::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::Loop { v });
            }
            let key = (u.min(v) as u32, u.max(v) as u32);
            if edge_index.contains_key(&key) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            edge_index.insert(key, edges.len() as u32);
            adj[u].push(v as u32);
            adj[v].push(u as u32);
            edges.push((u as u32, v as u32));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let adj_bits = (n <= ADJACENCY_BITSET_MAX_N).then(|| {
            adj.iter()
                .map(|list| {
                    let mut bits = BitVector::zeros(n);
                    for &w in list {
                        bits.set(w as usize);
                    }
                    bits
                })
                .collect()
        });
        Ok(Self {
            n,
            edges,
            adj,
            adj_bits,
            edge_index,
        })
    }

    #[must_use]
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges).expect("complete graph is simple")
    }

    #[must_use]
    pub fn cycle_graph(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle graph is simple")
    }

    #[must_use]
    pub fn path_graph(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path graph is simple")
    }

    /// The Petersen graph: outer 5-cycle, inner 5-cycle with step 2, spokes.
    #[must_use]
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Self::new(10, &edges).expect("petersen is simple")
    }

    #[must_use]
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Self::new(a + b, &edges).expect("complete bipartite is simple")
    }

    #[must_use]
    pub const fn vertex_count(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[must_use]
    pub fn edge_endpoints(&self, index: usize) -> (usize, usize) {
        let (u, v) = self.edges[index];
        (u as usize, v as usize)
    }

    #[must_use]
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    #[must_use]
    pub fn neighbours(&self, v: usize) -> &[u32] {
        assert!(v < self.n, "vertex {v} out of range (n={})", self.n);
        &self.adj[v]
    }

    /// Neighbourhood as a bitset (only when bitsets are materialised).
    #[must_use]
    pub fn neighbour_bits(&self, v: usize) -> Option<&BitVector> {
        self.adj_bits.as_ref().map(|b| &b[v])
    }

    #[must_use]
    pub fn deg(&self, v: usize) -> usize {
        self.neighbours(v).len()
    }

    /// Number of neighbours of `v` inside the vertex set `s`.
    #[must_use]
    pub fn deg_into(&self, v: usize, s: &BitVector) -> usize {
        assert!(v < self.n);
        if let Some(bits) = &self.adj_bits {
            bits[v].and_count(s)
        } else {
            self.adj[v].iter().filter(|&&w| s.get(w as usize)).count()
        }
    }

    #[must_use]
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.deg(v)).min().unwrap_or(0)
    }

    #[must_use]
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.deg(v)).max().unwrap_or(0)
    }

    /// Some(d) when every vertex has degree d.
    #[must_use]
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.deg(0);
        (1..self.n).all(|v| self.deg(v) == d).then_some(d)
    }

    #[must_use]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        if let Some(bits) = &self.adj_bits {
            bits[u].get(v)
        } else {
            self.adj[u].binary_search(&(v as u32)).is_ok()
        }
    }

    #[must_use]
    pub fn edge_index_of(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v) as u32, u.max(v) as u32);
        self.edge_index.get(&key).map(|&i| i as usize)
    }

    /// BFS distance from `x` to `y` avoiding `forbidden`, as a length.
    /// `None` means unreachable.
    #[must_use]
    pub fn distance(&self, x: usize, y: usize, forbidden: &BitVector) -> Option<usize> {
        self.shortest_path(x, y, forbidden).map(|p| p.len())
    }

    /// BFS shortest path from `x` to `y` in the graph minus `forbidden`.
    ///
    /// `x` and `y` must not themselves be forbidden.
    #[must_use]
    pub fn shortest_path(&self, x: usize, y: usize, forbidden: &BitVector) -> Option<Path> {
        assert!(x < self.n && y < self.n);
        assert!(
            !forbidden.get(x) && !forbidden.get(y),
            "endpoints may not be forbidden"
        );
        if x == y {
            return Some(Path::new(self, vec![x]).expect("trivial path"));
        }
        let mut parent: Vec<u32> = vec![u32::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        parent[x] = x as u32;
        queue.push_back(x as u32);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u as usize] {
                if parent[w as usize] != u32::MAX || forbidden.get(w as usize) {
                    continue;
                }
                parent[w as usize] = u;
                if w as usize == y {
                    let mut vertices = vec![y];
                    let mut cur = y;
                    while cur != x {
                        cur = parent[cur] as usize;
                        vertices.push(cur);
                    }
                    vertices.reverse();
                    return Some(Path::new(self, vertices).expect("BFS path is valid"));
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// Connected components as a partition, smallest vertex first per block.
    #[must_use]
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut block = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < block.len() {
                let u = block[head];
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        block.push(w as usize);
                    }
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }

    #[must_use]
    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    #[must_use]
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Two-colouring if the graph is bipartite. Each component's smallest
    /// vertex goes to side A, making the output deterministic.
    #[must_use]
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour: Vec<i8> = vec![-1; self.n];
        for s in 0..self.n {
            if colour[s] >= 0 {
                continue;
            }
            colour[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if colour[w] < 0 {
                        colour[w] = 1 - colour[u];
                        queue.push_back(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| colour[v] == 0).collect();
        let b = (0..self.n).filter(|&v| colour[v] == 1).collect();
        Some((a, b))
    }

    /// Induced subgraph on `V \ remove`, with index maps in both directions.
    #[must_use]
    pub fn induced_delete(&self, remove: &BitVector) -> InducedSubgraph {
        assert_eq!(remove.len(), self.n);
        let mut old_of_new = Vec::new();
        let mut new_of_old: Vec<Option<usize>> = vec![None; self.n];
        for v in 0..self.n {
            if !remove.get(v) {
                new_of_old[v] = Some(old_of_new.len());
                old_of_new.push(v);
            }
        }
        let mut new_edges = Vec::new();
        let mut old_edge_of_new = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(nu), Some(nv)) = (new_of_old[u as usize], new_of_old[v as usize]) {
                new_edges.push((nu, nv));
                old_edge_of_new.push(i);
            }
        }
        let graph = Graph::new(old_of_new.len(), &new_edges)
            .expect("induced subgraph of a simple graph is simple");
        InducedSubgraph {
            graph,
            old_of_new,
            new_of_old,
            old_edge_of_new,
        }
    }

    /// e_G(A, V∖A): edges crossing the cut.
    #[must_use]
    pub fn cut_edge_count(&self, a: &BitVector) -> usize {
        assert_eq!(a.len(), self.n);
        self.edges
            .iter()
            .filter(|&&(u, v)| a.get(u as usize) != a.get(v as usize))
            .count()
    }

    /// e_G(A): edges with both endpoints in A.
    #[must_use]
    pub fn internal_edge_count(&self, a: &BitVector) -> usize {
        assert_eq!(a.len(), self.n);
        self.edges
            .iter()
            .filter(|&&(u, v)| a.get(u as usize) && a.get(v as usize))
            .count()
    }

    /// The star ∂(v) as an edge set.
    #[must_use]
    pub fn star(&self, v: usize) -> EdgeSet {
        assert!(v < self.n);
        let mut bits = BitVector::zeros(self.edge_count());
        for &w in &self.adj[v] {
            bits.set(self.edge_index_of(v, w as usize).unwrap());
        }
        EdgeSet { bits }
    }

    /// The cut ∂(A) = E_G(A, V∖A) as an edge set.
    #[must_use]
    pub fn cut_edge_set(&self, a: &BitVector) -> EdgeSet {
        assert_eq!(a.len(), self.n);
        let mut bits = BitVector::zeros(self.edge_count());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if a.get(u as usize) != a.get(v as usize) {
                bits.set(i);
            }
        }
        EdgeSet { bits }
    }

    /// Reads the text format: first line `n m`, then `m` lines `u v`.
    /// Edge index equals line order. Loops and duplicates are rejected with
    /// the offending line number.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self, GraphParseError> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| GraphParseError::Malformed {
                line: 1,
                message: "missing header line `n m`".into(),
            })??;
        let mut parts = header.split_whitespace();
        let (n, m): (usize, usize) = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(m), None) => {
                let n = n.parse().map_err(|_| GraphParseError::Malformed {
                    line: 1,
                    message: format!("bad vertex count {n:?}"),
                })?;
                let m = m.parse().map_err(|_| GraphParseError::Malformed {
                    line: 1,
                    message: format!("bad edge count {m:?}"),
                })?;
                (n, m)
            }
            _ => {
                return Err(GraphParseError::Malformed {
                    line: 1,
                    message: format!("expected `n m`, got {header:?}"),
                })
            }
        };
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let line_no = i + 2;
            let line = lines
                .next()
                .ok_or_else(|| GraphParseError::Malformed {
                    line: line_no,
                    message: format!("expected {m} edge lines, file ended early"),
                })??;
            let mut parts = line.split_whitespace();
            let (u, v): (usize, usize) = match (parts.next(), parts.next(), parts.next()) {
                (Some(u), Some(v), None) => {
                    let parse = |s: &str| {
                        s.parse().map_err(|_| GraphParseError::Malformed {
                            line: line_no,
                            message: format!("bad vertex id {s:?}"),
                        })
                    };
                    (parse(u)?, parse(v)?)
                }
                _ => {
                    return Err(GraphParseError::Malformed {
                        line: line_no,
                        message: format!("expected `u v`, got {line:?}"),
                    })
                }
            };
            edges.push((u, v));
            // Validate incrementally so the error carries this line number.
            if let Err(source) = Graph::new(n, &edges) {
                return Err(GraphParseError::Invalid { line: line_no, source });
            }
        }
        Graph::new(n, &edges).map_err(|source| GraphParseError::Invalid { line: 1, source })
    }

    pub fn write_text<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        writeln!(writer, "{} {}", self.n, self.edge_count())?;
        for &(u, v) in &self.edges {
            writeln!(writer, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        self.write_text(&mut out).expect("write to vec");
        String::from_utf8(out).expect("graph text is ascii")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// Result of deleting a vertex set: the induced graph plus maps back.
pub struct InducedSubgraph {
    pub graph: Graph,
    /// new vertex id -> original vertex id
    pub old_of_new: Vec<usize>,
    /// original vertex id -> new vertex id (None if deleted)
    pub new_of_old: Vec<Option<usize>>,
    /// new edge index -> original edge index
    pub old_edge_of_new: Vec<usize>,
}

/// A subset of edges, identified with its incidence vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    bits: BitVector,
}

impl EdgeSet {
    #[must_use]
    pub fn empty(g: &Graph) -> Self {
        Self {
            bits: BitVector::zeros(g.edge_count()),
        }
    }

    #[must_use]
    pub fn full(g: &Graph) -> Self {
        let mut bits = BitVector::zeros(g.edge_count());
        for i in 0..g.edge_count() {
            bits.set(i);
        }
        Self { bits }
    }

    pub fn from_indices(g: &Graph, indices: &[usize]) -> Result<Self, GraphError> {
        let m = g.edge_count();
        let mut bits = BitVector::zeros(m);
        for &i in indices {
            if i >= m {
                return Err(GraphError::EdgeOutOfRange { index: i, m });
            }
            bits.set(i);
        }
        Ok(Self { bits })
    }

    pub fn from_pairs(g: &Graph, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut bits = BitVector::zeros(g.edge_count());
        for &(u, v) in pairs {
            let i = g
                .edge_index_of(u, v)
                .ok_or(GraphError::NotAdjacent { u, v })?;
            bits.set(i);
        }
        Ok(Self { bits })
    }

    /// Wraps a raw incidence vector; its length must equal e(G).
    #[must_use]
    pub fn from_bits(g: &Graph, bits: BitVector) -> Self {
        assert_eq!(bits.len(), g.edge_count(), "incidence vector length != e(G)");
        Self { bits }
    }

    #[must_use]
    pub const fn bits(&self) -> &BitVector {
        &self.bits
    }

    #[must_use]
    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    #[must_use]
    pub fn contains(&self, edge_index: usize) -> bool {
        self.bits.get(edge_index)
    }

    pub fn insert(&mut self, edge_index: usize) {
        self.bits.set(edge_index);
    }

    /// Symmetric difference, i.e. XOR of incidence vectors.
    #[must_use]
    pub fn symmetric_difference(&self, other: &Self) -> Self {
        Self {
            bits: self.bits.xor(&other.bits),
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        self.bits.xor_assign(&other.bits);
    }

    #[must_use]
    pub fn intersection_size(&self, other: &Self) -> usize {
        self.bits.and_count(&other.bits)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    #[must_use]
    pub fn to_pairs(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.indices().map(|i| g.edge_endpoints(i)).collect()
    }

    /// Vertices covered by at least one edge of the set.
    #[must_use]
    pub fn support(&self, g: &Graph) -> BitVector {
        let mut s = BitVector::zeros(g.vertex_count());
        for i in self.indices() {
            let (u, v) = g.edge_endpoints(i);
            s.set(u);
            s.set(v);
        }
        s
    }

    /// Degree of `v` in the spanning subgraph (V, self).
    #[must_use]
    pub fn degree_at(&self, g: &Graph, v: usize) -> usize {
        g.neighbours(v)
            .iter()
            .filter(|&&w| self.contains(g.edge_index_of(v, w as usize).unwrap()))
            .count()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet{:?}", self.bits.to_indices())
    }
}

/// A simple path, stored as its vertex sequence plus induced edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<usize>,
    edges: EdgeSet,
}

impl Path {
    /// Validates consecutive adjacency and distinctness.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        let mut seen = BitVector::zeros(g.vertex_count());
        for &v in &vertices {
            if v >= g.vertex_count() {
                return Err(GraphError::VertexOutOfRange {
                    v,
                    n: g.vertex_count(),
                });
            }
            if seen.get(v) {
                return Err(GraphError::RepeatedVertex { v });
            }
            seen.set(v);
        }
        let mut edges = EdgeSet::empty(g);
        for w in vertices.windows(2) {
            let i = g
                .edge_index_of(w[0], w[1])
                .ok_or(GraphError::NotAdjacent { u: w[0], v: w[1] })?;
            edges.insert(i);
        }
        Ok(Self { vertices, edges })
    }

    #[must_use]
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    #[must_use]
    pub const fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    /// Number of edges.
    #[must_use]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[must_use]
    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

/// A simple cycle, stored as a cyclic vertex sequence plus edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<usize>,
    edges: EdgeSet,
}

impl Cycle {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.len() < 3 {
            return Err(GraphError::CycleTooShort {
                got: vertices.len(),
            });
        }
        let mut seen = BitVector::zeros(g.vertex_count());
        for &v in &vertices {
            if v >= g.vertex_count() {
                return Err(GraphError::VertexOutOfRange {
                    v,
                    n: g.vertex_count(),
                });
            }
            if seen.get(v) {
                return Err(GraphError::RepeatedVertex { v });
            }
            seen.set(v);
        }
        let mut edges = EdgeSet::empty(g);
        for i in 0..vertices.len() {
            let u = vertices[i];
            let v = vertices[(i + 1) % vertices.len()];
            let e = g.edge_index_of(u, v).ok_or(GraphError::NotAdjacent { u, v })?;
            edges.insert(e);
        }
        Ok(Self { vertices, edges })
    }

    #[must_use]
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    #[must_use]
    pub const fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    /// Cycle length = number of vertices = number of edges.
    #[must_use]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[must_use]
    pub fn is_hamiltonian(&self, g: &Graph) -> bool {
        self.vertices.len() == g.vertex_count()
    }
}

/// Builds a vertex bitset over `0..n` from explicit members.
#[must_use]
pub fn vertex_set(n: usize, members: &[usize]) -> BitVector {
    BitVector::from_indices(n, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_on_small_graphs() {
        let tri = Graph::cycle_graph(3);
        for v in 0..3 {
            assert_eq!(tri.deg(v), 2);
        }
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.deg(0), 4);
        for v in 1..5 {
            assert_eq!(star.deg(v), 1);
        }
    }

    #[test]
    fn petersen_is_cubic_with_diameter_two() {
        let g = Graph::petersen();
        assert_eq!(g.regular_degree(), Some(3));
        let none = BitVector::zeros(10);
        for x in 0..10 {
            for y in 0..10 {
                let d = g.distance(x, y, &none).unwrap();
                assert!(d <= 2, "dist({x},{y}) = {d}");
                if x == y {
                    assert_eq!(d, 0);
                }
            }
        }
    }

    #[test]
    fn distance_respects_forbidden_set() {
        let p = Graph::path_graph(4);
        let none = BitVector::zeros(4);
        assert_eq!(p.distance(0, 3, &none), Some(3));
        let block = vertex_set(4, &[1]);
        assert_eq!(p.distance(0, 3, &block), None);
    }

    #[test]
    fn loops_and_duplicates_rejected() {
        assert!(matches!(
            Graph::new(3, &[(0, 0)]),
            Err(GraphError::Loop { v: 0 })
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn bipartition_of_even_and_odd_cycles() {
        let (a, b) = Graph::cycle_graph(6).bipartition().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(b.len(), 3);
        assert!(Graph::cycle_graph(5).bipartition().is_none());
    }

    #[test]
    fn two_triangles_have_two_components() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn induced_delete_maps_back() {
        let k4 = Graph::complete(4);
        let sub = k4.induced_delete(&vertex_set(4, &[3]));
        assert_eq!(sub.graph.vertex_count(), 3);
        assert_eq!(sub.graph.edge_count(), 3);
        for (new_e, &old_e) in sub.old_edge_of_new.iter().enumerate() {
            let (nu, nv) = sub.graph.edge_endpoints(new_e);
            let (ou, ov) = k4.edge_endpoints(old_e);
            let mapped = (sub.old_of_new[nu], sub.old_of_new[nv]);
            assert!(mapped == (ou, ov) || mapped == (ov, ou));
        }
        // Empty deletion is an isomorphic copy with identity maps.
        let copy = k4.induced_delete(&BitVector::zeros(4));
        assert_eq!(copy.old_of_new, vec![0, 1, 2, 3]);
        assert_eq!(copy.graph.edge_count(), 6);

        // Petersen minus the outer 5-cycle leaves the inner 5-cycle.
        let pet = Graph::petersen();
        let inner = pet.induced_delete(&vertex_set(10, &[0, 1, 2, 3, 4]));
        assert_eq!(inner.graph.vertex_count(), 5);
        assert_eq!(inner.graph.edge_count(), 5);
        assert_eq!(inner.graph.regular_degree(), Some(2));
        assert!(inner.graph.is_connected());
    }

    #[test]
    fn cut_and_internal_counts() {
        let c6 = Graph::cycle_graph(6);
        let alternate = vertex_set(6, &[0, 2, 4]);
        assert_eq!(c6.cut_edge_count(&alternate), 6);
        assert_eq!(c6.internal_edge_count(&alternate), 0);
        let empty = BitVector::zeros(6);
        assert_eq!(c6.cut_edge_count(&empty), 0);
        assert_eq!(c6.internal_edge_count(&empty), 0);
    }

    #[test]
    fn handshake_and_cut_identity() {
        let g = Graph::petersen();
        let degree_sum: usize = (0..10).map(|v| g.deg(v)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
        let a = vertex_set(10, &[0, 1, 5, 8]);
        let in_a: usize = a.ones().map(|v| g.deg(v)).sum();
        assert_eq!(
            2 * g.internal_edge_count(&a) + g.cut_edge_count(&a),
            in_a
        );
    }

    #[test]
    fn text_round_trip_and_line_errors() {
        let g = Graph::petersen();
        let text = g.to_text();
        let h = Graph::read_text(text.as_bytes()).unwrap();
        assert_eq!(h.to_text(), text);

        let bad = "3 2\n0 1\n1 1\n";
        match Graph::read_text(bad.as_bytes()) {
            Err(GraphParseError::Invalid { line: 3, source }) => {
                assert!(matches!(source, GraphError::Loop { v: 1 }));
            }
            other => panic!("expected loop error on line 3, got {other:?}"),
        }
        let dup = "3 2\n0 1\n1 0\n";
        assert!(matches!(
            Graph::read_text(dup.as_bytes()),
            Err(GraphParseError::Invalid { line: 3, .. })
        ));
    }

    #[test]
    fn path_and_cycle_validation() {
        let k4 = Graph::complete(4);
        let p = Path::new(&k4, vec![0, 1, 2]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.endpoints(), (0, 2));
        assert!(matches!(
            Path::new(&k4, vec![0, 1, 0]),
            Err(GraphError::RepeatedVertex { v: 0 })
        ));
        let c = Cycle::new(&k4, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.edges().len(), 4);
        assert!(matches!(
            Cycle::new(&k4, vec![0, 1]),
            Err(GraphError::CycleTooShort { got: 2 })
        ));
        let p5 = Graph::path_graph(5);
        assert!(matches!(
            Cycle::new(&p5, vec![0, 1, 2]),
            Err(GraphError::NotAdjacent { .. })
        ));
    }

    #[test]
    fn edge_set_xor_is_symmetric_difference() {
        let k4 = Graph::complete(4);
        let a = EdgeSet::from_pairs(&k4, &[(0, 1), (1, 2)]).unwrap();
        let b = EdgeSet::from_pairs(&k4, &[(1, 2), (2, 3)]).unwrap();
        let d = a.symmetric_difference(&b);
        let expect = EdgeSet::from_pairs(&k4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(d, expect);
    }
}
