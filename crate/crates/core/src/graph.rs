//! Simple undirected graphs with bit-row adjacency, triangle enumeration,
//! degeneracy orderings and the triangle core.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// A simple undirected graph on the vertex set `0..n`.
///
/// Adjacency is kept twice: as packed bit rows for O(1) pair queries and
/// as sorted neighbor lists for iteration.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; words * n],
            neighbors: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts the edge `{u, v}`. Loops and repeated edges are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::OutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.set_bit(u, v);
        self.set_bit(v, u);
        insert_sorted(&mut self.neighbors[u], v);
        insert_sorted(&mut self.neighbors[v], u);
        self.edge_count += 1;
        Ok(())
    }

    fn set_bit(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.neighbors[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j)
                        .expect("induced subgraph of a simple graph");
                }
            }
        }
        g
    }

    /// Disjoint union, `other` shifted past the vertices of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift).unwrap();
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.neighbors[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.neighbors[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices adjacent to every vertex in `vertices`.
    pub fn common_neighbors(&self, vertices: &[usize]) -> Vec<usize> {
        let mut acc: Vec<u64> = vec![!0u64; self.words];
        for &v in vertices {
            for (a, r) in acc.iter_mut().zip(self.row(v)) {
                *a &= r;
            }
        }
        bits(&acc).filter(|&x| x < self.n).collect()
    }

    /// All triangles, each once, in lexicographic order.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let ru = self.row(u);
            for &v in self.neighbors[u].iter().filter(|&&v| v > u) {
                let rv = self.row(v);
                // only words that can hold w > v
                for wi in v / 64..self.words {
                    let mut word = ru[wi] & rv[wi];
                    if wi == v / 64 {
                        word &= (!0u64 << (v % 64)) << 1;
                    }
                    while word != 0 {
                        let w = wi * 64 + word.trailing_zeros() as usize;
                        out.push(Triangle([u, v, w]));
                        word &= word - 1;
                    }
                }
            }
        }
        out
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for t in self.triangles() {
            for v in t.0 {
                counts[v] += 1;
            }
        }
        counts
    }

    pub fn is_triangle_free(&self) -> bool {
        for u in 0..self.n {
            for &v in self.neighbors[u].iter().filter(|&&v| v > u) {
                if self.row(u).iter().zip(self.row(v)).any(|(a, b)| a & b != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// True when some 4 vertices are pairwise adjacent.
    pub fn contains_k4(&self) -> bool {
        self.triangles()
            .iter()
            .any(|t| !self.common_neighbors(&t.0).is_empty())
    }

    /// Minimum-degree peeling. Ties go to the smallest vertex id.
    pub fn degeneracy(&self) -> DegeneracyResult {
        let n = self.n;
        let mut degree: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        let mut removed = vec![false; n];
        let mut ordering = Vec::with_capacity(n);
        let mut d = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (degree[v], v))
                .unwrap();
            d = d.max(degree[v]);
            removed[v] = true;
            ordering.push(v);
            for &w in &self.neighbors[v] {
                if !removed[w] {
                    degree[w] -= 1;
                }
            }
        }
        DegeneracyResult {
            ordering,
            degeneracy: d,
        }
    }

    /// Spanning subgraph keeping only edges that lie on a triangle, plus
    /// a census of its components.
    pub fn triangle_core(&self) -> TriangleCore {
        let mut core = Graph::new(self.n);
        for t in self.triangles() {
            let [a, b, c] = t.0;
            for (u, v) in [(a, b), (a, c), (b, c)] {
                if !core.has_edge(u, v) {
                    core.add_edge(u, v).unwrap();
                }
            }
        }
        let mut census = ComponentCensus::default();
        for comp in core.components() {
            let edges: usize = comp.iter().map(|&v| core.degree(v)).sum::<usize>() / 2;
            let mut degrees: Vec<usize> = comp.iter().map(|&v| core.degree(v)).collect();
            degrees.sort_unstable();
            match (comp.len(), edges, degrees.as_slice()) {
                (1, 0, _) => census.k1 += 1,
                (3, 3, [2, 2, 2]) => census.k3 += 1,
                (4, 5, [2, 2, 3, 3]) => census.k4_minus_e += 1,
                (4, 6, [3, 3, 3, 3]) => census.k4 += 1,
                _ => census.unrecognized += 1,
            }
        }
        TriangleCore { core, census }
    }
}

fn insert_sorted(list: &mut Vec<usize>, x: usize) {
    let pos = list.partition_point(|&y| y < x);
    list.insert(pos, x);
}

fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut word = w;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Vertex set of a `K₃` subgraph, sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle(pub [usize; 3]);

impl Triangle {
    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyResult {
    /// Elimination order: each vertex has at most `degeneracy` neighbors
    /// appearing after it.
    pub ordering: Vec<usize>,
    pub degeneracy: usize,
}

/// Component counts of the triangle core by isomorphism type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCensus {
    pub k1: usize,
    pub k3: usize,
    pub k4_minus_e: usize,
    pub k4: usize,
    /// Components of none of the four types above; only possible once
    /// the maximum degree exceeds 3.
    pub unrecognized: usize,
}

impl ComponentCensus {
    pub fn is_complete(&self) -> bool {
        self.unrecognized == 0
    }
}

#[derive(Debug, Clone)]
pub struct TriangleCore {
    pub core: Graph,
    pub census: ComponentCensus,
}
