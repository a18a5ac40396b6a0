//! Graph constructions and hardness reductions for K₃-WORM colorings.
//!
//! Every construction except the Mycielskian returns a [`ConstructionTrace`]
//! tagging each output vertex with where it came from, so claims about
//! specific vertices (the pair `x₁, y₁`, the identified triangle, the
//! monochromatic set of the K₄-free completion) can be checked directly.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("trace has {trace} tags but the graph has {graph} vertices")]
    TraceMismatch { trace: usize, graph: usize },
    #[error("trace exposes no {0} vertex for the anchor")]
    MissingAnchor(&'static str),
    #[error("box product must be connected and come from a graph with at least one edge")]
    DegenerateProduct,
    #[error("input graph is not connected")]
    NotConnected,
    #[error("input graph contains a triangle")]
    NotTriangleFree,
    #[error("maximum degree {found} exceeds {limit}")]
    DegreeTooLarge { found: usize, limit: usize },
    #[error("input graph has no degree-1 vertex")]
    NoPendantVertex,
    #[error("need at least 3 copies, got {0}")]
    TooFewCopies(usize),
    #[error("designated triple {0:?} is not a hyperedge")]
    DesignatedNotEdge([usize; 3]),
    #[error("hyperedges {0:?} and {1:?} share more than one vertex")]
    NotLinear([usize; 3], [usize; 3]),
    #[error("2-intersection graph has triangle {0:?} that is not a hyperedge")]
    SpuriousTriangle([usize; 3]),
    #[error("selected vertices {u} and {v} are at distance {distance}, need at least 3")]
    TooClose { u: usize, v: usize, distance: usize },
    #[error("completion contains a K4")]
    ContainsK4,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphInputError {
    #[error("edge {index} has a vertex outside 0..{n}")]
    OutOfRange { index: usize, n: usize },
    #[error("edge {index} repeats a vertex")]
    RepeatedVertex { index: usize },
    #[error("edge {index} duplicates edge {first}")]
    DuplicateEdge { index: usize, first: usize },
}

/// A 3-uniform hypergraph on `0..n` with sorted, distinct edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeUniformHypergraph {
    n: usize,
    edges: Vec<[usize; 3]>,
}

impl ThreeUniformHypergraph {
    pub fn new(n: usize, edges: Vec<[usize; 3]>) -> Result<Self, HypergraphInputError> {
        let mut sorted: Vec<[usize; 3]> = Vec::with_capacity(edges.len());
        for (index, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            if e[2] >= n {
                return Err(HypergraphInputError::OutOfRange { index, n });
            }
            if e[0] == e[1] || e[1] == e[2] {
                return Err(HypergraphInputError::RepeatedVertex { index });
            }
            if let Some(first) = sorted.iter().position(|f| *f == e) {
                return Err(HypergraphInputError::DuplicateEdge { index, first });
            }
            sorted.push(e);
        }
        Ok(ThreeUniformHypergraph { n, edges: sorted })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    /// Indices of the edges containing `x`, ascending.
    pub fn incident_edges(&self, x: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].contains(&x))
            .collect()
    }

    /// First pair of edges sharing two or more vertices, if any.
    pub fn linearity_violation(&self) -> Option<([usize; 3], [usize; 3])> {
        for (i, e) in self.edges.iter().enumerate() {
            for f in &self.edges[i + 1..] {
                if e.iter().filter(|x| f.contains(x)).count() > 1 {
                    return Some((*e, *f));
                }
            }
        }
        None
    }

    pub fn is_linear(&self) -> bool {
        self.linearity_violation().is_none()
    }

    /// True when `side` (one bool per vertex) splits every edge.
    pub fn is_proper_two_coloring(&self, side: &[bool]) -> bool {
        self.edges
            .iter()
            .all(|e| !(side[e[0]] == side[e[1]] && side[e[1]] == side[e[2]]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

/// Where a constructed vertex came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    /// Vertex of the input graph or hypergraph, unchanged.
    Source { vertex: usize },
    /// One of the two adjacent vertices replacing `vertex` in `G ⊠ K₂`.
    Pair { vertex: usize, side: Side },
    /// Vertex of copy `copy` (1-based) of an intermediate graph.
    Copy { copy: usize, inner: Box<Origin> },
    /// Incidence of hypergraph vertex `vertex` with edge number `edge`.
    Incidence { vertex: usize, edge: usize },
    /// One of the three triangle vertices of the `K₅ − e` gadget joining the
    /// `link`-th and `link+1`-th incidences of `vertex`.
    Gadget {
        vertex: usize,
        link: usize,
        slot: usize,
    },
    /// Vertex added by a completion step.
    Completion { index: usize },
}

impl Origin {
    pub fn copy(copy: usize, inner: Origin) -> Origin {
        Origin::Copy {
            copy,
            inner: Box::new(inner),
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Source { vertex } => write!(f, "v{}", vertex + 1),
            Origin::Pair { vertex, side } => {
                let s = if *side == Side::X { 'x' } else { 'y' };
                write!(f, "{s}{}", vertex + 1)
            }
            Origin::Copy { copy, inner } => write!(f, "{inner}^{copy}"),
            Origin::Incidence { vertex, edge } => write!(f, "({},F{})", vertex + 1, edge + 1),
            Origin::Gadget { vertex, link, slot } => {
                write!(f, "g[{},{}].{}", vertex + 1, link + 1, slot + 1)
            }
            Origin::Completion { index } => write!(f, "z{}", index + 1),
        }
    }
}

/// A vertex identification: `absorbed` was merged into output `vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub vertex: usize,
    pub absorbed: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    /// One tag per output vertex.
    pub vertex_origin: Vec<Origin>,
    pub identified: Vec<Identification>,
}

impl ConstructionTrace {
    /// Output vertex carrying `origin`, either as its own tag or as an
    /// absorbed identification.
    pub fn vertex_of(&self, origin: &Origin) -> Option<usize> {
        self.vertex_origin
            .iter()
            .position(|o| o == origin)
            .or_else(|| {
                self.identified
                    .iter()
                    .find(|id| id.absorbed == *origin)
                    .map(|id| id.vertex)
            })
    }
}

/// `G ⊠ K₂`: vertex `i` becomes `x_i = 2i` and `y_i = 2i + 1`, adjacent;
/// each edge `ij` becomes a `K₄` on `{x_i, y_i, x_j, y_j}`.
pub fn box_product_k2(g: &Graph) -> (Graph, ConstructionTrace) {
    let n = g.vertex_count();
    let mut out = Graph::new(2 * n);
    let mut origin = Vec::with_capacity(2 * n);
    for i in 0..n {
        out.add_edge(2 * i, 2 * i + 1).unwrap();
        origin.push(Origin::Pair {
            vertex: i,
            side: Side::X,
        });
        origin.push(Origin::Pair {
            vertex: i,
            side: Side::Y,
        });
    }
    for (i, j) in g.edges() {
        for a in [2 * i, 2 * i + 1] {
            for b in [2 * j, 2 * j + 1] {
                out.add_edge(a, b).unwrap();
            }
        }
    }
    (
        out,
        ConstructionTrace {
            vertex_origin: origin,
            identified: Vec::new(),
        },
    )
}

/// Three disjoint copies of a box product with `x¹ = y²`, `x² = y³`,
/// `x³ = y¹` at the anchor. Each copy keeps its `x` and loses its `y`.
pub fn triple_identification(
    h: &Graph,
    trace: &ConstructionTrace,
    anchor: usize,
) -> Result<(Graph, ConstructionTrace), ConstructionError> {
    let n = h.vertex_count();
    if trace.vertex_origin.len() != n {
        return Err(ConstructionError::TraceMismatch {
            trace: trace.vertex_origin.len(),
            graph: n,
        });
    }
    let x = trace
        .vertex_of(&Origin::Pair {
            vertex: anchor,
            side: Side::X,
        })
        .ok_or(ConstructionError::MissingAnchor("x"))?;
    let y = trace
        .vertex_of(&Origin::Pair {
            vertex: anchor,
            side: Side::Y,
        })
        .ok_or(ConstructionError::MissingAnchor("y"))?;
    if n < 4 || !h.is_connected() || !h.has_edge(x, y) {
        return Err(ConstructionError::DegenerateProduct);
    }

    let per_copy = n - 1;
    // position of each non-y vertex within a copy
    let local: Vec<usize> = (0..n)
        .scan(0, |next, u| {
            let id = *next;
            if u != y {
                *next += 1;
            }
            Some(id)
        })
        .collect();
    let id = |copy: usize, u: usize| -> usize {
        if u == y {
            // y of copy i is x of copy i-1 (cyclically)
            let prev = (copy + 2) % 3;
            prev * per_copy + local[x]
        } else {
            copy * per_copy + local[u]
        }
    };

    let mut out = Graph::new(3 * per_copy);
    let mut origin = vec![Origin::Completion { index: 0 }; 3 * per_copy];
    let mut identified = Vec::new();
    for copy in 0..3 {
        for u in 0..n {
            if u == y {
                identified.push(Identification {
                    vertex: id(copy, u),
                    absorbed: Origin::copy(copy + 1, trace.vertex_origin[u].clone()),
                });
            } else {
                origin[id(copy, u)] = Origin::copy(copy + 1, trace.vertex_origin[u].clone());
            }
        }
        for (u, v) in h.edges() {
            out.add_edge(id(copy, u), id(copy, v))?;
        }
    }

    let hub: Vec<usize> = (0..3).map(|c| id(c, x)).collect();
    debug_assert!(
        out.has_edge(hub[0], hub[1])
            && out.has_edge(hub[1], hub[2])
            && out.has_edge(hub[0], hub[2])
    );
    Ok((
        out,
        ConstructionTrace {
            vertex_origin: origin,
            identified,
        },
    ))
}

/// Mycielski construction: originals `0..n`, twins `n..2n` (twin of `i`
/// adjacent to the neighbors of `i`), apex `2n` adjacent to every twin.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut out = Graph::new(2 * n + 1);
    for (u, v) in g.edges() {
        out.add_edge(u, v).unwrap();
        out.add_edge(u, n + v).unwrap();
        out.add_edge(v, n + u).unwrap();
    }
    for i in 0..n {
        out.add_edge(n + i, 2 * n).unwrap();
    }
    out
}

/// 3-colorability of a connected triangle-free graph with maximum degree
/// at most 4 and a pendant vertex, reduced to K₃-WORM 3-colorability of a
/// graph with maximum degree at most 9.
pub fn reduce_3col_to_worm3(g: &Graph) -> Result<(Graph, ConstructionTrace), ConstructionError> {
    if !g.is_connected() {
        return Err(ConstructionError::NotConnected);
    }
    if !g.is_triangle_free() {
        return Err(ConstructionError::NotTriangleFree);
    }
    if g.max_degree() > 4 {
        return Err(ConstructionError::DegreeTooLarge {
            found: g.max_degree(),
            limit: 4,
        });
    }
    let anchor = (0..g.vertex_count())
        .find(|&v| g.degree(v) == 1)
        .ok_or(ConstructionError::NoPendantVertex)?;
    let (h, trace) = box_product_k2(g);
    let (f, trace) = triple_identification(&h, &trace, anchor)?;
    debug_assert!(f.max_degree() <= 9);
    Ok((f, trace))
}

/// Proper 2-colorability of a 3-uniform hypergraph reduced to K₃-WORM
/// 2-colorability.
///
/// Incidence `(x, F_j)` gets vertex `3j + k` where `x` is the `k`-th
/// smallest member of edge `j`; each edge becomes a triangle. For every
/// `x` with incident edges `F_1 < … < F_d`, consecutive incidences are
/// joined by a `K₅ − e` whose non-adjacent pair is the two incidences and
/// whose other three vertices are new.
pub fn reduce_h2c_to_worm2(h: &ThreeUniformHypergraph) -> (Graph, ConstructionTrace) {
    let m = h.edges().len();
    let links: usize = (0..h.vertex_count())
        .map(|x| h.incident_edges(x).len().saturating_sub(1))
        .sum();
    let mut out = Graph::new(3 * m + 3 * links);
    let mut origin = Vec::with_capacity(3 * m + 3 * links);
    for (j, e) in h.edges().iter().enumerate() {
        for &x in e {
            origin.push(Origin::Incidence { vertex: x, edge: j });
        }
        let base = 3 * j;
        out.add_edge(base, base + 1).unwrap();
        out.add_edge(base, base + 2).unwrap();
        out.add_edge(base + 1, base + 2).unwrap();
    }
    let incidence = |x: usize, j: usize| 3 * j + h.edges()[j].iter().position(|&y| y == x).unwrap();

    for x in 0..h.vertex_count() {
        let incident = h.incident_edges(x);
        for (link, pair) in incident.windows(2).enumerate() {
            let y = incidence(x, pair[0]);
            let z = incidence(x, pair[1]);
            let base = origin.len();
            for slot in 0..3 {
                origin.push(Origin::Gadget {
                    vertex: x,
                    link,
                    slot,
                });
            }
            let tri = [base, base + 1, base + 2];
            out.add_edge(tri[0], tri[1]).unwrap();
            out.add_edge(tri[0], tri[2]).unwrap();
            out.add_edge(tri[1], tri[2]).unwrap();
            for t in tri {
                out.add_edge(y, t).unwrap();
                out.add_edge(z, t).unwrap();
            }
        }
    }
    (
        out,
        ConstructionTrace {
            vertex_origin: origin,
            identified: Vec::new(),
        },
    )
}

/// Two vertices adjacent iff they share a hyperedge other than `designated`.
pub fn two_intersection_graph(
    h: &ThreeUniformHypergraph,
    designated: [usize; 3],
) -> Result<Graph, ConstructionError> {
    let mut key = designated;
    key.sort_unstable();
    if !h.edges().contains(&key) {
        return Err(ConstructionError::DesignatedNotEdge(designated));
    }
    if let Some((e, f)) = h.linearity_violation() {
        return Err(ConstructionError::NotLinear(e, f));
    }
    let mut g = Graph::new(h.vertex_count());
    for e in h.edges().iter().filter(|&&e| e != key) {
        for (a, b) in [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
            // linear, so no pair is covered twice
            g.add_edge(a, b)?;
        }
    }
    let expected: BTreeSet<[usize; 3]> = h.edges().iter().copied().filter(|&e| e != key).collect();
    if let Some(t) = g.triangles().into_iter().find(|t| !expected.contains(&t.0)) {
        return Err(ConstructionError::SpuriousTriangle(t.0));
    }
    Ok(g)
}

/// Chains copies of the 2-intersection graph of a linear 3-uniform hypergraph
/// into a K₄-free graph whose lower WORM chromatic number is meant to be 3.
///
/// `designated = [v1, v2, v3]` is removed from the 2-intersection graph;
/// `copies` copies are chained by identifying `v3` of copy `i` with `v1`
/// of copy `i + 1`. The set `S` is `{v1ⁱ, v2ⁱ : i = 1, 2, 3}`; each of its
/// three pairs gets joined and closed into a triangle with a new vertex,
/// and the three new vertices form a triangle.
///
/// Edge-criticality of `h` is not checked.
pub fn k4free_steps(
    h: &ThreeUniformHypergraph,
    designated: [usize; 3],
    copies: usize,
) -> Result<(Graph, ConstructionTrace), ConstructionError> {
    if copies < 3 {
        return Err(ConstructionError::TooFewCopies(copies));
    }
    let base = two_intersection_graph(h, designated)?;
    let n = base.vertex_count();
    let [v1, v2, v3] = designated;

    // copy 0 keeps everything; later copies drop their v1
    let per_later = n - 1;
    let local: Vec<usize> = (0..n)
        .scan(0, |next, u| {
            let id = *next;
            if u != v1 {
                *next += 1;
            }
            Some(id)
        })
        .collect();
    let id = |copy: usize, u: usize| -> usize {
        if copy == 0 {
            u
        } else if u == v1 {
            id_prev_v3(copy, n, per_later, &local, v3)
        } else {
            n + (copy - 1) * per_later + local[u]
        }
    };

    let chained = n + (copies - 1) * per_later;
    let mut out = Graph::new(chained + 3);
    let mut origin = vec![Origin::Completion { index: 0 }; chained + 3];
    let mut identified = Vec::new();
    for copy in 0..copies {
        for u in 0..n {
            let tag = Origin::copy(copy + 1, Origin::Source { vertex: u });
            if copy > 0 && u == v1 {
                identified.push(Identification {
                    vertex: id(copy, u),
                    absorbed: tag,
                });
            } else {
                origin[id(copy, u)] = tag;
            }
        }
        for (a, b) in base.edges() {
            out.add_edge(id(copy, a), id(copy, b))?;
        }
    }

    let s: Vec<usize> = (0..3).flat_map(|c| [id(c, v1), id(c, v2)]).collect();
    for (i, &u) in s.iter().enumerate() {
        let dist = out.distances_from(u);
        for &v in &s[i + 1..] {
            if let Some(d) = dist[v] {
                if d < 3 {
                    return Err(ConstructionError::TooClose { u, v, distance: d });
                }
            }
        }
    }

    let z: Vec<usize> = (0..3).map(|k| chained + k).collect();
    for (k, &zk) in z.iter().enumerate() {
        origin[zk] = Origin::Completion { index: k };
    }
    out.add_edge(z[0], z[1])?;
    out.add_edge(z[0], z[2])?;
    out.add_edge(z[1], z[2])?;
    for k in 0..3 {
        let (a, b) = (s[2 * k], s[2 * k + 1]);
        out.add_edge(a, b)?;
        out.add_edge(a, z[k])?;
        out.add_edge(b, z[k])?;
    }
    if out.contains_k4() {
        return Err(ConstructionError::ContainsK4);
    }
    Ok((
        out,
        ConstructionTrace {
            vertex_origin: origin,
            identified,
        },
    ))
}

/// Output id of `v3` in copy `copy - 1`.
fn id_prev_v3(copy: usize, n: usize, per_later: usize, local: &[usize], v3: usize) -> usize {
    if copy == 1 {
        v3
    } else {
        n + (copy - 2) * per_later + local[v3]
    }
}

/// The vertex set `S` of the K₄-free completion, in pair order.
pub fn k4free_selected(trace: &ConstructionTrace, designated: [usize; 3]) -> Option<[usize; 6]> {
    let [v1, v2, _] = designated;
    let mut s = [0; 6];
    for c in 0..3 {
        s[2 * c] = trace.vertex_of(&Origin::copy(c + 1, Origin::Source { vertex: v1 }))?;
        s[2 * c + 1] = trace.vertex_of(&Origin::copy(c + 1, Origin::Source { vertex: v2 }))?;
    }
    Some(s)
}

/// Triangles of `g` that are not inside any `K₄` block of a box product.
pub fn triangles_outside_pair_blocks(g: &Graph, trace: &ConstructionTrace) -> Vec<Triangle> {
    let source = |v: usize| match &trace.vertex_origin[v] {
        Origin::Pair { vertex, .. } => Some(*vertex),
        _ => None,
    };
    g.triangles()
        .into_iter()
        .filter(|t| {
            let mut sources: Vec<Option<usize>> = t.0.iter().map(|&v| source(v)).collect();
            sources.sort();
            sources.dedup();
            sources.len() > 2 || sources.contains(&None)
        })
        .collect()
}
