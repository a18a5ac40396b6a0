//! Small named graphs used as fixtures and CLI shortcuts.

use crate::constructions::{mycielskian, ThreeUniformHypergraph};
use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// Two triangles `{0,1,2}`, `{3,4,5}` joined by the matching `i — i+3`.
pub fn prism() -> Graph {
    Graph::from_edges(
        6,
        [
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap()
}

/// `K₅ − e` minus the edge `{0, 1}`: vertices 0 and 1 are the non-adjacent pair.
pub fn k5_minus_e() -> Graph {
    let mut g = Graph::new(5);
    for u in 0..5 {
        for v in u + 1..5 {
            if (u, v) != (0, 1) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// `K₄ − e` with vertices 0 and 3 non-adjacent.
pub fn k4_minus_e() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Hub 0 joined to every vertex of a rim cycle `1..=rim`.
pub fn wheel(rim: usize) -> Graph {
    let mut g = Graph::new(rim + 1);
    for i in 1..=rim {
        g.add_edge(0, i).unwrap();
        g.add_edge(i, i % rim + 1).unwrap();
    }
    g
}

pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).unwrap();
        g.add_edge(i, i + 5).unwrap();
        g.add_edge(i + 5, (i + 2) % 5 + 5).unwrap();
    }
    g
}

/// Mycielskian of `C₅`: 11 vertices, 20 edges, triangle-free, chromatic number 4.
pub fn grotzsch() -> Graph {
    mycielskian(&cycle(5))
}

/// Stacked triangulation on `n ≥ 3` vertices: start from a triangle and
/// insert each new vertex into the face created last.
pub fn apollonian(n: usize) -> Graph {
    assert!(n >= 3);
    let mut g = Graph::from_edges(n, [(0, 1), (0, 2), (1, 2)]).unwrap();
    let mut face = [0, 1, 2];
    for v in 3..n {
        for &u in &face {
            g.add_edge(u, v).unwrap();
        }
        face = [face[1], face[2], v];
    }
    g
}

/// The Fano plane on points `0..7`.
pub fn fano() -> ThreeUniformHypergraph {
    ThreeUniformHypergraph::new(
        7,
        vec![
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ],
    )
    .unwrap()
}
