//! Mixed hypergraphs `(X, C, D)` and the WORM correspondence for triangles.
//!
//! A coloring of a mixed hypergraph repeats a color inside every C-set and
//! uses two distinct colors inside every D-set. With `C = D` equal to the
//! vertex sets of the triangles of a graph, the colorings are exactly the
//! K₃-WORM colorings of that graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring covers {got} vertices, host has {expected}")]
    Partial { expected: usize, got: usize },
    #[error("vertex {0} has color 0; colors are positive")]
    ZeroColor(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("set {index} has {size} members; sets need at least 2")]
    SetTooSmall { index: usize, size: usize },
    #[error("set {index} mentions vertex {vertex}, outside 0..{n}")]
    OutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },
    #[error("set {index} repeats vertex {vertex}")]
    RepeatedMember { index: usize, vertex: usize },
}

/// Total map from vertices to positive colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Coloring(Vec<u32>);

impl TryFrom<Vec<u32>> for Coloring {
    type Error = ColoringError;

    fn try_from(colors: Vec<u32>) -> Result<Self, Self::Error> {
        Coloring::new(colors)
    }
}

impl From<Coloring> for Vec<u32> {
    fn from(c: Coloring) -> Self {
        c.0
    }
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Result<Self, ColoringError> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor(v));
        }
        Ok(Coloring(colors))
    }

    /// Every vertex gets color 1.
    pub fn monochromatic(n: usize) -> Self {
        Coloring(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.0
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        let mut seen: Vec<u32> = self.0.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Renames colors to `1..=s` in order of first appearance.
    pub fn canonical(&self) -> Coloring {
        let mut rename = BTreeMap::new();
        let colors = self
            .0
            .iter()
            .map(|&c| {
                let next = rename.len() as u32 + 1;
                *rename.entry(c).or_insert(next)
            })
            .collect();
        Coloring(colors)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Color classes of the canonical renaming, each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let canon = self.canonical();
        let mut classes = vec![Vec::new(); canon.num_colors()];
        for (v, &c) in canon.0.iter().enumerate() {
            classes[c as usize - 1].push(v);
        }
        classes
    }

    fn expect_len(&self, n: usize) -> Result<(), ColoringError> {
        if self.0.len() != n {
            return Err(ColoringError::Partial {
                expected: n,
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

/// Mixed hypergraph on vertices `0..n` with C-sets and D-sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedHypergraph {
    n: usize,
    c_family: Vec<Vec<usize>>,
    d_family: Vec<Vec<usize>>,
}

impl MixedHypergraph {
    pub fn new(
        n: usize,
        c_family: Vec<Vec<usize>>,
        d_family: Vec<Vec<usize>>,
    ) -> Result<Self, HypergraphError> {
        let c_family = normalize_family(n, c_family, 0)?;
        let d_family = normalize_family(n, d_family, c_family.len())?;
        Ok(MixedHypergraph {
            n,
            c_family,
            d_family,
        })
    }

    /// Bi-hypergraph whose C-sets and D-sets are both the triangles of `g`.
    pub fn from_graph_k3(g: &Graph) -> Self {
        let sets: Vec<Vec<usize>> = g.triangles().iter().map(|t| t.0.to_vec()).collect();
        MixedHypergraph {
            n: g.vertex_count(),
            c_family: sets.clone(),
            d_family: sets,
        }
    }

    /// D-sets are the edges of `g` and there are no C-sets, so colorings are
    /// proper vertex colorings.
    pub fn proper_coloring_of(g: &Graph) -> Self {
        MixedHypergraph {
            n: g.vertex_count(),
            c_family: Vec::new(),
            d_family: g.edges().into_iter().map(|(u, v)| vec![u, v]).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn c_family(&self) -> &[Vec<usize>] {
        &self.c_family
    }

    pub fn d_family(&self) -> &[Vec<usize>] {
        &self.d_family
    }

    pub fn is_bi_hypergraph(&self) -> bool {
        self.c_family == self.d_family
    }

    pub fn has_no_constraints(&self) -> bool {
        self.c_family.is_empty() && self.d_family.is_empty()
    }

    pub fn check_coloring(&self, coloring: &Coloring) -> Result<bool, ColoringError> {
        coloring.expect_len(self.n)?;
        let c_ok = self.c_family.iter().all(|s| has_repeat(s, coloring));
        let d_ok = self.d_family.iter().all(|s| has_two_colors(s, coloring));
        Ok(c_ok && d_ok)
    }
}

fn normalize_family(
    n: usize,
    family: Vec<Vec<usize>>,
    offset: usize,
) -> Result<Vec<Vec<usize>>, HypergraphError> {
    family
        .into_iter()
        .enumerate()
        .map(|(i, mut set)| {
            let index = offset + i;
            set.sort_unstable();
            if let Some(&vertex) = set.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::OutOfRange { index, vertex, n });
            }
            if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedMember {
                    index,
                    vertex: w[0],
                });
            }
            if set.len() < 2 {
                return Err(HypergraphError::SetTooSmall {
                    index,
                    size: set.len(),
                });
            }
            Ok(set)
        })
        .collect()
}

fn has_repeat(set: &[usize], coloring: &Coloring) -> bool {
    set.iter().enumerate().any(|(i, &u)| {
        set[i + 1..]
            .iter()
            .any(|&v| coloring.color(u) == coloring.color(v))
    })
}

fn has_two_colors(set: &[usize], coloring: &Coloring) -> bool {
    let first = coloring.color(set[0]);
    set[1..].iter().any(|&v| coloring.color(v) != first)
}

/// Every triangle of `g` gets exactly two colors.
pub fn is_worm_coloring(g: &Graph, coloring: &Coloring) -> Result<bool, ColoringError> {
    Ok(worm_violations(g, coloring)?.is_empty())
}

/// Triangles that are monochromatic or rainbow under `coloring`.
pub fn worm_violations(g: &Graph, coloring: &Coloring) -> Result<Vec<Violation>, ColoringError> {
    coloring.expect_len(g.vertex_count())?;
    Ok(g.triangles()
        .into_iter()
        .filter_map(|t| {
            let [a, b, c] = t.0.map(|v| coloring.color(v));
            if a == b && b == c {
                Some(Violation::Monochromatic(t))
            } else if a != b && b != c && a != c {
                Some(Violation::Rainbow(t))
            } else {
                None
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "triangle", rename_all = "lowercase")]
pub enum Violation {
    Monochromatic(Triangle),
    Rainbow(Triangle),
}

impl Violation {
    pub fn triangle(&self) -> Triangle {
        match *self {
            Violation::Monochromatic(t) | Violation::Rainbow(t) => t,
        }
    }
}
