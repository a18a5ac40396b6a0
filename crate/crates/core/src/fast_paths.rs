//! Polynomial-time special cases: 2-colorings of 3-degenerate and
//! 4-colorable graphs, exact-count colorings of 3-degenerate graphs, and
//! the closed formula for the upper WORM chromatic number at maximum
//! degree 3.

use thiserror::Error;

use crate::graph::Graph;
use crate::hypergraph::{Coloring, ColoringError, MixedHypergraph};
use crate::solver::{self, SearchBudget, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FastPathError {
    #[error("graph is {0}-degenerate; need at most 3")]
    NotThreeDegenerate(usize),
    #[error("maximum degree {0} exceeds 3")]
    MaxDegreeAbove3(usize),
    #[error("vertex {vertex} has {count} colored neighbors; at most 3 allowed")]
    TooManyNeighbors { vertex: usize, count: usize },
    #[error("partial coloring uses {0} colors; need at least 2")]
    TooFewColors(usize),
    #[error("vertex {0} is already colored")]
    AlreadyColored(usize),
    #[error("neighbors {0:?} form a rainbow triangle; partial coloring is not WORM")]
    RainbowTriangle([usize; 3]),
    #[error("no WORM coloring with exactly {0} colors")]
    TargetOutOfRange(usize),
    #[error("exact seeding search ran out of budget")]
    BudgetExceeded,
    #[error("edge {{{0}, {1}}} is monochromatic in the supplied proper coloring")]
    NotProper(usize, usize),
    #[error("proper coloring uses color {0}; expected colors 1..=4")]
    TooManyClasses(u32),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Admissible colors for a vertex being added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Forced(u32),
    /// Any color other than `except`, including one not yet in use.
    Any {
        except: Option<u32>,
    },
}

/// Case analysis on the colored neighbors of `v`.
pub fn extension_for(
    g: &Graph,
    v: usize,
    partial: &[Option<u32>],
) -> Result<Extension, FastPathError> {
    let nbrs: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| partial[w].is_some())
        .collect();
    let col = |w: usize| partial[w].unwrap();
    match *nbrs.as_slice() {
        [a, b, c] => {
            let (ca, cb, cc) = (col(a), col(b), col(c));
            if ca != cb && cb != cc && ca != cc {
                let ab = g.has_edge(a, b);
                let ac = g.has_edge(a, c);
                let bc = g.has_edge(b, c);
                match (ab, ac, bc) {
                    (true, true, true) => Err(FastPathError::RainbowTriangle([a, b, c])),
                    // induced P3: repeat the center
                    (true, true, false) => Ok(Extension::Forced(ca)),
                    (true, false, true) => Ok(Extension::Forced(cb)),
                    (false, true, true) => Ok(Extension::Forced(cc)),
                    // a single edge: either endpoint's color
                    (true, false, false) => Ok(Extension::Forced(ca.min(cb))),
                    (false, true, false) => Ok(Extension::Forced(ca.min(cc))),
                    (false, false, true) => Ok(Extension::Forced(cb.min(cc))),
                    (false, false, false) => Ok(Extension::Any { except: None }),
                }
            } else if ca == cb && cb == cc {
                Ok(Extension::Any { except: Some(ca) })
            } else if ca == cb {
                Ok(Extension::Forced(cc))
            } else if ca == cc {
                Ok(Extension::Forced(cb))
            } else {
                Ok(Extension::Forced(ca))
            }
        }
        [a, b] if g.has_edge(a, b) => {
            if col(a) == col(b) {
                Ok(Extension::Any {
                    except: Some(col(a)),
                })
            } else {
                Ok(Extension::Forced(col(a).min(col(b))))
            }
        }
        [_, _] | [_] | [] => Ok(Extension::Any { except: None }),
        _ => Err(FastPathError::TooManyNeighbors {
            vertex: v,
            count: nbrs.len(),
        }),
    }
}

fn palette(partial: &[Option<u32>]) -> Vec<u32> {
    let mut colors: Vec<u32> = partial.iter().flatten().copied().collect();
    colors.sort_unstable();
    colors.dedup();
    colors
}

/// Colors `v` given a WORM coloring of the other colored vertices that uses
/// `t ≥ 2` colors, keeping the color count at `t`. Where several colors
/// are admissible the smallest is taken.
pub fn extend_one_vertex(
    g: &Graph,
    v: usize,
    partial: &[Option<u32>],
) -> Result<Vec<Option<u32>>, FastPathError> {
    if partial.len() != g.vertex_count() {
        return Err(ColoringError::Partial {
            expected: g.vertex_count(),
            got: partial.len(),
        }
        .into());
    }
    if partial[v].is_some() {
        return Err(FastPathError::AlreadyColored(v));
    }
    let colors = palette(partial);
    if colors.len() < 2 {
        return Err(FastPathError::TooFewColors(colors.len()));
    }
    let chosen = match extension_for(g, v, partial)? {
        Extension::Forced(c) => c,
        Extension::Any { except } => *colors.iter().find(|&&c| Some(c) != except).unwrap(),
    };
    let mut out = partial.to_vec();
    out[v] = Some(chosen);
    Ok(out)
}

fn ensure_three_degenerate(g: &Graph) -> Result<Vec<usize>, FastPathError> {
    let d = g.degeneracy();
    if d.degeneracy > 3 {
        return Err(FastPathError::NotThreeDegenerate(d.degeneracy));
    }
    let mut order = d.ordering;
    order.reverse();
    Ok(order)
}

fn finish(partial: Vec<Option<u32>>) -> Coloring {
    Coloring::new(
        partial
            .into_iter()
            .map(|c| c.expect("every vertex colored"))
            .collect(),
    )
    .expect("colors are positive")
}

/// A WORM coloring with at most two colors of a 3-degenerate graph, built
/// along the reversed elimination order. Triangle-free graphs get one color.
pub fn two_color_3degenerate(g: &Graph) -> Result<Coloring, FastPathError> {
    let order = ensure_three_degenerate(g)?;
    if g.is_triangle_free() {
        return Ok(Coloring::monochromatic(g.vertex_count()));
    }
    let mut partial: Vec<Option<u32>> = vec![None; g.vertex_count()];
    for v in order {
        let back: Vec<u32> = g.neighbors(v).iter().filter_map(|&w| partial[w]).collect();
        let color = match back.as_slice() {
            [] | [_] => 1,
            [a, b] => {
                if a == b {
                    3 - a
                } else {
                    1
                }
            }
            [a, b, c] => {
                if a == b && b == c {
                    3 - a
                } else if a == b {
                    *c
                } else if a == c {
                    *b
                } else {
                    *a
                }
            }
            _ => unreachable!("reverse elimination order leaves at most 3 back-neighbors"),
        };
        partial[v] = Some(color);
    }
    Ok(finish(partial))
}

/// Largest prefix of the reversed elimination order handed to the exact
/// solver when seeding a `t`-coloring.
pub const SEED_LIMIT: usize = 20;

/// A WORM coloring of a 3-degenerate graph with exactly `t` colors,
/// `2 ≤ t ≤ W⁺(g)`.
///
/// First a greedy pass along the reversed elimination order opens a new
/// color whenever the case analysis leaves the vertex free and fewer than
/// `t` colors are in use. If that falls short, the smallest prefix (of at
/// most [`SEED_LIMIT`] vertices) admitting exactly `t` colors is colored
/// by the exact solver and extended one vertex at a time; failing that,
/// the exact solver runs on the whole graph under `budget`.
pub fn spectrum_3degenerate(
    g: &Graph,
    t: usize,
    budget: SearchBudget,
) -> Result<Coloring, FastPathError> {
    let order = ensure_three_degenerate(g)?;
    let n = g.vertex_count();
    if t < 2 || t > n {
        return Err(FastPathError::TargetOutOfRange(t));
    }

    let mut partial: Vec<Option<u32>> = vec![None; n];
    let mut used = 0u32;
    for &v in &order {
        let color = match extension_for(g, v, &partial)? {
            Extension::Forced(c) => c,
            Extension::Any { except } => {
                if (used as usize) < t {
                    used + 1
                } else {
                    (1..=used).find(|&c| Some(c) != except).unwrap()
                }
            }
        };
        used = used.max(color);
        partial[v] = Some(color);
    }
    if used as usize == t {
        return Ok(finish(partial));
    }

    for k in 2..=n.min(SEED_LIMIT) {
        let prefix = &order[..k];
        let sub = g.induced(prefix);
        let outcome = solver::find_exactly_s(&MixedHypergraph::from_graph_k3(&sub), t, budget);
        match outcome {
            SearchOutcome::Found(seed) => {
                let mut partial: Vec<Option<u32>> = vec![None; n];
                for (i, &v) in prefix.iter().enumerate() {
                    partial[v] = Some(seed.color(i));
                }
                for &v in &order[k..] {
                    partial = extend_one_vertex(g, v, &partial)?;
                }
                return Ok(finish(partial));
            }
            SearchOutcome::Infeasible => continue,
            SearchOutcome::BudgetExceeded => return Err(FastPathError::BudgetExceeded),
        }
    }
    if n <= SEED_LIMIT {
        return Err(FastPathError::TargetOutOfRange(t));
    }
    match solver::find_exactly_s(&MixedHypergraph::from_graph_k3(g), t, budget) {
        SearchOutcome::Found(c) => Ok(c),
        SearchOutcome::Infeasible => Err(FastPathError::TargetOutOfRange(t)),
        SearchOutcome::BudgetExceeded => Err(FastPathError::BudgetExceeded),
    }
}

/// `W⁺(g) = n − m(K₃) − m(K₄−e) − 2·m(K₄)` over the components of the
/// triangle core, for maximum degree at most 3.
pub fn wplus_maxdeg3(g: &Graph) -> Result<usize, FastPathError> {
    let delta = g.max_degree();
    if delta > 3 {
        return Err(FastPathError::MaxDegreeAbove3(delta));
    }
    let census = g.triangle_core().census;
    debug_assert!(census.is_complete());
    Ok(g.vertex_count() - census.k3 - census.k4_minus_e - 2 * census.k4)
}

/// Merges the classes of a proper coloring with colors in `1..=4` as
/// `{1, 2} → 1`, `{3, 4} → 2`. Output is canonical.
pub fn two_color_from_proper4(g: &Graph, proper: &Coloring) -> Result<Coloring, FastPathError> {
    if proper.len() != g.vertex_count() {
        return Err(ColoringError::Partial {
            expected: g.vertex_count(),
            got: proper.len(),
        }
        .into());
    }
    if let Some(&c) = proper.colors().iter().find(|&&c| c > 4) {
        return Err(FastPathError::TooManyClasses(c));
    }
    if let Some((u, v)) = g
        .edges()
        .into_iter()
        .find(|&(u, v)| proper.color(u) == proper.color(v))
    {
        return Err(FastPathError::NotProper(u, v));
    }
    let merged = proper
        .colors()
        .iter()
        .map(|&c| if c <= 2 { 1 } else { 2 })
        .collect();
    Ok(Coloring::new(merged)?.canonical())
}
