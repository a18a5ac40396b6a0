//! Generators, brute-force oracles and a small graph catalog shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use worm_core::constructions::{ConstructionTrace, Origin, Side, ThreeUniformHypergraph};
use worm_core::{Coloring, Graph};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random graph with maximum degree at most 3: candidate edges in random
/// order, each kept with probability `p` when both endpoints have room.
pub fn random_maxdeg3(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        if g.degree(u) < 3 && g.degree(v) < 3 && rng.gen_bool(p) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Each new vertex attaches to at most three earlier ones; labels shuffled.
pub fn random_3degenerate(rng: &mut StdRng, n: usize) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Graph::new(n);
    for v in 1..n {
        let k = rng.gen_range(0..=3.min(v));
        let mut earlier: Vec<usize> = (0..v).collect();
        earlier.shuffle(rng);
        for &u in &earlier[..k] {
            g.add_edge(perm[u], perm[v]).unwrap();
        }
    }
    g
}

pub fn random_triangle_free(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        if rng.gen_bool(p) && g.common_neighbors(&[u, v]).is_empty() {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn random_coloring(rng: &mut StdRng, n: usize, k: u32) -> Coloring {
    Coloring::new((0..n).map(|_| rng.gen_range(1..=k)).collect()).unwrap()
}

pub fn random_3uniform(rng: &mut StdRng, n: usize, m: usize) -> ThreeUniformHypergraph {
    let mut all: Vec<[usize; 3]> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                all.push([a, b, c]);
            }
        }
    }
    all.shuffle(rng);
    all.truncate(m);
    ThreeUniformHypergraph::new(n, all).unwrap()
}

pub fn brute_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn brute_is_worm(g: &Graph, colors: &[u32]) -> bool {
    brute_triangles(g).iter().all(|t| {
        let distinct: BTreeSet<u32> = t.iter().map(|&v| colors[v]).collect();
        distinct.len() == 2
    })
}

/// Calls `f` on every set partition of `0..n`, as a restricted growth
/// string with colors starting at 1.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[u32])) {
    fn rec(v: usize, n: usize, max: u32, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if v == n {
            f(cur);
            return;
        }
        for c in 1..=max + 1 {
            cur.push(c);
            rec(v + 1, n, max.max(c), cur, f);
            cur.pop();
        }
    }
    rec(0, n, 0, &mut Vec::with_capacity(n), &mut f);
}

pub fn brute_spectrum(g: &Graph) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for_each_partition(g.vertex_count(), |c| {
        if brute_is_worm(g, c) {
            out.insert(c.iter().copied().max().unwrap_or(0) as usize);
        }
    });
    out
}

/// Maximum over nonempty vertex subsets of the minimum induced degree.
pub fn brute_degeneracy(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let min = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&u| mask >> u & 1 == 1)
                    .count()
            })
            .min()
            .unwrap();
        best = best.max(min);
    }
    best
}

pub fn brute_hypergraph_two_colorable(h: &ThreeUniformHypergraph) -> bool {
    let n = h.vertex_count();
    (0u32..1 << n).any(|mask| {
        h.edges().iter().all(|e| {
            let ones = e.iter().filter(|&&v| mask >> v & 1 == 1).count();
            ones == 1 || ones == 2
        })
    })
}

/// Exhaustive search over assignments from `{1, 2}` in breadth-first
/// vertex order, rejecting as soon as a fully assigned triangle is
/// monochromatic.
pub fn brute_worm_two_colorable(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut closing: Vec<Vec<[usize; 2]>> = vec![Vec::new(); n];
    for t in brute_triangles(g) {
        let mut p = t.map(|v| position[v]);
        p.sort_unstable();
        closing[p[2]].push([p[0], p[1]]);
    }
    fn rec(p: usize, colors: &mut Vec<u8>, closing: &[Vec<[usize; 2]>]) -> bool {
        if p == colors.len() {
            return true;
        }
        for c in [1u8, 2] {
            colors[p] = c;
            if closing[p]
                .iter()
                .all(|&[a, b]| !(colors[a] == c && colors[b] == c))
                && rec(p + 1, colors, closing)
            {
                return true;
            }
        }
        false
    }
    rec(0, &mut vec![0; n], &closing)
}

/// Number of proper colorings of `g` using exactly `s` colors, counted up
/// to renaming of colors.
pub fn brute_proper_partitions(g: &Graph, s: usize) -> usize {
    let mut count = 0;
    for_each_partition(g.vertex_count(), |c| {
        if c.iter().copied().max().unwrap_or(0) as usize == s
            && g.edges().iter().all(|&(u, v)| c[u] != c[v])
        {
            count += 1;
        }
    });
    count
}

pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = n;
    for_each_partition(n, |c| {
        let k = c.iter().copied().max().unwrap_or(0) as usize;
        if k < best && g.edges().iter().all(|&(u, v)| c[u] != c[v]) {
            best = k;
        }
    });
    best
}

/// Whether the vertex set splits into disjoint copies of the graph induced
/// by some `size`-set satisfying `fits`.
pub fn has_spanning_factor(
    g: &Graph,
    size: usize,
    fits: &dyn Fn(&Graph, &[usize]) -> bool,
) -> bool {
    fn rec(
        g: &Graph,
        used: &mut Vec<bool>,
        size: usize,
        fits: &dyn Fn(&Graph, &[usize]) -> bool,
    ) -> bool {
        let Some(first) = used.iter().position(|&u| !u) else {
            return true;
        };
        let free: Vec<usize> = (first + 1..used.len()).filter(|&v| !used[v]).collect();
        let mut pick = vec![first];
        choose(g, used, size, fits, &free, 0, &mut pick)
    }
    fn choose(
        g: &Graph,
        used: &mut Vec<bool>,
        size: usize,
        fits: &dyn Fn(&Graph, &[usize]) -> bool,
        free: &[usize],
        from: usize,
        pick: &mut Vec<usize>,
    ) -> bool {
        if pick.len() == size {
            if !fits(g, pick) {
                return false;
            }
            for &v in pick.iter() {
                used[v] = true;
            }
            let ok = rec(g, used, size, fits);
            for &v in pick.iter() {
                used[v] = false;
            }
            return ok;
        }
        for i in from..free.len() {
            pick.push(free[i]);
            if choose(g, used, size, fits, free, i + 1, pick) {
                pick.pop();
                return true;
            }
            pick.pop();
        }
        false
    }
    if !g.vertex_count().is_multiple_of(size) {
        return false;
    }
    rec(g, &mut vec![false; g.vertex_count()], size, fits)
}

pub fn induced_edges(g: &Graph, vs: &[usize]) -> usize {
    let mut m = 0;
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            m += g.has_edge(a, b) as usize;
        }
    }
    m
}

pub fn is_disjoint_union_of_k4(g: &Graph) -> bool {
    g.components()
        .iter()
        .all(|c| c.len() == 4 && induced_edges(g, c) == 6)
}

/// Canonical adjacency string via individualization–refinement without
/// automorphism pruning; fine for the small sparse graphs used here.
pub fn canonical_form(g: &Graph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut best: Option<Vec<bool>> = None;
    let cells = refine(g, vec![(0..n).collect()]);
    search(g, cells, &mut best);
    best.unwrap_or_default()
}

fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    loop {
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::new();
        for c in &cells {
            let mut keyed: Vec<(Vec<usize>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut counts = vec![0; cells.len()];
                    for &u in g.neighbors(v) {
                        counts[cell_of[u]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<Vec<bool>>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let n = order.len();
        let mut code = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                code.push(g.has_edge(order[i], order[j]));
            }
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    for &v in &cells[target] {
        let mut split = cells[..target].to_vec();
        split.push(vec![v]);
        split.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        split.extend(cells[target + 1..].iter().cloned());
        search(g, refine(g, split), best);
    }
}

pub fn from_canonical(n: usize, code: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code[k] {
                g.add_edge(i, j).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Connected graphs with maximum degree at most 3, one per isomorphism
/// class, grouped by order `1..=max_n`. Every such graph on `n` vertices
/// arises from one on `n − 1` by adding a vertex: delete a non-cut vertex.
pub fn connected_maxdeg3_catalog(max_n: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::new(1)]];
    for n in 2..=max_n {
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut level = Vec::new();
        for parent in &levels[n - 2] {
            let room: Vec<usize> = (0..n - 1).filter(|&v| parent.degree(v) < 3).collect();
            for mask in 1u32..(1 << room.len()) {
                if mask.count_ones() > 3 {
                    continue;
                }
                let mut child = Graph::new(n);
                for (u, v) in parent.edges() {
                    child.add_edge(u, v).unwrap();
                }
                for (i, &u) in room.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        child.add_edge(u, n - 1).unwrap();
                    }
                }
                let code = canonical_form(&child);
                if seen.insert(code.clone()) {
                    level.push(from_canonical(n, &code));
                }
            }
        }
        levels.push(level);
    }
    levels
}

/// Expected adjacency between two output vertices, derived only from
/// their origin tags; `rule` decides adjacency for a pair of tags.
pub fn reconstruct(trace: &ConstructionTrace, rule: &dyn Fn(&Origin, &Origin) -> bool) -> Graph {
    let n = trace.vertex_origin.len();
    let mut tags: Vec<Vec<&Origin>> = trace.vertex_origin.iter().map(|o| vec![o]).collect();
    for id in &trace.identified {
        tags[id.vertex].push(&id.absorbed);
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if tags[u].iter().any(|a| tags[v].iter().any(|b| rule(a, b))) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn box_rule(source: &Graph) -> impl Fn(&Origin, &Origin) -> bool + '_ {
    move |a, b| match (a, b) {
        (
            Origin::Pair {
                vertex: u,
                side: su,
            },
            Origin::Pair {
                vertex: v,
                side: sv,
            },
        ) => (u == v && su != sv) || source.has_edge(*u, *v),
        _ => false,
    }
}

pub fn pair_of(o: &Origin) -> Option<(usize, Side)> {
    match o {
        Origin::Pair { vertex, side } => Some((*vertex, *side)),
        _ => None,
    }
}
