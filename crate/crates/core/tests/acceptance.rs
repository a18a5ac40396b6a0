//! End-to-end acceptance checks. Prints one PASS/FAIL line per check and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;

use common::*;
use worm_core::constructions::{box_product_k2, reduce_h2c_to_worm2, triple_identification};
use worm_core::fast_paths;
use worm_core::hypergraph::{Coloring, MixedHypergraph};
use worm_core::solver::{self, ChromaticValue, SearchBudget, SearchOutcome};
use worm_core::{is_worm_coloring, named, Graph};

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn unlimited() -> SearchBudget {
    SearchBudget::unlimited()
}

fn k3(g: &Graph) -> MixedHypergraph {
    MixedHypergraph::from_graph_k3(g)
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn gap_on_grotzsch_product() -> Result<String, String> {
    let grotzsch = named::grotzsch();
    let k = solver::chromatic_number(&grotzsch, unlimited())
        .exact()
        .ok_or("chromatic number unresolved")?;
    ensure!(k == 4, "chromatic number of the Grötzsch graph is {k}");
    let (h, _) = box_product_k2(&grotzsch);
    let expected: Vec<usize> = std::iter::once(2).chain(k..=h.vertex_count() / 2).collect();

    let start = Instant::now();
    let s3 = solver::find_exactly_s(&k3(&h), 3, unlimited());
    let s3_time = start.elapsed();
    ensure!(
        s3 == SearchOutcome::Infeasible,
        "s = 3 search returned {s3:?}"
    );
    within(s3_time, Duration::from_secs(120), "s = 3 search")?;

    let start = Instant::now();
    let report = solver::feasible_set(&k3(&h), unlimited(), true);
    let total = start.elapsed();
    within(total, Duration::from_secs(600), "spectrum")?;
    ensure!(
        report.is_complete(),
        "spectrum incomplete: {:?}",
        report.unresolved
    );
    ensure!(
        report.feasible == expected,
        "feasible {:?}, expected {expected:?}",
        report.feasible
    );
    ensure!(report.gaps == vec![3], "gaps {:?}", report.gaps);
    for (&s, w) in &report.witnesses {
        ensure!(
            w.num_colors() == s && is_worm_coloring(&h, w).unwrap(),
            "bad witness for {s}"
        );
    }
    Ok(format!(
        "feasible {{2}} ∪ {{4..11}}, gaps [3]; spectrum {total:.2?}, s=3 {s3_time:.2?}"
    ))
}

fn c5_product_gap_free() -> Result<String, String> {
    let start = Instant::now();
    let (h, _) = box_product_k2(&named::cycle(5));
    let report = solver::feasible_set(&k3(&h), unlimited(), false);
    let lower = solver::lower_chromatic(&k3(&h), unlimited());
    let elapsed = start.elapsed();
    ensure!(
        report.feasible == vec![2, 3, 4, 5],
        "feasible {:?}",
        report.feasible
    );
    ensure!(
        report.gaps.is_empty() && report.is_gap_free(),
        "gaps {:?}",
        report.gaps
    );
    ensure!(lower.exact() == Some(2), "lower {lower:?}");
    within(elapsed, Duration::from_secs(5), "C5 product")?;
    Ok(format!("feasible [2, 3, 4, 5], W⁻ = 2 in {elapsed:.2?}"))
}

fn f3_lower_three() -> Result<String, String> {
    let start = Instant::now();
    let (h, trace) = box_product_k2(&named::cycle(5));
    let mut sizes = BTreeSet::new();
    for anchor in 0..5 {
        let (f, _) = triple_identification(&h, &trace, anchor).map_err(|e| e.to_string())?;
        sizes.insert(f.vertex_count());
        let lower = solver::lower_chromatic(&k3(&f), unlimited());
        ensure!(lower.exact() == Some(3), "anchor {anchor}: lower {lower:?}");
    }
    let elapsed = start.elapsed();
    ensure!(sizes == BTreeSet::from([27]), "sizes {sizes:?}");
    within(elapsed, Duration::from_secs(300), "F3")?;
    Ok(format!(
        "27 vertices, W⁻ = 3 for every anchor, {elapsed:.2?}"
    ))
}

struct Sample {
    graph: Graph,
    w_plus: usize,
}

struct DegreeThreeSuite {
    catalog_counts: Vec<usize>,
    samples: Vec<Sample>,
    elapsed: Duration,
}

fn degree_three_suite() -> &'static Result<DegreeThreeSuite, String> {
    static SUITE: OnceLock<Result<DegreeThreeSuite, String>> = OnceLock::new();
    SUITE.get_or_init(|| {
        let start = Instant::now();
        let catalog = connected_maxdeg3_catalog(10);
        let catalog_counts: Vec<usize> = catalog.iter().map(Vec::len).collect();
        let mut graphs: Vec<Graph> = catalog.into_iter().flatten().collect();
        let mut r = rng(4);
        for _ in 0..500 {
            let n = r.gen_range(1..=14);
            let p = r.gen_range(0.3..1.0);
            graphs.push(random_maxdeg3(&mut r, n, p));
        }
        let mut samples = Vec::with_capacity(graphs.len());
        for g in graphs {
            let w_plus = solver::upper_chromatic(&k3(&g), unlimited())
                .exact()
                .ok_or_else(|| format!("upper chromatic number unresolved on {:?}", g.edges()))?;
            samples.push(Sample { graph: g, w_plus });
        }
        Ok(DegreeThreeSuite {
            catalog_counts,
            samples,
            elapsed: start.elapsed(),
        })
    })
}

fn formula_matches_solver() -> Result<String, String> {
    let suite = degree_three_suite().as_ref().map_err(Clone::clone)?;
    ensure!(
        suite.catalog_counts[..5] == [1, 1, 2, 6, 10],
        "catalog counts {:?}",
        suite.catalog_counts
    );
    for s in &suite.samples {
        let formula = fast_paths::wplus_maxdeg3(&s.graph).map_err(|e| e.to_string())?;
        ensure!(
            formula == s.w_plus,
            "formula {formula} vs solver {} on {:?}",
            s.w_plus,
            s.graph.edges()
        );
    }
    within(suite.elapsed, Duration::from_secs(600), "catalog")?;
    let catalog: usize = suite.catalog_counts.iter().sum();
    Ok(format!(
        "{catalog} catalog graphs (by order {:?}) + 500 random, {:.2?}",
        suite.catalog_counts, suite.elapsed
    ))
}

fn wplus_lower_bounds() -> Result<String, String> {
    let suite = degree_three_suite().as_ref().map_err(Clone::clone)?;
    let mut equalities = 0;
    let mut k4_free = 0;
    for s in &suite.samples {
        let n = s.graph.vertex_count();
        ensure!(
            2 * s.w_plus >= n,
            "W⁺ = {} < n/2 on {:?}",
            s.w_plus,
            s.graph.edges()
        );
        let union_of_k4 = is_disjoint_union_of_k4(&s.graph);
        ensure!(
            (2 * s.w_plus == n) == union_of_k4,
            "equality W⁺ = n/2 is {} but disjoint union of K4 is {union_of_k4} on {:?}",
            2 * s.w_plus == n,
            s.graph.edges()
        );
        equalities += union_of_k4 as usize;
        let has_k4_component = s
            .graph
            .components()
            .iter()
            .any(|c| c.len() == 4 && induced_edges(&s.graph, c) == 6);
        if !has_k4_component {
            k4_free += 1;
            ensure!(
                3 * s.w_plus >= 2 * n,
                "W⁺ = {} < 2n/3 on {:?}",
                s.w_plus,
                s.graph.edges()
            );
        }
    }
    Ok(format!(
        "{} graphs; {equalities} reach n/2 (all unions of K4); {k4_free} without K4 components meet 2n/3",
        suite.samples.len()
    ))
}

fn three_degenerate_two_colorings() -> Result<String, String> {
    let mut r = rng(6);
    let mut small = 0;
    let mut with_triangles = 0;
    for _ in 0..500 {
        let n = r.gen_range(1..=25);
        let g = random_3degenerate(&mut r, n);
        let c = fast_paths::two_color_3degenerate(&g).map_err(|e| e.to_string())?;
        ensure!(
            c.len() == n && c.num_colors() <= 2,
            "{} colors",
            c.num_colors()
        );
        ensure!(
            is_worm_coloring(&g, &c).unwrap(),
            "invalid 2-coloring on {:?}",
            g.edges()
        );
        with_triangles += !g.is_triangle_free() as usize;
        if n <= 9 {
            small += 1;
            let report = solver::feasible_set(&k3(&g), unlimited(), false);
            ensure!(report.is_complete(), "spectrum incomplete");
            ensure!(
                report.is_gap_free(),
                "gaps {:?} on {:?}",
                report.gaps,
                g.edges()
            );
            let lo = report.w_minus.unwrap();
            let hi = report.w_plus.unwrap();
            ensure!(
                report.feasible == (lo..=hi).collect::<Vec<_>>(),
                "feasible {:?}",
                report.feasible
            );
        }
    }
    Ok(format!(
        "500 graphs ({with_triangles} with triangles) valid with ≤ 2 colors; {small} spectra with n ≤ 9 gap-free"
    ))
}

fn h2c_equivalence() -> Result<String, String> {
    let start = Instant::now();
    let mut r = rng(7);
    let mut inputs = vec![named::fano()];
    for _ in 0..240 {
        let n = r.gen_range(3..=6);
        let max_m = (n * (n - 1) * (n - 2) / 6).min(5);
        let m = r.gen_range(0..=max_m);
        inputs.push(random_3uniform(&mut r, n, m));
    }
    let mut negatives = 0;
    for h in &inputs {
        let left = brute_hypergraph_two_colorable(h);
        let (g, _) = reduce_h2c_to_worm2(h);
        let right = brute_worm_two_colorable(&g);
        ensure!(
            left == right,
            "hypergraph {:?}: 2-colorable {left}, reduction {right}",
            h.edges()
        );
        negatives += !left as usize;
    }
    ensure!(
        negatives >= 1,
        "the Fano plane should be a negative instance"
    );
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(600), "reduction check")?;
    Ok(format!(
        "{} hypergraphs incl. Fano agree ({negatives} not 2-colorable), {elapsed:.2?}",
        inputs.len()
    ))
}

fn k5_minus_e_forcing() -> Result<String, String> {
    let start = Instant::now();
    let g = named::k5_minus_e();
    ensure!(
        !g.has_edge(0, 1) && g.edge_count() == 9,
        "unexpected gadget"
    );
    let mut valid = 0;
    for code in 0..5usize.pow(5) {
        let colors: Vec<u32> = (0..5)
            .map(|i| (code / 5usize.pow(i)) % 5 + 1)
            .map(|c| c as u32)
            .collect();
        if brute_is_worm(&g, &colors) {
            valid += 1;
            ensure!(
                colors[0] == colors[1],
                "coloring {colors:?} separates the non-adjacent pair"
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(valid > 0, "no WORM colorings at all");
    within(elapsed, Duration::from_secs(1), "enumeration")?;
    Ok(format!(
        "all {valid} valid colorings out of 3125 agree on the pair, {elapsed:.2?}"
    ))
}

fn proposition_equivalence() -> Result<String, String> {
    let mut r = rng(9);
    let mut positives = 0;
    for _ in 0..10_000 {
        let n = r.gen_range(1..=12);
        let p = r.gen_range(0.0..1.0);
        let g = random_graph(&mut r, n, p);
        let k = r.gen_range(1..=4);
        let c = random_coloring(&mut r, n, k);
        let direct = is_worm_coloring(&g, &c).unwrap();
        let via = k3(&g).check_coloring(&c).unwrap();
        ensure!(
            direct == via,
            "disagree on {:?} with {:?}",
            g.edges(),
            c.colors()
        );
        positives += direct as usize;
    }
    Ok(format!(
        "10000 pairs agree ({positives} valid, {} invalid)",
        10_000 - positives
    ))
}

fn k5_and_triangle_free() -> Result<String, String> {
    let k5 = named::complete(5);
    let lower = solver::lower_chromatic(&k3(&k5), unlimited());
    ensure!(lower == ChromaticValue::Uncolorable, "K5 lower {lower:?}");
    let report = solver::feasible_set(&k3(&k5), unlimited(), false);
    ensure!(
        report.colorable == Some(false) && report.feasible.is_empty(),
        "K5 spectrum {report:?}"
    );
    let mut r = rng(10);
    for _ in 0..50 {
        let n = r.gen_range(1..=10);
        let g = random_triangle_free(&mut r, n, 0.6);
        ensure!(
            brute_triangles(&g).is_empty(),
            "generator produced a triangle"
        );
        let report = solver::feasible_set(&k3(&g), unlimited(), false);
        ensure!(
            report.feasible == (1..=n).collect::<Vec<_>>(),
            "feasible {:?} on {:?}",
            report.feasible,
            g.edges()
        );
    }
    Ok("K5 uncolorable; 50 triangle-free graphs have feasible = {1..n}".into())
}

fn four_colorable_merge() -> Result<String, String> {
    let mut r = rng(11);
    let mut accepted = 0;
    let mut rejected = 0;
    let mut by_chi = [0usize; 5];
    while accepted < 100 {
        let n = r.gen_range(1..=12);
        let p = r.gen_range(0.2..0.8);
        let g = random_graph(&mut r, n, p);
        let chi = solver::chromatic_number(&g, unlimited())
            .exact()
            .ok_or("χ unresolved")?;
        if chi > 4 {
            rejected += 1;
            continue;
        }
        accepted += 1;
        by_chi[chi] += 1;
        let SearchOutcome::Found(proper) = solver::proper_coloring(&g, 4, unlimited()) else {
            return Err(format!("no proper 4-coloring although χ = {chi}"));
        };
        let two: Coloring =
            fast_paths::two_color_from_proper4(&g, &proper).map_err(|e| e.to_string())?;
        ensure!(two.num_colors() <= 2, "{} colors", two.num_colors());
        ensure!(
            is_worm_coloring(&g, &two).unwrap(),
            "invalid merge on {:?}",
            g.edges()
        );
    }
    Ok(format!(
        "100 graphs with χ ≤ 4 (χ counts 1..4: {:?}; {rejected} with χ > 4 skipped)",
        &by_chi[1..]
    ))
}

fn main() {
    let checks: [(&str, Check); 11] = [
        ("gap on Grötzsch ⊠ K2", gap_on_grotzsch_product),
        ("C5 ⊠ K2 spectrum", c5_product_gap_free),
        ("F3 lower chromatic number", f3_lower_three),
        ("max-degree-3 formula vs solver", formula_matches_solver),
        ("lower bounds for W⁺ at max degree 3", wplus_lower_bounds),
        (
            "3-degenerate 2-colorings and spectra",
            three_degenerate_two_colorings,
        ),
        ("hypergraph 2-coloring reduction", h2c_equivalence),
        ("K5 − e forcing", k5_minus_e_forcing),
        ("graph vs hypergraph validity", proposition_equivalence),
        ("K5 and triangle-free spectra", k5_and_triangle_free),
        ("2-colorings from proper 4-colorings", four_colorable_merge),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
