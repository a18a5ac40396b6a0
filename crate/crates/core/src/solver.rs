//! Exact colorability, lower/upper chromatic numbers and feasible sets of
//! mixed hypergraphs by canonical backtracking with forward checking.
//!
//! Vertices are visited in a fixed order (most incident sets first, then
//! largest primal degree, then smallest id). A vertex may only take a color
//! at most one above the largest color used so far, so every partition into
//! color classes is visited once. When all but one member of a set is
//! colored, the remaining member's domain is narrowed: a C-set with no
//! repeated color restricts it to the colors already present, a
//! monochromatic D-set forbids that color.
//!
//! For an exact color count `s`, a branch dies once the uncolored vertices
//! that could still open a new color are fewer than the colors still
//! missing. Feasibility at `s` is never inferred from `s ± 1`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::hypergraph::{Coloring, MixedHypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("node limit must be positive")]
    ZeroNodes,
    #[error("time limit must be positive")]
    ZeroTime,
}

/// Limits applied to a single search. Both absent means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    node_limit: Option<u64>,
    time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn new(node_limit: Option<u64>, time_limit: Option<Duration>) -> Result<Self, BudgetError> {
        if node_limit == Some(0) {
            return Err(BudgetError::ZeroNodes);
        }
        if time_limit == Some(Duration::ZERO) {
            return Err(BudgetError::ZeroTime);
        }
        Ok(SearchBudget {
            node_limit,
            time_limit,
        })
    }

    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(limit: u64) -> Result<Self, BudgetError> {
        SearchBudget::new(Some(limit), None)
    }

    pub fn time(limit: Duration) -> Result<Self, BudgetError> {
        SearchBudget::new(None, Some(limit))
    }

    pub fn node_limit(&self) -> Option<u64> {
        self.node_limit
    }

    pub fn time_limit(&self) -> Option<Duration> {
        self.time_limit
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Coloring),
    /// Exhaustive search found nothing.
    Infeasible,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Result of a lower or upper chromatic number computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChromaticValue {
    Exact {
        value: usize,
    },
    Uncolorable,
    /// The budget ran out; if the hypergraph is colorable the value lies in
    /// `lower..=upper`. `colorable` is true once some coloring was found.
    Unresolved {
        lower: usize,
        upper: usize,
        colorable: bool,
    },
}

impl ChromaticValue {
    pub fn exact(&self) -> Option<usize> {
        match *self {
            ChromaticValue::Exact { value } => Some(value),
            _ => None,
        }
    }
}

/// Feasible set of color counts, with gaps and optional witnesses.
///
/// When some searches ran out of budget, their `s` values are listed in
/// `unresolved`; `w_minus`/`w_plus` are then only reported if every smaller
/// (respectively larger) count was settled, and `gaps` only lists counts
/// proven infeasible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub colorable: Option<bool>,
    pub w_minus: Option<usize>,
    pub w_plus: Option<usize>,
    pub feasible: Vec<usize>,
    pub gaps: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unresolved: Vec<usize>,
    #[serde(
        default,
        skip_serializing_if = "BTreeMap::is_empty",
        with = "witness_keys"
    )]
    pub witnesses: BTreeMap<usize, Coloring>,
}

/// Map keys go through strings so reports also load when nested inside
/// internally tagged enums.
mod witness_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::hypergraph::Coloring;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<usize, Coloring>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_map(Some(map.len()))?;
        for (k, v) in map {
            out.serialize_entry(&k.to_string(), v)?;
        }
        out.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<usize, Coloring>, D::Error> {
        BTreeMap::<String, Coloring>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>().map(|k| (k, v)).map_err(|_| {
                    D::Error::custom(format!("witness key `{k}` is not a color count"))
                })
            })
            .collect()
    }
}

impl SpectrumReport {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    pub fn is_gap_free(&self) -> bool {
        self.gaps.is_empty()
    }

    fn from_outcomes(
        n: usize,
        outcomes: Vec<(usize, SearchOutcome)>,
        keep_witnesses: bool,
    ) -> Self {
        let mut feasible = Vec::new();
        let mut unresolved = Vec::new();
        let mut witnesses = BTreeMap::new();
        for (s, outcome) in outcomes {
            match outcome {
                SearchOutcome::Found(c) => {
                    feasible.push(s);
                    if keep_witnesses {
                        witnesses.insert(s, c);
                    }
                }
                SearchOutcome::BudgetExceeded => unresolved.push(s),
                SearchOutcome::Infeasible => {}
            }
        }
        let colorable = if !feasible.is_empty() {
            Some(true)
        } else if unresolved.is_empty() {
            Some(false)
        } else {
            None
        };
        let (w_minus, w_plus, gaps) = match (feasible.first(), feasible.last()) {
            (Some(&lo), Some(&hi)) => {
                let w_minus = unresolved.iter().all(|&u| u > lo).then_some(lo);
                let w_plus = unresolved.iter().all(|&u| u < hi).then_some(hi);
                let gaps = (lo + 1..hi)
                    .filter(|k| feasible.binary_search(k).is_err() && !unresolved.contains(k))
                    .collect();
                (w_minus, w_plus, gaps)
            }
            _ => (None, None, Vec::new()),
        };
        debug_assert!(feasible.iter().all(|&s| s <= n.max(1)));
        SpectrumReport {
            colorable,
            w_minus,
            w_plus,
            feasible,
            gaps,
            unresolved,
            witnesses,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Exactly(usize),
    AtMost(usize),
}

impl Target {
    fn max_colors(self) -> usize {
        match self {
            Target::Exactly(s) | Target::AtMost(s) => s,
        }
    }
}

/// Greedy static order: repeatedly take the vertex that completes the most
/// sets (all other members already placed), then the one touching the most
/// placed sets; remaining ties go to more incident sets, higher degree,
/// smaller id.
fn connected_order(
    n: usize,
    sets: &BTreeMap<Vec<usize>, (bool, bool)>,
    incidence: &[usize],
    degree: &[usize],
) -> Vec<usize> {
    let sets: Vec<&Vec<usize>> = sets.keys().collect();
    let mut member_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, set) in sets.iter().enumerate() {
        for &v in set.iter() {
            member_of[v].push(i);
        }
    }
    let mut placed_in = vec![0usize; sets.len()];
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let closes = member_of[v]
                    .iter()
                    .filter(|&&i| placed_in[i] + 1 == sets[i].len())
                    .count();
                let touches = member_of[v].iter().filter(|&&i| placed_in[i] > 0).count();
                (
                    closes,
                    touches,
                    incidence[v],
                    degree[v],
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        placed[v] = true;
        for &i in &member_of[v] {
            placed_in[i] += 1;
        }
        order.push(v);
    }
    order
}

/// Set, stored by search positions in ascending order.
#[derive(Debug, Clone)]
struct Constraint {
    members: Vec<usize>,
    needs_repeat: bool,
    needs_two: bool,
}

/// A mixed hypergraph prepared for repeated searches. Immutable; each
/// search allocates its own state, so one instance can serve parallel
/// sweeps over `s`.
#[derive(Debug, Clone)]
pub struct Solver {
    n: usize,
    /// position -> vertex
    order: Vec<usize>,
    constraints: Vec<Constraint>,
    /// position -> constraints whose second-to-last member sits there
    triggers: Vec<Vec<usize>>,
}

impl Solver {
    pub fn new(h: &MixedHypergraph) -> Self {
        let n = h.vertex_count();
        let mut merged: BTreeMap<Vec<usize>, (bool, bool)> = BTreeMap::new();
        for set in h.c_family() {
            merged.entry(set.clone()).or_default().0 = true;
        }
        for set in h.d_family() {
            merged.entry(set.clone()).or_default().1 = true;
        }

        let mut incidence = vec![0usize; n];
        let mut partners: Vec<Vec<usize>> = vec![Vec::new(); n];
        for set in merged.keys() {
            for &v in set {
                incidence[v] += 1;
                partners[v].extend(set.iter().copied().filter(|&w| w != v));
            }
        }
        let degree: Vec<usize> = partners
            .iter_mut()
            .map(|p| {
                p.sort_unstable();
                p.dedup();
                p.len()
            })
            .collect();

        let order = connected_order(n, &merged, &incidence, &degree);
        let mut position = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }

        let mut constraints = Vec::with_capacity(merged.len());
        let mut triggers = vec![Vec::new(); n];
        for (set, (needs_repeat, needs_two)) in merged {
            let mut members: Vec<usize> = set.iter().map(|&v| position[v]).collect();
            members.sort_unstable();
            triggers[members[members.len() - 2]].push(constraints.len());
            constraints.push(Constraint {
                members,
                needs_repeat,
                needs_two,
            });
        }

        Solver {
            n,
            order,
            constraints,
            triggers,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// A coloring with exactly `s` colors, in canonical form.
    pub fn find_exactly(&self, s: usize, budget: SearchBudget) -> SearchOutcome {
        self.run(Target::Exactly(s), budget)
    }

    /// A coloring with at most `s` colors, in canonical form.
    pub fn find_at_most(&self, s: usize, budget: SearchBudget) -> SearchOutcome {
        self.run(Target::AtMost(s), budget)
    }

    fn run(&self, target: Target, budget: SearchBudget) -> SearchOutcome {
        let s = target.max_colors();
        if self.n == 0 {
            return match target {
                Target::Exactly(0) | Target::AtMost(_) => {
                    SearchOutcome::Found(Coloring::monochromatic(0))
                }
                Target::Exactly(_) => SearchOutcome::Infeasible,
            };
        }
        let target = match target {
            Target::AtMost(s) => Target::AtMost(s.min(self.n)),
            exact => exact,
        };
        if s == 0 || target.max_colors() > self.n {
            return SearchOutcome::Infeasible;
        }
        let mut state = State::new(self, target, budget);
        match state.search(0) {
            Step::Found => {
                let mut colors = vec![0u32; self.n];
                for (p, &v) in self.order.iter().enumerate() {
                    colors[v] = state.color[p];
                }
                let coloring = Coloring::new(colors)
                    .expect("search colors every vertex")
                    .canonical();
                SearchOutcome::Found(coloring)
            }
            Step::Exhausted => SearchOutcome::Infeasible,
            Step::Aborted => SearchOutcome::BudgetExceeded,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    Exhausted,
    Aborted,
}

enum Undo {
    Domain { pos: usize, word: usize, old: u64 },
    Restricted { pos: usize },
}

struct State<'a> {
    solver: &'a Solver,
    target: Target,
    words: usize,
    color: Vec<u32>,
    domain: Vec<u64>,
    /// domain limited to colors already in use
    restricted: Vec<bool>,
    free_uncolored: usize,
    used: usize,
    trail: Vec<Undo>,
    nodes: u64,
    started: Instant,
    budget: SearchBudget,
}

const CLOCK_INTERVAL: u64 = 1 << 10;

impl<'a> State<'a> {
    fn new(solver: &'a Solver, target: Target, budget: SearchBudget) -> Self {
        let n = solver.n;
        let s = target.max_colors();
        let words = (s + 1).div_ceil(64);
        let mut full = vec![0u64; words];
        for c in 1..=s {
            full[c / 64] |= 1u64 << (c % 64);
        }
        let mut domain = Vec::with_capacity(words * n);
        for _ in 0..n {
            domain.extend_from_slice(&full);
        }
        State {
            solver,
            target,
            words,
            color: vec![0; n],
            domain,
            restricted: vec![false; n],
            free_uncolored: n,
            used: 0,
            trail: Vec::new(),
            nodes: 0,
            started: Instant::now(),
            budget,
        }
    }

    #[inline]
    fn allows(&self, pos: usize, c: usize) -> bool {
        self.domain[pos * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.budget.node_limit {
            if self.nodes > limit {
                return true;
            }
        }
        if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(CLOCK_INTERVAL) && self.started.elapsed() >= limit {
                return true;
            }
        }
        false
    }

    fn search(&mut self, pos: usize) -> Step {
        let n = self.solver.n;
        let s = self.target.max_colors();
        if pos == n {
            return match self.target {
                Target::Exactly(s) if self.used != s => Step::Exhausted,
                _ => Step::Found,
            };
        }
        if let Target::Exactly(s) = self.target {
            if self.free_uncolored < s - self.used {
                return Step::Exhausted;
            }
        }

        let fresh = self.used + 1;
        let open_fresh_first = matches!(self.target, Target::Exactly(_)) && fresh <= s;
        let mut candidates: Vec<usize> = Vec::with_capacity(fresh);
        if open_fresh_first {
            candidates.push(fresh);
            candidates.extend(1..=self.used);
        } else {
            candidates.extend(1..=fresh.min(s));
        }

        for c in candidates {
            if !self.allows(pos, c) {
                continue;
            }
            if self.out_of_budget() {
                return Step::Aborted;
            }
            let mark = self.trail.len();
            let saved_used = self.used;
            let saved_free = self.free_uncolored;

            self.color[pos] = c as u32;
            if !self.restricted[pos] {
                self.free_uncolored -= 1;
            }
            self.used = self.used.max(c);

            if self.propagate(pos) {
                match self.search(pos + 1) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }

            self.rewind(mark);
            self.color[pos] = 0;
            self.used = saved_used;
            self.free_uncolored = saved_free;
        }
        Step::Exhausted
    }

    /// Narrows the last member of every set that `pos` leaves with a single
    /// uncolored vertex. False on a wiped-out domain.
    fn propagate(&mut self, pos: usize) -> bool {
        let solver = self.solver;
        for &ci in &solver.triggers[pos] {
            let con = &solver.constraints[ci];
            let (&last, colored) = con.members.split_last().unwrap();
            let mut repeat = false;
            let mut mono = true;
            let first = self.color[colored[0]];
            for (i, &p) in colored.iter().enumerate() {
                let c = self.color[p];
                debug_assert!(c != 0);
                mono &= c == first;
                if !repeat {
                    repeat = colored[i + 1..].iter().any(|&q| self.color[q] == c);
                }
            }
            if con.needs_repeat && !repeat && !self.restrict_to_present(last, colored) {
                return false;
            }
            if con.needs_two && mono && !self.forbid(last, first as usize) {
                return false;
            }
        }
        true
    }

    fn restrict_to_present(&mut self, target: usize, colored: &[usize]) -> bool {
        let mut nonempty = false;
        for wi in 0..self.words {
            let mut mask = 0u64;
            for &p in colored {
                let c = self.color[p] as usize;
                if c / 64 == wi {
                    mask |= 1u64 << (c % 64);
                }
            }
            let idx = target * self.words + wi;
            let old = self.domain[idx];
            let new = old & mask;
            if new != old {
                self.trail.push(Undo::Domain {
                    pos: target,
                    word: wi,
                    old,
                });
                self.domain[idx] = new;
            }
            nonempty |= new != 0;
        }
        if !self.restricted[target] {
            self.restricted[target] = true;
            self.free_uncolored -= 1;
            self.trail.push(Undo::Restricted { pos: target });
        }
        nonempty
    }

    fn forbid(&mut self, target: usize, c: usize) -> bool {
        let idx = target * self.words + c / 64;
        let old = self.domain[idx];
        let new = old & !(1u64 << (c % 64));
        if new != old {
            self.trail.push(Undo::Domain {
                pos: target,
                word: c / 64,
                old,
            });
            self.domain[idx] = new;
        }
        self.domain[target * self.words..(target + 1) * self.words]
            .iter()
            .any(|&w| w != 0)
    }

    fn rewind(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Domain { pos, word, old } => self.domain[pos * self.words + word] = old,
                Undo::Restricted { pos } => {
                    self.restricted[pos] = false;
                    self.free_uncolored += 1;
                }
            }
        }
    }
}

pub fn find_exactly_s(h: &MixedHypergraph, s: usize, budget: SearchBudget) -> SearchOutcome {
    Solver::new(h).find_exactly(s, budget)
}

/// Smallest number of colors in a coloring of `h`.
pub fn lower_chromatic(h: &MixedHypergraph, budget: SearchBudget) -> ChromaticValue {
    lower_with(&Solver::new(h), budget)
}

fn lower_with(solver: &Solver, budget: SearchBudget) -> ChromaticValue {
    let n = solver.vertex_count();
    if n == 0 {
        return ChromaticValue::Exact { value: 0 };
    }
    let witness = match solver.find_at_most(n, budget) {
        SearchOutcome::Infeasible => return ChromaticValue::Uncolorable,
        SearchOutcome::Found(c) => Some(c.num_colors()),
        SearchOutcome::BudgetExceeded => None,
    };
    let mut first_unknown = None;
    for s in 1..=witness.unwrap_or(n) {
        match solver.find_at_most(s, budget) {
            SearchOutcome::Found(c) => {
                let value = c.num_colors();
                return match first_unknown {
                    None => ChromaticValue::Exact { value },
                    Some(lower) => ChromaticValue::Unresolved {
                        lower,
                        upper: value,
                        colorable: true,
                    },
                };
            }
            SearchOutcome::BudgetExceeded => {
                first_unknown.get_or_insert(s);
            }
            SearchOutcome::Infeasible => {}
        }
    }
    match (first_unknown, witness) {
        (Some(lower), Some(upper)) => ChromaticValue::Unresolved {
            lower,
            upper,
            colorable: true,
        },
        (Some(lower), None) => ChromaticValue::Unresolved {
            lower,
            upper: n,
            colorable: false,
        },
        // every at-most search up to n proved infeasible
        (None, _) => ChromaticValue::Uncolorable,
    }
}

/// Largest number of colors in a coloring of `h`, searching downward from `n`.
pub fn upper_chromatic(h: &MixedHypergraph, budget: SearchBudget) -> ChromaticValue {
    let solver = Solver::new(h);
    let n = solver.vertex_count();
    if n == 0 {
        return ChromaticValue::Exact { value: 0 };
    }
    let witness = match solver.find_at_most(n, budget) {
        SearchOutcome::Infeasible => return ChromaticValue::Uncolorable,
        SearchOutcome::Found(c) => Some(c.num_colors()),
        SearchOutcome::BudgetExceeded => None,
    };
    let floor = witness.unwrap_or(1);
    let mut highest_unknown = None;
    for s in (floor..=n).rev() {
        match solver.find_exactly(s, budget) {
            SearchOutcome::Found(_) => {
                return match highest_unknown {
                    None => ChromaticValue::Exact { value: s },
                    Some(upper) => ChromaticValue::Unresolved {
                        lower: s,
                        upper,
                        colorable: true,
                    },
                };
            }
            SearchOutcome::BudgetExceeded => {
                highest_unknown.get_or_insert(s);
            }
            SearchOutcome::Infeasible => {}
        }
    }
    match highest_unknown {
        // the witness count itself was searched and found, so this arm
        // only runs when the colorability check ran out of budget
        Some(upper) => ChromaticValue::Unresolved {
            lower: floor,
            upper,
            colorable: witness.is_some(),
        },
        None => ChromaticValue::Uncolorable,
    }
}

/// Runs an exact search for every `s` in `1..=n`, in parallel.
pub fn feasible_set(
    h: &MixedHypergraph,
    budget: SearchBudget,
    keep_witnesses: bool,
) -> SpectrumReport {
    let solver = Solver::new(h);
    let n = solver.vertex_count();
    if n == 0 {
        let mut report = SpectrumReport::from_outcomes(0, vec![], keep_witnesses);
        report.colorable = Some(true);
        report.feasible = vec![0];
        report.w_minus = Some(0);
        report.w_plus = Some(0);
        return report;
    }
    if solver.find_at_most(n, budget) == SearchOutcome::Infeasible {
        return SpectrumReport::from_outcomes(n, vec![], keep_witnesses);
    }
    let outcomes: Vec<(usize, SearchOutcome)> = (1..=n)
        .into_par_iter()
        .map(|s| (s, solver.find_exactly(s, budget)))
        .collect();
    SpectrumReport::from_outcomes(n, outcomes, keep_witnesses)
}

/// Proper chromatic number of `g`.
pub fn chromatic_number(g: &Graph, budget: SearchBudget) -> ChromaticValue {
    lower_with(
        &Solver::new(&MixedHypergraph::proper_coloring_of(g)),
        budget,
    )
}

/// A proper coloring of `g` with at most `k` colors.
pub fn proper_coloring(g: &Graph, k: usize, budget: SearchBudget) -> SearchOutcome {
    Solver::new(&MixedHypergraph::proper_coloring_of(g)).find_at_most(k, budget)
}
