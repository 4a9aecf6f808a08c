//! Exact and heuristic search for orientations of a graph maximising or
//! minimising the Wiener index, plus a labelled-tournament maximiser.
//!
//! Orientations are encoded as bit masks over the input edge list, edge 0 in
//! the most significant position and `forward = 0`, so ascending mask order
//! is exactly the canonical order of choice vectors read as binary strings.
//! Exhaustive search may split the mask range across worker threads; merging
//! compares exact integers and keeps the smallest optimal mask, so the
//! resulting report is bit-identical for any worker count. Since the Wiener
//! index is invariant under taking the converse and the converse complements
//! the mask, the single-witness searches only scan the half space with edge
//! 0 oriented forward.
//!
//! Branch-and-bound is restricted to trees: there, `W^max` of a partial
//! orientation bounds the Wiener index of every completion, which is false
//! for general graphs (orienting can lengthen directed distances).

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;
use thiserror::Error;

use crate::graph::{EdgeChoice, GraphError, MixedGraph, OrientationAssignment};
use crate::transitive::find_transitive_orientation;

/// Exhaustive enumeration refuses instances with more edges than this.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 24;

/// Largest source order accepted by [`tournament_max`].
pub const TOURNAMENT_ORDER_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("search requires an arc-free graph")]
    NotArcFree,
    #[error("search requires a connected graph")]
    Disconnected,
    #[error("{m} edges exceed the exhaustive enumeration limit of {limit}")]
    TooManyEdges { m: usize, limit: usize },
    #[error("branch-and-bound requires the underlying graph to be a tree")]
    NotATree,
    #[error("strategy {0} is not valid for this operation")]
    BadStrategy(&'static str),
    #[error("tournament order must be between 2 and {limit} (got {n})")]
    TournamentOrder { n: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Max,
    Min,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Max => "max",
            Objective::Min => "min",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    BnbTree,
    Local,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::BnbTree => "bnb",
            Strategy::Local => "local",
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "bnb" => Ok(Strategy::BnbTree),
            "local" => Ok(Strategy::Local),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of an orientation search.
///
/// `explored` counts complete orientations whose Wiener index was evaluated
/// (for branch-and-bound that is the number of leaves reached); `pruned`
/// counts subtrees cut by the bound. Witnesses are sorted by their choice
/// vectors read as binary strings with `forward = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub objective: Objective,
    pub value: i64,
    pub witnesses: Vec<OrientationAssignment>,
    pub explored: u64,
    pub pruned: u64,
    pub strategy: Strategy,
}

impl SearchReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "objective": self.objective.name(),
            "value": self.value,
            "witnesses": self
                .witnesses
                .iter()
                .map(|w| w.arrow_strings())
                .collect::<Vec<_>>(),
            "explored": self.explored,
            "pruned": self.pruned,
            "strategy": self.strategy.name(),
        })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }
}

/// Reusable buffers for evaluating orientations of a fixed edge list.
struct Evaluator {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    dist: Vec<u32>,
    queue: VecDeque<usize>,
}

impl Evaluator {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        Evaluator {
            n,
            edges: edges.to_vec(),
            adj: vec![Vec::new(); n],
            dist: vec![0; n],
            queue: VecDeque::new(),
        }
    }

    fn m(&self) -> usize {
        self.edges.len()
    }

    /// Bit of edge `i` in a mask: edge 0 is the most significant, so mask
    /// order equals canonical choice-vector order. A set bit means backward.
    fn bit(&self, i: usize) -> u64 {
        1 << (self.m() - 1 - i)
    }

    fn load_mask(&mut self, mask: u64) {
        for list in &mut self.adj {
            list.clear();
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if mask & self.bit(i) == 0 {
                self.adj[u].push(v);
            } else {
                self.adj[v].push(u);
            }
        }
    }

    fn load_partial(&mut self, choices: &[EdgeChoice]) {
        for list in &mut self.adj {
            list.clear();
        }
        for (&(u, v), choice) in self.edges.iter().zip(choices) {
            match choice {
                EdgeChoice::Forward => self.adj[u].push(v),
                EdgeChoice::Backward => self.adj[v].push(u),
                EdgeChoice::Undecided => {
                    self.adj[u].push(v);
                    self.adj[v].push(u);
                }
            }
        }
    }

    fn bfs(&mut self, s: usize) {
        const UNSEEN: u32 = u32::MAX;
        self.dist.fill(UNSEEN);
        self.dist[s] = 0;
        self.queue.clear();
        self.queue.push_back(s);
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u];
            for idx in 0..self.adj[u].len() {
                let w = self.adj[u][idx];
                if self.dist[w] == UNSEEN {
                    self.dist[w] = du + 1;
                    self.queue.push_back(w);
                }
            }
        }
    }

    /// Wiener index (ordered pairs, zero convention) of the loaded digraph.
    fn wiener_directed_loaded(&mut self) -> i64 {
        let mut sum: i64 = 0;
        for s in 0..self.n {
            self.bfs(s);
            for &d in &self.dist {
                if d != u32::MAX {
                    sum += i64::from(d);
                }
            }
        }
        sum
    }

    fn wiener_of_mask(&mut self, mask: u64) -> i64 {
        self.load_mask(mask);
        self.wiener_directed_loaded()
    }

    /// `W^max` of the loaded mixed graph.
    fn wiener_max_loaded(&mut self) -> i64 {
        let mut rows = vec![0u32; self.n * self.n];
        for s in 0..self.n {
            self.bfs(s);
            for (v, &d) in self.dist.iter().enumerate() {
                rows[s * self.n + v] = if d == u32::MAX { 0 } else { d };
            }
        }
        let mut sum: i64 = 0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                sum += i64::from(rows[u * self.n + v].max(rows[v * self.n + u]));
            }
        }
        sum
    }

    fn wiener_max_of_partial(&mut self, choices: &[EdgeChoice]) -> i64 {
        self.load_partial(choices);
        self.wiener_max_loaded()
    }
}

fn mask_to_assignment(g: &MixedGraph, mask: u64) -> OrientationAssignment {
    let m = g.undirected_edges().len();
    let choices: Vec<EdgeChoice> = (0..m)
        .map(|i| {
            if mask & (1 << (m - 1 - i)) == 0 {
                EdgeChoice::Forward
            } else {
                EdgeChoice::Backward
            }
        })
        .collect();
    OrientationAssignment::new(g, choices).expect("mask matches edge count")
}

struct ChunkOutcome {
    best: i64,
    best_mask: u64,
    optima: Vec<u64>,
    explored: u64,
}

fn scan_range(
    n: usize,
    edges: &[(usize, usize)],
    lo: u64,
    hi: u64,
    maximize: bool,
    collect_optima: bool,
) -> ChunkOutcome {
    let mut ev = Evaluator::new(n, edges);
    let mut best = if maximize { i64::MIN } else { i64::MAX };
    let mut best_mask = lo;
    let mut optima = Vec::new();
    for mask in lo..hi {
        let value = ev.wiener_of_mask(mask);
        let improves = if maximize { value > best } else { value < best };
        if improves {
            best = value;
            best_mask = mask;
            if collect_optima {
                optima.clear();
                optima.push(mask);
            }
        } else if collect_optima && value == best {
            optima.push(mask);
        }
    }
    ChunkOutcome {
        best,
        best_mask,
        optima,
        explored: hi - lo,
    }
}

/// Scans `[0, total)` in `workers` contiguous chunks and merges in chunk
/// order, which keeps the outcome independent of the split.
fn parallel_scan(
    n: usize,
    edges: &[(usize, usize)],
    total: u64,
    maximize: bool,
    collect_optima: bool,
    workers: usize,
) -> ChunkOutcome {
    let workers = workers.max(1).min(total.max(1) as usize);
    let outcomes: Vec<ChunkOutcome> = if workers <= 1 || total < 2 {
        vec![scan_range(n, edges, 0, total, maximize, collect_optima)]
    } else {
        let chunk = total / workers as u64;
        let remainder = total % workers as u64;
        let mut ranges = Vec::with_capacity(workers);
        let mut start = 0;
        for w in 0..workers as u64 {
            let len = chunk + u64::from(w < remainder);
            ranges.push((start, start + len));
            start += len;
        }
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|(lo, hi)| {
                    scope.spawn(move || scan_range(n, edges, lo, hi, maximize, collect_optima))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect()
        })
    };

    let mut merged = ChunkOutcome {
        best: if maximize { i64::MIN } else { i64::MAX },
        best_mask: 0,
        optima: Vec::new(),
        explored: 0,
    };
    for outcome in &outcomes {
        merged.explored += outcome.explored;
        if outcome.explored == 0 {
            continue;
        }
        let improves = if maximize {
            outcome.best > merged.best
        } else {
            outcome.best < merged.best
        };
        if improves {
            merged.best = outcome.best;
            merged.best_mask = outcome.best_mask;
        }
    }
    if collect_optima {
        // Chunks hold their local optima; keep those at the global optimum.
        // Chunk order is ascending mask order, so no sort is needed.
        for outcome in &outcomes {
            if outcome.explored > 0 && outcome.best == merged.best {
                merged.optima.extend_from_slice(&outcome.optima);
            }
        }
    }
    merged
}

fn check_search_input(g: &MixedGraph) -> Result<(), SolverError> {
    if !g.is_arc_free() {
        return Err(SolverError::NotArcFree);
    }
    if !g.is_connected_underlying() {
        return Err(SolverError::Disconnected);
    }
    Ok(())
}

fn check_edge_limit(m: usize) -> Result<(), SolverError> {
    if m > EXHAUSTIVE_EDGE_LIMIT {
        return Err(SolverError::TooManyEdges {
            m,
            limit: EXHAUSTIVE_EDGE_LIMIT,
        });
    }
    Ok(())
}

fn trivial_report(g: &MixedGraph, objective: Objective, strategy: Strategy) -> SearchReport {
    SearchReport {
        objective,
        value: 0,
        witnesses: vec![OrientationAssignment::all_undecided(g)],
        explored: 1,
        pruned: 0,
        strategy,
    }
}

/// Finds an orientation of maximum Wiener index.
///
/// `Exhaustive` enumerates all `2^m` orientations (or the half space with
/// edge 0 forward when a single witness suffices, doubling implicitly via
/// converse symmetry); `BnbTree` branches edge by edge in input order and
/// prunes with the `W^max` bound, which is only valid on trees. Both return
/// the same value and the same canonically-smallest witness. With
/// `all_optima` set, `witnesses` holds every optimal orientation and is
/// closed under taking the converse.
pub fn orient_max_exact(
    g: &MixedGraph,
    strategy: Strategy,
    all_optima: bool,
    workers: usize,
) -> Result<SearchReport, SolverError> {
    check_search_input(g)?;
    let m = g.undirected_edges().len();
    match strategy {
        Strategy::Exhaustive => {
            check_edge_limit(m)?;
            if m == 0 {
                return Ok(trivial_report(g, Objective::Max, strategy));
            }
            let total = if all_optima {
                1u64 << m
            } else {
                1u64 << (m - 1)
            };
            let outcome = parallel_scan(
                g.n(),
                g.undirected_edges(),
                total,
                true,
                all_optima,
                workers,
            );
            let witnesses = if all_optima {
                outcome
                    .optima
                    .iter()
                    .map(|&mask| mask_to_assignment(g, mask))
                    .collect()
            } else {
                vec![mask_to_assignment(g, outcome.best_mask)]
            };
            Ok(SearchReport {
                objective: Objective::Max,
                value: outcome.best,
                witnesses,
                explored: outcome.explored,
                pruned: 0,
                strategy,
            })
        }
        Strategy::BnbTree => {
            if m + 1 != g.n() {
                return Err(SolverError::NotATree);
            }
            if m == 0 {
                return Ok(trivial_report(g, Objective::Max, strategy));
            }
            let (value, masks, explored, pruned) = bnb_tree_max(g, all_optima);
            Ok(SearchReport {
                objective: Objective::Max,
                value,
                witnesses: masks
                    .into_iter()
                    .map(|mask| mask_to_assignment(g, mask))
                    .collect(),
                explored,
                pruned,
                strategy,
            })
        }
        Strategy::Local => Err(SolverError::BadStrategy("local")),
    }
}

/// Branch-and-bound over tree orientations. Branches edges in input order,
/// fixing edge 0 forward; the first leaf reached is the all-forward
/// orientation, which serves as the initial incumbent. Returns
/// `(value, witness masks, leaves evaluated, subtrees pruned)`.
fn bnb_tree_max(g: &MixedGraph, all_optima: bool) -> (i64, Vec<u64>, u64, u64) {
    let m = g.undirected_edges().len();
    let mut ev = Evaluator::new(g.n(), g.undirected_edges());
    let mut choices = vec![EdgeChoice::Undecided; m];
    let mut incumbent = i64::MIN;
    let mut optima: Vec<u64> = Vec::new();
    let mut explored = 0u64;
    let mut pruned = 0u64;

    struct Ctx<'a> {
        ev: &'a mut Evaluator,
        choices: &'a mut Vec<EdgeChoice>,
        incumbent: &'a mut i64,
        optima: &'a mut Vec<u64>,
        explored: &'a mut u64,
        pruned: &'a mut u64,
        all_optima: bool,
        m: usize,
    }

    fn descend(ctx: &mut Ctx<'_>, depth: usize, mask: u64) {
        if depth == ctx.m {
            let value = ctx.ev.wiener_of_mask(mask);
            *ctx.explored += 1;
            if value > *ctx.incumbent {
                *ctx.incumbent = value;
                ctx.optima.clear();
                ctx.optima.push(mask);
            } else if ctx.all_optima && value == *ctx.incumbent {
                ctx.optima.push(mask);
            }
            return;
        }
        if *ctx.incumbent != i64::MIN {
            let bound = ctx.ev.wiener_max_of_partial(ctx.choices);
            let cut = if ctx.all_optima {
                bound < *ctx.incumbent
            } else {
                bound <= *ctx.incumbent
            };
            if cut {
                *ctx.pruned += 1;
                return;
            }
        }
        let bit = 1u64 << (ctx.m - 1 - depth);
        ctx.choices[depth] = EdgeChoice::Forward;
        descend(ctx, depth + 1, mask);
        if depth > 0 {
            ctx.choices[depth] = EdgeChoice::Backward;
            descend(ctx, depth + 1, mask | bit);
        }
        ctx.choices[depth] = EdgeChoice::Undecided;
    }

    descend(
        &mut Ctx {
            ev: &mut ev,
            choices: &mut choices,
            incumbent: &mut incumbent,
            optima: &mut optima,
            explored: &mut explored,
            pruned: &mut pruned,
            all_optima,
            m,
        },
        0,
        0,
    );

    if all_optima {
        // Close the forward half space under taking the converse.
        let full = (1u64 << m) - 1;
        let mut closed: Vec<u64> = optima.iter().flat_map(|&x| [x, !x & full]).collect();
        closed.sort_unstable();
        closed.dedup();
        optima = closed;
    }
    (incumbent, optima, explored, pruned)
}

/// Finds an orientation of minimum Wiener index by exhaustive enumeration.
///
/// Every orientation of a graph with `m` edges has Wiener index at least
/// `m`, with equality exactly for transitive orientations, so the search
/// first tries [`find_transitive_orientation`] and returns its witness with
/// value `m` (and `explored = 0`) when one exists.
pub fn orient_min_exact(g: &MixedGraph, workers: usize) -> Result<SearchReport, SolverError> {
    check_search_input(g)?;
    let m = g.undirected_edges().len();
    check_edge_limit(m)?;
    if m == 0 {
        return Ok(trivial_report(g, Objective::Min, Strategy::Exhaustive));
    }
    if let Some(witness) = find_transitive_orientation(g)? {
        return Ok(SearchReport {
            objective: Objective::Min,
            value: m as i64,
            witnesses: vec![witness],
            explored: 0,
            pruned: 0,
            strategy: Strategy::Exhaustive,
        });
    }
    let outcome = parallel_scan(
        g.n(),
        g.undirected_edges(),
        1u64 << (m - 1),
        false,
        false,
        workers,
    );
    Ok(SearchReport {
        objective: Objective::Min,
        value: outcome.best,
        witnesses: vec![mask_to_assignment(g, outcome.best_mask)],
        explored: outcome.explored,
        pruned: 0,
        strategy: Strategy::Exhaustive,
    })
}

/// Hill climbing over single-edge flips from `restarts` random starting
/// orientations. Deterministic for a fixed seed; the reported value never
/// exceeds the true maximum.
pub fn orient_local_search(
    g: &MixedGraph,
    restarts: u32,
    seed: u64,
) -> Result<SearchReport, SolverError> {
    check_search_input(g)?;
    let m = g.undirected_edges().len();
    if m > 63 {
        return Err(SolverError::TooManyEdges { m, limit: 63 });
    }
    if m == 0 {
        return Ok(trivial_report(g, Objective::Max, Strategy::Local));
    }
    let full = (1u64 << m) - 1;
    let mut ev = Evaluator::new(g.n(), g.undirected_edges());
    let mut rng = StdRng::seed_from_u64(seed);
    let mut best = i64::MIN;
    let mut best_mask = 0u64;
    let mut explored = 0u64;

    for _ in 0..restarts.max(1) {
        let mut mask = rng.random::<u64>() & full;
        let mut value = ev.wiener_of_mask(mask);
        explored += 1;
        loop {
            let mut improved: Option<(i64, u64)> = None;
            for i in 0..m {
                let candidate = mask ^ (1u64 << (m - 1 - i));
                let v = ev.wiener_of_mask(candidate);
                explored += 1;
                if v > value && improved.is_none_or(|(iv, _)| v > iv) {
                    improved = Some((v, candidate));
                }
            }
            match improved {
                Some((v, next)) => {
                    value = v;
                    mask = next;
                }
                None => break,
            }
        }
        if value > best || (value == best && mask < best_mask) {
            best = value;
            best_mask = mask;
        }
    }

    Ok(SearchReport {
        objective: Objective::Max,
        value: best,
        witnesses: vec![mask_to_assignment(g, best_mask)],
        explored,
        pruned: 0,
        strategy: Strategy::Local,
    })
}

/// Maximum Wiener index over all labelled tournaments of order `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TournamentReport {
    pub n: usize,
    pub value: i64,
    pub witness: MixedGraph,
    /// `C(n+1, 3) - 1`, reported alongside for comparison only; no relation
    /// between it and `value` is asserted anywhere.
    pub binomial_bound: i64,
}

/// Enumerates all `2^(n choose 2)` labelled tournaments of order `n` and
/// returns the maximum Wiener index with one witness.
pub fn tournament_max(n: usize) -> Result<TournamentReport, SolverError> {
    if !(2..=TOURNAMENT_ORDER_LIMIT).contains(&n) {
        return Err(SolverError::TournamentOrder {
            n,
            limit: TOURNAMENT_ORDER_LIMIT,
        });
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    let outcome = parallel_scan(n, &edges, 1u64 << edges.len(), true, false, 1);
    let base = MixedGraph::undirected(n, edges.iter().copied()).expect("complete graph is valid");
    let witness = mask_to_assignment(&base, outcome.best_mask).apply();
    let k = n as i64 + 1;
    Ok(TournamentReport {
        n,
        value: outcome.best,
        witness,
        binomial_bound: k * (k - 1) * (k - 2) / 6 - 1,
    })
}
