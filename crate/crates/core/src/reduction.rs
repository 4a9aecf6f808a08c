//! The hardness gadget `G^{a,b}`: the source graph plus pendant stars of
//! `n³` leaves hung off designated vertices `a` and `b` via the hubs `a0`
//! and `b0`.
//!
//! With the threshold `M(n) = n⁷ + 3n⁶ + 2n⁴ + 4n³ + n + 1`, a Hamiltonian
//! `(a,b)`-path of the source graph converts into an orientation of the
//! gadget whose `A`-to-`B` distance sum alone reaches `M(n)`:
//! path edges forward, chords backward, `a_i -> a0 -> a` and
//! `b -> b0 -> b_i`. [`verify_forward_reduction`] certifies that
//! construction and its distance pattern on concrete instances.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeChoice, GraphError, MixedGraph, OrientationAssignment, VertexSubset};

/// Largest source order accepted by [`hampath_bruteforce`].
pub const HAMPATH_ORDER_LIMIT: usize = 12;

/// Largest source order accepted by [`verify_forward_reduction`]; the
/// gadget's all-pairs BFS stays desk-scale below this.
pub const VERIFY_ORDER_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("a and b must be distinct vertices")]
    SameEndpoints,
    #[error("source graph must be undirected (no arcs)")]
    DirectedInput,
    #[error("source graph must be connected")]
    Disconnected,
    #[error("source order {n} exceeds the limit {limit} for this operation")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid hamiltonian path: {0}")]
    InvalidPath(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The gadget built on a source graph of order `n`.
///
/// Index map: source vertices keep `0..n`; `a0 = n`; `a_i = n + i` for
/// `1 <= i <= n³`; `b0 = n + n³ + 1`; `b_i = b0 + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: MixedGraph,
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

impl GadgetInstance {
    /// `n³`, the number of leaves on each hub.
    pub fn leaf_count(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn a0(&self) -> usize {
        self.n
    }

    pub fn a_leaf(&self, i: usize) -> usize {
        debug_assert!((1..=self.leaf_count()).contains(&i));
        self.n + i
    }

    pub fn b0(&self) -> usize {
        self.n + self.leaf_count() + 1
    }

    pub fn b_leaf(&self, i: usize) -> usize {
        debug_assert!((1..=self.leaf_count()).contains(&i));
        self.b0() + i
    }

    /// `A = {a0, a1, ..., a_{n³}}`.
    pub fn a_set(&self) -> VertexSubset {
        (self.a0()..=self.a_leaf(self.leaf_count())).collect()
    }

    /// `B = {b0, b1, ..., b_{n³}}`.
    pub fn b_set(&self) -> VertexSubset {
        (self.b0()..=self.b_leaf(self.leaf_count())).collect()
    }

    /// The source vertices `V = {0..n}`.
    pub fn source_set(&self) -> VertexSubset {
        (0..self.n).collect()
    }

    /// Index ranges `(first, last)` of the a-leaves and b-leaves.
    pub fn a_leaf_range(&self) -> (usize, usize) {
        (self.a_leaf(1), self.a_leaf(self.leaf_count()))
    }

    pub fn b_leaf_range(&self) -> (usize, usize) {
        (self.b_leaf(1), self.b_leaf(self.leaf_count()))
    }

    /// Labels for the designated vertices and hubs.
    pub fn labels(&self) -> Vec<(usize, String)> {
        vec![
            (self.a, "a".to_string()),
            (self.b, "b".to_string()),
            (self.a0(), "a0".to_string()),
            (self.b0(), "b0".to_string()),
        ]
    }
}

/// Builds `G^{a,b}`: adds `2n³ + 2` vertices, the edges `a -- a0` and
/// `b -- b0`, and the star edges `a0 -- a_i`, `b0 -- b_i`. Source edges are
/// preserved verbatim, in order.
pub fn build_gadget(g: &MixedGraph, a: usize, b: usize) -> Result<GadgetInstance, ReductionError> {
    if !g.is_arc_free() {
        return Err(ReductionError::DirectedInput);
    }
    if !g.is_connected_underlying() {
        return Err(ReductionError::Disconnected);
    }
    let n = g.n();
    for v in [a, b] {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { v, n }.into());
        }
    }
    if a == b {
        return Err(ReductionError::SameEndpoints);
    }

    let cube = n * n * n;
    let mut graph = MixedGraph::new(n + 2 * cube + 2);
    for &(u, v) in g.undirected_edges() {
        graph.add_undirected(u, v)?;
    }
    let a0 = n;
    let b0 = n + cube + 1;
    graph.add_undirected(a, a0)?;
    graph.add_undirected(b, b0)?;
    for i in 1..=cube {
        graph.add_undirected(a0, a0 + i)?;
    }
    for i in 1..=cube {
        graph.add_undirected(b0, b0 + i)?;
    }
    Ok(GadgetInstance { graph, n, a, b })
}

/// `M(n) = n⁷ + 3n⁶ + 2n⁴ + 4n³ + n + 1`, evaluated exactly.
pub fn m_of_n(n: u32) -> i64 {
    assert!(n >= 1, "m_of_n requires n >= 1");
    let x = i128::from(n);
    let value = x.pow(7) + 3 * x.pow(6) + 2 * x.pow(4) + 4 * x.pow(3) + x + 1;
    i64::try_from(value).expect("M(n) exceeds 64 bits")
}

/// A Hamiltonian `(a,b)`-path: a spanning path of the source graph from `a`
/// to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamPath(Vec<usize>);

impl HamPath {
    pub fn new(vertices: Vec<usize>) -> Self {
        HamPath(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
}

/// Backtracking search for a Hamiltonian `(a,b)`-path, neighbours in
/// ascending index order, first witness returned. `None` is exhaustively
/// correct.
pub fn hampath_bruteforce(
    g: &MixedGraph,
    a: usize,
    b: usize,
) -> Result<Option<HamPath>, ReductionError> {
    if !g.is_arc_free() {
        return Err(ReductionError::DirectedInput);
    }
    let n = g.n();
    if n > HAMPATH_ORDER_LIMIT {
        return Err(ReductionError::TooLarge {
            n,
            limit: HAMPATH_ORDER_LIMIT,
        });
    }
    for v in [a, b] {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { v, n }.into());
        }
    }
    if a == b {
        return Err(ReductionError::SameEndpoints);
    }

    let mut adj = vec![Vec::new(); n];
    for &(u, v) in g.undirected_edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut visited = vec![false; n];
    visited[a] = true;
    let mut path = vec![a];
    if extend_path(&adj, b, &mut visited, &mut path) {
        Ok(Some(HamPath(path)))
    } else {
        Ok(None)
    }
}

fn extend_path(adj: &[Vec<usize>], b: usize, visited: &mut [bool], path: &mut Vec<usize>) -> bool {
    let current = *path.last().expect("path is never empty");
    if path.len() == adj.len() {
        return current == b;
    }
    for &next in &adj[current] {
        // b must stay available as the final vertex.
        if visited[next] || (next == b && path.len() + 1 != adj.len()) {
            continue;
        }
        visited[next] = true;
        path.push(next);
        if extend_path(adj, b, visited, path) {
            return true;
        }
        path.pop();
        visited[next] = false;
    }
    false
}

/// Converts a Hamiltonian `(a,b)`-path into the high-Wiener orientation of
/// the gadget: path edges forward, source chords backward, `a_i -> a0 -> a`
/// and `b -> b0 -> b_i`.
pub fn orient_from_hampath(
    gi: &GadgetInstance,
    path: &HamPath,
) -> Result<MixedGraph, ReductionError> {
    let n = gi.n;
    let vs = path.vertices();
    if vs.len() != n {
        return Err(ReductionError::InvalidPath(format!(
            "path has {} vertices, source graph has {n}",
            vs.len()
        )));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in vs.iter().enumerate() {
        if v >= n {
            return Err(ReductionError::InvalidPath(format!(
                "vertex {v} is not a source vertex"
            )));
        }
        if position[v] != usize::MAX {
            return Err(ReductionError::InvalidPath(format!(
                "vertex {v} appears twice"
            )));
        }
        position[v] = i;
    }
    if vs[0] != gi.a || vs[n - 1] != gi.b {
        return Err(ReductionError::InvalidPath(format!(
            "path must run from {} to {}",
            gi.a, gi.b
        )));
    }
    let source_edges: HashSet<(usize, usize)> = gi
        .graph
        .undirected_edges()
        .iter()
        .filter(|&&(u, v)| u < n && v < n)
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    for pair in vs.windows(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if !source_edges.contains(&(u, v)) {
            return Err(ReductionError::InvalidPath(format!(
                "consecutive vertices {} and {} are not adjacent",
                pair[0], pair[1]
            )));
        }
    }

    let a0 = gi.a0();
    let b0 = gi.b0();
    let choices: Vec<EdgeChoice> = gi
        .graph
        .undirected_edges()
        .iter()
        .map(|&(u, v)| {
            let towards = |from: usize, to: usize| {
                if (u, v) == (from, to) {
                    EdgeChoice::Forward
                } else {
                    EdgeChoice::Backward
                }
            };
            if u < n && v < n {
                // Consecutive path edges run forward, chords backward.
                let (pu, pv) = (position[u], position[v]);
                if pu.abs_diff(pv) == 1 {
                    if pu < pv {
                        towards(u, v)
                    } else {
                        towards(v, u)
                    }
                } else if pu < pv {
                    towards(v, u)
                } else {
                    towards(u, v)
                }
            } else if (u, v) == (gi.a, a0) || (u, v) == (a0, gi.a) {
                towards(a0, gi.a)
            } else if (u, v) == (gi.b, b0) || (u, v) == (b0, gi.b) {
                towards(gi.b, b0)
            } else if u == a0 || v == a0 {
                let leaf = if u == a0 { v } else { u };
                towards(leaf, a0)
            } else {
                let leaf = if u == b0 { v } else { u };
                towards(b0, leaf)
            }
        })
        .collect();
    let assignment = OrientationAssignment::new(&gi.graph, choices)?;
    Ok(gi.graph.apply_orientation(&assignment)?)
}

/// One named assertion in a [`ReductionReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn of(name: &str, passed: bool, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Report of the forward-direction verification: either vacuous (no
/// Hamiltonian `(a,b)`-path exists) or a list of per-assertion outcomes for
/// the constructed orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub gadget_order: usize,
    pub threshold: i64,
    pub vacuous: bool,
    pub path: Option<Vec<usize>>,
    pub wiener: Option<i64>,
    pub wiener_between_a_b: Option<i64>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// Certifies the forward direction on a concrete instance: finds a
/// Hamiltonian `(a,b)`-path by brute force, builds the gadget orientation,
/// and asserts `W(D) >= M(n)`, `W_D(A,B) = M(n)` and the full distance
/// pattern. Reports vacuity when no path exists.
pub fn verify_forward_reduction(
    g: &MixedGraph,
    a: usize,
    b: usize,
) -> Result<ReductionReport, ReductionError> {
    let n = g.n();
    if n > VERIFY_ORDER_LIMIT {
        return Err(ReductionError::TooLarge {
            n,
            limit: VERIFY_ORDER_LIMIT,
        });
    }
    let gadget = build_gadget(g, a, b)?;
    let threshold = m_of_n(n as u32);
    let path = hampath_bruteforce(g, a, b)?;

    let Some(path) = path else {
        return Ok(ReductionReport {
            n,
            a,
            b,
            gadget_order: gadget.graph.n(),
            threshold,
            vacuous: true,
            path: None,
            wiener: None,
            wiener_between_a_b: None,
            checks: Vec::new(),
            passed: true,
        });
    };

    let oriented = orient_from_hampath(&gadget, &path)?;
    let matrix = oriented.all_pairs();
    let cube = gadget.leaf_count();
    let a0 = gadget.a0();
    let b0 = gadget.b0();

    let mut wiener: i64 = 0;
    for u in 0..oriented.n() {
        for v in 0..oriented.n() {
            wiener += i64::from(matrix.get(u, v));
        }
    }
    let subset_sum = |from: &VertexSubset, to: &VertexSubset| -> i64 {
        let mut sum = 0i64;
        for &u in from.iter() {
            for &v in to.iter() {
                sum += i64::from(matrix.get(u, v));
            }
        }
        sum
    };
    let a_set = gadget.a_set();
    let b_set = gadget.b_set();
    let source = gadget.source_set();
    let between = subset_sum(&a_set, &b_set);

    let expected = u32::try_from(n).expect("desk-scale order");
    let mut leaf_pattern_ok = true;
    for i in 1..=cube {
        for j in 1..=cube {
            if matrix.get(gadget.a_leaf(i), gadget.b_leaf(j)) != expected + 3 {
                leaf_pattern_ok = false;
            }
        }
    }
    let mut hub_pattern_ok = true;
    for j in 1..=cube {
        if matrix.get(a0, gadget.b_leaf(j)) != expected + 2 {
            hub_pattern_ok = false;
        }
        if matrix.get(gadget.a_leaf(j), b0) != expected + 2 {
            hub_pattern_ok = false;
        }
    }

    let checks = vec![
        CheckResult::of(
            "gadget_order",
            gadget.graph.n() == 2 * cube + n + 2,
            format!("{} vertices", gadget.graph.n()),
        ),
        CheckResult::of(
            "wiener_at_least_threshold",
            wiener >= threshold,
            format!("W(D) = {wiener}, M(n) = {threshold}"),
        ),
        CheckResult::of(
            "between_equals_threshold",
            between == threshold,
            format!("W_D(A,B) = {between}, M(n) = {threshold}"),
        ),
        CheckResult::of(
            "leaf_to_leaf_distance",
            leaf_pattern_ok,
            format!("d(a_i, b_j) = {}", expected + 3),
        ),
        CheckResult::of(
            "hub_to_leaf_distance",
            hub_pattern_ok,
            format!("d(a0, b_j) = d(a_i, b0) = {}", expected + 2),
        ),
        CheckResult::of(
            "hub_to_hub_distance",
            matrix.get(a0, b0) == expected + 1,
            format!("d(a0, b0) = {}", matrix.get(a0, b0)),
        ),
        CheckResult::of(
            "endpoint_distance",
            matrix.get(a, b) == expected - 1,
            format!("d(a, b) = {}", matrix.get(a, b)),
        ),
        CheckResult::of(
            "nothing_reaches_a_side",
            subset_sum(&source, &a_set) == 0 && subset_sum(&b_set, &a_set) == 0,
            "W_D(V,A) = W_D(B,A) = 0".to_string(),
        ),
    ];
    let passed = checks.iter().all(|c| c.passed);

    Ok(ReductionReport {
        n,
        a,
        b,
        gadget_order: gadget.graph.n(),
        threshold,
        vacuous: false,
        path: Some(path.vertices().to_vec()),
        wiener: Some(wiener),
        wiener_between_a_b: Some(between),
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> MixedGraph {
        MixedGraph::undirected(2, [(0, 1)]).unwrap()
    }

    fn triangle() -> MixedGraph {
        MixedGraph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path_graph(n: usize) -> MixedGraph {
        MixedGraph::undirected(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn star4() -> MixedGraph {
        MixedGraph::undirected(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn gadget_on_k2_has_20_vertices() {
        let gi = build_gadget(&k2(), 0, 1).unwrap();
        assert_eq!(gi.graph.n(), 20);
        assert_eq!(gi.graph.edge_count(), 1 + 2 * 8 + 2);
        assert_eq!(gi.a0(), 2);
        assert_eq!(gi.b0(), 11);
        assert_eq!(gi.a_set().len(), 9);
        assert_eq!(gi.b_set().len(), 9);
    }

    #[test]
    fn gadget_on_triangle_has_59_vertices() {
        let gi = build_gadget(&triangle(), 0, 2).unwrap();
        assert_eq!(gi.graph.n(), 59);
        assert_eq!(gi.a_leaf_range(), (4, 30));
        assert_eq!(gi.b_leaf_range(), (32, 58));
    }

    #[test]
    fn gadget_rejects_equal_endpoints() {
        assert_eq!(
            build_gadget(&k2(), 0, 0),
            Err(ReductionError::SameEndpoints)
        );
    }

    #[test]
    fn gadget_rejects_directed_and_disconnected_input() {
        let d = MixedGraph::digraph(2, [(0, 1)]).unwrap();
        assert_eq!(build_gadget(&d, 0, 1), Err(ReductionError::DirectedInput));
        let disc = MixedGraph::new(2);
        assert_eq!(build_gadget(&disc, 0, 1), Err(ReductionError::Disconnected));
    }

    #[test]
    fn m_of_n_values() {
        assert_eq!(m_of_n(1), 12);
        assert_eq!(m_of_n(2), 387);
        assert_eq!(m_of_n(3), 4648);
    }

    #[test]
    fn m_of_n_matches_factored_form() {
        for n in 1..=20i128 {
            let factored = n.pow(6) * (n + 3) + 2 * n.pow(3) * (n + 2) + n + 1;
            assert_eq!(i128::from(m_of_n(n as u32)), factored, "n = {n}");
        }
    }

    #[test]
    fn counting_bound_expression_collapses_at_zero() {
        // 2x(n³-x) + 2y(n³-y) + (n³+1-x)(n³+1-y)(n+2) + x + y - 2 at
        // x = y = 0 equals (n³+1)²(n+2) - 2, and x = y = 0 maximises it.
        let expr = |n: i128, x: i128, y: i128| {
            let c = n.pow(3);
            2 * x * (c - x) + 2 * y * (c - y) + (c + 1 - x) * (c + 1 - y) * (n + 2) + x + y - 2
        };
        for n in 1..=20i128 {
            let c = n.pow(3);
            assert_eq!(expr(n, 0, 0), (c + 1).pow(2) * (n + 2) - 2, "n = {n}");
        }
        for n in 1..=3i128 {
            let c = n.pow(3);
            let at_zero = expr(n, 0, 0);
            for x in 0..=c {
                for y in 0..=c {
                    assert!(expr(n, x, y) <= at_zero, "n = {n}, x = {x}, y = {y}");
                }
            }
        }
    }

    #[test]
    fn hampath_on_k3() {
        let path = hampath_bruteforce(&triangle(), 0, 2).unwrap().unwrap();
        assert_eq!(path.vertices(), &[0, 1, 2]);
    }

    #[test]
    fn hampath_on_star_is_none() {
        assert_eq!(hampath_bruteforce(&star4(), 1, 2).unwrap(), None);
    }

    #[test]
    fn hampath_on_p4_is_the_path() {
        let p4 = path_graph(4);
        let path = hampath_bruteforce(&p4, 0, 3).unwrap().unwrap();
        assert_eq!(path.vertices(), &[0, 1, 2, 3]);
        assert_eq!(hampath_bruteforce(&p4, 0, 2).unwrap(), None);
    }

    #[test]
    fn hampath_rejects_bad_input() {
        assert_eq!(
            hampath_bruteforce(&triangle(), 1, 1),
            Err(ReductionError::SameEndpoints)
        );
        let big = path_graph(13);
        assert!(matches!(
            hampath_bruteforce(&big, 0, 12),
            Err(ReductionError::TooLarge { .. })
        ));
    }

    #[test]
    fn oriented_k2_gadget_distances() {
        let gi = build_gadget(&k2(), 0, 1).unwrap();
        let path = HamPath::new(vec![0, 1]);
        let d = orient_from_hampath(&gi, &path).unwrap();
        assert!(d.is_digraph());
        let m = d.all_pairs();
        assert_eq!(m.get(gi.a_leaf(1), gi.b_leaf(1)), 5);
        assert_eq!(
            d.wiener_between(&gi.a_set(), &gi.b_set()).unwrap(),
            m_of_n(2)
        );
    }

    #[test]
    fn oriented_p3_gadget_endpoint_distance() {
        let p3 = path_graph(3);
        let gi = build_gadget(&p3, 0, 2).unwrap();
        let d = orient_from_hampath(&gi, &HamPath::new(vec![0, 1, 2])).unwrap();
        assert_eq!(d.all_pairs().get(0, 2), 2);
    }

    #[test]
    fn orient_rejects_invalid_paths() {
        let gi = build_gadget(&triangle(), 0, 2).unwrap();
        assert!(orient_from_hampath(&gi, &HamPath::new(vec![0, 1])).is_err());
        assert!(orient_from_hampath(&gi, &HamPath::new(vec![0, 2, 1])).is_err());
        assert!(orient_from_hampath(&gi, &HamPath::new(vec![0, 1, 1])).is_err());
    }

    #[test]
    fn verify_k3_passes() {
        let report = verify_forward_reduction(&triangle(), 0, 2).unwrap();
        assert!(!report.vacuous);
        assert!(report.passed, "{report:?}");
        assert_eq!(report.threshold, 4648);
        assert!(report.wiener.unwrap() >= 4648);
    }

    #[test]
    fn verify_k2_between_sum() {
        let report = verify_forward_reduction(&k2(), 0, 1).unwrap();
        assert!(report.passed);
        assert_eq!(report.wiener_between_a_b, Some(387));
    }

    #[test]
    fn verify_star_is_vacuous() {
        let report = verify_forward_reduction(&star4(), 1, 2).unwrap();
        assert!(report.vacuous);
        assert!(report.passed);
        assert!(report.checks.is_empty());
    }

    #[test]
    fn report_serialises_to_json() {
        let report = verify_forward_reduction(&k2(), 0, 1).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["passed"], true);
        assert!(json["checks"].as_array().unwrap().len() >= 8);
    }
}
