//! Shared generators and independent oracles for the integration suites.
//!
//! The oracles deliberately avoid the library's code paths: distances come
//! from Floyd-Warshall instead of BFS, orientation optima from a plain loop
//! over all `2^m` masks, transitivity from a direct arc-triple scan, and
//! Hamiltonian paths from permutation enumeration.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wiener::graph::{EdgeChoice, MixedGraph, OrientationAssignment};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn path_graph(n: usize) -> MixedGraph {
    MixedGraph::undirected(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
}

pub fn cycle_graph(n: usize) -> MixedGraph {
    MixedGraph::undirected(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete_graph(n: usize) -> MixedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    MixedGraph::undirected(n, edges).unwrap()
}

pub fn petersen_graph() -> MixedGraph {
    let mut g = MixedGraph::new(10);
    for i in 0..5 {
        g.add_undirected(i, (i + 1) % 5).unwrap();
        g.add_undirected(i, i + 5).unwrap();
        g.add_undirected(i + 5, (i + 2) % 5 + 5).unwrap();
    }
    g
}

/// Uniform random recursive tree on `n` vertices.
pub fn random_tree(rng: &mut StdRng, n: usize) -> MixedGraph {
    let mut g = MixedGraph::new(n);
    for v in 1..n {
        let parent = rng.random_range(0..v);
        g.add_undirected(parent, v).unwrap();
    }
    g
}

/// Random connected graph: a random tree plus up to `extra` random chords.
pub fn random_connected_graph(rng: &mut StdRng, n: usize, extra: usize) -> MixedGraph {
    let mut g = random_tree(rng, n);
    let max_edges = n * (n - 1) / 2;
    let extra = extra.min(max_edges - (n - 1));
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 100 * extra.max(1) {
        attempts += 1;
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && g.add_undirected(u, v).is_ok() {
            added += 1;
        }
    }
    g
}

/// The orientation selected by `mask`, bit `i` (least significant first)
/// flipping edge `i`. This is intentionally a different mask convention
/// from the solver's.
pub fn orientation_from_mask(g: &MixedGraph, mask: u64) -> MixedGraph {
    let choices: Vec<EdgeChoice> = (0..g.undirected_edges().len())
        .map(|i| {
            if mask & (1 << i) == 0 {
                EdgeChoice::Forward
            } else {
                EdgeChoice::Backward
            }
        })
        .collect();
    let assignment = OrientationAssignment::new(g, choices).unwrap();
    g.apply_orientation(&assignment).unwrap()
}

/// Random partial orientation: each undirected edge is oriented (in a random
/// direction) with probability `p`.
pub fn random_partial_orientation(rng: &mut StdRng, g: &MixedGraph, p: f64) -> MixedGraph {
    let choices: Vec<EdgeChoice> = g
        .undirected_edges()
        .iter()
        .map(|_| {
            if rng.random_bool(p) {
                if rng.random_bool(0.5) {
                    EdgeChoice::Forward
                } else {
                    EdgeChoice::Backward
                }
            } else {
                EdgeChoice::Undecided
            }
        })
        .collect();
    let assignment = OrientationAssignment::new(g, choices).unwrap();
    g.apply_orientation(&assignment).unwrap()
}

/// Random full orientation of every remaining undirected edge.
pub fn random_full_orientation(rng: &mut StdRng, g: &MixedGraph) -> MixedGraph {
    random_partial_orientation(rng, g, 1.0)
}

const INF: u32 = u32::MAX / 4;

/// Floyd-Warshall distance matrix with `INF` for unreachable pairs.
pub fn fw_distances(g: &MixedGraph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.undirected_edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for &(u, v) in g.arcs() {
        d[u][v] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].saturating_add(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Wiener index over ordered pairs with the zero convention, via
/// Floyd-Warshall.
pub fn oracle_wiener_directed(g: &MixedGraph) -> i64 {
    fw_distances(g)
        .iter()
        .flatten()
        .filter(|&&d| d < INF)
        .map(|&d| i64::from(d))
        .sum()
}

/// Naive loop over all `2^m` orientations. Returns the optimum value and
/// every mask (in this module's LSB-first convention) achieving it.
pub fn oracle_orient_extremum(g: &MixedGraph, maximize: bool) -> (i64, Vec<u64>) {
    let m = g.undirected_edges().len();
    let mut best = if maximize { i64::MIN } else { i64::MAX };
    let mut masks = Vec::new();
    for mask in 0..(1u64 << m) {
        let value = oracle_wiener_directed(&orientation_from_mask(g, mask));
        let improves = if maximize { value > best } else { value < best };
        if improves {
            best = value;
            masks.clear();
            masks.push(mask);
        } else if value == best {
            masks.push(mask);
        }
    }
    (best, masks)
}

/// Direct arc-triple transitivity check, independent of the library's.
pub fn oracle_is_transitive(d: &MixedGraph) -> bool {
    let arcs: std::collections::HashSet<(usize, usize)> = d.arcs().iter().copied().collect();
    for &(u, v) in d.arcs() {
        for &(x, w) in d.arcs() {
            if x == v && w != u && !arcs.contains(&(u, w)) {
                return false;
            }
        }
    }
    true
}

/// Whether some orientation of `g` is transitive, by scanning all `2^m`.
pub fn oracle_has_transitive_orientation(g: &MixedGraph) -> bool {
    let m = g.undirected_edges().len();
    (0..(1u64 << m)).any(|mask| oracle_is_transitive(&orientation_from_mask(g, mask)))
}

/// Permutation-enumeration Hamiltonian `(a,b)`-path oracle.
pub fn oracle_hampath_exists(g: &MixedGraph, a: usize, b: usize) -> bool {
    use itertools::Itertools;
    let n = g.n();
    if n < 2 || a == b {
        return false;
    }
    let mut adjacent = vec![vec![false; n]; n];
    for &(u, v) in g.undirected_edges() {
        adjacent[u][v] = true;
        adjacent[v][u] = true;
    }
    let middle: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
    let k = middle.len();
    middle.into_iter().permutations(k).any(|perm| {
        let mut order = Vec::with_capacity(n);
        order.push(a);
        order.extend(perm);
        order.push(b);
        order.windows(2).all(|w| adjacent[w[0]][w[1]])
    })
}

/// All labelled graphs on `n` vertices, as edge-subset masks over the
/// lexicographic pair list.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = MixedGraph> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e);
        MixedGraph::undirected(n, edges).unwrap()
    })
}
