//! Mixed-graph data model, text I/O, BFS distances under the zero-distance
//! convention, and the Wiener-index variants.
//!
//! A [`MixedGraph`] carries both undirected edges and arcs. Paths traverse
//! arcs forward only and undirected edges both ways. The distance from `u`
//! to `v` is stored as `0` when no `(u,v)`-path exists; every Wiener sum in
//! this crate simply adds that zero.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised by graph construction, parsing and the Wiener operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("vertex {v} out of range (graph has {n} vertices)")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("pair {{{u}, {v}}} already carries an edge or arc")]
    DuplicatePair { u: usize, v: usize },
    #[error("operation requires {expected} input")]
    WrongKind { expected: &'static str },
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex subsets must be disjoint")]
    OverlappingSubsets,
    #[error("Wiener sum overflows 64-bit integer")]
    Overflow,
    #[error("orientation was built for a different base graph")]
    BaseMismatch,
    #[error("orientation has {got} choices but base graph has {expected} undirected edges")]
    ChoiceLengthMismatch { expected: usize, got: usize },
}

/// Graph with both undirected edges and directed arcs.
///
/// Vertices are `0..n`. For any unordered pair `{u, v}` there is at most one
/// element across both edge lists, so a `MixedGraph` with empty `arcs` is an
/// undirected graph and one with empty `undirected_edges` is an oriented
/// graph (no 2-cycles). Edge lists preserve insertion order; serialisation
/// is order-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    n: usize,
    undirected_edges: Vec<(usize, usize)>,
    arcs: Vec<(usize, usize)>,
}

impl MixedGraph {
    /// Creates a graph on `n` vertices with no edges.
    pub fn new(n: usize) -> Self {
        MixedGraph {
            n,
            undirected_edges: Vec::new(),
            arcs: Vec::new(),
        }
    }

    /// Builds an undirected graph from an edge list.
    pub fn undirected(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = MixedGraph::new(n);
        for (u, v) in edges {
            g.add_undirected(u, v)?;
        }
        Ok(g)
    }

    /// Builds a digraph from an arc list.
    pub fn digraph(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = MixedGraph::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    fn check_new_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.pair_occupied(u, v) {
            return Err(GraphError::DuplicatePair { u, v });
        }
        Ok(())
    }

    fn pair_occupied(&self, u: usize, v: usize) -> bool {
        self.undirected_edges
            .iter()
            .chain(self.arcs.iter())
            .any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    /// Appends the undirected edge `u -- v`.
    pub fn add_undirected(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_new_pair(u, v)?;
        self.undirected_edges.push((u, v));
        Ok(())
    }

    /// Appends the arc `u -> v`.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_new_pair(u, v)?;
        self.arcs.push((u, v));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn undirected_edges(&self) -> &[(usize, usize)] {
        &self.undirected_edges
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Total number of edges and arcs.
    pub fn edge_count(&self) -> usize {
        self.undirected_edges.len() + self.arcs.len()
    }

    pub fn is_arc_free(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_digraph(&self) -> bool {
        self.undirected_edges.is_empty()
    }

    /// Out-adjacency lists: arcs forward only, undirected edges both ways.
    pub(crate) fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.undirected_edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for &(u, v) in &self.arcs {
            adj[u].push(v);
        }
        adj
    }

    /// Adjacency of the underlying undirected graph (arc directions dropped).
    pub(crate) fn underlying_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in self.undirected_edges.iter().chain(self.arcs.iter()) {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_connected_underlying(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.underlying_adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// BFS distances from `s`; unreachable vertices get 0.
    pub fn distances_from(&self, s: usize) -> Result<Vec<u32>, GraphError> {
        if s >= self.n {
            return Err(GraphError::VertexOutOfRange { v: s, n: self.n });
        }
        let adj = self.out_adjacency();
        Ok(bfs_row(&adj, s))
    }

    /// All-pairs BFS distances under the zero-distance convention.
    pub fn all_pairs(&self) -> DistanceMatrix {
        let adj = self.out_adjacency();
        let mut d = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            d.extend_from_slice(&bfs_row(&adj, s));
        }
        DistanceMatrix { n: self.n, d }
    }

    /// Wiener index of a connected undirected graph: the sum of distances
    /// over all unordered vertex pairs.
    pub fn wiener_undirected(&self) -> Result<i64, GraphError> {
        if !self.is_arc_free() {
            return Err(GraphError::WrongKind {
                expected: "arc-free",
            });
        }
        if !self.is_connected_underlying() {
            return Err(GraphError::Disconnected);
        }
        let m = self.all_pairs();
        let mut sum: i64 = 0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                sum = add_checked(sum, m.get(u, v))?;
            }
        }
        Ok(sum)
    }

    /// Wiener index of a digraph: the sum over all ordered pairs, counting 0
    /// for unreachable pairs.
    pub fn wiener_directed(&self) -> Result<i64, GraphError> {
        if !self.is_digraph() {
            return Err(GraphError::WrongKind {
                expected: "digraph (no undirected edges)",
            });
        }
        let m = self.all_pairs();
        let mut sum: i64 = 0;
        for &dist in &m.d {
            sum = add_checked(sum, dist)?;
        }
        Ok(sum)
    }

    /// `W^max`: the sum over unordered pairs of the larger of the two
    /// directed distances. Defined for every mixed graph.
    pub fn wiener_max(&self) -> Result<i64, GraphError> {
        let m = self.all_pairs();
        let mut sum: i64 = 0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                sum = add_checked(sum, m.get(u, v).max(m.get(v, u)))?;
            }
        }
        Ok(sum)
    }

    /// Ordered sum of distances from members of `a` to members of `b`.
    pub fn wiener_between(&self, a: &VertexSubset, b: &VertexSubset) -> Result<i64, GraphError> {
        self.check_subset_pair(a, b)?;
        let m = self.all_pairs();
        let mut sum: i64 = 0;
        for &u in a.iter() {
            for &v in b.iter() {
                sum = add_checked(sum, m.get(u, v))?;
            }
        }
        Ok(sum)
    }

    /// Sum over pairs `(a, b)` in `a × b` of `max{d(a,b), d(b,a)}`.
    pub fn wiener_max_between(
        &self,
        a: &VertexSubset,
        b: &VertexSubset,
    ) -> Result<i64, GraphError> {
        self.check_subset_pair(a, b)?;
        let m = self.all_pairs();
        let mut sum: i64 = 0;
        for &u in a.iter() {
            for &v in b.iter() {
                sum = add_checked(sum, m.get(u, v).max(m.get(v, u)))?;
            }
        }
        Ok(sum)
    }

    fn check_subset_pair(&self, a: &VertexSubset, b: &VertexSubset) -> Result<(), GraphError> {
        for &v in a.iter().chain(b.iter()) {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { v, n: self.n });
            }
        }
        if !a.is_disjoint_from(b) {
            return Err(GraphError::OverlappingSubsets);
        }
        Ok(())
    }

    /// The graph with every arc reversed; undirected edges are unchanged.
    pub fn converse(&self) -> MixedGraph {
        MixedGraph {
            n: self.n,
            undirected_edges: self.undirected_edges.clone(),
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    /// Applies an orientation assignment: decided edges become arcs in the
    /// chosen direction, undecided edges stay undirected, existing arcs are
    /// preserved.
    pub fn apply_orientation(&self, o: &OrientationAssignment) -> Result<MixedGraph, GraphError> {
        if o.base != *self {
            if o.choices.len() != self.undirected_edges.len() {
                return Err(GraphError::ChoiceLengthMismatch {
                    expected: self.undirected_edges.len(),
                    got: o.choices.len(),
                });
            }
            return Err(GraphError::BaseMismatch);
        }
        let mut undirected = Vec::new();
        let mut arcs = self.arcs.clone();
        for (&(u, v), choice) in self.undirected_edges.iter().zip(&o.choices) {
            match choice {
                EdgeChoice::Forward => arcs.push((u, v)),
                EdgeChoice::Backward => arcs.push((v, u)),
                EdgeChoice::Undecided => undirected.push((u, v)),
            }
        }
        Ok(MixedGraph {
            n: self.n,
            undirected_edges: undirected,
            arcs,
        })
    }
}

fn bfs_row(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
    const UNSEEN: u32 = u32::MAX;
    let mut dist = vec![UNSEEN; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == UNSEEN {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    // Unreachable entries become the conventional 0.
    for d in dist.iter_mut() {
        if *d == UNSEEN {
            *d = 0;
        }
    }
    dist
}

fn add_checked(sum: i64, dist: u32) -> Result<i64, GraphError> {
    sum.checked_add(i64::from(dist)).ok_or(GraphError::Overflow)
}

/// `n × n` matrix of exact BFS distances; `0` off the diagonal means
/// "no path".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}

/// Per-edge direction choice, aligned with the base graph's undirected edge
/// list. `Forward` orients from the first-listed endpoint to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeChoice {
    Forward,
    Backward,
    Undecided,
}

/// Direction choices for the undirected edges of a fixed base graph.
///
/// Applying an assignment with no `Undecided` entries yields a digraph (an
/// orientation); with some undecided entries, a partial orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationAssignment {
    base: MixedGraph,
    choices: Vec<EdgeChoice>,
}

impl OrientationAssignment {
    pub fn new(base: &MixedGraph, choices: Vec<EdgeChoice>) -> Result<Self, GraphError> {
        if choices.len() != base.undirected_edges.len() {
            return Err(GraphError::ChoiceLengthMismatch {
                expected: base.undirected_edges.len(),
                got: choices.len(),
            });
        }
        Ok(OrientationAssignment {
            base: base.clone(),
            choices,
        })
    }

    pub fn all_undecided(base: &MixedGraph) -> Self {
        OrientationAssignment {
            base: base.clone(),
            choices: vec![EdgeChoice::Undecided; base.undirected_edges.len()],
        }
    }

    pub fn base(&self) -> &MixedGraph {
        &self.base
    }

    pub fn choices(&self) -> &[EdgeChoice] {
        &self.choices
    }

    pub fn is_complete(&self) -> bool {
        self.choices
            .iter()
            .all(|c| !matches!(c, EdgeChoice::Undecided))
    }

    /// Renders each decided edge as `"u->v"`, in base edge order. Undecided
    /// edges render as `"u--v"`.
    pub fn arrow_strings(&self) -> Vec<String> {
        self.base
            .undirected_edges
            .iter()
            .zip(&self.choices)
            .map(|(&(u, v), choice)| match choice {
                EdgeChoice::Forward => format!("{u}->{v}"),
                EdgeChoice::Backward => format!("{v}->{u}"),
                EdgeChoice::Undecided => format!("{u}--{v}"),
            })
            .collect()
    }

    /// Applies `self` to its own base graph.
    pub fn apply(&self) -> MixedGraph {
        self.base
            .apply_orientation(self)
            .expect("assignment is consistent with its base by construction")
    }
}

/// A set of vertex indices, used for the subset-sum Wiener variants.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexSubset {
    members: std::collections::BTreeSet<usize>,
}

impl VertexSubset {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        VertexSubset {
            members: members.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &usize> {
        self.members.iter()
    }

    pub fn is_disjoint_from(&self, other: &VertexSubset) -> bool {
        self.members.is_disjoint(&other.members)
    }
}

impl FromIterator<usize> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSubset::new(iter)
    }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------
//
// UTF-8 lines. Lines beginning with '#' are comments, blank lines are
// skipped. The first significant line is "vertices <n>"; every further
// significant line is "<u> -- <v>" (undirected) or "<u> -> <v>" (arc).

impl FromStr for MixedGraph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<MixedGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match graph {
                None => {
                    if tokens.len() != 2 || tokens[0] != "vertices" {
                        return Err(GraphError::Parse {
                            line: line_no,
                            reason: format!("expected \"vertices <n>\", got {line:?}"),
                        });
                    }
                    let n = tokens[1].parse::<usize>().map_err(|_| GraphError::Parse {
                        line: line_no,
                        reason: format!("invalid vertex count {:?}", tokens[1]),
                    })?;
                    graph = Some(MixedGraph::new(n));
                }
                Some(ref mut g) => {
                    if tokens.len() != 3 {
                        return Err(GraphError::Parse {
                            line: line_no,
                            reason: format!(
                                "expected \"<u> -- <v>\" or \"<u> -> <v>\", got {line:?}"
                            ),
                        });
                    }
                    let parse_vertex = |tok: &str| {
                        tok.parse::<usize>().map_err(|_| GraphError::Parse {
                            line: line_no,
                            reason: format!("invalid vertex {tok:?}"),
                        })
                    };
                    let u = parse_vertex(tokens[0])?;
                    let v = parse_vertex(tokens[2])?;
                    let result = match tokens[1] {
                        "--" => g.add_undirected(u, v),
                        "->" => g.add_arc(u, v),
                        other => {
                            return Err(GraphError::Parse {
                                line: line_no,
                                reason: format!("unknown edge kind {other:?}"),
                            })
                        }
                    };
                    result.map_err(|e| GraphError::Parse {
                        line: line_no,
                        reason: e.to_string(),
                    })?;
                }
            }
        }
        graph.ok_or(GraphError::Parse {
            line: text.lines().count().max(1),
            reason: "missing \"vertices <n>\" header".to_string(),
        })
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        for &(u, v) in &self.undirected_edges {
            writeln!(f, "{u} -- {v}")?;
        }
        for &(u, v) in &self.arcs {
            writeln!(f, "{u} -> {v}")?;
        }
        Ok(())
    }
}

/// Parses the text graph format; errors carry the offending line number.
pub fn parse_mixed_graph(text: &str) -> Result<MixedGraph, GraphError> {
    text.parse()
}

/// Serialises a graph to the text format, edges in stored order.
pub fn serialize_mixed_graph(g: &MixedGraph) -> String {
    g.to_string()
}

/// Serialises a graph with `# label <index> <name>` comment lines between
/// the header and the edge list.
pub fn serialize_with_labels(g: &MixedGraph, labels: &[(usize, String)]) -> String {
    let mut out = format!("vertices {}\n", g.n);
    for (index, name) in labels {
        out.push_str(&format!("# label {index} {name}\n"));
    }
    for &(u, v) in &g.undirected_edges {
        out.push_str(&format!("{u} -- {v}\n"));
    }
    for &(u, v) in &g.arcs {
        out.push_str(&format!("{u} -> {v}\n"));
    }
    out
}
