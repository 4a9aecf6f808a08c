//! Generators for the counterexample tree family `T_k`, its orientation
//! stages, exact closed-form evaluators, and zig-zag / centre-vertex
//! detection on tree orientations.
//!
//! For `k` a positive multiple of 3, `T_k` is a path `w1..wk` with `k²/9`
//! pendant vertices `u_j` on `w1`, a pendant path `x1..x5` on `w2` and a
//! pendant vertex `y1` on `w3`. `D_k` orients the w-path towards `wk`, every
//! u-edge towards `w1`, the x-chain towards `x5` and the y-edge as
//! `y1 -> w3`; the partial stages `D_k'` and `D_k''` leave suffixes of that
//! list undirected, and `D_k'''` flips the y-edge.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{EdgeChoice, GraphError, MixedGraph, OrientationAssignment, VertexSubset};

/// Exact rational value used by the closed-form evaluators.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("k must be a positive multiple of 3 (got {0})")]
    BadK(usize),
    #[error("input is not an orientation of a tree: {0}")]
    NotTreeOrientation(&'static str),
    #[error("closed form {id} is not integral at k = {k}: {value}")]
    NonIntegral {
        id: ClosedFormId,
        k: usize,
        value: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Named vertex sets of a family member, as concrete indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TkRoles {
    /// `w1..wk`, the spine path.
    pub w: Vec<usize>,
    /// `u1..u_{k²/9}`, the pendants on `w1`.
    pub u: Vec<usize>,
    /// `x1..x5`, the pendant path on `w2`.
    pub x: Vec<usize>,
    /// `y1`, the pendant on `w3`.
    pub y: usize,
}

impl TkRoles {
    pub fn u_set(&self) -> VertexSubset {
        self.u.iter().copied().collect()
    }

    pub fn x_set(&self) -> VertexSubset {
        self.x.iter().copied().collect()
    }

    /// `{w4..wk}`.
    pub fn w_tail_set(&self) -> VertexSubset {
        self.w[3..].iter().copied().collect()
    }

    /// `"# label"`-style (index, name) pairs in index order.
    pub fn labels(&self) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        for (i, &v) in self.w.iter().enumerate() {
            out.push((v, format!("w{}", i + 1)));
        }
        for (i, &v) in self.u.iter().enumerate() {
            out.push((v, format!("u{}", i + 1)));
        }
        for (i, &v) in self.x.iter().enumerate() {
            out.push((v, format!("x{}", i + 1)));
        }
        out.push((self.y, "y1".to_string()));
        out
    }
}

/// A generated family member: the graph plus its role labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TkInstance {
    pub graph: MixedGraph,
    pub k: usize,
    pub roles: TkRoles,
}

/// Orientation stage of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// The undirected tree.
    Tk,
    /// Full orientation: spine, u-edges, x-chain and `y1 -> w3`.
    Dk,
    /// Spine towards `wk` and u-edges towards `w1`; x-chain and y-edge left
    /// undirected.
    DkPrime,
    /// `DkPrime` plus the x-chain oriented towards `x5`.
    DkDoublePrime,
    /// `DkDoublePrime` plus the flipped y-edge `w3 -> y1`.
    DkTriplePrime,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Tk,
        Stage::Dk,
        Stage::DkPrime,
        Stage::DkDoublePrime,
        Stage::DkTriplePrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Tk => "tk",
            Stage::Dk => "dk",
            Stage::DkPrime => "dkprime",
            Stage::DkDoublePrime => "dkdoubleprime",
            Stage::DkTriplePrime => "dktripleprime",
        }
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Stage::ALL
            .into_iter()
            .find(|stage| stage.name() == s)
            .ok_or_else(|| format!("unknown family stage {s:?}"))
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_k(k: usize) -> Result<(), FamilyError> {
    if k < 3 || !k.is_multiple_of(3) {
        return Err(FamilyError::BadK(k));
    }
    Ok(())
}

/// Builds the undirected tree `T_k` with the frozen vertex indexing:
/// `w1..wk -> 0..k-1`, then `u1..u_{k²/9}`, then `x1..x5`, then `y1` last.
pub fn build_tk(k: usize) -> Result<TkInstance, FamilyError> {
    check_k(k)?;
    let u_count = k * k / 9;
    let n = k + u_count + 6;
    let w: Vec<usize> = (0..k).collect();
    let u: Vec<usize> = (k..k + u_count).collect();
    let x: Vec<usize> = (k + u_count..k + u_count + 5).collect();
    let y = n - 1;

    let mut graph = MixedGraph::new(n);
    for i in 0..k - 1 {
        graph.add_undirected(w[i], w[i + 1])?;
    }
    for &uj in &u {
        graph.add_undirected(uj, w[0])?;
    }
    graph.add_undirected(w[1], x[0])?;
    for i in 0..4 {
        graph.add_undirected(x[i], x[i + 1])?;
    }
    graph.add_undirected(y, w[2])?;

    Ok(TkInstance {
        graph,
        k,
        roles: TkRoles { w, u, x, y },
    })
}

/// Direction choices for a stage, aligned with `build_tk(k)`'s edge order
/// (spine, u-edges, x-chain, y-edge). `D_k` is the all-forward orientation.
fn stage_choices(k: usize, stage: Stage) -> Vec<EdgeChoice> {
    use EdgeChoice::{Backward, Forward, Undecided};
    let u_count = k * k / 9;
    let spine_and_u = (k - 1) + u_count;
    let mut choices = Vec::with_capacity(spine_and_u + 6);
    match stage {
        Stage::Tk => choices.resize(spine_and_u + 6, Undecided),
        Stage::DkPrime => {
            choices.resize(spine_and_u, Forward);
            choices.resize(spine_and_u + 6, Undecided);
        }
        Stage::DkDoublePrime => {
            choices.resize(spine_and_u + 5, Forward);
            choices.push(Undecided);
        }
        Stage::Dk => choices.resize(spine_and_u + 6, Forward),
        Stage::DkTriplePrime => {
            choices.resize(spine_and_u + 5, Forward);
            choices.push(Backward);
        }
    }
    choices
}

/// Builds the requested orientation stage of `T_k`, sharing `build_tk(k)`'s
/// vertex indexing and edge order.
pub fn build_dk_stage(k: usize, stage: Stage) -> Result<TkInstance, FamilyError> {
    let tk = build_tk(k)?;
    let assignment = OrientationAssignment::new(&tk.graph, stage_choices(k, stage))?;
    let graph = tk.graph.apply_orientation(&assignment)?;
    Ok(TkInstance { graph, ..tk })
}

/// The orientation assignment mapping `T_k` onto a stage.
pub fn stage_assignment(k: usize, stage: Stage) -> Result<OrientationAssignment, FamilyError> {
    let tk = build_tk(k)?;
    Ok(OrientationAssignment::new(
        &tk.graph,
        stage_choices(k, stage),
    )?)
}

/// Identifier of an exact closed-form polynomial in `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormId {
    /// `W(T_k)`.
    WTk,
    /// `W(D_k)`.
    WDk,
    /// `W^max(D_k')`.
    WmaxDkPrime,
    /// `W^max_{T_k}(U, {w4..wk})`.
    WmaxUWtail,
    /// `W^max_{D_k'}(U, X)`.
    WmaxUX,
    /// Nominal value of the y-tail sum `Σ_{v in {w3..wk}} d_{D_k}(y1, v)`;
    /// disagrees with direct computation at small k (see
    /// [`y_edge_swap_report`]).
    Claim5A,
    /// Nominal value of the incoming sum
    /// `Σ_{v in U ∪ X ∪ {w1,w2,w3}} d_{D_k'''}(v, y1)`; same caveat.
    Claim5B,
}

impl ClosedFormId {
    pub const ALL: [ClosedFormId; 7] = [
        ClosedFormId::WTk,
        ClosedFormId::WDk,
        ClosedFormId::WmaxDkPrime,
        ClosedFormId::WmaxUWtail,
        ClosedFormId::WmaxUX,
        ClosedFormId::Claim5A,
        ClosedFormId::Claim5B,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormId::WTk => "W_TK",
            ClosedFormId::WDk => "W_DK",
            ClosedFormId::WmaxDkPrime => "WMAX_DKPRIME",
            ClosedFormId::WmaxUWtail => "WMAX_U_WTAIL",
            ClosedFormId::WmaxUX => "WMAX_U_X",
            ClosedFormId::Claim5A => "CLAIM5_A",
            ClosedFormId::Claim5B => "CLAIM5_B",
        }
    }

    /// Whether the polynomial is guaranteed integral whenever `3 | k`.
    pub fn guarantees_integrality(self) -> bool {
        !matches!(self, ClosedFormId::Claim5A | ClosedFormId::Claim5B)
    }

    /// Coefficients `[c4, c3, c2, c1, c0]` of the polynomial in `k`.
    fn coefficients(self) -> [Rational; 5] {
        let r = |num: i128, den: i128| Rational::new(num, den);
        match self {
            ClosedFormId::WTk => [r(11, 162), r(2, 9), r(55, 9), r(35, 6), r(61, 1)],
            ClosedFormId::WDk => [r(1, 18), r(2, 9), r(59, 18), r(-5, 3), r(56, 1)],
            ClosedFormId::WmaxDkPrime => [r(1, 18), r(2, 9), r(56, 9), r(35, 6), r(61, 1)],
            ClosedFormId::WmaxUWtail => [r(1, 18), r(1, 18), r(-2, 3), r(0, 1), r(0, 1)],
            ClosedFormId::WmaxUX => [r(0, 1), r(0, 1), r(25, 9), r(0, 1), r(0, 1)],
            ClosedFormId::Claim5A => [r(0, 1), r(0, 1), r(1, 2), r(-2, 1), r(3, 2)],
            ClosedFormId::Claim5B => [r(0, 1), r(0, 1), r(4, 9), r(0, 1), r(-6, 1)],
        }
    }
}

impl FromStr for ClosedFormId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ClosedFormId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown closed form {s:?}"))
    }
}

impl fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates a closed form exactly at `k`.
pub fn closed_form(id: ClosedFormId, k: usize) -> Result<Rational, FamilyError> {
    check_k(k)?;
    let x = Rational::from_integer(k as i128);
    let value = id
        .coefficients()
        .iter()
        .fold(Rational::zero(), |acc, c| acc * x + c);
    Ok(value)
}

/// Evaluates a closed form and demands an integer result.
pub fn closed_form_integer(id: ClosedFormId, k: usize) -> Result<i64, FamilyError> {
    let value = closed_form(id, k)?;
    if !value.denom().is_one() {
        return Err(FamilyError::NonIntegral {
            id,
            k,
            value: format_rational(&value),
        });
    }
    i64::try_from(value.to_integer()).map_err(|_| FamilyError::Graph(GraphError::Overflow))
}

/// Renders a rational as `"p/q"`, or just `"p"` when integral. The sign
/// sits on the numerator.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Detection method for zig-zag orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZigzagMethod {
    /// Walk every tree path and count direction changes.
    PathChanges,
    /// Negation of the centre-vertex property.
    Center,
}

impl FromStr for ZigzagMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "path-changes" => Ok(ZigzagMethod::PathChanges),
            "center" => Ok(ZigzagMethod::Center),
            other => Err(format!("unknown zig-zag method {other:?}")),
        }
    }
}

fn check_tree_orientation(d: &MixedGraph) -> Result<(), FamilyError> {
    if !d.is_digraph() {
        return Err(FamilyError::NotTreeOrientation(
            "graph has undirected edges",
        ));
    }
    if d.n() == 0 || d.edge_count() != d.n() - 1 {
        return Err(FamilyError::NotTreeOrientation(
            "edge count differs from n - 1",
        ));
    }
    if !d.is_connected_underlying() {
        return Err(FamilyError::NotTreeOrientation(
            "underlying graph is disconnected",
        ));
    }
    Ok(())
}

/// Whether the tree orientation `d` is zig-zag: some tree path changes
/// direction at least twice as it is traversed. The two methods agree on
/// every input.
pub fn is_zigzag(d: &MixedGraph, method: ZigzagMethod) -> Result<bool, FamilyError> {
    check_tree_orientation(d)?;
    match method {
        ZigzagMethod::PathChanges => Ok(any_path_changes_twice(d)),
        ZigzagMethod::Center => Ok(center_vertex(d).is_none()),
    }
}

/// Finds a vertex `w` such that every vertex `u` has a `(u,w)`- or
/// `(w,u)`-path, returning the smallest such index. `None` exactly when the
/// orientation is zig-zag.
pub fn find_center_vertex(d: &MixedGraph) -> Result<Option<usize>, FamilyError> {
    check_tree_orientation(d)?;
    Ok(center_vertex(d))
}

fn center_vertex(d: &MixedGraph) -> Option<usize> {
    let m = d.all_pairs();
    (0..d.n()).find(|&w| (0..d.n()).all(|u| u == w || m.get(u, w) > 0 || m.get(w, u) > 0))
}

fn any_path_changes_twice(d: &MixedGraph) -> bool {
    let n = d.n();
    let adj = d.underlying_adjacency();
    let arcs: HashSet<(usize, usize)> = d.arcs().iter().copied().collect();

    for start in 0..n {
        // BFS parents give the unique tree path from `start` to every vertex.
        let mut parent = vec![usize::MAX; n];
        parent[start] = start;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        for end in start + 1..n {
            let mut path = vec![end];
            let mut v = end;
            while v != start {
                v = parent[v];
                path.push(v);
            }
            path.reverse();
            let mut changes = 0;
            let mut prev_sign: Option<bool> = None;
            for pair in path.windows(2) {
                let along = arcs.contains(&(pair[0], pair[1]));
                if let Some(p) = prev_sign {
                    if p != along {
                        changes += 1;
                        if changes >= 2 {
                            return true;
                        }
                    }
                }
                prev_sign = Some(along);
            }
        }
    }
    false
}

/// Side-by-side comparison of the nominal closed forms `CLAIM5_A`/`CLAIM5_B`
/// with the BFS sums they stand for.
///
/// The two sums measure the effect of flipping the y-edge: `tail_sum` is
/// what `D_k` gains from `y1 -> w3` (distances from `y1` into the spine
/// tail) and `incoming_sum` is what `D_k'''` gains from `w3 -> y1`
/// (distances into `y1`). Their difference always equals
/// `W(D_k) - W(D_k''')`; the closed forms do not match the sums at small
/// `k`, which is why no equality between them is asserted anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YEdgeSwapReport {
    pub k: usize,
    pub tail_sum_formula: Rational,
    pub tail_sum_bfs: i64,
    pub incoming_sum_formula: Rational,
    pub incoming_sum_bfs: i64,
    pub wiener_dk: i64,
    pub wiener_dk_triple: i64,
}

impl YEdgeSwapReport {
    /// The BFS sums must explain the full Wiener difference between the two
    /// orientations.
    pub fn is_internally_consistent(&self) -> bool {
        self.tail_sum_bfs - self.incoming_sum_bfs == self.wiener_dk - self.wiener_dk_triple
    }
}

pub fn y_edge_swap_report(k: usize) -> Result<YEdgeSwapReport, FamilyError> {
    let dk = build_dk_stage(k, Stage::Dk)?;
    let dk_triple = build_dk_stage(k, Stage::DkTriplePrime)?;
    let y_set: VertexSubset = [dk.roles.y].into_iter().collect();
    let w3_to_end: VertexSubset = dk.roles.w[2..].iter().copied().collect();
    let incoming: VertexSubset = dk
        .roles
        .u
        .iter()
        .chain(dk.roles.x.iter())
        .chain(dk.roles.w[..3].iter())
        .copied()
        .collect();

    Ok(YEdgeSwapReport {
        k,
        tail_sum_formula: closed_form(ClosedFormId::Claim5A, k)?,
        tail_sum_bfs: dk.graph.wiener_between(&y_set, &w3_to_end)?,
        incoming_sum_formula: closed_form(ClosedFormId::Claim5B, k)?,
        incoming_sum_bfs: dk_triple.graph.wiener_between(&incoming, &y_set)?,
        wiener_dk: dk.graph.wiener_directed()?,
        wiener_dk_triple: dk_triple.graph.wiener_directed()?,
    })
}
