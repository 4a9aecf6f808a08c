//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime (run with `--nocapture` to see them). Criteria with time
//! budgets assert them.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use wiener::constructions::{
    build_dk_stage, build_tk, closed_form_integer, find_center_vertex, is_zigzag,
    y_edge_swap_report, ClosedFormId, Stage, ZigzagMethod,
};
use wiener::graph::VertexSubset;
use wiener::reduction::{m_of_n, verify_forward_reduction};
use wiener::solver::{orient_max_exact, orient_min_exact, tournament_max, Strategy};
use wiener::transitive::{find_transitive_orientation, is_transitive};

fn report(index: usize, name: &str, started: Instant, budget: Option<Duration>) {
    let elapsed = started.elapsed();
    if let Some(budget) = budget {
        assert!(
            elapsed < budget,
            "criterion {index} exceeded its {budget:?} budget: {elapsed:?}"
        );
    }
    println!("acceptance {index:02} {name}: PASS ({elapsed:.2?})");
}

#[test]
fn criterion_01_closed_form_agreement() {
    let started = Instant::now();
    for k in [3, 6, 9, 12] {
        let tk = build_tk(k).unwrap();
        assert_eq!(
            tk.graph.wiener_undirected().unwrap(),
            closed_form_integer(ClosedFormId::WTk, k).unwrap(),
            "tree value at k = {k}"
        );
        let dk = build_dk_stage(k, Stage::Dk).unwrap();
        assert_eq!(
            dk.graph.wiener_directed().unwrap(),
            closed_form_integer(ClosedFormId::WDk, k).unwrap(),
            "orientation value at k = {k}"
        );
    }
    assert_eq!(closed_form_integer(ClosedFormId::WTk, 3).unwrap(), 145);
    assert_eq!(closed_form_integer(ClosedFormId::WDk, 3).unwrap(), 91);
    report(
        1,
        "closed-form agreement",
        started,
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_02_wmax_fixtures() {
    let started = Instant::now();
    for k in [3, 6, 9] {
        let tk = build_tk(k).unwrap();
        let dp = build_dk_stage(k, Stage::DkPrime).unwrap();
        assert_eq!(
            dp.graph.wiener_max().unwrap(),
            closed_form_integer(ClosedFormId::WmaxDkPrime, k).unwrap()
        );
        assert_eq!(
            tk.graph
                .wiener_max_between(&tk.roles.u_set(), &tk.roles.w_tail_set())
                .unwrap(),
            closed_form_integer(ClosedFormId::WmaxUWtail, k).unwrap()
        );
        assert_eq!(
            dp.graph
                .wiener_max_between(&dp.roles.u_set(), &dp.roles.x_set())
                .unwrap(),
            25 * (k as i64) * (k as i64) / 9
        );
    }
    let t3 = build_tk(3).unwrap();
    assert_eq!(
        t3.graph
            .wiener_max_between(&t3.roles.u_set(), &t3.roles.w_tail_set())
            .unwrap(),
        0
    );
    let t6 = build_tk(6).unwrap();
    assert_eq!(
        t6.graph
            .wiener_max_between(&t6.roles.u_set(), &t6.roles.w_tail_set())
            .unwrap(),
        60
    );
    report(2, "W^max fixtures", started, Some(Duration::from_secs(1)));
}

#[test]
fn criterion_03_nested_partial_orientation_suite() {
    let started = Instant::now();
    let mut rng = rng(0x1E44A1);
    for _ in 0..200 {
        let n = rng.random_range(2..=10);
        let tree = random_tree(&mut rng, n);
        let d1 = random_partial_orientation(&mut rng, &tree, 0.6);
        let d2 = random_partial_orientation(&mut rng, &d1, 0.6);

        // (a) equality on the undirected tree.
        assert_eq!(
            tree.wiener_max().unwrap(),
            tree.wiener_undirected().unwrap()
        );

        // (b) equality on a full orientation below d2.
        let full = random_full_orientation(&mut rng, &d2);
        assert_eq!(full.wiener_max().unwrap(), full.wiener_directed().unwrap());

        // (c) the chain inequality.
        let w2 = d2.wiener_max().unwrap();
        let w1 = d1.wiener_max().unwrap();
        let wt = tree.wiener_undirected().unwrap();
        assert!(w2 <= w1 && w1 <= wt);

        // (d) for pairs unconnected in either direction in d2.
        let m2 = d2.all_pairs();
        let unconnected = |u: usize, v: usize| m2.get(u, v) == 0 && m2.get(v, u) == 0;
        for u in 0..n {
            for v in (u + 1)..n {
                if unconnected(u, v) {
                    let a = VertexSubset::new([u]);
                    let b = VertexSubset::new([v]);
                    assert!(w2 <= w1 - d1.wiener_max_between(&a, &b).unwrap());
                }
            }
        }
        // The same inequality for a greedily grown pair of sets.
        'outer: for u in 0..n {
            for v in (u + 1)..n {
                if unconnected(u, v) {
                    let mut a_members = vec![u];
                    let mut b_members = vec![v];
                    for w in 0..n {
                        if w == u || w == v {
                            continue;
                        }
                        if b_members.iter().all(|&b| unconnected(w, b)) {
                            a_members.push(w);
                        } else if a_members.iter().all(|&a| unconnected(w, a)) {
                            b_members.push(w);
                        }
                    }
                    let a = VertexSubset::new(a_members);
                    let b = VertexSubset::new(b_members);
                    assert!(w2 <= w1 - d1.wiener_max_between(&a, &b).unwrap());
                    break 'outer;
                }
            }
        }
    }
    report(
        3,
        "nested partial orientations",
        started,
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_04_min_bound_equality_iff_transitive() {
    let started = Instant::now();
    for n in 1..=5 {
        for g in all_labeled_graphs(n).filter(|g| g.is_connected_underlying()) {
            let m = g.undirected_edges().len() as i64;
            let total = 1u64 << g.undirected_edges().len();
            for mask in 0..total {
                let d = orientation_from_mask(&g, mask);
                let w = d.wiener_directed().unwrap();
                assert!(w >= m, "W(D) = {w} below edge count {m}");
                assert_eq!(
                    w == m,
                    is_transitive(&d).unwrap(),
                    "equality must coincide with transitivity"
                );
            }
        }
    }
    report(
        4,
        "minimum bound exhaustive",
        started,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_05_comparability_recognition_oracle() {
    let started = Instant::now();
    for g in all_labeled_graphs(5) {
        let recognised = find_transitive_orientation(&g).unwrap();
        assert_eq!(
            recognised.is_some(),
            oracle_has_transitive_orientation(&g),
            "disagreement on {g:?}"
        );
        if let Some(witness) = recognised {
            assert!(is_transitive(&witness.apply()).unwrap());
        }
    }
    let mut rng = rng(0x0C5);
    for _ in 0..200 {
        let n = rng.random_range(2..=8);
        let g = random_connected_graph(&mut rng, n, 14usize.saturating_sub(n - 1));
        assert!(g.undirected_edges().len() <= 14);
        let recognised = find_transitive_orientation(&g).unwrap();
        assert_eq!(recognised.is_some(), oracle_has_transitive_orientation(&g));
        if let Some(witness) = recognised {
            assert!(is_transitive(&witness.apply()).unwrap());
        }
    }
    assert!(find_transitive_orientation(&cycle_graph(5))
        .unwrap()
        .is_none());
    assert!(find_transitive_orientation(&cycle_graph(6))
        .unwrap()
        .is_some());
    assert!(find_transitive_orientation(&path_graph(4))
        .unwrap()
        .is_some());
    assert!(find_transitive_orientation(&petersen_graph())
        .unwrap()
        .is_none());
    report(
        5,
        "comparability recognition oracle",
        started,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_06_solver_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = rng(0x50CCE4);
    for _ in 0..100 {
        let n = rng.random_range(2..=7);
        let g = random_connected_graph(&mut rng, n, 6);
        let (oracle_max, _) = oracle_orient_extremum(&g, true);
        let (oracle_min, _) = oracle_orient_extremum(&g, false);
        let max_report = orient_max_exact(&g, Strategy::Exhaustive, false, 1).unwrap();
        let min_report = orient_min_exact(&g, 1).unwrap();
        assert_eq!(max_report.value, oracle_max);
        assert_eq!(min_report.value, oracle_min);
        assert_eq!(
            max_report.witnesses[0].apply().wiener_directed().unwrap(),
            oracle_max
        );
        assert_eq!(
            min_report.witnesses[0].apply().wiener_directed().unwrap(),
            oracle_min
        );
    }
    for _ in 0..100 {
        let n = rng.random_range(2..=10);
        let tree = random_tree(&mut rng, n);
        let exhaustive = orient_max_exact(&tree, Strategy::Exhaustive, false, 1).unwrap();
        let bnb = orient_max_exact(&tree, Strategy::BnbTree, false, 1).unwrap();
        assert_eq!(bnb.value, exhaustive.value);
        assert_eq!(bnb.witnesses, exhaustive.witnesses);
        assert!(
            bnb.explored <= exhaustive.explored,
            "bnb explored {} > exhaustive {}",
            bnb.explored,
            exhaustive.explored
        );
    }
    assert_eq!(orient_min_exact(&cycle_graph(5), 1).unwrap().value, 7);
    report(
        6,
        "solver oracle equivalence",
        started,
        Some(Duration::from_secs(120)),
    );
}

#[test]
fn criterion_07_family_behaviour_at_small_k() {
    let started = Instant::now();
    let t3 = build_tk(3).unwrap();
    let report_all = orient_max_exact(&t3.graph, Strategy::Exhaustive, true, 1).unwrap();
    assert!(
        report_all.value >= 100,
        "max over T_3 is {}",
        report_all.value
    );
    assert!(report_all.value > 91);
    let vectors: Vec<Vec<wiener::graph::EdgeChoice>> = report_all
        .witnesses
        .iter()
        .map(|w| w.choices().to_vec())
        .collect();
    for vector in &vectors {
        let flipped: Vec<wiener::graph::EdgeChoice> = vector
            .iter()
            .map(|c| match c {
                wiener::graph::EdgeChoice::Forward => wiener::graph::EdgeChoice::Backward,
                wiener::graph::EdgeChoice::Backward => wiener::graph::EdgeChoice::Forward,
                wiener::graph::EdgeChoice::Undecided => wiener::graph::EdgeChoice::Undecided,
            })
            .collect();
        assert!(vectors.contains(&flipped), "witnesses not converse-closed");
    }

    for k in [3, 6, 9] {
        let dk = build_dk_stage(k, Stage::Dk).unwrap();
        assert!(is_zigzag(&dk.graph, ZigzagMethod::PathChanges).unwrap());
        assert!(is_zigzag(&dk.graph, ZigzagMethod::Center).unwrap());
        assert_eq!(find_center_vertex(&dk.graph).unwrap(), None);
    }

    let m = t3.graph.undirected_edges().len();
    for mask in 0..(1u64 << m) {
        let d = orientation_from_mask(&t3.graph, mask);
        assert_eq!(
            is_zigzag(&d, ZigzagMethod::PathChanges).unwrap(),
            is_zigzag(&d, ZigzagMethod::Center).unwrap(),
            "methods disagree on orientation {mask} of T_3"
        );
    }
    report(
        7,
        "family behaviour at small k",
        started,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_08_reduction_forward_direction() {
    let started = Instant::now();
    let k2 = complete_graph(2);
    let k3 = complete_graph(3);
    let p4 = path_graph(4);
    let mut fixtures = vec![(k2, 0usize, 1usize), (k3, 0, 2), (p4, 0, 3)];

    let mut rng = rng(0x4ED);
    let mut found = 0;
    while found < 20 {
        let n = rng.random_range(2..=5);
        let g = random_connected_graph(&mut rng, n, 4);
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n);
        while b == a {
            b = rng.random_range(0..n);
        }
        if wiener::reduction::hampath_bruteforce(&g, a, b)
            .unwrap()
            .is_some()
        {
            fixtures.push((g, a, b));
            found += 1;
        }
    }

    for (g, a, b) in &fixtures {
        let n = g.n();
        let verdict = verify_forward_reduction(g, *a, *b).unwrap();
        assert!(!verdict.vacuous, "fixture must have a hamiltonian path");
        assert!(verdict.passed, "forward checks failed: {verdict:?}");
        assert_eq!(verdict.gadget_order, 2 * n * n * n + n + 2);
        assert_eq!(verdict.wiener_between_a_b, Some(m_of_n(n as u32)));
        assert!(verdict.wiener.unwrap() >= m_of_n(n as u32));
    }

    for n in 1..=20u32 {
        let x = i64::from(n);
        assert_eq!(
            m_of_n(n),
            x.pow(6) * (x + 3) + 2 * x.pow(3) * (x + 2) + x + 1
        );
    }
    report(
        8,
        "reduction forward direction",
        started,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_09_documented_discrepancy_reports() {
    let started = Instant::now();
    println!("-- y-edge swap: nominal closed forms vs BFS sums --");
    for k in [3, 6, 9] {
        let r = y_edge_swap_report(k).unwrap();
        println!(
            "k={:>2}  tail: formula={} bfs={}   incoming: formula={} bfs={}   W(D_k)={} W(D_k''')={}",
            k,
            r.tail_sum_formula,
            r.tail_sum_bfs,
            r.incoming_sum_formula,
            r.incoming_sum_bfs,
            r.wiener_dk,
            r.wiener_dk_triple
        );
        assert!(r.is_internally_consistent());

        // Independent recomputation of both sums via Floyd-Warshall.
        let dk = build_dk_stage(k, Stage::Dk).unwrap();
        let d3p = build_dk_stage(k, Stage::DkTriplePrime).unwrap();
        let fw_dk = fw_distances(&dk.graph);
        let fw_d3p = fw_distances(&d3p.graph);
        let y = dk.roles.y;
        // The zero convention: unreachable pairs contribute nothing.
        let zero_conv = |d: u32| if d >= u32::MAX / 4 { 0 } else { i64::from(d) };
        let tail: i64 = dk.roles.w[2..]
            .iter()
            .map(|&v| zero_conv(fw_dk[y][v]))
            .sum();
        let incoming: i64 = dk
            .roles
            .u
            .iter()
            .chain(dk.roles.x.iter())
            .chain(dk.roles.w[..3].iter())
            .map(|&v| zero_conv(fw_d3p[v][y]))
            .sum();
        assert_eq!(tail, r.tail_sum_bfs);
        assert_eq!(incoming, r.incoming_sum_bfs);
    }

    println!("-- tournament maxima vs C(n+1,3)-1 --");
    for n in [2, 3, 4, 5] {
        let t = tournament_max(n).unwrap();
        println!(
            "n={}  max W = {}  binomial bound = {}",
            n, t.value, t.binomial_bound
        );
        // Internal consistency: the witness is a tournament achieving the
        // reported value.
        assert_eq!(t.witness.arcs().len(), n * (n - 1) / 2);
        assert!(t.witness.is_digraph());
        assert_eq!(oracle_wiener_directed(&t.witness), t.value);
    }
    report(9, "documented discrepancy reports", started, None);
}

#[test]
fn criterion_10_worker_determinism() {
    let started = Instant::now();
    let mut rng = rng(0xDE7);
    for i in 0..20 {
        let n = rng.random_range(3..=7);
        let g = random_connected_graph(&mut rng, n, 5);
        let all_optima = i % 2 == 0;
        let single = orient_max_exact(&g, Strategy::Exhaustive, all_optima, 1).unwrap();
        let parallel = orient_max_exact(&g, Strategy::Exhaustive, all_optima, 8).unwrap();
        assert_eq!(
            single.to_json_string(),
            parallel.to_json_string(),
            "max report differs between worker counts"
        );
        let min_single = orient_min_exact(&g, 1).unwrap();
        let min_parallel = orient_min_exact(&g, 8).unwrap();
        assert_eq!(min_single.to_json_string(), min_parallel.to_json_string());
        // Repeated runs are byte-identical too.
        let again = orient_max_exact(&g, Strategy::Exhaustive, all_optima, 8).unwrap();
        assert_eq!(parallel.to_json_string(), again.to_json_string());
    }
    report(10, "worker determinism", started, None);
}

/// Supplementary to criterion 7: the exact maximiser confirms that the
/// family's nominal orientation is not optimal at k = 3, where the flipped
/// y-edge scores 100 against 91.
#[test]
fn small_k_optimum_exceeds_the_nominal_orientation() {
    let t3 = build_tk(3).unwrap();
    let exact = orient_max_exact(&t3.graph, Strategy::Exhaustive, false, 1).unwrap();
    let d3_triple = build_dk_stage(3, Stage::DkTriplePrime).unwrap();
    assert!(exact.value >= d3_triple.graph.wiener_directed().unwrap());
    let d3 = build_dk_stage(3, Stage::Dk).unwrap();
    assert!(exact.value > d3.graph.wiener_directed().unwrap());
}
