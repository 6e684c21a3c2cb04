//! One test per acceptance criterion. Each prints a single
//! `criterion N ...: PASS|FAIL (detail)` line before asserting.

use std::process::Command;
use std::time::{Duration, Instant};

use irs_route::{parse_scenario, FACTORY_SCENARIO};
use irs_route_core::benchmarks::Scheme;
use irs_route_core::paths::for_each_simple_path;
use irs_route_core::{
    ahsp_dp, brute_force_optimum, build_graph, build_los_matrix, closed_form_power, compare, dag_shortest_path,
    dijkstra, evaluate_direct, mrt_vector, optimal_phases, shortest_path, solver_case, LosPolicy, Node, NodeKind,
    PathResult, Point3, Route, RoutingGraph, Scenario, SolverCase, SystemParams,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn verdict(id: u32, name: &str, ok: bool, detail: String) {
    println!("criterion {id} {name}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} {name} failed: {detail}");
}

fn factory() -> Scenario {
    parse_scenario(FACTORY_SCENARIO).unwrap()
}

fn nodes_from(points: Vec<Point3>) -> Vec<Node> {
    let last = points.len() - 1;
    points
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let kind = match i {
                0 => NodeKind::Bs,
                i if i == last => NodeKind::User,
                _ => NodeKind::Irs,
            };
            Node::new(i, kind, p)
        })
        .collect()
}

/// Points in a box with every pair more than `gap` apart.
fn spread_points(rng: &mut StdRng, count: usize, size: (f64, f64, f64), gap: f64) -> Vec<Point3> {
    let mut points: Vec<Point3> = Vec::new();
    while points.len() < count {
        let p = Point3::new(rng.gen_range(0.0..size.0), rng.gen_range(0.0..size.1), rng.gen_range(0.0..size.2));
        if points.iter().all(|q| q.distance(p) > gap) {
            points.push(p);
        }
    }
    points
}

/// BS at one end of a corridor, user at the other, IRSs in between; redrawn
/// until some outward LoS chain reaches the user. Longer corridors need
/// more IRSs.
fn corridor_scenario(rng: &mut StdRng, irs_count: usize, rows: usize, cols: usize) -> Scenario {
    let longest = (10.0 + 2.0 * irs_count as f64).min(28.0);
    loop {
        let length = rng.gen_range(9.0..longest);
        let mut points = vec![Point3::new(0.0, 0.0, 2.5)];
        while points.len() < irs_count + 1 {
            let p = Point3::new(rng.gen_range(-2.0..length + 2.0), rng.gen_range(-3.0..9.0), rng.gen_range(1.0..4.0));
            if points.iter().all(|q| q.distance(p) > 1.5) {
                points.push(p);
            }
        }
        let user = Point3::new(length, rng.gen_range(0.0..8.0), 1.5);
        if points.iter().any(|q| q.distance(user) <= 1.5) {
            continue;
        }
        points.push(user);
        let params = SystemParams::new(0.06, 2, rows, cols).unwrap();
        let s = Scenario::new(params, nodes_from(points), LosPolicy::Threshold { threshold_m: 12.0 }).unwrap();
        if shortest_path(&graph(&s)).unwrap().is_some() {
            return s;
        }
    }
}

fn graph(s: &Scenario) -> RoutingGraph {
    build_graph(s, &build_los_matrix(s))
}

fn same(a: &Option<PathResult>, b: &Option<PathResult>, tol: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(a), Some(b)) => (a.total_weight - b.total_weight).abs() <= tol && a.vertices == b.vertices,
        _ => false,
    }
}

#[test]
fn criterion_1_closed_form_identity() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(1);
    let (mut routes, mut max_rel, mut max_im) = (0, 0.0f64, 0.0f64);
    while routes < 200 {
        let j = rng.gen_range(2..=8);
        let m1 = rng.gen_range(1..=16);
        let m2 = rng.gen_range(1..=256 / m1).min(16);
        let n = rng.gen_range(1..=8);
        let points = spread_points(&mut rng, j + 2, (20.0, 20.0, 5.0), 1.2);
        let params = SystemParams::new(rng.gen_range(0.01..0.1), n, m1, m2).unwrap();
        let s = Scenario::new(params, nodes_from(points), LosPolicy::Threshold { threshold_m: 15.0 }).unwrap();
        // random LoS walk through distinct IRSs, K <= 5
        let user = s.user_id();
        let target = rng.gen_range(1..=5.min(j));
        let mut walk: Vec<usize> = Vec::new();
        let mut current = 0;
        while walk.len() < target {
            let options: Vec<usize> = (1..user).filter(|&i| s.los().get(current, i) && !walk.contains(&i)).collect();
            match options.choose(&mut rng) {
                Some(&i) => {
                    walk.push(i);
                    current = i;
                }
                None => break,
            }
        }
        if walk.is_empty() || !s.los().get(current, user) {
            continue;
        }
        let route = Route::new(walk).unwrap();
        let direct = evaluate_direct(
            &s,
            &route,
            &optimal_phases(&s, &route).unwrap(),
            &mrt_vector(&s, &route).unwrap(),
        )
        .unwrap();
        let closed = closed_form_power(&s, &route).unwrap();
        let c = direct.channel_coefficient;
        max_rel = max_rel.max((direct.power - closed.power).abs() / closed.power);
        max_im = max_im.max(if c.re > 0.0 { c.im.abs() / c.re } else { f64::INFINITY });
        routes += 1;
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        "closed-form identity",
        max_rel <= 1e-9 && max_im <= 1e-9 && elapsed <= Duration::from_secs(60),
        format!("{routes} routes, max rel err {max_rel:.2e}, max |Im|/Re {max_im:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_2_optimality_oracle() {
    let start = Instant::now();
    let sizes = [(1, 1), (10, 10), (20, 20), (30, 30), (30, 50), (40, 50)];
    let mut rng = StdRng::seed_from_u64(2);
    let (mut mismatches, mut negative) = (0, 0);
    for i in 0..100 {
        let (rows, cols) = sizes[i % sizes.len()];
        let s = corridor_scenario(&mut rng, 1 + i % 10, rows, cols);
        let g = graph(&s);
        if solver_case(&g).unwrap() == SolverCase::Negative {
            negative += 1;
        }
        if !same(&shortest_path(&g).unwrap(), &brute_force_optimum(&g).unwrap(), 1e-9) {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        2,
        "optimality oracle",
        mismatches == 0 && elapsed <= Duration::from_secs(120),
        format!("100 scenarios, {negative} with negative edges, {mismatches} mismatches, {elapsed:.2?}"),
    );
}

/// Follows the lightest outgoing edge until the sink or a dead end.
fn naive_greedy(g: &RoutingGraph) -> Option<Vec<usize>> {
    let mut path = vec![0];
    let mut v = 0;
    while v != g.sink() {
        let next = g
            .outgoing(v)
            .filter(|e| !path.contains(&e.to))
            .min_by(|a, b| a.weight.total_cmp(&b.weight))?;
        v = next.to;
        path.push(v);
    }
    Some(path)
}

#[test]
fn criterion_3_solver_cross_agreement() {
    let mut graphs: Vec<RoutingGraph> = Vec::new();
    let mut rng = StdRng::seed_from_u64(3);
    for i in 0..60 {
        let (rows, cols) = [(5, 5), (20, 20), (30, 30), (30, 50), (50, 50)][i % 5];
        graphs.push(graph(&corridor_scenario(&mut rng, 4 + i % 7, rows, cols)));
    }
    graphs.push(graph(&factory()));
    graphs.push(graph(&factory().with_elements(30, 50).unwrap()));
    let trap = RoutingGraph::from_edges(5, &[(0, 1, 0.1), (0, 2, 1.0), (1, 4, 1.0), (2, 3, -2.0), (3, 4, 0.2)]).unwrap();
    graphs.push(trap.clone());

    let mut disagreements = 0;
    let mut dijkstra_checked = 0;
    for g in &graphs {
        let dag = dag_shortest_path(g).unwrap();
        let hops = ahsp_dp(g).unwrap().best().cloned();
        if !same(&dag, &hops, 1e-9) {
            disagreements += 1;
        }
        if g.edges().iter().all(|e| e.weight >= 0.0) {
            dijkstra_checked += 1;
            if !same(&dijkstra(g).unwrap(), &dag, 1e-9) {
                disagreements += 1;
            }
        }
    }
    let optimum = shortest_path(&trap).unwrap().unwrap();
    let greedy = naive_greedy(&trap).unwrap();
    let greedy_weight = trap.path_weight(&greedy).unwrap();
    let trap_ok = solver_case(&trap).unwrap() == SolverCase::Negative
        && greedy != optimum.vertices
        && greedy_weight > optimum.total_weight;
    verdict(
        3,
        "solver cross-agreement",
        disagreements == 0 && trap_ok,
        format!(
            "{} graphs, {dijkstra_checked} with Dijkstra, {disagreements} disagreements; negative fixture greedy {greedy:?} = {greedy_weight:.2} vs optimum {:?} = {:.2}",
            graphs.len(),
            optimum.vertices,
            optimum.total_weight
        ),
    );
}

#[test]
fn criterion_4_quartic_cooperative_gain() {
    let points = vec![
        Point3::new(0.0, 0.0, 2.0),
        Point3::new(4.0, 3.0, 2.5),
        Point3::new(9.0, 5.0, 2.5),
        Point3::new(13.0, 1.0, 1.5),
    ];
    let s = Scenario::new(
        SystemParams::from_carrier_hz(5e9, 2, 10, 10).unwrap(),
        nodes_from(points),
        LosPolicy::Threshold { threshold_m: 12.0 },
    )
    .unwrap();
    let power = |route: &Route, rows, cols| closed_form_power(&s.with_elements(rows, cols).unwrap(), route).unwrap().power;
    let two = Route::new(vec![1, 2]).unwrap();
    let one = Route::new(vec![1]).unwrap();
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for (rows, cols) in [(10, 10), (10, 20), (16, 16), (30, 30)] {
        let r2 = power(&two, rows, 2 * cols) / power(&two, rows, cols);
        let r1 = power(&one, rows, 2 * cols) / power(&one, rows, cols);
        worst = worst.max((r2 / 16.0 - 1.0).abs()).max((r1 / 4.0 - 1.0).abs());
        detail.push(format!("M={}: K=2 {r2:.12}, K=1 {r1:.12}", rows * cols));
    }
    verdict(4, "quartic cooperative gain", worst <= 1e-12, format!("max rel dev {worst:.1e}; {}", detail.join("; ")));
}

fn unique_optimum(g: &RoutingGraph) -> Option<usize> {
    let mut weights: Vec<(f64, usize)> = Vec::new();
    for_each_simple_path(g, |p| weights.push((p.total_weight, p.hop_count())));
    weights.sort_by(|a, b| a.0.total_cmp(&b.0));
    match weights.as_slice() {
        [] => None,
        [only] => Some(only.1),
        [a, b, ..] if b.0 - a.0 > 1e-9 => Some(a.1),
        _ => None,
    }
}

#[test]
fn criterion_5_hop_count_monotonicity() {
    let sizes = [(1, 1), (5, 5), (10, 10), (20, 20), (25, 30), (30, 30), (30, 50), (50, 50)];
    let mut rng = StdRng::seed_from_u64(5);
    let (mut scenarios, mut violations, mut growing) = (0, 0, 0);
    while scenarios < 50 {
        let s = corridor_scenario(&mut rng, 7, 1, 1);
        let hops: Vec<usize> = sizes
            .iter()
            .filter_map(|&(r, c)| unique_optimum(&graph(&s.with_elements(r, c).unwrap())))
            .collect();
        if hops.len() < 5 {
            continue;
        }
        scenarios += 1;
        if hops.windows(2).any(|w| w[1] < w[0]) {
            violations += 1;
        }
        if hops.last() > hops.first() {
            growing += 1;
        }
    }
    let f = factory();
    let k_small = shortest_path(&graph(&f.with_elements(20, 20).unwrap())).unwrap().unwrap().hop_count();
    let k_large = shortest_path(&graph(&f.with_elements(30, 50).unwrap())).unwrap().unwrap().hop_count();
    verdict(
        5,
        "hop-count monotonicity",
        violations == 0 && k_small < k_large,
        format!(
            "{scenarios} scenarios, {violations} decreases, {growing} with strict growth; bundled K = {k_small} at 20x20, {k_large} at 30x50"
        ),
    );
}

#[test]
fn criterion_6_benchmark_dominance() {
    let sizes = [(10, 10), (20, 20), (20, 35), (30, 30), (30, 40), (30, 50)];
    let rows = compare(&factory(), &sizes).unwrap();
    let db = |row: &irs_route_core::ComparisonRow, s: Scheme| row.get(s).map(|o| o.power_db());
    let mut dominated = true;
    let mut strictly_below_at_moderate = false;
    let mut coincide_gap = None;
    let mut max_hop_gaps = Vec::new();
    for row in &rows {
        let best = row.get(Scheme::Proposed).unwrap().power();
        for (_, o) in row.iter() {
            if let Some(o) = o {
                dominated &= o.power() <= best * (1.0 + 1e-12);
            }
        }
        let proposed = row.get(Scheme::Proposed).unwrap();
        let pathloss = row.get(Scheme::MinPathloss).unwrap();
        if coincide_gap.is_none() && proposed.route == pathloss.route {
            coincide_gap = Some((row.m_value(), proposed.power_db() - pathloss.power_db()));
        }
        max_hop_gaps.push(db(row, Scheme::Proposed).unwrap() - db(row, Scheme::MaxHop).unwrap());
        if row.m_value() == 900 {
            strictly_below_at_moderate =
                proposed.power() > row.get(Scheme::MaxHop).unwrap().power() && proposed.power() > pathloss.power();
        }
    }
    let top = &max_hop_gaps[max_hop_gaps.len() - 3..];
    let shrinking = top.windows(2).all(|w| w[1] < w[0]);
    let pathloss_ok = matches!(coincide_gap, Some((_, gap)) if gap < 0.1);
    let gaps: Vec<String> = rows.iter().zip(&max_hop_gaps).map(|(r, g)| format!("{}:{g:.3}", r.m_value())).collect();
    verdict(
        6,
        "benchmark dominance and asymptotics",
        dominated && pathloss_ok && shrinking && strictly_below_at_moderate,
        format!(
            "dominance {dominated}; min-pathloss coincides at {coincide_gap:?} (M, dB gap); max-hop gap dB [{}]",
            gaps.join(", ")
        ),
    );
}

#[test]
fn criterion_7_carrier_constants() {
    let p = *factory().params();
    let beta_db = 10.0 * p.ref_path_gain.log10();
    let lambda_rel = (p.wavelength_m - 0.06).abs() / 0.06;
    verdict(
        7,
        "carrier constants",
        (beta_db + 46.0).abs() <= 0.5 && lambda_rel <= 1e-3,
        format!("lambda = {} m ({:.3}% from 0.06), beta = {beta_db:.3} dB", p.wavelength_m, 100.0 * lambda_rel),
    );
}

#[test]
fn criterion_8_negative_weight_regime() {
    let s = factory().with_elements(30, 30).unwrap();
    let p = s.params();
    let critical = p.elements() as f64 * p.ref_path_gain.sqrt();
    let g = graph(&s);
    let mut short = 0;
    let mut consistent = true;
    for e in g.edges() {
        let d = s.distance(e.from, e.to);
        if d < critical {
            short += 1;
            consistent &= e.weight < 0.0;
        } else {
            consistent &= e.weight >= 0.0;
        }
    }
    let case = solver_case(&g).unwrap();
    let agrees = same(&shortest_path(&g).unwrap(), &brute_force_optimum(&g).unwrap(), 1e-9);
    verdict(
        8,
        "negative-weight regime",
        short > 0 && consistent && case == SolverCase::Negative && agrees,
        format!("M = 900, M*sqrt(beta) = {critical:.3} m, {short} short edges, solver {case:?}, matches brute force {agrees}"),
    );
}

#[test]
fn criterion_9_determinism() {
    let scenario = format!("{}/scenarios/factory.scn", env!("CARGO_MANIFEST_DIR"));
    let invocations: Vec<Vec<&str>> = vec![
        vec!["solve", &scenario, "--phases"],
        vec!["solve", &scenario, "--m1", "10", "--m2", "10", "--verify"],
        vec!["sweep", &scenario, "--m", "10x10", "--m", "30x30", "--m", "30x50"],
        vec!["export-graph", &scenario],
        vec!["benchmarks", &scenario, "--m", "20x20", "--m", "30x50"],
    ];
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_irs-route")).args(args).output().unwrap();
        assert!(out.status.success(), "{args:?}");
        out.stdout
    };
    let mut differing = Vec::new();
    for args in &invocations {
        if run(args) != run(args) {
            differing.push(args[0]);
        }
    }
    verdict(
        9,
        "determinism",
        differing.is_empty(),
        format!("{} invocations run twice, differing: {differing:?}", invocations.len()),
    );
}
