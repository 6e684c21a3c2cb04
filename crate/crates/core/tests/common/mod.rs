#![allow(dead_code)]

use irs_route_core::{LosPolicy, Node, NodeKind, Point3, Scenario, SystemParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const WAVELENGTH_M: f64 = 0.06;

/// Random indoor layout: BS near the origin, user 18-28 m away, IRSs
/// scattered in between. Pairwise distances are kept above 1.5 m and the
/// layout is redrawn until the user is reachable through LoS hops.
pub fn random_scenario(seed: u64, irs_count: usize, rows: usize, cols: usize, antennas: usize) -> Scenario {
    let mut rng = StdRng::seed_from_u64(seed);
    let length = rng.gen_range(18.0..28.0);
    loop {
        let mut points = vec![Point3::new(0.0, 0.0, 2.5)];
        while points.len() < irs_count + 1 {
            let p = Point3::new(
                rng.gen_range(-2.0..length + 2.0),
                rng.gen_range(-3.0..9.0),
                rng.gen_range(1.0..4.0),
            );
            if points.iter().all(|q| q.distance(p) > 1.5) {
                points.push(p);
            }
        }
        let user = Point3::new(length, rng.gen_range(0.0..8.0), 1.5);
        if points.iter().any(|q| q.distance(user) <= 1.5) {
            continue;
        }
        points.push(user);
        let last = points.len() - 1;
        let nodes = points
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
            .collect();
        let params = SystemParams::new(WAVELENGTH_M, antennas, rows, cols).unwrap();
        let scenario = Scenario::new(params, nodes, LosPolicy::Threshold { threshold_m: 12.0 }).unwrap();
        if user_reachable(&scenario) {
            return scenario;
        }
    }
}

fn user_reachable(s: &Scenario) -> bool {
    let user = s.user_id();
    let mut seen = vec![false; user + 1];
    let mut stack: Vec<usize> = (1..user).filter(|&j| s.los().get(0, j)).collect();
    while let Some(v) = stack.pop() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if s.los().get(v, user) {
            return true;
        }
        stack.extend((1..user).filter(|&j| s.los().get(v, j) && !seen[j]));
    }
    false
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Every feasible route (any order, distinct IRSs, LoS on each hop),
/// enumerated straight from the LoS matrix without the routing graph.
pub fn all_feasible_routes(scenario: &Scenario) -> Vec<Vec<usize>> {
    fn extend(s: &Scenario, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let user = s.user_id();
        let current = *path.last().unwrap_or(&0);
        if !path.is_empty() && s.los().get(current, user) {
            out.push(path.clone());
        }
        for j in 1..user {
            if s.los().get(current, j) && !path.contains(&j) {
                path.push(j);
                extend(s, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(scenario, &mut Vec::new(), &mut out);
    out
}

/// Same enumeration restricted to routes moving strictly away from the BS
/// between IRSs.
pub fn outward_routes(scenario: &Scenario) -> Vec<Vec<usize>> {
    all_feasible_routes(scenario)
        .into_iter()
        .filter(|r| r.windows(2).all(|w| scenario.distance(w[1], 0) > scenario.distance(w[0], 0)))
        .collect()
}

/// Hop distances of a route, BS to user.
pub fn hop_distances(scenario: &Scenario, route: &[usize]) -> Vec<f64> {
    let mut seq = vec![0];
    seq.extend_from_slice(route);
    seq.push(scenario.user_id());
    seq.windows(2)
        .map(|w| {
            let a = scenario.node(w[0]).position;
            let b = scenario.node(w[1]).position;
            ((a.x - b.x).powi(2) + (a.y - b.y).powi(2) + (a.z - b.z).powi(2)).sqrt()
        })
        .collect()
}

/// `M^{2K} N β^{K+1} / Π d²` evaluated straight from its definition.
pub fn reference_power(scenario: &Scenario, route: &[usize]) -> f64 {
    let p = scenario.params();
    let k = route.len() as i32;
    let m = p.elements() as f64;
    let product: f64 = hop_distances(scenario, route).iter().map(|d| d * d).product();
    m.powi(2 * k) * p.bs_antennas as f64 * p.ref_path_gain.powi(k + 1) / product
}
