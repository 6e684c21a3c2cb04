//! Exact shortest simple-path solvers over a [`RoutingGraph`].
//!
//! All solvers share one total order on candidate paths: smaller total
//! weight first, then fewer hops, then the lexicographically smaller vertex
//! sequence. Path weights are always accumulated edge by edge from the
//! source, so the same path gets bit-identical weights from every solver.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use crate::beamforming::{closed_form_power, RouteEvaluation};
use crate::error::{Error, Result};
use crate::geometry::{Route, Scenario};
use crate::graph::{build_graph, build_los_matrix, Edge, RoutingGraph};

/// Largest IRS count accepted by [`brute_force_optimum`].
pub const BRUTE_FORCE_MAX_IRS: usize = 12;

/// Absolute weight tolerance for cross-solver agreement.
pub const SOLVER_AGREEMENT_TOL: f64 = 1e-9;

/// A source-to-vertex path with its accumulated weight.
#[derive(Clone, Debug, PartialEq)]
pub struct PathResult {
    pub vertices: Vec<usize>,
    pub total_weight: f64,
}

impl PathResult {
    fn source() -> Self {
        PathResult { vertices: vec![0], total_weight: 0.0 }
    }

    fn extend(&self, edge: &Edge) -> Self {
        let mut vertices = Vec::with_capacity(self.vertices.len() + 1);
        vertices.extend_from_slice(&self.vertices);
        vertices.push(edge.to);
        PathResult { vertices, total_weight: self.total_weight + edge.weight }
    }

    fn end(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    /// Number of intermediate vertices, i.e. reflections `K`.
    pub fn hop_count(&self) -> usize {
        self.vertices.len().saturating_sub(2)
    }

    /// The shared tie-breaking order; `Less` means `self` is preferred.
    pub fn preference(&self, other: &PathResult) -> Ordering {
        self.total_weight
            .total_cmp(&other.total_weight)
            .then(self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }

    pub fn route(&self) -> Result<Route> {
        Route::from_vertex_sequence(&self.vertices)
    }
}

fn keep_better(slot: &mut Option<PathResult>, candidate: PathResult) -> bool {
    match slot {
        Some(current) if candidate.preference(current) != Ordering::Less => false,
        _ => {
            *slot = Some(candidate);
            true
        }
    }
}

/// Per-hop-count shortest paths from the source to the sink. Entry `k`
/// holds the best path with exactly `k` intermediate vertices (`k + 1`
/// edges), or `None` when no such path exists.
#[derive(Clone, Debug, PartialEq)]
pub struct HopIndexedPaths {
    entries: Vec<Option<PathResult>>,
}

impl HopIndexedPaths {
    pub fn get(&self, k: usize) -> Option<&PathResult> {
        self.entries.get(k)?.as_ref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &PathResult)> {
        self.entries.iter().enumerate().filter_map(|(k, p)| Some((k, p.as_ref()?)))
    }

    /// Global optimum over all hop counts.
    pub fn best(&self) -> Option<&PathResult> {
        self.iter().map(|(_, p)| p).min_by(|a, b| a.preference(b))
    }

    /// Largest `k` with a path, if any.
    pub fn max_hops(&self) -> Option<usize> {
        self.iter().map(|(k, _)| k).last()
    }
}

#[derive(Debug)]
struct Label(PathResult);

impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Label {}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.preference(&other.0)
    }
}

/// Dijkstra's algorithm with a binary heap; requires non-negative weights.
pub fn dijkstra(graph: &RoutingGraph) -> Result<Option<PathResult>> {
    if let Some(e) = graph.edges().iter().find(|e| e.weight < 0.0) {
        return Err(Error::NegativeWeight { from: e.from, to: e.to, weight: e.weight });
    }
    let n = graph.vertex_count();
    let mut best: Vec<Option<PathResult>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    best[0] = Some(PathResult::source());
    heap.push(Reverse(Label(PathResult::source())));
    while let Some(Reverse(Label(path))) = heap.pop() {
        let v = path.end();
        if settled[v] {
            continue;
        }
        settled[v] = true;
        if v == graph.sink() {
            return Ok(Some(path));
        }
        for e in graph.outgoing(v) {
            if settled[e.to] {
                continue;
            }
            let candidate = path.extend(e);
            if keep_better(&mut best[e.to], candidate.clone()) {
                heap.push(Reverse(Label(candidate)));
            }
        }
    }
    Ok(None)
}

/// All-hops shortest paths by dynamic programming over the hop count:
/// the best `k`-reflection path to `i` extends the best `(k-1)`-reflection
/// path to one of `i`'s in-neighbours. Runs in `O(J·|E|)` relaxations.
///
/// Requires an acyclic graph, where every walk is a simple path.
pub fn ahsp_dp(graph: &RoutingGraph) -> Result<HopIndexedPaths> {
    graph.topological_order()?;
    let n = graph.vertex_count();
    let sink = graph.sink();
    let source = PathResult::source();
    let mut layer: Vec<Option<PathResult>> = vec![None; n];
    for e in graph.outgoing(0) {
        keep_better(&mut layer[e.to], source.extend(e));
    }
    let max_k = graph.irs_count();
    let mut entries = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        entries.push(layer[sink].clone());
        if k == max_k {
            break;
        }
        let mut next: Vec<Option<PathResult>> = vec![None; n];
        for (v, path) in layer.iter().enumerate() {
            let Some(path) = path else { continue };
            if v == sink {
                continue;
            }
            for e in graph.outgoing(v) {
                keep_better(&mut next[e.to], path.extend(e));
            }
        }
        layer = next;
    }
    Ok(HopIndexedPaths { entries })
}

/// Single relaxation pass in topological order; valid for negative weights.
pub fn dag_shortest_path(graph: &RoutingGraph) -> Result<Option<PathResult>> {
    let order = graph.topological_order()?;
    let mut best: Vec<Option<PathResult>> = vec![None; graph.vertex_count()];
    best[0] = Some(PathResult::source());
    for v in order {
        let Some(path) = best[v].clone() else { continue };
        if v == graph.sink() {
            continue;
        }
        for e in graph.outgoing(v) {
            keep_better(&mut best[e.to], path.extend(e));
        }
    }
    Ok(best[graph.sink()].take())
}

/// Exhaustive depth-first enumeration of every simple source-to-sink path.
/// Works on cyclic graphs too. Rejects graphs with more than
/// [`BRUTE_FORCE_MAX_IRS`] intermediate vertices.
pub fn brute_force_optimum(graph: &RoutingGraph) -> Result<Option<PathResult>> {
    brute_force_optimum_with_cap(graph, BRUTE_FORCE_MAX_IRS)
}

pub fn brute_force_optimum_with_cap(graph: &RoutingGraph, cap: usize) -> Result<Option<PathResult>> {
    if graph.irs_count() > cap {
        return Err(Error::SizeLimit { irs_count: graph.irs_count(), cap });
    }
    let mut best = None;
    for_each_simple_path(graph, |path| {
        keep_better(&mut best, path.clone());
    });
    Ok(best)
}

/// Calls `visit` for every simple source-to-sink path.
pub fn for_each_simple_path(graph: &RoutingGraph, mut visit: impl FnMut(&PathResult)) {
    fn walk(
        graph: &RoutingGraph,
        path: &PathResult,
        on_path: &mut [bool],
        visit: &mut dyn FnMut(&PathResult),
    ) {
        let v = path.end();
        if v == graph.sink() {
            visit(path);
            return;
        }
        for e in graph.outgoing(v) {
            if on_path[e.to] {
                continue;
            }
            on_path[e.to] = true;
            walk(graph, &path.extend(e), on_path, visit);
            on_path[e.to] = false;
        }
    }
    let mut on_path = vec![false; graph.vertex_count()];
    on_path[0] = true;
    walk(graph, &PathResult::source(), &mut on_path, &mut visit);
}

/// Which exact solver [`shortest_path`] runs on a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverCase {
    /// All weights non-negative: Dijkstra.
    NonNegative,
    /// Some weight negative: minimum over the all-hops table.
    Negative,
    /// No edges at all.
    Empty,
}

pub fn solver_case(graph: &RoutingGraph) -> Result<SolverCase> {
    match graph.min_edge_weight() {
        Err(Error::EmptyGraph) => Ok(SolverCase::Empty),
        Err(e) => Err(e),
        Ok(w) if w >= 0.0 => Ok(SolverCase::NonNegative),
        Ok(_) => Ok(SolverCase::Negative),
    }
}

/// Optimal path: Dijkstra when all weights are non-negative, otherwise the
/// best all-hops entry. Either result is cross-checked against the
/// topological-order solver.
pub fn shortest_path(graph: &RoutingGraph) -> Result<Option<PathResult>> {
    let primary = match solver_case(graph)? {
        SolverCase::Empty => None,
        SolverCase::NonNegative => dijkstra(graph)?,
        SolverCase::Negative => ahsp_dp(graph)?.best().cloned(),
    };
    let check = dag_shortest_path(graph)?;
    match (&primary, &check) {
        (None, None) => Ok(primary),
        (Some(a), Some(b)) if (a.total_weight - b.total_weight).abs() <= SOLVER_AGREEMENT_TOL => Ok(primary),
        _ => Err(Error::InternalInconsistency(format!(
            "primary solver found {:?} but topological relaxation found {:?}",
            primary.as_ref().map(|p| (&p.vertices, p.total_weight)),
            check.as_ref().map(|p| (&p.vertices, p.total_weight)),
        ))),
    }
}

/// Power-optimal route of the scenario and its closed-form evaluation.
pub fn optimal_route(scenario: &Scenario) -> Result<(Route, RouteEvaluation)> {
    let los = build_los_matrix(scenario);
    let graph = build_graph(scenario, &los);
    let path = shortest_path(&graph)?.ok_or(Error::NoRoute)?;
    let route = path.route()?;
    let evaluation = closed_form_power(scenario, &route)?;
    Ok((route, evaluation))
}
