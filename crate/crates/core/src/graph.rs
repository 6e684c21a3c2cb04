//! Directed routing graph whose shortest `0 -> J+1` path is the
//! power-optimal route.
//!
//! Maximizing `M^{2K} N κ²` is the same as minimizing
//! `Σ ln(d_hop / (M√β))` over the hops of the route, so each LoS hop becomes
//! an edge with that weight. IRS-to-IRS edges only point away from the BS
//! (strictly increasing BS distance), which makes the graph acyclic.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::geometry::{LosMatrix, LosPolicy, Route, Scenario};

/// Which IRS-to-IRS hops become edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutwardRule {
    /// Only hops to an IRS strictly farther from the BS (acyclic graph).
    #[default]
    Enforced,
    /// Every LoS hop in both directions. The result is generally cyclic and
    /// only meant for exhaustive simple-path enumeration.
    Relaxed,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoutingGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    outgoing: Vec<Vec<usize>>,
}

impl RoutingGraph {
    /// Builds a graph from explicit weighted edges. Vertex `0` is the source
    /// and `vertex_count - 1` the sink; edges into the source, out of the
    /// sink, self-loops and duplicates are rejected.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if vertex_count < 2 {
            return Err(Error::InvalidParameter(format!(
                "a routing graph needs a source and a sink, got {vertex_count} vertices"
            )));
        }
        let sink = vertex_count - 1;
        let mut graph = RoutingGraph {
            vertex_count,
            edges: Vec::with_capacity(edges.len()),
            outgoing: alloc::vec![Vec::new(); vertex_count],
        };
        for &(from, to, weight) in edges {
            if from >= vertex_count || to >= vertex_count {
                return Err(Error::InvalidParameter(format!("edge ({from},{to}) is out of range")));
            }
            if to == 0 || from == sink || from == to {
                return Err(Error::InvalidParameter(format!("edge ({from},{to}) is not allowed")));
            }
            if !weight.is_finite() {
                return Err(Error::InvalidParameter(format!("edge ({from},{to}) has weight {weight}")));
            }
            if graph.edge(from, to).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate edge ({from},{to})")));
            }
            graph.push(Edge { from, to, weight });
        }
        Ok(graph)
    }

    fn push(&mut self, edge: Edge) {
        self.outgoing[edge.from].push(self.edges.len());
        self.edges.push(edge);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.vertex_count - 1
    }

    /// Number of intermediate (IRS) vertices.
    pub fn irs_count(&self) -> usize {
        self.vertex_count - 2
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn outgoing(&self, vertex: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.outgoing[vertex].iter().map(move |&e| &self.edges[e])
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<&Edge> {
        self.outgoing.get(from)?.iter().map(|&e| &self.edges[e]).find(|e| e.to == to)
    }

    /// Sum of edge weights along `vertices`, accumulated from the source
    /// side; `None` if a consecutive pair is not an edge.
    pub fn path_weight(&self, vertices: &[usize]) -> Option<f64> {
        vertices
            .windows(2)
            .try_fold(0.0, |acc, w| self.edge(w[0], w[1]).map(|e| acc + e.weight))
    }

    /// Same edges with every weight shifted by `delta`.
    ///
    /// Changing the element count from `M₁` to `M₂` is the shift
    /// `-ln(M₂/M₁)`.
    pub fn shifted(&self, delta: f64) -> Self {
        let mut graph = self.clone();
        for e in &mut graph.edges {
            e.weight += delta;
        }
        graph
    }

    /// Kahn's algorithm, releasing the smallest ready vertex first.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indegree = alloc::vec![0usize; self.vertex_count];
        for e in &self.edges {
            indegree[e.to] += 1;
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..self.vertex_count).filter(|&v| indegree[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.vertex_count);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for e in self.outgoing(v) {
                indegree[e.to] -= 1;
                if indegree[e.to] == 0 {
                    ready.push(Reverse(e.to));
                }
            }
        }
        if order.len() == self.vertex_count {
            Ok(order)
        } else {
            Err(Error::CycleDetected)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    pub fn min_edge_weight(&self) -> Result<f64> {
        self.edges
            .iter()
            .map(|e| e.weight)
            .min_by(f64::total_cmp)
            .ok_or(Error::EmptyGraph)
    }
}

/// LoS condition matrix of the scenario: the threshold rule evaluated on
/// pairwise distances, or the validated explicit matrix.
pub fn build_los_matrix(scenario: &Scenario) -> LosMatrix {
    match scenario.los_policy() {
        LosPolicy::Threshold { threshold_m } => {
            LosMatrix::from_threshold(scenario.node_count(), *threshold_m, |i, j| scenario.distance(i, j))
        }
        LosPolicy::Explicit(matrix) => matrix.clone(),
    }
}

/// Whether `route` satisfies the feasibility constraints under `los`.
pub fn validate_route(route: &Route, los: &LosMatrix) -> bool {
    route.check_feasible(los).is_ok()
}

/// Edge weight `ln(d / (M√β))`, computed as `ln d - ln M - ½ ln β`.
pub fn edge_weight(distance_m: f64, elements: usize, ref_path_gain: f64) -> f64 {
    libm::log(distance_m) - libm::log(elements as f64) - 0.5 * libm::log(ref_path_gain)
}

/// Routing graph with the outward rule enforced.
pub fn build_graph(scenario: &Scenario, los: &LosMatrix) -> RoutingGraph {
    build_graph_with(scenario, los, OutwardRule::Enforced)
}

pub fn build_graph_with(scenario: &Scenario, los: &LosMatrix, rule: OutwardRule) -> RoutingGraph {
    let n = scenario.node_count();
    let user = scenario.user_id();
    let p = scenario.params();
    let mut graph = RoutingGraph {
        vertex_count: n,
        edges: Vec::new(),
        outgoing: alloc::vec![Vec::new(); n],
    };
    let add = |graph: &mut RoutingGraph, from: usize, to: usize| {
        let weight = edge_weight(scenario.distance(from, to), p.elements(), p.ref_path_gain);
        graph.push(Edge { from, to, weight });
    };
    for j in 1..user {
        if los.get(0, j) {
            add(&mut graph, 0, j);
        }
    }
    for i in 1..user {
        for j in 1..user {
            let outward = scenario.distance(j, 0) > scenario.distance(i, 0);
            let allowed = match rule {
                OutwardRule::Enforced => outward,
                OutwardRule::Relaxed => i != j,
            };
            if allowed && los.get(i, j) {
                add(&mut graph, i, j);
            }
        }
        if los.get(i, user) {
            add(&mut graph, i, user);
        }
    }
    graph
}
