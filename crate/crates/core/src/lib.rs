//! Cooperative beam routing for multi-IRS aided links.
//!
//! A base station (vertex `0`) reaches a single-antenna user (vertex `J+1`)
//! through a chain of intelligent reflecting surfaces (vertices `1..=J`)
//! connected by line-of-sight hops. This crate provides
//!
//! - the scenario geometry and the rank-one LoS hop channels ([`geometry`],
//!   [`array`], [`channel`]),
//! - closed-form phase shifts, MRT beamforming and the end-to-end channel
//!   power of a route ([`beamforming`]),
//! - the routing graph whose shortest path is the power-optimal route
//!   ([`graph`]) and the exact solvers over it ([`paths`]),
//! - the baseline routing schemes used for comparison ([`benchmarks`]).
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod array;
pub mod beamforming;
pub mod benchmarks;
pub mod channel;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod paths;

pub use num_complex::Complex64;

pub use beamforming::{
    closed_form_power, evaluate_direct, mrt_vector, optimal_phases, BeamVector, PhaseConfig,
    RouteEvaluation,
};
pub use benchmarks::{compare, max_hop_route, min_pathloss_route, myopic_route, ComparisonRow, Scheme};
pub use channel::{hop_channel, ChannelMatrix};
pub use error::{Error, Result};
pub use geometry::{
    cascaded_path_gain, route_distance, AnglePair, LosMatrix, LosPolicy, Node, NodeKind, Point3,
    Route, Scenario, SystemParams,
};
pub use graph::{build_graph, build_los_matrix, validate_route, OutwardRule, RoutingGraph};
pub use paths::{
    ahsp_dp, brute_force_optimum, dag_shortest_path, dijkstra, optimal_route, shortest_path,
    solver_case, HopIndexedPaths, PathResult, SolverCase,
};
