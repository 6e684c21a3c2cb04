//! Baseline routing schemes and the per-`M` comparison against the
//! optimal route.

use alloc::vec::Vec;
use core::fmt;

use crate::beamforming::{closed_form_power, RouteEvaluation};
use crate::error::{Error, Result};
use crate::geometry::{Route, Scenario};
use crate::graph::{build_graph, build_los_matrix};
use crate::paths::{ahsp_dp, optimal_route, shortest_path};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Proposed,
    /// Most reflections, ignoring path loss.
    MaxHop,
    /// Least end-to-end path loss, ignoring the passive beamforming gain.
    MinPathloss,
    /// Greedy nearest-next-IRS walk.
    Myopic,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Proposed, Scheme::MaxHop, Scheme::MinPathloss, Scheme::Myopic];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Proposed => "proposed",
            Scheme::MaxHop => "max-hop",
            Scheme::MinPathloss => "min-pathloss",
            Scheme::Myopic => "myopic",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Route with the largest achievable reflection count, taking the
/// per-hop-count shortest path at that count.
pub fn max_hop_route(scenario: &Scenario) -> Result<Route> {
    let graph = build_graph(scenario, &build_los_matrix(scenario));
    let hops = ahsp_dp(&graph)?;
    let k = hops.max_hops().ok_or(Error::NoRoute)?;
    hops.get(k).ok_or(Error::NoRoute)?.route()
}

/// Route with the largest cascaded path gain: the optimal route for `M = 1`.
pub fn min_pathloss_route(scenario: &Scenario) -> Result<Route> {
    let unit = scenario.with_elements(1, 1)?;
    let graph = build_graph(&unit, &build_los_matrix(&unit));
    shortest_path(&graph)?.ok_or(Error::NoRoute)?.route()
}

/// Greedy walk from the BS. From an IRS with LoS to the user the walk ends
/// at the user; otherwise it moves to the nearest unselected IRS in LoS
/// that is farther from the BS (ties go to the smaller id). A dead end is
/// reported as [`Error::NoRoute`]; there is no backtracking.
pub fn myopic_route(scenario: &Scenario) -> Result<Route> {
    let los = build_los_matrix(scenario);
    let user = scenario.user_id();
    let mut selected: Vec<usize> = Vec::new();
    let mut current = 0;
    loop {
        if current != 0 && los.get(current, user) {
            return Route::new(selected);
        }
        let next = (1..user)
            .filter(|&j| los.get(current, j) && !selected.contains(&j))
            .filter(|&j| current == 0 || scenario.distance(j, 0) > scenario.distance(current, 0))
            .min_by(|&a, &b| scenario.distance(current, a).total_cmp(&scenario.distance(current, b)));
        match next {
            Some(j) => {
                selected.push(j);
                current = j;
            }
            None => return Err(Error::NoRoute),
        }
    }
}

/// One scheme's route and its closed-form power at a given `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeOutcome {
    pub route: Route,
    pub evaluation: RouteEvaluation,
}

impl SchemeOutcome {
    pub fn hop_count(&self) -> usize {
        self.route.len()
    }

    pub fn power(&self) -> f64 {
        self.evaluation.power
    }

    pub fn power_db(&self) -> f64 {
        self.evaluation.power_db
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub irs_rows: usize,
    pub irs_cols: usize,
    outcomes: [Option<SchemeOutcome>; 4],
}

impl ComparisonRow {
    /// `M = M1·M2`.
    pub fn m_value(&self) -> usize {
        self.irs_rows * self.irs_cols
    }

    /// `None` when the scheme found no route.
    pub fn get(&self, scheme: Scheme) -> Option<&SchemeOutcome> {
        self.outcomes[scheme.index()].as_ref()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Scheme, Option<&SchemeOutcome>)> {
        Scheme::ALL.into_iter().map(move |s| (s, self.get(s)))
    }
}

fn scheme_route(scenario: &Scenario, scheme: Scheme) -> Result<Option<Route>> {
    let route = match scheme {
        Scheme::Proposed => optimal_route(scenario).map(|(route, _)| route),
        Scheme::MaxHop => max_hop_route(scenario),
        Scheme::MinPathloss => min_pathloss_route(scenario),
        Scheme::Myopic => myopic_route(scenario),
    };
    match route {
        Ok(route) => Ok(Some(route)),
        Err(Error::NoRoute) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs every scheme for each `(M1, M2)` and scores the routes with the
/// closed-form power at that size. Rows follow the order of `sizes`.
pub fn compare(scenario: &Scenario, sizes: &[(usize, usize)]) -> Result<Vec<ComparisonRow>> {
    if sizes.is_empty() {
        return Err(Error::InvalidParameter("at least one (M1, M2) pair is required".into()));
    }
    sizes
        .iter()
        .map(|&(rows, cols)| {
            let sized = scenario.with_elements(rows, cols)?;
            let mut outcomes: [Option<SchemeOutcome>; 4] = Default::default();
            for scheme in Scheme::ALL {
                if let Some(route) = scheme_route(&sized, scheme)? {
                    let evaluation = closed_form_power(&sized, &route)?;
                    outcomes[scheme.index()] = Some(SchemeOutcome { route, evaluation });
                }
            }
            Ok(ComparisonRow { irs_rows: rows, irs_cols: cols, outcomes })
        })
        .collect()
}
