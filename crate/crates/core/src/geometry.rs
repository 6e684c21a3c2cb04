//! Scenario geometry: system parameters, nodes, LoS availability and routes.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Speed of light used to convert a carrier frequency to a wavelength, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Minimum separation between any two nodes; closer pairs are outside the far field.
pub const FAR_FIELD_MIN_DISTANCE_M: f64 = 1.0;

/// Radio and array parameters shared by every node of a scenario.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    pub wavelength_m: f64,
    /// Number of BS antennas `N` (uniform linear array).
    pub bs_antennas: usize,
    /// Vertical element count `M1` of every IRS.
    pub irs_rows: usize,
    /// Horizontal element count `M2` of every IRS.
    pub irs_cols: usize,
    pub antenna_spacing_m: f64,
    pub element_spacing_m: f64,
    /// Linear LoS path gain at the 1 m reference distance.
    pub ref_path_gain: f64,
}

impl SystemParams {
    /// Half-wavelength spacings and free-space reference gain `(λ/4π)²`.
    pub fn new(wavelength_m: f64, bs_antennas: usize, irs_rows: usize, irs_cols: usize) -> Result<Self> {
        let params = SystemParams {
            wavelength_m,
            bs_antennas,
            irs_rows,
            irs_cols,
            antenna_spacing_m: wavelength_m / 2.0,
            element_spacing_m: wavelength_m / 2.0,
            ref_path_gain: free_space_ref_gain(wavelength_m),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn from_carrier_hz(carrier_hz: f64, bs_antennas: usize, irs_rows: usize, irs_cols: usize) -> Result<Self> {
        if !(carrier_hz.is_finite() && carrier_hz > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "carrier frequency must be positive, got {carrier_hz}"
            )));
        }
        Self::new(SPEED_OF_LIGHT / carrier_hz, bs_antennas, irs_rows, irs_cols)
    }

    /// Total number of reflecting elements per IRS, `M = M1·M2`.
    pub fn elements(&self) -> usize {
        self.irs_rows * self.irs_cols
    }

    pub fn with_elements(mut self, irs_rows: usize, irs_cols: usize) -> Result<Self> {
        self.irs_rows = irs_rows;
        self.irs_cols = irs_cols;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(name: &str, value: f64) -> Result<()> {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive, got {value}")))
            }
        }
        positive("wavelength", self.wavelength_m)?;
        positive("antenna spacing", self.antenna_spacing_m)?;
        positive("element spacing", self.element_spacing_m)?;
        if self.bs_antennas == 0 {
            return Err(Error::InvalidParameter("BS antenna count must be at least 1".into()));
        }
        if self.irs_rows == 0 || self.irs_cols == 0 {
            return Err(Error::InvalidParameter(format!(
                "IRS dimensions must be at least 1x1, got {}x{}",
                self.irs_rows, self.irs_cols
            )));
        }
        if !(self.ref_path_gain > 0.0 && self.ref_path_gain < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "reference path gain must lie in (0, 1), got {}",
                self.ref_path_gain
            )));
        }
        Ok(())
    }
}

/// Free-space path gain at 1 m, `(λ/4π)²`.
pub fn free_space_ref_gain(wavelength_m: f64) -> f64 {
    let r = wavelength_m / (4.0 * PI);
    r * r
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
    }

    pub fn distance(self, other: Point3) -> f64 {
        (self - other).norm()
    }

    fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl core::ops::Sub for Point3 {
    type Output = Point3;

    fn sub(self, other: Point3) -> Point3 {
        Point3::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Bs,
    Irs,
    User,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub id: usize,
    pub kind: NodeKind,
    pub position: Point3,
}

impl Node {
    pub const fn new(id: usize, kind: NodeKind, position: Point3) -> Self {
        Node { id, kind, position }
    }
}

/// Azimuth in `(-π, π]` and elevation in `[0, π]`, measured from `+z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnglePair {
    pub azimuth_rad: f64,
    pub elevation_rad: f64,
}

impl AnglePair {
    pub const fn new(azimuth_rad: f64, elevation_rad: f64) -> Self {
        AnglePair { azimuth_rad, elevation_rad }
    }

    /// A scalar ULA angle of departure, carried with elevation fixed at π/2.
    pub const fn broadside_plane(aod_rad: f64) -> Self {
        AnglePair { azimuth_rad: aod_rad, elevation_rad: FRAC_PI_2 }
    }
}

/// Direction of `to` as seen from `from`, in `from`'s array frame.
///
/// Frames are axis-aligned with the global frame. The BS ULA lies along `x`
/// with boresight `+y`, so for a BS the result is the AoD from boresight
/// (`sin θ = Δx / d`) in the azimuth slot with elevation π/2. Every other
/// node reports spherical angles: azimuth `atan2(Δy, Δx)` and elevation
/// `acos(Δz / d)`.
pub fn angles_between(from: &Node, to: &Node) -> Result<AnglePair> {
    let v = to.position - from.position;
    let r = v.norm();
    if r.is_nan() || r <= 0.0 {
        return Err(Error::CoincidentNodes { from: from.id, to: to.id });
    }
    if from.kind == NodeKind::Bs {
        let s = (v.x / r).clamp(-1.0, 1.0);
        return Ok(AnglePair::broadside_plane(libm::asin(s)));
    }
    let mut azimuth = libm::atan2(v.y, v.x);
    if azimuth <= -PI {
        azimuth += 2.0 * PI;
    }
    let elevation = libm::acos((v.z / r).clamp(-1.0, 1.0));
    Ok(AnglePair::new(azimuth, elevation))
}

/// Symmetric binary LoS condition matrix with a zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LosMatrix {
    size: usize,
    entries: Vec<bool>,
}

impl LosMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidLosMatrix(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let matrix = LosMatrix { size, entries };
        for i in 0..size {
            if matrix.get(i, i) {
                return Err(Error::InvalidLosMatrix(format!("diagonal entry l_{{{i},{i}}} is nonzero")));
            }
            for j in (i + 1)..size {
                if matrix.get(i, j) != matrix.get(j, i) {
                    return Err(Error::InvalidLosMatrix(format!(
                        "l_{{{i},{j}}} != l_{{{j},{i}}}: matrix is not symmetric"
                    )));
                }
            }
        }
        Ok(matrix)
    }

    /// `l_{i,j} = 1` iff `i != j` and `distance(i, j) <= threshold_m`.
    pub fn from_threshold(size: usize, threshold_m: f64, distance: impl Fn(usize, usize) -> f64) -> Self {
        let mut entries = alloc::vec![false; size * size];
        for i in 0..size {
            for j in (i + 1)..size {
                let los = distance(i, j) <= threshold_m;
                entries[i * size + j] = los;
                entries[j * size + i] = los;
            }
        }
        LosMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> + '_ {
        self.entries.chunks(self.size.max(1)).take(self.size)
    }

    pub fn link_count(&self) -> usize {
        self.entries.iter().filter(|&&l| l).count() / 2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LosPolicy {
    /// LoS iff the pairwise distance does not exceed the threshold (inclusive).
    Threshold { threshold_m: f64 },
    Explicit(LosMatrix),
}

/// A validated scenario. Node `i` sits at index `i`: the BS is `0`, IRSs are
/// `1..=J` and the user is `J+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    params: SystemParams,
    nodes: Vec<Node>,
    los_policy: LosPolicy,
    los: LosMatrix,
    distances: Vec<f64>,
}

impl Scenario {
    pub fn new(params: SystemParams, mut nodes: Vec<Node>, los_policy: LosPolicy) -> Result<Self> {
        params.validate()?;
        nodes.sort_by_key(|n| n.id);
        let n = nodes.len();
        if n < 3 {
            return Err(Error::InvalidScenario(format!(
                "need a BS, at least one IRS and a user; got {n} nodes"
            )));
        }
        for (index, node) in nodes.iter().enumerate() {
            if node.id != index {
                return Err(Error::InvalidScenario(format!(
                    "node ids must be 0..={} without gaps or duplicates; found id {} at position {index}",
                    n - 1,
                    node.id
                )));
            }
            if !node.position.is_finite() {
                return Err(Error::InvalidScenario(format!("node {index} has a non-finite position")));
            }
        }
        let count = |kind| nodes.iter().filter(|n| n.kind == kind).count();
        let (bs, users) = (count(NodeKind::Bs), count(NodeKind::User));
        if bs != 1 || users != 1 {
            return Err(Error::InvalidScenario(format!(
                "exactly one BS and one user are required; got {bs} BS and {users} user nodes"
            )));
        }
        if nodes[0].kind != NodeKind::Bs {
            return Err(Error::InvalidScenario("node 0 must be the BS".into()));
        }
        if nodes[n - 1].kind != NodeKind::User {
            return Err(Error::InvalidScenario(format!("node {} must be the user", n - 1)));
        }

        let mut distances = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = nodes[i].position.distance(nodes[j].position);
                if d.is_nan() || d <= FAR_FIELD_MIN_DISTANCE_M {
                    return Err(Error::InvalidScenario(format!(
                        "d_{{{i},{j}}} = {d:.4} m violates far-field > {FAR_FIELD_MIN_DISTANCE_M} m"
                    )));
                }
                distances[i * n + j] = d;
                distances[j * n + i] = d;
            }
        }

        let los = match &los_policy {
            LosPolicy::Threshold { threshold_m } => {
                if !(threshold_m.is_finite() && *threshold_m > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "LoS threshold must be positive, got {threshold_m}"
                    )));
                }
                LosMatrix::from_threshold(n, *threshold_m, |i, j| distances[i * n + j])
            }
            LosPolicy::Explicit(matrix) => {
                if matrix.size() != n {
                    return Err(Error::InvalidLosMatrix(format!(
                        "matrix is {0}x{0} but the scenario has {n} nodes",
                        matrix.size()
                    )));
                }
                matrix.clone()
            }
        };

        Ok(Scenario { params, nodes, los_policy, los, distances })
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn los_policy(&self) -> &LosPolicy {
        &self.los_policy
    }

    pub fn los(&self) -> &LosMatrix {
        &self.los
    }

    /// Number of IRSs, `J`.
    pub fn irs_count(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn user_id(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.distances[i * self.nodes.len() + j]
    }

    pub fn with_params(&self, params: SystemParams) -> Result<Self> {
        params.validate()?;
        let mut scenario = self.clone();
        scenario.params = params;
        Ok(scenario)
    }

    /// Same geometry with `M1 x M2` elements per IRS.
    pub fn with_elements(&self, irs_rows: usize, irs_cols: usize) -> Result<Self> {
        self.with_params(self.params.with_elements(irs_rows, irs_cols)?)
    }

    pub fn with_los_policy(&self, los_policy: LosPolicy) -> Result<Self> {
        Scenario::new(self.params, self.nodes.clone(), los_policy)
    }
}

/// Ordered reflection path `(a_1, ..., a_K)` of IRS ids, `K >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Route(Vec<usize>);

impl Route {
    pub fn new(irs_ids: Vec<usize>) -> Result<Self> {
        if irs_ids.is_empty() {
            return Err(Error::InfeasibleRoute("a route must select at least one IRS".into()));
        }
        Ok(Route(irs_ids))
    }

    /// Strips the BS and user endpoints from a graph vertex sequence.
    pub fn from_vertex_sequence(vertices: &[usize]) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InfeasibleRoute(format!(
                "vertex sequence {vertices:?} has no intermediate IRS"
            )));
        }
        Route::new(vertices[1..vertices.len() - 1].to_vec())
    }

    pub fn irs_ids(&self) -> &[usize] {
        &self.0
    }

    /// Number of reflections `K`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    /// `(0, a_1, ..., a_K, user)`.
    pub fn vertex_sequence(&self, user_id: usize) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.0.len() + 2);
        v.push(0);
        v.extend_from_slice(&self.0);
        v.push(user_id);
        v
    }

    /// Consecutive `(from, to)` node pairs from the BS to the user.
    pub fn hops(&self, user_id: usize) -> impl Iterator<Item = (usize, usize)> {
        let seq = self.vertex_sequence(user_id);
        (0..seq.len() - 1).map(move |k| (seq[k], seq[k + 1]))
    }

    /// Checks the feasibility constraints against a LoS matrix, explaining the first violation.
    pub fn check_feasible(&self, los: &LosMatrix) -> Result<()> {
        let user = los.size().saturating_sub(1);
        if los.size() < 3 {
            return Err(Error::InfeasibleRoute("LoS matrix has no IRS".into()));
        }
        for (k, &a) in self.0.iter().enumerate() {
            if a == 0 || a >= user {
                return Err(Error::InfeasibleRoute(format!("entry {a} is not an IRS id in 1..={}", user - 1)));
            }
            if self.0[..k].contains(&a) {
                return Err(Error::InfeasibleRoute(format!("IRS {a} is selected more than once")));
            }
        }
        for (from, to) in self.hops(user) {
            if !los.get(from, to) {
                return Err(Error::InfeasibleRoute(format!("no LoS between nodes {from} and {to}")));
            }
        }
        Ok(())
    }
}

/// End-to-end transmission distance `D` of a feasible route, in meters.
pub fn route_distance(scenario: &Scenario, route: &Route) -> Result<f64> {
    route.check_feasible(scenario.los())?;
    Ok(route.hops(scenario.user_id()).map(|(i, j)| scenario.distance(i, j)).sum())
}

/// Natural log of the cascaded LoS path gain `κ`.
pub fn log_cascaded_path_gain(scenario: &Scenario, route: &Route) -> Result<f64> {
    route.check_feasible(scenario.los())?;
    let hops = (route.len() + 1) as f64;
    let log_distances: f64 = route
        .hops(scenario.user_id())
        .map(|(i, j)| libm::log(scenario.distance(i, j)))
        .sum();
    Ok(0.5 * hops * libm::log(scenario.params().ref_path_gain) - log_distances)
}

/// Cascaded LoS path gain `κ = (√β)^{K+1} / Π d` over the route's hops.
pub fn cascaded_path_gain(scenario: &Scenario, route: &Route) -> Result<f64> {
    log_cascaded_path_gain(scenario, route).map(libm::exp)
}
