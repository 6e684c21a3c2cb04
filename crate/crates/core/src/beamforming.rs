//! Closed-form active/passive beamforming for a fixed route and the
//! resulting end-to-end channel.
//!
//! For a feasible route `(a_1, ..., a_K)` the received coefficient is
//! `gᴴ Φ_K S_{K-1,K} Φ_{K-1} ··· S_{1,2} Φ_1 H w`. Aligning every IRS phase
//! with its incoming and outgoing steering vectors makes each per-IRS factor
//! equal to `M`, and MRT at the BS contributes `√N`, so the maximum power is
//! `M^{2K} N κ²` with `κ` the cascaded path gain.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{LN_10, PI};

use num_complex::Complex64;

use crate::channel::{hop_channel, hop_steering};
use crate::error::{Error, Result};
use crate::geometry::{log_cascaded_path_gain, route_distance, Route, Scenario};

/// Largest `M` for which matrix-product cross-checks are run; larger
/// arrays are verified through the closed form only.
pub const DIRECT_EVALUATION_MAX_ELEMENTS: usize = 256;

const TWO_PI: f64 = 2.0 * PI;

/// Per-IRS phase shifts along a route, radians in `[0, 2π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseConfig {
    phases: Vec<Vec<f64>>,
}

impl PhaseConfig {
    pub fn new(phases: Vec<Vec<f64>>) -> Self {
        PhaseConfig { phases: phases.into_iter().map(|v| v.into_iter().map(wrap_phase).collect()).collect() }
    }

    /// Phase vector of the `k`-th IRS on the route (zero-based).
    pub fn irs(&self, k: usize) -> &[f64] {
        &self.phases[k]
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.phases.iter().map(Vec::as_slice)
    }

    /// Diagonal of the reflection matrix `Φ` of the `k`-th IRS.
    pub fn reflection(&self, k: usize) -> Vec<Complex64> {
        self.phases[k].iter().map(|&t| Complex64::cis(t)).collect()
    }
}

/// Unit-norm BS transmit beamformer.
#[derive(Clone, Debug, PartialEq)]
pub struct BeamVector(Vec<Complex64>);

impl BeamVector {
    /// Normalizes `v` to unit Euclidean norm.
    pub fn normalized(v: Vec<Complex64>) -> Result<Self> {
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter("beam vector must have a finite nonzero norm".into()));
        }
        Ok(BeamVector(v.into_iter().map(|z| z / norm).collect()))
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RouteEvaluation {
    pub route: Route,
    pub channel_coefficient: Complex64,
    pub power: f64,
    pub power_db: f64,
}

impl RouteEvaluation {
    fn from_coefficient(route: Route, channel_coefficient: Complex64) -> Self {
        let power = channel_coefficient.norm_sqr();
        RouteEvaluation { route, channel_coefficient, power, power_db: 10.0 * libm::log10(power) }
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_phase(theta: f64) -> f64 {
    let mut r = libm::fmod(theta, TWO_PI);
    if r < 0.0 {
        r += TWO_PI;
    }
    if r >= TWO_PI {
        r = 0.0;
    }
    // folds -0.0 into +0.0
    r + 0.0
}

/// Phase shifts that co-phase an incoming steering vector with an outgoing
/// one: `θ_m = ∠out_m - ∠in_m`, wrapped to `[0, 2π)`.
pub fn phase_alignment(incoming: &[Complex64], outgoing: &[Complex64]) -> Result<Vec<f64>> {
    if incoming.len() != outgoing.len() {
        return Err(Error::DimensionMismatch {
            what: "phase alignment",
            expected: incoming.len(),
            found: outgoing.len(),
        });
    }
    Ok(incoming
        .iter()
        .zip(outgoing)
        .map(|(i, o)| wrap_phase(o.arg() - i.arg()))
        .collect())
}

/// Optimal IRS phase shifts for a route.
pub fn optimal_phases(scenario: &Scenario, route: &Route) -> Result<PhaseConfig> {
    route.check_feasible(scenario.los())?;
    let seq = route.vertex_sequence(scenario.user_id());
    let phases = seq
        .windows(3)
        .map(|w| {
            let incoming = hop_steering(scenario, w[0], w[1])?.arrival;
            let outgoing = hop_steering(scenario, w[1], w[2])?.departure;
            phase_alignment(&incoming, &outgoing)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseConfig { phases })
}

/// MRT towards the first IRS, including the `exp(j2πD/λ)` factor that
/// cancels the accumulated propagation phase.
pub fn mrt_vector(scenario: &Scenario, route: &Route) -> Result<BeamVector> {
    let distance = route_distance(scenario, route)?;
    let steering = hop_steering(scenario, 0, route.first())?.departure;
    let rotation = Complex64::cis(TWO_PI * distance / scenario.params().wavelength_m);
    BeamVector::normalized(steering.into_iter().map(|z| z * rotation).collect())
}

/// Evaluates the end-to-end coefficient by explicit matrix products.
pub fn evaluate_direct(scenario: &Scenario, route: &Route, phases: &PhaseConfig, w: &BeamVector) -> Result<RouteEvaluation> {
    let params = scenario.params();
    if phases.len() != route.len() {
        return Err(Error::DimensionMismatch { what: "phase configuration", expected: route.len(), found: phases.len() });
    }
    if let Some(bad) = phases.iter().find(|p| p.len() != params.elements()) {
        return Err(Error::DimensionMismatch { what: "IRS phase vector", expected: params.elements(), found: bad.len() });
    }
    if w.len() != params.bs_antennas {
        return Err(Error::DimensionMismatch { what: "beam vector", expected: params.bs_antennas, found: w.len() });
    }
    let seq = route.vertex_sequence(scenario.user_id());
    let mut signal = hop_channel(scenario, seq[0], seq[1])?.mul_vec(w.as_slice())?;
    for (k, hop) in seq[1..].windows(2).enumerate() {
        for (s, r) in signal.iter_mut().zip(phases.reflection(k)) {
            *s *= r;
        }
        signal = hop_channel(scenario, hop[0], hop[1])?.mul_vec(&signal)?;
    }
    match signal.as_slice() {
        [coefficient] => Ok(RouteEvaluation::from_coefficient(route.clone(), *coefficient)),
        other => Err(Error::InternalInconsistency(format!(
            "received signal has {} components, expected 1",
            other.len()
        ))),
    }
}

/// Natural log of the maximum channel power `M^{2K} N κ²` of a feasible route.
pub fn log_closed_form_power(scenario: &Scenario, route: &Route) -> Result<f64> {
    let p = scenario.params();
    let log_kappa = log_cascaded_path_gain(scenario, route)?;
    Ok(2.0 * route.len() as f64 * libm::log(p.elements() as f64)
        + libm::log(p.bs_antennas as f64)
        + 2.0 * log_kappa)
}

/// Maximum channel power of a route under optimal beamforming.
pub fn closed_form_power(scenario: &Scenario, route: &Route) -> Result<RouteEvaluation> {
    let log_power = log_closed_form_power(scenario, route)?;
    let power = libm::exp(log_power);
    Ok(RouteEvaluation {
        route: route.clone(),
        channel_coefficient: Complex64::new(libm::sqrt(power), 0.0),
        power,
        power_db: 10.0 * log_power / LN_10,
    })
}
