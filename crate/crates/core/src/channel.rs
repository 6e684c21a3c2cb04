//! Rank-one LoS hop channels between consecutive nodes of a route.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::array::{ula_response, ura_response};
use crate::error::{Error, Result};
use crate::geometry::{angles_between, NodeKind, Scenario};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ChannelMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { what: "matrix data", expected: rows * cols, found: data.len() });
        }
        Ok(ChannelMatrix { rows, cols, data })
    }

    /// `scale · u vᴴ`.
    pub fn outer(scale: Complex64, u: &[Complex64], v: &[Complex64]) -> Self {
        let data = u
            .iter()
            .flat_map(|&ui| v.iter().map(move |&vj| scale * ui * vj.conj()))
            .collect();
        ChannelMatrix { rows: u.len(), cols: v.len(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { what: "matrix-vector product", expected: self.cols, found: x.len() });
        }
        Ok(self
            .data
            .chunks(self.cols)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// Steering vectors of one LoS hop: `arrival` at the receiving node and
/// `departure` at the transmitting node.
#[derive(Clone, Debug)]
pub struct HopSteering {
    pub departure: Vec<Complex64>,
    /// Empty for a hop into the single-antenna user.
    pub arrival: Vec<Complex64>,
}

fn irs_response(scenario: &Scenario, at: usize, towards: usize) -> Result<Vec<Complex64>> {
    let p = scenario.params();
    let angle = angles_between(scenario.node(at), scenario.node(towards))?;
    ura_response(angle, p.irs_rows, p.irs_cols, p.element_spacing_m, p.wavelength_m)
}

fn check_hop(scenario: &Scenario, from: usize, to: usize) -> Result<()> {
    let n = scenario.node_count();
    if from >= n || to >= n {
        return Err(Error::UnsupportedPair { from, to });
    }
    let supported = match (scenario.node(from).kind, scenario.node(to).kind) {
        (NodeKind::Bs, NodeKind::Irs) | (NodeKind::Irs, NodeKind::User) => true,
        (NodeKind::Irs, NodeKind::Irs) => from != to,
        _ => false,
    };
    if !supported {
        return Err(Error::UnsupportedPair { from, to });
    }
    if !scenario.los().get(from, to) {
        return Err(Error::NoLos { from, to });
    }
    Ok(())
}

/// Array responses that make up the hop `from -> to`.
pub fn hop_steering(scenario: &Scenario, from: usize, to: usize) -> Result<HopSteering> {
    check_hop(scenario, from, to)?;
    let departure = if scenario.node(from).kind == NodeKind::Bs {
        let p = scenario.params();
        let angle = angles_between(scenario.node(from), scenario.node(to))?;
        ula_response(angle, p.bs_antennas, p.antenna_spacing_m, p.wavelength_m)?
    } else {
        irs_response(scenario, from, to)?
    };
    let arrival = if scenario.node(to).kind == NodeKind::User {
        Vec::new()
    } else {
        irs_response(scenario, to, from)?
    };
    Ok(HopSteering { departure, arrival })
}

/// Complex LoS gain `(√β/d)·exp(-j2πd/λ)` of a hop at distance `d`.
pub fn hop_gain(scenario: &Scenario, from: usize, to: usize) -> Complex64 {
    let p = scenario.params();
    let d = scenario.distance(from, to);
    Complex64::from_polar(libm::sqrt(p.ref_path_gain) / d, -2.0 * PI * d / p.wavelength_m)
}

/// LoS channel of one hop.
///
/// BS->IRS gives the `M x N` matrix `H`, IRS->IRS the `M x M` matrix `S` and
/// IRS->user the `1 x M` row `gᴴ`.
pub fn hop_channel(scenario: &Scenario, from: usize, to: usize) -> Result<ChannelMatrix> {
    let steering = hop_steering(scenario, from, to)?;
    let gain = hop_gain(scenario, from, to);
    let one = [Complex64::new(1.0, 0.0)];
    let arrival: &[Complex64] = if steering.arrival.is_empty() { &one } else { &steering.arrival };
    Ok(ChannelMatrix::outer(gain, arrival, &steering.departure))
}
