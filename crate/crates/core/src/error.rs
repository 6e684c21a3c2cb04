use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A numeric argument or system parameter is out of its domain.
    InvalidParameter(String),
    /// The scenario violates one of its structural invariants.
    InvalidScenario(String),
    /// An explicit LoS matrix is not square, not symmetric or has a nonzero diagonal.
    InvalidLosMatrix(String),
    CoincidentNodes { from: usize, to: usize },
    NoLos { from: usize, to: usize },
    /// Hop channels exist only for BS->IRS, IRS->IRS and IRS->user.
    UnsupportedPair { from: usize, to: usize },
    InfeasibleRoute(String),
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    EmptyGraph,
    NegativeWeight { from: usize, to: usize, weight: f64 },
    CycleDetected,
    SizeLimit { irs_count: usize, cap: usize },
    /// Two solvers disagreed on the optimum.
    InternalInconsistency(String),
    NoRoute,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InvalidScenario(msg) => write!(f, "invalid scenario: {msg}"),
            Error::InvalidLosMatrix(msg) => write!(f, "invalid LoS matrix: {msg}"),
            Error::CoincidentNodes { from, to } => {
                write!(f, "nodes {from} and {to} are coincident")
            }
            Error::NoLos { from, to } => write!(f, "no line of sight between nodes {from} and {to}"),
            Error::UnsupportedPair { from, to } => {
                write!(f, "no hop channel is defined from node {from} to node {to}")
            }
            Error::InfeasibleRoute(msg) => write!(f, "infeasible route: {msg}"),
            Error::DimensionMismatch { what, expected, found } => {
                write!(f, "dimension mismatch in {what}: expected {expected}, found {found}")
            }
            Error::EmptyGraph => f.write_str("routing graph has no edges"),
            Error::NegativeWeight { from, to, weight } => {
                write!(f, "edge ({from},{to}) has negative weight {weight}")
            }
            Error::CycleDetected => f.write_str("routing graph contains a cycle"),
            Error::SizeLimit { irs_count, cap } => {
                write!(f, "{irs_count} IRSs exceeds the enumeration cap of {cap}")
            }
            Error::InternalInconsistency(msg) => write!(f, "internal inconsistency: {msg}"),
            Error::NoRoute => f.write_str("the user is unreachable: no feasible route exists"),
        }
    }
}

impl core::error::Error for Error {}
