//! Scenario files, reports and the `irs-route` command line.

pub mod commands;
pub mod dot;
pub mod error;
pub mod report;
pub mod scenario_file;

pub use error::CliError;
pub use scenario_file::{parse_scenario, serialize_scenario, LoadError, ParseError};

/// Approximate smart-factory layout: ten IRSs between a BS and a user in a
/// 30 m by 15 m hall, LoS within 12 m, 5 GHz carrier and two BS antennas.
pub const FACTORY_SCENARIO: &str = include_str!("../scenarios/factory.scn");
