//! Line-oriented scenario format.
//!
//! ```text
//! irs-scenario v1
//! # comments start with '#'
//! carrier_hz 5e9
//! bs_antennas 2
//! irs_rows 20
//! irs_cols 20
//! los_threshold_m 12
//! node 0 bs 1 1 3
//! node 1 irs 6 5 2.5
//! node 2 user 29 1 1.5
//! ```
//!
//! Exactly one of `wavelength_m` and `carrier_hz` is required. The optional
//! keys `antenna_spacing_m`, `element_spacing_m` and `ref_path_gain` default
//! to `λ/2`, `λ/2` and `(λ/4π)²`. Instead of a threshold the LoS matrix may
//! be given as `los explicit` followed by one `los_row` of 0/1 per node.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use irs_route_core::geometry::SPEED_OF_LIGHT;
use irs_route_core::{LosMatrix, LosPolicy, Node, NodeKind, Point3, Scenario, SystemParams};

pub const HEADER: &str = "irs-scenario v1";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{}", match .line { Some(n) => format!("line {n}: {}", .message), None => .message.clone() })]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError { line: Some(line), message: message.into() }
    }

    fn global(message: impl Into<String>) -> Self {
        ParseError { line: None, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LoadError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid scenario: {0}")]
    Invalid(#[from] irs_route_core::Error),
}

const SCALAR_KEYS: [&str; 9] = [
    "wavelength_m",
    "carrier_hz",
    "bs_antennas",
    "irs_rows",
    "irs_cols",
    "antenna_spacing_m",
    "element_spacing_m",
    "ref_path_gain",
    "los_threshold_m",
];

fn value<T: FromStr>(line: usize, key: &str, token: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::at(line, format!("cannot parse '{token}' as the value of {key}")))
}

fn finite(line: usize, key: &str, token: &str) -> Result<f64, ParseError> {
    let v: f64 = value(line, key, token)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ParseError::at(line, format!("{key} must be finite, got {token}")))
    }
}

fn node_kind(line: usize, token: &str) -> Result<NodeKind, ParseError> {
    match token {
        "bs" => Ok(NodeKind::Bs),
        "irs" => Ok(NodeKind::Irs),
        "user" => Ok(NodeKind::User),
        other => Err(ParseError::at(line, format!("unknown node kind '{other}', expected bs, irs or user"))),
    }
}

fn kind_name(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::Bs => "bs",
        NodeKind::Irs => "irs",
        NodeKind::User => "user",
    }
}

pub fn parse_scenario(document: &str) -> Result<Scenario, LoadError> {
    let mut lines = document
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => return Err(ParseError::at(n, format!("expected header '{HEADER}', found '{other}'")).into()),
        None => return Err(ParseError::global("empty document").into()),
    }

    let mut scalars: HashMap<&str, (usize, &str)> = HashMap::new();
    let mut nodes = Vec::new();
    let mut explicit_at: Option<usize> = None;
    let mut los_rows: Vec<Vec<bool>> = Vec::new();

    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let key = tokens[0];
        match key {
            "node" => {
                if tokens.len() != 6 {
                    return Err(ParseError::at(n, "expected 'node <id> <kind> <x> <y> <z>'").into());
                }
                let id: usize = value(n, "node id", tokens[1])?;
                let kind = node_kind(n, tokens[2])?;
                let x = finite(n, "x", tokens[3])?;
                let y = finite(n, "y", tokens[4])?;
                let z = finite(n, "z", tokens[5])?;
                nodes.push(Node::new(id, kind, Point3::new(x, y, z)));
            }
            "los" => {
                if tokens.len() != 2 || tokens[1] != "explicit" {
                    return Err(ParseError::at(n, "expected 'los explicit'").into());
                }
                if explicit_at.replace(n).is_some() {
                    return Err(ParseError::at(n, "duplicate 'los explicit'").into());
                }
            }
            "los_row" => {
                if explicit_at.is_none() {
                    return Err(ParseError::at(n, "'los_row' before 'los explicit'").into());
                }
                let row = tokens[1..]
                    .iter()
                    .map(|t| match *t {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        other => Err(ParseError::at(n, format!("LoS entries must be 0 or 1, got '{other}'"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                los_rows.push(row);
            }
            k if SCALAR_KEYS.contains(&k) => {
                if tokens.len() != 2 {
                    return Err(ParseError::at(n, format!("expected '{k} <value>'")).into());
                }
                if let Some((first, _)) = scalars.insert(k, (n, tokens[1])) {
                    return Err(ParseError::at(n, format!("duplicate key {k} (first set on line {first})")).into());
                }
            }
            other => return Err(ParseError::at(n, format!("unknown key '{other}'")).into()),
        }
    }

    let get_f64 = |key: &str| -> Result<Option<f64>, ParseError> {
        scalars.get(key).map(|&(n, t)| finite(n, key, t)).transpose()
    };
    let get_usize = |key: &str| -> Result<usize, ParseError> {
        let &(n, t) = scalars
            .get(key)
            .ok_or_else(|| ParseError::global(format!("missing required key {key}")))?;
        value(n, key, t)
    };

    let wavelength_m = match (get_f64("wavelength_m")?, get_f64("carrier_hz")?) {
        (Some(l), None) => l,
        (None, Some(f)) => SPEED_OF_LIGHT / f,
        (Some(_), Some(_)) => {
            return Err(ParseError::global("give either wavelength_m or carrier_hz, not both").into())
        }
        (None, None) => return Err(ParseError::global("missing wavelength_m or carrier_hz").into()),
    };
    let mut params = SystemParams::new(
        wavelength_m,
        get_usize("bs_antennas")?,
        get_usize("irs_rows")?,
        get_usize("irs_cols")?,
    )?;
    if let Some(v) = get_f64("antenna_spacing_m")? {
        params.antenna_spacing_m = v;
    }
    if let Some(v) = get_f64("element_spacing_m")? {
        params.element_spacing_m = v;
    }
    if let Some(v) = get_f64("ref_path_gain")? {
        params.ref_path_gain = v;
    }
    params.validate()?;

    let policy = match (get_f64("los_threshold_m")?, explicit_at) {
        (Some(threshold_m), None) => LosPolicy::Threshold { threshold_m },
        (None, Some(_)) => LosPolicy::Explicit(LosMatrix::new(los_rows)?),
        (Some(_), Some(n)) => {
            return Err(ParseError::at(n, "los_threshold_m and 'los explicit' are mutually exclusive").into())
        }
        (None, None) => return Err(ParseError::global("missing LoS policy (los_threshold_m or 'los explicit')").into()),
    };
    if nodes.is_empty() {
        return Err(ParseError::global("no nodes").into());
    }
    Ok(Scenario::new(params, nodes, policy)?)
}

/// Writes every parameter explicitly, so parsing the output reproduces the
/// scenario exactly.
pub fn serialize_scenario(scenario: &Scenario) -> String {
    let p = scenario.params();
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "wavelength_m {}", p.wavelength_m);
    let _ = writeln!(out, "bs_antennas {}", p.bs_antennas);
    let _ = writeln!(out, "irs_rows {}", p.irs_rows);
    let _ = writeln!(out, "irs_cols {}", p.irs_cols);
    let _ = writeln!(out, "antenna_spacing_m {}", p.antenna_spacing_m);
    let _ = writeln!(out, "element_spacing_m {}", p.element_spacing_m);
    let _ = writeln!(out, "ref_path_gain {}", p.ref_path_gain);
    match scenario.los_policy() {
        LosPolicy::Threshold { threshold_m } => {
            let _ = writeln!(out, "los_threshold_m {threshold_m}");
        }
        LosPolicy::Explicit(matrix) => {
            let _ = writeln!(out, "los explicit");
            for row in matrix.rows() {
                let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
                let _ = writeln!(out, "los_row {}", cells.join(" "));
            }
        }
    }
    for node in scenario.nodes() {
        let q = node.position;
        let _ = writeln!(out, "node {} {} {} {} {}", node.id, kind_name(node.kind), q.x, q.y, q.z);
    }
    out
}
