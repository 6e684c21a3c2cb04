//! Subcommand bodies. Each returns the text it would print so that the
//! binary only decides where the text goes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use irs_route_core::beamforming::DIRECT_EVALUATION_MAX_ELEMENTS;
use irs_route_core::{
    build_graph, build_los_matrix, compare, evaluate_direct, mrt_vector, optimal_phases, optimal_route,
    route_distance, LosPolicy, Route, Scenario,
};

use crate::error::CliError;
use crate::scenario_file::parse_scenario;
use crate::{dot, report};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    pub irs_rows: Option<usize>,
    pub irs_cols: Option<usize>,
    pub threshold_m: Option<f64>,
}

/// Parses `"20x30"` into `(20, 30)`.
pub fn parse_size(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected M1xM2, got '{text}'"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad dimension '{t}' in '{text}'"));
    let (m1, m2) = (parse(a)?, parse(b)?);
    if m1 == 0 || m2 == 0 {
        return Err(format!("dimensions must be positive, got '{text}'"));
    }
    Ok((m1, m2))
}

pub fn load_scenario(path: &Path, overrides: &Overrides) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let mut scenario = parse_scenario(&text).map_err(|e| CliError::load(path.into(), e))?;
    let invalid = |source| CliError::Invalid { path: path.into(), source };
    if overrides.irs_rows.is_some() || overrides.irs_cols.is_some() {
        let p = scenario.params();
        let rows = overrides.irs_rows.unwrap_or(p.irs_rows);
        let cols = overrides.irs_cols.unwrap_or(p.irs_cols);
        scenario = scenario.with_elements(rows, cols).map_err(invalid)?;
    }
    if let Some(threshold_m) = overrides.threshold_m {
        scenario = scenario.with_los_policy(LosPolicy::Threshold { threshold_m }).map_err(invalid)?;
    }
    Ok(scenario)
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn arrow_route(route: &Route, user_id: usize) -> String {
    let parts: Vec<String> = route.vertex_sequence(user_id).iter().map(|v| v.to_string()).collect();
    parts.join(" -> ")
}

pub fn run_solve(scenario: &Scenario, phases: bool, verify: bool) -> Result<String, CliError> {
    let (route, eval) = optimal_route(scenario)?;
    let p = scenario.params();
    let mut out = String::new();
    let _ = writeln!(out, "elements: {} ({}x{})", p.elements(), p.irs_rows, p.irs_cols);
    let _ = writeln!(out, "route: {}", arrow_route(&route, scenario.user_id()));
    let _ = writeln!(out, "reflections: {}", route.len());
    let _ = writeln!(out, "power_linear: {:e}", eval.power);
    let _ = writeln!(out, "power_db: {:.4}", eval.power_db);
    let _ = writeln!(out, "distance_m: {:.4}", route_distance(scenario, &route)?);
    if phases {
        let config = optimal_phases(scenario, &route)?;
        for (irs, theta) in route.irs_ids().iter().zip(config.iter()) {
            let values: Vec<String> = theta.iter().map(|t| format!("{t:.6}")).collect();
            let _ = writeln!(out, "phases irs {irs}: {}", values.join(" "));
        }
    }
    if verify {
        if p.elements() > DIRECT_EVALUATION_MAX_ELEMENTS {
            let _ = writeln!(
                out,
                "verify: skipped, M = {} exceeds {DIRECT_EVALUATION_MAX_ELEMENTS}",
                p.elements()
            );
        } else {
            let config = optimal_phases(scenario, &route)?;
            let w = mrt_vector(scenario, &route)?;
            let direct = evaluate_direct(scenario, &route, &config, &w)?;
            let _ = writeln!(out, "verify: direct power {:e}, relative error {:.3e}", direct.power, (direct.power - eval.power).abs() / eval.power);
        }
    }
    Ok(out)
}

fn sizes_or_default(scenario: &Scenario, sizes: &[(usize, usize)]) -> Vec<(usize, usize)> {
    if sizes.is_empty() {
        vec![(scenario.params().irs_rows, scenario.params().irs_cols)]
    } else {
        sizes.to_vec()
    }
}

pub fn run_sweep(scenario: &Scenario, sizes: &[(usize, usize)]) -> Result<String, CliError> {
    let rows = compare(scenario, sizes)?;
    Ok(report::sweep_csv(&rows, scenario.user_id())?)
}

pub fn run_export_graph(scenario: &Scenario) -> String {
    dot::to_dot(&build_graph(scenario, &build_los_matrix(scenario)))
}

pub fn run_benchmarks(scenario: &Scenario, sizes: &[(usize, usize)]) -> Result<String, CliError> {
    let mut rows = compare(scenario, &sizes_or_default(scenario, sizes))?;
    rows.sort_by_key(|r| (r.m_value(), r.irs_rows, r.irs_cols));
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "M = {} ({}x{})", row.m_value(), row.irs_rows, row.irs_cols);
        let _ = writeln!(out, "{:<14}{:>5}{:>12}  route", "scheme", "hops", "power_db");
        for (scheme, outcome) in row.iter() {
            match outcome {
                Some(o) => {
                    let _ = writeln!(
                        out,
                        "{:<14}{:>5}{:>12.4}  {}",
                        scheme.name(),
                        o.hop_count(),
                        o.power_db(),
                        report::route_label(&o.route, scenario.user_id())
                    );
                }
                None => {
                    let _ = writeln!(out, "{:<14}{:>5}{:>12}  no route", scheme.name(), "-", "-");
                }
            }
        }
    }
    Ok(out)
}
