//! CSV sweep report: one row per (M, scheme).

use irs_route_core::{ComparisonRow, Route};

pub const COLUMNS: [&str; 6] = ["m", "scheme", "route", "hops", "power_linear", "power_db"];

/// Vertex sequence `0-a-b-…-user` as written in the `route` column.
pub fn route_label(route: &Route, user_id: usize) -> String {
    let parts: Vec<String> = route.vertex_sequence(user_id).iter().map(|v| v.to_string()).collect();
    parts.join("-")
}

/// Rows are ordered by ascending `M` (then `M1`), and within one `M` by the
/// fixed scheme order. Absent routes leave the last four cells empty.
pub fn sweep_csv(rows: &[ComparisonRow], user_id: usize) -> csv::Result<String> {
    let mut sorted: Vec<&ComparisonRow> = rows.iter().collect();
    sorted.sort_by_key(|r| (r.m_value(), r.irs_rows, r.irs_cols));
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(COLUMNS)?;
    for row in sorted {
        let m = row.m_value().to_string();
        for (scheme, outcome) in row.iter() {
            match outcome {
                Some(o) => writer.write_record([
                    m.as_str(),
                    scheme.name(),
                    &route_label(&o.route, user_id),
                    &o.hop_count().to_string(),
                    &format!("{:e}", o.power()),
                    &o.power_db().to_string(),
                ])?,
                None => writer.write_record([m.as_str(), scheme.name(), "", "", "", ""])?,
            }
        }
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
