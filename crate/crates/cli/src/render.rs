//! Plain-text trace table, one row per iteration.

use omega_core::omega::{OmegaTrace, StopReason};

fn tuple(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn trace_table(trace: &OmegaTrace<i64>) -> String {
    let rows: Vec<[String; 5]> = trace
        .iterations
        .iter()
        .map(|it| {
            [
                it.it.to_string(),
                tuple(&it.ps),
                tuple(&it.ek),
                it.lb.to_string(),
                it.ub.to_string(),
            ]
        })
        .collect();
    let header = ["It", "PS x", "EK x^", "LB", "UB"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 5]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join(" | ").trim_end().to_string()
    };

    let mut out = format!(
        "omega(S, {}) for S = <{}>: lb0 = {}, M = {}\n",
        trace.element,
        trace.generators.iter().map(i64::to_string).collect::<Vec<_>>().join(", "),
        trace.lb0,
        tuple(&trace.upper)
    );
    out.push_str(&line(header));
    out.push('\n');
    for row in &rows {
        out.push_str(&line([&row[0], &row[1], &row[2], &row[3], &row[4]]));
        out.push('\n');
    }
    let stop = match trace.stop.reason {
        StopReason::SingleGenerator => "single generator".to_string(),
        StopReason::MasterInfeasible => "master problem infeasible".to_string(),
        StopReason::UpperAtMostLower => format!(
            "master value {} <= LB",
            trace.stop.ps_value.map(|v| v.to_string()).unwrap_or_default()
        ),
        StopReason::LowerReachedUpper => "LB reached UB".to_string(),
    };
    out.push_str(&format!(
        "stop: {stop}; omega = {}; ps_solved = {}, ek_solved = {}\n",
        trace.omega, trace.counts.ps_solved, trace.counts.ek_solved
    ));
    out
}
