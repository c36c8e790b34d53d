//! Trace file format: delimited text with header `t,sp,y,u,d,d_hat`, one row
//! per sample.
//!
//! Values are written with the shortest decimal representation that parses
//! back to the identical bits, so export → import is lossless and identical
//! traces produce byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use ipdt_core::SimTrace;

use crate::error::{CliError, CliResult};

/// Column header line.
pub const TRACE_HEADER: &str = "t,sp,y,u,d,d_hat";

/// Renders a trace to the delimited text format.
pub fn trace_to_string(trace: &SimTrace) -> String {
    let mut out = String::with_capacity(trace.len() * 48 + TRACE_HEADER.len() + 1);
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for k in 0..trace.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            trace.t()[k],
            trace.sp()[k],
            trace.y()[k],
            trace.u()[k],
            trace.d()[k],
            trace.d_hat()[k],
        );
    }
    out
}

/// Writes a trace file, creating parent directories as needed.
pub fn export_trace(trace: &SimTrace, path: &Path) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::io(parent.display().to_string(), e))?;
        }
    }
    std::fs::write(path, trace_to_string(trace))
        .map_err(|e| CliError::io(path.display().to_string(), e))
}

/// Parses a trace from the delimited text format.
pub fn trace_from_string(text: &str) -> CliResult<SimTrace> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == TRACE_HEADER => {}
        other => {
            return Err(CliError::input(format!(
                "trace file must start with header {TRACE_HEADER:?}, found {other:?}"
            )))
        }
    }
    let mut cols: [Vec<f64>; 6] = Default::default();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        for col in cols.iter_mut() {
            let field = fields.next().ok_or_else(|| {
                CliError::input(format!("trace row {} has fewer than 6 fields", lineno + 2))
            })?;
            let value: f64 = field.trim().parse().map_err(|_| {
                CliError::input(format!(
                    "trace row {}: {field:?} is not a number",
                    lineno + 2
                ))
            })?;
            col.push(value);
        }
        if fields.next().is_some() {
            return Err(CliError::input(format!(
                "trace row {} has more than 6 fields",
                lineno + 2
            )));
        }
    }
    let [t, sp, y, u, d, d_hat] = cols;
    if t.len() < 2 {
        return Err(CliError::input(
            "trace file needs at least two samples to define the step size",
        ));
    }
    let dt = t[1] - t[0];
    Ok(SimTrace::from_parts(dt, t, sp, y, u, d, d_hat)?)
}

/// Reads a trace file.
pub fn import_trace(path: &Path) -> CliResult<SimTrace> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    trace_from_string(&text)
}
