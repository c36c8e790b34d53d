//! Report rendering: JSON (stable key order), CSV (one row per entity,
//! full float precision), and human-readable aligned tables. All three are
//! deterministic: identical reports render to identical bytes.

use clap::ValueEnum;
use ipdt_core::{IpdtModel, TuneReport};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::run::{ComparisonReport, MarginsRow, MethodRow, SweepReport};

/// Output encoding selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// Human-readable aligned table.
    #[default]
    Table,
    /// Pretty-printed JSON with declaration-order keys.
    Json,
    /// Comma-separated values with a header row.
    Csv,
}

/// Tuning result snapshot for rendering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TuneOutput {
    /// Plant integrator gain.
    pub kp: f64,
    /// Plant dead time, seconds.
    pub d: f64,
    /// Specified gain margin (linear ratio).
    pub am: f64,
    /// Specified phase margin, radians.
    pub phi_m: f64,
    /// Specified settling time, seconds.
    pub ts: f64,
    /// Designed proportional gain.
    pub kc: f64,
    /// Designed derivative time, seconds.
    pub td: f64,
    /// Designed phase-crossover frequency, rad/s.
    pub w_pc: f64,
    /// Designed gain-crossover frequency, rad/s.
    pub w_gc: f64,
    /// True when the derivative-time tangent came out negative and its
    /// absolute value was used (the by-construction loop identities then
    /// hold only approximately).
    pub td_sign_flipped: bool,
}

impl TuneOutput {
    /// Builds the snapshot from a model and its tuning report.
    pub fn new(model: IpdtModel, report: &TuneReport) -> Self {
        Self {
            kp: model.kp(),
            d: model.dead_time(),
            am: report.spec.am(),
            phi_m: report.spec.phi_m(),
            ts: report.spec.ts(),
            kc: report.params.kc(),
            td: report.params.td().unwrap_or(0.0),
            w_pc: report.crossovers.w_pc(),
            w_gc: report.crossovers.w_gc(),
            td_sign_flipped: report.td_sign_flipped,
        }
    }
}

/// Measured-margins snapshot for rendering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginsOutput {
    /// Plant integrator gain.
    pub kp: f64,
    /// Plant dead time, seconds.
    pub d: f64,
    /// Controller proportional gain.
    pub kc: f64,
    /// Controller integral time, when present.
    pub ti: Option<f64>,
    /// Controller derivative time, when present.
    pub td: Option<f64>,
    /// Measured margins.
    pub margins: MarginsRow,
}

/// Formats one float for CSV/table cells: full shortest-round-trip
/// precision, so output is lossless and deterministic.
fn num(v: f64) -> String {
    format!("{v}")
}

/// Formats an optional float; absent values render as the given filler.
fn opt(v: Option<f64>, filler: &str) -> String {
    v.map(num).unwrap_or_else(|| filler.to_owned())
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::input(format!("report serialization: {e}")))?;
    Ok(format!("{text}\n"))
}

/// Renders an aligned left-justified table with a two-space gutter.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        debug_assert_eq!(row.len(), cols);
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            if i + 1 < cols {
                for _ in cell.len()..widths[i] {
                    s.push(' ');
                }
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn csv_line(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}

const METHOD_HEADERS: [&str; 17] = [
    "method",
    "kc",
    "ti",
    "td",
    "dob",
    "ise",
    "iae",
    "itae",
    "energy",
    "rise_time",
    "settling_time",
    "overshoot",
    "gain_margin",
    "phase_crossover_freq",
    "phase_margin",
    "gain_crossover_freq",
    "trace_file",
];

fn method_cells(row: &MethodRow, filler: &str, bool_words: (&str, &str)) -> Vec<String> {
    let step = row.step.as_ref();
    vec![
        row.method.clone(),
        num(row.kc),
        opt(row.ti, filler),
        opt(row.td, filler),
        (if row.dob { bool_words.0 } else { bool_words.1 }).to_owned(),
        num(row.indices.ise),
        num(row.indices.iae),
        num(row.indices.itae),
        num(row.indices.energy),
        opt(step.and_then(|s| s.rise_time), filler),
        opt(step.and_then(|s| s.settling_time), filler),
        opt(step.map(|s| s.overshoot), filler),
        opt(row.margins.gain_margin, filler),
        opt(row.margins.phase_crossover_freq, filler),
        opt(row.margins.phase_margin, filler),
        opt(row.margins.gain_crossover_freq, filler),
        row.trace_file.clone().unwrap_or_else(|| filler.to_owned()),
    ]
}

/// Renders a comparison report in the requested format.
pub fn render_comparison(report: &ComparisonReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let seg_count = report
                .rows
                .first()
                .and_then(|r| r.segments.as_ref())
                .map_or(0, Vec::len);
            let mut headers: Vec<String> = METHOD_HEADERS.iter().map(|s| (*s).to_owned()).collect();
            for i in 1..=seg_count {
                headers.push(format!("seg{i}_ise"));
                headers.push(format!("seg{i}_iae"));
            }
            let mut out = csv_line(&headers);
            for row in &report.rows {
                let mut cells = method_cells(row, "", ("true", "false"));
                if let Some(segs) = &row.segments {
                    for seg in segs {
                        cells.push(num(seg.ise));
                        cells.push(num(seg.iae));
                    }
                }
                out.push_str(&csv_line(&cells));
            }
            Ok(out)
        }
        Format::Table => {
            let mut out = format!(
                "scenario: {}  (horizon {} s, dt {} s)\n\n",
                report.scenario, report.horizon, report.dt
            );
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| method_cells(r, "-", ("on", "off")))
                .collect();
            out.push_str(&table(&METHOD_HEADERS, &rows));
            if report.rows.iter().any(|r| r.segments.is_some()) {
                out.push_str("\nsegment indices:\n");
                let mut seg_rows = Vec::new();
                for row in &report.rows {
                    for seg in row.segments.as_deref().unwrap_or(&[]) {
                        seg_rows.push(vec![
                            row.method.clone(),
                            format!("[{},{})", num(seg.start), num(seg.end)),
                            num(seg.sp),
                            num(seg.ise),
                            num(seg.iae),
                        ]);
                    }
                }
                out.push_str(&table(&["method", "window", "sp", "ise", "iae"], &seg_rows));
            }
            Ok(out)
        }
    }
}

const SWEEP_HEADERS: [&str; 9] = [
    "value",
    "kc",
    "td",
    "rise_time",
    "settling_time",
    "overshoot",
    "peak_to_peak",
    "cycles",
    "trace_file",
];

fn sweep_cells(row: &crate::run::SweepRow, filler: &str) -> Vec<String> {
    vec![
        num(row.value),
        num(row.kc),
        num(row.td),
        opt(row.rise_time, filler),
        opt(row.settling_time, filler),
        num(row.overshoot),
        num(row.peak_to_peak),
        row.cycles.to_string(),
        row.trace_file.clone().unwrap_or_else(|| filler.to_owned()),
    ]
}

/// Renders a sweep report in the requested format.
pub fn render_sweep(report: &SweepReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let headers: Vec<String> = SWEEP_HEADERS.iter().map(|s| (*s).to_owned()).collect();
            let mut out = csv_line(&headers);
            for row in &report.rows {
                out.push_str(&csv_line(&sweep_cells(row, "")));
            }
            Ok(out)
        }
        Format::Table => {
            let mut out = format!("sweep: {} over {}\n\n", report.scenario, report.parameter);
            let rows: Vec<Vec<String>> = report.rows.iter().map(|r| sweep_cells(r, "-")).collect();
            out.push_str(&table(&SWEEP_HEADERS, &rows));
            if let Some(summary) = &report.summary {
                out.push_str(&format!(
                    "\nsettling time strictly increasing: {}\n",
                    match summary.settling_strictly_increasing {
                        Some(true) => "yes",
                        Some(false) => "no",
                        None => "unknown (some runs never settled)",
                    }
                ));
                out.push_str(&format!(
                    "peak-to-peak strictly decreasing: {}\n",
                    if summary.peak_to_peak_strictly_decreasing {
                        "yes"
                    } else {
                        "no"
                    }
                ));
            }
            Ok(out)
        }
    }
}

/// Renders a tuning result in the requested format.
pub fn render_tune(output: &TuneOutput, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(output),
        Format::Csv => {
            let headers = [
                "kp",
                "d",
                "am",
                "phi_m",
                "ts",
                "kc",
                "td",
                "w_pc",
                "w_gc",
                "td_sign_flipped",
            ];
            let cells = vec![
                num(output.kp),
                num(output.d),
                num(output.am),
                num(output.phi_m),
                num(output.ts),
                num(output.kc),
                num(output.td),
                num(output.w_pc),
                num(output.w_gc),
                output.td_sign_flipped.to_string(),
            ];
            Ok(format!(
                "{}{}",
                csv_line(&headers.iter().map(|s| (*s).to_owned()).collect::<Vec<_>>()),
                csv_line(&cells)
            ))
        }
        Format::Table => {
            let rows = vec![
                vec!["kc".to_owned(), format!("{:.6}", output.kc)],
                vec!["td".to_owned(), format!("{:.6}", output.td)],
                vec!["w_pc".to_owned(), format!("{:.6}", output.w_pc)],
                vec!["w_gc".to_owned(), format!("{:.6}", output.w_gc)],
                vec![
                    "td_sign_flipped".to_owned(),
                    output.td_sign_flipped.to_string(),
                ],
            ];
            let mut out = format!(
                "plant: kp = {}, dead time = {} s\nspec:  Am = {}, phi_m = {} rad, Ts = {} s\n\n",
                num(output.kp),
                num(output.d),
                num(output.am),
                num(output.phi_m),
                num(output.ts)
            );
            out.push_str(&table(&["parameter", "value"], &rows));
            Ok(out)
        }
    }
}

/// Renders a measured-margins result in the requested format.
pub fn render_margins(output: &MarginsOutput, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(output),
        Format::Csv => {
            let headers = [
                "kp",
                "d",
                "kc",
                "ti",
                "td",
                "gain_margin",
                "phase_crossover_freq",
                "phase_margin",
                "gain_crossover_freq",
                "gain_crossover_count",
            ];
            let cells = vec![
                num(output.kp),
                num(output.d),
                num(output.kc),
                opt(output.ti, ""),
                opt(output.td, ""),
                opt(output.margins.gain_margin, ""),
                opt(output.margins.phase_crossover_freq, ""),
                opt(output.margins.phase_margin, ""),
                opt(output.margins.gain_crossover_freq, ""),
                output.margins.gain_crossover_count.to_string(),
            ];
            Ok(format!(
                "{}{}",
                csv_line(&headers.iter().map(|s| (*s).to_owned()).collect::<Vec<_>>()),
                csv_line(&cells)
            ))
        }
        Format::Table => {
            let m = &output.margins;
            let rows = vec![
                vec!["gain_margin".to_owned(), opt(m.gain_margin, "-")],
                vec![
                    "phase_crossover_freq".to_owned(),
                    opt(m.phase_crossover_freq, "-"),
                ],
                vec!["phase_margin".to_owned(), opt(m.phase_margin, "-")],
                vec![
                    "gain_crossover_freq".to_owned(),
                    opt(m.gain_crossover_freq, "-"),
                ],
                vec![
                    "gain_crossover_count".to_owned(),
                    m.gain_crossover_count.to_string(),
                ],
            ];
            let mut out = format!(
                "plant: kp = {}, dead time = {} s\nloop:  kc = {}, ti = {}, td = {}\n\n",
                num(output.kp),
                num(output.d),
                num(output.kc),
                opt(output.ti, "-"),
                opt(output.td, "-")
            );
            out.push_str(&table(&["measurement", "value"], &rows));
            Ok(out)
        }
    }
}

/// Generates a gnuplot script plotting the output channel of every trace in
/// a sweep report, using bare file names so the script works from inside
/// the directory holding the traces.
pub fn sweep_plot_script(report: &SweepReport) -> CliResult<String> {
    let mut plots = Vec::with_capacity(report.rows.len());
    for row in &report.rows {
        let file = row.trace_file.as_deref().ok_or_else(|| {
            CliError::input(
                "plot script needs written traces; run the sweep with an output directory",
            )
        })?;
        let name = std::path::Path::new(file)
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.to_owned());
        plots.push(format!(
            "  {:?} using 1:3 with lines title {:?}",
            name,
            format!("{} = {}", report.parameter, num(row.value))
        ));
    }
    Ok(format!(
        "# Closed-loop output for each swept {} value.\n\
         set datafile separator \",\"\n\
         set xlabel \"t [s]\"\n\
         set ylabel \"y\"\n\
         set key bottom right\n\
         plot \\\n{}\n",
        report.parameter,
        plots.join(", \\\n")
    ))
}
