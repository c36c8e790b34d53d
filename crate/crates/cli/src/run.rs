//! Comparison and sweep harness: resolves controllers, runs simulations
//! (concurrently across methods/values), reduces traces to metrics, and
//! assembles deterministic, serializable reports.

use std::path::{Path, PathBuf};

use ipdt_core::{
    control_energy, integral_indices, measure_margins_default, servo_segment_indices,
    simulate_with, step_specs, ControllerParams, MarginReport, SegmentIndices, SimOptions,
    SimTrace, StepSpecs, TuningMethod,
};
use serde::Serialize;

use crate::error::CliResult;
use crate::scenario::{ScenarioSpec, SweepParameter};
use crate::trace_io::export_trace;

/// Step-response specifications of one run (all-`None` step field means the
/// scenario has no single setpoint step to measure).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRow {
    /// 10–90% rise time, seconds.
    pub rise_time: Option<f64>,
    /// 2%-band settling time from the step, seconds.
    pub settling_time: Option<f64>,
    /// Peak excursion beyond the final value, percent.
    pub overshoot: f64,
}

impl From<StepSpecs> for StepRow {
    fn from(s: StepSpecs) -> Self {
        Self {
            rise_time: s.rise_time,
            settling_time: s.settling_time,
            overshoot: s.overshoot,
        }
    }
}

/// Per-segment error indices of a staircase run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentRow {
    /// Segment start, seconds.
    pub start: f64,
    /// Segment end, seconds.
    pub end: f64,
    /// Setpoint value over the segment.
    pub sp: f64,
    /// Integral of squared error.
    pub ise: f64,
    /// Integral of absolute error.
    pub iae: f64,
}

impl From<SegmentIndices> for SegmentRow {
    fn from(s: SegmentIndices) -> Self {
        Self {
            start: s.start,
            end: s.end,
            sp: s.sp,
            ise: s.ise,
            iae: s.iae,
        }
    }
}

/// Whole-window integral indices of one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndicesRow {
    /// Integral of squared error.
    pub ise: f64,
    /// Integral of absolute error.
    pub iae: f64,
    /// Integral of time-weighted absolute error (origin at t = 0).
    pub itae: f64,
    /// Integral of squared plant input.
    pub energy: f64,
}

/// Measured stability margins of one loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginsRow {
    /// Gain margin (linear ratio) at the lowest phase crossover, when one
    /// exists in the scanned band.
    pub gain_margin: Option<f64>,
    /// Phase-crossover frequency, rad/s.
    pub phase_crossover_freq: Option<f64>,
    /// Phase margin in radians at the lowest gain crossover, when one
    /// exists in the scanned band.
    pub phase_margin: Option<f64>,
    /// Gain-crossover frequency, rad/s.
    pub gain_crossover_freq: Option<f64>,
    /// Number of gain crossovers detected in the scanned band.
    pub gain_crossover_count: usize,
}

impl From<&MarginReport> for MarginsRow {
    fn from(m: &MarginReport) -> Self {
        Self {
            gain_margin: m.am(),
            phase_crossover_freq: m.w_pc(),
            phase_margin: m.phi_m(),
            gain_crossover_freq: m.w_gc(),
            gain_crossover_count: m.gain_crossover_count,
        }
    }
}

/// One method's results in a comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodRow {
    /// Method label.
    pub method: String,
    /// Proportional gain used.
    pub kc: f64,
    /// Integral time used, when the controller has integral action.
    pub ti: Option<f64>,
    /// Derivative time used, when the controller has derivative action.
    pub td: Option<f64>,
    /// Whether the disturbance observer ran.
    pub dob: bool,
    /// Step-response specifications (single-step scenarios only).
    pub step: Option<StepRow>,
    /// Per-segment indices (multi-step scenarios only).
    pub segments: Option<Vec<SegmentRow>>,
    /// Whole-window integral indices.
    pub indices: IndicesRow,
    /// Measured stability margins.
    pub margins: MarginsRow,
    /// Written trace file, when trace output was requested.
    pub trace_file: Option<String>,
}

/// Comparison across methods on one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    /// Scenario name.
    pub scenario: String,
    /// Run length, seconds.
    pub horizon: f64,
    /// Step size, seconds.
    pub dt: f64,
    /// One row per requested method, in request order.
    pub rows: Vec<MethodRow>,
}

/// One swept value's results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    /// Swept parameter value.
    pub value: f64,
    /// Tuned proportional gain.
    pub kc: f64,
    /// Tuned derivative time.
    pub td: f64,
    /// 10–90% rise time, seconds.
    pub rise_time: Option<f64>,
    /// 2%-band settling time, seconds.
    pub settling_time: Option<f64>,
    /// Overshoot, percent.
    pub overshoot: f64,
    /// Peak-to-peak output excursion from the first peak onward (0 when the
    /// response has no peak).
    pub peak_to_peak: f64,
    /// Full oscillation cycles: out-of-band excursion count halved.
    pub cycles: usize,
    /// Written trace file, when trace output was requested.
    pub trace_file: Option<String>,
}

/// Monotonicity summary across a sweep (present when it has ≥ 2 values).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSummary {
    /// Settling time strictly increases along the value list (`None` when
    /// some run never settled).
    pub settling_strictly_increasing: Option<bool>,
    /// Peak-to-peak oscillation strictly decreases along the value list.
    pub peak_to_peak_strictly_decreasing: bool,
}

/// Sweep results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    /// Scenario name.
    pub scenario: String,
    /// Swept parameter name (`ts` or `am`).
    pub parameter: String,
    /// One row per swept value, in list order.
    pub rows: Vec<SweepRow>,
    /// Monotonicity summary (absent for singleton sweeps).
    pub summary: Option<SweepSummary>,
}

/// Simulation pieces resolved for one controller on one scenario.
struct Prepared {
    label: String,
    params: ControllerParams,
    dob: bool,
}

fn sim_options(spec: &ScenarioSpec) -> SimOptions {
    SimOptions {
        derivative_filter_n: spec.filter_n,
        observer_gain: spec.observer_gain,
        ..SimOptions::default()
    }
}

/// Runs one prepared controller and reduces the trace to a report row.
fn run_one(
    spec: &ScenarioSpec,
    prepared: &Prepared,
    trace_path: Option<PathBuf>,
) -> CliResult<(MethodRow, SimTrace)> {
    let model = spec.plant.to_model()?;
    let scenario = spec.to_scenario(prepared.dob)?;
    let trace = simulate_with(model, &prepared.params, &scenario, &sim_options(spec))?;

    let window = (0.0, spec.horizon);
    let (ise, iae, itae) = integral_indices(&trace, window, 0.0)?;
    let energy = control_energy(&trace, window)?;

    let step = single_step(spec)
        .map(|(t0, from, to)| step_specs(&trace, t0, from, to))
        .transpose()?
        .map(StepRow::from);
    let segments = segment_windows(spec)
        .map(|segs| servo_segment_indices(&trace, &segs))
        .transpose()?
        .map(|v| v.into_iter().map(SegmentRow::from).collect());

    let margins = measure_margins_default(model, &prepared.params)?;

    let trace_file = match trace_path {
        Some(path) => {
            export_trace(&trace, &path)?;
            Some(path.display().to_string())
        }
        None => None,
    };

    let row = MethodRow {
        method: prepared.label.clone(),
        kc: prepared.params.kc(),
        ti: prepared.params.ti(),
        td: prepared.params.td(),
        dob: prepared.dob,
        step,
        segments,
        indices: IndicesRow {
            ise,
            iae,
            itae,
            energy,
        },
        margins: MarginsRow::from(&margins),
        trace_file,
    };
    Ok((row, trace))
}

/// The single setpoint transition of a one-step scenario:
/// `(step time, from, to)`. Multi-step and zero-setpoint scenarios return
/// `None`.
fn single_step(spec: &ScenarioSpec) -> Option<(f64, f64, f64)> {
    match spec.setpoint.as_slice() {
        [[t0, v]] if *v != 0.0 => Some((*t0, 0.0, *v)),
        _ => None,
    }
}

/// Per-setpoint-change segment windows of a multi-step scenario.
fn segment_windows(spec: &ScenarioSpec) -> Option<Vec<((f64, f64), f64)>> {
    if spec.setpoint.len() < 2 {
        return None;
    }
    let mut segs = Vec::with_capacity(spec.setpoint.len());
    for (i, &[start, value]) in spec.setpoint.iter().enumerate() {
        let end = spec
            .setpoint
            .get(i + 1)
            .map(|&[t, _]| t)
            .unwrap_or(spec.horizon);
        segs.push(((start, end), value));
    }
    Some(segs)
}

/// Runs all requested methods on a scenario (concurrently), assembling rows
/// in request order. Traces are written only when `trace_dir` is given.
pub fn run_comparison(
    spec: &ScenarioSpec,
    methods: &[TuningMethod],
    trace_dir: Option<&Path>,
) -> CliResult<ComparisonReport> {
    let mut prepared = Vec::with_capacity(methods.len());
    for &method in methods {
        prepared.push(Prepared {
            label: method.label().to_owned(),
            params: spec.params_for(method)?,
            dob: spec.dob_for(method)?,
        });
    }

    let rows: Vec<CliResult<(MethodRow, SimTrace)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = prepared
            .iter()
            .map(|p| {
                let trace_path =
                    trace_dir.map(|dir| dir.join(format!("{}_{}.csv", spec.name, p.label)));
                scope.spawn(move || run_one(spec, p, trace_path))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation worker panicked"))
            .collect()
    });

    let mut report = ComparisonReport {
        scenario: spec.name.clone(),
        horizon: spec.horizon,
        dt: spec.dt,
        rows: Vec::with_capacity(rows.len()),
    };
    for row in rows {
        report.rows.push(row?.0);
    }
    Ok(report)
}

/// Runs a single controller on a scenario, writing the trace into
/// `trace_dir` when given. Controller resolution order: the explicit
/// `method` argument, then the scenario's `method`, then its explicit
/// `params`, then the tuned PD rule.
pub fn run_single(
    spec: &ScenarioSpec,
    method: Option<TuningMethod>,
    trace_dir: Option<&Path>,
) -> CliResult<(MethodRow, SimTrace)> {
    let prepared = match (method, &spec.method, spec.params) {
        (Some(m), _, _) => Prepared {
            label: m.label().to_owned(),
            params: spec.params_for(m)?,
            dob: spec.dob_for(m)?,
        },
        (None, Some(name), _) => {
            let m: TuningMethod = name.parse().map_err(crate::error::CliError::input)?;
            Prepared {
                label: m.label().to_owned(),
                params: spec.params_for(m)?,
                dob: spec.dob_for(m)?,
            }
        }
        (None, None, Some(params)) => Prepared {
            label: "explicit".to_owned(),
            params: params.to_params()?,
            dob: matches!(spec.dob, crate::scenario::DobMode::On),
        },
        (None, None, None) => {
            let m = TuningMethod::ProposedPd;
            Prepared {
                label: m.label().to_owned(),
                params: spec.params_for(m)?,
                dob: spec.dob_for(m)?,
            }
        }
    };
    let trace_path = trace_dir.map(|dir| dir.join(format!("{}_{}.csv", spec.name, prepared.label)));
    run_one(spec, &prepared, trace_path)
}

/// First-peak-onward peak-to-peak excursion of an output that steps toward
/// `final_value`: zero when the response never peaks (monotone approach);
/// otherwise the max-minus-min of the tail starting at the first sample
/// that exceeds half the final value and is followed by a decrease.
fn peak_to_peak_after_first_peak(y: &[f64], final_value: f64) -> f64 {
    let mut peak = None;
    for i in 1..y.len().saturating_sub(1) {
        if y[i] > 0.5 * final_value && y[i + 1] < y[i] - 1e-12 {
            peak = Some(i);
            break;
        }
    }
    match peak {
        None => 0.0,
        Some(k) => {
            let mut max = f64::NEG_INFINITY;
            let mut min = f64::INFINITY;
            for &v in &y[k..] {
                max = max.max(v);
                min = min.min(v);
            }
            max - min
        }
    }
}

/// Counts excursions beyond ±0.5% of the final value: returns
/// `(full cycles, half excursions)` where a full cycle is two excursions.
fn excursion_counts(y: &[f64], final_value: f64) -> (usize, usize) {
    let tol = 0.005 * final_value.abs();
    let mut halves = 0usize;
    let mut cur = 0i8;
    for &v in y {
        let dev = v - final_value;
        let s: i8 = if dev > tol {
            1
        } else if dev < -tol {
            -1
        } else {
            0
        };
        if s != 0 && s != cur {
            halves += 1;
            cur = s;
        } else if s == 0 {
            cur = 0;
        }
    }
    (halves / 2, halves)
}

/// Runs the sweep described by the scenario's `sweep` block: one tuned-PD
/// simulation per value, with per-run step specifications and oscillation
/// measures, plus monotonicity summaries when the sweep has ≥ 2 values.
pub fn run_sweep(spec: &ScenarioSpec, trace_dir: Option<&Path>) -> CliResult<SweepReport> {
    let sweep = spec.sweep.as_ref().ok_or_else(|| {
        crate::error::CliError::input(format!(
            "scenario {:?} has no sweep block; use a sweep scenario (sweep_ts, sweep_am) or add one",
            spec.name
        ))
    })?;
    let (step_time, _, final_value) = single_step(spec).ok_or_else(|| {
        crate::error::CliError::input(
            "sweep scenarios need a single nonzero setpoint step to measure",
        )
    })?;
    if final_value <= 0.0 {
        return Err(crate::error::CliError::input(
            "sweep scenarios need a positive setpoint level",
        ));
    }
    let base_design = spec.design_spec()?;

    let results: Vec<CliResult<SweepRow>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sweep
            .values
            .iter()
            .map(|&value| {
                let trace_path = trace_dir.map(|dir| {
                    dir.join(format!("{}_{}_{}.csv", spec.name, sweep.parameter, value))
                });
                scope.spawn(move || -> CliResult<SweepRow> {
                    let design = match sweep.parameter {
                        SweepParameter::Ts => ipdt_core::DesignSpec::new(
                            base_design.am(),
                            base_design.phi_m(),
                            value,
                        )?,
                        SweepParameter::Am => ipdt_core::DesignSpec::new(
                            value,
                            base_design.phi_m(),
                            base_design.ts(),
                        )?,
                    };
                    let report = ipdt_core::tune_pd(spec.plant.to_model()?, design)?;
                    let prepared = Prepared {
                        label: report.params.label().to_owned(),
                        params: report.params.clone(),
                        dob: false,
                    };
                    let model = spec.plant.to_model()?;
                    let scenario = spec.to_scenario(prepared.dob)?;
                    let trace =
                        simulate_with(model, &prepared.params, &scenario, &sim_options(spec))?;
                    let specs = step_specs(&trace, step_time, 0.0, final_value)?;
                    let p2p = peak_to_peak_after_first_peak(trace.y(), final_value);
                    let (cycles, _) = excursion_counts(trace.y(), final_value);
                    let trace_file = match trace_path {
                        Some(path) => {
                            export_trace(&trace, &path)?;
                            Some(path.display().to_string())
                        }
                        None => None,
                    };
                    Ok(SweepRow {
                        value,
                        kc: report.params.kc(),
                        td: report.params.td().unwrap_or(0.0),
                        rise_time: specs.rise_time,
                        settling_time: specs.settling_time,
                        overshoot: specs.overshoot,
                        peak_to_peak: p2p,
                        cycles,
                        trace_file,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });

    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }

    let summary = (rows.len() >= 2).then(|| {
        let settles: Option<Vec<f64>> = rows.iter().map(|r| r.settling_time).collect();
        SweepSummary {
            settling_strictly_increasing: settles.map(|s| s.windows(2).all(|w| w[1] > w[0])),
            peak_to_peak_strictly_decreasing: rows
                .windows(2)
                .all(|w| w[1].peak_to_peak < w[0].peak_to_peak),
        }
    });

    Ok(SweepReport {
        scenario: spec.name.clone(),
        parameter: sweep.parameter.to_string(),
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::builtin_scenario;

    #[test]
    fn peak_detection_mirrors_definition() {
        // Rises, peaks at 1.3, rings down to 1: p2p from the peak.
        let y = [0.0, 0.6, 1.3, 0.9, 1.05, 1.0, 1.0];
        assert!((peak_to_peak_after_first_peak(&y, 1.0) - 0.4).abs() < 1e-12);
        // Monotone approach: no peak, zero.
        let y = [0.0, 0.4, 0.8, 0.95, 0.99, 1.0, 1.0];
        assert_eq!(peak_to_peak_after_first_peak(&y, 1.0), 0.0);
    }

    #[test]
    fn excursion_counting_mirrors_definition() {
        // Initial approach (below band), then above, below, above:
        // 4 half excursions, 2 full cycles.
        let y = [0.0, 1.2, 1.0, 0.9, 1.0, 1.1, 1.0, 1.0];
        let (cycles, halves) = excursion_counts(&y, 1.0);
        assert_eq!((cycles, halves), (2, 4));
        // Never leaves the band after the approach: the approach itself is
        // one (negative) excursion.
        let y = [0.0, 0.999, 1.0, 1.0];
        let (cycles, halves) = excursion_counts(&y, 1.0);
        assert_eq!((cycles, halves), (0, 1));
    }

    #[test]
    fn comparison_rows_follow_request_order() {
        let spec = builtin_scenario("step_tracking").unwrap();
        let methods = [TuningMethod::AliMajhi, TuningMethod::ProposedPd];
        let report = run_comparison(&spec, &methods, None).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].method, "ali-majhi");
        assert_eq!(report.rows[1].method, "proposed-pd");
        assert!(report.rows.iter().all(|r| !r.dob));
        assert!(report.rows.iter().all(|r| r.step.is_some()));
        assert!(report.rows.iter().all(|r| r.segments.is_none()));
    }

    #[test]
    fn staircase_produces_segments_not_step() {
        let spec = builtin_scenario("servo_staircase").unwrap();
        let report = run_comparison(&spec, &[TuningMethod::ProposedPd], None).unwrap();
        let row = &report.rows[0];
        assert!(row.step.is_none());
        let segs = row.segments.as_ref().unwrap();
        assert_eq!(segs.len(), 3);
        assert_eq!((segs[0].start, segs[0].end, segs[0].sp), (0.0, 100.0, 1.0));
        assert_eq!(
            (segs[2].start, segs[2].end, segs[2].sp),
            (200.0, 300.0, 2.0)
        );
    }

    #[test]
    fn regulatory_auto_observer_only_for_tuned_pd() {
        let spec = builtin_scenario("regulatory").unwrap();
        let report = run_comparison(
            &spec,
            &[TuningMethod::ProposedPd, TuningMethod::SreeChidambaram],
            None,
        )
        .unwrap();
        assert!(report.rows[0].dob);
        assert!(!report.rows[1].dob);
        // Regulatory scenario has a zero setpoint: no step row.
        assert!(report.rows.iter().all(|r| r.step.is_none()));
    }

    #[test]
    fn sweep_reports_in_value_order_with_summary() {
        let spec = builtin_scenario("sweep_ts").unwrap();
        let report = run_sweep(&spec, None).unwrap();
        assert_eq!(report.parameter, "ts");
        let values: Vec<f64> = report.rows.iter().map(|r| r.value).collect();
        assert_eq!(values, vec![40.0, 50.0, 60.0, 70.0]);
        let summary = report.summary.unwrap();
        assert_eq!(summary.settling_strictly_increasing, Some(true));
    }

    #[test]
    fn singleton_sweep_has_no_summary() {
        let mut spec = builtin_scenario("sweep_ts").unwrap();
        spec.sweep.as_mut().unwrap().values = vec![40.0];
        let report = run_sweep(&spec, None).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(report.summary.is_none());
    }

    #[test]
    fn sweep_requires_a_sweep_block() {
        let spec = builtin_scenario("step_tracking").unwrap();
        assert!(run_sweep(&spec, None).is_err());
    }
}
