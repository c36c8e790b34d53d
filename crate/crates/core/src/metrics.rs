//! Integral performance indices, time-domain step specifications, and the
//! control-signal energy measure, all computed from recorded traces.
//!
//! Conventions (fixed so results are comparable across methods):
//! - all integrals are trapezoidal at trace resolution;
//! - rise time is 10% → 90% of the commanded transition;
//! - settling time is the last exit of the ±2% band around the final value,
//!   measured from the step instant, with linear interpolation at the exit;
//! - overshoot is the peak excursion beyond the final value in the direction
//!   of the transition, as a percentage of the transition magnitude (floored
//!   at zero).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::types::SimTrace;

/// Settling band half-width as a fraction of the transition magnitude.
pub const SETTLING_BAND: f64 = 0.02;

/// Absolute slack (scaled by `max(1, |t|)`) for matching a requested time to
/// the sample grid.
const GRID_TOL: f64 = 1e-6;

/// Time-domain specifications of one step transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSpecs {
    /// 10–90% rise time in seconds; absent when the trace never completes
    /// the crossing pair.
    pub rise_time: Option<f64>,
    /// 2%-band settling time in seconds from the step instant; absent when
    /// the trace ends outside the band.
    pub settling_time: Option<f64>,
    /// Peak excursion beyond the final value, in percent of the transition
    /// magnitude (never negative).
    pub overshoot: f64,
}

/// Integral indices of one window of a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexReport {
    /// Integral of squared error.
    pub ise: f64,
    /// Integral of absolute error.
    pub iae: f64,
    /// Integral of time-weighted absolute error.
    pub itae: f64,
    /// Integral of squared plant input.
    pub energy: f64,
}

/// Per-segment error indices for a multi-step (staircase) run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentIndices {
    /// Segment start time in seconds.
    pub start: f64,
    /// Segment end time in seconds.
    pub end: f64,
    /// Setpoint value the segment tracks (carried through for reports).
    pub sp: f64,
    /// Integral of squared error over the segment.
    pub ise: f64,
    /// Integral of absolute error over the segment.
    pub iae: f64,
}

/// Maps a time to its sample index, requiring it to sit on the grid.
fn grid_index(trace: &SimTrace, t: f64) -> Result<usize> {
    let dt = trace.dt();
    if !t.is_finite() || t < -GRID_TOL {
        return Err(Error::invalid(format_args!(
            "time {t} s is outside the trace (starts at 0)"
        )));
    }
    let k = float::round(t / dt);
    let tol = GRID_TOL * float::abs(t).max(1.0);
    if float::abs(t - k * dt) > tol {
        return Err(Error::invalid(format_args!(
            "time {t} s is not on the sample grid (step {dt} s)"
        )));
    }
    let k = k as usize;
    if k >= trace.len() {
        return Err(Error::invalid(format_args!(
            "time {t} s is beyond the trace end ({} s)",
            trace.span()
        )));
    }
    Ok(k)
}

/// Maps a `[t0, t1]` window to sample indices, validating ordering and span.
fn window_indices(trace: &SimTrace, window: (f64, f64)) -> Result<(usize, usize)> {
    let (t0, t1) = window;
    if t0 >= t1 || t0.is_nan() || t1.is_nan() {
        return Err(Error::invalid(format_args!(
            "window start {t0} s must be before window end {t1} s"
        )));
    }
    Ok((grid_index(trace, t0)?, grid_index(trace, t1)?))
}

/// Trapezoidal integral of `f(k)` over panels `k0..k1` at spacing `dt`.
fn trapezoid<F: Fn(usize) -> f64>(f: F, k0: usize, k1: usize, dt: f64) -> f64 {
    let mut acc = 0.0;
    for k in k0..k1 {
        acc += (f(k) + f(k + 1)) / 2.0;
    }
    acc * dt
}

/// Trapezoidal ISE, IAE, and ITAE of the tracking error `e = sp − y` over
/// the window, with the ITAE weight measured from `time_origin`.
pub fn integral_indices(
    trace: &SimTrace,
    window: (f64, f64),
    time_origin: f64,
) -> Result<(f64, f64, f64)> {
    let (k0, k1) = window_indices(trace, window)?;
    let e = |k: usize| trace.sp()[k] - trace.y()[k];
    let dt = trace.dt();
    let ise = trapezoid(|k| e(k) * e(k), k0, k1, dt);
    let iae = trapezoid(|k| float::abs(e(k)), k0, k1, dt);
    let itae = trapezoid(
        |k| (trace.t()[k] - time_origin) * float::abs(e(k)),
        k0,
        k1,
        dt,
    );
    Ok((ise, iae, itae))
}

/// Trapezoidal integral of the squared plant input over the window.
pub fn control_energy(trace: &SimTrace, window: (f64, f64)) -> Result<f64> {
    let (k0, k1) = window_indices(trace, window)?;
    let u = trace.u();
    Ok(trapezoid(|k| u[k] * u[k], k0, k1, trace.dt()))
}

/// All four integral indices of a window in one report.
pub fn index_report(trace: &SimTrace, window: (f64, f64), time_origin: f64) -> Result<IndexReport> {
    let (ise, iae, itae) = integral_indices(trace, window, time_origin)?;
    let energy = control_energy(trace, window)?;
    Ok(IndexReport {
        ise,
        iae,
        itae,
        energy,
    })
}

/// First time `y` crosses `level` within `k_from..`, linearly interpolated;
/// `rising` selects the crossing direction.
fn cross_time(trace: &SimTrace, k_from: usize, level: f64, rising: bool) -> Option<f64> {
    let y = trace.y();
    let t = trace.t();
    for k in (k_from + 1)..y.len() {
        let a = y[k - 1];
        let b = y[k];
        let crossed = if rising {
            a < level && level <= b
        } else {
            a > level && level >= b
        };
        if crossed {
            let lam = (level - a) / (b - a);
            return Some(t[k - 1] + lam * (t[k] - t[k - 1]));
        }
    }
    None
}

/// Rise time, settling time, and overshoot of the transition from `initial`
/// to `final_value` commanded at `step_time`.
///
/// `step_time` must sit on the sample grid within the trace, and the two
/// levels must differ. A trace that ends outside the settling band gets
/// `settling_time: None`; one that never completes the 10% and 90% crossings
/// gets `rise_time: None`.
pub fn step_specs(
    trace: &SimTrace,
    step_time: f64,
    initial: f64,
    final_value: f64,
) -> Result<StepSpecs> {
    let amp = final_value - initial;
    if !amp.is_finite() || amp == 0.0 {
        return Err(Error::invalid(format_args!(
            "step levels must differ, got initial {initial} and final {final_value}"
        )));
    }
    let k0 = grid_index(trace, step_time)?;
    let y = trace.y();
    let t = trace.t();
    let rising = amp > 0.0;

    let t10 = cross_time(trace, k0, initial + 0.1 * amp, rising);
    let t90 = cross_time(trace, k0, initial + 0.9 * amp, rising);
    let rise_time = match (t10, t90) {
        (Some(a), Some(b)) => Some(b - a),
        _ => None,
    };

    let tol = SETTLING_BAND * float::abs(amp);
    let out = |k: usize| float::abs(y[k] - final_value) > tol;
    let settling_time = if out(y.len() - 1) {
        None
    } else {
        match (k0..y.len()).rev().find(|&k| out(k)) {
            None => Some(0.0),
            Some(klast) => {
                let a = float::abs(y[klast] - final_value);
                let b = float::abs(y[klast + 1] - final_value);
                let lam = (a - tol) / (a - b);
                Some(t[klast] + lam * trace.dt() - step_time)
            }
        }
    };

    let sign = if rising { 1.0 } else { -1.0 };
    let mut peak = f64::NEG_INFINITY;
    for &v in &y[k0..] {
        peak = peak.max((v - final_value) * sign);
    }
    let overshoot = peak.max(0.0) / float::abs(amp) * 100.0;

    Ok(StepSpecs {
        rise_time,
        settling_time,
        overshoot,
    })
}

/// Per-segment ISE/IAE for a staircase run.
///
/// `segments` pairs each `[t0, t1]` window with the setpoint value it
/// tracks. The windows must partition the full trace span in order — the
/// first starts at the trace start, each next segment starts where the
/// previous ended, and the last ends at the trace end. Each segment's
/// indices use its own start as the ITAE time origin (the weight resets per
/// setpoint change, though only ISE/IAE are reported).
pub fn servo_segment_indices(
    trace: &SimTrace,
    segments: &[((f64, f64), f64)],
) -> Result<Vec<SegmentIndices>> {
    if segments.is_empty() {
        return Err(Error::invalid("need at least one segment"));
    }
    let mut expected_start = 0usize;
    let mut out = Vec::with_capacity(segments.len());
    for &((t0, t1), sp) in segments {
        let (k0, k1) = window_indices(trace, (t0, t1))?;
        if k0 < expected_start {
            return Err(Error::invalid(format_args!(
                "segments overlap: segment starting at {t0} s begins before the previous one ends"
            )));
        }
        if k0 > expected_start {
            return Err(Error::invalid(format_args!(
                "gap between segments before {t0} s: segments must partition the trace"
            )));
        }
        let (ise, iae, _) = integral_indices(trace, (t0, t1), t0)?;
        out.push(SegmentIndices {
            start: t0,
            end: t1,
            sp,
            ise,
            iae,
        });
        expected_start = k1;
    }
    if expected_start != trace.len() - 1 {
        return Err(Error::invalid(
            "segments must extend to the trace end to partition the span",
        ));
    }
    Ok(out)
}
