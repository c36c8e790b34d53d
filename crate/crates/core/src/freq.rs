//! Frequency-response evaluation of the delayed loop transfer function and
//! numerical gain/phase-margin measurement.
//!
//! The loop is `G_C(jw) · G_I(jw)` with `G_C = kc·(1 + 1/(ti·jw) + td·jw)`
//! (optional terms per the controller) and `G_I = (kp/jw)·e^(−jw·d)`. The
//! loop phase has the closed form `atan(x) − π/2 − w·d` (plus π for a
//! negative static loop sign) with `x = td·w − 1/(ti·w)`, which is continuous
//! in `w` — margins are found by bracketing sign changes of that expression
//! on a logarithmic grid and refining by bisection, with no numeric phase
//! unwrapping involved.

use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::float;
use crate::types::{ControllerParams, IpdtModel};

/// Default lower frequency bound for margin scans, rad/s.
pub const DEFAULT_W_MIN: f64 = 1e-4;
/// Default upper frequency bound for margin scans, rad/s.
pub const DEFAULT_W_MAX: f64 = 1e3;
/// Bisection refinements are capped at this iteration count; the relative
/// frequency tolerance of 1e-10 is always reached first for the supported
/// frequency ranges.
pub const BISECTION_MAX_ITERS: usize = 60;
/// Minimum number of logarithmic grid points in a margin scan.
pub const MIN_GRID_POINTS: usize = 2000;

const FREQ_REL_TOL: f64 = 1e-10;

/// One measured crossover: the frequency where the defining condition holds
/// and the margin read off there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    /// Crossover frequency, rad/s.
    pub freq: f64,
    /// The margin at that frequency: a linear gain ratio for phase
    /// crossovers, radians for gain crossovers.
    pub margin: f64,
}

/// Measured margins of a loop.
///
/// Each crossover is present only when one was found in the scanned range.
/// Delay loops cross −π infinitely often and may cross unit magnitude more
/// than once; the lowest-frequency crossover of each kind defines the
/// reported margin, and `gain_crossover_count` surfaces ambiguity.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MarginReport {
    /// Lowest-frequency phase crossover; `margin` is the gain margin
    /// (linear ratio).
    pub phase_crossover: Option<Crossover>,
    /// Lowest-frequency gain crossover; `margin` is the phase margin
    /// (radians, from the continuous phase).
    pub gain_crossover: Option<Crossover>,
    /// Number of gain crossovers bracketed in the scanned range.
    pub gain_crossover_count: usize,
}

impl MarginReport {
    /// Gain margin as a linear ratio, when a phase crossover was found.
    pub fn am(&self) -> Option<f64> {
        self.phase_crossover.map(|c| c.margin)
    }

    /// Phase crossover frequency, rad/s.
    pub fn w_pc(&self) -> Option<f64> {
        self.phase_crossover.map(|c| c.freq)
    }

    /// Phase margin in radians, when a gain crossover was found.
    pub fn phi_m(&self) -> Option<f64> {
        self.gain_crossover.map(|c| c.margin)
    }

    /// Gain crossover frequency, rad/s.
    pub fn w_gc(&self) -> Option<f64> {
        self.gain_crossover.map(|c| c.freq)
    }
}

fn validate_w(w: f64) -> Result<()> {
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::invalid(format_args!(
            "frequency must be finite and positive, got {w} rad/s"
        )));
    }
    Ok(())
}

/// Complex loop response `G_C(jw) · G_I(jw)` at frequency `w` rad/s.
pub fn loop_response(model: IpdtModel, params: &ControllerParams, w: f64) -> Result<Complex64> {
    validate_w(w)?;
    let mut numerator = Complex64::new(1.0, 0.0);
    if let Some(td) = params.td() {
        numerator.im += td * w;
    }
    if let Some(ti) = params.ti() {
        numerator.im -= 1.0 / (ti * w);
    }
    let controller = numerator * params.kc();
    // (kp / jw) · e^(−jwd) has magnitude |kp|/w and phase −(π/2 + w·d),
    // plus π when kp is negative.
    let mut angle = -(FRAC_PI_2 + w * model.dead_time());
    if model.kp() < 0.0 {
        angle += PI;
    }
    let plant = Complex64::from_polar(float::abs(model.kp()) / w, angle);
    Ok(controller * plant)
}

/// Loop phase in radians as a continuous (unwrapped) function of frequency.
///
/// Computed in closed form, so no numeric unwrapping is involved and values
/// are comparable across frequencies without ±2π ambiguity.
pub fn unwrapped_phase(model: IpdtModel, params: &ControllerParams, w: f64) -> Result<f64> {
    validate_w(w)?;
    let mut x = 0.0;
    if let Some(td) = params.td() {
        x += td * w;
    }
    if let Some(ti) = params.ti() {
        x -= 1.0 / (ti * w);
    }
    let mut phi = float::atan(x) - FRAC_PI_2 - w * model.dead_time();
    if model.kp() * params.kc() < 0.0 {
        phi += PI;
    }
    Ok(phi)
}

/// Magnitude of the loop response (closed form; avoids the complex round
/// trip during grid scans).
fn loop_magnitude(model: IpdtModel, params: &ControllerParams, w: f64) -> f64 {
    let mut x = 0.0;
    if let Some(td) = params.td() {
        x += td * w;
    }
    if let Some(ti) = params.ti() {
        x -= 1.0 / (ti * w);
    }
    float::abs(model.kp()) * params.kc() * float::sqrt(1.0 + x * x) / w
}

/// Measures gain and phase margins over `[w_min, w_max]` rad/s.
///
/// Scans a logarithmic grid (at least [`MIN_GRID_POINTS`] points, densified
/// so adjacent-point phase steps stay below π even at the highest scanned
/// frequency), brackets sign changes of `phase + π` and of `ln |G|`, and
/// refines each bracket by bisection to 1e-10 relative frequency tolerance.
/// Absent crossovers are reported as `None`, not errors.
pub fn measure_margins(
    model: IpdtModel,
    params: &ControllerParams,
    w_min: f64,
    w_max: f64,
) -> Result<MarginReport> {
    validate_w(w_min)?;
    validate_w(w_max)?;
    if w_min >= w_max {
        return Err(Error::invalid(format_args!(
            "frequency range is empty: w_min = {w_min}, w_max = {w_max}"
        )));
    }

    let ln_ratio = float::ln(w_max / w_min);
    // Phase moves at most (d·w + 1) per unit ln w; keep grid steps of the
    // phase below π/2 so every crossing is bracketed.
    let needed = 2.0 * ln_ratio * (model.dead_time() * w_max + 1.0) / PI;
    let intervals = (needed as usize + 1).max(MIN_GRID_POINTS);

    let grid_w = |i: usize| -> f64 {
        if i == 0 {
            w_min
        } else if i == intervals {
            w_max
        } else {
            w_min * float::exp(ln_ratio * i as f64 / intervals as f64)
        }
    };

    let phase_excess = |w: f64| unwrapped_phase(model, params, w).unwrap_or(f64::NAN) + PI;
    let log_mag = |w: f64| float::ln(loop_magnitude(model, params, w));

    let mut phase_crossover = None;
    let mut gain_crossover = None;
    let mut gain_crossover_count = 0usize;

    let mut w_prev = grid_w(0);
    let mut f_prev = phase_excess(w_prev);
    let mut g_prev = log_mag(w_prev);
    for i in 1..=intervals {
        let w = grid_w(i);
        let f = phase_excess(w);
        let g = log_mag(w);
        if phase_crossover.is_none() {
            if let Some(freq) = bracket_root(w_prev, w, f_prev, f, &phase_excess) {
                let margin = 1.0 / loop_magnitude(model, params, freq);
                phase_crossover = Some(Crossover { freq, margin });
            }
        }
        if let Some(freq) = bracket_root(w_prev, w, g_prev, g, &log_mag) {
            gain_crossover_count += 1;
            if gain_crossover.is_none() {
                let margin = unwrapped_phase(model, params, freq)? + PI;
                gain_crossover = Some(Crossover { freq, margin });
            }
        }
        w_prev = w;
        f_prev = f;
        g_prev = g;
    }

    Ok(MarginReport {
        phase_crossover,
        gain_crossover,
        gain_crossover_count,
    })
}

/// Measures margins over the default range
/// [`DEFAULT_W_MIN`]..[`DEFAULT_W_MAX`].
pub fn measure_margins_default(
    model: IpdtModel,
    params: &ControllerParams,
) -> Result<MarginReport> {
    measure_margins(model, params, DEFAULT_W_MIN, DEFAULT_W_MAX)
}

/// Refines a sign change of `f` inside `[lo, hi]` by geometric bisection.
/// Returns `None` when the endpoint values do not bracket a root.
fn bracket_root(lo: f64, hi: f64, f_lo: f64, f_hi: f64, f: &dyn Fn(f64) -> f64) -> Option<f64> {
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_lo.is_nan() || f_hi.is_nan() || (f_lo > 0.0) == (f_hi > 0.0) {
        return None;
    }
    let (mut lo, mut hi, mut f_lo) = (lo, hi, f_lo);
    for _ in 0..BISECTION_MAX_ITERS {
        if (hi - lo) <= FREQ_REL_TOL * lo {
            break;
        }
        let mid = float::sqrt(lo * hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(float::sqrt(lo * hi))
}
