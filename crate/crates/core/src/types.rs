//! Shared domain vocabulary: plant model, controller parameters, design
//! specification, crossover pair, signal profiles, scenarios, and traces.
//!
//! Every type validates its invariants at construction and is immutable
//! afterwards, so values can be shared or sent across threads freely.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;

/// Matching tolerance for breakpoint and grid times, in seconds.
///
/// Sample times are produced as `k * dt`, which can land a fraction of an ulp
/// on either side of an intended breakpoint; this slack keeps such samples in
/// their intended segment without affecting right-continuity.
const TIME_SLACK: f64 = 1e-12;

/// Integrating-plus-dead-time plant: transfer function `(kp / s) · e^(−d·s)`.
///
/// `kp` is the integrating process gain (output units per input unit per
/// second) and `d` the transport dead time in seconds: input changes affect
/// the output only `d` seconds later.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IpdtModel {
    kp: f64,
    d: f64,
}

impl IpdtModel {
    /// Creates a plant model, rejecting zero/non-finite gain and negative or
    /// non-finite dead time.
    pub fn new(kp: f64, dead_time: f64) -> Result<Self> {
        if !kp.is_finite() || kp == 0.0 {
            return Err(Error::invalid(format_args!(
                "process gain must be finite and nonzero, got {kp}"
            )));
        }
        if !dead_time.is_finite() || dead_time < 0.0 {
            return Err(Error::invalid(format_args!(
                "dead time must be finite and nonnegative, got {dead_time}"
            )));
        }
        Ok(Self { kp, d: dead_time })
    }

    /// Integrating process gain.
    pub fn kp(&self) -> f64 {
        self.kp
    }

    /// Transport dead time in seconds.
    pub fn dead_time(&self) -> f64 {
        self.d
    }
}

/// Controller parameters: proportional gain with optional integral and
/// derivative times.
///
/// The control law is `kc · (1 + 1/(ti·s) + td·s)` with the bracketed terms
/// present only when the corresponding time constant is. A PD controller is
/// the `ti`-absent case; a PID controller has all three.
#[derive(Debug, Clone, PartialEq)]
pub struct ControllerParams {
    kc: f64,
    ti: Option<f64>,
    td: Option<f64>,
    label: String,
}

impl ControllerParams {
    /// Creates a parameter set with a free-text label for reports.
    ///
    /// Requires `kc > 0`, `ti > 0` when present, and `td ≥ 0` when present.
    pub fn new(
        kc: f64,
        ti: Option<f64>,
        td: Option<f64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !kc.is_finite() || kc <= 0.0 {
            return Err(Error::invalid(format_args!(
                "controller gain must be finite and positive, got {kc}"
            )));
        }
        if let Some(ti) = ti {
            if !ti.is_finite() || ti <= 0.0 {
                return Err(Error::invalid(format_args!(
                    "integral time must be finite and positive, got {ti}"
                )));
            }
        }
        if let Some(td) = td {
            if !td.is_finite() || td < 0.0 {
                return Err(Error::invalid(format_args!(
                    "derivative time must be finite and nonnegative, got {td}"
                )));
            }
        }
        Ok(Self {
            kc,
            ti,
            td,
            label: label.into(),
        })
    }

    /// Proportional-only controller.
    pub fn p(kc: f64) -> Result<Self> {
        Self::new(kc, None, None, "p")
    }

    /// Proportional-derivative controller.
    pub fn pd(kc: f64, td: f64) -> Result<Self> {
        Self::new(kc, None, Some(td), "pd")
    }

    /// Proportional-integral-derivative controller.
    pub fn pid(kc: f64, ti: f64, td: f64) -> Result<Self> {
        Self::new(kc, Some(ti), Some(td), "pid")
    }

    /// Returns the same parameters under a different label.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Proportional gain.
    pub fn kc(&self) -> f64 {
        self.kc
    }

    /// Integral time in seconds, when the controller has integral action.
    pub fn ti(&self) -> Option<f64> {
        self.ti
    }

    /// Derivative time in seconds, when the controller has derivative action.
    pub fn td(&self) -> Option<f64> {
        self.td
    }

    /// Free-text method name for reports.
    pub fn label(&self) -> &str {
        &self.label
    }
}

/// User-facing tuning inputs: gain margin, phase margin, settling time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignSpec {
    am: f64,
    phi_m: f64,
    ts: f64,
}

impl DesignSpec {
    /// Creates a specification.
    ///
    /// `am` is the desired gain margin as a linear ratio (> 0), `phi_m` the
    /// desired phase margin in radians (in `(0, π]`), and `ts` the desired
    /// settling time in seconds (> 0).
    pub fn new(am: f64, phi_m: f64, ts: f64) -> Result<Self> {
        if !am.is_finite() || am <= 0.0 {
            return Err(Error::invalid(format_args!(
                "gain margin must be a finite positive ratio, got {am}"
            )));
        }
        if !phi_m.is_finite() || phi_m <= 0.0 || phi_m > core::f64::consts::PI {
            return Err(Error::invalid(format_args!(
                "phase margin must lie in (0, pi] radians, got {phi_m}"
            )));
        }
        if !ts.is_finite() || ts <= 0.0 {
            return Err(Error::invalid(format_args!(
                "settling time must be finite and positive, got {ts}"
            )));
        }
        Ok(Self { am, phi_m, ts })
    }

    /// Gain margin as a linear ratio.
    pub fn am(&self) -> f64 {
        self.am
    }

    /// Phase margin in radians.
    pub fn phi_m(&self) -> f64 {
        self.phi_m
    }

    /// Desired settling time in seconds.
    pub fn ts(&self) -> f64 {
        self.ts
    }
}

/// A phase-crossover / gain-crossover frequency pair, in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverPair {
    w_pc: f64,
    w_gc: f64,
}

impl CrossoverPair {
    /// Creates a pair; both frequencies must be finite and positive.
    pub fn new(w_pc: f64, w_gc: f64) -> Result<Self> {
        for (name, w) in [("phase", w_pc), ("gain", w_gc)] {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::invalid(format_args!(
                    "{name} crossover frequency must be finite and positive, got {w}"
                )));
            }
        }
        Ok(Self { w_pc, w_gc })
    }

    /// Phase crossover frequency (rad/s).
    pub fn w_pc(&self) -> f64 {
        self.w_pc
    }

    /// Gain crossover frequency (rad/s).
    pub fn w_gc(&self) -> f64 {
        self.w_gc
    }
}

/// Piecewise-constant signal defined by `(start_time, value)` breakpoints.
///
/// A breakpoint's value holds from its own start time (right-continuous)
/// until the next breakpoint. Start times must be strictly increasing with
/// the first at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalProfile {
    breakpoints: Vec<(f64, f64)>,
}

impl SignalProfile {
    /// Creates a profile from breakpoints, validating ordering and the
    /// `t = 0` anchor.
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        let Some(&(first, _)) = breakpoints.first() else {
            return Err(Error::invalid("profile needs at least one breakpoint"));
        };
        if first != 0.0 {
            return Err(Error::invalid(format_args!(
                "first breakpoint must be at t = 0, got t = {first}"
            )));
        }
        for pair in breakpoints.windows(2) {
            if pair[1].0 <= pair[0].0 || pair[1].0.is_nan() || pair[0].0.is_nan() {
                return Err(Error::invalid(format_args!(
                    "breakpoint start times must be strictly increasing, got {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        for &(s, v) in &breakpoints {
            if !s.is_finite() || !v.is_finite() {
                return Err(Error::invalid(format_args!(
                    "breakpoint ({s}, {v}) must be finite"
                )));
            }
        }
        Ok(Self { breakpoints })
    }

    /// Constant signal of the given value.
    pub fn constant(value: f64) -> Result<Self> {
        Self::new(alloc::vec![(0.0, value)])
    }

    /// Signal value at time `t` (seconds): the value of the most recent
    /// breakpoint with start time ≤ `t`, matched with a small slack so
    /// sample times of the form `k·dt` hit their intended segment.
    pub fn value(&self, t: f64) -> f64 {
        let cutoff = t + TIME_SLACK;
        let idx = self
            .breakpoints
            .partition_point(|&(start, _)| start <= cutoff);
        // idx >= 1 whenever t >= 0 because the first breakpoint sits at 0;
        // clamp below keeps negative t queries well-defined anyway.
        self.breakpoints[idx.saturating_sub(1)].1
    }

    /// The underlying `(start_time, value)` breakpoints.
    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    /// True when every breakpoint value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.breakpoints.iter().all(|&(_, v)| v == 0.0)
    }
}

/// A closed-loop experiment definition: setpoint and disturbance profiles,
/// horizon, step size, and whether the disturbance observer runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    setpoint: SignalProfile,
    disturbance: SignalProfile,
    horizon: f64,
    dt: f64,
    dob_enabled: bool,
}

impl Scenario {
    /// Creates a scenario with the observer disabled.
    ///
    /// `horizon` must be a whole number of `dt` steps (within 1e-9 relative).
    pub fn new(
        setpoint: SignalProfile,
        disturbance: SignalProfile,
        horizon: f64,
        dt: f64,
    ) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::invalid(format_args!(
                "step size must be finite and positive, got {dt}"
            )));
        }
        if !horizon.is_finite() || horizon <= 0.0 {
            return Err(Error::invalid(format_args!(
                "horizon must be finite and positive, got {horizon}"
            )));
        }
        let steps = float::round(horizon / dt);
        if steps < 1.0 || float::abs(steps * dt - horizon) > 1e-9 * horizon.max(1.0) {
            return Err(Error::invalid(format_args!(
                "horizon {horizon} s is not a whole number of {dt} s steps"
            )));
        }
        Ok(Self {
            setpoint,
            disturbance,
            horizon,
            dt,
            dob_enabled: false,
        })
    }

    /// Returns the same scenario with the disturbance observer switched
    /// on or off.
    pub fn with_observer(mut self, enabled: bool) -> Self {
        self.dob_enabled = enabled;
        self
    }

    /// Setpoint profile.
    pub fn setpoint(&self) -> &SignalProfile {
        &self.setpoint
    }

    /// Disturbance profile (enters at the plant input).
    pub fn disturbance(&self) -> &SignalProfile {
        &self.disturbance
    }

    /// Simulation horizon in seconds.
    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Step size in seconds.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Whether the disturbance observer runs.
    pub fn dob_enabled(&self) -> bool {
        self.dob_enabled
    }

    /// Number of simulation steps; the trace holds `steps() + 1` samples.
    pub fn steps(&self) -> usize {
        float::round(self.horizon / self.dt) as usize
    }
}

/// Uniformly sampled record of one closed-loop run.
///
/// Parallel arrays hold, per sample: time `t`, setpoint `sp`, plant output
/// `y`, plant input `u` (controller output minus disturbance estimate),
/// applied disturbance `d`, and observer estimate `d_hat` (identically zero
/// when the observer is off).
#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    dt: f64,
    t: Vec<f64>,
    sp: Vec<f64>,
    y: Vec<f64>,
    u: Vec<f64>,
    d: Vec<f64>,
    d_hat: Vec<f64>,
}

impl SimTrace {
    /// Assembles a trace from raw arrays, validating equal lengths (≥ 1) and
    /// that `t[k] = k·dt` within 1e-9 relative.
    pub fn from_parts(
        dt: f64,
        t: Vec<f64>,
        sp: Vec<f64>,
        y: Vec<f64>,
        u: Vec<f64>,
        d: Vec<f64>,
        d_hat: Vec<f64>,
    ) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::invalid(format_args!(
                "trace step size must be finite and positive, got {dt}"
            )));
        }
        let n = t.len();
        if n == 0 {
            return Err(Error::invalid("trace needs at least one sample"));
        }
        for (name, arr) in [
            ("sp", &sp),
            ("y", &y),
            ("u", &u),
            ("d", &d),
            ("d_hat", &d_hat),
        ] {
            if arr.len() != n {
                return Err(Error::invalid(format_args!(
                    "trace array lengths differ: t has {n} samples, {name} has {}",
                    arr.len()
                )));
            }
        }
        for (k, &tk) in t.iter().enumerate() {
            let expect = k as f64 * dt;
            if float::abs(tk - expect) > 1e-9 * expect.max(1.0) {
                return Err(Error::invalid(format_args!(
                    "trace time axis is not uniform: t[{k}] = {tk}, expected {expect}"
                )));
            }
        }
        Ok(Self {
            dt,
            t,
            sp,
            y,
            u,
            d,
            d_hat,
        })
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.t.len()
    }

    /// True when the trace holds no samples (impossible for validated
    /// traces; provided for API completeness).
    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Sample period in seconds.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Covered time span in seconds (last sample time).
    pub fn span(&self) -> f64 {
        (self.len() - 1) as f64 * self.dt
    }

    /// Sample times.
    pub fn t(&self) -> &[f64] {
        &self.t
    }

    /// Setpoint samples.
    pub fn sp(&self) -> &[f64] {
        &self.sp
    }

    /// Plant output samples.
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Plant input samples (controller output minus disturbance estimate).
    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// Applied disturbance samples.
    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Observer disturbance-estimate samples.
    pub fn d_hat(&self) -> &[f64] {
        &self.d_hat
    }

    /// Construction path for the simulator, which builds the arrays on a
    /// uniform grid by construction.
    pub(crate) fn from_simulation(
        dt: f64,
        t: Vec<f64>,
        sp: Vec<f64>,
        y: Vec<f64>,
        u: Vec<f64>,
        d: Vec<f64>,
        d_hat: Vec<f64>,
    ) -> Self {
        Self {
            dt,
            t,
            sp,
            y,
            u,
            d,
            d_hat,
        }
    }
}
