//! Deterministic fixed-step closed-loop simulation of the delayed-integrator
//! plant under P/PD/PID control, with an optional disturbance observer.
//!
//! Discretization choices (all fixed, so identical inputs give bit-identical
//! traces):
//! - plant: exact zero-order-hold update `y += kp·dt·v(t−d)`, with the dead
//!   time realized by a delay line that linearly interpolates between the
//!   two straddling samples (exact for piecewise-constant inputs even when
//!   `d` is not a whole number of steps);
//! - controller: trapezoidal integral accumulation and a backward-Euler
//!   first-order-filtered derivative with time constant `td/N`
//!   (default `N = 10`), acting on the error (or, behind an option, on the
//!   negated measurement);
//! - observer: a parallel copy of the plant driven by the pre-correction
//!   controller output; the estimate `gain·(y − y_model)` is read from
//!   pre-advance states and subtracted from the control signal.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::types::{ControllerParams, IpdtModel, Scenario, SimTrace};

/// Default derivative filter divisor N (filter time constant `td/N`).
pub const DEFAULT_FILTER_N: f64 = 10.0;

/// Snap tolerance for the delay-to-step ratio: ratios within this distance
/// of a whole number are treated as exact, so grid-aligned dead times avoid
/// needless interpolation.
const DELAY_SNAP: f64 = 1e-9;

/// Transport-delay line at fixed sample resolution.
///
/// Holds just enough past input samples to reproduce the input from `delay`
/// seconds ago, linearly interpolating between the two straddling samples
/// when the delay is not a whole number of steps. History before the first
/// push reads as zero (system at rest).
#[derive(Debug, Clone)]
pub struct DelayLine {
    buf: Vec<f64>,
    head: usize,
    whole: usize,
    frac: f64,
}

impl DelayLine {
    /// Creates a line representing `delay` seconds at sample period `dt`.
    pub fn new(delay: f64, dt: f64) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::invalid(format_args!(
                "delay line step size must be finite and positive, got {dt}"
            )));
        }
        if !delay.is_finite() || delay < 0.0 {
            return Err(Error::invalid(format_args!(
                "delay must be finite and nonnegative, got {delay}"
            )));
        }
        let ratio = delay / dt;
        let whole = float::floor(ratio + DELAY_SNAP);
        let mut frac = ratio - whole;
        if frac < DELAY_SNAP {
            frac = 0.0;
        }
        let whole = whole as usize;
        Ok(Self {
            buf: vec![0.0; whole + 2],
            head: 0,
            whole,
            frac,
        })
    }

    /// Appends the newest input sample.
    pub fn push(&mut self, v: f64) {
        self.head = (self.head + 1) % self.buf.len();
        self.buf[self.head] = v;
    }

    /// The input from `delay` seconds before the most recent push.
    ///
    /// Interpolates with weight `frac` on the older straddling sample, which
    /// reproduces the exact zero-order-hold integral for the delayed
    /// integrator update.
    pub fn read(&self) -> f64 {
        let cap = self.buf.len();
        let newer = self.buf[(self.head + cap - self.whole) % cap];
        if self.frac == 0.0 {
            return newer;
        }
        let older = self.buf[(self.head + cap - self.whole - 1) % cap];
        self.frac * older + (1.0 - self.frac) * newer
    }
}

/// The delayed-integrator plant advanced by exact zero-order-hold steps.
#[derive(Debug, Clone)]
pub struct Plant {
    kp: f64,
    dt: f64,
    line: DelayLine,
    y: f64,
}

impl Plant {
    /// Creates a plant simulator at sample period `dt`, initially at rest.
    pub fn new(model: IpdtModel, dt: f64) -> Result<Self> {
        Ok(Self {
            kp: model.kp(),
            dt,
            line: DelayLine::new(model.dead_time(), dt)?,
            y: 0.0,
        })
    }

    /// Current plant output.
    pub fn output(&self) -> f64 {
        self.y
    }

    /// Pushes the input sample for this step and advances the output one
    /// step: `y += kp·dt·v(t−d)`. Returns the new output.
    pub fn step(&mut self, v: f64) -> f64 {
        self.line.push(v);
        self.y += self.kp * self.dt * self.line.read();
        self.y
    }
}

/// Discrete P/PD/PID control law state.
///
/// Per step: proportional term `e`; integral term `(trapezoidal sum of e)/ti`
/// when `ti` is present; derivative term `td · f` when `td` is present, with
/// `f` the backward-Euler filtered derivative of the chosen input signal —
/// all scaled by `kc`.
#[derive(Debug, Clone)]
pub struct ControllerState {
    kc: f64,
    ti: Option<f64>,
    td: Option<f64>,
    filter_tc: f64,
    integral: f64,
    prev_error: f64,
    prev_deriv_input: f64,
    filtered_deriv: f64,
}

impl ControllerState {
    /// Creates controller state with the default derivative filter
    /// (`N =` [`DEFAULT_FILTER_N`]).
    pub fn new(params: &ControllerParams) -> Self {
        Self::with_filter(params, DEFAULT_FILTER_N).expect("default filter divisor is valid")
    }

    /// Creates controller state with filter divisor `filter_n > 0`; the
    /// derivative filter time constant is `td / filter_n`.
    pub fn with_filter(params: &ControllerParams, filter_n: f64) -> Result<Self> {
        if !filter_n.is_finite() || filter_n <= 0.0 {
            return Err(Error::invalid(format_args!(
                "derivative filter divisor must be finite and positive, got {filter_n}"
            )));
        }
        Ok(Self {
            kc: params.kc(),
            ti: params.ti(),
            td: params.td(),
            filter_tc: params.td().unwrap_or(0.0) / filter_n,
            integral: 0.0,
            prev_error: 0.0,
            prev_deriv_input: 0.0,
            filtered_deriv: 0.0,
        })
    }

    /// One control step with the derivative acting on the error.
    pub fn step(&mut self, e: f64, dt: f64) -> f64 {
        self.step_split(e, e, dt)
    }

    /// One control step with the derivative acting on `deriv_input` instead
    /// of the error (pass the negated measurement to avoid setpoint kick).
    pub fn step_split(&mut self, e: f64, deriv_input: f64, dt: f64) -> f64 {
        let mut u = self.kc * e;
        if let Some(ti) = self.ti {
            self.integral += dt * (e + self.prev_error) / 2.0;
            u += self.kc * self.integral / ti;
        }
        if let Some(td) = self.td {
            self.filtered_deriv = (self.filter_tc * self.filtered_deriv
                + (deriv_input - self.prev_deriv_input))
                / (self.filter_tc + dt);
            u += self.kc * td * self.filtered_deriv;
        }
        self.prev_error = e;
        self.prev_deriv_input = deriv_input;
        u
    }

    /// Integral accumulator (exactly zero for controllers without integral
    /// action).
    pub fn integral(&self) -> f64 {
        self.integral
    }
}

/// Disturbance-observer state: a parallel model of the plant driven by the
/// pre-correction controller output, and the gain scaling the output
/// mismatch into a disturbance estimate.
#[derive(Debug, Clone)]
pub struct ObserverState {
    model_plant: Plant,
    gain: f64,
}

impl ObserverState {
    /// Creates an observer from the internal model, estimate gain, and
    /// sample period.
    pub fn new(model: IpdtModel, gain: f64, dt: f64) -> Result<Self> {
        if !gain.is_finite() {
            return Err(Error::invalid(format_args!(
                "observer gain must be finite, got {gain}"
            )));
        }
        Ok(Self {
            model_plant: Plant::new(model, dt)?,
            gain,
        })
    }

    /// Disturbance estimate for the current states: `gain · (y − y_model)`.
    pub fn estimate(&self, y: f64) -> f64 {
        self.gain * (y - self.model_plant.output())
    }

    /// Returns the estimate from pre-advance states, then advances the
    /// internal model one step with the pre-correction controller output.
    pub fn step(&mut self, u_pd: f64, y: f64) -> f64 {
        let d_hat = self.estimate(y);
        self.model_plant.step(u_pd);
        d_hat
    }
}

/// Simulation options beyond what the scenario carries.
#[derive(Debug, Clone)]
pub struct SimOptions {
    /// Derivative filter divisor N (filter time constant `td/N`).
    pub derivative_filter_n: f64,
    /// Differentiate the negated measurement instead of the error
    /// (suppresses setpoint kick at the cost of a slower servo edge).
    pub derivative_on_measurement: bool,
    /// Observer gain; defaults to the controller's proportional gain.
    pub observer_gain: Option<f64>,
    /// Observer's internal plant model; defaults to the simulated plant
    /// (perfect modeling).
    pub observer_model: Option<IpdtModel>,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            derivative_filter_n: DEFAULT_FILTER_N,
            derivative_on_measurement: false,
            observer_gain: None,
            observer_model: None,
        }
    }
}

/// Runs a scenario with default [`SimOptions`].
pub fn simulate(
    model: IpdtModel,
    params: &ControllerParams,
    scenario: &Scenario,
) -> Result<SimTrace> {
    simulate_with(model, params, scenario, &SimOptions::default())
}

/// Runs a scenario.
///
/// Per step `k` (time `t = k·dt`): read the setpoint and disturbance
/// profiles; form the error `e = sp − y`; compute the control law output
/// `u_pd`; when the observer runs, read its estimate `d_hat` from pre-advance
/// states and advance its model with `u_pd`; apply `u = u_pd − d_hat`; record
/// all signals; then advance the plant with `v = u + d`. The trace holds
/// `scenario.steps() + 1` samples — state updates happen between samples, so
/// the final sample is recorded without a trailing update.
///
/// Fails when `dt` exceeds one tenth of the dead time (delay resolution
/// guard) or when a signal leaves the finite range (divergence, reported
/// with its step).
pub fn simulate_with(
    model: IpdtModel,
    params: &ControllerParams,
    scenario: &Scenario,
    options: &SimOptions,
) -> Result<SimTrace> {
    let dt = scenario.dt();
    let d = model.dead_time();
    if d > 0.0 && dt > d / 10.0 {
        return Err(Error::invalid(format_args!(
            "step size {dt} s is too coarse for dead time {d} s (need dt <= d/10)"
        )));
    }

    let n = scenario.steps();
    let mut plant = Plant::new(model, dt)?;
    let mut controller = ControllerState::with_filter(params, options.derivative_filter_n)?;
    let mut observer = if scenario.dob_enabled() {
        let observer_model = options.observer_model.unwrap_or(model);
        let gain = options.observer_gain.unwrap_or(params.kc());
        Some(ObserverState::new(observer_model, gain, dt)?)
    } else {
        None
    };

    let mut t = Vec::with_capacity(n + 1);
    let mut sp = Vec::with_capacity(n + 1);
    let mut y_arr = Vec::with_capacity(n + 1);
    let mut u_arr = Vec::with_capacity(n + 1);
    let mut d_arr = Vec::with_capacity(n + 1);
    let mut d_hat_arr = Vec::with_capacity(n + 1);

    for k in 0..=n {
        let time = k as f64 * dt;
        let setpoint = scenario.setpoint().value(time);
        let disturbance = scenario.disturbance().value(time);
        let y = plant.output();
        let e = setpoint - y;
        let u_pd = if options.derivative_on_measurement {
            controller.step_split(e, -y, dt)
        } else {
            controller.step(e, dt)
        };
        let d_hat = match observer.as_mut() {
            Some(obs) => obs.step(u_pd, y),
            None => 0.0,
        };
        let u = u_pd - d_hat;
        if !u.is_finite() || !y.is_finite() {
            return Err(Error::Diverged { step: k, time });
        }

        t.push(time);
        sp.push(setpoint);
        y_arr.push(y);
        u_arr.push(u);
        d_arr.push(disturbance);
        d_hat_arr.push(d_hat);

        if k < n {
            plant.step(u + disturbance);
        }
    }

    Ok(SimTrace::from_simulation(
        dt, t, sp, y_arr, u_arr, d_arr, d_hat_arr,
    ))
}
