//! PD tuning from gain-margin / phase-margin / settling-time specifications,
//! plus the registry of literature baseline parameters.
//!
//! The design places the phase and gain crossover frequencies from the
//! desired settling time (`ω_pc = 2π/ts`, `ω_gc = 4π/ts`), inverts the loop
//! phase condition at `ω_gc` for the derivative time, and inverts the loop
//! magnitude condition at `ω_pc` for the proportional gain.

use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::float;
use crate::types::{ControllerParams, CrossoverPair, DesignSpec, IpdtModel};

/// Guard distance (radians) from a tangent pole below which a specification
/// is rejected as degenerate instead of producing an enormous derivative
/// time.
pub const TANGENT_POLE_GUARD: f64 = 1e-9;

/// Label attached to parameters produced by [`tune_pd`].
pub const PROPOSED_LABEL: &str = "proposed-pd";

/// Result of a PD design: the parameters, the crossover pair they target,
/// the specification they came from, and whether the raw derivative time
/// evaluated negative and had its sign dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct TuneReport {
    /// Designed PD parameters (`ti` absent), labeled [`PROPOSED_LABEL`].
    pub params: ControllerParams,
    /// The crossover frequencies the design targets.
    pub crossovers: CrossoverPair,
    /// The specification the design came from.
    pub spec: DesignSpec,
    /// True when the raw tangent in the derivative-time formula was negative
    /// and the absolute value was taken. The by-construction loop identities
    /// hold exactly only when this is false.
    pub td_sign_flipped: bool,
}

/// Places the crossover frequencies from a desired settling time:
/// `w_pc = 2π/ts`, `w_gc = 4π/ts` (so `w_gc = 2·w_pc` exactly).
pub fn crossover_frequencies(ts: f64) -> Result<CrossoverPair> {
    if !ts.is_finite() || ts <= 0.0 {
        return Err(Error::invalid(format_args!(
            "settling time must be finite and positive, got {ts}"
        )));
    }
    CrossoverPair::new(2.0 * PI / ts, 4.0 * PI / ts)
}

/// Derivative time from the loop phase condition at the gain crossover:
/// `td = |tan(phi_m + w_gc·d − π/2)| / w_gc`.
///
/// Returns the (always nonnegative) derivative time and a flag reporting
/// whether the raw tangent was negative and its sign dropped. Rejects
/// arguments within [`TANGENT_POLE_GUARD`] of a tangent pole.
pub fn pd_derivative_time(phi_m: f64, w_gc: f64, d: f64) -> Result<(f64, bool)> {
    if !phi_m.is_finite() {
        return Err(Error::invalid(format_args!(
            "phase margin must be finite, got {phi_m}"
        )));
    }
    if !w_gc.is_finite() || w_gc <= 0.0 {
        return Err(Error::invalid(format_args!(
            "gain crossover frequency must be finite and positive, got {w_gc}"
        )));
    }
    if !d.is_finite() || d < 0.0 {
        return Err(Error::invalid(format_args!(
            "dead time must be finite and nonnegative, got {d}"
        )));
    }
    let arg = phi_m + w_gc * d - FRAC_PI_2;
    // Distance from `arg` to the nearest odd multiple of π/2 (tangent pole).
    let offset = float::rem_euclid(arg - FRAC_PI_2, PI);
    if offset.min(PI - offset) < TANGENT_POLE_GUARD {
        return Err(Error::DegenerateSpec {
            tangent_argument: arg,
        });
    }
    let raw = float::tan(arg);
    Ok((float::abs(raw) / w_gc, raw < 0.0))
}

/// Proportional gain from the loop magnitude condition at the phase
/// crossover: `kc = w_pc / (kp · am · sqrt(1 + (td·w_pc)²))`.
///
/// Returns the raw formula value; for a negative-gain plant this is negative
/// and will be rejected by [`ControllerParams`] construction downstream.
pub fn pd_proportional_gain(kp: f64, am: f64, w_pc: f64, td: f64) -> Result<f64> {
    if !kp.is_finite() || kp == 0.0 {
        return Err(Error::invalid(format_args!(
            "process gain must be finite and nonzero, got {kp}"
        )));
    }
    if !am.is_finite() || am <= 0.0 {
        return Err(Error::invalid(format_args!(
            "gain margin must be finite and positive, got {am}"
        )));
    }
    if !w_pc.is_finite() || w_pc <= 0.0 {
        return Err(Error::invalid(format_args!(
            "phase crossover frequency must be finite and positive, got {w_pc}"
        )));
    }
    if !td.is_finite() || td < 0.0 {
        return Err(Error::invalid(format_args!(
            "derivative time must be finite and nonnegative, got {td}"
        )));
    }
    let x = td * w_pc;
    Ok(w_pc / (kp * am * float::sqrt(1.0 + x * x)))
}

/// Full PD design: crossover placement, derivative time, proportional gain.
///
/// The returned parameters carry the label [`PROPOSED_LABEL`] and no
/// integral time.
pub fn tune_pd(model: IpdtModel, spec: DesignSpec) -> Result<TuneReport> {
    let crossovers = crossover_frequencies(spec.ts())?;
    let (td, td_sign_flipped) =
        pd_derivative_time(spec.phi_m(), crossovers.w_gc(), model.dead_time())?;
    let kc = pd_proportional_gain(model.kp(), spec.am(), crossovers.w_pc(), td)?;
    let params = ControllerParams::new(kc, None, Some(td), PROPOSED_LABEL)?;
    Ok(TuneReport {
        params,
        crossovers,
        spec,
        td_sign_flipped,
    })
}

/// The four tuning methods the benchmark harness compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TuningMethod {
    /// Wang-Cluett PID rule (published parameters).
    WangCluett,
    /// Sree-Chidambaram PID rule (published parameters).
    SreeChidambaram,
    /// Ali-Majhi PID rule (published parameters).
    AliMajhi,
    /// The PD design implemented by [`tune_pd`].
    ProposedPd,
}

impl TuningMethod {
    /// All four methods, in canonical comparison order.
    pub const ALL: [TuningMethod; 4] = [
        TuningMethod::WangCluett,
        TuningMethod::SreeChidambaram,
        TuningMethod::AliMajhi,
        TuningMethod::ProposedPd,
    ];

    /// Stable kebab-case identifier, used as the report label and in file
    /// names.
    pub fn label(self) -> &'static str {
        match self {
            TuningMethod::WangCluett => "wang-cluett",
            TuningMethod::SreeChidambaram => "sree-chidambaram",
            TuningMethod::AliMajhi => "ali-majhi",
            TuningMethod::ProposedPd => PROPOSED_LABEL,
        }
    }
}

impl fmt::Display for TuningMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TuningMethod {
    type Err = Error;

    /// Accepts the kebab-case labels, underscore variants, and short
    /// aliases (`wc`, `sree`, `ali`, `proposed`).
    fn from_str(s: &str) -> Result<Self> {
        let mut key = alloc::string::String::new();
        for c in s.chars() {
            key.push(if c == '_' {
                '-'
            } else {
                c.to_ascii_lowercase()
            });
        }
        match key.as_str() {
            "wang-cluett" | "wc" => Ok(TuningMethod::WangCluett),
            "sree-chidambaram" | "sree" => Ok(TuningMethod::SreeChidambaram),
            "ali-majhi" | "ali" => Ok(TuningMethod::AliMajhi),
            "proposed-pd" | "proposed" => Ok(TuningMethod::ProposedPd),
            _ => Err(Error::invalid(format_args!(
                "unknown tuning method '{s}' (expected wang-cluett, sree-chidambaram, \
                 ali-majhi, or proposed-pd)"
            ))),
        }
    }
}

/// Published reference parameters for each method on the benchmark plant.
///
/// These are fixed literature constants, not recomputed: the three PID rows
/// verbatim, and the proposed PD row as published (four decimals). Use
/// [`tune_pd`] for the full-precision proposed design.
pub fn baseline_params(method: TuningMethod) -> ControllerParams {
    let params = match method {
        TuningMethod::WangCluett => ControllerParams::pid(1.2416, 55.065, 1.028),
        TuningMethod::SreeChidambaram => ControllerParams::pid(2.95, 15.0, 3.0),
        TuningMethod::AliMajhi => ControllerParams::pid(3.39, 19.02, 2.94),
        TuningMethod::ProposedPd => ControllerParams::pd(1.5321, 1.0343),
    };
    params
        .expect("baseline constants satisfy parameter invariants")
        .with_label(method.label())
}

/// The benchmark plant every built-in scenario runs on:
/// `kp = 0.0506`, dead time `6 s`.
pub fn benchmark_model() -> IpdtModel {
    IpdtModel::new(0.0506, 6.0).expect("benchmark plant constants are valid")
}

/// The canonical design specification for the benchmark plant:
/// gain margin 2, phase margin π rad, settling time 40 s.
pub fn benchmark_design() -> DesignSpec {
    DesignSpec::new(2.0, PI, 40.0).expect("benchmark specification constants are valid")
}
