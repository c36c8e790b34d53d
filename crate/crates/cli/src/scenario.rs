//! Serializable scenario descriptions: the unit of reproducibility.
//!
//! A scenario file pins everything a run needs — plant, controller source
//! (tuning method, explicit parameters, or a design spec for the tuned PD
//! rule), setpoint and disturbance profiles, horizon, step size, observer
//! policy, and derivative-filter divisor — in a human-editable TOML document
//! with a versioned `schema` field. Builtin scenarios cover the standard
//! benchmark suite on the reference plant (kp = 0.0506, d = 6 s).

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ipdt_core::{
    tune_pd, ControllerParams, DesignSpec, IpdtModel, Scenario, SignalProfile, TuningMethod,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Current scenario file schema version.
pub const SCHEMA_VERSION: u32 = 1;

/// Names of the builtin scenarios, in registry order.
pub const BUILTIN_NAMES: [&str; 6] = [
    "step_tracking",
    "servo_staircase",
    "regulatory",
    "servo_plus_regulatory",
    "sweep_ts",
    "sweep_am",
];

/// Plant description in a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantSpec {
    /// Integrator velocity gain.
    pub kp: f64,
    /// Dead time in seconds.
    pub d: f64,
}

impl PlantSpec {
    /// Converts to the validated model type.
    pub fn to_model(self) -> CliResult<IpdtModel> {
        Ok(IpdtModel::new(self.kp, self.d)?)
    }
}

/// Explicit controller parameters in a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    /// Proportional gain.
    pub kc: f64,
    /// Integral time, seconds (omit for P/PD control).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ti: Option<f64>,
    /// Derivative time, seconds (omit for P/PI control).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub td: Option<f64>,
}

impl ParamsSpec {
    /// Converts to validated controller parameters.
    pub fn to_params(self) -> CliResult<ControllerParams> {
        Ok(ControllerParams::new(
            self.kc, self.ti, self.td, "explicit",
        )?)
    }
}

/// Design-specification inputs for the tuned PD rule (radians / linear
/// ratio / seconds).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignInput {
    /// Gain margin as a linear ratio.
    pub am: f64,
    /// Phase margin in radians.
    pub phi_m: f64,
    /// Settling-time specification in seconds.
    pub ts: f64,
}

impl DesignInput {
    /// Converts to the validated design-spec type.
    pub fn to_spec(self) -> CliResult<DesignSpec> {
        Ok(DesignSpec::new(self.am, self.phi_m, self.ts)?)
    }
}

/// Observer policy for a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DobMode {
    /// Observer on only for the tuned PD method when the scenario applies a
    /// nonzero disturbance (the PD rule has no integral action to reject it;
    /// the baseline PIDs do).
    #[default]
    Auto,
    /// Observer on for every method.
    On,
    /// Observer off for every method.
    Off,
}

impl FromStr for DobMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            "on" => Ok(Self::On),
            "off" => Ok(Self::Off),
            other => Err(format!(
                "unknown observer mode {other:?} (use auto, on, or off)"
            )),
        }
    }
}

impl fmt::Display for DobMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Auto => "auto",
            Self::On => "on",
            Self::Off => "off",
        })
    }
}

/// Which design-spec field a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    /// Settling-time specification.
    Ts,
    /// Gain-margin specification.
    Am,
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ts => "ts",
            Self::Am => "am",
        })
    }
}

/// Sweep block of a scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Swept design parameter.
    pub parameter: SweepParameter,
    /// Values to sweep, in run order.
    pub values: Vec<f64>,
}

fn default_filter_n() -> f64 {
    ipdt_core::DEFAULT_FILTER_N
}

/// Complete serialized scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    /// File format version; must equal [`SCHEMA_VERSION`].
    pub schema: u32,
    /// Scenario name (used for report and trace-file naming).
    pub name: String,
    /// Plant under control.
    pub plant: PlantSpec,
    /// Tuning method supplying the controller (when neither explicit
    /// parameters nor a compare-time method list applies).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Explicit controller parameters (mutually exclusive with `method`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsSpec>,
    /// Design specification for the tuned PD rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design: Option<DesignInput>,
    /// Setpoint breakpoints `[time, value]`, first at time 0.
    pub setpoint: Vec<[f64; 2]>,
    /// Disturbance breakpoints `[time, value]`, first at time 0.
    pub disturbance: Vec<[f64; 2]>,
    /// Run length in seconds.
    pub horizon: f64,
    /// Fixed step size in seconds.
    pub dt: f64,
    /// Observer policy.
    #[serde(default)]
    pub dob: DobMode,
    /// Observer gain override (default: the controller's proportional gain).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observer_gain: Option<f64>,
    /// Derivative filter divisor N.
    #[serde(default = "default_filter_n")]
    pub filter_n: f64,
    /// Sweep block (present only for sweep scenarios).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

impl ScenarioSpec {
    /// Structural validation beyond what serde enforces.
    pub fn validate(&self) -> CliResult<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::input(format!(
                "unsupported scenario schema version {} (this build reads version {SCHEMA_VERSION})",
                self.schema
            )));
        }
        if self.method.is_some() && self.params.is_some() {
            return Err(CliError::input(
                "scenario sets both `method` and explicit `params`; pick one",
            ));
        }
        if let Some(method) = &self.method {
            method.parse::<TuningMethod>().map_err(CliError::input)?;
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(CliError::input("sweep needs at least one value"));
            }
        }
        // Exercise the core validators so a bad file fails at load time.
        self.plant.to_model()?;
        if let Some(params) = self.params {
            params.to_params()?;
        }
        if let Some(design) = self.design {
            design.to_spec()?;
        }
        self.setpoint_profile()?;
        self.disturbance_profile()?;
        self.to_scenario(false)?;
        Ok(())
    }

    /// The setpoint profile as a core signal.
    pub fn setpoint_profile(&self) -> CliResult<SignalProfile> {
        Ok(SignalProfile::new(
            self.setpoint.iter().map(|&[t, v]| (t, v)).collect(),
        )?)
    }

    /// The disturbance profile as a core signal.
    pub fn disturbance_profile(&self) -> CliResult<SignalProfile> {
        Ok(SignalProfile::new(
            self.disturbance.iter().map(|&[t, v]| (t, v)).collect(),
        )?)
    }

    /// Builds the core scenario with the observer flag already resolved.
    pub fn to_scenario(&self, dob_enabled: bool) -> CliResult<Scenario> {
        Ok(Scenario::new(
            self.setpoint_profile()?,
            self.disturbance_profile()?,
            self.horizon,
            self.dt,
        )?
        .with_observer(dob_enabled))
    }

    /// Resolves the observer flag for one method under this scenario's
    /// policy: `auto` enables it only for the tuned PD rule when the
    /// disturbance profile is nonzero.
    pub fn dob_for(&self, method: TuningMethod) -> CliResult<bool> {
        Ok(match self.dob {
            DobMode::On => true,
            DobMode::Off => false,
            DobMode::Auto => {
                method == TuningMethod::ProposedPd && !self.disturbance_profile()?.is_zero()
            }
        })
    }

    /// The design spec to tune against (scenario's own, or the reference
    /// design Am = 2, phi_m = π, Ts = 40 s).
    pub fn design_spec(&self) -> CliResult<DesignSpec> {
        match self.design {
            Some(d) => d.to_spec(),
            None => Ok(ipdt_core::benchmark_design()),
        }
    }

    /// Resolves the controller for one method: the tuned PD rule runs the
    /// design procedure against this scenario's plant and design spec; the
    /// published baseline rules carry fixed parameter sets.
    pub fn params_for(&self, method: TuningMethod) -> CliResult<ControllerParams> {
        if method == TuningMethod::ProposedPd {
            let report = tune_pd(self.plant.to_model()?, self.design_spec()?)?;
            Ok(report.params)
        } else {
            Ok(ipdt_core::tuning::baseline_params(method))
        }
    }

    /// Parses a scenario from TOML text.
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let spec: Self =
            toml::from_str(text).map_err(|e| CliError::input(format!("scenario parse: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Serializes the scenario to TOML text (the round-trip fixed point).
    pub fn to_toml(&self) -> CliResult<String> {
        toml::to_string(self).map_err(|e| CliError::input(format!("scenario serialize: {e}")))
    }

    /// Loads a scenario from a builtin name or a TOML file path.
    pub fn resolve(source: &str) -> CliResult<Self> {
        if let Some(spec) = builtin_scenario(source) {
            return Ok(spec);
        }
        let path = Path::new(source);
        if path.exists() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(path.display().to_string(), e))?;
            return Self::from_toml(&text);
        }
        Err(CliError::input(format!(
            "unknown scenario {source:?}: not a builtin ({}) and no such file",
            BUILTIN_NAMES.join(", ")
        )))
    }
}

/// Reference plant of the benchmark suite.
fn reference_plant() -> PlantSpec {
    let model = ipdt_core::benchmark_model();
    PlantSpec {
        kp: model.kp(),
        d: model.dead_time(),
    }
}

/// Reference design specification (Am = 2, phi_m = π, Ts = 40 s).
fn reference_design() -> DesignInput {
    let spec = ipdt_core::benchmark_design();
    DesignInput {
        am: spec.am(),
        phi_m: spec.phi_m(),
        ts: spec.ts(),
    }
}

fn base_spec(
    name: &str,
    setpoint: Vec<[f64; 2]>,
    disturbance: Vec<[f64; 2]>,
    horizon: f64,
) -> ScenarioSpec {
    ScenarioSpec {
        schema: SCHEMA_VERSION,
        name: name.to_owned(),
        plant: reference_plant(),
        method: None,
        params: None,
        design: Some(reference_design()),
        setpoint,
        disturbance,
        horizon,
        dt: 0.01,
        dob: DobMode::Auto,
        observer_gain: None,
        filter_n: ipdt_core::DEFAULT_FILTER_N,
        sweep: None,
    }
}

/// Returns a builtin scenario by name, or `None` for unknown names.
///
/// The registry:
/// - `step_tracking` — unit setpoint step at t = 0, no disturbance, 200 s;
/// - `servo_staircase` — setpoint 1 → 3 → 2 at t = 0/100/200, 300 s;
/// - `regulatory` — zero setpoint, unit disturbance at t = 0, 200 s;
/// - `servo_plus_regulatory` — unit setpoint step plus a unit disturbance
///   entering at t = 100 s, 200 s;
/// - `sweep_ts` — unit step; tuned design swept over Ts ∈ {40, 50, 60, 70}
///   at Am = 2, phi_m = π;
/// - `sweep_am` — unit step; tuned design swept over Am ∈ {1, 1.5, 2, 2.5}
///   at Ts = 40, phi_m = π.
pub fn builtin_scenario(name: &str) -> Option<ScenarioSpec> {
    let spec = match name {
        "step_tracking" => base_spec("step_tracking", vec![[0.0, 1.0]], vec![[0.0, 0.0]], 200.0),
        "servo_staircase" => base_spec(
            "servo_staircase",
            vec![[0.0, 1.0], [100.0, 3.0], [200.0, 2.0]],
            vec![[0.0, 0.0]],
            300.0,
        ),
        "regulatory" => base_spec("regulatory", vec![[0.0, 0.0]], vec![[0.0, 1.0]], 200.0),
        "servo_plus_regulatory" => base_spec(
            "servo_plus_regulatory",
            vec![[0.0, 1.0]],
            vec![[0.0, 0.0], [100.0, 1.0]],
            200.0,
        ),
        "sweep_ts" => {
            let mut spec = base_spec("sweep_ts", vec![[0.0, 1.0]], vec![[0.0, 0.0]], 200.0);
            spec.sweep = Some(SweepSpec {
                parameter: SweepParameter::Ts,
                values: vec![40.0, 50.0, 60.0, 70.0],
            });
            spec
        }
        "sweep_am" => {
            let mut spec = base_spec("sweep_am", vec![[0.0, 1.0]], vec![[0.0, 0.0]], 200.0);
            spec.sweep = Some(SweepSpec {
                parameter: SweepParameter::Am,
                values: vec![1.0, 1.5, 2.0, 2.5],
            });
            spec
        }
        _ => return None,
    };
    Some(spec)
}

/// Degrees → radians.
pub fn deg_to_rad(deg: f64) -> f64 {
    deg * PI / 180.0
}

/// Decibels → linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}
