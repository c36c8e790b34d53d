//! Command-line interface: argument parsing, override resolution, command
//! dispatch, and the exit-code contract (0 success, 1 validation error,
//! 2 numeric failure).

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ipdt_core::{
    measure_margins, tune_pd, ControllerParams, DesignSpec, IpdtModel, TuningMethod, DEFAULT_W_MAX,
    DEFAULT_W_MIN,
};

use crate::error::{CliError, CliResult};
use crate::output::{
    render_comparison, render_margins, render_sweep, render_tune, sweep_plot_script, Format,
    MarginsOutput, TuneOutput,
};
use crate::run::{run_comparison, run_single, run_sweep, ComparisonReport, MarginsRow};
use crate::scenario::{db_to_linear, deg_to_rad, DobMode, ScenarioSpec};

/// Closed-loop tuning and simulation toolkit for integrating-plus-dead-time
/// processes.
#[derive(Debug, Parser)]
#[command(name = "ipdt", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Directory for trace and plot files.
    #[arg(long, global = true, env = "IPDT_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Override the scenario's step size [s].
    #[arg(long, global = true)]
    dt: Option<f64>,

    /// Override the scenario's run length [s].
    #[arg(long, global = true)]
    horizon: Option<f64>,

    /// Override the scenario's derivative filter divisor N.
    #[arg(long, global = true)]
    filter_n: Option<f64>,

    /// Override the observer gain (default: the controller's proportional
    /// gain).
    #[arg(long, global = true)]
    observer_gain: Option<f64>,

    /// Override the scenario's observer policy (auto, on, off).
    #[arg(long, global = true, value_parser = parse_dob)]
    dob: Option<DobMode>,
}

fn parse_dob(s: &str) -> Result<DobMode, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Design PD parameters from gain/phase-margin and settling-time specs.
    Tune(TuneArgs),
    /// Measure stability margins of a plant/controller loop.
    Margins(MarginsArgs),
    /// Run one scenario with one controller: writes the trace, prints metrics.
    Simulate(SimulateArgs),
    /// Run one scenario across tuning methods and compare metrics.
    Compare(CompareArgs),
    /// Run a design-parameter sweep: one tuned simulation per value.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct PlantArgs {
    /// Plant integrator gain (default: the reference plant).
    #[arg(long, default_value_t = 0.0506)]
    kp: f64,

    /// Plant dead time [s] (default: the reference plant).
    #[arg(long, default_value_t = 6.0)]
    d: f64,
}

#[derive(Debug, Args)]
struct TuneArgs {
    #[command(flatten)]
    plant: PlantArgs,

    /// Settling-time specification [s].
    #[arg(long)]
    ts: f64,

    /// Gain-margin specification as a linear ratio (default 2).
    #[arg(long, conflicts_with = "am_db")]
    am: Option<f64>,

    /// Gain-margin specification in decibels.
    #[arg(long)]
    am_db: Option<f64>,

    /// Phase-margin specification in radians (default pi).
    #[arg(long, conflicts_with = "pm_deg")]
    pm: Option<f64>,

    /// Phase-margin specification in degrees.
    #[arg(long)]
    pm_deg: Option<f64>,
}

#[derive(Debug, Args)]
struct MarginsArgs {
    #[command(flatten)]
    plant: PlantArgs,

    /// Controller proportional gain.
    #[arg(long)]
    kc: f64,

    /// Controller integral time [s] (omit for P/PD control).
    #[arg(long)]
    ti: Option<f64>,

    /// Controller derivative time [s] (omit for P/PI control).
    #[arg(long)]
    td: Option<f64>,

    /// Lower edge of the scanned frequency band [rad/s].
    #[arg(long, default_value_t = DEFAULT_W_MIN)]
    w_min: f64,

    /// Upper edge of the scanned frequency band [rad/s].
    #[arg(long, default_value_t = DEFAULT_W_MAX)]
    w_max: f64,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Builtin scenario name or scenario file path.
    #[arg(long)]
    scenario: String,

    /// Tuning method override (wang-cluett, sree-chidambaram, ali-majhi,
    /// proposed-pd).
    #[arg(long)]
    method: Option<String>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Builtin scenario name or scenario file path.
    #[arg(long)]
    scenario: String,

    /// Comma-separated method list, or "all".
    #[arg(long, default_value = "all")]
    methods: String,

    /// Also write one trace file per method into the output directory.
    #[arg(long)]
    traces: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Builtin sweep scenario name or scenario file path.
    #[arg(long)]
    scenario: String,

    /// Also write a gnuplot script next to the trace files.
    #[arg(long)]
    plot_script: bool,
}

struct Overrides {
    dt: Option<f64>,
    horizon: Option<f64>,
    filter_n: Option<f64>,
    observer_gain: Option<f64>,
    dob: Option<DobMode>,
}

impl Overrides {
    fn apply(&self, spec: &mut ScenarioSpec) {
        if let Some(dt) = self.dt {
            spec.dt = dt;
        }
        if let Some(horizon) = self.horizon {
            spec.horizon = horizon;
        }
        if let Some(n) = self.filter_n {
            spec.filter_n = n;
        }
        if let Some(gain) = self.observer_gain {
            spec.observer_gain = Some(gain);
        }
        if let Some(dob) = self.dob {
            spec.dob = dob;
        }
    }
}

/// Parses a comma-separated method list ("all" for the full canonical set),
/// rejecting duplicates so each requested method appears exactly once.
fn parse_methods(list: &str) -> CliResult<Vec<TuningMethod>> {
    if list.trim() == "all" {
        return Ok(TuningMethod::ALL.to_vec());
    }
    let mut methods = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let method: TuningMethod = part.parse().map_err(CliError::input)?;
        if methods.contains(&method) {
            return Err(CliError::input(format!(
                "method {:?} listed more than once",
                method.label()
            )));
        }
        methods.push(method);
    }
    if methods.is_empty() {
        return Err(CliError::input("no methods requested"));
    }
    Ok(methods)
}

fn load_scenario(source: &str, overrides: &Overrides) -> CliResult<ScenarioSpec> {
    let mut spec = ScenarioSpec::resolve(source)?;
    overrides.apply(&mut spec);
    Ok(spec)
}

fn execute(cli: Cli) -> CliResult<()> {
    let overrides = Overrides {
        dt: cli.dt,
        horizon: cli.horizon,
        filter_n: cli.filter_n,
        observer_gain: cli.observer_gain,
        dob: cli.dob,
    };
    match cli.command {
        Command::Tune(args) => {
            let model = IpdtModel::new(args.plant.kp, args.plant.d)?;
            let am = args.am_db.map(db_to_linear).or(args.am).unwrap_or(2.0);
            let pm = args.pm_deg.map(deg_to_rad).or(args.pm).unwrap_or(PI);
            let spec = DesignSpec::new(am, pm, args.ts)?;
            let report = tune_pd(model, spec)?;
            print!(
                "{}",
                render_tune(&TuneOutput::new(model, &report), cli.format)?
            );
        }
        Command::Margins(args) => {
            let model = IpdtModel::new(args.plant.kp, args.plant.d)?;
            let params = ControllerParams::new(args.kc, args.ti, args.td, "cli")?;
            let report = measure_margins(model, &params, args.w_min, args.w_max)?;
            let output = MarginsOutput {
                kp: args.plant.kp,
                d: args.plant.d,
                kc: args.kc,
                ti: args.ti,
                td: args.td,
                margins: MarginsRow::from(&report),
            };
            print!("{}", render_margins(&output, cli.format)?);
        }
        Command::Simulate(args) => {
            let spec = load_scenario(&args.scenario, &overrides)?;
            let method = args
                .method
                .as_deref()
                .map(str::parse::<TuningMethod>)
                .transpose()
                .map_err(CliError::input)?;
            let (row, _) = run_single(&spec, method, Some(&cli.out_dir))?;
            let report = ComparisonReport {
                scenario: spec.name.clone(),
                horizon: spec.horizon,
                dt: spec.dt,
                rows: vec![row],
            };
            print!("{}", render_comparison(&report, cli.format)?);
        }
        Command::Compare(args) => {
            let spec = load_scenario(&args.scenario, &overrides)?;
            let methods = parse_methods(&args.methods)?;
            let trace_dir = args.traces.then(|| cli.out_dir.clone());
            let report = run_comparison(&spec, &methods, trace_dir.as_deref())?;
            print!("{}", render_comparison(&report, cli.format)?);
        }
        Command::Sweep(args) => {
            let spec = load_scenario(&args.scenario, &overrides)?;
            let report = run_sweep(&spec, Some(&cli.out_dir))?;
            print!("{}", render_sweep(&report, cli.format)?);
            if args.plot_script {
                let script = sweep_plot_script(&report)?;
                let path = cli.out_dir.join(format!("{}_plot.gp", spec.name));
                std::fs::write(&path, script)
                    .map_err(|e| CliError::io(path.display().to_string(), e))?;
                eprintln!("plot script written to {}", path.display());
            }
        }
    }
    Ok(())
}

/// Entry point: parses arguments, runs the command, and maps failures to
/// the exit-code contract. Messages go to the diagnostic stream.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
