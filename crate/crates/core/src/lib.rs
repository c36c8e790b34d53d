//! Tuning and closed-loop simulation toolkit for integrating processes with
//! dead time.
//!
//! The crate covers the full loop-design workflow for the plant
//! `G(s) = (kp/s)·e^(−d·s)`:
//!
//! - [`tuning`] computes PD controller settings from a settling-time and
//!   gain/phase-margin specification, and carries the published baseline
//!   controller settings used for comparison studies;
//! - [`freq`] evaluates the open-loop frequency response and measures gain
//!   and phase margins;
//! - [`sim`] runs deterministic fixed-step closed-loop simulations, with an
//!   optional disturbance observer for regulatory rejection;
//! - [`metrics`] reduces recorded traces to integral indices (ISE, IAE,
//!   ITAE), control energy, and step-response specifications;
//! - [`types`] holds the shared domain types and [`error`] the error type.
//!
//! The crate is `no_std`-compatible (it needs `alloc`); the default `std`
//! feature switches the math kernels to the platform libm and implements
//! [`std::error::Error`]-compatible traits via `core::error::Error`.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(feature = "std")]
extern crate std;

mod float;

pub mod error;
pub mod freq;
pub mod metrics;
pub mod sim;
pub mod tuning;
pub mod types;

pub use error::{Error, Result};
pub use freq::{
    measure_margins, measure_margins_default, Crossover, MarginReport, DEFAULT_W_MAX, DEFAULT_W_MIN,
};
pub use metrics::{
    control_energy, index_report, integral_indices, servo_segment_indices, step_specs, IndexReport,
    SegmentIndices, StepSpecs, SETTLING_BAND,
};
pub use sim::{
    simulate, simulate_with, ControllerState, DelayLine, ObserverState, Plant, SimOptions,
    DEFAULT_FILTER_N,
};
pub use tuning::{
    benchmark_design, benchmark_model, crossover_frequencies, tune_pd, TuneReport, TuningMethod,
    PROPOSED_LABEL,
};
pub use types::{
    ControllerParams, CrossoverPair, DesignSpec, IpdtModel, Scenario, SignalProfile, SimTrace,
};
