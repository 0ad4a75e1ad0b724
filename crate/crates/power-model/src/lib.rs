//! Turns an event log into synthetic power traces: whole-design or
//! per-block, coarse or fine sampling, optionally noisy. Plays the role a
//! netlist power simulator would; units are arbitrary, structure is what
//! matters.

mod model;
mod synth;
mod trace;

pub use model::{
    addr_coefficients, hamming_distance, hamming_weight, Block, LeakageModel, UnitMask,
    ADDR_COEFF_SPACING, DEFAULT_ADDR_SEED,
};
pub use synth::{
    compress_trace, cycle_power, intra_cycle_template, per_block_trace, selective_noise,
    synthesize_trace,
};
pub use trace::Trace;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PowerError {
    #[error("samples_per_cycle must be at least 1")]
    ZeroSamplesPerCycle,
    #[error("sigma must be finite and non-negative, got {0}")]
    BadSigma(f64),
    #[error("trace has {samples} samples, geometry implies {expected}")]
    GeometryMismatch { samples: u64, expected: u64 },
    #[error("intra-slot cycle {cycle} out of range (cycles_per_slot = {cycles_per_slot})")]
    CycleOutOfRange { cycle: u64, cycles_per_slot: u64 },
}
