//! Montgomery ladder execution over a small machine model: an 11-register
//! file, a modular ALU, an FSM, a controller and a cycle counter. Every run
//! yields the result point and a per-cycle [`EventLog`] whose (unit, kind)
//! stream is identical for every slot; key dependence is confined to
//! register addresses and data words, mirroring how a balanced hardware
//! ladder actually leaks.

mod event;
mod formula;
mod ladder;
mod regfile;
mod scalar;
mod schedule;

pub use event::{slot_geometry, Event, EventKind, EventLog, Unit, Word, ZERO_WORD};
pub use formula::AluOp;
pub use ladder::{montgomery_ladder, randomized_ladder};
pub use regfile::{PointHome, RegisterFileModel, BOUNCE_REG, R0_HOME, R1_HOME, REGISTER_COUNT, TEMP_BASE};
pub use scalar::{RandomBits, Scalar};
pub use schedule::{
    schedule_point_op, PointOpKind, COPYBACK_CYCLES, CYCLES_PER_SLOT, POINT_OP_CYCLES,
    PREAMBLE_CYCLES,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LadderError {
    #[error("scalar's most significant bit must be 1")]
    MsbNotSet,
    #[error("invalid hex string")]
    BadHex,
    #[error("random bit string has {have} bits, ladder needs exactly {need}")]
    RandLengthMismatch { have: usize, need: usize },
    #[error("random value needs {have} bits but only {need} are consumed")]
    RandWiderThanScalar { have: usize, need: usize },
    #[error("base point must be on the curve and not the identity")]
    BadBasePoint,
    #[error("event cycles must be non-decreasing")]
    NonMonotonicCycles,
}
