//! Single-trace horizontal attacks and the designer-side evaluation around
//! them: slot slicing, comparison-to-the-mean extraction, per-sample
//! correctness profiling, class-mean diagnostics, automated SPA and
//! candidate verification against a public key.
//!
//! All attack math runs in f64 with exact comparisons; ties are handled by
//! rule (a value equal to the mean reads as bit 0), never by tolerance.

mod cmta;
mod slots;
mod spa;
mod verify;

pub use cmta::{
    class_means, cmta_extract, correctness, correctness_profile, CorrectnessProfile,
    KeyCandidate, Polarity,
};
pub use slots::{slice_slots, SlotView};
pub use spa::{auto_spa, SpaFinding};
pub use verify::verify_candidate;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AttackError {
    #[error("slot geometry (offset {offset}, slot_len {slot_len}, num_slots {num_slots}) exceeds trace of {samples} samples")]
    GeometryOutOfBounds {
        offset: u64,
        slot_len: u64,
        num_slots: u64,
        samples: u64,
    },
    #[error("slot geometry overflows")]
    GeometryOverflow,
    #[error("candidate has {candidate} bits, key processes {key}")]
    LengthMismatch { candidate: usize, key: usize },
    #[error("both bit classes must be non-empty")]
    EmptyClass,
    #[error("gap ratio must be in (0, 1], got {0}")]
    BadGapRatio(f64),
}
