//! secp256k1 arithmetic for the trace laboratory.
//!
//! Two independent routes to the same curve group live here on purpose:
//! the branch-free projective [`complete_add`] that the ladder engine
//! schedules onto hardware-style micro-ops, and a textbook affine
//! double-and-add ([`reference_scalar_mul`]) used only as an oracle.
//! All operations are pure functions over immutable values.

mod field;
mod params;
mod point;
mod reference;

pub use field::{FieldElement, MODULUS};
pub use params::{generator, CurveParams, A, B, B3, GX_HEX, GY_HEX, N_HEX};
pub use point::{affine_add, complete_add, double, AffinePoint, ProjectivePoint};
pub use reference::{bits_from_hex, bits_to_hex, reference_scalar_mul};

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CurveError {
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("invalid hex string")]
    BadHex,
    #[error("value not in canonical range")]
    NotCanonical,
}
