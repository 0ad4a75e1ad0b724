//! Attacker-side candidate verification against a public key.

use curve_core::{reference_scalar_mul, AffinePoint};

use crate::cmta::{KeyCandidate, Polarity};

/// Reconstructs the full scalar as 1 ∥ candidate bits (the known msb
/// prepended), multiplies the base point and compares with the public key.
/// Both polarities are tried; reports whether the candidate matched as-is
/// (direct) or after bitwise inversion (complement).
pub fn verify_candidate(
    candidate: &KeyCandidate,
    public: &AffinePoint,
    base: &AffinePoint,
) -> Option<Polarity> {
    let check = |bits: &[bool]| -> bool {
        let mut full = Vec::with_capacity(bits.len() + 1);
        full.push(true);
        full.extend_from_slice(bits);
        reference_scalar_mul(&full, base) == *public
    };
    if check(&candidate.bits) {
        return Some(Polarity::Direct);
    }
    if check(&candidate.complemented().bits) {
        return Some(Polarity::Complement);
    }
    None
}
