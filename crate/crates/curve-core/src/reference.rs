//! Reference scalar multiplication over affine formulas.
//!
//! Left-to-right double-and-add built entirely on [`affine_add`], sharing no
//! code with the projective complete-addition path. This is the correctness
//! oracle every ladder result is checked against.

use crate::point::{affine_add, AffinePoint};

/// Computes k·P for a non-negative scalar given as bits, most significant
/// first. Leading zero bits and the empty slice (k = 0) are both fine.
pub fn reference_scalar_mul(bits: &[bool], p: &AffinePoint) -> AffinePoint {
    let mut acc = AffinePoint::IDENTITY;
    for &bit in bits {
        acc = affine_add(&acc, &acc).expect("affine doubling is total here");
        if bit {
            acc = affine_add(&acc, p).expect("affine addition is total here");
        }
    }
    acc
}

/// Expands a big-endian hex string into msb-first bits, dropping leading
/// zeros (so "05" yields `[1, 0, 1]`).
pub fn bits_from_hex(s: &str) -> Option<Vec<bool>> {
    let s = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    let mut bits = Vec::with_capacity(s.len() * 4);
    for ch in s.chars() {
        let nibble = ch.to_digit(16)? as u8;
        for i in (0..4).rev() {
            bits.push((nibble >> i) & 1 == 1);
        }
    }
    while bits.first() == Some(&false) {
        bits.remove(0);
    }
    Some(bits)
}

/// Packs msb-first bits into a big-endian hex string (no truncation of
/// leading zeros; the bit length is preserved via padding to whole nibbles).
pub fn bits_to_hex(bits: &[bool]) -> String {
    if bits.is_empty() {
        return "0".to_string();
    }
    let pad = (4 - bits.len() % 4) % 4;
    let mut out = String::with_capacity(bits.len() / 4 + 1);
    let mut nibble = 0u8;
    let mut count = pad;
    for &b in bits {
        nibble = (nibble << 1) | b as u8;
        count += 1;
        if count == 4 {
            out.push(char::from_digit(nibble as u32, 16).unwrap());
            nibble = 0;
            count = 0;
        }
    }
    out
}
