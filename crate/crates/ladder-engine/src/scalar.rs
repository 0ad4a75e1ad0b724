//! Scalar and per-iteration random bits, as bit strings.

use crate::LadderError;
use curve_core::bits_from_hex;

/// A scalar as an msb-first bit string with its top bit set.
///
/// The ladder input contract requires the most significant bit to be 1; the
/// constructors enforce it, so a `Scalar` value is always valid ladder input.
/// The bit length l is derived from the value, never supplied separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    bits: Vec<bool>,
}

impl Scalar {
    /// Builds a scalar from msb-first bits. The first bit must be 1.
    pub fn from_bits(bits: Vec<bool>) -> Result<Scalar, LadderError> {
        if bits.first() != Some(&true) {
            return Err(LadderError::MsbNotSet);
        }
        Ok(Scalar { bits })
    }

    /// Parses a big-endian hex string; leading zeros are dropped so the
    /// derived bit length starts at the top set bit.
    pub fn from_hex(s: &str) -> Result<Scalar, LadderError> {
        let bits = bits_from_hex(s).ok_or(LadderError::BadHex)?;
        Scalar::from_bits(bits)
    }

    pub fn from_u64(v: u64) -> Result<Scalar, LadderError> {
        let bits: Vec<bool> = (0..64)
            .rev()
            .map(|i| (v >> i) & 1 == 1)
            .skip_while(|&b| !b)
            .collect();
        Scalar::from_bits(bits)
    }

    /// Bit length l (the msb is counted).
    pub fn bit_len(&self) -> usize {
        self.bits.len()
    }

    /// All bits, msb first.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// The bits the ladder loop processes: everything below the msb, in slot
    /// order (slot i holds bit k_{l-2-i}).
    pub fn processed_bits(&self) -> &[bool] {
        &self.bits[1..]
    }

    pub fn to_hex(&self) -> String {
        curve_core::bits_to_hex(&self.bits)
    }
}

/// The per-iteration random bits of the randomized ladder, one per processed
/// key bit, indexed by slot (index 0 is consumed by the first slot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomBits {
    bits: Vec<bool>,
}

impl RandomBits {
    pub fn from_bits(bits: Vec<bool>) -> RandomBits {
        RandomBits { bits }
    }

    pub fn zeros(len: usize) -> RandomBits {
        RandomBits {
            bits: vec![false; len],
        }
    }

    /// Interprets a hex string as a value whose bit r_i drives iteration i
    /// (so slot j reads bit len-1-j). Errors if the value needs more than
    /// `len` bits.
    pub fn from_hex(s: &str, len: usize) -> Result<RandomBits, LadderError> {
        let significant = bits_from_hex(s).ok_or(LadderError::BadHex)?;
        if significant.len() > len {
            return Err(LadderError::RandWiderThanScalar {
                have: significant.len(),
                need: len,
            });
        }
        let mut bits = vec![false; len - significant.len()];
        bits.extend_from_slice(&significant);
        Ok(RandomBits { bits })
    }

    /// Like [`RandomBits::from_hex`] but keeps only the low `len` bits when
    /// the value is wider. Returns the number of dropped high bits.
    pub fn from_hex_truncated(s: &str, len: usize) -> Result<(RandomBits, usize), LadderError> {
        let significant = bits_from_hex(s).ok_or(LadderError::BadHex)?;
        if significant.len() <= len {
            return Ok((RandomBits::from_hex(s, len)?, 0));
        }
        let dropped = significant.len() - len;
        Ok((
            RandomBits {
                bits: significant[dropped..].to_vec(),
            },
            dropped,
        ))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}
