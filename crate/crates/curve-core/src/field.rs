//! Arithmetic modulo p = 2^256 - 2^32 - 977, the secp256k1 field prime.
//!
//! Elements are kept canonical (fully reduced) at all times; the wide
//! multiplication result is folded back using 2^256 ≡ 2^32 + 977 (mod p).

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::CurveError;

/// The field modulus p as little-endian 64-bit limbs.
pub const MODULUS: [u64; 4] = [
    0xFFFF_FFFE_FFFF_FC2F,
    0xFFFF_FFFF_FFFF_FFFF,
    0xFFFF_FFFF_FFFF_FFFF,
    0xFFFF_FFFF_FFFF_FFFF,
];

/// 2^256 mod p = 2^32 + 977, the folding constant for reduction.
const FOLD: u64 = 0x1_0000_03D1;

/// An element of the secp256k1 prime field in canonical form.
///
/// Limbs are little endian: `limbs[0]` is the least significant word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    limbs: [u64; 4],
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { limbs: [0; 4] };
    pub const ONE: FieldElement = FieldElement {
        limbs: [1, 0, 0, 0],
    };

    /// Builds an element from little-endian limbs, reducing once if needed.
    ///
    /// Accepts any 256-bit value; values in [p, 2^256) are brought into
    /// canonical range by a single subtraction of p.
    pub fn from_limbs(limbs: [u64; 4]) -> FieldElement {
        let mut fe = FieldElement { limbs };
        if geq(&fe.limbs, &MODULUS) {
            fe.limbs = sub_limbs(&fe.limbs, &MODULUS).0;
        }
        fe
    }

    pub fn from_u64(v: u64) -> FieldElement {
        FieldElement {
            limbs: [v, 0, 0, 0],
        }
    }

    pub(crate) const fn const_from_u64(v: u64) -> FieldElement {
        FieldElement {
            limbs: [v, 0, 0, 0],
        }
    }

    /// Parses a big-endian hex string (no `0x` prefix required).
    pub fn from_hex(s: &str) -> Result<FieldElement, CurveError> {
        let limbs = limbs_from_hex(s)?;
        if geq(&limbs, &MODULUS) {
            return Err(CurveError::NotCanonical);
        }
        Ok(FieldElement { limbs })
    }

    pub fn to_hex(self) -> String {
        format!(
            "{:016x}{:016x}{:016x}{:016x}",
            self.limbs[3], self.limbs[2], self.limbs[1], self.limbs[0]
        )
    }

    pub fn limbs(self) -> [u64; 4] {
        self.limbs
    }

    pub fn is_zero(self) -> bool {
        self.limbs == [0; 4]
    }

    pub fn square(self) -> FieldElement {
        self * self
    }

    /// Multiplicative inverse via Fermat: a^(p-2).
    ///
    /// Only used for affine conversion and the reference oracle; the ladder
    /// itself never inverts.
    pub fn invert(self) -> Result<FieldElement, CurveError> {
        if self.is_zero() {
            return Err(CurveError::InversionOfZero);
        }
        // Exponent p - 2, processed MSB first.
        let exp = sub_limbs(&MODULUS, &[2, 0, 0, 0]).0;
        let mut acc = FieldElement::ONE;
        for i in (0..256).rev() {
            acc = acc.square();
            if (exp[i / 64] >> (i % 64)) & 1 == 1 {
                acc = acc * self;
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement(0x{})", self.to_hex())
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        let (sum, carry) = add_limbs(&self.limbs, &rhs.limbs);
        let mut out = sum;
        if carry || geq(&out, &MODULUS) {
            out = sub_limbs(&out, &MODULUS).0;
        }
        FieldElement { limbs: out }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        let (diff, borrow) = sub_limbs(&self.limbs, &rhs.limbs);
        let mut out = diff;
        if borrow {
            out = add_limbs(&out, &MODULUS).0;
        }
        FieldElement { limbs: out }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::ZERO - self
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let wide = mul_wide(&self.limbs, &rhs.limbs);
        reduce_wide(wide)
    }
}

fn add_limbs(a: &[u64; 4], b: &[u64; 4]) -> ([u64; 4], bool) {
    let mut out = [0u64; 4];
    let mut carry = false;
    for i in 0..4 {
        let (s, c1) = a[i].overflowing_add(b[i]);
        let (s, c2) = s.overflowing_add(carry as u64);
        out[i] = s;
        carry = c1 | c2;
    }
    (out, carry)
}

fn sub_limbs(a: &[u64; 4], b: &[u64; 4]) -> ([u64; 4], bool) {
    let mut out = [0u64; 4];
    let mut borrow = false;
    for i in 0..4 {
        let (d, b1) = a[i].overflowing_sub(b[i]);
        let (d, b2) = d.overflowing_sub(borrow as u64);
        out[i] = d;
        borrow = b1 | b2;
    }
    (out, borrow)
}

fn geq(a: &[u64; 4], b: &[u64; 4]) -> bool {
    for i in (0..4).rev() {
        if a[i] > b[i] {
            return true;
        }
        if a[i] < b[i] {
            return false;
        }
    }
    true
}

fn mul_wide(a: &[u64; 4], b: &[u64; 4]) -> [u64; 8] {
    let mut out = [0u64; 8];
    for i in 0..4 {
        let mut carry = 0u128;
        for j in 0..4 {
            let acc = out[i + j] as u128 + (a[i] as u128) * (b[j] as u128) + carry;
            out[i + j] = acc as u64;
            carry = acc >> 64;
        }
        out[i + 4] = carry as u64;
    }
    out
}

/// Folds a 512-bit product into canonical range using 2^256 ≡ FOLD.
fn reduce_wide(w: [u64; 8]) -> FieldElement {
    // First fold: lo + hi * FOLD, a 5-limb value (top limb < 2^34).
    let mut t = [0u64; 5];
    let mut carry = 0u128;
    for i in 0..4 {
        let acc = w[i] as u128 + (w[i + 4] as u128) * (FOLD as u128) + carry;
        t[i] = acc as u64;
        carry = acc >> 64;
    }
    t[4] = carry as u64;

    // Second fold: the small top limb re-enters as t4 * FOLD (< 2^67).
    let extra = (t[4] as u128) * (FOLD as u128);
    let mut out = [t[0], t[1], t[2], t[3]];
    let overflowed = add_two_limbs(&mut out, extra as u64, (extra >> 64) as u64);
    // A carry out of 2^256 folds once more; the running value is now tiny
    // so this cannot overflow again.
    if overflowed {
        let (sum, _) = add_limbs(&out, &[FOLD, 0, 0, 0]);
        out = sum;
    }
    if geq(&out, &MODULUS) {
        out = sub_limbs(&out, &MODULUS).0;
    }
    FieldElement { limbs: out }
}

/// Adds the two-limb value (hi, lo) to `out`, returning true on carry out.
fn add_two_limbs(out: &mut [u64; 4], lo: u64, hi: u64) -> bool {
    let mut carry;
    let (s, c) = out[0].overflowing_add(lo);
    out[0] = s;
    let (s, c2) = out[1].overflowing_add(hi);
    let (s, c3) = s.overflowing_add(c as u64);
    out[1] = s;
    carry = (c2 | c3) as u64;
    for limb in out.iter_mut().skip(2) {
        let (s, c) = limb.overflowing_add(carry);
        *limb = s;
        carry = c as u64;
    }
    carry == 1
}

pub(crate) fn limbs_from_hex(s: &str) -> Result<[u64; 4], CurveError> {
    let s = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    if s.is_empty() || s.len() > 64 {
        return Err(CurveError::BadHex);
    }
    let mut limbs = [0u64; 4];
    for (i, ch) in s.chars().rev().enumerate() {
        let nibble = ch.to_digit(16).ok_or(CurveError::BadHex)? as u64;
        limbs[i / 16] |= nibble << (4 * (i % 16));
    }
    Ok(limbs)
}
