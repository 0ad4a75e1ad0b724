//! secp256k1 domain parameters.

use crate::field::{FieldElement, MODULUS};
use crate::point::AffinePoint;

/// Curve coefficient a = 0.
pub const A: FieldElement = FieldElement::ZERO;

/// Curve coefficient b = 7.
pub const B: FieldElement = fe(7);

/// Precomputed 3·b, a constant of the complete addition formula.
pub const B3: FieldElement = fe(21);

const fn fe(v: u64) -> FieldElement {
    // Small constants are trivially canonical.
    FieldElement::const_from_u64(v)
}

/// Generator x coordinate.
pub const GX_HEX: &str = "79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798";
/// Generator y coordinate.
pub const GY_HEX: &str = "483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8";
/// Group order n.
pub const N_HEX: &str = "fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141";

/// The full parameter set for one short Weierstrass curve.
///
/// Only secp256k1 is constructed or tested; the struct exists so the curve
/// constants travel together rather than as loose globals.
#[derive(Clone, Debug)]
pub struct CurveParams {
    pub p: [u64; 4],
    pub a: FieldElement,
    pub b: FieldElement,
    pub b3: FieldElement,
    pub g: AffinePoint,
    pub n: [u64; 4],
}

impl CurveParams {
    pub fn secp256k1() -> CurveParams {
        CurveParams {
            p: MODULUS,
            a: A,
            b: B,
            b3: B3,
            g: generator(),
            n: crate::field::limbs_from_hex(N_HEX).expect("valid constant"),
        }
    }
}

/// The secp256k1 base point G.
pub fn generator() -> AffinePoint {
    AffinePoint::new(
        FieldElement::from_hex(GX_HEX).expect("valid constant"),
        FieldElement::from_hex(GY_HEX).expect("valid constant"),
    )
}
