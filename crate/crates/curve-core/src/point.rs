//! Projective and affine points on secp256k1 (y² = x³ + 7).

use crate::field::FieldElement;
use crate::params::B3;
use crate::CurveError;

/// A point in homogeneous projective coordinates (X : Y : Z).
///
/// The identity is (0 : 1 : 0). Two triples denote the same point when they
/// differ by a nonzero scalar; use [`ProjectivePoint::projective_eq`] to
/// compare, never raw field equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
}

/// An affine point, or the identity when `infinity` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffinePoint {
    pub x: FieldElement,
    pub y: FieldElement,
    pub infinity: bool,
}

impl ProjectivePoint {
    pub const IDENTITY: ProjectivePoint = ProjectivePoint {
        x: FieldElement::ZERO,
        y: FieldElement::ONE,
        z: FieldElement::ZERO,
    };

    pub fn from_affine(p: &AffinePoint) -> ProjectivePoint {
        if p.infinity {
            ProjectivePoint::IDENTITY
        } else {
            ProjectivePoint {
                x: p.x,
                y: p.y,
                z: FieldElement::ONE,
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.z.is_zero()
    }

    /// Checks Y²Z = X³ + 7·Z³, which the identity satisfies as well.
    pub fn is_on_curve(&self) -> bool {
        let lhs = self.y.square() * self.z;
        let rhs = self.x.square() * self.x + crate::params::B * self.z.square() * self.z;
        lhs == rhs
    }

    /// Equality by cross-multiplication: X₁Z₂ = X₂Z₁ and Y₁Z₂ = Y₂Z₁,
    /// with identities compared via Z = 0.
    pub fn projective_eq(&self, other: &ProjectivePoint) -> bool {
        match (self.is_identity(), other.is_identity()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => {
                self.x * other.z == other.x * self.z && self.y * other.z == other.y * self.z
            }
        }
    }

    pub fn to_affine(&self) -> AffinePoint {
        if self.is_identity() {
            return AffinePoint::IDENTITY;
        }
        // z is nonzero here, so the inversion cannot fail.
        let zi = self.z.invert().expect("nonzero z");
        AffinePoint {
            x: self.x * zi,
            y: self.y * zi,
            infinity: false,
        }
    }
}

impl AffinePoint {
    pub const IDENTITY: AffinePoint = AffinePoint {
        x: FieldElement::ZERO,
        y: FieldElement::ZERO,
        infinity: true,
    };

    pub fn new(x: FieldElement, y: FieldElement) -> AffinePoint {
        AffinePoint {
            x,
            y,
            infinity: false,
        }
    }

    pub fn is_on_curve(&self) -> bool {
        self.infinity || self.y.square() == self.x.square() * self.x + crate::params::B
    }

    pub fn neg(&self) -> AffinePoint {
        AffinePoint {
            x: self.x,
            y: -self.y,
            infinity: self.infinity,
        }
    }
}

/// Complete projective point addition for a = 0 short Weierstrass curves.
///
/// A fixed straight-line sequence of field operations with no branches on
/// point values: correct for every input pair, including P = Q, P = -Q and
/// identity operands. `b3` is the precomputed constant 3·b = 21.
pub fn complete_add(p: &ProjectivePoint, q: &ProjectivePoint) -> ProjectivePoint {
    let b3 = B3;

    let mut t0 = p.x * q.x; // 1
    let mut t1 = p.y * q.y; // 2
    let mut t2 = p.z * q.z; // 3
    let mut t3 = p.x + p.y; // 4
    let mut t4 = q.x + q.y; // 5
    t3 = t3 * t4; // 6
    t4 = t0 + t1; // 7
    t3 = t3 - t4; // 8
    t4 = p.y + p.z; // 9
    let mut x3 = q.y + q.z; // 10
    t4 = t4 * x3; // 11
    x3 = t1 + t2; // 12
    t4 = t4 - x3; // 13
    x3 = p.x + p.z; // 14
    let mut y3 = q.x + q.z; // 15
    x3 = x3 * y3; // 16
    y3 = t0 + t2; // 17
    y3 = x3 - y3; // 18
    x3 = t0 + t0; // 19
    t0 = x3 + t0; // 20
    t2 = b3 * t2; // 21
    let mut z3 = t1 + t2; // 22
    t1 = t1 - t2; // 23
    y3 = b3 * y3; // 24
    x3 = t4 * y3; // 25
    t2 = t3 * t1; // 26
    x3 = t2 - x3; // 27
    y3 = y3 * t0; // 28
    t1 = t1 * z3; // 29
    y3 = t1 + y3; // 30
    t0 = t0 * t3; // 31
    z3 = z3 * t4; // 32
    z3 = z3 + t0; // 33

    ProjectivePoint {
        x: x3,
        y: y3,
        z: z3,
    }
}

/// Point doubling, deliberately implemented as `complete_add(p, p)` so the
/// two operations share one formula and one power profile.
pub fn double(p: &ProjectivePoint) -> ProjectivePoint {
    complete_add(p, p)
}

/// Textbook affine chord-and-tangent addition.
///
/// Branches on the input configuration, which is exactly why it serves as an
/// independent oracle for [`complete_add`] rather than sharing any code path
/// with it.
pub fn affine_add(p: &AffinePoint, q: &AffinePoint) -> Result<AffinePoint, CurveError> {
    if p.infinity {
        return Ok(*q);
    }
    if q.infinity {
        return Ok(*p);
    }
    if p.x == q.x {
        if p.y == q.y {
            if p.y.is_zero() {
                // Tangent is vertical.
                return Ok(AffinePoint::IDENTITY);
            }
            // Doubling: lambda = 3x² / 2y (a = 0).
            let three = FieldElement::from_u64(3);
            let two = FieldElement::from_u64(2);
            let lambda = (three * p.x.square()) * (two * p.y).invert()?;
            return Ok(chord_result(lambda, p, q));
        }
        // x equal, y differs: points are inverses of each other.
        return Ok(AffinePoint::IDENTITY);
    }
    let lambda = (q.y - p.y) * (q.x - p.x).invert()?;
    Ok(chord_result(lambda, p, q))
}

fn chord_result(lambda: FieldElement, p: &AffinePoint, q: &AffinePoint) -> AffinePoint {
    let x3 = lambda.square() - p.x - q.x;
    let y3 = lambda * (p.x - x3) - p.y;
    AffinePoint::new(x3, y3)
}
