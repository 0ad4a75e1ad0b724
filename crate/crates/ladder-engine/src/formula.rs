//! The complete-addition formula as a straight-line micro-op table.
//!
//! One table entry is one field operation and executes in one clock cycle.
//! The sequence is fixed: no step, operand role or operation kind ever
//! depends on point values, which is what makes addition and doubling
//! indistinguishable by shape. Doubling is the same table with both operand
//! roles bound to the same point.

use curve_core::FieldElement;
#[cfg(test)]
use curve_core::{ProjectivePoint, B3};

/// Formula-internal storage slots.
///
/// T0..T4 are the five temporaries; OutX/OutY/OutZ are the result
/// coordinates, which reuse input registers freed mid-formula (see
/// `regfile`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Var {
    T0,
    T1,
    T2,
    T3,
    T4,
    OutX,
    OutY,
    OutZ,
}

/// A source operand: a coordinate of operand point A or B, a formula
/// variable, or the wired constant 3·b.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Src {
    Ax,
    Ay,
    Az,
    Bx,
    By,
    Bz,
    V(Var),
    B3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AluOp {
    Add,
    Sub,
    Mul,
}

pub(crate) struct Step {
    pub dst: Var,
    pub a: Src,
    pub b: Src,
    pub op: AluOp,
}

const fn s(dst: Var, a: Src, b: Src, op: AluOp) -> Step {
    Step { dst, a, b, op }
}

use AluOp::{Add, Mul, Sub};
use Src::{Ax, Ay, Az, Bx, By, Bz, B3 as CB3, V};
use Var::{OutX, OutY, OutZ, T0, T1, T2, T3, T4};

/// Exception-free point addition for y² = x³ + 7, as 33 single-cycle steps.
pub(crate) const COMPLETE_ADD_STEPS: [Step; 33] = [
    s(T0, Ax, Bx, Mul),           // 1
    s(T1, Ay, By, Mul),           // 2
    s(T2, Az, Bz, Mul),           // 3
    s(T3, Ax, Ay, Add),           // 4
    s(T4, Bx, By, Add),           // 5
    s(T3, V(T3), V(T4), Mul),     // 6
    s(T4, V(T0), V(T1), Add),     // 7
    s(T3, V(T3), V(T4), Sub),     // 8
    s(T4, Ay, Az, Add),           // 9
    s(OutX, By, Bz, Add),         // 10
    s(T4, V(T4), V(OutX), Mul),   // 11
    s(OutX, V(T1), V(T2), Add),   // 12
    s(T4, V(T4), V(OutX), Sub),   // 13
    s(OutX, Ax, Az, Add),         // 14
    s(OutY, Bx, Bz, Add),         // 15
    s(OutX, V(OutX), V(OutY), Mul), // 16
    s(OutY, V(T0), V(T2), Add),   // 17
    s(OutY, V(OutX), V(OutY), Sub), // 18
    s(OutX, V(T0), V(T0), Add),   // 19
    s(T0, V(OutX), V(T0), Add),   // 20
    s(T2, V(T2), CB3, Mul),       // 21
    s(OutZ, V(T1), V(T2), Add),   // 22
    s(T1, V(T1), V(T2), Sub),     // 23
    s(OutY, V(OutY), CB3, Mul),   // 24
    s(OutX, V(T4), V(OutY), Mul), // 25
    s(T2, V(T3), V(T1), Mul),     // 26
    s(OutX, V(T2), V(OutX), Sub), // 27
    s(OutY, V(OutY), V(T0), Mul), // 28
    s(T1, V(T1), V(OutZ), Mul),   // 29
    s(OutY, V(T1), V(OutY), Add), // 30
    s(T0, V(T0), V(T3), Mul),     // 31
    s(OutZ, V(OutZ), V(T4), Mul), // 32
    s(OutZ, V(OutZ), V(T0), Add), // 33
];

pub(crate) fn apply_alu(op: AluOp, a: FieldElement, b: FieldElement) -> FieldElement {
    match op {
        AluOp::Add => a + b,
        AluOp::Sub => a - b,
        AluOp::Mul => a * b,
    }
}

/// Evaluates the step table over field values, independent of any register
/// model. Returns the result point.
#[cfg(test)]
pub(crate) fn eval_formula(a: &ProjectivePoint, b: &ProjectivePoint) -> ProjectivePoint {
    let mut vars = [FieldElement::ZERO; 8];
    let fetch = |vars: &[FieldElement; 8], src: Src| -> FieldElement {
        match src {
            Src::Ax => a.x,
            Src::Ay => a.y,
            Src::Az => a.z,
            Src::Bx => b.x,
            Src::By => b.y,
            Src::Bz => b.z,
            Src::V(v) => vars[v as usize],
            Src::B3 => B3,
        }
    };
    for step in &COMPLETE_ADD_STEPS {
        let va = fetch(&vars, step.a);
        let vb = fetch(&vars, step.b);
        vars[step.dst as usize] = apply_alu(step.op, va, vb);
    }
    ProjectivePoint {
        x: vars[Var::OutX as usize],
        y: vars[Var::OutY as usize],
        z: vars[Var::OutZ as usize],
    }
}
