//! The two ladder variants.
//!
//! Both share one slot schedule: an addition, a doubling and a trailing
//! copy-back that moves the temporary points T0/T1 into R0/R1. The plain
//! ladder always runs the addition first; the randomized ladder lets the
//! per-iteration random bit choose which point operation runs first, and
//! nothing else. Destination homes are selected by the key bit in both
//! variants, which is exactly the addressing dependence a horizontal
//! attacker exploits.

use curve_core::{double, ProjectivePoint};

use crate::event::EventLog;
use crate::regfile::{R0_HOME, R1_HOME};
use crate::scalar::{RandomBits, Scalar};
use crate::schedule::{
    emit_copyback_group, run_point_op, CyclePhase, Emitter, CYCLES_PER_SLOT, PREAMBLE_CYCLES,
};
use crate::LadderError;

/// Left-to-right Montgomery ladder: returns k·P and the event log.
///
/// The scalar's top bit is consumed by initialization, so the log carries
/// l - 1 slots. Within every slot the addition runs first.
pub fn montgomery_ladder(
    k: &Scalar,
    p: &ProjectivePoint,
) -> Result<(ProjectivePoint, EventLog), LadderError> {
    let r = RandomBits::zeros(k.bit_len() - 1);
    ladder_impl(k, &r, p)
}

/// Montgomery ladder with random execution order: returns m·P for every
/// choice of `r`.
///
/// When m_i = 1 the iteration computes T0 = R0+R1 and T1 = 2·R1; when
/// m_i = 0 it computes T1 = R0+R1 and T0 = 2·R0. The random bit r_i only
/// decides which of the two operations executes first; each iteration ends
/// with the copy-back R0 = T0, R1 = T1.
pub fn randomized_ladder(
    m: &Scalar,
    r: &RandomBits,
    p: &ProjectivePoint,
) -> Result<(ProjectivePoint, EventLog), LadderError> {
    if r.len() != m.bit_len() - 1 {
        return Err(LadderError::RandLengthMismatch {
            have: r.len(),
            need: m.bit_len() - 1,
        });
    }
    ladder_impl(m, r, p)
}

fn ladder_impl(
    k: &Scalar,
    r: &RandomBits,
    p: &ProjectivePoint,
) -> Result<(ProjectivePoint, EventLog), LadderError> {
    if p.is_identity() || !p.is_on_curve() {
        return Err(LadderError::BadBasePoint);
    }

    let mut em = Emitter::new();

    // Preamble: R0 <- P, R1 <- P, then R1 <- 2P in place and coordinate fixup.
    for (addr, val) in [
        (R0_HOME.x, p.x),
        (R0_HOME.y, p.y),
        (R0_HOME.z, p.z),
        (R1_HOME.x, p.x),
        (R1_HOME.y, p.y),
        (R1_HOME.z, p.z),
    ] {
        em.emit_load(addr, val.limbs(), CyclePhase::Preamble);
    }
    let mut r1_pt = run_point_op(&mut em, R1_HOME, R1_HOME, p, p, CyclePhase::Preamble);
    em.emit_copy(R1_HOME.x, crate::regfile::BOUNCE_REG, CyclePhase::Preamble);
    em.emit_copy(R1_HOME.y, R1_HOME.x, CyclePhase::Preamble);
    em.emit_copy(crate::regfile::BOUNCE_REG, R1_HOME.y, CyclePhase::Preamble);
    debug_assert_eq!(em.cycle, PREAMBLE_CYCLES);
    debug_assert!(r1_pt.projective_eq(&double(p)));

    let mut r0_pt = *p;

    for (slot, (&m_bit, &r_bit)) in k
        .processed_bits()
        .iter()
        .zip(r.bits().iter())
        .enumerate()
    {
        // The addition replaces the home selected by the key bit; the
        // doubling operates in the other home.
        let (add_dst, add_src) = if m_bit {
            (R0_HOME, R1_HOME)
        } else {
            (R1_HOME, R0_HOME)
        };
        let (add_a, add_b) = if m_bit { (r0_pt, r1_pt) } else { (r1_pt, r0_pt) };
        let (dbl_home, dbl_val) = if m_bit { (R1_HOME, r1_pt) } else { (R0_HOME, r0_pt) };

        let add_res;
        let dbl_res;
        if !r_bit {
            add_res = run_point_op(&mut em, add_dst, add_src, &add_a, &add_b, CyclePhase::Slot);
            dbl_res = run_point_op(&mut em, dbl_home, dbl_home, &dbl_val, &dbl_val, CyclePhase::Slot);
        } else {
            dbl_res = run_point_op(&mut em, dbl_home, dbl_home, &dbl_val, &dbl_val, CyclePhase::Slot);
            add_res = run_point_op(&mut em, add_dst, add_src, &add_a, &add_b, CyclePhase::Slot);
        }

        let (t0_pt, t1_pt) = if m_bit {
            (add_res, dbl_res)
        } else {
            (dbl_res, add_res)
        };

        // Copy-back R0 <- T0, R1 <- T1. The copy sequence starts with the
        // home holding the addition result, so the write-address order at
        // fixed intra-slot cycles follows the key bit and not the random
        // bit: this is the residual leak order randomization cannot hide.
        let (first, second) = if m_bit {
            (R0_HOME, R1_HOME)
        } else {
            (R1_HOME, R0_HOME)
        };
        emit_copyback_group(&mut em, first, CyclePhase::Slot);
        emit_copyback_group(&mut em, second, CyclePhase::Slot);

        r0_pt = t0_pt;
        r1_pt = t1_pt;

        debug_assert_eq!(
            em.cycle,
            PREAMBLE_CYCLES + (slot as u64 + 1) * CYCLES_PER_SLOT
        );
    }

    let num_slots = (k.bit_len() - 1) as u64;
    let log = EventLog::from_parts(em.events, PREAMBLE_CYCLES, CYCLES_PER_SLOT, num_slots)
        .expect("emitter produces monotone cycles");
    Ok((r0_pt, log))
}
