//! Cycle-accurate event emission.
//!
//! One field operation is one clock cycle. A formula cycle emits the REGFILE
//! reads of its sources, one MMALU event, the REGFILE write of its
//! destination, and one CTRL event each from the FSM, the controller and the
//! cycle counter. Copy and load cycles follow the same pattern without the
//! MMALU. The (unit, kind) sequence of a slot is therefore a pure function
//! of the schedule and never of key or data.

use curve_core::{FieldElement, ProjectivePoint};

use crate::event::{Event, EventKind, Unit, Word};
use crate::formula::{apply_alu, AluOp, Src, Step, Var, COMPLETE_ADD_STEPS};
use crate::regfile::{PointHome, RegisterFileModel, BOUNCE_REG, TEMP_BASE};

/// Cycles of one scheduled point operation (one formula step per cycle).
pub const POINT_OP_CYCLES: u64 = COMPLETE_ADD_STEPS.len() as u64;

/// Cycles of the trailing copy-back that moves both temporary points into
/// their ladder registers.
pub const COPYBACK_CYCLES: u64 = 8;

/// Cycles per key-bit slot: two point operations plus the copy-back.
pub const CYCLES_PER_SLOT: u64 = 2 * POINT_OP_CYCLES + COPYBACK_CYCLES;

/// Initialization cycles before slot 0: loading both ladder registers with
/// the base point, doubling into R1 and restoring coordinate order.
pub const PREAMBLE_CYCLES: u64 = 6 + POINT_OP_CYCLES + 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointOpKind {
    Add,
    Double,
}

/// Controller opcodes, one per micro-op class.
mod opcode {
    pub const ADD: u64 = 1;
    pub const SUB: u64 = 2;
    pub const MUL: u64 = 3;
    pub const MUL_CONST: u64 = 4;
    pub const COPY: u64 = 5;
    pub const LOAD: u64 = 6;
}

fn step_opcode(step: &Step) -> u64 {
    match step.op {
        AluOp::Add => opcode::ADD,
        AluOp::Sub => opcode::SUB,
        AluOp::Mul => {
            if step.b == Src::B3 {
                opcode::MUL_CONST
            } else {
                opcode::MUL
            }
        }
    }
}

fn slot_opcode(intra: u64) -> u64 {
    if intra < POINT_OP_CYCLES {
        step_opcode(&COMPLETE_ADD_STEPS[intra as usize])
    } else if intra < 2 * POINT_OP_CYCLES {
        step_opcode(&COMPLETE_ADD_STEPS[(intra - POINT_OP_CYCLES) as usize])
    } else {
        opcode::COPY
    }
}

fn preamble_opcode(intra: u64) -> u64 {
    if intra < 6 {
        opcode::LOAD
    } else if intra < 6 + POINT_OP_CYCLES {
        step_opcode(&COMPLETE_ADD_STEPS[(intra - 6) as usize])
    } else {
        opcode::COPY
    }
}

/// Which per-cycle FSM/controller word sequence applies.
#[derive(Clone, Copy)]
pub(crate) enum CyclePhase {
    Preamble,
    Slot,
    /// A point operation scheduled outside any ladder run.
    Standalone,
}

pub(crate) struct Emitter {
    pub events: Vec<Event>,
    pub cycle: u64,
    pub file: RegisterFileModel,
    last_alu: Word,
}

impl Emitter {
    pub fn new() -> Emitter {
        Emitter {
            events: Vec::new(),
            cycle: 0,
            file: RegisterFileModel::new(),
            last_alu: [0; 4],
        }
    }

    fn push(&mut self, unit: Unit, kind: EventKind, address: Option<u8>, values: Option<(Word, Word)>) {
        self.events.push(Event {
            cycle: self.cycle,
            unit,
            kind,
            address,
            values,
        });
    }

    pub fn emit_read(&mut self, addr: u8) {
        self.push(Unit::RegFile, EventKind::Read, Some(addr), None);
    }

    pub fn emit_write(&mut self, addr: u8, value: Word) {
        let old = self.file.write(addr, value);
        self.push(Unit::RegFile, EventKind::Write, Some(addr), Some((old, value)));
    }

    pub fn emit_alu(&mut self, op: AluOp, result: Word) {
        let kind = match op {
            AluOp::Add => EventKind::AluAdd,
            AluOp::Sub => EventKind::AluSub,
            AluOp::Mul => EventKind::AluMul,
        };
        self.push(Unit::Mmalu, kind, None, Some((self.last_alu, result)));
        self.last_alu = result;
    }

    fn emit_ctrl(&mut self, unit: Unit, old: u64, new: u64) {
        self.push(unit, EventKind::Ctrl, None, Some(([old, 0, 0, 0], [new, 0, 0, 0])));
    }

    /// Emits the FSM, controller and counter events and advances the clock.
    ///
    /// Within slots the FSM word is the intra-slot cycle index and the
    /// controller word is the micro-op opcode at that index; both wrap
    /// around the slot, so their transition sequence is identical in every
    /// slot and carries no key or data dependence.
    pub fn finish_cycle(&mut self, phase: CyclePhase) {
        let (fsm_old, fsm_new, op_old, op_new) = match phase {
            CyclePhase::Preamble => {
                let i = self.cycle;
                let prev = i.saturating_sub(1);
                (prev, i, preamble_opcode(prev), preamble_opcode(i))
            }
            CyclePhase::Standalone => {
                let i = self.cycle;
                let prev = i.saturating_sub(1);
                let code = |c: u64| step_opcode(&COMPLETE_ADD_STEPS[c as usize]);
                (prev, i, code(prev), code(i))
            }
            CyclePhase::Slot => {
                let i = (self.cycle - PREAMBLE_CYCLES) % CYCLES_PER_SLOT;
                let prev = (i + CYCLES_PER_SLOT - 1) % CYCLES_PER_SLOT;
                (prev, i, slot_opcode(prev), slot_opcode(i))
            }
        };
        self.emit_ctrl(Unit::Fsm, fsm_old, fsm_new);
        self.emit_ctrl(Unit::Controller, op_old, op_new);
        self.emit_ctrl(Unit::Counter, self.cycle, self.cycle + 1);
        self.cycle += 1;
    }

    /// One copy cycle: read `src`, write its word to `dst`.
    pub fn emit_copy(&mut self, src: u8, dst: u8, phase: CyclePhase) {
        self.emit_read(src);
        let value = self.file.read(src);
        self.emit_write(dst, value);
        self.finish_cycle(phase);
    }

    /// One load cycle: write an externally supplied word.
    pub fn emit_load(&mut self, addr: u8, value: Word, phase: CyclePhase) {
        self.emit_write(addr, value);
        self.finish_cycle(phase);
    }
}

/// Resolves a formula variable to its register address given the home of
/// the operand being replaced.
///
/// The output coordinates reuse the registers of the dying operand point in
/// the only order its liveness permits: X3 lands in the home's Y register,
/// Y3 in its X register, Z3 in place.
fn var_addr(v: Var, dst_home: PointHome) -> u8 {
    match v {
        Var::T0 => TEMP_BASE,
        Var::T1 => TEMP_BASE + 1,
        Var::T2 => TEMP_BASE + 2,
        Var::T3 => TEMP_BASE + 3,
        Var::T4 => TEMP_BASE + 4,
        Var::OutX => dst_home.y,
        Var::OutY => dst_home.x,
        Var::OutZ => dst_home.z,
    }
}

fn src_addr(src: Src, dst_home: PointHome, src_home: PointHome) -> Option<u8> {
    match src {
        Src::Ax => Some(dst_home.x),
        Src::Ay => Some(dst_home.y),
        Src::Az => Some(dst_home.z),
        Src::Bx => Some(src_home.x),
        Src::By => Some(src_home.y),
        Src::Bz => Some(src_home.z),
        Src::V(v) => Some(var_addr(v, dst_home)),
        Src::B3 => None,
    }
}

/// Runs one scheduled point operation and returns its result.
///
/// `dst_home` is the home of the operand the result replaces (operand A);
/// `src_home` holds the surviving operand B. Doubling binds both roles to
/// the same home. Field values flow from `a_val`/`b_val`, so the emitted
/// MMALU and write events always carry the true computation.
pub(crate) fn run_point_op(
    em: &mut Emitter,
    dst_home: PointHome,
    src_home: PointHome,
    a_val: &ProjectivePoint,
    b_val: &ProjectivePoint,
    phase: CyclePhase,
) -> ProjectivePoint {
    let mut vars = [FieldElement::ZERO; 8];
    for step in &COMPLETE_ADD_STEPS {
        let fetch = |s: Src| -> FieldElement {
            match s {
                Src::Ax => a_val.x,
                Src::Ay => a_val.y,
                Src::Az => a_val.z,
                Src::Bx => b_val.x,
                Src::By => b_val.y,
                Src::Bz => b_val.z,
                Src::V(v) => vars[v as usize],
                Src::B3 => curve_core::B3,
            }
        };
        if let Some(addr) = src_addr(step.a, dst_home, src_home) {
            em.emit_read(addr);
        }
        if let Some(addr) = src_addr(step.b, dst_home, src_home) {
            em.emit_read(addr);
        }
        let result = apply_alu(step.op, fetch(step.a), fetch(step.b));
        em.emit_alu(step.op, result.limbs());
        em.emit_write(var_addr(step.dst, dst_home), result.limbs());
        vars[step.dst as usize] = result;
        em.finish_cycle(phase);
    }
    ProjectivePoint {
        x: vars[Var::OutX as usize],
        y: vars[Var::OutY as usize],
        z: vars[Var::OutZ as usize],
    }
}

/// Restores canonical coordinate order in `home` after a point operation
/// left its result there with X and Y transposed, then reasserts Z.
/// Four cycles: park Y3, move X3 into place, unpark Y3, rewrite Z3.
pub(crate) fn emit_copyback_group(em: &mut Emitter, home: PointHome, phase: CyclePhase) {
    em.emit_copy(home.x, BOUNCE_REG, phase);
    em.emit_copy(home.y, home.x, phase);
    em.emit_copy(BOUNCE_REG, home.y, phase);
    em.emit_copy(home.z, home.z, phase);
}

/// Schedules one point operation in isolation and returns the result point
/// together with its event list.
///
/// The event list has a fixed length and (unit, kind) sequence regardless of
/// `kind` and of the operand values; only addresses and data differ. For
/// [`PointOpKind::Double`], `src_home` and `src_point` are ignored and both
/// operand roles bind to `dst_home`/`dst_point`.
pub fn schedule_point_op(
    kind: PointOpKind,
    dst_home: PointHome,
    src_home: PointHome,
    dst_point: &ProjectivePoint,
    src_point: &ProjectivePoint,
) -> (ProjectivePoint, Vec<Event>) {
    let mut em = Emitter::new();
    let (s_home, s_point) = match kind {
        PointOpKind::Add => (src_home, src_point),
        PointOpKind::Double => (dst_home, dst_point),
    };
    // Preload operand homes so write events displace realistic contents.
    for (home, val) in [(dst_home, dst_point), (s_home, s_point)] {
        em.file.write(home.x, val.x.limbs());
        em.file.write(home.y, val.y.limbs());
        em.file.write(home.z, val.z.limbs());
    }
    let result = run_point_op(
        &mut em,
        dst_home,
        s_home,
        dst_point,
        s_point,
        CyclePhase::Standalone,
    );
    (result, em.events)
}
