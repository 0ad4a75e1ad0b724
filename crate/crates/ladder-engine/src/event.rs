//! The per-cycle event log: the leakage substrate the power model consumes.

use crate::LadderError;

/// A 256-bit machine word as little-endian 64-bit limbs.
pub type Word = [u64; 4];

pub const ZERO_WORD: Word = [0; 4];

/// The design blocks that emit events.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    RegFile,
    Mmalu,
    Fsm,
    Controller,
    Counter,
}

impl Unit {
    pub const ALL: [Unit; 5] = [
        Unit::RegFile,
        Unit::Mmalu,
        Unit::Fsm,
        Unit::Controller,
        Unit::Counter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Unit::RegFile => "REGFILE",
            Unit::Mmalu => "MMALU",
            Unit::Fsm => "FSM",
            Unit::Controller => "CONTROLLER",
            Unit::Counter => "COUNTER",
        }
    }

    pub fn from_name(s: &str) -> Option<Unit> {
        match s.to_ascii_uppercase().as_str() {
            "REGFILE" => Some(Unit::RegFile),
            "MMALU" => Some(Unit::Mmalu),
            "FSM" => Some(Unit::Fsm),
            "CONTROLLER" => Some(Unit::Controller),
            "COUNTER" => Some(Unit::Counter),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    Read,
    Write,
    AluAdd,
    AluSub,
    AluMul,
    Ctrl,
}

/// One microarchitectural event.
///
/// `address` is present on REGFILE events only. The `(old, new)` value pair
/// is present on WRITE and ALU events (the 256-bit datapath words) and on
/// CTRL events, where it carries the small per-cycle state word of the FSM,
/// controller or cycle counter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Event {
    pub cycle: u64,
    pub unit: Unit,
    pub kind: EventKind,
    pub address: Option<u8>,
    pub values: Option<(Word, Word)>,
}

impl Event {
    pub fn shape(&self) -> (Unit, EventKind) {
        (self.unit, self.kind)
    }
}

/// The ordered event stream of one ladder run plus its slot geometry.
///
/// Slots start after the preamble; every slot spans exactly
/// `cycles_per_slot` cycles and `num_slots` equals l - 1 (the msb is
/// consumed by initialization).
#[derive(Clone, Debug)]
pub struct EventLog {
    events: Vec<Event>,
    preamble_cycles: u64,
    cycles_per_slot: u64,
    num_slots: u64,
}

impl EventLog {
    pub fn from_parts(
        events: Vec<Event>,
        preamble_cycles: u64,
        cycles_per_slot: u64,
        num_slots: u64,
    ) -> Result<EventLog, LadderError> {
        let mut last = 0u64;
        for e in &events {
            if e.cycle < last {
                return Err(LadderError::NonMonotonicCycles);
            }
            last = e.cycle;
        }
        Ok(EventLog {
            events,
            preamble_cycles,
            cycles_per_slot,
            num_slots,
        })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn preamble_cycles(&self) -> u64 {
        self.preamble_cycles
    }

    pub fn cycles_per_slot(&self) -> u64 {
        self.cycles_per_slot
    }

    pub fn num_slots(&self) -> u64 {
        self.num_slots
    }

    pub fn total_cycles(&self) -> u64 {
        self.preamble_cycles + self.num_slots * self.cycles_per_slot
    }

    /// Events of slot `i`, i.e. cycles [preamble + i*cps, preamble + (i+1)*cps).
    pub fn slot_events(&self, i: u64) -> impl Iterator<Item = &Event> {
        let start = self.preamble_cycles + i * self.cycles_per_slot;
        let end = start + self.cycles_per_slot;
        self.events
            .iter()
            .filter(move |e| e.cycle >= start && e.cycle < end)
    }

    /// The (unit, kind) sequence of slot `i`, the quantity the balance
    /// invariant constrains.
    pub fn slot_shape(&self, i: u64) -> Vec<(Unit, EventKind)> {
        self.slot_events(i).map(Event::shape).collect()
    }

    /// The REGFILE address sequence of slot `i` (reads and writes).
    pub fn slot_addresses(&self, i: u64) -> Vec<u8> {
        self.slot_events(i)
            .filter(|e| e.unit == Unit::RegFile)
            .filter_map(|e| e.address)
            .collect()
    }
}

/// Returns the log's geometry as (preamble_cycles, cycles_per_slot,
/// num_slots); attacks parameterize themselves from this instead of magic
/// numbers.
pub fn slot_geometry(log: &EventLog) -> (u64, u64, u64) {
    (log.preamble_cycles, log.cycles_per_slot, log.num_slots)
}
