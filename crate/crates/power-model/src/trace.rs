//! The sampled power waveform and its geometry.

use crate::PowerError;

/// A power trace: real-valued samples plus the geometry inherited from the
/// event log, so attacks can slice slots without magic numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    samples: Vec<f64>,
    samples_per_cycle: u32,
    cycles_per_slot: u64,
    num_slots: u64,
    preamble_cycles: u64,
}

impl Trace {
    pub fn new(
        samples: Vec<f64>,
        samples_per_cycle: u32,
        cycles_per_slot: u64,
        num_slots: u64,
        preamble_cycles: u64,
    ) -> Result<Trace, PowerError> {
        if samples_per_cycle == 0 {
            return Err(PowerError::ZeroSamplesPerCycle);
        }
        let expected = samples_per_cycle as u64 * (preamble_cycles + num_slots * cycles_per_slot);
        if samples.len() as u64 != expected {
            return Err(PowerError::GeometryMismatch {
                samples: samples.len() as u64,
                expected,
            });
        }
        Ok(Trace {
            samples,
            samples_per_cycle,
            cycles_per_slot,
            num_slots,
            preamble_cycles,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn samples_per_cycle(&self) -> u32 {
        self.samples_per_cycle
    }

    pub fn cycles_per_slot(&self) -> u64 {
        self.cycles_per_slot
    }

    pub fn num_slots(&self) -> u64 {
        self.num_slots
    }

    pub fn preamble_cycles(&self) -> u64 {
        self.preamble_cycles
    }

    /// First sample of slot 0.
    pub fn preamble_samples(&self) -> u64 {
        self.preamble_cycles * self.samples_per_cycle as u64
    }

    /// Samples spanned by one slot.
    pub fn slot_samples(&self) -> u64 {
        self.cycles_per_slot * self.samples_per_cycle as u64
    }
}
