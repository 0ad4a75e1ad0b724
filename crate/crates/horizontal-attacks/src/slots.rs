//! Slicing a trace into per-key-bit slots.

use power_model::Trace;

use crate::AttackError;

/// A view of a trace as `num_slots` equal slices: slot i, sample j maps to
/// trace sample `offset + i*slot_len + j`. No samples are copied.
#[derive(Clone, Copy, Debug)]
pub struct SlotView<'a> {
    trace: &'a Trace,
    offset: usize,
    slot_len: usize,
    num_slots: usize,
}

/// Builds a view with explicit geometry, for traces whose slot layout is
/// supplied externally.
pub fn slice_slots(
    trace: &Trace,
    offset: u64,
    slot_len: u64,
    num_slots: u64,
) -> Result<SlotView<'_>, AttackError> {
    let end = offset
        .checked_add(slot_len.checked_mul(num_slots).ok_or(AttackError::GeometryOverflow)?)
        .ok_or(AttackError::GeometryOverflow)?;
    if slot_len == 0 || end > trace.samples().len() as u64 {
        return Err(AttackError::GeometryOutOfBounds {
            offset,
            slot_len,
            num_slots,
            samples: trace.samples().len() as u64,
        });
    }
    Ok(SlotView {
        trace,
        offset: offset as usize,
        slot_len: slot_len as usize,
        num_slots: num_slots as usize,
    })
}

impl<'a> SlotView<'a> {
    /// Default view from the trace's own geometry: slots start right after
    /// the preamble and span one ladder iteration each.
    pub fn from_trace_geometry(trace: &'a Trace) -> Result<SlotView<'a>, AttackError> {
        slice_slots(
            trace,
            trace.preamble_samples(),
            trace.slot_samples(),
            trace.num_slots(),
        )
    }

    pub fn slot_len(&self) -> usize {
        self.slot_len
    }

    pub fn num_slots(&self) -> usize {
        self.num_slots
    }

    pub fn sample(&self, slot: usize, j: usize) -> f64 {
        self.trace.samples()[self.offset + slot * self.slot_len + j]
    }

    pub fn slot(&self, i: usize) -> &'a [f64] {
        let start = self.offset + i * self.slot_len;
        &self.trace.samples()[start..start + self.slot_len]
    }

    /// Per-sample mean over all slots (every slot included, no
    /// leave-one-out).
    ///
    /// When every slot agrees at a sample the mean is that value exactly,
    /// never a rounded sum: the extraction tie rule depends on it.
    pub fn mean_slot(&self) -> Vec<f64> {
        let n = self.num_slots as f64;
        let first = self.slot(0);
        let mut mean = vec![0.0f64; self.slot_len];
        let mut all_equal = vec![true; self.slot_len];
        for i in 0..self.num_slots {
            for ((m, v), (eq, f)) in mean
                .iter_mut()
                .zip(self.slot(i))
                .zip(all_equal.iter_mut().zip(first))
            {
                *m += v;
                *eq &= v == f;
            }
        }
        for ((m, eq), f) in mean.iter_mut().zip(&all_equal).zip(first) {
            *m = if *eq { *f } else { *m / n };
        }
        mean
    }
}
