//! Comparison-to-the-mean key extraction and designer-side evaluation.

use ladder_engine::Scalar;

use crate::slots::SlotView;
use crate::AttackError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Direct,
    Complement,
}

/// One extracted key candidate: bit i comes from slot i, which processed
/// key bit k_{l-2-i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyCandidate {
    pub bits: Vec<bool>,
    /// Sample index within the slot this candidate was extracted from.
    pub source: usize,
    pub polarity: Polarity,
}

impl KeyCandidate {
    pub fn complemented(&self) -> KeyCandidate {
        KeyCandidate {
            bits: self.bits.iter().map(|b| !b).collect(),
            source: self.source,
            polarity: match self.polarity {
                Polarity::Direct => Polarity::Complement,
                Polarity::Complement => Polarity::Direct,
            },
        }
    }

    pub fn to_hex(&self) -> String {
        curve_core::bits_to_hex(&self.bits)
    }
}

/// Per-sample candidate bits without materializing every candidate: bit i
/// of the candidate at sample j is 1 iff slot i's sample j lies strictly
/// below the all-slot mean at j (ties give 0).
fn candidate_bits_at(view: &SlotView<'_>, mean: &[f64], j: usize) -> Vec<bool> {
    (0..view.num_slots())
        .map(|i| view.sample(i, j) < mean[j])
        .collect()
}

/// The comparison-to-the-mean attack: one direct-polarity candidate per
/// sample index.
pub fn cmta_extract(view: &SlotView<'_>) -> Vec<KeyCandidate> {
    let mean = view.mean_slot();
    (0..view.slot_len())
        .map(|j| KeyCandidate {
            bits: candidate_bits_at(view, &mean, j),
            source: j,
            polarity: Polarity::Direct,
        })
        .collect()
}

/// Percentage of candidate bits matching the processed scalar bits.
pub fn correctness(candidate: &KeyCandidate, key: &Scalar) -> Result<f64, AttackError> {
    let processed = key.processed_bits();
    if candidate.bits.len() != processed.len() {
        return Err(AttackError::LengthMismatch {
            candidate: candidate.bits.len(),
            key: processed.len(),
        });
    }
    let matches = candidate
        .bits
        .iter()
        .zip(processed)
        .filter(|(a, b)| a == b)
        .count();
    Ok(100.0 * matches as f64 / processed.len() as f64)
}

/// Per-sample correctness of the direct-polarity candidates, in percent.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrectnessProfile {
    values: Vec<f64>,
}

impl CorrectnessProfile {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Sample indices whose correctness reaches `threshold` percent.
    pub fn samples_at_least(&self, threshold: f64) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= threshold)
            .map(|(j, _)| j)
            .collect()
    }

    /// Polarity-folded view: max(c, 100-c) per sample.
    pub fn folded(&self) -> Vec<f64> {
        self.values.iter().map(|&c| c.max(100.0 - c)).collect()
    }
}

/// Runs the attack at every sample index and scores each candidate against
/// the known key.
pub fn correctness_profile(
    view: &SlotView<'_>,
    key: &Scalar,
) -> Result<CorrectnessProfile, AttackError> {
    let processed = key.processed_bits();
    if view.num_slots() != processed.len() {
        return Err(AttackError::LengthMismatch {
            candidate: view.num_slots(),
            key: processed.len(),
        });
    }
    let mean = view.mean_slot();
    let n = processed.len() as f64;
    let values = (0..view.slot_len())
        .map(|j| {
            let matches = (0..view.num_slots())
                .filter(|&i| (view.sample(i, j) < mean[j]) == processed[i])
                .count();
            100.0 * matches as f64 / n
        })
        .collect();
    Ok(CorrectnessProfile { values })
}

/// Per-sample mean shapes of the bit-0 slots and the bit-1 slots.
///
/// Designer-side diagnostic: wherever extraction is perfect, the all-slot
/// mean lies strictly between these two.
pub fn class_means(
    view: &SlotView<'_>,
    key: &Scalar,
) -> Result<(Vec<f64>, Vec<f64>), AttackError> {
    let processed = key.processed_bits();
    if view.num_slots() != processed.len() {
        return Err(AttackError::LengthMismatch {
            candidate: view.num_slots(),
            key: processed.len(),
        });
    }
    let mut counts = [0usize; 2];
    let mut sums = [vec![0.0f64; view.slot_len()], vec![0.0f64; view.slot_len()]];
    for (i, &bit) in processed.iter().enumerate() {
        let class = bit as usize;
        counts[class] += 1;
        for (acc, v) in sums[class].iter_mut().zip(view.slot(i)) {
            *acc += v;
        }
    }
    if counts[0] == 0 || counts[1] == 0 {
        return Err(AttackError::EmptyClass);
    }
    for class in 0..2 {
        for v in sums[class].iter_mut() {
            *v /= counts[class] as f64;
        }
    }
    let [mean0, mean1] = sums;
    Ok((mean0, mean1))
}
