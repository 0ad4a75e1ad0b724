//! Automated SPA: find sample indices where the slot values split into two
//! cleanly separated clusters.

use ladder_engine::Scalar;

use crate::cmta::{correctness, KeyCandidate, Polarity};
use crate::slots::SlotView;
use crate::AttackError;

/// A sample index where the N slot values fall into two clusters separated
/// by a dominant gap.
#[derive(Clone, Debug)]
pub struct SpaFinding {
    pub sample: usize,
    /// Midpoint of the separating gap.
    pub threshold: f64,
    /// Largest adjacent gap divided by the value spread, in (0, 1].
    pub gap_ratio: f64,
    /// Direct polarity: slots in the lower cluster read as bit 1.
    pub candidate: KeyCandidate,
    /// Which polarity matched the key exactly; designer mode only.
    pub matched_polarity: Option<Polarity>,
}

/// Scans every sample index for a two-cluster split: sort the N values,
/// take the largest adjacent gap, and emit a finding when that gap claims
/// at least `gap_ratio_min` of the total spread. With a key, only findings
/// where one polarity scores exactly 100% are kept.
pub fn auto_spa(
    view: &SlotView<'_>,
    gap_ratio_min: f64,
    key: Option<&Scalar>,
) -> Result<Vec<SpaFinding>, AttackError> {
    if !(gap_ratio_min > 0.0 && gap_ratio_min <= 1.0) {
        return Err(AttackError::BadGapRatio(gap_ratio_min));
    }
    let n = view.num_slots();
    let mut findings = Vec::new();
    let mut sorted: Vec<f64> = Vec::with_capacity(n);
    for j in 0..view.slot_len() {
        sorted.clear();
        sorted.extend((0..n).map(|i| view.sample(i, j)));
        sorted.sort_unstable_by(f64::total_cmp);
        let spread = sorted[n - 1] - sorted[0];
        if spread <= 0.0 {
            continue;
        }
        let (mut gap, mut split) = (0.0f64, 0usize);
        for (idx, pair) in sorted.windows(2).enumerate() {
            let d = pair[1] - pair[0];
            if d > gap {
                gap = d;
                split = idx;
            }
        }
        let ratio = gap / spread;
        if ratio < gap_ratio_min {
            continue;
        }
        // Classify by the gap's lower endpoint, which is exact; the
        // midpoint threshold is reported for human consumption.
        let low_edge = sorted[split];
        let threshold = low_edge + gap / 2.0;
        let bits: Vec<bool> = (0..n).map(|i| view.sample(i, j) <= low_edge).collect();
        let candidate = KeyCandidate {
            bits,
            source: j,
            polarity: Polarity::Direct,
        };
        let matched_polarity = match key {
            None => None,
            Some(k) => {
                let c = correctness(&candidate, k)?;
                if c == 100.0 {
                    Some(Polarity::Direct)
                } else if c == 0.0 {
                    Some(Polarity::Complement)
                } else {
                    continue;
                }
            }
        };
        findings.push(SpaFinding {
            sample: j,
            threshold,
            gap_ratio: ratio,
            candidate,
            matched_polarity,
        });
    }
    Ok(findings)
}
