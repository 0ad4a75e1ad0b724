//! Algebraic invariances of the extraction rule.

use horizontal_attacks::{cmta_extract, SlotView};
use power_model::Trace;
use proptest::prelude::*;

fn view_trace(samples: Vec<f64>, slot_len: usize, slots: usize) -> Trace {
    Trace::new(samples, 1, slot_len as u64, slots as u64, 0).unwrap()
}

fn arb_samples() -> impl Strategy<Value = (Vec<f64>, usize, usize)> {
    (2usize..6, 1usize..5).prop_flat_map(|(slots, slot_len)| {
        (
            proptest::collection::vec(-1e3f64..1e3, slots * slot_len),
            Just(slot_len),
            Just(slots),
        )
    })
}

proptest! {
    /// Adding a constant or scaling by a positive factor changes no
    /// candidate: the strict-inequality rule commutes with affine maps.
    #[test]
    fn offset_and_scale_invariance(
        (samples, slot_len, slots) in arb_samples(),
        offset in -100.0f64..100.0,
        scale in 0.01f64..100.0,
    ) {
        let base = view_trace(samples.clone(), slot_len, slots);
        let base_view = SlotView::from_trace_geometry(&base).unwrap();
        let reference = cmta_extract(&base_view);

        let mapped: Vec<f64> = samples.iter().map(|v| v * scale + offset).collect();
        let mapped = view_trace(mapped, slot_len, slots);
        let mapped_view = SlotView::from_trace_geometry(&mapped).unwrap();
        let transformed = cmta_extract(&mapped_view);

        for (a, b) in reference.iter().zip(&transformed) {
            prop_assert_eq!(&a.bits, &b.bits);
        }
    }

    /// Negating the trace complements every candidate, except at exact
    /// ties, which read as 0 on both sides.
    #[test]
    fn negation_complements_candidates((samples, slot_len, slots) in arb_samples()) {
        let base = view_trace(samples.clone(), slot_len, slots);
        let base_view = SlotView::from_trace_geometry(&base).unwrap();
        let reference = cmta_extract(&base_view);

        let negated: Vec<f64> = samples.iter().map(|v| -v).collect();
        let negated = view_trace(negated, slot_len, slots);
        let neg_view = SlotView::from_trace_geometry(&negated).unwrap();
        let complemented = cmta_extract(&neg_view);

        let mean = base_view.mean_slot();
        for (a, b) in reference.iter().zip(&complemented) {
            for i in 0..a.bits.len() {
                let tie = base_view.sample(i, a.source) == mean[a.source];
                if tie {
                    // -v == -mean as well: both polarities read 0.
                    prop_assert!(!a.bits[i] && !b.bits[i]);
                } else {
                    prop_assert_eq!(a.bits[i], !b.bits[i]);
                }
            }
        }
    }
}
