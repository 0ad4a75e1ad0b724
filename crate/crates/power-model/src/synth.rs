//! Trace synthesis: per-cycle power, intra-cycle upsampling, noise.

use ladder_engine::{EventKind, EventLog, Unit};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::model::{hamming_distance, hamming_weight, unit_index, Block, LeakageModel};
use crate::trace::Trace;
use crate::PowerError;

/// Per-cycle power under the model's unit mask.
///
/// Contributions are accumulated per unit first and combined in a fixed
/// unit order, so a masked trace is sample-wise additive: the whole-design
/// value is exactly the fold of the per-block values over the baseline.
pub fn cycle_power(log: &EventLog, model: &LeakageModel) -> Vec<f64> {
    let total = log.total_cycles() as usize;
    let mut per_unit = vec![[0.0f64; 5]; total];
    for e in log.events() {
        let mut c = 0.0;
        if let Some((old, new)) = e.values {
            c += model.w_hd * hamming_distance(old, new) as f64
                + model.w_hw * hamming_weight(new) as f64;
        }
        if e.unit == Unit::RegFile && e.kind == EventKind::Write {
            let addr = e.address.expect("writes carry an address");
            c += model.w_addr * model.addr_coeff[addr as usize];
        }
        per_unit[e.cycle as usize][unit_index(e.unit)] += c;
    }
    per_unit
        .iter()
        .map(|sums| {
            let mut p = model.baseline;
            for unit in Unit::ALL {
                if model.unit_mask.contains(unit) {
                    p += sums[unit_index(unit)];
                }
            }
            p
        })
        .collect()
}

/// The intra-cycle pulse shape: a decaying exponential sampled at
/// `samples_per_cycle` points and normalized to mean 1, so per-cycle
/// averaging reproduces the cycle power.
pub fn intra_cycle_template(samples_per_cycle: u32) -> Vec<f64> {
    if samples_per_cycle <= 1 {
        return vec![1.0];
    }
    let n = samples_per_cycle as usize;
    let lambda = 3.0 / n as f64;
    let raw: Vec<f64> = (0..n).map(|s| (-lambda * s as f64).exp()).collect();
    let mean = fold_mean(&raw);
    raw.iter().map(|v| v / mean).collect()
}

fn fold_mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// The canonical per-cycle mean used for trace compression: samples are
/// scaled by 1/n first, then folded. Numerically equivalent to sum/n, and
/// the form for which lossless round trips are constructible.
pub(crate) fn cycle_mean(samples: &[f64]) -> f64 {
    let n = samples.len() as f64;
    samples.iter().map(|v| v / n).sum()
}

fn next_toward(x: f64, up: bool) -> f64 {
    if up {
        f64::from_bits(x.to_bits() + 1)
    } else {
        f64::from_bits(x.to_bits() - 1)
    }
}

/// Expands one cycle's power into `template.len()` samples whose per-cycle
/// mean, as computed by [`cycle_mean`], reproduces `power` bit-exactly.
///
/// Raw products power·template[s] average back to `power` only up to
/// rounding, so the last sample is chosen so the quotient fold lands on
/// `power` exactly: compression must be lossless at sigma = 0. The chosen
/// sample deviates from its raw product by a few ulp at most, invisible to
/// any comparison-based analysis.
fn emit_cycle(out: &mut Vec<f64>, power: f64, template: &[f64]) {
    if template.len() == 1 {
        out.push(power);
        return;
    }
    let start = out.len();
    for t in &template[..template.len() - 1] {
        out.push(power * t);
    }
    let n = template.len() as f64;
    let prefix: f64 = out[start..].iter().map(|v| v / n).sum();
    // Target quotient for the last sample, then the nearest sample value
    // that divides back to it. Both adjacencies are walked by ulps; the
    // window of acceptable quotients spans thousands of them.
    let w0 = power - prefix;
    let realizable = |w: f64| -> Option<f64> {
        if prefix + w != power {
            return None;
        }
        let v = w * n;
        if v / n == w {
            Some(v)
        } else {
            None
        }
    };
    let mut v_last = realizable(w0);
    let (mut lo, mut hi) = (w0, w0);
    for _ in 0..4096 {
        if v_last.is_some() {
            break;
        }
        hi = next_toward(hi, true);
        v_last = realizable(hi).or_else(|| {
            lo = next_toward(lo, false);
            realizable(lo)
        });
    }
    out.push(v_last.expect("a realizable last sample exists within a few ulp"));
    debug_assert_eq!(cycle_mean(&out[start..]), power);
}

fn noise_rng(seed: u64, cycle: u64) -> ChaCha8Rng {
    // splitmix-style mix so per-cycle streams are independent of ordering;
    // parallel and serial synthesis agree bit for bit.
    let mut z = seed ^ cycle.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Synthesizes a trace from an event log.
///
/// Per-cycle power is expanded by the intra-cycle template and, for
/// `sigma > 0`, perturbed by independent Gaussian noise drawn from a
/// per-cycle counter-based stream. Deterministic for a fixed
/// (log, model, samples_per_cycle, sigma, seed).
pub fn synthesize_trace(
    log: &EventLog,
    model: &LeakageModel,
    samples_per_cycle: u32,
    sigma: f64,
    seed: u64,
) -> Result<Trace, PowerError> {
    if samples_per_cycle == 0 {
        return Err(PowerError::ZeroSamplesPerCycle);
    }
    if sigma < 0.0 || !sigma.is_finite() {
        return Err(PowerError::BadSigma(sigma));
    }
    let powers = cycle_power(log, model);
    let template = intra_cycle_template(samples_per_cycle);
    let mut samples = Vec::with_capacity(powers.len() * samples_per_cycle as usize);
    for &p in &powers {
        emit_cycle(&mut samples, p, &template);
    }
    if sigma > 0.0 {
        let normal = Normal::new(0.0, sigma).expect("sigma validated");
        for (cycle, chunk) in samples.chunks_mut(samples_per_cycle as usize).enumerate() {
            let mut rng = noise_rng(seed, cycle as u64);
            for s in chunk {
                *s += normal.sample(&mut rng);
            }
        }
    }
    Trace::new(
        samples,
        samples_per_cycle,
        log.cycles_per_slot(),
        log.num_slots(),
        log.preamble_cycles(),
    )
}

/// Synthesizes the trace of a single design block, or of the whole design
/// for [`Block::Top`].
pub fn per_block_trace(
    log: &EventLog,
    model: &LeakageModel,
    block: Block,
    samples_per_cycle: u32,
    sigma: f64,
    seed: u64,
) -> Result<Trace, PowerError> {
    let masked = model.clone().with_mask(block.mask());
    synthesize_trace(log, &masked, samples_per_cycle, sigma, seed)
}

/// Adds Gaussian noise to the listed intra-slot cycle positions in every
/// slot, leaving all other samples untouched. The suggested countermeasure
/// of driving dedicated noise sources during the few leaking cycles.
pub fn selective_noise(
    trace: &Trace,
    cycles: &[u64],
    sigma: f64,
    seed: u64,
) -> Result<Trace, PowerError> {
    for &c in cycles {
        if c >= trace.cycles_per_slot() {
            return Err(PowerError::CycleOutOfRange {
                cycle: c,
                cycles_per_slot: trace.cycles_per_slot(),
            });
        }
    }
    if sigma < 0.0 || !sigma.is_finite() {
        return Err(PowerError::BadSigma(sigma));
    }
    let mut out = trace.clone();
    if cycles.is_empty() || sigma == 0.0 {
        return Ok(out);
    }
    let normal = Normal::new(0.0, sigma).expect("sigma validated");
    let spc = trace.samples_per_cycle() as u64;
    for slot in 0..trace.num_slots() {
        for &c in cycles {
            let global_cycle = trace.preamble_cycles() + slot * trace.cycles_per_slot() + c;
            let mut rng = noise_rng(seed, global_cycle);
            let base = (global_cycle * spc) as usize;
            for s in 0..spc as usize {
                out.samples_mut()[base + s] += normal.sample(&mut rng);
            }
        }
    }
    Ok(out)
}

/// Compresses a fine trace to one sample per cycle by per-cycle arithmetic
/// mean. At sigma = 0 this reproduces the coarse trace exactly.
pub fn compress_trace(trace: &Trace) -> Trace {
    let spc = trace.samples_per_cycle() as usize;
    if spc == 1 {
        return trace.clone();
    }
    let samples: Vec<f64> = trace.samples().chunks(spc).map(cycle_mean).collect();
    Trace::new(
        samples,
        1,
        trace.cycles_per_slot(),
        trace.num_slots(),
        trace.preamble_cycles(),
    )
    .expect("compression preserves geometry")
}
