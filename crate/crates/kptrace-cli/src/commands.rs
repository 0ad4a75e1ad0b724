//! Command implementations. Each returns the lines it wants on stdout;
//! report files are written here, atomically, when an output path is given.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use curve_core::generator;
use horizontal_attacks::{
    auto_spa, cmta_extract, correctness_profile, slice_slots, verify_candidate, KeyCandidate,
    Polarity, SlotView,
};
use ladder_engine::{montgomery_ladder, randomized_ladder, EventLog, Scalar};
use power_model::{per_block_trace, synthesize_trace, Block, Trace};

use crate::config::{format_sec1, parse_sec1, Design, ExperimentConfig, DOCUMENTED_SCALAR_BITS};
use crate::error::CliError;
use crate::tracefile;

/// One ladder execution plus its synthesized trace.
pub struct Experiment {
    pub scalar: Scalar,
    pub log: EventLog,
    pub trace: Trace,
    pub result_sec1: String,
    pub notes: Vec<String>,
}

/// Runs the configured design and synthesizes the configured trace.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment, CliError> {
    let scalar = cfg.scalar()?;
    let mut notes = Vec::new();
    if scalar.bit_len() != DOCUMENTED_SCALAR_BITS
        && cfg.scalar_hex.trim().trim_start_matches("0x") == crate::config::DEFAULT_SCALAR_HEX
    {
        notes.push(format!(
            "# note: default scalar parses to {} bits, documented as {} — using the derived length",
            scalar.bit_len(),
            DOCUMENTED_SCALAR_BITS
        ));
    }

    let base = curve_core::ProjectivePoint::from_affine(&generator());
    let (result, log) = match cfg.design {
        Design::Plain => {
            if cfg.rand_hex.is_some() || cfg.rand_seed.is_some() {
                notes.push("# note: plain design ignores the rand input".to_string());
            }
            montgomery_ladder(&scalar, &base)?
        }
        Design::Randomized => {
            let (bits, mut rand_notes) = cfg.random_bits(&scalar)?;
            notes.append(&mut rand_notes);
            randomized_ladder(&scalar, &bits, &base)?
        }
    };

    let model = cfg.model();
    let trace = synthesize_trace(&log, &model, cfg.samples_per_cycle, cfg.sigma, cfg.seed)?;
    let result_sec1 = format_sec1(&result.to_affine());
    Ok(Experiment {
        scalar,
        log,
        trace,
        result_sec1,
        notes,
    })
}

fn config_echo(cfg: &ExperimentConfig) -> Vec<String> {
    vec![
        format!("# design: {}", cfg.design.name()),
        format!("# scalar: {}", cfg.scalar_hex),
        format!("# block: {}", cfg.block.name()),
        format!(
            "# weights: hd={} hw={} addr={} addr_seed={}",
            cfg.weights.0, cfg.weights.1, cfg.weights.2, cfg.addr_seed
        ),
        format!(
            "# spc: {} sigma: {} seed: {}",
            cfg.samples_per_cycle, cfg.sigma, cfg.seed
        ),
    ]
}

/// `simulate`: run the ladder, write the trace container, summarize.
pub fn cmd_simulate(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<String>, CliError> {
    let exp = run_experiment(cfg)?;
    tracefile::write_trace(out, &exp.trace)?;
    let mut lines = config_echo(cfg);
    lines.extend(exp.notes.iter().cloned());
    lines.push(format!("# scalar_bits: {}", exp.scalar.bit_len()));
    lines.push(format!("# result: {}", exp.result_sec1));
    lines.push(format!(
        "# geometry: preamble_cycles={} cycles_per_slot={} num_slots={} samples={}",
        exp.trace.preamble_cycles(),
        exp.trace.cycles_per_slot(),
        exp.trace.num_slots(),
        exp.trace.samples().len()
    ));
    lines.push(format!("# wrote: {}", out.display()));
    Ok(lines)
}

fn load_view<'a>(
    trace: &'a Trace,
    offset: Option<u64>,
    slot_len: Option<u64>,
) -> Result<SlotView<'a>, CliError> {
    match (offset, slot_len) {
        (None, None) => Ok(SlotView::from_trace_geometry(trace)?),
        (o, l) => {
            let offset = o.unwrap_or_else(|| trace.preamble_samples());
            let slot_len = l.unwrap_or_else(|| trace.slot_samples());
            if slot_len == 0 {
                return Err(CliError::precondition("slot length must be positive"));
            }
            let num_slots = (trace.samples().len() as u64).saturating_sub(offset) / slot_len;
            Ok(slice_slots(trace, offset, slot_len, num_slots)?)
        }
    }
}

/// Writes report lines to `out` atomically, or returns them for stdout.
fn deliver(out: Option<&Path>, report: Vec<String>) -> Result<Vec<String>, CliError> {
    match out {
        None => Ok(report),
        Some(path) => {
            let tmp = path.with_extension("csv.tmp");
            fs::write(&tmp, report.join("\n") + "\n").map_err(CliError::io(&tmp))?;
            fs::rename(&tmp, path).map_err(CliError::io(path))?;
            Ok(vec![format!("# wrote: {}", path.display())])
        }
    }
}

pub struct CmtaArgs {
    pub trace: PathBuf,
    pub key_hex: Option<String>,
    pub pub_hex: Option<String>,
    pub fold: bool,
    pub offset: Option<u64>,
    pub slot_len: Option<u64>,
    pub top: usize,
    pub out: Option<PathBuf>,
}

/// `attack-cmta`: designer mode emits the per-sample correctness profile;
/// attacker mode ranks candidates and checks them against a public key.
pub fn cmd_attack_cmta(args: &CmtaArgs) -> Result<Vec<String>, CliError> {
    let trace = tracefile::read_trace(&args.trace)?;
    let view = load_view(&trace, args.offset, args.slot_len)?;
    let mut header = vec![
        "# kptrace attack-cmta".to_string(),
        format!("# trace: {}", args.trace.display()),
        format!(
            "# offset: {} slot_len: {} num_slots: {}",
            args.offset.unwrap_or_else(|| trace.preamble_samples()),
            args.slot_len.unwrap_or_else(|| trace.slot_samples()),
            view.num_slots()
        ),
    ];

    if let Some(key_hex) = &args.key_hex {
        // Designer mode: the key is known, score every candidate.
        let key = Scalar::from_hex(key_hex)
            .map_err(|e| CliError::precondition(format!("key: {e}")))?;
        let profile = correctness_profile(&view, &key)?;
        header.push(format!("# fold: {}", args.fold));
        header.push("sample_index,correctness_percent".to_string());
        let values = if args.fold {
            profile.folded()
        } else {
            profile.values().to_vec()
        };
        let mut report = header;
        report.extend(
            values
                .iter()
                .enumerate()
                .map(|(j, v)| format!("{j},{v:.4}")),
        );
        let mut lines = deliver(args.out.as_deref(), report)?;
        lines.push(format!(
            "# max_correctness: {:.4} at {} of {} samples",
            profile.max(),
            profile.samples_at_least(profile.max()).len(),
            view.slot_len()
        ));
        return Ok(lines);
    }

    // Attacker mode: rank distinct candidates by how many samples agree.
    let candidates = cmta_extract(&view);
    let mut groups: HashMap<&[bool], (usize, usize)> = HashMap::new();
    for c in &candidates {
        let entry = groups.entry(&c.bits).or_insert((0, c.source));
        entry.0 += 1;
    }
    let mut ranked: Vec<(&[bool], usize, usize)> = groups
        .into_iter()
        .map(|(bits, (count, first))| (bits, count, first))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)));

    if let Some(pub_hex) = &args.pub_hex {
        let public = parse_sec1(pub_hex)?;
        for (bits, count, first) in &ranked {
            let candidate = KeyCandidate {
                bits: bits.to_vec(),
                source: *first,
                polarity: Polarity::Direct,
            };
            if let Some(polarity) = verify_candidate(&candidate, &public, &generator()) {
                let bits = match polarity {
                    Polarity::Direct => candidate.bits.clone(),
                    Polarity::Complement => candidate.complemented().bits,
                };
                let mut full = vec![true];
                full.extend_from_slice(&bits);
                header.push(format!(
                    "verified scalar: {} ({} bits, {:?} polarity, sample {}, {} samples agree)",
                    curve_core::bits_to_hex(&full),
                    full.len(),
                    polarity,
                    first,
                    count
                ));
                return Ok(header);
            }
        }
        return Err(CliError::NothingFound(
            "no candidate verified against the public key".to_string(),
        ));
    }

    header.push(format!("# top {} candidates by sample agreement", args.top));
    for (bits, count, first) in ranked.iter().take(args.top) {
        header.push(format!(
            "candidate {} ({} bits, first at sample {}, {} samples agree)",
            curve_core::bits_to_hex(bits),
            bits.len(),
            first,
            count
        ));
    }
    Ok(header)
}

pub struct SpaArgs {
    pub trace: PathBuf,
    pub gap_ratio: f64,
    pub key_hex: Option<String>,
    pub dump_sample: Option<u64>,
    pub dump_slots: u64,
    pub offset: Option<u64>,
    pub slot_len: Option<u64>,
    pub out: Option<PathBuf>,
}

/// `attack-spa`: list two-cluster samples, or dump one sample across slots
/// for plotting.
pub fn cmd_attack_spa(args: &SpaArgs) -> Result<Vec<String>, CliError> {
    let trace = tracefile::read_trace(&args.trace)?;
    let view = load_view(&trace, args.offset, args.slot_len)?;

    if let Some(sample) = args.dump_sample {
        if sample >= view.slot_len() as u64 {
            return Err(CliError::precondition(format!(
                "dump sample {sample} out of range (slot_len {})",
                view.slot_len()
            )));
        }
        let slots = args.dump_slots.min(view.num_slots() as u64);
        let mut report = vec![
            "# kptrace attack-spa --dump".to_string(),
            format!("# trace: {}", args.trace.display()),
            format!("# sample: {sample} slots: {slots}"),
            "slot_index,value".to_string(),
        ];
        for i in 0..slots {
            report.push(format!(
                "{i},{v}",
                v = view.sample(i as usize, sample as usize)
            ));
        }
        return deliver(args.out.as_deref(), report);
    }

    let key = match &args.key_hex {
        Some(h) => {
            Some(Scalar::from_hex(h).map_err(|e| CliError::precondition(format!("key: {e}")))?)
        }
        None => None,
    };
    let findings = auto_spa(&view, args.gap_ratio, key.as_ref())?;

    let mut report = vec![
        "# kptrace attack-spa".to_string(),
        format!("# trace: {}", args.trace.display()),
        format!(
            "# gap_ratio_min: {} designer_mode: {}",
            args.gap_ratio,
            key.is_some()
        ),
        "sample_index,threshold,gap_ratio,matched_polarity".to_string(),
    ];
    for f in &findings {
        let polarity = match f.matched_polarity {
            Some(Polarity::Direct) => "direct",
            Some(Polarity::Complement) => "complement",
            None => "unknown",
        };
        report.push(format!(
            "{},{:.6},{:.6},{}",
            f.sample, f.threshold, f.gap_ratio, polarity
        ));
    }
    let found = findings.len();
    let mut lines = deliver(args.out.as_deref(), report)?;
    lines.push(format!("# findings: {found}"));
    if found == 0 {
        return Err(CliError::NothingFound("no SPA findings".to_string()));
    }
    Ok(lines)
}

/// `block-study`: per-block max correctness and the intra-slot cycles
/// reaching the threshold.
pub fn cmd_block_study(
    cfg: &ExperimentConfig,
    threshold: f64,
    out: Option<&Path>,
) -> Result<Vec<String>, CliError> {
    let exp = run_experiment(cfg)?;
    let spc = cfg.samples_per_cycle as u64;
    let mut report = config_echo(cfg);
    report.extend(exp.notes.iter().cloned());
    report.push(format!("# threshold: {threshold}"));
    report.push("block,max_correctness_percent,cycles_at_threshold".to_string());

    let model = cfg.model();
    for block in Block::ALL {
        let trace = per_block_trace(
            &exp.log,
            &model,
            block,
            cfg.samples_per_cycle,
            cfg.sigma,
            cfg.seed,
        )?;
        let view = SlotView::from_trace_geometry(&trace)?;
        let profile = correctness_profile(&view, &exp.scalar)?;
        let mut cycles: Vec<u64> = profile
            .samples_at_least(threshold)
            .iter()
            .map(|&j| j as u64 / spc)
            .collect();
        cycles.dedup();
        let cycles: Vec<String> = cycles.iter().map(|c| c.to_string()).collect();
        report.push(format!(
            "{},{:.4},{}",
            block.name(),
            profile.max(),
            cycles.join(" ")
        ));
    }
    deliver(out, report)
}

/// `verify`: check one extracted candidate against a public key.
pub fn cmd_verify(
    candidate_hex: &str,
    bits_len: Option<usize>,
    pub_hex: &str,
) -> Result<Vec<String>, CliError> {
    let value_bits = curve_core::bits_from_hex(candidate_hex)
        .ok_or_else(|| CliError::precondition("candidate: invalid hex"))?;
    let target_len =
        bits_len.unwrap_or(candidate_hex.trim().trim_start_matches("0x").len() * 4);
    if value_bits.len() > target_len {
        return Err(CliError::precondition(format!(
            "candidate needs {} bits but --bits is {target_len}",
            value_bits.len()
        )));
    }
    let mut bits = vec![false; target_len - value_bits.len()];
    bits.extend_from_slice(&value_bits);
    let candidate = KeyCandidate {
        bits,
        source: 0,
        polarity: Polarity::Direct,
    };
    let public = parse_sec1(pub_hex)?;
    match verify_candidate(&candidate, &public, &generator()) {
        Some(polarity) => {
            let bits = match polarity {
                Polarity::Direct => candidate.bits.clone(),
                Polarity::Complement => candidate.complemented().bits,
            };
            let mut full = vec![true];
            full.extend_from_slice(&bits);
            Ok(vec![format!(
                "match: scalar {} ({:?} polarity)",
                curve_core::bits_to_hex(&full),
                polarity
            )])
        }
        None => Err(CliError::NothingFound(
            "candidate does not match the public key in either polarity".to_string(),
        )),
    }
}
