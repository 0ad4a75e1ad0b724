//! CLI behaviour through the real binary and the library surface.

use std::path::Path;
use std::process::Command;

use kptrace::{
    cmd_simulate, tracefile, Design, ExperimentConfig, DEFAULT_RAND_HEX, DEFAULT_SCALAR_HEX,
};
use power_model::Trace;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kptrace"))
}

fn simulate_small(dir: &Path, name: &str, cfg: &ExperimentConfig) -> std::path::PathBuf {
    let path = dir.join(name);
    cmd_simulate(cfg, &path).unwrap();
    path
}

fn small_config() -> ExperimentConfig {
    ExperimentConfig {
        scalar_hex: "b5a9c3".to_string(),
        ..ExperimentConfig::default()
    }
}

#[test]
fn trace_file_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let path = simulate_small(dir.path(), "t.kpt", &cfg);
    let trace = tracefile::read_trace(&path).unwrap();

    // Write it again and compare bytes.
    let again = dir.path().join("t2.kpt");
    tracefile::write_trace(&again, &trace).unwrap();
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn repeated_simulation_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config();
    cfg.sigma = 1.5;
    cfg.seed = 99;
    let a = simulate_small(dir.path(), "a.kpt", &cfg);
    let b = simulate_small(dir.path(), "b.kpt", &cfg);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn corrupt_headers_are_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let path = simulate_small(dir.path(), "t.kpt", &cfg);
    let bytes = std::fs::read(&path).unwrap();

    // Bad magic.
    let mut bad = bytes.clone();
    bad[0] = b'X';
    let bad_path = dir.path().join("bad_magic.kpt");
    std::fs::write(&bad_path, &bad).unwrap();
    let out = bin().arg("attack-cmta").arg(&bad_path).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Truncated payload.
    let cut = &bytes[..bytes.len() - 8];
    let cut_path = dir.path().join("cut.kpt");
    std::fs::write(&cut_path, cut).unwrap();
    let out = bin().arg("attack-cmta").arg(&cut_path).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Inconsistent geometry.
    let mut skewed = bytes;
    skewed[24] ^= 1; // num_slots
    let skew_path = dir.path().join("skew.kpt");
    std::fs::write(&skew_path, &skewed).unwrap();
    let out = bin().arg("attack-cmta").arg(&skew_path).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_codes_by_failure_class() {
    // Missing file: I/O error.
    let out = bin().arg("attack-cmta").arg("/nonexistent.kpt").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Bad scalar hex: precondition.
    let out = bin()
        .args(["simulate", "--scalar", "zz", "--out", "/tmp/never.kpt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));

    // Even scalar (msb derivation fine, but zero value) is a precondition error.
    let out = bin()
        .args(["simulate", "--scalar", "00", "--out", "/tmp/never.kpt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));

    // Unknown block name.
    let out = bin()
        .args(["simulate", "--block", "ALU9", "--out", "/tmp/never.kpt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn spa_with_no_leakage_reports_nothing_found() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config();
    cfg.weights = (0.0, 0.0, 0.0);
    let path = simulate_small(dir.path(), "flat.kpt", &cfg);
    let out = bin().arg("attack-spa").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(5), "ran but found nothing");
}

#[test]
fn simulate_summary_reports_scalar_bits_and_notes_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.kpt");
    let out = bin()
        .args(["simulate", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    // Default scalar parses to 244 bits; the documented figure is flagged,
    // never silently substituted.
    assert!(stdout.contains("# scalar_bits: 244"), "{stdout}");
    assert!(stdout.contains("documented as 252"), "{stdout}");
    assert!(stdout.contains("num_slots=243"), "{stdout}");
}

#[test]
fn default_rand_bits_are_consumed_with_truncation_note() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.kpt");
    let out = bin()
        .args([
            "simulate",
            "--design",
            "randomized",
            "--rand",
            DEFAULT_RAND_HEX,
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("dropped 3 high bits"), "{stdout}");

    // Same scalar, same result point as the plain design.
    let plain = dir.path().join("p.kpt");
    let out_plain = bin()
        .args(["simulate", "--scalar", DEFAULT_SCALAR_HEX, "--out"])
        .arg(&plain)
        .output()
        .unwrap();
    let line = |s: &str| {
        String::from_utf8_lossy(s.as_bytes())
            .lines()
            .find(|l| l.starts_with("# result:"))
            .unwrap()
            .to_string()
    };
    assert_eq!(
        line(&String::from_utf8(out_plain.stdout).unwrap()),
        line(&stdout)
    );
}

#[test]
fn weights_flag_parses_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.kpt");
    let ok = bin()
        .args(["simulate", "--scalar", "b5", "--weights", "1.0,0.2,0.5", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(ok.status.success());

    let bad = bin()
        .args(["simulate", "--weights", "1.0,0.2", "--out", "/tmp/never.kpt"])
        .output()
        .unwrap();
    assert!(!bad.status.success());
}

#[test]
fn verify_subcommand_matches_polarities() {
    // Scalar 0xb5 = 10110101: processed bits 0110101 = 0x35 over 7 bits.
    let g = curve_core::generator();
    let key_bits = curve_core::bits_from_hex("b5").unwrap();
    let public = curve_core::reference_scalar_mul(&key_bits, &g);
    let pub_hex = kptrace::format_sec1(&public);

    let out = bin()
        .args(["verify", "--candidate", "35", "--bits", "7", "--pub", &pub_hex])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("match: scalar b5"), "{stdout}");

    // Complement: 1001010 = 0x4a.
    let out = bin()
        .args(["verify", "--candidate", "4a", "--bits", "7", "--pub", &pub_hex])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("Complement"));

    // A wrong candidate exits 5.
    let out = bin()
        .args(["verify", "--candidate", "36", "--bits", "7", "--pub", &pub_hex])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn csv_reports_are_stable_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let trace_path = simulate_small(dir.path(), "t.kpt", &cfg);

    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    for csv in [&csv_a, &csv_b] {
        let out = bin()
            .arg("attack-cmta")
            .arg(&trace_path)
            .args(["--key", &cfg.scalar_hex, "--out"])
            .arg(csv)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a = std::fs::read(&csv_a).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(&csv_b).unwrap());
}

#[test]
fn spa_dump_emits_fig8_style_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let trace_path = simulate_small(dir.path(), "t.kpt", &cfg);
    let out = bin()
        .arg("attack-spa")
        .arg(&trace_path)
        .args(["--dump", "73", "--dump-slots", "50"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("slot_index,value"));
    // 24-bit scalar: 23 slots available, fewer than the 50 requested.
    let rows = stdout.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 1 + 23);
}

#[test]
fn block_study_table_structure() {
    let out = bin()
        .args(["block-study", "--scalar", "8f3177ac221094d5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();

    let row = |name: &str| -> (f64, Vec<u64>) {
        let line = stdout
            .lines()
            .find(|l| l.starts_with(&format!("{name},")))
            .unwrap_or_else(|| panic!("missing row {name}"));
        let mut fields = line.splitn(3, ',');
        fields.next();
        let max: f64 = fields.next().unwrap().parse().unwrap();
        let cycles = fields
            .next()
            .unwrap()
            .split_whitespace()
            .map(|c| c.parse().unwrap())
            .collect();
        (max, cycles)
    };

    let (regfile_max, regfile_cycles) = row("REGFILE");
    assert_eq!(regfile_max, 100.0);
    assert!(!regfile_cycles.is_empty());

    let (top_max, top_cycles) = row("TOP");
    assert_eq!(top_max, 100.0);
    // With every weight active, the whole-design 100% cycles cover the
    // register file's.
    assert!(regfile_cycles.iter().all(|c| top_cycles.contains(c)));

    for name in ["FSM", "CONTROLLER"] {
        let (max, _) = row(name);
        assert!(max < 62.0, "{name} should sit at chance level, got {max}");
    }
}

#[test]
fn cmta_attacker_mode_with_wrong_pub_exits_nothing_found() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let trace_path = simulate_small(dir.path(), "t.kpt", &cfg);
    // A public key for a different scalar.
    let other = curve_core::reference_scalar_mul(
        &curve_core::bits_from_hex("c0ffee").unwrap(),
        &curve_core::generator(),
    );
    let out = bin()
        .arg("attack-cmta")
        .arg(&trace_path)
        .args(["--pub", &kptrace::format_sec1(&other)])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn cmta_attacker_mode_with_right_pub_recovers_the_scalar() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let trace_path = simulate_small(dir.path(), "t.kpt", &cfg);
    let public = curve_core::reference_scalar_mul(
        &curve_core::bits_from_hex(&cfg.scalar_hex).unwrap(),
        &curve_core::generator(),
    );
    let out = bin()
        .arg("attack-cmta")
        .arg(&trace_path)
        .args(["--pub", &kptrace::format_sec1(&public)])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains(&format!("verified scalar: {}", cfg.scalar_hex)),
        "{stdout}"
    );
}

#[test]
fn geometry_overrides_reach_the_slicer() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let trace_path = simulate_small(dir.path(), "t.kpt", &cfg);
    // A bogus offset way past the end is a precondition error.
    let out = bin()
        .arg("attack-cmta")
        .arg(&trace_path)
        .args(["--offset", "999999", "--key", &cfg.scalar_hex])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

fn trace_from_samples(samples: Vec<f64>) -> Trace {
    Trace::new(samples, 1, 2, 2, 0).unwrap()
}

#[test]
fn tracefile_rejects_nonsense_and_accepts_minimal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mini.kpt");
    let trace = trace_from_samples(vec![1.0, 2.0, 3.0, 4.0]);
    tracefile::write_trace(&path, &trace).unwrap();
    let back = tracefile::read_trace(&path).unwrap();
    assert_eq!(back.samples(), trace.samples());
    assert_eq!(back.num_slots(), 2);
    assert_eq!(back.cycles_per_slot(), 2);

    assert!(matches!(
        tracefile::read_trace(Path::new("/nonexistent.kpt")),
        Err(kptrace::CliError::Io { .. })
    ));
}

#[test]
fn plain_design_notes_ignored_rand() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        design: Design::Plain,
        rand_hex: Some("1f".to_string()),
        ..small_config()
    };
    let lines = cmd_simulate(&cfg, &dir.path().join("x.kpt")).unwrap();
    assert!(lines.iter().any(|l| l.contains("ignores the rand input")));
}
