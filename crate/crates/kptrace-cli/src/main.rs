use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kptrace::{
    cmd_attack_cmta, cmd_attack_spa, cmd_block_study, cmd_simulate, cmd_verify, CliError,
    CmtaArgs, Design, ExperimentConfig, SpaArgs,
};
use power_model::{Block, DEFAULT_ADDR_SEED};

#[derive(Parser)]
#[command(
    name = "kptrace",
    about = "Simulate kP power traces on secp256k1 and run single-trace attacks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DesignArg {
    Plain,
    Randomized,
}

impl From<DesignArg> for Design {
    fn from(d: DesignArg) -> Design {
        match d {
            DesignArg::Plain => Design::Plain,
            DesignArg::Randomized => Design::Randomized,
        }
    }
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// Design variant to execute.
    #[arg(long, value_enum, default_value = "plain")]
    design: DesignArg,
    /// Scalar as big-endian hex; the bit length is derived from the value.
    #[arg(long)]
    scalar: Option<String>,
    /// Random-order bits as hex (randomized design; low bits are consumed).
    #[arg(long)]
    rand: Option<String>,
    /// Generate the random-order bits from this seed instead.
    #[arg(long)]
    rand_seed: Option<u64>,
    /// Samples per clock cycle (1 = coarse, 100 = fine).
    #[arg(long, default_value_t = 1)]
    spc: u32,
    /// Gaussian noise standard deviation; 0 is the noise-free reference.
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    /// Seed for every random choice (noise, generated rand bits).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Design block to trace: TOP, REGFILE, MMALU, FSM, CONTROLLER, COUNTER.
    #[arg(long, default_value = "TOP")]
    block: String,
    /// Leakage weights as "hd,hw,addr".
    #[arg(long, value_parser = parse_weights)]
    weights: Option<(f64, f64, f64)>,
    /// Seed freezing the address-decoder coefficients.
    #[arg(long, default_value_t = DEFAULT_ADDR_SEED)]
    addr_seed: u64,
}

impl ConfigArgs {
    fn into_config(self) -> Result<ExperimentConfig, CliError> {
        let block = Block::from_name(&self.block)
            .ok_or_else(|| CliError::precondition(format!("unknown block '{}'", self.block)))?;
        let defaults = ExperimentConfig::default();
        Ok(ExperimentConfig {
            design: self.design.into(),
            scalar_hex: self.scalar.unwrap_or(defaults.scalar_hex),
            rand_hex: self.rand,
            rand_seed: self.rand_seed,
            samples_per_cycle: self.spc,
            sigma: self.sigma,
            seed: self.seed,
            block,
            weights: self.weights.unwrap_or(defaults.weights),
            addr_seed: self.addr_seed,
        })
    }
}

fn parse_weights(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated values: hd,hw,addr".to_string());
    }
    let mut vals = [0.0f64; 3];
    for (v, p) in vals.iter_mut().zip(&parts) {
        *v = p
            .trim()
            .parse()
            .map_err(|e| format!("bad weight '{p}': {e}"))?;
        if *v < 0.0 || !v.is_finite() {
            return Err(format!("weight '{p}' must be finite and non-negative"));
        }
    }
    Ok((vals[0], vals[1], vals[2]))
}

#[derive(Subcommand)]
enum Command {
    /// Execute the ladder and write a power trace file.
    Simulate {
        #[command(flatten)]
        config: ConfigArgs,
        /// Output trace path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Comparison-to-the-mean attack on a trace file.
    AttackCmta {
        /// Input trace (KPT1).
        trace: PathBuf,
        /// Known scalar hex: designer mode, emits the correctness profile.
        #[arg(long)]
        key: Option<String>,
        /// Public key (SEC1 uncompressed): attacker mode verification.
        #[arg(long = "pub")]
        public: Option<String>,
        /// Report max(c, 100-c) instead of the direct polarity.
        #[arg(long)]
        fold: bool,
        /// First sample of slot 0 (default: from the trace header).
        #[arg(long)]
        offset: Option<u64>,
        /// Samples per slot (default: from the trace header).
        #[arg(long)]
        slot_len: Option<u64>,
        /// Candidates to list in attacker mode.
        #[arg(long, default_value_t = 5)]
        top: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Automated SPA: report samples splitting into two clean clusters.
    AttackSpa {
        trace: PathBuf,
        /// Minimum share of the spread the largest gap must claim.
        #[arg(long, default_value_t = 0.5)]
        gap_ratio: f64,
        /// Known scalar hex: keep only findings matching it exactly.
        #[arg(long)]
        key: Option<String>,
        /// Dump this sample's value across slots instead of attacking.
        #[arg(long)]
        dump: Option<u64>,
        /// Slots to include in the dump.
        #[arg(long, default_value_t = 50)]
        dump_slots: u64,
        #[arg(long)]
        offset: Option<u64>,
        #[arg(long)]
        slot_len: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attack every design block and tabulate where each one leaks.
    BlockStudy {
        #[command(flatten)]
        config: ConfigArgs,
        /// Correctness threshold for the reported cycle lists, percent.
        #[arg(long, default_value_t = 100.0)]
        threshold: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an extracted candidate against a public key.
    Verify {
        /// Candidate bits as hex (the processed bits, msb excluded).
        #[arg(long)]
        candidate: String,
        /// Bit length of the candidate, for leading zeros.
        #[arg(long)]
        bits: Option<usize>,
        #[arg(long = "pub")]
        public: String,
    },
}

fn run(cli: Cli) -> Result<Vec<String>, CliError> {
    match cli.command {
        Command::Simulate { config, out } => cmd_simulate(&config.into_config()?, &out),
        Command::AttackCmta {
            trace,
            key,
            public,
            fold,
            offset,
            slot_len,
            top,
            out,
        } => cmd_attack_cmta(&CmtaArgs {
            trace,
            key_hex: key,
            pub_hex: public,
            fold,
            offset,
            slot_len,
            top,
            out,
        }),
        Command::AttackSpa {
            trace,
            gap_ratio,
            key,
            dump,
            dump_slots,
            offset,
            slot_len,
            out,
        } => cmd_attack_spa(&SpaArgs {
            trace,
            gap_ratio,
            key_hex: key,
            dump_sample: dump,
            dump_slots,
            offset,
            slot_len,
            out,
        }),
        Command::BlockStudy {
            config,
            threshold,
            out,
        } => cmd_block_study(&config.into_config()?, threshold, out.as_deref()),
        Command::Verify {
            candidate,
            bits,
            public,
        } => cmd_verify(&candidate, bits, &public),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(lines) => {
            // Tolerate a closed pipe (e.g. piping into head).
            use std::io::Write;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for line in lines {
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
