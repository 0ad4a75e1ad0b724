//! Experiment runner and I/O for the trace laboratory: trace simulation,
//! the two single-trace attacks, per-block studies and candidate
//! verification, plus the on-disk trace container.

pub mod commands;
pub mod config;
pub mod error;
pub mod tracefile;

pub use commands::{
    cmd_attack_cmta, cmd_attack_spa, cmd_block_study, cmd_simulate, cmd_verify, run_experiment,
    CmtaArgs, Experiment, SpaArgs,
};
pub use config::{
    format_sec1, parse_sec1, Design, ExperimentConfig, DEFAULT_RAND_HEX, DEFAULT_SCALAR_HEX,
    DOCUMENTED_SCALAR_BITS,
};
pub use error::{exit_code, CliError};
