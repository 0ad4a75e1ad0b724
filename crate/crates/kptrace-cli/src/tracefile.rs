//! The KPT1 trace container: a fixed little-endian header followed by the
//! samples as 64-bit IEEE-754 values.
//!
//! | offset | size | field              |
//! |--------|------|--------------------|
//! | 0      | 4    | magic "KPT1"       |
//! | 4      | 4    | format version (1) |
//! | 8      | 8    | num_samples        |
//! | 16     | 4    | samples_per_cycle  |
//! | 20     | 4    | cycles_per_slot    |
//! | 24     | 4    | num_slots          |
//! | 28     | 8    | preamble_samples   |
//! | 36     | ...  | samples, f64 LE    |

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use power_model::Trace;

use crate::error::CliError;

pub const MAGIC: [u8; 4] = *b"KPT1";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 36;

/// Serializes a trace. The write is atomic: a temporary file in the target
/// directory is renamed over the destination only once fully written.
pub fn write_trace(path: &Path, trace: &Trace) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp_path = path.with_extension("kpt.tmp");
    {
        let file = File::create(&tmp_path).map_err(CliError::io(&tmp_path))?;
        let mut w = BufWriter::new(file);
        let mut header = Vec::with_capacity(HEADER_LEN);
        header.extend_from_slice(&MAGIC);
        header.extend_from_slice(&VERSION.to_le_bytes());
        header.extend_from_slice(&(trace.samples().len() as u64).to_le_bytes());
        header.extend_from_slice(&trace.samples_per_cycle().to_le_bytes());
        header.extend_from_slice(&(trace.cycles_per_slot() as u32).to_le_bytes());
        header.extend_from_slice(&(trace.num_slots() as u32).to_le_bytes());
        header.extend_from_slice(&trace.preamble_samples().to_le_bytes());
        debug_assert_eq!(header.len(), HEADER_LEN);
        w.write_all(&header).map_err(CliError::io(&tmp_path))?;
        for s in trace.samples() {
            w.write_all(&s.to_le_bytes()).map_err(CliError::io(&tmp_path))?;
        }
        w.flush().map_err(CliError::io(&tmp_path))?;
    }
    fs::rename(&tmp_path, path).map_err(CliError::io(path))?;
    if let Some(dir) = dir {
        // Renames persist once the directory entry does; ignore platforms
        // where directories cannot be fsynced.
        let _ = File::open(dir).and_then(|d| d.sync_all());
    }
    Ok(())
}

pub fn read_trace(path: &Path) -> Result<Trace, CliError> {
    let file = File::open(path).map_err(CliError::io(path))?;
    let mut r = BufReader::new(file);
    let mut header = [0u8; HEADER_LEN];
    r.read_exact(&mut header).map_err(|_| {
        CliError::Format(format!("{}: truncated header", path.display()))
    })?;

    if header[0..4] != MAGIC {
        return Err(CliError::Format(format!(
            "{}: bad magic, not a KPT1 trace",
            path.display()
        )));
    }
    let u32_at = |o: usize| u32::from_le_bytes(header[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(header[o..o + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(CliError::Format(format!(
            "{}: unsupported format version {version}",
            path.display()
        )));
    }
    let num_samples = u64_at(8);
    let spc = u32_at(16);
    let cycles_per_slot = u32_at(20) as u64;
    let num_slots = u32_at(24) as u64;
    let preamble_samples = u64_at(28);

    if spc == 0 {
        return Err(CliError::Format(format!(
            "{}: samples_per_cycle is zero",
            path.display()
        )));
    }
    if preamble_samples % spc as u64 != 0 {
        return Err(CliError::Format(format!(
            "{}: preamble_samples not a multiple of samples_per_cycle",
            path.display()
        )));
    }
    let expected = preamble_samples + num_slots * cycles_per_slot * spc as u64;
    if num_samples != expected {
        return Err(CliError::Format(format!(
            "{}: header claims {num_samples} samples, geometry implies {expected}",
            path.display()
        )));
    }

    let mut payload = Vec::new();
    r.read_to_end(&mut payload).map_err(CliError::io(path))?;
    if payload.len() as u64 != num_samples * 8 {
        return Err(CliError::Format(format!(
            "{}: payload holds {} bytes, header claims {} samples",
            path.display(),
            payload.len(),
            num_samples
        )));
    }
    let samples: Vec<f64> = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();

    Trace::new(
        samples,
        spc,
        cycles_per_slot,
        num_slots,
        preamble_samples / spc as u64,
    )
    .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}
