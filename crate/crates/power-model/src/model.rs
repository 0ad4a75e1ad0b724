//! The leakage model: what each event contributes to a cycle's power.

use ladder_engine::{Unit, Word, REGISTER_COUNT};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn hamming_weight(w: Word) -> u32 {
    w.iter().map(|limb| limb.count_ones()).sum()
}

pub fn hamming_distance(a: Word, b: Word) -> u32 {
    a.iter().zip(b.iter()).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// A set of design blocks contributing to a trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitMask(u8);

impl UnitMask {
    pub const EMPTY: UnitMask = UnitMask(0);
    pub const ALL: UnitMask = UnitMask(0b1_1111);

    pub fn single(unit: Unit) -> UnitMask {
        UnitMask(1 << unit_index(unit))
    }

    pub fn with(self, unit: Unit) -> UnitMask {
        UnitMask(self.0 | 1 << unit_index(unit))
    }

    pub fn contains(self, unit: Unit) -> bool {
        self.0 & (1 << unit_index(unit)) != 0
    }
}

pub(crate) fn unit_index(unit: Unit) -> usize {
    match unit {
        Unit::RegFile => 0,
        Unit::Mmalu => 1,
        Unit::Fsm => 2,
        Unit::Controller => 3,
        Unit::Counter => 4,
    }
}

/// A whole-design or single-block trace selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Top,
    Unit(Unit),
}

impl Block {
    pub const ALL: [Block; 6] = [
        Block::Top,
        Block::Unit(Unit::RegFile),
        Block::Unit(Unit::Mmalu),
        Block::Unit(Unit::Fsm),
        Block::Unit(Unit::Controller),
        Block::Unit(Unit::Counter),
    ];

    pub fn from_name(s: &str) -> Option<Block> {
        if s.eq_ignore_ascii_case("top") {
            Some(Block::Top)
        } else {
            Unit::from_name(s).map(Block::Unit)
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Block::Top => "TOP",
            Block::Unit(u) => u.name(),
        }
    }

    pub fn mask(self) -> UnitMask {
        match self {
            Block::Top => UnitMask::ALL,
            Block::Unit(u) => UnitMask::single(u),
        }
    }
}

/// Fixed seed for the default address-decoder coefficients.
pub const DEFAULT_ADDR_SEED: u64 = 0x00C0_FFEE;

/// Spacing of the address-decoder coefficient ramp. The smallest pairwise
/// coefficient difference times the address weight has to dominate the
/// spread of the data-dependent terms (a few hundred bits of Hamming
/// weight/distance), otherwise address selection would not separate power
/// clusters cleanly at desk scale.
pub const ADDR_COEFF_SPACING: f64 = 400.0;

/// Per-register address-decoder coefficients: a well-separated ramp,
/// shuffled once from `seed` and then frozen. Pairwise distinct by
/// construction.
pub fn addr_coefficients(seed: u64) -> [f64; REGISTER_COUNT] {
    let mut values: Vec<f64> = (1..=REGISTER_COUNT)
        .map(|i| ADDR_COEFF_SPACING * i as f64)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    values.shuffle(&mut rng);
    let mut out = [0.0; REGISTER_COUNT];
    out.copy_from_slice(&values);
    out
}

/// Weights mapping events onto power, in arbitrary units (model parameters,
/// not physics).
///
/// A register-file write contributes `w_hd`·HD(old, new) + `w_hw`·HW(new)
/// plus the address-decoder term `w_addr`·addr_coeff[address]; ALU and CTRL
/// events contribute their Hamming terms only. Reads carry no data and are
/// silent.
#[derive(Clone, Debug)]
pub struct LeakageModel {
    pub w_hd: f64,
    pub w_hw: f64,
    pub w_addr: f64,
    pub addr_coeff: [f64; REGISTER_COUNT],
    pub unit_mask: UnitMask,
    pub baseline: f64,
}

impl LeakageModel {
    /// The reference configuration: all blocks, default weights, default
    /// coefficient seed.
    pub fn default_model() -> LeakageModel {
        LeakageModel {
            w_hd: 1.0,
            w_hw: 0.2,
            w_addr: 0.5,
            addr_coeff: addr_coefficients(DEFAULT_ADDR_SEED),
            unit_mask: UnitMask::ALL,
            baseline: 1.0,
        }
    }

    pub fn with_mask(mut self, mask: UnitMask) -> LeakageModel {
        self.unit_mask = mask;
        self
    }

    pub fn with_weights(mut self, w_hd: f64, w_hw: f64, w_addr: f64) -> LeakageModel {
        self.w_hd = w_hd;
        self.w_hw = w_hw;
        self.w_addr = w_addr;
        self
    }
}
