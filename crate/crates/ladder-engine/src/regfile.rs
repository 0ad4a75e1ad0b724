//! The 11-register file model and its fixed role map.
//!
//! | addr | role |
//! |------|------------------------------------------|
//! | 0    | R0.X (ladder point R0, result register)  |
//! | 1    | R0.Y                                     |
//! | 2    | R0.Z                                     |
//! | 3    | R1.X (ladder point R1)                   |
//! | 4    | R1.Y                                     |
//! | 5    | R1.Z                                     |
//! | 6    | t0 (formula temporary, copy-back bounce) |
//! | 7    | t1                                       |
//! | 8    | t2                                       |
//! | 9    | t3                                       |
//! | 10   | t4                                       |
//!
//! Six registers hold the two operand points, five hold the formula
//! temporaries, and three of the six operand registers are reused for the
//! formula output: the result of a point operation lands in the home of the
//! ladder point it replaces (X in that home's Y register, Y in its X
//! register, Z in place), because those are exactly the input registers that
//! fall dead early enough in the formula. The iteration's temporary points
//! T0 and T1 are therefore staged in the R0 and R1 homes until the trailing
//! copy-back restores canonical coordinate order.

use crate::event::{Word, ZERO_WORD};

pub const REGISTER_COUNT: usize = 11;

/// The three register addresses holding one ladder point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointHome {
    pub x: u8,
    pub y: u8,
    pub z: u8,
}

pub const R0_HOME: PointHome = PointHome { x: 0, y: 1, z: 2 };
pub const R1_HOME: PointHome = PointHome { x: 3, y: 4, z: 5 };

/// First temporary register; t_i lives at TEMP_BASE + i.
pub const TEMP_BASE: u8 = 6;

/// Bounce register used by the copy-back coordinate swap.
pub const BOUNCE_REG: u8 = TEMP_BASE;

/// Register contents, tracked so every write event can record the old and
/// the new word.
#[derive(Clone, Debug)]
pub struct RegisterFileModel {
    regs: [Word; REGISTER_COUNT],
}

impl RegisterFileModel {
    pub fn new() -> RegisterFileModel {
        RegisterFileModel {
            regs: [ZERO_WORD; REGISTER_COUNT],
        }
    }

    pub fn read(&self, addr: u8) -> Word {
        self.regs[addr as usize]
    }

    /// Writes `value`, returning the displaced word.
    pub fn write(&mut self, addr: u8, value: Word) -> Word {
        let old = self.regs[addr as usize];
        self.regs[addr as usize] = value;
        old
    }
}

impl Default for RegisterFileModel {
    fn default() -> Self {
        RegisterFileModel::new()
    }
}
