use crate::error::{Error, Result};

pub const DEFAULT_GUARD_BITS: u32 = 64;
pub const MIN_BITS: u32 = 32;

/// Working binary precision for a computation.
///
/// Values are produced at `bits + guard_bits`; results are trusted to
/// `bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub fn new(bits: u32) -> Result<Self> {
        Self::with_guard(bits, DEFAULT_GUARD_BITS)
    }

    pub fn with_guard(bits: u32, guard_bits: u32) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(Error::domain("context precision must be at least 32 bits"));
        }
        if bits.checked_add(guard_bits).is_none() {
            return Err(Error::domain("context precision overflows"));
        }
        Ok(PrecisionContext { bits, guard_bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Precision every intermediate is rounded to.
    pub fn working(&self) -> u32 {
        self.bits + self.guard_bits
    }

    /// Same guard policy, different target precision.
    pub fn resized(&self, bits: u32) -> Result<Self> {
        Self::with_guard(bits, self.guard_bits)
    }
}
