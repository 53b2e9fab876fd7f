//! Block value types shared by the pipeline stages.

use crate::error::{Error, Result};
use crate::ifz::IfzBitmap;

/// A window of raw samples.
#[derive(Clone, Debug, PartialEq)]
pub struct SignalBlock {
    samples: Vec<f64>,
}

impl SignalBlock {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyBlock);
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Samples as exact integers scaled by `10^digits`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuantizedBlock {
    codes: Vec<i64>,
    digits: u8,
}

impl QuantizedBlock {
    pub fn new(codes: Vec<i64>, digits: u8) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::EmptyBlock);
        }
        Ok(Self { codes, digits })
    }

    pub fn codes(&self) -> &[i64] {
        &self.codes
    }

    pub fn digits(&self) -> u8 {
        self.digits
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn into_codes(self) -> Vec<i64> {
        self.codes
    }
}

/// Which transform layout a stream uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodVersion {
    /// Flag-prefixed blocks; the difference branch is stored without a bitmap.
    V1,
    /// Flagless blocks; both branches carry a bitmap.
    V2,
}

impl MethodVersion {
    pub fn as_u8(self) -> u8 {
        match self {
            MethodVersion::V1 => 1,
            MethodVersion::V2 => 2,
        }
    }

    pub fn from_u8(v: u8) -> Option<Self> {
        match v {
            1 => Some(MethodVersion::V1),
            2 => Some(MethodVersion::V2),
            _ => None,
        }
    }
}

impl std::fmt::Display for MethodVersion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "v{}", self.as_u8())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Deviations from the block mode.
    Mode,
    /// Successive differences.
    Diff,
}

/// One block after the mode/difference transform and zero elimination.
///
/// Layouts:
/// - V1 mode: `header = [1, mode]`, bitmap present, payload = nonzero deviations.
/// - V1 diff: `header = [0]`, no bitmap, payload = all `len` differences.
/// - V2: `header = [mode]` or `[first code]`, bitmap present, payload = nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformedBlock {
    pub version: MethodVersion,
    pub branch: Branch,
    pub header: Vec<i64>,
    pub ifz: Option<IfzBitmap>,
    pub payload: Vec<i64>,
    pub len: usize,
}

impl TransformedBlock {
    /// Number of integers this block contributes to the symbol stream.
    pub fn symbol_count(&self) -> usize {
        self.header.len() + self.ifz.as_ref().map_or(0, |b| b.words().len()) + self.payload.len()
    }
}
