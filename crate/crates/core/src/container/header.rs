//! Fixed 24-byte little-endian stream header.
//!
//! | offset | size | field                                        |
//! |--------|------|----------------------------------------------|
//! | 0      | 4    | magic `NLTS`                                 |
//! | 4      | 1    | format version (1)                           |
//! | 5      | 1    | method version (1 or 2)                      |
//! | 6      | 1    | entropy coder id (0, 1, 2)                   |
//! | 7      | 1    | scale: digits 0..=6, or 255 for lossless     |
//! | 8      | 2    | block length L                               |
//! | 10     | 2    | tau                                          |
//! | 12     | 8    | sample count                                 |
//! | 20     | 1    | lossless scale digits (0 unless scale = 255) |
//! | 21     | 3    | reserved, zero                               |

use crate::block::MethodVersion;
use crate::entropy::EntropyCoderId;
use crate::error::{Error, Result};
use crate::quantizer::MAX_DIGITS;
use crate::transform::TransformConfig;

pub const MAGIC: [u8; 4] = *b"NLTS";
pub const FORMAT_VERSION: u8 = 1;
pub const HEADER_LEN: usize = 24;
/// Scale byte marking a lossless stream.
pub const LOSSLESS_SCALE: u8 = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Rounded to this many fractional digits.
    Rounded(u8),
    /// Exact input, scaled by the detected number of fractional digits.
    Lossless(u8),
}

impl Scale {
    pub fn digits(self) -> u8 {
        match self {
            Scale::Rounded(d) | Scale::Lossless(d) => d,
        }
    }

    pub fn is_lossless(self) -> bool {
        matches!(self, Scale::Lossless(_))
    }

    pub fn epsilon(self) -> f64 {
        match self {
            Scale::Lossless(_) => 0.0,
            Scale::Rounded(d) => 10f64.powi(-i32::from(d)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StreamHeader {
    pub method: MethodVersion,
    pub coder: EntropyCoderId,
    pub block_len: u16,
    pub tau: u16,
    pub scale: Scale,
    pub sample_count: u64,
}

impl StreamHeader {
    pub fn transform_config(&self) -> TransformConfig {
        TransformConfig {
            version: self.method,
            block_len: usize::from(self.block_len),
            tau: usize::from(self.tau),
        }
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4] = FORMAT_VERSION;
        out[5] = self.method.as_u8();
        out[6] = self.coder.as_u8();
        let (scale, lossless_digits) = match self.scale {
            Scale::Rounded(d) => (d, 0),
            Scale::Lossless(d) => (LOSSLESS_SCALE, d),
        };
        out[7] = scale;
        out[8..10].copy_from_slice(&self.block_len.to_le_bytes());
        out[10..12].copy_from_slice(&self.tau.to_le_bytes());
        out[12..20].copy_from_slice(&self.sample_count.to_le_bytes());
        out[20] = lossless_digits;
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            if bytes.len() >= 4 && bytes[0..4] != MAGIC {
                return Err(Error::BadMagic(bytes[0..4].try_into().expect("4 bytes")));
            }
            return Err(Error::InvalidHeader(format!(
                "{} bytes is shorter than the {HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        let magic: [u8; 4] = bytes[0..4].try_into().expect("4 bytes");
        if magic != MAGIC {
            return Err(Error::BadMagic(magic));
        }
        if bytes[4] != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(bytes[4]));
        }
        let method = MethodVersion::from_u8(bytes[5])
            .ok_or_else(|| Error::InvalidHeader(format!("unknown method version {}", bytes[5])))?;
        let coder = EntropyCoderId::from_u8(bytes[6])?;
        let scale = match (bytes[7], bytes[20]) {
            (LOSSLESS_SCALE, d) if d <= MAX_DIGITS => Scale::Lossless(d),
            (d, 0) if d <= MAX_DIGITS => Scale::Rounded(d),
            (s, d) => {
                return Err(Error::InvalidHeader(format!(
                    "invalid scale byte {s} with lossless digits {d}"
                )))
            }
        };
        let block_len = u16::from_le_bytes([bytes[8], bytes[9]]);
        let tau = u16::from_le_bytes([bytes[10], bytes[11]]);
        let sample_count = u64::from_le_bytes(bytes[12..20].try_into().expect("8 bytes"));
        if bytes[21..24] != [0, 0, 0] {
            return Err(Error::InvalidHeader("reserved bytes are not zero".into()));
        }
        if sample_count == 0 {
            return Err(Error::InvalidHeader("sample count is zero".into()));
        }
        let header = StreamHeader {
            method,
            coder,
            block_len,
            tau,
            scale,
            sample_count,
        };
        header
            .transform_config()
            .validate()
            .map_err(|e| Error::InvalidHeader(e.to_string()))?;
        Ok(header)
    }
}
