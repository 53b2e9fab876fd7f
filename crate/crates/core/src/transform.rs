//! Per-block mode/difference transform with zero elimination.
//!
//! Each block is coded either as deviations from its mode (when the mode
//! occurs at least `tau` times) or as successive differences. Zero values are
//! then dropped and recorded in an [`IfzBitmap`].
//!
//! Version 1 prefixes every block with a branch flag. Version 2 has no flag:
//! the decoder calls a block a difference block when its header equals the
//! first stored value and the bitmap's first flag is set. That rule can
//! misfire (a mode block whose first deviation equals the mode, or a
//! difference block starting at zero), so the encoder checks its own output
//! and switches branch when the decoder would guess wrong. At most one of the
//! two encodings of any block misfires, unless the mode is `i64::MIN`.
//!
//! Arithmetic is wrapping, so the transform is exact over all of `i64`.

use crate::block::{Branch, MethodVersion, QuantizedBlock, TransformedBlock};
use crate::error::{Error, Result};
use crate::ifz::{ifz_expand, ifz_pack, nonzeros, IfzBitmap};
use crate::varint::{SymbolReader, SymbolWriter};

pub const MIN_BLOCK_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransformConfig {
    pub version: MethodVersion,
    pub block_len: usize,
    pub tau: usize,
}

impl TransformConfig {
    pub fn new(version: MethodVersion, block_len: usize, tau: usize) -> Result<Self> {
        let cfg = Self {
            version,
            block_len,
            tau,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_len < MIN_BLOCK_LEN || !self.block_len.is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "block length {} is not a power of two >= {MIN_BLOCK_LEN}",
                self.block_len
            )));
        }
        if self.block_len > usize::from(u16::MAX) {
            return Err(Error::InvalidConfig(format!(
                "block length {} does not fit 16 bits",
                self.block_len
            )));
        }
        if self.tau == 0 || self.tau > self.block_len {
            return Err(Error::InvalidConfig(format!(
                "tau {} outside 1..={}",
                self.tau, self.block_len
            )));
        }
        Ok(())
    }
}

impl Default for TransformConfig {
    fn default() -> Self {
        Self {
            version: MethodVersion::V2,
            block_len: 16,
            tau: 9,
        }
    }
}

/// Most frequent value of a block and its count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeStat {
    pub value: i64,
    pub frequency: usize,
}

/// Mode of `codes`; among equally frequent values the smallest wins.
pub fn compute_mode(codes: &[i64]) -> Result<ModeStat> {
    if codes.is_empty() {
        return Err(Error::EmptyBlock);
    }
    let mut sorted = codes.to_vec();
    sorted.sort_unstable();
    let mut best = ModeStat {
        value: sorted[0],
        frequency: 0,
    };
    for run in sorted.chunk_by(|a, b| a == b) {
        if run.len() > best.frequency {
            best = ModeStat {
                value: run[0],
                frequency: run.len(),
            };
        }
    }
    Ok(best)
}

/// First value, then each value minus its predecessor.
pub fn diff_encode(codes: &[i64]) -> Result<Vec<i64>> {
    let (&first, _) = codes.split_first().ok_or(Error::EmptyBlock)?;
    let mut out = Vec::with_capacity(codes.len());
    out.push(first);
    out.extend(codes.windows(2).map(|w| w[1].wrapping_sub(w[0])));
    Ok(out)
}

fn prefix_sum(mut values: Vec<i64>) -> Vec<i64> {
    for i in 1..values.len() {
        values[i] = values[i].wrapping_add(values[i - 1]);
    }
    values
}

/// Branch a version-2 decoder infers from a block's stored fields.
pub fn detect_branch_v2(header: i64, ifz: &IfzBitmap, nonzeros: &[i64]) -> Branch {
    if ifz.width() > 0 && ifz.get(0) && nonzeros.first() == Some(&header) {
        Branch::Diff
    } else {
        Branch::Mode
    }
}

/// Transforms one full block of `cfg.block_len` codes.
pub fn transform_block(block: &QuantizedBlock, cfg: &TransformConfig) -> Result<TransformedBlock> {
    cfg.validate()?;
    if block.len() != cfg.block_len {
        return Err(Error::LengthMismatch {
            expected: cfg.block_len,
            found: block.len(),
        });
    }
    transform_codes(block.codes(), cfg.version, cfg.tau)
}

/// Transforms a block of any non-empty length; the stream tail uses this directly.
pub fn transform_codes(codes: &[i64], version: MethodVersion, tau: usize) -> Result<TransformedBlock> {
    let mode = compute_mode(codes)?;
    let branch = if mode.frequency >= tau {
        Branch::Mode
    } else {
        Branch::Diff
    };
    match version {
        MethodVersion::V1 => Ok(build_v1(codes, mode.value, branch)),
        MethodVersion::V2 => {
            let first = build_v2(codes, mode.value, branch);
            if decodes_as_built(&first) {
                return Ok(first);
            }
            let other = match branch {
                Branch::Mode => Branch::Diff,
                Branch::Diff => Branch::Mode,
            };
            let second = build_v2(codes, mode.value, other);
            if decodes_as_built(&second) {
                Ok(second)
            } else {
                Err(Error::Unresolvable)
            }
        }
    }
}

fn deviations(codes: &[i64], mode: i64) -> Vec<i64> {
    codes.iter().map(|&c| c.wrapping_sub(mode)).collect()
}

fn build_v1(codes: &[i64], mode: i64, branch: Branch) -> TransformedBlock {
    match branch {
        Branch::Mode => {
            let dev = deviations(codes, mode);
            TransformedBlock {
                version: MethodVersion::V1,
                branch,
                header: vec![1, mode],
                ifz: Some(ifz_pack(&dev)),
                payload: nonzeros(&dev),
                len: codes.len(),
            }
        }
        Branch::Diff => TransformedBlock {
            version: MethodVersion::V1,
            branch,
            header: vec![0],
            ifz: None,
            payload: diff_encode(codes).expect("non-empty block"),
            len: codes.len(),
        },
    }
}

fn build_v2(codes: &[i64], mode: i64, branch: Branch) -> TransformedBlock {
    let (header, values) = match branch {
        Branch::Mode => (mode, deviations(codes, mode)),
        Branch::Diff => (codes[0], diff_encode(codes).expect("non-empty block")),
    };
    TransformedBlock {
        version: MethodVersion::V2,
        branch,
        header: vec![header],
        ifz: Some(ifz_pack(&values)),
        payload: nonzeros(&values),
        len: codes.len(),
    }
}

fn decodes_as_built(tb: &TransformedBlock) -> bool {
    let ifz = tb.ifz.as_ref().expect("v2 blocks carry a bitmap");
    detect_branch_v2(tb.header[0], ifz, &tb.payload) == tb.branch
}

/// Recovers the block codes from a transformed block.
pub fn inverse_transform(tb: &TransformedBlock, cfg: &TransformConfig) -> Result<Vec<i64>> {
    if tb.version != cfg.version {
        return Err(Error::corrupt(format!(
            "{} block in a {} stream",
            tb.version, cfg.version
        )));
    }
    if tb.len == 0 || tb.len > cfg.block_len {
        return Err(Error::LengthMismatch {
            expected: cfg.block_len,
            found: tb.len,
        });
    }
    inverse_codes(tb)
}

fn expanded(tb: &TransformedBlock) -> Result<Vec<i64>> {
    let ifz = tb
        .ifz
        .as_ref()
        .ok_or_else(|| Error::corrupt("block is missing its bitmap"))?;
    if ifz.width() != tb.len {
        return Err(Error::corrupt(format!(
            "bitmap width {} for block of {}",
            ifz.width(),
            tb.len
        )));
    }
    ifz_expand(ifz, &tb.payload)
}

pub(crate) fn inverse_codes(tb: &TransformedBlock) -> Result<Vec<i64>> {
    let header_len = tb.header.len();
    match (tb.version, tb.branch) {
        (MethodVersion::V1, branch) => {
            let flag = *tb.header.first().ok_or_else(|| Error::corrupt("empty header"))?;
            match (flag, branch, header_len) {
                (1, Branch::Mode, 2) => {
                    let mode = tb.header[1];
                    Ok(expanded(tb)?.into_iter().map(|d| d.wrapping_add(mode)).collect())
                }
                (0, Branch::Diff, 1) => {
                    if tb.payload.len() != tb.len {
                        return Err(Error::CountMismatch {
                            expected: tb.len,
                            found: tb.payload.len(),
                        });
                    }
                    Ok(prefix_sum(tb.payload.clone()))
                }
                (0 | 1, _, _) => Err(Error::corrupt("header does not match block branch")),
                (other, _, _) => Err(Error::BadFlag(other)),
            }
        }
        (MethodVersion::V2, branch) => {
            if header_len != 1 {
                return Err(Error::corrupt("v2 header must hold one value"));
            }
            let values = expanded(tb)?;
            Ok(match branch {
                Branch::Mode => {
                    let mode = tb.header[0];
                    values.into_iter().map(|d| d.wrapping_add(mode)).collect()
                }
                Branch::Diff => prefix_sum(values),
            })
        }
    }
}

/// Appends a block's symbols in stream order.
pub fn write_block(tb: &TransformedBlock, out: &mut SymbolWriter) {
    for &h in &tb.header {
        out.put_signed(h);
    }
    if let Some(ifz) = &tb.ifz {
        for &w in ifz.words() {
            out.put_unsigned(w);
        }
    }
    for &v in &tb.payload {
        out.put_signed(v);
    }
}

fn read_bitmap(r: &mut SymbolReader<'_>, len: usize) -> Result<IfzBitmap> {
    let words = (0..len.div_ceil(64))
        .map(|_| r.unsigned())
        .collect::<Result<Vec<_>>>()?;
    IfzBitmap::from_words(len, &words)
}

fn read_values(r: &mut SymbolReader<'_>, n: usize) -> Result<Vec<i64>> {
    (0..n).map(|_| r.signed()).collect()
}

/// Reads the next block of `len` samples from a symbol stream.
pub fn read_block(r: &mut SymbolReader<'_>, version: MethodVersion, len: usize) -> Result<TransformedBlock> {
    match version {
        MethodVersion::V1 => match r.signed()? {
            1 => {
                let mode = r.signed()?;
                let ifz = read_bitmap(r, len)?;
                let payload = read_values(r, ifz.count_ones())?;
                Ok(TransformedBlock {
                    version,
                    branch: Branch::Mode,
                    header: vec![1, mode],
                    ifz: Some(ifz),
                    payload,
                    len,
                })
            }
            0 => Ok(TransformedBlock {
                version,
                branch: Branch::Diff,
                header: vec![0],
                ifz: None,
                payload: read_values(r, len)?,
                len,
            }),
            flag => Err(Error::BadFlag(flag)),
        },
        MethodVersion::V2 => {
            let header = r.signed()?;
            let ifz = read_bitmap(r, len)?;
            let payload = read_values(r, ifz.count_ones())?;
            Ok(TransformedBlock {
                version,
                branch: detect_branch_v2(header, &ifz, &payload),
                header: vec![header],
                ifz: Some(ifz),
                payload,
                len,
            })
        }
    }
}
