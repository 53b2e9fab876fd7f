//! Decimal quantization of samples to scaled integers and back.
//!
//! Rounding mode keeps `digits` fractional digits, rounding half away from
//! zero, so every sample moves by at most `0.5 * 10^-digits`. Lossless mode
//! picks the smallest scale that represents every input exactly.
//!
//! Decimal text is parsed digit by digit straight into the scaled integer;
//! binary floating point only enters when the caller hands us `f64`s.

use crate::block::{QuantizedBlock, SignalBlock};
use crate::error::{Error, Result};

/// Largest supported number of fractional digits.
pub const MAX_DIGITS: u8 = 6;

const POW10: [f64; MAX_DIGITS as usize + 1] = [1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6];

// 2^63 as f64; anything with a smaller magnitude rounds into i64 range.
const I64_LIMIT: f64 = 9_223_372_036_854_775_808.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantizerConfig {
    /// Keep every input exactly; the scale is detected from the input.
    Lossless,
    /// Round to a fixed number of fractional digits.
    Rounding { digits: u8 },
}

impl QuantizerConfig {
    pub fn validate(&self) -> Result<()> {
        match *self {
            QuantizerConfig::Rounding { digits } if digits > MAX_DIGITS => {
                Err(Error::InvalidConfig(format!("digits {digits} exceeds {MAX_DIGITS}")))
            }
            _ => Ok(()),
        }
    }

    /// Maximum absolute error this configuration promises: `10^-digits`, or 0.
    pub fn epsilon(&self) -> f64 {
        match *self {
            QuantizerConfig::Lossless => 0.0,
            QuantizerConfig::Rounding { digits } => 10f64.powi(-i32::from(digits)),
        }
    }
}

impl Default for QuantizerConfig {
    fn default() -> Self {
        QuantizerConfig::Rounding { digits: 3 }
    }
}

fn pow10(digits: u8) -> Result<f64> {
    POW10
        .get(usize::from(digits))
        .copied()
        .ok_or_else(|| Error::InvalidConfig(format!("digits {digits} exceeds {MAX_DIGITS}")))
}

/// `round(x * 10^digits)`, ties away from zero.
pub fn quantize_value(x: f64, digits: u8) -> Result<i64> {
    if !x.is_finite() {
        return Err(Error::NonFiniteSample);
    }
    let scaled = (x * pow10(digits)?).round();
    if scaled.abs() >= I64_LIMIT {
        return Err(Error::OverflowAtScale { digits });
    }
    Ok(scaled as i64)
}

/// Like [`quantize_value`] but fails unless the code reproduces `x` exactly.
pub fn quantize_exact(x: f64, digits: u8) -> Result<i64> {
    let code = quantize_value(x, digits)?;
    if code_to_f64(code, digits) != x {
        return Err(Error::OverflowAtScale { digits });
    }
    Ok(code)
}

pub fn code_to_f64(code: i64, digits: u8) -> f64 {
    code as f64 / POW10[usize::from(digits)]
}

/// Fractional digits in the shortest round-trip rendering of `x`.
pub fn shortest_fraction_digits(x: f64) -> Result<usize> {
    if !x.is_finite() {
        return Err(Error::NonFiniteSample);
    }
    fractional_digits(&format!("{x}"))
}

/// Scale for lossless coding of binary samples.
pub fn detect_digits_f64(samples: &[f64]) -> Result<u8> {
    let mut max = 0;
    for (i, &x) in samples.iter().enumerate() {
        max = max.max(shortest_fraction_digits(x).map_err(|e| e.at_sample(i))?);
    }
    digits_limit(max)
}

/// Scale for lossless coding of decimal text: the most fractional digits any token has.
pub fn detect_digits<S: AsRef<str>>(tokens: &[S]) -> Result<u8> {
    let mut max = 0;
    for (i, t) in tokens.iter().enumerate() {
        max = max.max(fractional_digits(t.as_ref()).map_err(|e| e.at_sample(i))?);
    }
    digits_limit(max)
}

fn digits_limit(found: usize) -> Result<u8> {
    if found > usize::from(MAX_DIGITS) {
        return Err(Error::TooManyDigits { found, max: MAX_DIGITS });
    }
    Ok(found as u8)
}

/// A decimal literal split into sign, mantissa digits and a power of ten.
/// The mantissa is the integer digits followed by the fraction digits.
struct Decimal<'a> {
    negative: bool,
    int: &'a [u8],
    frac: &'a [u8],
    exp10: i64,
}

impl Decimal<'_> {
    fn len(&self) -> usize {
        self.int.len() + self.frac.len()
    }

    fn digit(&self, i: usize) -> Option<u8> {
        if i < self.int.len() {
            Some(self.int[i] - b'0')
        } else {
            self.frac.get(i - self.int.len()).map(|b| b - b'0')
        }
    }
}

fn parse_decimal(token: &str) -> Result<Decimal<'_>> {
    let bad = || Error::BadDecimal(token.to_string());
    let s = token.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (num, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let (int, frac) = match num.find('.') {
        Some(i) => (&num[..i], &num[i + 1..]),
        None => (num, ""),
    };
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if int.len() + frac.len() == 0 || !all_digits(int) || !all_digits(frac) {
        return Err(bad());
    }
    let exp: i64 = match exp {
        Some(e) => e.parse().map_err(|_| bad())?,
        None => 0,
    };
    if exp.abs() > 10_000 {
        return Err(bad());
    }
    Ok(Decimal {
        negative,
        int: int.as_bytes(),
        frac: frac.as_bytes(),
        exp10: exp - frac.len() as i64,
    })
}

/// Number of fractional digits written in a decimal literal (`"1.50"` has 2, `"1e-3"` has 3).
pub fn fractional_digits(token: &str) -> Result<usize> {
    let d = parse_decimal(token)?;
    Ok(usize::try_from(-d.exp10).unwrap_or(0))
}

/// Parses decimal text straight into `round(value * 10^digits)`, ties away from zero.
pub fn parse_scaled(token: &str, digits: u8) -> Result<i64> {
    let d = parse_decimal(token)?;
    let shift = d.exp10 + i64::from(digits);
    let overflow = Error::OverflowAtScale { digits };

    let keep = (d.len() as i64 + shift.min(0)).max(0) as usize;
    let mut magnitude: u64 = 0;
    for i in 0..keep {
        let digit = u64::from(d.digit(i).unwrap_or(0));
        magnitude = magnitude
            .checked_mul(10)
            .and_then(|m| m.checked_add(digit))
            .ok_or_else(|| overflow.clone())?;
    }
    if shift > 0 && magnitude != 0 {
        for _ in 0..shift {
            magnitude = magnitude.checked_mul(10).ok_or_else(|| overflow.clone())?;
        }
    }
    // First dropped digit decides the rounding direction.
    if shift < 0 {
        let cut = d.len() as i64 + shift;
        let round_digit = usize::try_from(cut).ok().and_then(|i| d.digit(i)).unwrap_or(0);
        if round_digit >= 5 {
            magnitude = magnitude.checked_add(1).ok_or_else(|| overflow.clone())?;
        }
    }
    if magnitude > i64::MAX as u64 {
        return Err(overflow);
    }
    let v = magnitude as i64;
    Ok(if d.negative { -v } else { v })
}

/// Quantizes one block of binary samples.
///
/// Lossless mode detects the scale from this block alone; stream-level
/// callers that need one scale for many blocks use [`detect_digits_f64`].
pub fn quantize(block: &SignalBlock, cfg: &QuantizerConfig) -> Result<QuantizedBlock> {
    cfg.validate()?;
    let (digits, codes) = match *cfg {
        QuantizerConfig::Rounding { digits } => (digits, quantize_all(block.samples(), digits, quantize_value)?),
        QuantizerConfig::Lossless => {
            let digits = detect_digits_f64(block.samples())?;
            (digits, quantize_all(block.samples(), digits, quantize_exact)?)
        }
    };
    QuantizedBlock::new(codes, digits)
}

pub(crate) fn quantize_all(samples: &[f64], digits: u8, f: fn(f64, u8) -> Result<i64>) -> Result<Vec<i64>> {
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| f(x, digits).map_err(|e| e.at_sample(i)))
        .collect()
}

pub fn dequantize(block: &QuantizedBlock) -> SignalBlock {
    let samples = block.codes().iter().map(|&c| code_to_f64(c, block.digits())).collect();
    SignalBlock::new(samples).expect("quantized blocks are non-empty")
}

/// Appends `code / 10^digits` with exactly `digits` fractional digits.
pub fn render_code(code: i64, digits: u8, out: &mut String) {
    use std::fmt::Write;
    let magnitude = code.unsigned_abs();
    if code < 0 {
        out.push('-');
    }
    if digits == 0 {
        let _ = write!(out, "{magnitude}");
        return;
    }
    let scale = 10u64.pow(u32::from(digits));
    let _ = write!(
        out,
        "{}.{:0width$}",
        magnitude / scale,
        magnitude % scale,
        width = usize::from(digits)
    );
}

/// Byte length of [`render_code`]'s output, without allocating.
pub fn rendered_len(code: i64, digits: u8) -> usize {
    let magnitude = code.unsigned_abs();
    let scale = 10u64.pow(u32::from(digits));
    let int_digits = (magnitude / scale).checked_ilog10().map_or(1, |l| l as usize + 1);
    let frac = if digits == 0 { 0 } else { usize::from(digits) + 1 };
    usize::from(code < 0) + int_digits + frac
}
