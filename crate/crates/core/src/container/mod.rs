//! Stream framing and the compress/decompress pipelines.
//!
//! A stream is the header followed by one entropy-coded payload holding the
//! symbols of every block in order. Blocks are `L` samples long except the
//! last, which keeps whatever remains; the header's sample count tells the
//! decoder how long that tail is.

mod header;
mod metrics;

pub use header::{Scale, StreamHeader, FORMAT_VERSION, HEADER_LEN, LOSSLESS_SCALE, MAGIC};
pub use metrics::{compute_metrics, RunMetrics, MB};

use std::time::Instant;

use rayon::prelude::*;

use crate::entropy::{self, BitStream, EntropyCoderId};
use crate::error::{Error, Result};
use crate::quantizer::{self, QuantizerConfig};
use crate::transform::{inverse_codes, read_block, transform_codes, write_block, TransformConfig};
use crate::varint::{SymbolReader, SymbolWriter};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CodecConfig {
    pub transform: TransformConfig,
    pub quantizer: QuantizerConfig,
    pub coder: EntropyCoderId,
}

impl CodecConfig {
    pub fn validate(&self) -> Result<()> {
        self.transform.validate()?;
        self.quantizer.validate()
    }
}

/// Header plus entropy-coded payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedStream(Vec<u8>);

impl CompressedStream {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Self(bytes)
    }

    pub fn header(&self) -> Result<StreamHeader> {
        StreamHeader::parse(&self.0)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Decompressed samples as scaled integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedStream {
    pub header: StreamHeader,
    pub codes: Vec<i64>,
}

impl DecodedStream {
    pub fn digits(&self) -> u8 {
        self.header.scale.digits()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let d = self.digits();
        self.codes.iter().map(|&c| quantizer::code_to_f64(c, d)).collect()
    }

    /// One value per line, each with exactly the stream's number of fractional digits.
    pub fn render_text(&self) -> String {
        render_text(&self.codes, self.digits())
    }
}

pub fn render_text(codes: &[i64], digits: u8) -> String {
    let mut out = String::with_capacity(canonical_text_len(codes, digits) as usize);
    for &c in codes {
        quantizer::render_code(c, digits, &mut out);
        out.push('\n');
    }
    out
}

/// Size of [`render_text`]'s output: the uncompressed size CR is measured against.
pub fn canonical_text_len(codes: &[i64], digits: u8) -> u64 {
    codes
        .iter()
        .map(|&c| quantizer::rendered_len(c, digits) as u64 + 1)
        .sum()
}

/// Compresses binary samples.
pub fn compress_stream(samples: &[f64], cfg: &CodecConfig) -> Result<(CompressedStream, RunMetrics)> {
    cfg.validate()?;
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let start = Instant::now();
    let (scale, codes) = match cfg.quantizer {
        QuantizerConfig::Rounding { digits } => (
            Scale::Rounded(digits),
            quantizer::quantize_all(samples, digits, quantizer::quantize_value)?,
        ),
        QuantizerConfig::Lossless => {
            let digits = quantizer::detect_digits_f64(samples)?;
            (
                Scale::Lossless(digits),
                quantizer::quantize_all(samples, digits, quantizer::quantize_exact)?,
            )
        }
    };
    let stream = compress_codes(&codes, scale, cfg)?;
    let secs = start.elapsed().as_secs_f64();
    let max_err = samples
        .iter()
        .zip(&codes)
        .map(|(&x, &c)| (x - quantizer::code_to_f64(c, scale.digits())).abs())
        .fold(0.0, f64::max);
    let metrics = compute_metrics(
        canonical_text_len(&codes, scale.digits()),
        stream.len() as u64,
        Some(secs),
        None,
        Some(max_err),
    );
    Ok((stream, metrics))
}

/// Quantizes decimal text without going through binary floating point.
pub fn quantize_decimal<S: AsRef<str> + Sync>(tokens: &[S], cfg: &QuantizerConfig) -> Result<(Scale, Vec<i64>)> {
    cfg.validate()?;
    let scale = match *cfg {
        QuantizerConfig::Rounding { digits } => Scale::Rounded(digits),
        QuantizerConfig::Lossless => Scale::Lossless(quantizer::detect_digits(tokens)?),
    };
    let codes = tokens
        .par_iter()
        .enumerate()
        .map(|(i, t)| quantizer::parse_scaled(t.as_ref(), scale.digits()).map_err(|e| e.at_sample(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok((scale, codes))
}

/// Compresses decimal text tokens, one sample each.
pub fn compress_decimal<S: AsRef<str> + Sync>(
    tokens: &[S],
    cfg: &CodecConfig,
) -> Result<(CompressedStream, RunMetrics)> {
    cfg.validate()?;
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let start = Instant::now();
    let (scale, codes) = quantize_decimal(tokens, &cfg.quantizer)?;
    let stream = compress_codes(&codes, scale, cfg)?;
    let secs = start.elapsed().as_secs_f64();
    let max_err = tokens
        .iter()
        .zip(&codes)
        .map(|(t, &c)| {
            let x: f64 = t.as_ref().trim().parse().unwrap_or(f64::NAN);
            (x - quantizer::code_to_f64(c, scale.digits())).abs()
        })
        .fold(0.0, f64::max);
    let metrics = compute_metrics(
        canonical_text_len(&codes, scale.digits()),
        stream.len() as u64,
        Some(secs),
        None,
        Some(max_err),
    );
    Ok((stream, metrics))
}

/// Serializes the transformed blocks of `codes` into the symbol byte stream.
pub fn serialize_blocks(codes: &[i64], transform: &TransformConfig) -> Result<Vec<u8>> {
    let parts = codes
        .par_chunks(transform.block_len)
        .enumerate()
        .map(|(i, block)| {
            let tb = transform_codes(block, transform.version, transform.tau)
                .map_err(|e| e.at_sample(i * transform.block_len))?;
            let mut w = SymbolWriter::with_capacity(block.len() * 2 + 4);
            write_block(&tb, &mut w);
            Ok(w.into_bytes())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.concat())
}

/// Frames already-quantized codes.
pub fn compress_codes(codes: &[i64], scale: Scale, cfg: &CodecConfig) -> Result<CompressedStream> {
    cfg.validate()?;
    if codes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let header = StreamHeader {
        method: cfg.transform.version,
        coder: cfg.coder,
        block_len: cfg.transform.block_len as u16,
        tau: cfg.transform.tau as u16,
        scale,
        sample_count: codes.len() as u64,
    };
    let symbols = serialize_blocks(codes, &cfg.transform)?;
    let payload = entropy::encode(&symbols, cfg.coder);
    let mut bytes = Vec::with_capacity(HEADER_LEN + payload.byte_len());
    bytes.extend_from_slice(&header.to_bytes());
    bytes.extend_from_slice(&payload.bytes);
    Ok(CompressedStream(bytes))
}

/// Rebuilds the codes from a symbol byte stream.
pub fn deserialize_blocks(symbols: &[u8], header: &StreamHeader) -> Result<Vec<i64>> {
    let block_len = usize::from(header.block_len);
    let total = header.sample_count;
    // Every block costs at least one symbol byte.
    if total.div_ceil(block_len as u64) > symbols.len() as u64 {
        return Err(Error::corrupt(format!(
            "{} symbol bytes cannot hold {total} samples",
            symbols.len()
        )));
    }
    let total = total as usize;
    let mut codes = Vec::with_capacity(total);
    let mut reader = SymbolReader::new(symbols);
    while codes.len() < total {
        let len = block_len.min(total - codes.len());
        let tb = read_block(&mut reader, header.method, len)?;
        codes.extend(inverse_codes(&tb)?);
    }
    if !reader.is_at_end() {
        return Err(Error::corrupt(format!(
            "{} trailing symbol bytes",
            symbols.len() - reader.position()
        )));
    }
    Ok(codes)
}

pub fn decompress_stream(bytes: &[u8]) -> Result<(DecodedStream, RunMetrics)> {
    let start = Instant::now();
    let header = StreamHeader::parse(bytes)?;
    let payload = BitStream::from_bytes(bytes[HEADER_LEN..].to_vec());
    let symbols = entropy::decode(&payload, header.coder)?;
    let codes = deserialize_blocks(&symbols, &header)?;
    let secs = start.elapsed().as_secs_f64();
    let metrics = compute_metrics(
        canonical_text_len(&codes, header.scale.digits()),
        bytes.len() as u64,
        None,
        Some(secs),
        None,
    );
    Ok((DecodedStream { header, codes }, metrics))
}
