//! Adaptive arithmetic coding with 32-bit integer state.
//!
//! Classic low/high interval coder with underflow (straddle) bit handling over
//! the adaptive [`FrequencyModel`]. The stream ends with the end-of-stream
//! symbol followed by all 32 bits of `low`. The decoder consumes exactly the
//! bits the encoder wrote, so truncation and trailing data are both detected.

use super::bitio::{BitReader, BitStream, BitWriter};
use super::model::{FrequencyModel, EOF};
use crate::error::{Error, Result};

const STATE_BITS: u32 = 32;
const FULL: u64 = (1 << STATE_BITS) - 1;
const HALF: u64 = 1 << (STATE_BITS - 1);
const QUARTER: u64 = 1 << (STATE_BITS - 2);

struct Encoder {
    low: u64,
    high: u64,
    pending: u64,
    out: BitWriter,
}

impl Encoder {
    fn emit(&mut self, bit: bool) {
        self.out.put_bit(bit);
        for _ in 0..self.pending {
            self.out.put_bit(!bit);
        }
        self.pending = 0;
    }

    fn encode(&mut self, sym_low: u32, sym_high: u32, total: u32) {
        let range = self.high - self.low + 1;
        self.high = self.low + range * u64::from(sym_high) / u64::from(total) - 1;
        self.low += range * u64::from(sym_low) / u64::from(total);
        loop {
            if self.high < HALF {
                self.emit(false);
            } else if self.low >= HALF {
                self.emit(true);
                self.low -= HALF;
                self.high -= HALF;
            } else if self.low >= QUARTER && self.high < HALF + QUARTER {
                self.pending += 1;
                self.low -= QUARTER;
                self.high -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
        }
    }

    fn finish(mut self) -> BitStream {
        let low = self.low;
        self.emit(low & HALF != 0);
        self.out.put_bits(low, STATE_BITS - 1);
        self.out.finish()
    }
}

pub fn encode(payload: &[u8]) -> BitStream {
    let mut model = FrequencyModel::new();
    let mut enc = Encoder {
        low: 0,
        high: FULL,
        pending: 0,
        out: BitWriter::new(),
    };
    for &b in payload {
        let (lo, hi) = model.range(usize::from(b));
        enc.encode(lo, hi, model.total());
        model.update(usize::from(b));
    }
    let (lo, hi) = model.range(EOF);
    enc.encode(lo, hi, model.total());
    enc.finish()
}

pub fn decode(stream: &BitStream) -> Result<Vec<u8>> {
    let mut bits = BitReader::new(stream);
    let mut model = FrequencyModel::new();
    let mut low = 0u64;
    let mut high = FULL;
    let mut value = bits.get_bits(STATE_BITS)?;
    let mut out = Vec::new();
    loop {
        if value < low || value > high {
            return Err(Error::corrupt("arithmetic code value left the interval"));
        }
        let total = u64::from(model.total());
        let range = high - low + 1;
        let target = ((value - low + 1) * total - 1) / range;
        let (sym, sym_low, sym_high) = model.find(target as u32);
        high = low + range * u64::from(sym_high) / total - 1;
        low += range * u64::from(sym_low) / total;
        let done = sym == EOF;
        if !done {
            out.push(sym as u8);
            model.update(sym);
        }
        loop {
            if high < HALF {
            } else if low >= HALF {
                low -= HALF;
                high -= HALF;
                value -= HALF;
            } else if low >= QUARTER && high < HALF + QUARTER {
                low -= QUARTER;
                high -= QUARTER;
                value -= QUARTER;
            } else {
                break;
            }
            low <<= 1;
            high = (high << 1) | 1;
            value = (value << 1) | u64::from(bits.get_bit()?);
        }
        if done {
            // Only zero padding may follow the final 32 bits.
            if bits.remaining() >= 8 || bits.get_bits(bits.remaining() as u32)? != 0 {
                return Err(Error::corrupt("data after end of arithmetic stream"));
            }
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_payload() {
        let s = encode(&[]);
        assert_eq!(decode(&s).unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn alternating_bytes() {
        let payload: Vec<u8> = [0x00, 0xff].repeat(100);
        assert_eq!(decode(&encode(&payload)).unwrap(), payload);
    }

    #[test]
    fn trailing_data_is_detected() {
        let mut s = encode(b"abcabcabc");
        s.bytes.push(0x80);
        s.bit_len += 8;
        assert!(decode(&s).is_err());
    }

    #[test]
    fn truncation_is_detected() {
        let payload: Vec<u8> = (0..5000u32).map(|i| (i * i % 251) as u8).collect();
        let s = encode(&payload);
        for cut in [1, 2, 5, s.bytes.len() / 2] {
            let short = BitStream::from_bytes(s.bytes[..s.bytes.len() - cut].to_vec());
            assert!(matches!(decode(&short), Err(Error::CorruptStream(_))), "cut {cut}");
        }
    }
}
