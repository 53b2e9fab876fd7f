//! MSB-first bit I/O.

use crate::error::{Error, Result};

/// Bytes plus the number of meaningful bits; the last byte is zero padded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitStream {
    pub bytes: Vec<u8>,
    pub bit_len: u64,
}

impl BitStream {
    /// Wraps bytes read back from storage; every bit counts as readable.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let bit_len = bytes.len() as u64 * 8;
        Self { bytes, bit_len }
    }

    pub fn byte_len(&self) -> usize {
        self.bytes.len()
    }
}

#[derive(Debug, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    acc: u8,
    filled: u32,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn put_bit(&mut self, bit: bool) {
        self.acc = (self.acc << 1) | u8::from(bit);
        self.filled += 1;
        if self.filled == 8 {
            self.bytes.push(self.acc);
            self.acc = 0;
            self.filled = 0;
        }
    }

    /// Writes the low `n` bits of `value`, most significant first.
    pub fn put_bits(&mut self, value: u64, n: u32) {
        debug_assert!(n <= 64);
        for i in (0..n).rev() {
            self.put_bit((value >> i) & 1 == 1);
        }
    }

    pub fn put_byte(&mut self, b: u8) {
        if self.filled == 0 {
            self.bytes.push(b);
        } else {
            self.put_bits(u64::from(b), 8);
        }
    }

    pub fn bit_len(&self) -> u64 {
        self.bytes.len() as u64 * 8 + u64::from(self.filled)
    }

    pub fn finish(mut self) -> BitStream {
        let bit_len = self.bit_len();
        if self.filled > 0 {
            self.bytes.push(self.acc << (8 - self.filled));
        }
        BitStream {
            bytes: self.bytes,
            bit_len,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    bit_len: u64,
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(stream: &'a BitStream) -> Self {
        Self::with_len(&stream.bytes, stream.bit_len)
    }

    pub fn with_len(bytes: &'a [u8], bit_len: u64) -> Self {
        Self {
            bytes,
            bit_len: bit_len.min(bytes.len() as u64 * 8),
            pos: 0,
        }
    }

    #[inline]
    pub fn get_bit(&mut self) -> Result<bool> {
        if self.pos >= self.bit_len {
            return Err(Error::corrupt("bit stream ended early"));
        }
        let byte = self.bytes[(self.pos / 8) as usize];
        let bit = (byte >> (7 - (self.pos % 8))) & 1 == 1;
        self.pos += 1;
        Ok(bit)
    }

    pub fn get_bits(&mut self, n: u32) -> Result<u64> {
        let mut v = 0;
        for _ in 0..n {
            v = (v << 1) | u64::from(self.get_bit()?);
        }
        Ok(v)
    }

    pub fn get_byte(&mut self) -> Result<u8> {
        self.get_bits(8).map(|v| v as u8)
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.bit_len - self.pos
    }
}
