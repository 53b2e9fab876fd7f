//! Zigzag and LEB128-style varint serialization of the transformed symbols.

use crate::error::{Error, Result};

/// Longest encoding of a `u64`.
pub const MAX_VARINT_LEN: usize = 10;

/// Interleaves signed values onto the unsigned line: 0, -1, 1, -2, ... -> 0, 1, 2, 3, ...
#[inline]
pub fn zigzag_encode(v: i64) -> u64 {
    ((v << 1) ^ (v >> 63)) as u64
}

#[inline]
pub fn zigzag_decode(u: u64) -> i64 {
    ((u >> 1) as i64) ^ -((u & 1) as i64)
}

/// Appends `u` as base-128 little-endian groups and returns the byte count.
pub fn varint_write(mut u: u64, out: &mut Vec<u8>) -> usize {
    let mut n = 1;
    while u >= 0x80 {
        out.push((u as u8) | 0x80);
        u >>= 7;
        n += 1;
    }
    out.push(u as u8);
    n
}

/// Reads one varint from `buf` starting at `*pos`, advancing `*pos` past it.
pub fn varint_read(buf: &[u8], pos: &mut usize) -> Result<u64> {
    let start = *pos;
    let mut value = 0u64;
    for i in 0..MAX_VARINT_LEN {
        let Some(&byte) = buf.get(start + i) else {
            return Err(Error::Truncated { offset: start + i });
        };
        let bits = u64::from(byte & 0x7f);
        // The tenth group holds only the top bit of a u64.
        if i == MAX_VARINT_LEN - 1 && (byte & 0x80 != 0 || bits > 1) {
            return Err(Error::Overlong { offset: start });
        }
        value |= bits << (7 * i);
        if byte & 0x80 == 0 {
            *pos = start + i + 1;
            return Ok(value);
        }
    }
    unreachable!("loop returns by the tenth byte")
}

/// Byte sink for a block symbol stream.
#[derive(Debug, Default, Clone)]
pub struct SymbolWriter {
    buf: Vec<u8>,
}

impl SymbolWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            buf: Vec::with_capacity(n),
        }
    }

    pub fn put_signed(&mut self, v: i64) {
        varint_write(zigzag_encode(v), &mut self.buf);
    }

    pub fn put_unsigned(&mut self, u: u64) {
        varint_write(u, &mut self.buf);
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }
}

/// Cursor over a block symbol stream.
#[derive(Debug, Clone)]
pub struct SymbolReader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> SymbolReader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub fn signed(&mut self) -> Result<i64> {
        varint_read(self.buf, &mut self.pos).map(zigzag_decode)
    }

    pub fn unsigned(&mut self) -> Result<u64> {
        varint_read(self.buf, &mut self.pos)
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn is_at_end(&self) -> bool {
        self.pos == self.buf.len()
    }
}
