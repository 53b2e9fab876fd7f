//! Static canonical Huffman coding of bytes.
//!
//! Stream layout: payload length as a varint (8-bit groups written through the
//! bit writer), then the 256 code lengths with zero runs collapsed to
//! `0, run - 1`, then the codes. An empty payload is just the length.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::bitio::{BitReader, BitStream, BitWriter};
use crate::error::{Error, Result};
use crate::varint::{varint_write, MAX_VARINT_LEN};

/// Longest code the decoder accepts. Byte payloads below 2^32 never get near it.
pub const MAX_CODE_LEN: u8 = 64;

/// Huffman code lengths for the given weights; unused symbols get length 0.
///
/// Ties are broken by node creation order, so the result is deterministic.
/// A single used symbol gets a one-bit code.
pub fn code_lengths(weights: &[u64]) -> Vec<u8> {
    let mut lengths = vec![0u8; weights.len()];
    let used: Vec<usize> = (0..weights.len()).filter(|&s| weights[s] > 0).collect();
    match used.len() {
        0 => return lengths,
        1 => {
            lengths[used[0]] = 1;
            return lengths;
        }
        _ => {}
    }
    // Nodes 0..n are leaves; internal nodes are appended.
    let mut parent: Vec<usize> = vec![usize::MAX; used.len()];
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = used
        .iter()
        .enumerate()
        .map(|(node, &s)| Reverse((weights[s], node)))
        .collect();
    while heap.len() > 1 {
        let Reverse((wa, a)) = heap.pop().expect("len > 1");
        let Reverse((wb, b)) = heap.pop().expect("len > 1");
        let node = parent.len();
        parent.push(usize::MAX);
        parent[a] = node;
        parent[b] = node;
        heap.push(Reverse((wa + wb, node)));
    }
    // Parents always have larger indices, so depths fill in one reverse sweep.
    let mut depth = vec![0u8; parent.len()];
    for node in (0..parent.len() - 1).rev() {
        depth[node] = depth[parent[node]] + 1;
    }
    for (node, &s) in used.iter().enumerate() {
        lengths[s] = depth[node];
    }
    lengths
}

/// `sum(2^-len)` over the used symbols; at most 1 for any prefix code.
pub fn kraft_sum(lengths: &[u8]) -> f64 {
    lengths
        .iter()
        .filter(|&&l| l > 0)
        .map(|&l| 2f64.powi(-i32::from(l)))
        .sum()
}

/// Canonical codes: symbols ordered by (length, value), codes counting up.
pub fn canonical_codes(lengths: &[u8]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..lengths.len()).filter(|&s| lengths[s] > 0).collect();
    order.sort_by_key(|&s| (lengths[s], s));
    let mut codes = vec![0u64; lengths.len()];
    let mut code = 0u64;
    let mut prev_len = 0u8;
    for (i, &s) in order.iter().enumerate() {
        let len = lengths[s];
        if i > 0 {
            code = (code + 1) << (len - prev_len);
        }
        codes[s] = code;
        prev_len = len;
    }
    codes
}

fn write_table(lengths: &[u8], out: &mut BitWriter) {
    let mut i = 0;
    while i < lengths.len() {
        if lengths[i] != 0 {
            out.put_byte(lengths[i]);
            i += 1;
            continue;
        }
        let run = lengths[i..].iter().take(256).take_while(|&&l| l == 0).count();
        out.put_byte(0);
        out.put_byte((run - 1) as u8);
        i += run;
    }
}

fn read_table(bits: &mut BitReader<'_>) -> Result<Vec<u8>> {
    let mut lengths = Vec::with_capacity(256);
    while lengths.len() < 256 {
        match bits.get_byte()? {
            0 => {
                let run = usize::from(bits.get_byte()?) + 1;
                if lengths.len() + run > 256 {
                    return Err(Error::corrupt("code length table overruns 256 entries"));
                }
                lengths.resize(lengths.len() + run, 0);
            }
            len => lengths.push(len),
        }
    }
    Ok(lengths)
}

pub fn encode(payload: &[u8]) -> BitStream {
    let mut out = BitWriter::new();
    let mut len_bytes = Vec::with_capacity(MAX_VARINT_LEN);
    varint_write(payload.len() as u64, &mut len_bytes);
    for b in len_bytes {
        out.put_byte(b);
    }
    if payload.is_empty() {
        return out.finish();
    }
    let mut weights = [0u64; 256];
    for &b in payload {
        weights[usize::from(b)] += 1;
    }
    let lengths = code_lengths(&weights);
    let codes = canonical_codes(&lengths);
    write_table(&lengths, &mut out);
    for &b in payload {
        let s = usize::from(b);
        out.put_bits(codes[s], u32::from(lengths[s]));
    }
    out.finish()
}

fn read_length(bits: &mut BitReader<'_>) -> Result<u64> {
    let mut value = 0u64;
    for i in 0..MAX_VARINT_LEN {
        let b = bits.get_byte()?;
        value |= u64::from(b & 0x7f) << (7 * i);
        if b & 0x80 == 0 {
            return Ok(value);
        }
    }
    Err(Error::corrupt("payload length varint too long"))
}

/// Canonical decoding tables, indexed by code length.
struct Decoder {
    symbols: Vec<u8>,
    first_code: [u64; MAX_CODE_LEN as usize + 1],
    first_index: [usize; MAX_CODE_LEN as usize + 1],
    count: [usize; MAX_CODE_LEN as usize + 1],
    max_len: u8,
}

impl Decoder {
    fn new(lengths: &[u8]) -> Result<Self> {
        if lengths.iter().any(|&l| l > MAX_CODE_LEN) {
            return Err(Error::corrupt("code length above 64"));
        }
        if lengths.iter().all(|&l| l == 0) {
            return Err(Error::corrupt("empty code table for a non-empty payload"));
        }
        if kraft_sum(lengths) > 1.0 {
            return Err(Error::corrupt("code lengths violate the Kraft inequality"));
        }
        let mut order: Vec<usize> = (0..lengths.len()).filter(|&s| lengths[s] > 0).collect();
        order.sort_by_key(|&s| (lengths[s], s));
        let mut d = Decoder {
            symbols: order.iter().map(|&s| s as u8).collect(),
            first_code: [0; MAX_CODE_LEN as usize + 1],
            first_index: [0; MAX_CODE_LEN as usize + 1],
            count: [0; MAX_CODE_LEN as usize + 1],
            max_len: lengths.iter().copied().max().unwrap_or(0),
        };
        for &s in &order {
            d.count[usize::from(lengths[s])] += 1;
        }
        let mut code = 0u64;
        let mut index = 0usize;
        for len in 1..=usize::from(d.max_len) {
            d.first_code[len] = code;
            d.first_index[len] = index;
            code = (code + d.count[len] as u64) << 1;
            index += d.count[len];
        }
        Ok(d)
    }

    fn next(&self, bits: &mut BitReader<'_>) -> Result<u8> {
        let mut code = 0u64;
        for len in 1..=usize::from(self.max_len) {
            code = (code << 1) | u64::from(bits.get_bit()?);
            let offset = code.wrapping_sub(self.first_code[len]);
            if code >= self.first_code[len] && offset < self.count[len] as u64 {
                return Ok(self.symbols[self.first_index[len] + offset as usize]);
            }
        }
        Err(Error::corrupt("invalid Huffman code"))
    }
}

pub fn decode(stream: &BitStream) -> Result<Vec<u8>> {
    let mut bits = BitReader::new(stream);
    let n = read_length(&mut bits)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lengths = read_table(&mut bits)?;
    let decoder = Decoder::new(&lengths)?;
    // Every symbol takes at least one bit; reject impossible lengths before allocating.
    if n > bits.remaining() {
        return Err(Error::corrupt("payload length exceeds the coded bits"));
    }
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(decoder.next(&mut bits)?);
    }
    Ok(out)
}
