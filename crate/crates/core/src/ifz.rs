//! Indicator-of-zeros bitmap.
//!
//! One flag per block position, set when the transformed value there is
//! nonzero. Flags are read first-position-first as a most-significant-bit-first
//! binary number, so the flags `1100011101001101` have the integer value 51021.
//!
//! Blocks wider than 64 positions are split into 64-flag words, first word
//! first; each word is MSB-first over its own positions. For widths up to 64
//! the single word is the bitmap's integer value.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IfzBitmap {
    width: usize,
    words: Vec<u64>,
}

impl IfzBitmap {
    /// All-zero bitmap of the given width.
    pub fn zeros(width: usize) -> Self {
        Self {
            width,
            words: vec![0; word_count(width)],
        }
    }

    /// Rebuilds a bitmap from its serialized words, rejecting bits set beyond `width`.
    pub fn from_words(width: usize, words: &[u64]) -> Result<Self> {
        if words.len() != word_count(width) {
            return Err(Error::corrupt(format!(
                "bitmap of width {width} needs {} words, got {}",
                word_count(width),
                words.len()
            )));
        }
        for (k, &w) in words.iter().enumerate() {
            let bits = chunk_width(width, k);
            if bits < WORD_BITS && w >> bits != 0 {
                return Err(Error::corrupt(format!("bitmap word {k} has bits beyond width {bits}")));
            }
        }
        Ok(Self {
            width,
            words: words.to_vec(),
        })
    }

    /// Integer value of a bitmap that fits one word.
    pub fn from_value(width: usize, value: u64) -> Result<Self> {
        if width > WORD_BITS {
            return Err(Error::InvalidConfig(format!(
                "bitmap width {width} does not fit a single integer"
            )));
        }
        Self::from_words(width, &[value])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The MSB-first integer value, when the width is at most 64.
    pub fn value(&self) -> Option<u64> {
        match self.words.as_slice() {
            [] => Some(0),
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width, "flag {i} out of range for width {}", self.width);
        let (k, shift) = locate(self.width, i);
        (self.words[k] >> shift) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.width, "flag {i} out of range for width {}", self.width);
        let (k, shift) = locate(self.width, i);
        self.words[k] |= 1 << shift;
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |i| self.get(i))
    }
}

fn word_count(width: usize) -> usize {
    width.div_ceil(WORD_BITS)
}

fn chunk_width(width: usize, k: usize) -> usize {
    (width - k * WORD_BITS).min(WORD_BITS)
}

fn locate(width: usize, i: usize) -> (usize, usize) {
    let k = i / WORD_BITS;
    let bits = chunk_width(width, k);
    (k, bits - 1 - (i % WORD_BITS))
}

/// Flags every nonzero entry of `deviations`.
pub fn ifz_pack(deviations: &[i64]) -> IfzBitmap {
    let mut bitmap = IfzBitmap::zeros(deviations.len());
    for (i, &d) in deviations.iter().enumerate() {
        if d != 0 {
            bitmap.set(i);
        }
    }
    bitmap
}

/// The nonzero entries of `deviations`, in order.
pub fn nonzeros(deviations: &[i64]) -> Vec<i64> {
    deviations.iter().copied().filter(|&d| d != 0).collect()
}

/// Inverse of [`ifz_pack`]: places the nonzero values at the flagged positions.
pub fn ifz_expand(bitmap: &IfzBitmap, nonzeros: &[i64]) -> Result<Vec<i64>> {
    let expected = bitmap.count_ones();
    if nonzeros.len() != expected {
        return Err(Error::CountMismatch {
            expected,
            found: nonzeros.len(),
        });
    }
    let mut values = nonzeros.iter().copied();
    Ok(bitmap
        .iter()
        .map(|flag| if flag { values.next().unwrap_or(0) } else { 0 })
        .collect())
}
