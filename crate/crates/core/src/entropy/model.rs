//! Adaptive frequency model over the 256 byte values plus an end-of-stream symbol.

/// Byte symbols plus end-of-stream.
pub const SYMBOLS: usize = 257;
pub const EOF: usize = 256;

/// Counts are halved before the total would exceed this.
pub const RESCALE_LIMIT: u32 = 1 << 16;
/// Count added per coded symbol.
pub const INCREMENT: u32 = 32;

/// Cumulative counts kept in a Fenwick tree so lookups and updates are logarithmic.
#[derive(Clone, Debug)]
pub struct FrequencyModel {
    counts: [u32; SYMBOLS],
    tree: [u32; SYMBOLS + 1],
    total: u32,
}

impl Default for FrequencyModel {
    fn default() -> Self {
        Self::new()
    }
}

impl FrequencyModel {
    /// Uniform model: every symbol starts with a count of one.
    pub fn new() -> Self {
        let mut m = Self {
            counts: [1; SYMBOLS],
            tree: [0; SYMBOLS + 1],
            total: 0,
        };
        m.rebuild();
        m
    }

    fn rebuild(&mut self) {
        self.tree = [0; SYMBOLS + 1];
        for i in 1..=SYMBOLS {
            self.tree[i] += self.counts[i - 1];
            let parent = i + (i & i.wrapping_neg());
            if parent <= SYMBOLS {
                self.tree[parent] += self.tree[i];
            }
        }
        self.total = self.counts.iter().sum();
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn count(&self, symbol: usize) -> u32 {
        self.counts[symbol]
    }

    /// Sum of the counts of all symbols below `symbol`.
    pub fn cumulative(&self, symbol: usize) -> u32 {
        let mut i = symbol;
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i &= i - 1;
        }
        sum
    }

    /// `[low, high)` slice of the total owned by `symbol`.
    pub fn range(&self, symbol: usize) -> (u32, u32) {
        let low = self.cumulative(symbol);
        (low, low + self.counts[symbol])
    }

    /// Symbol whose slice contains `target`, with that slice. `target` must be below the total.
    pub fn find(&self, target: u32) -> (usize, u32, u32) {
        debug_assert!(target < self.total);
        let mut pos = 0;
        let mut rem = target;
        let mut step = 1 << (usize::BITS - 1 - SYMBOLS.leading_zeros());
        while step > 0 {
            let next = pos + step;
            if next <= SYMBOLS && self.tree[next] <= rem {
                pos = next;
                rem -= self.tree[next];
            }
            step >>= 1;
        }
        let low = target - rem;
        (pos, low, low + self.counts[pos])
    }

    pub fn update(&mut self, symbol: usize) {
        if self.total + INCREMENT > RESCALE_LIMIT {
            for c in &mut self.counts {
                *c = (*c / 2).max(1);
            }
            self.rebuild();
        }
        self.counts[symbol] += INCREMENT;
        self.total += INCREMENT;
        let mut i = symbol + 1;
        while i <= SYMBOLS {
            self.tree[i] += INCREMENT;
            i += i & i.wrapping_neg();
        }
    }
}
