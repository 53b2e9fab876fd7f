//! Adaptive Huffman coding with the FGK update.
//!
//! Nodes live in an array ordered by weight, siblings side by side (the
//! sibling property), root last. Coding a symbol bumps the weight of its leaf
//! and every ancestor; before each bump the node is swapped with the last node
//! of equal weight so the order survives. All 257 symbols start as leaves of
//! weight one, so no escape code is needed. When the root weight reaches
//! [`RESCALE_LIMIT`] the leaf weights are halved (floor one) and the tree is
//! rebuilt.

use std::collections::VecDeque;

use super::bitio::{BitReader, BitStream, BitWriter};
use super::model::{EOF, RESCALE_LIMIT, SYMBOLS};
use crate::error::{Error, Result};

const NODES: usize = 2 * SYMBOLS - 1;
const ROOT: usize = NODES - 1;

struct Tree {
    /// Node weights in sibling order, plus a sentinel heavier than any node.
    weight: [u32; NODES + 1],
    parent: [usize; NODES],
    /// Left child slot of an internal node (right is the next slot), or
    /// `NODES + symbol` for a leaf.
    child: [usize; NODES],
    leaf: [usize; SYMBOLS],
}

impl Tree {
    fn new() -> Self {
        let mut t = Tree {
            weight: [0; NODES + 1],
            parent: [0; NODES],
            child: [0; NODES],
            leaf: [0; SYMBOLS],
        };
        t.build(&[1; SYMBOLS]);
        t
    }

    /// Two-queue Huffman construction. Slots are handed out in the order nodes
    /// are consumed, which is non-decreasing in weight and keeps siblings adjacent.
    fn build(&mut self, leaf_weights: &[u32; SYMBOLS]) {
        let mut leaves: Vec<usize> = (0..SYMBOLS).collect();
        leaves.sort_by_key(|&s| (leaf_weights[s], s));
        let mut leaves: VecDeque<usize> = leaves.into();
        // Internal nodes waiting for a slot: (weight, slot of left child).
        let mut internal: VecDeque<(u32, usize)> = VecDeque::new();
        let mut next_slot = 0;

        let mut take = |t: &mut Tree, leaves: &mut VecDeque<usize>, internal: &mut VecDeque<(u32, usize)>| {
            let leaf_first = match (leaves.front(), internal.front()) {
                (Some(&s), Some(&(w, _))) => leaf_weights[s] <= w,
                (Some(_), None) => true,
                _ => false,
            };
            let slot = next_slot;
            next_slot += 1;
            if leaf_first {
                let s = leaves.pop_front().expect("checked");
                t.weight[slot] = leaf_weights[s];
                t.child[slot] = NODES + s;
                t.leaf[s] = slot;
            } else {
                let (w, left) = internal.pop_front().expect("checked");
                t.weight[slot] = w;
                t.child[slot] = left;
                t.parent[left] = slot;
                t.parent[left + 1] = slot;
            }
            slot
        };

        while leaves.len() + internal.len() > 1 {
            let a = take(self, &mut leaves, &mut internal);
            let b = take(self, &mut leaves, &mut internal);
            internal.push_back((self.weight[a] + self.weight[b], a));
        }
        let root = take(self, &mut leaves, &mut internal);
        debug_assert_eq!(root, ROOT);
        self.parent[ROOT] = ROOT;
        self.weight[NODES] = u32::MAX;
    }

    fn rescale(&mut self) {
        let mut halved = [0u32; SYMBOLS];
        for (s, w) in halved.iter_mut().enumerate() {
            *w = (self.weight[self.leaf[s]] / 2).max(1);
        }
        self.build(&halved);
    }

    fn set_child(&mut self, slot: usize, child: usize) {
        self.child[slot] = child;
        if child >= NODES {
            self.leaf[child - NODES] = slot;
        } else {
            self.parent[child] = slot;
            self.parent[child + 1] = slot;
        }
    }

    fn update(&mut self, symbol: usize) {
        if self.weight[ROOT] >= RESCALE_LIMIT {
            self.rescale();
        }
        let mut node = self.leaf[symbol];
        loop {
            let w = self.weight[node];
            if self.weight[node + 1] == w {
                // Last slot holding the same weight; never an ancestor of `node`.
                let mut leader = node + 1;
                while self.weight[leader + 1] == w {
                    leader += 1;
                }
                let (a, b) = (self.child[node], self.child[leader]);
                self.set_child(node, b);
                self.set_child(leader, a);
                node = leader;
            }
            self.weight[node] += 1;
            if node == ROOT {
                break;
            }
            node = self.parent[node];
        }
    }

    fn encode(&self, symbol: usize, out: &mut BitWriter) {
        let mut path = [false; NODES];
        let mut depth = 0;
        let mut node = self.leaf[symbol];
        while node != ROOT {
            let parent = self.parent[node];
            path[depth] = node != self.child[parent];
            depth += 1;
            node = parent;
        }
        for &bit in path[..depth].iter().rev() {
            out.put_bit(bit);
        }
    }

    fn decode(&self, bits: &mut BitReader<'_>) -> Result<usize> {
        let mut node = ROOT;
        while self.child[node] < NODES {
            node = self.child[node] + usize::from(bits.get_bit()?);
        }
        Ok(self.child[node] - NODES)
    }

    #[cfg(test)]
    fn leaf_depths(&self) -> Vec<u32> {
        (0..SYMBOLS)
            .map(|s| {
                let mut node = self.leaf[s];
                let mut depth = 0;
                while node != ROOT {
                    node = self.parent[node];
                    depth += 1;
                }
                depth
            })
            .collect()
    }

    #[cfg(test)]
    fn check_sibling_property(&self) {
        for slot in 0..ROOT {
            assert!(self.weight[slot] <= self.weight[slot + 1], "order broken at {slot}");
        }
        for slot in 0..NODES {
            let c = self.child[slot];
            if c < NODES {
                assert_eq!(c % 2, 0, "siblings must start on even slots");
                assert_eq!(self.weight[slot], self.weight[c] + self.weight[c + 1]);
                assert_eq!(self.parent[c], slot);
            } else {
                assert_eq!(self.leaf[c - NODES], slot);
            }
        }
    }
}

pub fn encode(payload: &[u8]) -> BitStream {
    let mut tree = Tree::new();
    let mut out = BitWriter::new();
    for &b in payload {
        tree.encode(usize::from(b), &mut out);
        tree.update(usize::from(b));
    }
    tree.encode(EOF, &mut out);
    out.finish()
}

pub fn decode(stream: &BitStream) -> Result<Vec<u8>> {
    let mut tree = Tree::new();
    let mut bits = BitReader::new(stream);
    let mut out = Vec::new();
    loop {
        let sym = tree
            .decode(&mut bits)
            .map_err(|_| Error::corrupt("missing end-of-stream symbol"))?;
        if sym == EOF {
            return Ok(out);
        }
        out.push(sym as u8);
        tree.update(sym);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn kraft(depths: &[u32]) -> f64 {
        depths.iter().map(|&d| 2f64.powi(-(d as i32))).sum()
    }

    #[test]
    fn fresh_tree_is_balanced() {
        let t = Tree::new();
        t.check_sibling_property();
        let depths = t.leaf_depths();
        assert!(depths.iter().all(|&d| d == 8 || d == 9));
        assert!((kraft(&depths) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sibling_property_survives_updates_and_rescales() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut t = Tree::new();
        for i in 0..200_000 {
            let s = if rng.gen_bool(0.7) {
                rng.gen_range(0..4)
            } else {
                rng.gen_range(0..SYMBOLS)
            };
            t.update(s);
            if i % 9973 == 0 {
                t.check_sibling_property();
                assert!((kraft(&t.leaf_depths()) - 1.0).abs() < 1e-9);
            }
            assert!(t.weight[ROOT] <= RESCALE_LIMIT);
        }
        t.check_sibling_property();
    }

    #[test]
    fn skewed_symbols_get_short_codes() {
        let mut t = Tree::new();
        for _ in 0..1000 {
            t.update(65);
        }
        assert_eq!(t.leaf_depths()[65], 1);
    }

    #[test]
    fn round_trips() {
        for payload in [
            Vec::new(),
            vec![0x41u8; 1000],
            [0u8, 255].repeat(100),
            (0..=255u8).collect(),
        ] {
            assert_eq!(decode(&encode(&payload)).unwrap(), payload);
        }
    }

    #[test]
    fn truncation_is_detected() {
        let payload: Vec<u8> = (0..3000u32).map(|i| (i % 7) as u8).collect();
        let s = encode(&payload);
        let short = BitStream::from_bytes(s.bytes[..s.bytes.len() - 3].to_vec());
        assert!(matches!(decode(&short), Err(Error::CorruptStream(_))));
    }
}
