//! Deterministic synthetic inputs for the codec benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Kinds of sensor-like signal the benchmarks run over.
#[derive(Clone, Copy, Debug)]
pub enum Shape {
    /// Slow random walk, as from a drifting analog sensor.
    Walk,
    /// Quasi-periodic waveform with noise, like a pulse signal.
    Periodic,
    /// Long flat stretches with occasional steps, like a power meter.
    Steps,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Walk, Shape::Periodic, Shape::Steps];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Walk => "walk",
            Shape::Periodic => "periodic",
            Shape::Steps => "steps",
        }
    }
}

pub fn signal(shape: Shape, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = 0.0f64;
    (0..n)
        .map(|i| match shape {
            Shape::Walk => {
                x += rng.gen_range(-0.01..0.01);
                x
            }
            Shape::Periodic => (i as f64 * 0.1).sin() * 50.0 + rng.gen_range(-0.5..0.5),
            Shape::Steps => {
                if rng.gen_bool(0.01) {
                    x = (rng.gen_range(0.0..5.0) * 1000.0f64).round() / 1000.0;
                }
                x
            }
        })
        .collect()
}

/// The same signal as decimal text tokens with `digits` fractional places.
pub fn tokens(shape: Shape, n: usize, seed: u64, digits: usize) -> Vec<String> {
    signal(shape, n, seed)
        .into_iter()
        .map(|x| format!("{x:.digits$}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signals_are_deterministic() {
        for shape in Shape::ALL {
            assert_eq!(signal(shape, 100, 1), signal(shape, 100, 1));
            assert_eq!(tokens(shape, 3, 2, 2).len(), 3);
        }
    }
}
