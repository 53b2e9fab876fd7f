#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A block of quantized codes drawn from one of several shapes: narrow
/// noise, a dominant repeated value, a slow walk, or full-range extremes.
pub fn random_codes(rng: &mut ChaCha8Rng, len: usize) -> Vec<i64> {
    match rng.gen_range(0..6) {
        0 => (0..len).map(|_| rng.gen_range(-3..=3)).collect(),
        1 => {
            let mode = rng.gen_range(-1000..1000);
            let p = rng.gen_range(0.0..1.0);
            (0..len)
                .map(|_| {
                    if rng.gen_bool(p) {
                        mode
                    } else {
                        mode + rng.gen_range(-50..50)
                    }
                })
                .collect()
        }
        2 => {
            let mut x = rng.gen_range(-100_000i64..100_000);
            (0..len)
                .map(|_| {
                    x += rng.gen_range(-5..=5);
                    x
                })
                .collect()
        }
        3 => (0..len).map(|_| rng.gen()).collect(),
        4 => {
            let edges = [i64::MIN, i64::MIN + 1, -1, 0, 1, i64::MAX - 1, i64::MAX];
            (0..len).map(|_| edges[rng.gen_range(0..edges.len())]).collect()
        }
        _ => vec![rng.gen_range(-10..10); len],
    }
}

/// A sensor-like signal: a slow sinusoid plus noise and occasional flat runs.
pub fn random_signal(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let amp = 10f64.powi(rng.gen_range(-2..4));
    let period = rng.gen_range(8.0..500.0);
    let noise = amp * rng.gen_range(0.0..0.1);
    let offset = rng.gen_range(-1000.0..1000.0);
    let mut held = None;
    (0..len)
        .map(|i| {
            if rng.gen_bool(0.02) {
                held = if held.is_some() { None } else { Some(i) };
            }
            let t = held.unwrap_or(i) as f64;
            offset + amp * (t * std::f64::consts::TAU / period).sin() + noise * rng.gen_range(-1.0..1.0)
        })
        .collect()
}
