//! Synthetic inputs shared by the benchmarks.

use multipole::Bitmap;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Uniform random tones from a fixed seed.
pub fn noise(height: usize, width: usize, seed: u64) -> Bitmap {
    let mut rng = StdRng::seed_from_u64(seed);
    Bitmap::from_fn(height, width, |_, _| rng.gen()).expect("non-empty")
}

/// Disk of tone 200 on a background of 40, with mild noise.
pub fn disk(size: usize, seed: u64) -> Bitmap {
    let mut rng = StdRng::seed_from_u64(seed);
    let c = size as f64 / 2.0;
    let r = size as f64 / 3.0;
    Bitmap::from_fn(size, size, |i, j| {
        let d = ((i as f64 - c).powi(2) + (j as f64 - c).powi(2)).sqrt();
        let base: i32 = if d < r { 200 } else { 40 };
        (base + rng.gen_range(-8..=8)) as u8
    })
    .expect("non-empty")
}
