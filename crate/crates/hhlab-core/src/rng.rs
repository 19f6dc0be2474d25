//! Counter-based random streams. Every Monte-Carlo sample draws from a
//! generator keyed by (seed, sample index), so estimates do not depend on the
//! number of workers or on the order in which samples are produced.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for sample `index` of the stream identified by `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    substream(seed, index, 0)
}

/// Two-level stream: (seed, a, b) — e.g. (run seed, restart, sample).
pub fn substream(seed: u64, a: u64, b: u64) -> ChaCha8Rng {
    let mut state = seed ^ 0x6A09_E667_F3BC_C908;
    let mut key = [0u8; 32];
    let words = [
        splitmix64(&mut state),
        a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ splitmix64(&mut state),
        b.wrapping_mul(0xC2B2_AE3D_27D4_EB4F) ^ splitmix64(&mut state),
        splitmix64(&mut state) ^ a.rotate_left(17) ^ b.rotate_left(43),
    ];
    for (i, w) in words.iter().enumerate() {
        key[i * 8..(i + 1) * 8].copy_from_slice(&w.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform point on the unit sphere in `dim` dimensions.
pub fn unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    use rand_distr::StandardNormal;
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Fixed pairwise-tree sum; result is independent of chunking by construction.
pub fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let mid = n / 2;
            tree_sum(&values[..mid]) + tree_sum(&values[mid..])
        }
    }
}
