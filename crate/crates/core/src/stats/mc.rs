//! Chunked, seeded sampling. Chunk `c` draws from `ChaCha8Rng` seeded with
//! the run seed on stream `c`, and results are combined in chunk order, so
//! output does not depend on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::context::HeckeContext;

pub const CHUNK: u64 = 1 << 16;

pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Runs `f(rng, count)` on consecutive chunks covering `n` draws and returns
/// the per-chunk results in order.
pub fn run_chunks<T: Send>(n: u64, seed: u64, f: impl Fn(&mut ChaCha8Rng, u64) -> T + Sync) -> Vec<T> {
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK.min(n - c * CHUNK);
            f(&mut chunk_rng(seed, c), count)
        })
        .collect()
}

/// A uniform point of the Farey triangle by rejection from
/// `(0, 1] x (1 - lambda, 1]`.
pub fn sample_triangle(rng: &mut ChaCha8Rng, lambda: f64) -> (f64, f64) {
    loop {
        let a = 1.0 - rng.gen::<f64>();
        let b = 1.0 - lambda * rng.gen::<f64>();
        if b > 1.0 - lambda * a {
            return (a, b);
        }
    }
}

/// Sets the size of rayon's global pool once; later calls are ignored.
pub fn init_threads(threads: Option<usize>) {
    if let Some(n) = threads.filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub(crate) fn lambda(ctx: &HeckeContext) -> f64 {
    ctx.lambda_f64()
}
