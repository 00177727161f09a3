use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::product::{cube_product, fill_cube, signed_tables};
use super::{FunctionSystem, GowersError, GroupFunction};

/// Samples per independent stream. Chunk `c` draws from
/// `ChaCha8Rng::seed_from_u64(seed)` on stream `c`, so the estimate does
/// not depend on how chunks are spread over threads.
pub const MC_CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Sample mean of the real part of the cube product.
    pub mean: f64,
    pub mean_im: f64,
    /// Standard error of `mean`.
    pub stderr: f64,
    /// `max(mean, 0)^{1/2^n}`.
    pub estimate: f64,
}

/// Uniform index in `0..m` from one 64-bit word (multiply-shift, no
/// rejection; the bias is below `m / 2^64`).
fn draw_index(rng: &mut ChaCha8Rng, m: usize) -> usize {
    ((u128::from(rng.next_u64()) * m as u128) >> 64) as usize
}

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
    mean_im: f64,
}

impl Moments {
    fn push(&mut self, z: Complex64) {
        self.count += 1.0;
        let d = z.re - self.mean;
        self.mean += d / self.count;
        self.m2 += d * (z.re - self.mean);
        self.mean_im += (z.im - self.mean_im) / self.count;
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let d = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + d * other.count / count,
            m2: self.m2 + other.m2 + d * d * self.count * other.count / count,
            mean_im: self.mean_im + (other.mean_im - self.mean_im) * other.count / count,
        }
    }
}

/// Monte-Carlo estimate of `‖f‖_{U_n}` from `samples` uniform tuples
/// `(a_0, …, a_n)`.
pub fn gowers_norm_mc(f: &GroupFunction, n: usize, samples: usize, seed: u64) -> Result<McEstimate, GowersError> {
    if samples < 2 {
        return Err(GowersError::InvalidParameter("at least 2 samples are needed".into()));
    }
    if n == 0 {
        return Err(GowersError::InvalidParameter("uniformity norms need n >= 1".into()));
    }
    let system = FunctionSystem::uniform(f, n)?;
    let tables = signed_tables(&system);
    let g = f.group();
    let m = g.order();
    let chunks = samples.div_ceil(MC_CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut a = vec![0usize; n + 1];
            let mut cube = vec![0usize; 1 << n];
            let mut moments = Moments::default();
            for _ in 0..len {
                for x in a.iter_mut() {
                    *x = draw_index(&mut rng, m);
                }
                fill_cube(g, &a, &mut cube);
                moments.push(cube_product(&tables, &cube));
            }
            moments
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let variance = total.m2 / (total.count - 1.0);
    Ok(McEstimate {
        n,
        samples,
        seed,
        mean: total.mean,
        mean_im: total.mean_im,
        stderr: (variance / total.count).sqrt(),
        estimate: total.mean.max(0.0).powf(1.0 / (1u64 << n) as f64),
    })
}
