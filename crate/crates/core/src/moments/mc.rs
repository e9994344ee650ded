use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::rng::{stream_rng, StreamRng};
use crate::MAX_DIM;

/// Samples per batch; each batch owns one random stream.
pub(crate) const BATCH: u64 = 1 << 14;

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Welford {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(self, other: Welford) -> Welford {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let (na, nb) = (self.n as f64, other.n as f64);
        Welford {
            n,
            mean: self.mean + d * nb / n as f64,
            m2: self.m2 + other.m2 + d * d * na * nb / n as f64,
        }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.n < 2 {
            return f64::INFINITY;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

/// Averages `sample` over `n` draws split into fixed batches. Batch `b`
/// draws from stream `b + 1`, so the result depends only on `(seed, n)`.
pub(crate) fn integrate<F>(n: u64, seed: u64, sample: F) -> Welford
where
    F: Fn(&mut StreamRng) -> f64 + Sync,
{
    let batches = n.div_ceil(BATCH);
    let parts: Vec<Welford> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b + 1);
            let mut acc = Welford::default();
            let len = BATCH.min(n - b * BATCH);
            for _ in 0..len {
                acc.push(sample(&mut rng));
            }
            acc
        })
        .collect();
    parts.into_iter().fold(Welford::default(), Welford::merge)
}

/// Uniform point in the closed unit ball of `R^d`.
pub(crate) fn unit_ball_point<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    let d = out.len();
    debug_assert!(d <= MAX_DIM);
    if d <= 4 {
        loop {
            let mut r2 = 0.0;
            for x in out.iter_mut() {
                *x = rng.random_range(-1.0..=1.0);
                r2 += *x * *x;
            }
            if r2 <= 1.0 {
                return;
            }
        }
    }
    let mut r2 = 0.0;
    for x in out.iter_mut() {
        *x = rng.sample(StandardNormal);
        r2 += *x * *x;
    }
    let radius = rng.random::<f64>().powf(1.0 / d as f64) / r2.sqrt();
    for x in out.iter_mut() {
        *x *= radius;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut whole = Welford::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = Welford::default();
        let mut b = Welford::default();
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert_eq!(m.n, whole.n);
        assert!((m.mean - whole.mean).abs() < 1e-12);
        assert!((m.m2 - whole.m2).abs() < 1e-8 * whole.m2);
    }

    #[test]
    fn integrate_is_deterministic() {
        let f = |r: &mut StreamRng| r.random::<f64>();
        let a = integrate(50_000, 3, f);
        let b = integrate(50_000, 3, f);
        assert_eq!(a, b);
        assert!((a.mean - 0.5).abs() < 5.0 * a.std_error());
    }

    #[test]
    fn ball_points_inside_and_spread() {
        let mut rng = stream_rng(1, 1);
        for d in 1..=MAX_DIM {
            let mut p = vec![0.0; d];
            let mut mean_r2 = 0.0;
            let n = 20_000;
            for _ in 0..n {
                unit_ball_point(&mut rng, &mut p);
                let r2: f64 = p.iter().map(|x| x * x).sum();
                assert!(r2 <= 1.0 + 1e-12);
                mean_r2 += r2;
            }
            // E|X|^2 = d/(d+2) for the uniform ball
            let expect = d as f64 / (d as f64 + 2.0);
            assert!((mean_r2 / n as f64 - expect).abs() < 0.01, "d={d}");
        }
    }
}
