//! Seeded sampling helpers. Every random draw in the crate goes through a
//! ChaCha8 stream so reports are reproducible from a single `u64` seed.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

/// Standard normal draw (Box–Muller).
pub fn gaussian(rng: &mut SampleRng) -> f64 {
    let mut u1: f64 = rng.gen();
    while u1 <= f64::MIN_POSITIVE {
        u1 = rng.gen();
    }
    let u2: f64 = rng.gen();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(core::f64::consts::TAU * u2)
}

pub fn unit_vector(rng: &mut SampleRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        let n = libm::sqrt(v.iter().map(|x| x * x).sum());
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Uniform point in the closed ball of the given radius.
pub fn ball_point(rng: &mut SampleRng, dim: usize, radius: f64) -> Vec<f64> {
    if dim == 0 {
        return Vec::new();
    }
    let dir = unit_vector(rng, dim);
    let r = radius * libm::pow(rng.gen::<f64>(), 1.0 / dim as f64);
    dir.into_iter().map(|x| x * r).collect()
}

pub fn cube_point(rng: &mut SampleRng, dim: usize, half_width: f64) -> Vec<f64> {
    (0..dim).map(|_| uniform(rng, -half_width, half_width)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<f64> = {
            let mut r = rng(7);
            (0..5).map(|_| gaussian(&mut r)).collect()
        };
        let b: Vec<f64> = {
            let mut r = rng(7);
            (0..5).map(|_| gaussian(&mut r)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn unit_and_ball() {
        let mut r = rng(1);
        for _ in 0..100 {
            let u = unit_vector(&mut r, 5);
            let n: f64 = u.iter().map(|x| x * x).sum();
            assert!((n - 1.0).abs() < 1e-12);
            let b = ball_point(&mut r, 3, 2.0);
            assert!(b.iter().map(|x| x * x).sum::<f64>() <= 4.0 + 1e-12);
        }
    }
}
