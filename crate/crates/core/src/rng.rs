//! Reproducible randomness: counter-derived ChaCha streams plus the few
//! scalar distributions the simulations need.
//!
//! Every consumer derives its own stream from `(master seed, labels...)`, so
//! results are independent of scheduling and worker count.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::fmath;

/// splitmix64 output function; a bijective 64-bit finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derives an independent random stream from a master seed and a label path
/// (e.g. `[trial, attempt]`). Labels are absorbed sequentially through
/// splitmix64, then the 256-bit ChaCha key is expanded from the digest.
pub fn derive_stream(master: u64, labels: &[u64]) -> ChaCha12Rng {
    let mut h = mix64(master);
    for &l in labels {
        h = mix64(h ^ l);
    }
    let mut key = [0u8; 32];
    let mut s = h;
    for chunk in key.chunks_exact_mut(8) {
        s = mix64(s);
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

/// Uniform draw from `[0, 1)` with 53 random mantissa bits.
#[inline]
pub fn uniform01(rng: &mut ChaCha12Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// One standard normal pair via the Box-Muller transform.
pub fn normal_pair(rng: &mut ChaCha12Rng) -> (f64, f64) {
    // u1 in (0, 1] keeps the log finite.
    let u1 = 1.0 - uniform01(rng);
    let u2 = uniform01(rng);
    let r = fmath::sqrt(-2.0 * fmath::ln(u1));
    let t = 2.0 * core::f64::consts::PI * u2;
    (r * fmath::cos(t), r * fmath::sin(t))
}

/// Poisson draw with arbitrary mean, exact up to float rounding of the mean.
///
/// Splits the mean into chunks of at most 16 and sums independent inversion
/// draws; Poisson additivity makes the sum an exact draw for the full mean,
/// and `exp(-16)` keeps the inversion products far from underflow.
pub fn poisson_count(rng: &mut ChaCha12Rng, mean: f64) -> u64 {
    debug_assert!(mean >= 0.0 && mean.is_finite());
    const CHUNK: f64 = 16.0;
    let mut remaining = mean;
    let mut total = 0u64;
    while remaining > 0.0 {
        let m = if remaining > CHUNK { CHUNK } else { remaining };
        remaining -= m;
        // Knuth inversion: count uniforms until their product drops below e^-m.
        let floor = fmath::exp(-m);
        let mut prod = uniform01(rng);
        while prod >= floor {
            total += 1;
            prod *= uniform01(rng);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_label_sensitive() {
        let mut a = derive_stream(42, &[7, 0]);
        let mut b = derive_stream(42, &[7, 0]);
        let mut c = derive_stream(42, &[7, 1]);
        let mut d = derive_stream(43, &[7, 0]);
        let xa: alloc::vec::Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let xb: alloc::vec::Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let xc: alloc::vec::Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        let xd: alloc::vec::Vec<u64> = (0..8).map(|_| d.next_u64()).collect();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);
        assert_ne!(xa, xd);
    }

    #[test]
    fn uniforms_live_in_the_half_open_interval() {
        let mut rng = derive_stream(1, &[]);
        let mut sum = 0.0;
        let trials = 100_000;
        for _ in 0..trials {
            let u = uniform01(&mut rng);
            assert!((0.0..1.0).contains(&u));
            sum += u;
        }
        let mean = sum / trials as f64;
        // SE = 1/sqrt(12 trials) ~ 9.1e-4
        assert!((mean - 0.5).abs() < 4.0 * 9.2e-4, "mean {mean}");
    }

    #[test]
    fn normals_have_unit_scale() {
        let mut rng = derive_stream(2, &[]);
        let trials = 50_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..trials {
            let (x, y) = normal_pair(&mut rng);
            s1 += x + y;
            s2 += x * x + y * y;
        }
        let n = (2 * trials) as f64;
        let mean = s1 / n;
        let var = s2 / n - mean * mean;
        assert!(mean.abs() < 4.0 / n.sqrt(), "mean {mean}");
        // Var of the sample variance of a normal is ~2/n.
        assert!((var - 1.0).abs() < 4.0 * (2.0 / n).sqrt(), "var {var}");
    }

    #[test]
    fn poisson_counts_match_the_first_two_moments() {
        let mut rng = derive_stream(3, &[]);
        let mean = 100.0;
        let trials = 20_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..trials {
            let x = poisson_count(&mut rng, mean) as f64;
            s1 += x;
            s2 += x * x;
        }
        let m = s1 / trials as f64;
        let v = s2 / trials as f64 - m * m;
        let se = (mean / trials as f64).sqrt();
        assert!((m - mean).abs() < 4.0 * se, "mean {m}");
        // SE of the sample variance of Poisson(100) ~ sqrt((2*100^2 + 100)/trials)
        let se_var = ((2.0 * mean * mean + mean) / trials as f64).sqrt();
        assert!((v - mean).abs() < 4.0 * se_var, "var {v}");
    }

    #[test]
    fn tiny_mean_poisson_matches_the_exact_pmf() {
        let mut rng = derive_stream(4, &[]);
        let mean = 0.8;
        let trials = 200_000usize;
        let mut counts = [0u32; 8];
        for _ in 0..trials {
            let x = poisson_count(&mut rng, mean) as usize;
            counts[x.min(7)] += 1;
        }
        let mut pmf = [0.0f64; 8];
        let mut p = fmath::exp(-mean);
        let mut tail = 1.0;
        for (k, slot) in pmf.iter_mut().enumerate().take(7) {
            *slot = p;
            tail -= p;
            p *= mean / (k + 1) as f64;
        }
        pmf[7] = tail;
        for k in 0..8 {
            let expect = pmf[k] * trials as f64;
            let sd = (expect * (1.0 - pmf[k])).sqrt().max(1.0);
            assert!(
                (counts[k] as f64 - expect).abs() < 5.0 * sd,
                "k={k}: {} vs {expect}",
                counts[k]
            );
        }
    }
}
