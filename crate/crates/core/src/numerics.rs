//! The lattice sum S(N) = Σ_{q∈[−N,N]⁴} 1/(q²+m²)² and related checks.
//!
//! S(N) is evaluated from the number of lattice points on each shell q² = s,
//! built as a convolution of one-dimensional square histograms. The last
//! convolution goes through an FFT and is rounded back to exact integers.

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

pub const DEFAULT_MASS2: f64 = 1.0;
pub const DEFAULT_MAX_N: u64 = 1024;
pub const DEFAULT_GRID: [u64; 4] = [64, 128, 256, 512];
const CHUNK: usize = 4096;

/// Neumaier's compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `h[s]` = number of q ∈ [−N,N]⁴ with q² = s, for s in 0..=4N².
pub fn shell_histogram(n: u64) -> Result<Vec<u64>> {
    if n > DEFAULT_MAX_N {
        return Err(Error::ResourceLimit { what: "lattice cutoff N", requested: n as u128, limit: DEFAULT_MAX_N as u128 });
    }
    let n = n as usize;
    let mut h2 = vec![0u64; 2 * n * n + 1];
    for a in 0..=n {
        let wa = if a == 0 { 1 } else { 2 };
        for b in 0..=n {
            let wb = if b == 0 { 1 } else { 2 };
            h2[a * a + b * b] += wa * wb;
        }
    }
    let len = 4 * n * n + 1;
    let size = len.next_power_of_two();
    let mut buf: Vec<Complex<f64>> = h2.iter().map(|&x| Complex::new(x as f64, 0.0)).collect();
    buf.resize(size, Complex::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(size).process(&mut buf);
    buf.iter_mut().for_each(|z| *z = *z * *z);
    planner.plan_fft_inverse(size).process(&mut buf);
    let scale = 1.0 / size as f64;
    let mut h4 = Vec::with_capacity(len);
    let mut worst: f64 = 0.0;
    for z in &buf[..len] {
        let x = z.re * scale;
        let r = x.round();
        worst = worst.max((x - r).abs());
        h4.push(r as u64);
    }
    let total: u128 = h4.iter().map(|&x| x as u128).sum();
    let side = 2 * n as u128 + 1;
    if worst > 0.25 || total != side.pow(4) {
        return Err(Error::Inconsistent(format!(
            "shell histogram is not exact (rounding residue {worst:.3e}, {total} points)"
        )));
    }
    Ok(h4)
}

fn check_mass(m2: f64) -> Result<()> {
    if m2.is_finite() && m2 > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("mass squared must be positive, got {m2}")))
    }
}

/// S(N) from the shell histogram.
pub fn divergent_sum(n: u64, m2: f64) -> Result<f64> {
    divergent_sum_chunked(n, m2, CHUNK)
}

/// Same as [`divergent_sum`] with an explicit summation block size.
pub fn divergent_sum_chunked(n: u64, m2: f64, chunk: usize) -> Result<f64> {
    check_mass(m2)?;
    let h = shell_histogram(n)?;
    let chunk = chunk.max(1);
    let partial: Vec<f64> = h
        .par_chunks(chunk)
        .enumerate()
        .map(|(i, block)| {
            block
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(j, &c)| {
                    let d = (i * chunk + j) as f64 + m2;
                    c as f64 / (d * d)
                })
                .collect::<Neumaier>()
                .value()
        })
        .collect();
    Ok(partial.into_iter().collect::<Neumaier>().value())
}

/// S(N) by the 16-fold sign symmetry, O(N⁴). Reference for small N.
pub fn divergent_sum_folded(n: u64, m2: f64) -> f64 {
    let n = n as i64;
    let w = |x: i64| if x == 0 { 1.0 } else { 2.0 };
    let mut acc = Neumaier::default();
    for a in 0..=n {
        for b in 0..=n {
            for c in 0..=n {
                let wabc = w(a) * w(b) * w(c);
                let s = a * a + b * b + c * c;
                for d in 0..=n {
                    let den = (s + d * d) as f64 + m2;
                    acc.add(wabc * w(d) / (den * den));
                }
            }
        }
    }
    acc.value()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivergentSumFit {
    pub samples: Vec<(u64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub residual_norm: f64,
}

/// Ordinary least squares of S against ln N.
pub fn fit_log_slope(samples: &[(u64, f64)]) -> Result<DivergentSumFit> {
    if samples.len() < 3 {
        return Err(Error::DegenerateFit(format!("need at least 3 samples, got {}", samples.len())));
    }
    if samples.iter().any(|&(n, _)| n == 0) {
        return Err(Error::DegenerateFit("N = 0 has no logarithm".into()));
    }
    let k = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / k;
    let y_mean = samples.iter().map(|s| s.1).sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all samples share the same N".into()));
    }
    let sxy: f64 = xs.iter().zip(samples).map(|(x, s)| (x - x_mean) * (s.1 - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let residual_norm = xs.iter().zip(samples).map(|(x, s)| (s.1 - intercept - slope * x).powi(2)).sum::<f64>().sqrt();
    Ok(DivergentSumFit { samples: samples.to_vec(), slope, intercept, residual_norm })
}

/// Evaluate S on `grid` and fit.
pub fn log_sum_fit(grid: &[u64], m2: f64) -> Result<DivergentSumFit> {
    let samples = grid.iter().map(|&n| Ok((n, divergent_sum(n, m2)?))).collect::<Result<Vec<_>>>()?;
    fit_log_slope(&samples)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubtractionCheck {
    pub samples: Vec<(f64, f64)>,
    pub estimate: f64,
    pub exact: f64,
    pub rel_error: f64,
}

/// p_c = 2^−k for k = 1..=7.
pub fn default_pc_sequence() -> Vec<f64> {
    (1..=7).map(|k| 0.5f64.powi(k)).collect()
}

/// Extrapolate [1/p²·(1/(q²+p²+m²) − 1/(q²+m²))] to p → 0 with Neville's
/// scheme in h = p², and compare with −1/(q²+m²)².
pub fn subtraction_identity_check(q: [i64; 4], m2: f64, pc: &[f64]) -> Result<SubtractionCheck> {
    check_mass(m2)?;
    if pc.is_empty() || pc.iter().any(|&p| p.is_nan() || p <= 0.0) || pc.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("p_c sequence must be positive and strictly decreasing".into()));
    }
    let a = q.iter().map(|x| (x * x) as f64).sum::<f64>() + m2;
    let hs: Vec<f64> = pc.iter().map(|p| p * p).collect();
    let samples: Vec<(f64, f64)> = pc.iter().zip(&hs).map(|(&p, &h)| (p, (1.0 / (a + h) - 1.0 / a) / h)).collect();
    let mut t: Vec<f64> = samples.iter().map(|s| s.1).collect();
    for level in 1..t.len() {
        for i in (level..t.len()).rev() {
            let (hi, hj) = (hs[i], hs[i - level]);
            t[i] = (hj * t[i] - hi * t[i - 1]) / (hj - hi);
        }
    }
    let estimate = *t.last().expect("nonempty");
    let exact = -1.0 / (a * a);
    Ok(SubtractionCheck { samples, estimate, exact, rel_error: ((estimate - exact) / exact).abs() })
}

/// [p/(p²+m²)²] / [1/(p²+m²)] = p/(p²+m²).
pub fn propagator_variation(p: f64, m2: f64) -> f64 {
    p / (p * p + m2)
}
