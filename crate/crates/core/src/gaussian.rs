//! Gaussian moments of tensor invariants with unit covariance
//! E[φ_p φ̄_q] = δ_pq, every index block of size N.
//!
//! Exactly, E[bubble] = Σ_ρ N^F(ρ) over the pairings ρ of φ's with φ̄'s,
//! where F(ρ) counts the faces through the pairing color in the closure.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::melonic;
use crate::numerics::Neumaier;
use crate::perm;

pub const DEFAULT_MAX_PAIRS: usize = 6;
/// Samples per independent random stream.
pub const MC_CHUNK: usize = 1024;
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha 0.9), stream i per 1024-sample chunk, StandardNormal (rand_distr 0.5)";
/// Largest number of index assignments the generic evaluator may sum per sample.
const MAX_BRUTE_TERMS: u128 = 1 << 20;

/// Integer polynomial in N; `coeffs[k]` multiplies N^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<u64>,
}

impl IntPoly {
    pub fn eval_exact(&self, n: u64) -> Option<u128> {
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(n as u128)?.checked_add(c as u128)?;
        }
        Some(acc)
    }

    pub fn eval(&self, n: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * n + c as f64)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev().filter(|(_, &c)| c != 0) {
            let t = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "N".to_string(),
                (1, c) => format!("{c}*N"),
                (k, 1) => format!("N^{k}"),
                (k, c) => format!("{c}*N^{k}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentResult {
    pub polynomial: IntPoly,
    pub n: u64,
    pub exact: Option<u128>,
    pub value: f64,
    pub mc: Option<McEstimate>,
}

fn check_pairs(bubble: &ColoredGraph) -> Result<()> {
    if bubble.pairs() > DEFAULT_MAX_PAIRS {
        return Err(Error::ResourceLimit {
            what: "bubble pairs for exact moments",
            requested: bubble.pairs() as u128,
            limit: DEFAULT_MAX_PAIRS as u128,
        });
    }
    Ok(())
}

/// Faces through color 0 of the closure by pairing `rho` (white→black).
pub fn pairing_faces(bubble: &ColoredGraph, rho: &[usize]) -> Result<usize> {
    Ok(bubble.closure(rho)?.faces().count_with(0))
}

pub fn moment_polynomial(bubble: &ColoredGraph) -> Result<IntPoly> {
    check_pairs(bubble)?;
    let mut coeffs = vec![0u64; bubble.rank() * bubble.pairs() + 1];
    for rho in perm::all_perms(bubble.pairs()) {
        coeffs[pairing_faces(bubble, &rho)?] += 1;
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(IntPoly { coeffs })
}

pub fn exact_moment(bubble: &ColoredGraph, n: u64) -> Result<MomentResult> {
    let polynomial = moment_polynomial(bubble)?;
    Ok(MomentResult {
        exact: polynomial.eval_exact(n),
        value: polynomial.eval(n as f64),
        polynomial,
        n,
        mc: None,
    })
}

type C64 = num_complex::Complex<f64>;

/// Evaluates a bubble on explicit tensors.
pub struct Evaluator {
    bubble: ColoredGraph,
    n: usize,
    plan: Plan,
}

enum Plan {
    Norm,
    NormSquared,
    /// I = Σ_{y,y'} G[y,y'] G[y',y], G[y,y'] = Σ_x φ[x,y] conj(φ[x,y']).
    Quartic { x_offsets: Vec<usize>, y_offsets: Vec<usize> },
    Generic,
}

fn offsets(colors: &[usize], n: usize) -> Vec<usize> {
    let mut out = vec![0usize];
    for &c in colors {
        let stride = n.pow(c as u32);
        out = out.iter().flat_map(|&o| (0..n).map(move |i| o + i * stride)).collect();
    }
    out
}

impl Evaluator {
    pub fn new(bubble: &ColoredGraph, n: usize) -> Result<Self> {
        let d = bubble.rank();
        let plan = match bubble.pairs() {
            1 => Plan::Norm,
            2 => {
                let same: Vec<usize> = (0..d).filter(|&c| bubble.matching(c) == bubble.matching(0)).collect();
                let other: Vec<usize> = (0..d).filter(|&c| bubble.matching(c) != bubble.matching(0)).collect();
                if other.is_empty() {
                    Plan::NormSquared
                } else {
                    // sum over the larger block set inside G
                    let (x, y) = if same.len() >= other.len() { (same, other) } else { (other, same) };
                    Plan::Quartic { x_offsets: offsets(&x, n), y_offsets: offsets(&y, n) }
                }
            }
            _ => {
                let terms = (n as u128).checked_pow((d * bubble.pairs()) as u32).unwrap_or(u128::MAX);
                if terms > MAX_BRUTE_TERMS {
                    return Err(Error::ResourceLimit { what: "index assignments per sample", requested: terms, limit: MAX_BRUTE_TERMS });
                }
                Plan::Generic
            }
        };
        Ok(Evaluator { bubble: bubble.clone(), n, plan })
    }

    /// Value of the invariant; `phi` is indexed by Σ_c i_c N^c.
    pub fn eval(&self, phi: &[C64]) -> f64 {
        match &self.plan {
            Plan::Norm => phi.iter().map(|z| z.norm_sqr()).sum(),
            Plan::NormSquared => phi.iter().map(|z| z.norm_sqr()).sum::<f64>().powi(2),
            Plan::Quartic { x_offsets, y_offsets } => {
                let m = y_offsets.len();
                let mut g = vec![C64::new(0.0, 0.0); m * m];
                for (a, &ya) in y_offsets.iter().enumerate() {
                    for (b, &yb) in y_offsets.iter().enumerate() {
                        g[a * m + b] = x_offsets.iter().map(|&x| phi[x + ya] * phi[x + yb].conj()).sum();
                    }
                }
                let mut acc = 0.0;
                for a in 0..m {
                    for b in 0..m {
                        acc += (g[a * m + b] * g[b * m + a]).re;
                    }
                }
                acc
            }
            Plan::Generic => self.eval_generic(phi),
        }
    }

    /// Sum over all index assignments of the whites.
    pub fn eval_generic(&self, phi: &[C64]) -> f64 {
        let (d, k, n) = (self.bubble.rank(), self.bubble.pairs(), self.n);
        let inv: Vec<Vec<usize>> = (0..d).map(|c| perm::inverse(self.bubble.matching(c))).collect();
        let stride: Vec<usize> = (0..d).map(|c| n.pow(c as u32)).collect();
        let mut idx = vec![0usize; d * k];
        let mut acc = C64::new(0.0, 0.0);
        loop {
            let mut term = C64::new(1.0, 0.0);
            for w in 0..k {
                term *= phi[(0..d).map(|c| idx[w * d + c] * stride[c]).sum::<usize>()];
            }
            for b in 0..k {
                term *= phi[(0..d).map(|c| idx[inv[c][b] * d + c] * stride[c]).sum::<usize>()].conj();
            }
            acc += term;
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return acc.re;
                }
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Monte Carlo average over complex Gaussian tensors φ = (x + iy)/√2.
pub fn mc_moment(bubble: &ColoredGraph, n: u64, samples: usize, seed: u64) -> Result<MomentResult> {
    if samples < 2 || n == 0 {
        return Err(Error::InvalidArgument("Monte Carlo needs N ≥ 1 and at least 2 samples".into()));
    }
    let ev = Evaluator::new(bubble, n as usize)?;
    let size = (n as usize).pow(bubble.rank() as u32);
    let chunks = samples.div_ceil(MC_CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let count = MC_CHUNK.min(samples - i * MC_CHUNK);
            let mut phi = vec![C64::new(0.0, 0.0); size];
            let (mut s, mut s2) = (Neumaier::default(), Neumaier::default());
            for _ in 0..count {
                for z in phi.iter_mut() {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    *z = C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
                }
                let v = ev.eval(&phi);
                s.add(v);
                s2.add(v * v);
            }
            (s.value(), s2.value())
        })
        .collect();
    let sum: Neumaier = partial.iter().map(|p| p.0).collect();
    let sum2: Neumaier = partial.iter().map(|p| p.1).collect();
    let m = samples as f64;
    let mean = sum.value() / m;
    let var = ((sum2.value() - m * mean * mean) / (m - 1.0)).max(0.0);
    let mut out = exact_moment(bubble, n).unwrap_or_else(|_| MomentResult {
        polynomial: IntPoly { coeffs: vec![] },
        n,
        exact: None,
        value: f64::NAN,
        mc: None,
    });
    out.mc = Some(McEstimate { mean, std_error: (var / m).sqrt(), samples, seed, rng: RNG_NAME });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairingRow {
    /// 1-based image of each white.
    pub pairing: Vec<usize>,
    pub faces: usize,
    /// Degree of the closure; `None` when the closure rank is below 3.
    pub degree: Option<u64>,
    pub melonic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominanceProfile {
    pub rows: Vec<PairingRow>,
    pub grid: Vec<u64>,
    /// shares[i][r]: share of row r in the moment at grid[i].
    pub shares: Vec<Vec<f64>>,
}

impl DominanceProfile {
    pub fn max_faces(&self) -> usize {
        self.rows.iter().map(|r| r.faces).max().unwrap_or(0)
    }

    pub fn leading(&self) -> impl Iterator<Item = &PairingRow> {
        let m = self.max_faces();
        self.rows.iter().filter(move |r| r.faces == m)
    }

    /// Share of degree-0 closures at each grid point.
    pub fn degree_zero_share(&self) -> Vec<f64> {
        self.shares
            .iter()
            .map(|s| s.iter().zip(&self.rows).filter(|(_, r)| r.degree == Some(0)).fold(0.0, |acc, (x, _)| acc + x))
            .collect()
    }
}

pub fn dominance_profile(bubble: &ColoredGraph, grid: &[u64]) -> Result<DominanceProfile> {
    check_pairs(bubble)?;
    let mut rows = Vec::new();
    for rho in perm::all_perms(bubble.pairs()) {
        let closure = bubble.closure(&rho)?;
        let degree = if closure.rank() >= 3 && closure.is_connected() { Some(melonic::degree(&closure)?.degree) } else { None };
        rows.push(PairingRow {
            pairing: rho.iter().map(|x| x + 1).collect(),
            faces: closure.faces().count_with(0),
            degree,
            melonic: closure.rank() >= 3 && melonic::is_melonic(&closure),
        });
    }
    let shares = grid
        .iter()
        .map(|&n| {
            let terms: Vec<f64> = rows.iter().map(|r| (n as f64).powi(r.faces as i32)).collect();
            let total: f64 = terms.iter().sum();
            terms.iter().map(|t| t / total).collect()
        })
        .collect();
    Ok(DominanceProfile { rows, grid: grid.to_vec(), shares })
}
