//! One-loop beta function from intermediate-field maps, and the flow.
//!
//! The 4-point coefficient `a` sums the weights of the leading one-loop maps
//! generated from the σ-tree seeds in the channel of the tree-level vertex,
//! relative to the tree weight. The 2-point coefficient `b` sums the weights
//! of the leading tadpole-type maps whose loop propagator carries external
//! momentum. When a vertex can be halved in two ways that a block symmetry
//! exchanges, crossing acts on each σ line and the seeds are replaced by
//! their crossing orbits.

mod intermediate;

pub use intermediate::{
    enumerate_classes, halving, Halving, IntermediateFieldMap, MapAnalysis, Next, Weight,
};

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::power::ModelSpec;

/// 2π², the coefficient of ln N in the one-loop sum.
pub const TWO_PI_SQUARED: f64 = 2.0 * PI * PI;

#[derive(Clone, Debug)]
pub struct OneLoopMap {
    /// Class representative.
    pub map: IntermediateFieldMap,
    pub weight: Weight,
    /// The loop propagator carries external momentum.
    pub carries_momentum: bool,
    /// A σ-tree map; the other entries are crossing images.
    pub seed: bool,
    pub analysis: MapAnalysis,
}

#[derive(Clone, Debug)]
pub struct OneLoopOrbit {
    pub npoints: usize,
    pub maps: Vec<OneLoopMap>,
    /// Weight of the tree-level vertex in the reference channel (4-point only).
    pub tree_weight: Weight,
}

impl OneLoopOrbit {
    pub fn total_weight(&self) -> Weight {
        self.maps.iter().map(|m| m.weight).sum()
    }
}

fn cut_masks(model: &ModelSpec) -> (Vec<Vec<bool>>, Vec<bool>) {
    let mut cuts = Vec::new();
    let mut crossing = Vec::new();
    for t in 0..model.bubbles.len() {
        let h = halving(model, t);
        cuts.push((0..model.rank()).map(|c| h.cut.contains(&c)).collect());
        crossing.push(h.crossing_symmetric);
    }
    (cuts, crossing)
}

/// Leading one-loop maps with `npoints` ∈ {2, 4} external legs, with weights.
pub fn enumerate_one_loop(model: &ModelSpec, npoints: usize) -> Result<OneLoopOrbit> {
    let (p, lines, leading) = match npoints {
        2 => (1, 1, 2),
        4 => (2, 2, 0),
        _ => return Err(Error::InvalidArgument(format!("npoints must be 2 or 4, got {npoints}"))),
    };
    let (cuts, crossing) = cut_masks(model);

    let (reference, tree_weight) = if npoints == 4 {
        let trees: Vec<(MapAnalysis, Weight)> = enumerate_classes(model, 2, 1)?
            .into_iter()
            .filter(|(m, _)| m.bubble[0] == 0)
            .map(|(m, w)| (m.analyze(model, &cuts), w))
            .filter(|(a, _)| a.connected && a.loops == 0 && a.exits == [0, 1])
            .collect();
        let [(tree, w)] = trees.as_slice() else {
            return Err(Error::Inconsistent(format!("expected one reference tree, found {}", trees.len())));
        };
        (Some(tree.pattern.clone()), *w)
    } else {
        (None, Weight::from_integer(1))
    };

    let classes = enumerate_classes(model, p, lines)?;
    let mut analyses: BTreeMap<IntermediateFieldMap, MapAnalysis> = BTreeMap::new();
    let mut seeds = BTreeSet::new();
    for m in classes.keys() {
        let a = m.analyze(model, &cuts);
        let in_channel = match &reference {
            Some(r) => &a.pattern == r,
            None => m.bubble.iter().all(|&t| t == 0),
        };
        if a.one_pi && a.loops == 1 && a.sigma_tree && a.degree == leading && in_channel {
            seeds.insert(m.clone());
        }
        analyses.insert(m.clone(), a);
    }

    let mut orbit = seeds.clone();
    let mut queue: Vec<IntermediateFieldMap> = seeds.iter().cloned().collect();
    while let Some(m) = queue.pop() {
        for x in 0..m.corners() {
            if crossing[m.bubble[x]] {
                let img = m.cross(x).canonical();
                if orbit.insert(img.clone()) {
                    queue.push(img);
                }
            }
        }
    }

    let maps = orbit
        .into_iter()
        .map(|m| {
            let analysis = analyses[&m].clone();
            OneLoopMap {
                weight: classes[&m],
                carries_momentum: !analysis.carried.is_empty(),
                seed: seeds.contains(&m),
                analysis,
                map: m,
            }
        })
        .collect();
    Ok(OneLoopOrbit { npoints, maps, tree_weight })
}

/// The combinatorial pair (a, b); β₂ = (a − 2b)·2π².
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BetaCoefficients {
    pub a: i64,
    pub b: i64,
}

impl BetaCoefficients {
    /// β₂/(2π²), exact.
    pub fn beta2_units(&self) -> i64 {
        self.a - 2 * self.b
    }

    pub fn beta2(&self) -> f64 {
        self.beta2_units() as f64 * TWO_PI_SQUARED
    }
}

impl fmt::Display for BetaCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exact = match self.beta2_units() {
            0 => "0".to_string(),
            1 => "2*pi^2".to_string(),
            -1 => "-2*pi^2".to_string(),
            k => format!("{k}*2*pi^2"),
        };
        write!(f, "a={} b={} beta2={exact} ({})", self.a, self.b, crate::cli::fmt_f64(self.beta2()))
    }
}

fn to_integer(w: Weight, what: &str) -> Result<i64> {
    if w.is_integer() {
        Ok(w.to_integer())
    } else {
        Err(Error::Inconsistent(format!("{what} is not an integer: {w}")))
    }
}

pub fn one_loop_coefficients(model: &ModelSpec) -> Result<BetaCoefficients> {
    let four = enumerate_one_loop(model, 4)?;
    let two = enumerate_one_loop(model, 2)?;
    let a = to_integer(four.total_weight() / four.tree_weight, "a")?;
    let b = to_integer(two.maps.iter().filter(|m| m.carries_momentum).map(|m| m.weight).sum(), "b")?;
    Ok(BetaCoefficients { a, b })
}

/// p²-coefficient of the mass-subtracted loop integrand, read from
/// [1/p²·(1/(q²+p²+m²) − 1/(q²+m²))] at p = 0.
pub fn wave_function_integrand(q2: f64, m2: f64) -> f64 {
    -1.0 / ((q2 + m2) * (q2 + m2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingConstants {
    pub bare: f64,
    pub renormalized: f64,
    pub z: f64,
}

impl CouplingConstants {
    /// g'_b = Z⁻²·g_b.
    pub fn rescaled_bare(&self) -> f64 {
        self.bare / (self.z * self.z)
    }
}

/// g'_b = g_r·[1 + β₂·g_r·(ln N + finite)] to first order.
pub fn rescaled_bare_coupling(g_r: f64, n: f64, beta2: f64, finite: f64) -> f64 {
    g_r * (1.0 + beta2 * g_r * (n.ln() + finite))
}

/// Closed-form solution of dg/dt = β₂ g², g(0) = g_r.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowSolution {
    pub g_r: f64,
    pub beta2: f64,
}

impl FlowSolution {
    pub fn value(&self, t: f64) -> f64 {
        self.g_r / (1.0 - self.beta2 * self.g_r * t)
    }

    /// First t > 0 where the denominator vanishes, if any.
    pub fn pole(&self) -> Option<f64> {
        let k = self.beta2 * self.g_r;
        (k > 0.0).then(|| 1.0 / k)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RGTrajectory {
    pub solution: FlowSolution,
    /// (t = ln N, g(t)) on an even grid from 0 to t_max.
    pub points: Vec<(f64, f64)>,
}

pub fn integrate_flow(g_r: f64, beta2: f64, t_max: f64, steps: usize) -> Result<RGTrajectory> {
    if steps == 0 || t_max <= 0.0 || !t_max.is_finite() || !g_r.is_finite() || !beta2.is_finite() {
        return Err(Error::InvalidArgument("flow needs t_max > 0, steps ≥ 1 and finite inputs".into()));
    }
    let solution = FlowSolution { g_r, beta2 };
    if let Some(t_pole) = solution.pole() {
        if t_pole <= t_max {
            return Err(Error::PoleCrossing { t_pole, t_max });
        }
    }
    let points = (0..=steps)
        .map(|i| {
            let t = t_max * i as f64 / steps as f64;
            (t, solution.value(t))
        })
        .collect();
    Ok(RGTrajectory { solution, points })
}

impl RGTrajectory {
    /// Largest |g'(t) − β₂ g(t)²| at grid midpoints, g' from a five-point stencil.
    pub fn midpoint_residual(&self) -> f64 {
        let s = self.solution;
        self.points
            .windows(2)
            .map(|w| {
                let t = 0.5 * (w[0].0 + w[1].0);
                let h = 1e-3 * (w[1].0 - w[0].0).max(1e-3);
                let d = (-s.value(t + 2.0 * h) + 8.0 * s.value(t + h) - 8.0 * s.value(t - h) + s.value(t - 2.0 * h))
                    / (12.0 * h);
                (d - s.beta2 * s.value(t).powi(2)).abs()
            })
            .fold(0.0, f64::max)
    }
}
