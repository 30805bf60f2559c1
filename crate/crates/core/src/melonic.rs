//! Jackets, the degree, and melons.

use std::collections::BTreeSet;

use crate::census;
use crate::error::{Error, Result};
use crate::graph::{CanonicalForm, ColoredGraph, FaceSet};
use crate::perm;

/// A cyclic order of the colors, up to rotation and reversal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Jacket {
    order: Vec<usize>,
}

impl Jacket {
    /// Representative starting at color 0.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let k = self.order.len();
        (0..k).any(|i| {
            let (x, y) = (self.order[i], self.order[(i + 1) % k]);
            (x, y) == (a, b) || (x, y) == (b, a)
        })
    }
}

/// All (k−1)!/2 jackets, in lexicographic order of their representatives.
pub fn jackets(k: usize) -> Result<Vec<Jacket>> {
    if k < 3 {
        return Err(Error::RankTooSmall { rank: k, min: 3 });
    }
    let mut rest: Vec<usize> = (1..k).collect();
    let mut out = Vec::new();
    loop {
        // a reversal fixes 0 and mirrors the rest; keep one of each pair
        if rest[0] < rest[k - 2] {
            let mut order = vec![0];
            order.extend(&rest);
            out.push(Jacket { order });
        }
        if !perm::next_permutation(&mut rest) {
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub genera: Vec<(Jacket, u64)>,
    pub degree: u64,
}

fn check_closed(g: &ColoredGraph) -> Result<()> {
    if g.rank() < 3 {
        return Err(Error::RankTooSmall { rank: g.rank(), min: 3 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn genus_from_faces(g: &ColoredGraph, faces: &FaceSet, j: &Jacket) -> Result<u64> {
    let f_j: usize = faces.pairs.iter().filter(|p| j.adjacent(p.colors.0, p.colors.1)).map(|p| p.lengths.len()).sum();
    let chi = f_j as i64 - g.edge_count() as i64 + 2 * g.pairs() as i64;
    let twice = 2 - chi;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "jacket {:?} has Euler characteristic {chi}, which gives no valid genus",
            j.order
        )));
    }
    Ok((twice / 2) as u64)
}

pub fn jacket_genus(g: &ColoredGraph, j: &Jacket) -> Result<u64> {
    check_closed(g)?;
    if j.order.len() != g.rank() {
        return Err(Error::InvalidArgument(format!("jacket of rank {} used on a rank-{} graph", j.order.len(), g.rank())));
    }
    genus_from_faces(g, &g.faces(), j)
}

pub fn degree(g: &ColoredGraph) -> Result<DegreeReport> {
    check_closed(g)?;
    let faces = g.faces();
    let mut genera = Vec::new();
    let mut total = 0;
    for j in jackets(g.rank())? {
        let gj = genus_from_faces(g, &faces, &j)?;
        total += gj;
        genera.push((j, gj));
    }
    Ok(DegreeReport { genera, degree: total })
}

/// One step of the melonic reduction, with 1-based labels of the graph at
/// the time of removal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DipoleRemoval {
    pub white: usize,
    pub black: usize,
    /// The color not shared by the removed pair.
    pub open_color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MelonicReport {
    pub melonic: bool,
    pub trace: Vec<DipoleRemoval>,
    /// Pairs left when no further (k−1)-dipole could be found.
    pub residual_pairs: usize,
}

/// All (k−1)-dipoles of `g` as 0-based (white, black, open color).
pub fn dipoles(g: &ColoredGraph) -> Vec<(usize, usize, usize)> {
    let k = g.rank();
    let mut out = Vec::new();
    for w in 0..g.pairs() {
        for open in 0..k {
            let mut shared = (0..k).filter(|&c| c != open).map(|c| g.matching(c)[w]);
            let b = shared.next().expect("rank ≥ 2");
            if shared.all(|x| x == b) && g.matching(open)[w] != b {
                out.push((w, b, open));
            }
        }
    }
    out
}

/// Delete white `w` and black `b` and join the two dangling `open`-colored
/// half-edges. Remaining vertices keep their relative order.
pub fn remove_dipole(g: &ColoredGraph, w: usize, b: usize, open: usize) -> ColoredGraph {
    let n = g.pairs();
    let wmap = |x: usize| if x > w { x - 1 } else { x };
    let bmap = |x: usize| if x > b { x - 1 } else { x };
    let inv_open = perm::inverse(g.matching(open));
    let matchings = (0..g.rank())
        .map(|c| {
            let m = g.matching(c);
            let mut out = vec![0; n - 1];
            for x in (0..n).filter(|&x| x != w) {
                let target = if c == open && x == inv_open[b] { m[w] } else { m[x] };
                out[wmap(x)] = bmap(target);
            }
            out
        })
        .collect();
    ColoredGraph::from_matchings(matchings).expect("dipole removal keeps the graph valid")
}

/// Greedy (k−1)-dipole contraction. Always takes the first dipole found.
pub fn melonic_reduction(g: &ColoredGraph) -> MelonicReport {
    let mut cur = g.clone();
    let mut trace = Vec::new();
    while cur.pairs() > 1 {
        let Some(&(w, b, open)) = dipoles(&cur).first() else {
            return MelonicReport { melonic: false, trace, residual_pairs: cur.pairs() };
        };
        trace.push(DipoleRemoval { white: w + 1, black: b + 1, open_color: open });
        cur = remove_dipole(&cur, w, b, open);
    }
    MelonicReport { melonic: true, trace, residual_pairs: 1 }
}

pub fn is_melonic(g: &ColoredGraph) -> bool {
    g.is_connected() && melonic_reduction(g).melonic
}

/// Splice a (k−1)-dipole into the edge of color `color` at white `white`
/// (1-based). The new pair takes label n+1.
pub fn insert_melon(g: &ColoredGraph, color: usize, white: usize) -> Result<ColoredGraph> {
    if color >= g.rank() || white == 0 || white > g.pairs() {
        return Err(Error::InvalidEdge { color, white });
    }
    let n = g.pairs();
    let w = white - 1;
    let matchings = (0..g.rank())
        .map(|c| {
            let mut m = g.matching(c).to_vec();
            if c == color {
                let old = m[w];
                m[w] = n;
                m.push(old);
            } else {
                m.push(n);
            }
            m
        })
        .collect();
    ColoredGraph::from_matchings(matchings)
}

/// Number of melonic graphs of rank k on p pairs, up to isomorphism.
pub fn melon_census(k: usize, p: usize, max_space: u128) -> Result<u64> {
    Ok(melons(k, p, max_space)?.len() as u64)
}

pub fn melons(k: usize, p: usize, max_space: u128) -> Result<BTreeSet<CanonicalForm>> {
    if k < 3 {
        return Err(Error::RankTooSmall { rank: k, min: 3 });
    }
    Ok(census::enumerate_invariants(k, p, max_space)?
        .into_iter()
        .filter(|f| is_melonic(&f.to_graph()))
        .collect())
}
