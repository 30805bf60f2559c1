//! One-loop maps of the intermediate-field expansion.
//!
//! Each quartic vertex becomes a σ line joining two corners. Every corner
//! sits on a resolvent chain (which runs from an external entry to an
//! external exit) or on a loop vertex (a cycle). A configuration is a
//! successor map on corners plus the σ pairing and a bubble type per line.
//! All configurations on labeled corners are enumerated; a class of
//! configurations related by corner relabeling carries weight
//! (class size)/(corners)!, which equals ∏ 1/n_i · 1/k! times the number of
//! Wick pairings it collapses.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::perm;
use crate::power::ModelSpec;

pub type Weight = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Next {
    Corner(usize),
    Exit(usize),
}

/// One labeled configuration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntermediateFieldMap {
    /// First stop of the chain starting at each external entry.
    pub entry: Vec<Next>,
    /// Successor of each corner.
    pub succ: Vec<Next>,
    /// σ partner of each corner.
    pub partner: Vec<usize>,
    /// Bubble type of the σ line at each corner (equal on partners).
    pub bubble: Vec<usize>,
}

/// How the index blocks of one bubble split between the two halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halving {
    /// Blocks whose strand jumps to the partner corner.
    pub cut: Vec<usize>,
    /// The other halving is the image of this one under a symmetry of the
    /// bubble that permutes blocks of equal dimension.
    pub crossing_symmetric: bool,
}

/// Blocks in which strands cross between the halves, for the halving with
/// the lighter cut, plus the crossing flag.
pub fn halving(model: &ModelSpec, bubble: usize) -> Halving {
    let g = &model.bubbles[bubble].graph;
    let r = model.rank();
    // halving 0 pairs white i with black i; halving 1 pairs white i with black 1−i
    let cut_of = |h: usize| -> Vec<usize> { (0..r).filter(|&c| g.matching(c)[0] != h).collect() };
    let weight = |cut: &Vec<usize>| -> u32 { cut.iter().map(|&c| model.block_dims[c]).sum() };
    let (c0, c1) = (cut_of(0), cut_of(1));
    let (primary, other) = if (weight(&c0), &c0) <= (weight(&c1), &c1) { (c0, c1) } else { (c1, c0) };
    let form = g.canonical_form();
    let crossing_symmetric = perm::all_perms(r).into_iter().any(|p| {
        let dims_ok = (0..r).all(|c| model.block_dims[p[c]] == model.block_dims[c]);
        let maps_cut = {
            let mut img: Vec<usize> = primary.iter().map(|&c| p[c]).collect();
            img.sort_unstable();
            img == other
        };
        dims_ok && maps_cut && {
            let mut m = vec![Vec::new(); r];
            for c in 0..r {
                m[p[c]] = g.matching(c).to_vec();
            }
            crate::graph::ColoredGraph::from_matchings(m).expect("permuted bubble").canonical_form() == form
        }
    });
    Halving { cut: primary, crossing_symmetric }
}

/// Derived data of a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapAnalysis {
    pub chains: Vec<Vec<usize>>,
    pub exits: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    pub lines: usize,
    /// Corner-to-corner propagators.
    pub internal: usize,
    pub connected: bool,
    pub one_pi: bool,
    pub loops: i64,
    /// Loop vertices and chains are the nodes, σ lines the edges.
    pub sigma_tree: bool,
    pub degree: i64,
    /// For each block, the exit reached from each entry.
    pub pattern: Vec<Vec<usize>>,
    /// Blocks whose external strand runs through an internal propagator.
    pub carried: Vec<usize>,
}

impl IntermediateFieldMap {
    pub fn corners(&self) -> usize {
        self.succ.len()
    }

    pub fn analyze(&self, model: &ModelSpec, cuts: &[Vec<bool>]) -> MapAnalysis {
        let n = self.corners();
        let p = self.entry.len();
        let mut on_chain = vec![usize::MAX; n];
        let mut chains = Vec::with_capacity(p);
        let mut exits = Vec::with_capacity(p);
        for (j, &e) in self.entry.iter().enumerate() {
            let mut chain = Vec::new();
            let mut cur = e;
            while let Next::Corner(x) = cur {
                on_chain[x] = j;
                chain.push(x);
                cur = self.succ[x];
            }
            let Next::Exit(out) = cur else { unreachable!() };
            chains.push(chain);
            exits.push(out);
        }
        let mut cycle_of = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if on_chain[s] != usize::MAX || cycle_of[s] != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while cycle_of[x] == usize::MAX {
                cycle_of[x] = cycles.len();
                cyc.push(x);
                let Next::Corner(y) = self.succ[x] else { unreachable!("cycles never exit") };
                x = y;
            }
            cycles.push(cyc);
        }

        // lines graph: nodes are σ lines (indexed by their smaller corner)
        let line_id: Vec<usize> = (0..n).map(|x| x.min(self.partner[x])).collect();
        let line_nodes: BTreeSet<usize> = line_id.iter().copied().collect();
        let lines = line_nodes.len();
        let internal_edges: Vec<(usize, usize)> = (0..n)
            .filter_map(|x| match self.succ[x] {
                Next::Corner(y) => Some((line_id[x], line_id[y])),
                Next::Exit(_) => None,
            })
            .collect();
        let internal = internal_edges.len();
        let lines_connected = |skip: Option<usize>| -> bool {
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            for (i, &(a, b)) in internal_edges.iter().enumerate() {
                if Some(i) != skip {
                    let (x, y) = (find(&mut parent, a), find(&mut parent, b));
                    parent[x] = y;
                }
            }
            let roots: BTreeSet<usize> = line_nodes.iter().map(|&l| find(&mut parent, l)).collect();
            roots.len() == 1
        };
        let connected = chains.iter().all(|c| !c.is_empty()) && lines_connected(None);
        let one_pi = connected && (0..internal).all(|i| lines_connected(Some(i)));
        let loops = internal as i64 - lines as i64 + 1;

        // σ-tree: nodes are chains then cycles
        let node = |x: usize| if on_chain[x] != usize::MAX { on_chain[x] } else { p + cycle_of[x] };
        let nodes = p + cycles.len();
        let mut parent: Vec<usize> = (0..nodes).collect();
        let mut tree = lines == nodes - 1;
        for &l in &line_nodes {
            let (mut a, mut b) = (node(l), node(self.partner[l]));
            while parent[a] != a {
                a = parent[a];
            }
            while parent[b] != b {
                b = parent[b];
            }
            if a == b {
                tree = false;
            } else {
                parent[a] = b;
            }
        }

        // strands: a segment is named by its source (entry j → n + j, corner x → x)
        let target = |src: usize| if src >= n { self.entry[src - n] } else { self.succ[src] };
        let mut faces = 0i64;
        let mut pattern = Vec::with_capacity(model.rank());
        let mut carried = Vec::new();
        for (c, &dim) in model.block_dims.iter().enumerate() {
            let step = |y: usize| if cuts[self.bubble[y]][c] { self.partner[y] } else { y };
            let mut seen = vec![false; n];
            let mut exits_c = Vec::with_capacity(p);
            let mut carries = false;
            for j in 0..p {
                let mut src = n + j;
                loop {
                    match target(src) {
                        Next::Exit(out) => {
                            exits_c.push(out);
                            break;
                        }
                        Next::Corner(y) => {
                            if src < n {
                                carries = true;
                            }
                            src = step(y);
                            seen[src] = true;
                        }
                    }
                }
            }
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut src = s;
                while !seen[src] {
                    seen[src] = true;
                    let Next::Corner(y) = target(src) else { unreachable!("closed strands never exit") };
                    src = step(y);
                }
                faces += dim as i64;
            }
            pattern.push(exits_c);
            if carries {
                carried.push(c);
            }
        }
        MapAnalysis {
            chains,
            exits,
            cycles,
            lines,
            internal,
            connected,
            one_pi,
            loops,
            sigma_tree: tree,
            degree: faces - 2 * internal as i64,
            pattern,
            carried,
        }
    }

    fn relabeled(&self, rho: &[usize]) -> IntermediateFieldMap {
        let n = self.corners();
        let map = |x: Next| match x {
            Next::Corner(c) => Next::Corner(rho[c]),
            e => e,
        };
        let mut succ = vec![Next::Exit(0); n];
        let mut partner = vec![0; n];
        let mut bubble = vec![0; n];
        for x in 0..n {
            succ[rho[x]] = map(self.succ[x]);
            partner[rho[x]] = rho[self.partner[x]];
            bubble[rho[x]] = self.bubble[x];
        }
        IntermediateFieldMap { entry: self.entry.iter().map(|&e| map(e)).collect(), succ, partner, bubble }
    }

    /// Smallest relabeling; the class representative.
    pub fn canonical(&self) -> IntermediateFieldMap {
        perm::all_perms(self.corners()).iter().map(|rho| self.relabeled(rho)).min().expect("S_n is nonempty")
    }

    /// Crossing on the σ line at corner `x`: the two corners trade successors.
    pub fn cross(&self, x: usize) -> IntermediateFieldMap {
        let mut out = self.clone();
        out.succ.swap(x, self.partner[x]);
        out
    }
}

/// All classes with `p` chains and `lines` σ lines, keyed by representative.
pub fn enumerate_classes(model: &ModelSpec, p: usize, lines: usize) -> Result<BTreeMap<IntermediateFieldMap, Weight>> {
    let n = 2 * lines;
    if n + p > 8 {
        return Err(Error::ResourceLimit { what: "intermediate-field corners", requested: (n + p) as u128, limit: 8 });
    }
    let types = model.bubbles.len();
    let matchings = perfect_matchings(&(0..n).collect::<Vec<_>>());
    let mut counts: BTreeMap<IntermediateFieldMap, i64> = BTreeMap::new();
    // sources are entries then corners; targets are corners then exits
    for targets in perm::all_perms(n + p) {
        let to_next = |t: usize| if t < n { Next::Corner(t) } else { Next::Exit(t - n) };
        let entry: Vec<Next> = targets[..p].iter().map(|&t| to_next(t)).collect();
        let succ: Vec<Next> = targets[p..].iter().map(|&t| to_next(t)).collect();
        for m in &matchings {
            for coloring in 0..types.pow(lines as u32) {
                let mut bubble = vec![0; n];
                let mut code = coloring;
                for &(a, b) in m {
                    bubble[a] = code % types;
                    bubble[b] = code % types;
                    code /= types;
                }
                let mut partner = vec![0; n];
                for &(a, b) in m {
                    partner[a] = b;
                    partner[b] = a;
                }
                let map = IntermediateFieldMap { entry: entry.clone(), succ: succ.clone(), partner, bubble };
                *counts.entry(map.canonical()).or_insert(0) += 1;
            }
        }
    }
    let total = perm::factorial(n) as i64;
    Ok(counts.into_iter().map(|(k, c)| (k, Weight::new(c, total))).collect())
}

fn perfect_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for (j, &other) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect();
        for mut sub in perfect_matchings(&remaining) {
            sub.insert(0, (first, other));
            out.push(sub);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matchings_count() {
        for (n, count) in [(0, 1), (2, 1), (4, 3), (6, 15)] {
            let items: Vec<usize> = (0..n).collect();
            assert_eq!(perfect_matchings(&items).len(), count);
        }
    }
}
