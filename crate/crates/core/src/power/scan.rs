//! Exhaustive scan of divergent Wick contractions at small order.

use std::collections::BTreeMap;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{build_strands, divergence_degree, Diagram, DivergenceReport, ModelSpec};
use crate::error::{Error, Result};
use crate::melonic;
use crate::perm;

pub const MAX_SCAN_VERTICES: usize = 4;

/// Best closure over all ways of joining the external legs by propagators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureCheck {
    /// Smallest degree among closures; `None` when the closure rank is below 3.
    pub min_degree: Option<u64>,
    /// Some closure reduces to the dipole.
    pub melonic: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct DivergentClass {
    pub hash: String,
    pub diagram: Diagram,
    pub vertices: usize,
    pub n_points: usize,
    pub internal_lines: usize,
    pub closed_strands: usize,
    pub report: DivergenceReport,
    /// Number of labeled contractions (vertex order and slots fixed) in the class.
    pub multiplicity: u64,
    pub closure: ClosureCheck,
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub model: String,
    pub max_vertices: usize,
    pub classes: Vec<DivergentClass>,
}

impl ScanResult {
    /// Every class has a closure of degree 0 (planar for rank-3 closures,
    /// melonic from rank 4 on). Vacuously true when no degree is defined.
    pub fn all_have_leading_closure(&self) -> bool {
        self.classes.iter().all(|c| c.closure.min_degree.is_none_or(|d| d == 0))
    }
}

/// Connected loop diagrams with at least two external legs and δ ≥ 0, up to
/// `max_vertices` vertices, one entry per isomorphism class. For a
/// color-symmetric model, classes related by a global color permutation are
/// identified.
pub fn scan_divergent(model: &ModelSpec, max_vertices: usize) -> Result<ScanResult> {
    if max_vertices > MAX_SCAN_VERTICES {
        return Err(Error::ResourceLimit {
            what: "divergence scan vertices",
            requested: max_vertices as u128,
            limit: MAX_SCAN_VERTICES as u128,
        });
    }
    let mut classes = Vec::new();
    for v in 1..=max_vertices {
        let seqs = type_sequences(model.bubbles.len(), v, model.color_symmetric);
        let found: Vec<BTreeMap<Vec<u8>, Found>> = seqs.par_iter().map(|types| scan_types(model, types)).collect();
        let mut merged: BTreeMap<Vec<u8>, Found> = BTreeMap::new();
        for m in found {
            for (k, f) in m {
                match merged.get_mut(&k) {
                    Some(e) => {
                        if e.degree != f.degree {
                            return Err(Error::Inconsistent("isomorphic diagrams with different degrees".into()));
                        }
                        e.count += f.count;
                    }
                    None => {
                        merged.insert(k, f);
                    }
                }
            }
        }
        for (key, f) in merged {
            classes.push(describe(model, &key, f)?);
        }
    }
    Ok(ScanResult { model: model.name(), max_vertices, classes })
}

struct Found {
    diagram: Diagram,
    degree: i64,
    count: u64,
}

/// Non-decreasing bubble sequences; with color symmetry, also in
/// first-appearance form.
fn type_sequences(types: usize, v: usize, color_symmetric: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(v);
    fn rec(types: usize, v: usize, sym: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == v {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        let hi = if sym { cur.last().map_or(0, |&x| x + 1).min(types - 1) } else { types - 1 };
        for t in lo..=hi {
            cur.push(t);
            rec(types, v, sym, cur, out);
            cur.pop();
        }
    }
    rec(types, v, color_symmetric, &mut cur, &mut out);
    out
}

struct Frame {
    tau_inv: Vec<usize>,
    pi: Vec<usize>,
    pi_inv: Vec<usize>,
    tau: Vec<usize>,
}

struct Ctx<'a> {
    model: &'a ModelSpec,
    types: &'a [usize],
    /// sigma[c][w]: global black of global white w in block c
    sigma: Vec<Vec<usize>>,
    frames: Vec<Vec<Frame>>,
}

fn scan_types(model: &ModelSpec, types: &[usize]) -> BTreeMap<Vec<u8>, Found> {
    let v = types.len();
    let n = 2 * v;
    let sigma = (0..model.rank())
        .map(|c| {
            (0..n)
                .map(|w| 2 * (w / 2) + model.bubbles[types[w / 2]].graph.matching(c)[w % 2])
                .collect()
        })
        .collect();
    let frames = model
        .bubbles
        .iter()
        .map(|b| {
            b.automorphisms()
                .into_iter()
                .map(|(tau, pi)| Frame { tau_inv: perm::inverse(&tau), pi_inv: perm::inverse(&pi), tau, pi })
                .collect()
        })
        .collect();
    let ctx = Ctx { model, types, sigma, frames };
    let mut out = BTreeMap::new();
    let mut prop = vec![None; n];
    let mut prop_inv = vec![None; n];
    ctx.assign(0, &mut prop, &mut prop_inv, &mut out);
    out
}

impl Ctx<'_> {
    fn assign(
        &self,
        b: usize,
        prop: &mut Vec<Option<usize>>,
        prop_inv: &mut Vec<Option<usize>>,
        out: &mut BTreeMap<Vec<u8>, Found>,
    ) {
        let n = prop.len();
        if b == n {
            self.visit(prop, prop_inv, out);
            return;
        }
        self.assign(b + 1, prop, prop_inv, out);
        for w in 0..n {
            if prop[w].is_none() {
                prop[w] = Some(b);
                prop_inv[b] = Some(w);
                self.assign(b + 1, prop, prop_inv, out);
                prop[w] = None;
                prop_inv[b] = None;
            }
        }
    }

    fn visit(&self, prop: &[Option<usize>], prop_inv: &[Option<usize>], out: &mut BTreeMap<Vec<u8>, Found>) {
        let v = self.types.len();
        let lines = prop.iter().filter(|p| p.is_some()).count();
        // loop diagrams with external legs only
        if lines < v || lines == 2 * v {
            return;
        }
        if !connected(prop, v) {
            return;
        }
        let degree = self.degree(prop, prop_inv, lines);
        if degree < 0 {
            return;
        }
        let key = self.canonical_key(prop, prop_inv);
        match out.get_mut(&key) {
            Some(f) => {
                debug_assert_eq!(f.degree, degree);
                f.count += 1;
            }
            None => {
                let diagram = Diagram::from_raw(self.types.to_vec(), prop.to_vec());
                out.insert(key, Found { diagram, degree, count: 1 });
            }
        }
    }

    fn degree(&self, prop: &[Option<usize>], prop_inv: &[Option<usize>], lines: usize) -> i64 {
        let n = prop.len();
        let mut faces = 0i64;
        for (c, sigma) in self.sigma.iter().enumerate() {
            let mut seen = 0u32;
            for w in (0..n).filter(|&w| prop[w].is_none()) {
                let mut x = w;
                loop {
                    seen |= 1 << x;
                    match prop_inv[sigma[x]] {
                        Some(y) => x = y,
                        None => break,
                    }
                }
            }
            for w in 0..n {
                if seen & (1 << w) == 0 {
                    let mut x = w;
                    while seen & (1 << x) == 0 {
                        seen |= 1 << x;
                        x = prop_inv[sigma[x]].expect("closed strand");
                    }
                    faces += self.model.block_dims[c] as i64;
                }
            }
        }
        faces - 2 * lines as i64
    }

    /// Minimal traversal encoding over all start vertices and start frames.
    fn canonical_key(&self, prop: &[Option<usize>], prop_inv: &[Option<usize>]) -> Vec<u8> {
        let v = self.types.len();
        let mut best: Option<Vec<u8>> = None;
        for s in 0..v {
            for f in 0..self.frames[self.types[s]].len() {
                let k = self.encode(prop, prop_inv, s, f);
                if best.as_ref().is_none_or(|b| k < *b) {
                    best = Some(k);
                }
            }
        }
        best.expect("at least one vertex")
    }

    fn encode(&self, prop: &[Option<usize>], prop_inv: &[Option<usize>], start: usize, frame: usize) -> Vec<u8> {
        const EXT: u8 = u8::MAX;
        let v = self.types.len();
        let mut label = vec![usize::MAX; v];
        let mut frame_of = vec![0usize; v];
        let mut order = vec![start];
        label[start] = 0;
        frame_of[start] = frame;
        let mut color_rename: Vec<Option<u8>> = vec![None; self.model.bubbles.len()];
        let mut next_color = 0u8;
        let mut types_out = Vec::with_capacity(v);
        let mut codes = Vec::with_capacity(4 * v);
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            let t = self.types[x];
            let code = if self.model.color_symmetric {
                *color_rename[t].get_or_insert_with(|| {
                    next_color += 1;
                    next_color - 1
                })
            } else {
                t as u8
            };
            types_out.push(code);
            let fr = &self.frames[t][frame_of[x]];
            // whites in frame order, then blacks
            for ns in 0..2 {
                let w = 2 * x + fr.tau_inv[ns];
                codes.push(match prop[w] {
                    None => (EXT, EXT),
                    Some(b) => self.reach(b / 2, b % 2, false, &mut label, &mut frame_of, &mut order),
                });
            }
            for ns in 0..2 {
                let b = 2 * x + fr.pi_inv[ns];
                codes.push(match prop_inv[b] {
                    None => (EXT, EXT),
                    Some(w) => self.reach(w / 2, w % 2, true, &mut label, &mut frame_of, &mut order),
                });
            }
            i += 1;
        }
        let mut key = types_out;
        key.extend(codes.into_iter().flat_map(|(a, b)| [a, b]));
        key
    }

    /// Label vertex `u` on first contact, fixing its frame so that the entry
    /// slot gets the smallest image; return (label, slot in frame).
    fn reach(
        &self,
        u: usize,
        slot: usize,
        white: bool,
        label: &mut [usize],
        frame_of: &mut [usize],
        order: &mut Vec<usize>,
    ) -> (u8, u8) {
        let frames = &self.frames[self.types[u]];
        let image = |f: &Frame| if white { f.tau[slot] } else { f.pi[slot] };
        if label[u] == usize::MAX {
            label[u] = order.len();
            order.push(u);
            frame_of[u] = (0..frames.len()).min_by_key(|&f| image(&frames[f])).expect("identity frame");
        }
        (label[u] as u8, image(&frames[frame_of[u]]) as u8)
    }
}

fn connected(prop: &[Option<usize>], v: usize) -> bool {
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut comps = v;
    for (w, b) in prop.iter().enumerate() {
        if let Some(b) = b {
            let (x, y) = (find(&mut parent, w / 2), find(&mut parent, b / 2));
            if x != y {
                parent[x] = y;
                comps -= 1;
            }
        }
    }
    comps == 1
}

fn describe(model: &ModelSpec, key: &[u8], f: Found) -> Result<DivergentClass> {
    let net = build_strands(model, &f.diagram);
    let report = divergence_degree(&net);
    if report.degree != f.degree {
        return Err(Error::Inconsistent("fast and full strand routing disagree".into()));
    }
    let (phis, _) = f.diagram.open_fields();
    let closure = if model.rank() + 1 >= 3 {
        let mut min_degree = u64::MAX;
        let mut any_melonic = false;
        for legs in perm::all_perms(phis.len()) {
            let g = f.diagram.closure(model, &legs)?;
            min_degree = min_degree.min(melonic::degree(&g)?.degree);
            any_melonic |= melonic::is_melonic(&g);
        }
        ClosureCheck { min_degree: Some(min_degree), melonic: Some(any_melonic) }
    } else {
        ClosureCheck { min_degree: None, melonic: None }
    };
    let digest = Sha256::digest(key);
    Ok(DivergentClass {
        hash: hex::encode(&digest[..8]),
        vertices: f.diagram.vertices.len(),
        n_points: f.diagram.external_legs(),
        internal_lines: net.internal_lines,
        closed_strands: net.closed().count(),
        report,
        multiplicity: f.count,
        closure,
        diagram: f.diagram,
    })
}
