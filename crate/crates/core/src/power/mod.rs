//! Strand networks of Feynman diagrams and their superficial divergence.
//!
//! A diagram is a list of quartic vertices, each a copy of one of the
//! model's interaction bubbles, plus propagators pairing a φ (white) with a
//! φ̄ (black). Unpaired fields are external legs. In index block `c` a
//! strand alternates bubble edges of color `c` and propagators; closed
//! strands are free momentum sums of dimension `dim(c)`.

mod scan;

pub use scan::{scan_divergent, ClosureCheck, DivergentClass, ScanResult};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{builtin, ColoredGraph};
use crate::perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    Vector,
    Matrix,
    Tensor,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Vector => "vector",
            ModelKind::Matrix => "matrix",
            ModelKind::Tensor => "tensor",
        })
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vector" => Ok(ModelKind::Vector),
            "matrix" => Ok(ModelKind::Matrix),
            "tensor" => Ok(ModelKind::Tensor),
            _ => Err(Error::InvalidArgument(format!("unknown model {s:?} (expected vector, matrix or tensor)"))),
        }
    }
}

/// One quartic vertex: a rank-r bubble on two pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionBubble {
    pub name: String,
    pub graph: ColoredGraph,
}

impl InteractionBubble {
    /// V_V: the square of the mass term.
    pub fn vector() -> Self {
        let g = ColoredGraph::from_matchings(vec![vec![0, 1]]).expect("valid");
        InteractionBubble { name: "V_V".into(), graph: g }
    }

    /// V_M: the trace of (φφ̄)², a 4-cycle.
    pub fn matrix() -> Self {
        InteractionBubble { name: "V_M".into(), graph: builtin::cycle(2) }
    }

    /// V_T,c: the quartic melonic bubble of color `c` at rank `rank`.
    pub fn tensor(rank: usize, c: usize) -> Self {
        InteractionBubble { name: format!("V_T,{c}"), graph: builtin::quartic_melonic(rank, c) }
    }

    /// Relabelings (τ on whites, π on blacks) fixing every matching.
    pub fn automorphisms(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.graph.pairs();
        let inv0 = perm::inverse(self.graph.matching(0));
        perm::all_perms(n)
            .into_iter()
            .filter_map(|tau| {
                // π is forced by color 0: π σ_0 = σ_0 τ
                let pi = perm::compose(&perm::compose(self.graph.matching(0), &tau), &inv0);
                let ok = self.graph.matchings().iter().all(|m| perm::compose(&pi, m) == perm::compose(m, &tau));
                ok.then_some((tau, pi))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    /// `None` for a custom model outside the three standard cases.
    pub kind: Option<ModelKind>,
    pub block_dims: Vec<u32>,
    pub bubbles: Vec<InteractionBubble>,
    /// Bubbles are exchanged by a global color permutation that also
    /// preserves `block_dims`.
    pub color_symmetric: bool,
    pub mass2: f64,
    pub cutoff: u64,
    pub coupling: f64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        let (block_dims, bubbles, color_symmetric) = match kind {
            ModelKind::Vector => (vec![4], vec![InteractionBubble::vector()], false),
            ModelKind::Matrix => (vec![4, 4], vec![InteractionBubble::matrix()], false),
            ModelKind::Tensor => (vec![1; 5], (0..5).map(|c| InteractionBubble::tensor(5, c)).collect(), true),
        };
        ModelSpec { kind: Some(kind), block_dims, bubbles, color_symmetric, mass2: 1.0, cutoff: 64, coupling: 0.0 }
    }

    /// Any other choice of blocks and quartic bubbles. Flagged non-standard.
    pub fn custom(block_dims: Vec<u32>, bubbles: Vec<InteractionBubble>, color_symmetric: bool) -> Result<Self> {
        if block_dims.is_empty() || bubbles.is_empty() {
            return Err(Error::InvalidArgument("a model needs at least one block and one bubble".into()));
        }
        for b in &bubbles {
            if b.graph.rank() != block_dims.len() || b.graph.pairs() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "bubble {} must be quartic (2 pairs) of rank {}",
                    b.name,
                    block_dims.len()
                )));
            }
        }
        Ok(ModelSpec { kind: None, block_dims, bubbles, color_symmetric, mass2: 1.0, cutoff: 64, coupling: 0.0 })
    }

    pub fn is_standard(&self) -> bool {
        self.kind.is_some()
    }

    pub fn rank(&self) -> usize {
        self.block_dims.len()
    }

    pub fn total_dimension(&self) -> u32 {
        self.block_dims.iter().sum()
    }

    pub fn name(&self) -> String {
        self.kind.map_or_else(|| "custom".to_string(), |k| k.to_string())
    }
}

/// A field of a vertex: φ slots are whites, φ̄ slots are blacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Phi { vertex: usize, slot: usize },
    PhiBar { vertex: usize, slot: usize },
}

impl Field {
    pub fn vertex(&self) -> usize {
        match *self {
            Field::Phi { vertex, .. } | Field::PhiBar { vertex, .. } => vertex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    /// Bubble index (into the model's bubble list) of each vertex.
    pub vertices: Vec<usize>,
    /// Global φ id (2·vertex + slot) → global φ̄ id it is contracted with.
    prop: Vec<Option<usize>>,
}

impl Diagram {
    /// Build from propagators, each pairing one φ with one φ̄.
    pub fn new(model: &ModelSpec, vertices: Vec<usize>, propagators: &[(Field, Field)]) -> Result<Self> {
        let v = vertices.len();
        if let Some(&t) = vertices.iter().find(|&&t| t >= model.bubbles.len()) {
            return Err(Error::InvalidArgument(format!("bubble index {t} out of range")));
        }
        let mut prop = vec![None; 2 * v];
        let mut used_bar = vec![false; 2 * v];
        for &(x, y) in propagators {
            let (phi, bar) = match (x, y) {
                (Field::Phi { vertex, slot }, Field::PhiBar { vertex: bv, slot: bs })
                | (Field::PhiBar { vertex: bv, slot: bs }, Field::Phi { vertex, slot }) => ((vertex, slot), (bv, bs)),
                _ => {
                    return Err(Error::InvalidPairing(format!(
                        "propagator {x:?} -- {y:?} must join a φ to a φ̄"
                    )))
                }
            };
            if phi.0 >= v || bar.0 >= v || phi.1 > 1 || bar.1 > 1 {
                return Err(Error::InvalidPairing(format!("propagator {x:?} -- {y:?} refers to a missing field")));
            }
            let (pw, pb) = (2 * phi.0 + phi.1, 2 * bar.0 + bar.1);
            if prop[pw].is_some() || used_bar[pb] {
                return Err(Error::InvalidPairing(format!("field used twice in {x:?} -- {y:?}")));
            }
            prop[pw] = Some(pb);
            used_bar[pb] = true;
        }
        Ok(Diagram { vertices, prop })
    }

    pub(crate) fn from_raw(vertices: Vec<usize>, prop: Vec<Option<usize>>) -> Self {
        Diagram { vertices, prop }
    }

    pub fn propagators(&self) -> Vec<(Field, Field)> {
        self.prop
            .iter()
            .enumerate()
            .filter_map(|(w, b)| {
                b.map(|b| (Field::Phi { vertex: w / 2, slot: w % 2 }, Field::PhiBar { vertex: b / 2, slot: b % 2 }))
            })
            .collect()
    }

    pub fn internal_lines(&self) -> usize {
        self.prop.iter().filter(|p| p.is_some()).count()
    }

    pub fn external_legs(&self) -> usize {
        2 * (self.prop.len() - self.internal_lines())
    }

    /// Unpaired φ and φ̄ global ids.
    pub fn open_fields(&self) -> (Vec<usize>, Vec<usize>) {
        let phis = (0..self.prop.len()).filter(|&w| self.prop[w].is_none()).collect();
        let mut used = vec![false; self.prop.len()];
        for b in self.prop.iter().flatten() {
            used[*b] = true;
        }
        let bars = (0..self.prop.len()).filter(|&b| !used[b]).collect();
        (phis, bars)
    }

    pub fn is_connected(&self) -> bool {
        let v = self.vertices.len();
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = v;
        for (w, b) in self.prop.iter().enumerate() {
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

    /// Independent loops of the vertex/propagator graph (if connected).
    pub fn loops(&self) -> i64 {
        self.internal_lines() as i64 - self.vertices.len() as i64 + 1
    }

    /// All bubbles side by side as one graph of the model's rank.
    pub fn bubble_graph(&self, model: &ModelSpec) -> ColoredGraph {
        let r = model.rank();
        let n = 2 * self.vertices.len();
        let matchings = (0..r)
            .map(|c| {
                let mut m = vec![0; n];
                for (v, &t) in self.vertices.iter().enumerate() {
                    for s in 0..2 {
                        m[2 * v + s] = 2 * v + model.bubbles[t].graph.matching(c)[s];
                    }
                }
                m
            })
            .collect();
        ColoredGraph::from_matchings(matchings).expect("disjoint union of valid bubbles")
    }

    /// Closed (rank+1)-colored graph with propagators as color 0. Open legs
    /// are joined by `legs`, which sends the i-th open φ to open φ̄ `legs[i]`.
    pub fn closure(&self, model: &ModelSpec, legs: &[usize]) -> Result<ColoredGraph> {
        let (phis, bars) = self.open_fields();
        if legs.len() != phis.len() || !perm::is_permutation(legs) {
            return Err(Error::InvalidPairing("leg pairing must match every open φ to a distinct open φ̄".into()));
        }
        let mut rho: Vec<usize> = self.prop.iter().map(|p| p.unwrap_or(usize::MAX)).collect();
        for (i, &w) in phis.iter().enumerate() {
            rho[w] = bars[legs[i]];
        }
        self.bubble_graph(model).closure(&rho)
    }
}

/// An index line through the diagram in one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub block: usize,
    pub dim: u32,
    pub closed: bool,
    /// Fields visited in order, as (is_phi, global id).
    pub fields: Vec<(bool, usize)>,
    /// Propagators traversed.
    pub propagators: usize,
    /// External legs at both ends of an open strand; the strand carries the
    /// block-`block` momentum component of these legs.
    pub ends: Option<(Field, Field)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandNetwork {
    pub strands: Vec<Strand>,
    pub internal_lines: usize,
    pub rank: usize,
}

impl StrandNetwork {
    pub fn closed(&self) -> impl Iterator<Item = &Strand> {
        self.strands.iter().filter(|s| s.closed)
    }

    pub fn open(&self) -> impl Iterator<Item = &Strand> {
        self.strands.iter().filter(|s| !s.closed)
    }
}

fn field_of(is_phi: bool, id: usize) -> Field {
    if is_phi {
        Field::Phi { vertex: id / 2, slot: id % 2 }
    } else {
        Field::PhiBar { vertex: id / 2, slot: id % 2 }
    }
}

pub fn build_strands(model: &ModelSpec, d: &Diagram) -> StrandNetwork {
    let bubbles = d.bubble_graph(model);
    let n = bubbles.pairs();
    let prop_inv = {
        let mut inv = vec![None; n];
        for (w, b) in d.prop.iter().enumerate() {
            if let Some(b) = b {
                inv[*b] = Some(w);
            }
        }
        inv
    };
    let mut strands = Vec::new();
    for (c, &dim) in model.block_dims.iter().enumerate() {
        let sigma = bubbles.matching(c);
        let mut seen_w = vec![false; n];
        // walk from a φ along its bubble edge, then the propagator at the φ̄, ...
        let walk = |start: usize, seen_w: &mut [bool]| -> (Vec<(bool, usize)>, usize, bool) {
            let mut fields = Vec::new();
            let mut props = 0;
            let mut w = start;
            loop {
                seen_w[w] = true;
                fields.push((true, w));
                let b = sigma[w];
                fields.push((false, b));
                match prop_inv[b] {
                    Some(next) => {
                        props += 1;
                        if next == start {
                            return (fields, props, true);
                        }
                        w = next;
                    }
                    None => return (fields, props, false),
                }
            }
        };
        // open strands start at an open φ
        for w in 0..n {
            if d.prop[w].is_none() {
                let (fields, props, closed) = walk(w, &mut seen_w);
                debug_assert!(!closed);
                let (first, last) = (fields[0], *fields.last().expect("nonempty"));
                strands.push(Strand {
                    block: c,
                    dim,
                    closed: false,
                    fields,
                    propagators: props,
                    ends: Some((field_of(first.0, first.1), field_of(last.0, last.1))),
                });
            }
        }
        for w in 0..n {
            if !seen_w[w] {
                let (fields, props, closed) = walk(w, &mut seen_w);
                debug_assert!(closed);
                strands.push(Strand { block: c, dim, closed: true, fields, propagators: props, ends: None });
            }
        }
    }
    StrandNetwork { strands, internal_lines: d.internal_lines(), rank: model.rank() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivergenceClass {
    Convergent,
    LogDivergent,
    PowerDivergent,
}

impl fmt::Display for DivergenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivergenceClass::Convergent => "convergent",
            DivergenceClass::LogDivergent => "log",
            DivergenceClass::PowerDivergent => "power",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivergenceReport {
    pub degree: i64,
    pub class: DivergenceClass,
}

pub fn divergence_degree(net: &StrandNetwork) -> DivergenceReport {
    let faces: i64 = net.closed().map(|s| s.dim as i64).sum();
    let degree = faces - 2 * net.internal_lines as i64;
    let class = match degree {
        d if d < 0 => DivergenceClass::Convergent,
        0 => DivergenceClass::LogDivergent,
        _ => DivergenceClass::PowerDivergent,
    };
    DivergenceReport { degree, class }
}

/// Named one-loop diagrams used by tests and examples.
pub mod diagrams {
    use super::{Diagram, Field, ModelSpec};

    fn phi(vertex: usize, slot: usize) -> Field {
        Field::Phi { vertex, slot }
    }

    fn bar(vertex: usize, slot: usize) -> Field {
        Field::PhiBar { vertex, slot }
    }

    /// The φ̄ slot of bubble 0 that shares the most colors with φ slot 0.
    fn partner(model: &ModelSpec) -> usize {
        let g = &model.bubbles[0].graph;
        let shared = |b: usize| (0..g.rank()).filter(|&c| g.matching(c)[0] == b).count();
        if shared(0) >= shared(1) {
            0
        } else {
            1
        }
    }

    /// One vertex, its leading self-contraction.
    pub fn tadpole(model: &ModelSpec) -> Diagram {
        Diagram::new(model, vec![0], &[(phi(0, 0), bar(0, partner(model)))]).expect("valid")
    }

    /// One vertex, the other self-contraction.
    pub fn crossed_tadpole(model: &ModelSpec) -> Diagram {
        Diagram::new(model, vec![0], &[(phi(0, 0), bar(0, 1 - partner(model)))]).expect("valid")
    }

    /// Two vertices joined by two lines closing the leading strands.
    pub fn one_loop_four_point(model: &ModelSpec) -> Diagram {
        let p = partner(model);
        Diagram::new(model, vec![0, 0], &[(phi(0, 0), bar(1, p)), (phi(1, 0), bar(0, p))]).expect("valid")
    }

    /// One vertex with both pairs contracted in the leading way.
    pub fn vacuum_one_vertex(model: &ModelSpec) -> Diagram {
        let p = partner(model);
        Diagram::new(model, vec![0], &[(phi(0, 0), bar(0, p)), (phi(0, 1), bar(0, 1 - p))]).expect("valid")
    }
}
