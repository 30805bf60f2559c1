//! Edge-colored bipartite graphs.
//!
//! A rank-k graph on n pairs has n white and n black vertices and one
//! white→black bijection per color. Internally everything is 0-based; the
//! external labels (GCT files, [`Edge`]) count vertices from 1.

mod canon;
mod dot;
mod faces;
mod gct;

pub use canon::CanonicalForm;
pub use dot::export_dot;
pub use faces::{FaceSet, PairFaces};
pub use gct::{parse_gct, to_gct};

use crate::error::{Error, Result, Side};
use crate::perm;

/// One edge with external (1-based vertex) labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub color: usize,
    pub white: usize,
    pub black: usize,
}

impl Edge {
    pub fn new(color: usize, white: usize, black: usize) -> Self {
        Edge { color, white, black }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    rank: usize,
    pairs: usize,
    matchings: Vec<Vec<usize>>,
}

impl ColoredGraph {
    /// Build from 0-based matchings, one per color.
    pub fn from_matchings(matchings: Vec<Vec<usize>>) -> Result<Self> {
        let rank = matchings.len();
        let pairs = matchings.first().map_or(0, |m| m.len());
        if rank == 0 || pairs == 0 {
            return Err(Error::EmptyGraph { rank, pairs });
        }
        for (c, m) in matchings.iter().enumerate() {
            if m.len() != pairs {
                return Err(Error::InvalidArgument(format!(
                    "matching {c} has {} entries, expected {pairs}",
                    m.len()
                )));
            }
            let mut hit = vec![false; pairs];
            for (w, &b) in m.iter().enumerate() {
                if b >= pairs {
                    return Err(Error::LabelOutOfRange {
                        color: c,
                        white: w + 1,
                        black: b + 1,
                        rank,
                        pairs,
                    });
                }
                if hit[b] {
                    return Err(Error::DuplicateSlot { color: c, side: Side::Black, vertex: b + 1 });
                }
                hit[b] = true;
            }
        }
        Ok(ColoredGraph { rank, pairs, matchings })
    }

    /// Check a raw edge list (1-based vertex labels) and build the graph.
    pub fn validate(rank: usize, pairs: usize, edges: &[Edge]) -> Result<Self> {
        if rank == 0 || pairs == 0 {
            return Err(Error::EmptyGraph { rank, pairs });
        }
        let mut fwd = vec![vec![usize::MAX; pairs]; rank];
        let mut back = vec![vec![false; pairs]; rank];
        for e in edges {
            if e.color >= rank || e.white == 0 || e.white > pairs || e.black == 0 || e.black > pairs {
                return Err(Error::LabelOutOfRange {
                    color: e.color,
                    white: e.white,
                    black: e.black,
                    rank,
                    pairs,
                });
            }
            let (w, b) = (e.white - 1, e.black - 1);
            if fwd[e.color][w] != usize::MAX {
                return Err(Error::DuplicateSlot { color: e.color, side: Side::White, vertex: e.white });
            }
            if back[e.color][b] {
                return Err(Error::DuplicateSlot { color: e.color, side: Side::Black, vertex: e.black });
            }
            fwd[e.color][w] = b;
            back[e.color][b] = true;
        }
        for (c, m) in fwd.iter().enumerate() {
            if let Some(w) = m.iter().position(|&b| b == usize::MAX) {
                return Err(Error::Incomplete { color: c, side: Side::White, vertex: w + 1 });
            }
        }
        Ok(ColoredGraph { rank, pairs, matchings: fwd })
    }

    /// The k-colored dipole: one white and one black vertex joined by k edges.
    pub fn dipole(rank: usize) -> Self {
        ColoredGraph { rank, pairs: 1, matchings: vec![vec![0]; rank] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn matchings(&self) -> &[Vec<usize>] {
        &self.matchings
    }

    /// 0-based matching of one color.
    pub fn matching(&self, color: usize) -> &[usize] {
        &self.matchings[color]
    }

    pub fn edge_count(&self) -> usize {
        self.rank * self.pairs
    }

    /// Edges in canonical serialization order, sorted by (color, white).
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (c, m) in self.matchings.iter().enumerate() {
            for (w, &b) in m.iter().enumerate() {
                out.push(Edge::new(c, w + 1, b + 1));
            }
        }
        out
    }

    /// Apply a white relabeling `tau` and a black relabeling `pi` (0-based).
    pub fn relabel(&self, tau: &[usize], pi: &[usize]) -> Result<Self> {
        if tau.len() != self.pairs || pi.len() != self.pairs || !perm::is_permutation(tau) || !perm::is_permutation(pi) {
            return Err(Error::InvalidArgument("relabeling must be a pair of permutations of the vertex set".into()));
        }
        let matchings = self
            .matchings
            .iter()
            .map(|m| {
                let mut out = vec![0; self.pairs];
                for (w, &b) in m.iter().enumerate() {
                    out[tau[w]] = pi[b];
                }
                out
            })
            .collect();
        Ok(ColoredGraph { rank: self.rank, pairs: self.pairs, matchings })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.pairs;
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = 2 * n;
        for m in &self.matchings {
            for (w, &b) in m.iter().enumerate() {
                let (x, y) = (find(&mut parent, w), find(&mut parent, n + b));
                if x != y {
                    parent[x] = y;
                    components -= 1;
                }
            }
        }
        components == 1
    }

    pub fn faces(&self) -> FaceSet {
        FaceSet::of(self)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm::of(self)
    }

    /// Add the pairing `rho` (white→black, 0-based) as a new color 0,
    /// shifting the existing colors up by one.
    pub fn closure(&self, rho: &[usize]) -> Result<Self> {
        if rho.len() != self.pairs || !perm::is_permutation(rho) {
            return Err(Error::InvalidPairing("closure pairing must be a permutation of the vertex set".into()));
        }
        let mut matchings = Vec::with_capacity(self.rank + 1);
        matchings.push(rho.to_vec());
        matchings.extend(self.matchings.iter().cloned());
        Ok(ColoredGraph { rank: self.rank + 1, pairs: self.pairs, matchings })
    }
}

/// Named small graphs used across the crate and its examples.
pub mod builtin {
    use super::ColoredGraph;
    use crate::perm;

    /// Rank-k quartic melonic bubble of color `c`: colors other than `c`
    /// connect the two pairs crosswise.
    pub fn quartic_melonic(rank: usize, c: usize) -> ColoredGraph {
        let m = (0..rank).map(|i| if i == c { vec![0, 1] } else { vec![1, 0] }).collect();
        ColoredGraph::from_matchings(m).expect("valid by construction")
    }

    /// Rank-2 graph whose single bicolored cycle visits all 2n vertices.
    pub fn cycle(n: usize) -> ColoredGraph {
        ColoredGraph::from_matchings(vec![perm::identity(n), perm::long_cycle(n)]).expect("valid by construction")
    }

    /// Rank-3 graph with matchings (id, c, c²) for the 3-cycle c; genus 1.
    pub fn torus() -> ColoredGraph {
        let c = perm::long_cycle(3);
        let c2 = perm::compose(&c, &c);
        ColoredGraph::from_matchings(vec![perm::identity(3), c, c2]).expect("valid by construction")
    }

    /// Rank-3 graph on 4 pairs whose 8 vertices form a cube; planar but not melonic.
    pub fn cube() -> ColoredGraph {
        ColoredGraph::from_matchings(vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![3, 2, 1, 0]])
            .expect("valid by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_dipole() {
        let g = ColoredGraph::validate(3, 1, &[Edge::new(0, 1, 1), Edge::new(1, 1, 1), Edge::new(2, 1, 1)]).unwrap();
        assert_eq!(g, ColoredGraph::dipole(3));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn validate_missing_color() {
        let e = ColoredGraph::validate(3, 1, &[Edge::new(0, 1, 1), Edge::new(1, 1, 1)]).unwrap_err();
        assert!(matches!(e, Error::Incomplete { color: 2, .. }));
    }

    #[test]
    fn validate_cycle() {
        let edges = [Edge::new(0, 1, 1), Edge::new(0, 2, 2), Edge::new(1, 1, 2), Edge::new(1, 2, 1)];
        let g = ColoredGraph::validate(2, 2, &edges).unwrap();
        assert_eq!(g.edges(), edges.to_vec());
        assert!(g.is_connected());
    }

    #[test]
    fn validate_duplicates_name_the_slot() {
        let e = ColoredGraph::validate(1, 2, &[Edge::new(0, 1, 1), Edge::new(0, 1, 2)]).unwrap_err();
        assert!(matches!(e, Error::DuplicateSlot { color: 0, side: Side::White, vertex: 1 }));
        let e = ColoredGraph::validate(1, 2, &[Edge::new(0, 1, 1), Edge::new(0, 2, 1)]).unwrap_err();
        assert!(matches!(e, Error::DuplicateSlot { color: 0, side: Side::Black, vertex: 1 }));
        assert!(e.to_string().contains("black 1"));
    }

    #[test]
    fn validate_rejects_out_of_range_and_empty() {
        assert!(matches!(
            ColoredGraph::validate(1, 1, &[Edge::new(0, 2, 1)]),
            Err(Error::LabelOutOfRange { .. })
        ));
        assert!(matches!(ColoredGraph::validate(1, 1, &[Edge::new(0, 0, 1)]), Err(Error::LabelOutOfRange { .. })));
        assert!(matches!(ColoredGraph::validate(3, 0, &[]), Err(Error::EmptyGraph { .. })));
    }

    #[test]
    fn connectivity() {
        assert!(ColoredGraph::dipole(3).is_connected());
        let two = ColoredGraph::from_matchings(vec![vec![0, 1]; 3]).unwrap();
        assert!(!two.is_connected());
        assert!(builtin::quartic_melonic(3, 0).is_connected());
    }

    #[test]
    fn closure_prepends_color_zero() {
        let g = builtin::quartic_melonic(3, 1);
        let cl = g.closure(&[1, 0]).unwrap();
        assert_eq!(cl.rank(), 4);
        assert_eq!(cl.matching(0), &[1, 0]);
        assert_eq!(cl.matching(2), g.matching(1));
    }
}
