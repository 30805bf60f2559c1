use sha2::{Digest, Sha256};

use super::{ColoredGraph, Edge};
use crate::perm;

/// Lexicographically minimal representative of a graph's isomorphism class.
///
/// Colors are never permuted. Matching 0 is the identity; the remaining
/// matchings are minimal, as one concatenated sequence, over simultaneous
/// conjugation. This is the same as the minimal (color, white)-ordered edge
/// list over independent white and black relabelings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    rank: usize,
    pairs: usize,
    matchings: Vec<Vec<usize>>,
}

impl CanonicalForm {
    pub fn of(g: &ColoredGraph) -> Self {
        let n = g.pairs();
        let inv0 = perm::inverse(g.matching(0));
        let gauged: Vec<Vec<usize>> = g.matchings()[1..].iter().map(|m| perm::compose(&inv0, m)).collect();
        let best = minimize_conjugation(&gauged, n);
        let mut matchings = Vec::with_capacity(g.rank());
        matchings.push(perm::identity(n));
        matchings.extend(best);
        CanonicalForm { rank: g.rank(), pairs: n, matchings }
    }

    /// Wrap matchings already known to be canonical (matching 0 is the
    /// identity and the tuple is conjugation-minimal).
    pub(crate) fn from_canonical_unchecked(matchings: Vec<Vec<usize>>) -> Self {
        CanonicalForm { rank: matchings.len(), pairs: matchings[0].len(), matchings }
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

    pub fn edges(&self) -> Vec<Edge> {
        self.to_graph().edges()
    }

    pub fn to_graph(&self) -> ColoredGraph {
        ColoredGraph::from_matchings(self.matchings.clone()).expect("canonical forms are valid graphs")
    }

    /// First 16 hex digits of the SHA-256 of the GCT serialization.
    pub fn content_hash(&self) -> String {
        let text = super::to_gct(&self.to_graph());
        let digest = Sha256::digest(text.as_bytes());
        hex::encode(&digest[..8])
    }
}

/// Minimal image of `tuple` under `σ ↦ ρ σ ρ⁻¹` applied to every entry.
fn minimize_conjugation(tuple: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut best: Vec<Vec<usize>> = tuple.to_vec();
    let mut rho: Vec<usize> = (0..n).collect();
    let mut rho_inv = vec![0; n];
    let mut cand = vec![vec![0; n]; tuple.len()];
    while perm::next_permutation(&mut rho) {
        for (i, &x) in rho.iter().enumerate() {
            rho_inv[x] = i;
        }
        // compare lazily; bail out as soon as the candidate is larger
        let mut smaller = false;
        'outer: for (c, s) in tuple.iter().enumerate() {
            for i in 0..n {
                let x = rho[s[rho_inv[i]]];
                cand[c][i] = x;
                if !smaller {
                    match x.cmp(&best[c][i]) {
                        std::cmp::Ordering::Less => smaller = true,
                        std::cmp::Ordering::Greater => break 'outer,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
        }
        if smaller {
            for (b, c) in best.iter_mut().zip(&cand) {
                b.copy_from_slice(c);
            }
        }
    }
    best
}
