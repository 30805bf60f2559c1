use super::ColoredGraph;
use crate::perm;

/// Bicolored cycles of one color pair. Lengths count edges, so they are even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFaces {
    pub colors: (usize, usize),
    pub lengths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub rank: usize,
    /// One entry per color pair `a < b`, in lexicographic order.
    pub pairs: Vec<PairFaces>,
}

impl FaceSet {
    pub fn of(g: &ColoredGraph) -> Self {
        let k = g.rank();
        let mut pairs = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for a in 0..k {
            for b in a + 1..k {
                // walk a then b⁻¹: whites on one cycle share a face
                let step = perm::compose(&perm::inverse(g.matching(b)), g.matching(a));
                let lengths = perm::cycle_lengths(&step).into_iter().map(|l| 2 * l).collect();
                pairs.push(PairFaces { colors: (a, b), lengths });
            }
        }
        FaceSet { rank: k, pairs }
    }

    pub fn total(&self) -> usize {
        self.pairs.iter().map(|p| p.lengths.len()).sum()
    }

    /// Number of faces with colors {a, b}.
    pub fn count(&self, a: usize, b: usize) -> usize {
        let key = if a < b { (a, b) } else { (b, a) };
        self.pairs.iter().find(|p| p.colors == key).map_or(0, |p| p.lengths.len())
    }

    /// Faces that use color `c`.
    pub fn count_with(&self, c: usize) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.colors.0 == c || p.colors.1 == c)
            .map(|p| p.lengths.len())
            .sum()
    }

    /// Sum of all face lengths; equals k·n·(k−1) since each edge lies on k−1 faces.
    pub fn total_length(&self) -> usize {
        self.pairs.iter().flat_map(|p| p.lengths.iter()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builtin;

    #[test]
    fn dipole_faces() {
        let f = ColoredGraph::dipole(3).faces();
        assert_eq!(f.total(), 3);
        assert!(f.pairs.iter().all(|p| p.lengths == vec![2]));
        assert_eq!(ColoredGraph::dipole(4).faces().total(), 6);
    }

    #[test]
    fn cycle_has_one_long_face() {
        for n in 1..7 {
            let f = builtin::cycle(n).faces();
            assert_eq!(f.pairs[0].lengths, vec![2 * n]);
        }
    }

    #[test]
    fn every_edge_on_k_minus_one_faces() {
        let g = builtin::cube();
        assert_eq!(g.faces().total_length(), 3 * 4 * 2);
    }
}
