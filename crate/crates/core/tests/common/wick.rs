//! One-loop coefficients from labeled Wick contractions of the quartic
//! vertices themselves, without intermediate fields.
//!
//! A vertex of type t is the bubble `bubbles[t]` on two whites (φ) and two
//! blacks (φ̄) and comes with weight 1/2; order s carries 1/s!. External φ
//! legs attach to vertex blacks, external φ̄ legs to vertex whites.

use std::collections::BTreeMap;

use num_rational::Ratio;

use super::{perms, Matchings};

pub type W = Ratio<i64>;

#[derive(Clone, Debug)]
pub struct Model {
    pub dims: Vec<u32>,
    pub bubbles: Vec<Matchings>,
}

pub fn vector() -> Model {
    Model { dims: vec![4], bubbles: vec![vec![vec![0, 1]]] }
}

pub fn matrix() -> Model {
    Model { dims: vec![4, 4], bubbles: vec![vec![vec![0, 1], vec![1, 0]]] }
}

pub fn tensor() -> Model {
    let bubbles = (0..5).map(|c| (0..5).map(|i| if i == c { vec![0, 1] } else { vec![1, 0] }).collect()).collect();
    Model { dims: vec![1; 5], bubbles }
}

/// One labeled contraction at order s.
struct Contraction {
    types: Vec<usize>,
    /// a_leg[i]: global black id of the i-th external φ
    a_leg: Vec<usize>,
    /// b_leg[j]: global white id of the j-th external φ̄
    b_leg: Vec<usize>,
    /// line[white] = Some(black) for internal propagators
    line: Vec<Option<usize>>,
}

struct Strands {
    /// pattern[c][i] = j: the color-c strand from external φ i ends at external φ̄ j
    pattern: Vec<Vec<usize>>,
    closed_dim: u32,
    /// the open strand of color c passes through a propagator
    open_uses_line: Vec<bool>,
}

impl Contraction {
    fn rank(&self, m: &Model) -> usize {
        m.dims.len()
    }

    /// White at the same vertex joined to black `y` by color c.
    fn partner(&self, m: &Model, y: usize, c: usize) -> usize {
        let v = y / 2;
        let s = &m.bubbles[self.types[v]][c];
        2 * v + s.iter().position(|&b| b == y % 2).unwrap()
    }

    fn strands(&self, m: &Model) -> Strands {
        let k = self.rank(m);
        let nw = self.line.len();
        let mut pattern = vec![vec![usize::MAX; self.a_leg.len()]; k];
        let mut open_uses_line = vec![false; k];
        let mut closed_dim = 0;
        for c in 0..k {
            let mut seen = vec![false; nw];
            for (i, &start) in self.a_leg.iter().enumerate() {
                let mut y = start;
                loop {
                    let x = self.partner(m, y, c);
                    seen[x] = true;
                    match self.line[x] {
                        Some(next) => {
                            open_uses_line[c] = true;
                            y = next;
                        }
                        None => {
                            pattern[c][i] = self.b_leg.iter().position(|&b| b == x).unwrap();
                            break;
                        }
                    }
                }
            }
            for x0 in 0..nw {
                if seen[x0] {
                    continue;
                }
                closed_dim += m.dims[c];
                let mut x = x0;
                loop {
                    seen[x] = true;
                    x = self.partner(m, self.line[x].unwrap(), c);
                    if x == x0 {
                        break;
                    }
                }
            }
        }
        Strands { pattern, closed_dim, open_uses_line }
    }

    fn lines(&self) -> Vec<(usize, usize)> {
        self.line.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x / 2, y / 2))).collect()
    }

    fn connected_without(&self, skip: Option<usize>) -> bool {
        let s = self.types.len();
        let mut parent: Vec<usize> = (0..s).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (i, (u, v)) in self.lines().into_iter().enumerate() {
            if Some(i) != skip {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let r = find(&mut parent, 0);
        (0..s).all(|v| find(&mut parent, v) == r)
    }

    fn one_pi(&self) -> bool {
        self.connected_without(None) && (0..self.lines().len()).all(|i| self.connected_without(Some(i)))
    }
}

/// Every labeled contraction at order s with e external φ and e external φ̄.
fn contractions(m: &Model, s: usize, e: usize) -> Vec<Contraction> {
    let n = 2 * s;
    let mut out = Vec::new();
    let type_tuples: Vec<Vec<usize>> = (0..m.bubbles.len().pow(s as u32))
        .map(|mut x| {
            (0..s)
                .map(|_| {
                    let t = x % m.bubbles.len();
                    x /= m.bubbles.len();
                    t
                })
                .collect()
        })
        .collect();
    let injections = |n: usize, e: usize| -> Vec<Vec<usize>> {
        perms(n).into_iter().map(|p| p[..e].to_vec()).collect::<std::collections::BTreeSet<_>>().into_iter().collect()
    };
    for types in &type_tuples {
        for a_leg in injections(n, e) {
            for b_leg in injections(n, e) {
                let whites: Vec<usize> = (0..n).filter(|x| !b_leg.contains(x)).collect();
                let blacks: Vec<usize> = (0..n).filter(|y| !a_leg.contains(y)).collect();
                for p in perms(whites.len()) {
                    let mut line = vec![None; n];
                    for (i, &x) in whites.iter().enumerate() {
                        line[x] = Some(blacks[p[i]]);
                    }
                    out.push(Contraction { types: types.clone(), a_leg: a_leg.clone(), b_leg: b_leg.clone(), line });
                }
            }
        }
    }
    out
}

fn order_weight(s: usize) -> W {
    let fact: i64 = (1..=s as i64).product();
    W::new(1, fact * (1i64 << s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Physical {
    /// One-loop 4-point weight relative to the tree, per tree pattern.
    pub a_by_pattern: BTreeMap<Vec<Vec<usize>>, W>,
    /// Leading one-loop 4-point weight outside every tree pattern.
    pub a_outside_trees: W,
    /// p² weight of the 2-point function, per block.
    pub b_by_block: Vec<W>,
}

pub fn physical(m: &Model) -> Physical {
    let mut tree: BTreeMap<Vec<Vec<usize>>, W> = BTreeMap::new();
    for c in contractions(m, 1, 2) {
        *tree.entry(c.strands(m).pattern).or_default() += order_weight(1);
    }
    let mut loop4: BTreeMap<Vec<Vec<usize>>, W> = BTreeMap::new();
    for c in contractions(m, 2, 2) {
        if !c.one_pi() {
            continue;
        }
        let st = c.strands(m);
        if st.closed_dim as i64 - 2 * c.lines().len() as i64 == 0 {
            *loop4.entry(st.pattern).or_default() += order_weight(2);
        }
    }
    let a_outside_trees = loop4.iter().filter(|(p, _)| !tree.contains_key(*p)).map(|(_, w)| *w).sum();
    let a_by_pattern = tree.iter().map(|(p, wt)| (p.clone(), loop4.get(p).copied().unwrap_or_default() / wt)).collect();

    let mut b_by_block = vec![W::default(); m.dims.len()];
    for c in contractions(m, 1, 1) {
        let st = c.strands(m);
        if st.closed_dim as i64 - 2 * c.lines().len() as i64 != 2 {
            continue;
        }
        for (blk, used) in st.open_uses_line.iter().enumerate() {
            if *used {
                b_by_block[blk] += order_weight(1);
            }
        }
    }
    Physical { a_by_pattern, a_outside_trees, b_by_block }
}

/// Number of lightest ways to cut a bubble into two φφ̄ pairs along a set of
/// colors sharing one matching, the rest sharing the other.
pub fn halvings(m: &Model, t: usize) -> usize {
    let b = &m.bubbles[t];
    let k = b.len();
    let mut found: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << k) {
        let inside: Vec<usize> = (0..k).filter(|c| mask >> c & 1 == 1).collect();
        let outside: Vec<usize> = (0..k).filter(|c| mask >> c & 1 == 0).collect();
        let uniform = |cs: &[usize]| cs.windows(2).all(|w| b[w[0]] == b[w[1]]);
        if uniform(&inside) && uniform(&outside) && outside.first().is_none_or(|&o| b[o] != b[inside[0]]) {
            found.push(inside.iter().map(|&c| m.dims[c]).sum());
        }
    }
    let min = *found.iter().min().unwrap();
    found.iter().filter(|&&d| d == min).count()
}

/// (a, b, β₂/(2π²)) in the intermediate-field normalization, which counts
/// each of the κ lightest halvings of a vertex as its own channel.
pub fn triple(m: &Model) -> (i64, i64, i64) {
    let p = physical(m);
    let a_values: Vec<W> = p.a_by_pattern.values().copied().collect();
    assert!(a_values.windows(2).all(|w| w[0] == w[1]), "a depends on the tree pattern: {a_values:?}");
    assert_eq!(p.a_outside_trees, W::default(), "leading one-loop weight outside tree patterns");
    assert!(p.b_by_block.windows(2).all(|w| w[0] == w[1]), "b is not isotropic: {:?}", p.b_by_block);
    let kappa = (0..m.bubbles.len()).map(|t| halvings(m, t)).collect::<Vec<_>>();
    assert!(kappa.windows(2).all(|w| w[0] == w[1]));
    let kappa = kappa[0] as i64;
    let a = a_values[0] * kappa;
    let b = p.b_by_block[0] * kappa;
    assert!(a.is_integer() && b.is_integer(), "non-integer coefficients a={a} b={b}");
    let (a, b) = (a.to_integer(), b.to_integer());
    (a, b, a - 2 * b)
}
