//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the library's algorithms; graphs are handled as
//! raw matchings `m[c][w] = b` with 0-based labels.
#![allow(dead_code)]

pub mod wick;

use std::collections::{BTreeSet, VecDeque};

pub type Matchings = Vec<Vec<usize>>;

pub fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// Face lengths (in edges) for colors a < b, found by walking the graph.
pub fn walk_faces(m: &Matchings, a: usize, b: usize) -> Vec<usize> {
    let n = m[0].len();
    let inv_b = inverse(&m[b]);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let (mut w, mut len) = (start, 0);
        loop {
            seen[w] = true;
            // white --a--> black --b--> white
            w = inv_b[m[a][w]];
            len += 2;
            if w == start {
                break;
            }
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

pub fn face_count(m: &Matchings) -> usize {
    let k = m.len();
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).map(|(a, b)| walk_faces(m, a, b).len()).sum()
}

pub fn bfs_connected(m: &Matchings) -> bool {
    let n = m[0].len();
    // vertices: whites 0..n, blacks n..2n
    let mut seen = vec![false; 2 * n];
    let mut q = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = q.pop_front() {
        let next: Vec<usize> = if v < n {
            m.iter().map(|s| n + s[v]).collect()
        } else {
            m.iter().map(|s| s.iter().position(|&b| b == v - n).unwrap()).collect()
        };
        for u in next {
            if !seen[u] {
                seen[u] = true;
                q.push_back(u);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Relabel whites by `tau` and blacks by `pi`.
pub fn relabel(m: &Matchings, tau: &[usize], pi: &[usize]) -> Matchings {
    m.iter()
        .map(|s| {
            let mut t = vec![0; s.len()];
            for w in 0..s.len() {
                t[tau[w]] = pi[s[w]];
            }
            t
        })
        .collect()
}

/// Lexicographically least relabeling, by brute force over S_n × S_n.
pub fn brute_canonical(m: &Matchings) -> Matchings {
    let n = m[0].len();
    let ps = perms(n);
    let mut best: Option<Matchings> = None;
    for tau in &ps {
        for pi in &ps {
            let r = relabel(m, tau, pi);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap()
}

/// Σ of jacket genera, jackets being cyclic color orders up to reversal.
pub fn brute_degree(m: &Matchings) -> u64 {
    let k = m.len();
    let n = m[0].len();
    let mut total = 0;
    for rest in perms(k - 1) {
        if k > 2 && rest[0] > rest[k - 2] {
            continue;
        }
        let order: Vec<usize> = std::iter::once(0).chain(rest.iter().map(|x| x + 1)).collect();
        let faces: usize = (0..k)
            .map(|i| {
                let (a, b) = (order[i], order[(i + 1) % k]);
                walk_faces(m, a.min(b), a.max(b)).len()
            })
            .sum();
        // 2 − 2g = V − E + F
        let g2 = 2 + k * n - 2 * n - faces;
        assert!(g2.is_multiple_of(2));
        total += (g2 / 2) as u64;
        if k == 3 {
            break;
        }
    }
    total
}

/// Remove the (k−1)-dipole on white w and black b, open color `c`.
fn contract(m: &Matchings, w: usize, b: usize, c: usize) -> Matchings {
    let n = m[0].len();
    let w2 = inverse(&m[c])[b];
    let b2 = m[c][w];
    let keep_w: Vec<usize> = (0..n).filter(|&x| x != w).collect();
    let keep_b: Vec<usize> = (0..n).filter(|&x| x != b).collect();
    m.iter()
        .enumerate()
        .map(|(col, s)| {
            keep_w
                .iter()
                .map(|&x| {
                    let target = if col == c && x == w2 { b2 } else { s[x] };
                    keep_b.iter().position(|&y| y == target).unwrap()
                })
                .collect()
        })
        .collect()
}

/// Melonic by exhaustive search over every removal order. Returns
/// (some order reaches the dipole, every order does).
pub fn melonic_all_orders(m: &Matchings) -> (bool, bool) {
    let n = m[0].len();
    let k = m.len();
    if n == 1 {
        return (true, true);
    }
    let mut any = false;
    let mut all = true;
    let mut found = false;
    for w in 0..n {
        for b in 0..n {
            let shared: Vec<usize> = (0..k).filter(|&c| m[c][w] == b).collect();
            if shared.len() != k - 1 {
                continue;
            }
            let c = (0..k).find(|c| !shared.contains(c)).unwrap();
            found = true;
            let (a, l) = melonic_all_orders(&contract(m, w, b, c));
            any |= a;
            all &= l;
        }
    }
    if !found {
        return (false, false);
    }
    (any, all)
}

/// Melons on p pairs, grown by every sequence of melon insertions from
/// the dipole, deduplicated by `brute_canonical`.
pub fn insertion_tree_melons(k: usize, p: usize) -> BTreeSet<Matchings> {
    let mut level: BTreeSet<Matchings> = BTreeSet::from([vec![vec![0]; k]]);
    for _ in 1..p {
        let mut next = BTreeSet::new();
        for g in &level {
            let n = g[0].len();
            for c in 0..k {
                for w in 0..n {
                    // the color-c edge (w, b) becomes (w, b') and (w', b), with w', b' joined by all other colors
                    let mut h: Matchings = g.iter().map(|s| {
                        let mut s = s.clone();
                        s.push(n);
                        s
                    }).collect();
                    h[c][n] = g[c][w];
                    h[c][w] = n;
                    next.insert(brute_canonical(&h));
                }
            }
        }
        level = next;
    }
    level
}

/// Connected rank-d graph counts up to isomorphism for n = 1..=n_max, from
/// Burnside's lemma on (d−1)-tuples under simultaneous conjugation followed
/// by the inverse Euler transform. Requires d ≥ 2.
pub fn burnside_connected(d: u32, n_max: usize) -> Vec<u128> {
    assert!(d >= 2);
    let mut total = vec![1u128];
    for n in 1..=n_max {
        total.push(partitions(n).iter().map(|lambda| centralizer(lambda).pow(d - 2)).sum());
    }
    let mut c = vec![0i128; n_max + 1];
    let mut a = vec![0i128; n_max + 1];
    for n in 1..=n_max {
        let mut cn = n as i128 * total[n] as i128;
        for k in 1..n {
            cn -= c[k] * total[n - k] as i128;
        }
        c[n] = cn;
        let s = cn - (1..n).filter(|dd| n % dd == 0).map(|dd| dd as i128 * a[dd]).sum::<i128>();
        assert_eq!(s % n as i128, 0);
        a[n] = s / n as i128;
    }
    a[1..].iter().map(|&x| x as u128).collect()
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Order of the centralizer of a permutation of cycle type λ.
fn centralizer(lambda: &[usize]) -> u128 {
    let mut z = 1u128;
    for k in 1..=lambda.iter().copied().max().unwrap_or(0) {
        let m = lambda.iter().filter(|&&x| x == k).count() as u128;
        z *= (k as u128).pow(m as u32) * (1..=m).product::<u128>();
    }
    z
}

/// E[invariant] under unit complex Gaussian covariance, summing Wick
/// pairings over every explicit assignment of indices to edges.
pub fn index_level_moment(m: &Matchings, n_dim: usize) -> u64 {
    let k = m.len();
    let n = m[0].len();
    let edges = k * n;
    let rhos = perms(n);
    let mut idx = vec![0usize; edges];
    let mut total = 0u64;
    loop {
        // white w carries idx[c*n + w] in slot c; black m[c][w] carries the same
        for rho in &rhos {
            let ok = (0..n).all(|w| {
                (0..k).all(|c| {
                    let wb = m[c].iter().position(|&b| b == rho[w]).unwrap();
                    idx[c * n + w] == idx[c * n + wb]
                })
            });
            total += ok as u64;
        }
        let mut pos = 0;
        loop {
            if pos == edges {
                return total;
            }
            idx[pos] += 1;
            if idx[pos] < n_dim {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
