//! Connected rank-d invariants up to isomorphism.
//!
//! With color 0 gauge-fixed to the identity, a rank-d graph on n pairs is a
//! (d−1)-tuple of permutations, connected iff the tuple acts transitively,
//! and isomorphism is simultaneous conjugation. We keep each tuple that is
//! the minimum of its own conjugation orbit, so no deduplication pass is
//! needed and the output is already in sorted order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::CanonicalForm;
use crate::perm;

/// Default bound on the number of tuples visited, (n!)^(d−1).
pub const DEFAULT_MAX_SPACE: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub rank: usize,
    /// `counts[i]` is Z_d(i + 1).
    pub counts: Vec<u64>,
    pub forms: Option<Vec<Vec<CanonicalForm>>>,
}

pub fn search_space(d: usize, n: usize) -> Option<u128> {
    let f = perm::factorial(n);
    (0..d.saturating_sub(1)).try_fold(1u128, |acc, _| acc.checked_mul(f))
}

fn check_args(d: usize, n: usize, max_space: u128) -> Result<()> {
    if d == 0 || n == 0 {
        return Err(Error::EmptyGraph { rank: d, pairs: n });
    }
    if n > 16 {
        return Err(Error::ResourceLimit { what: "census pairs", requested: n as u128, limit: 16 });
    }
    let space = search_space(d, n).unwrap_or(u128::MAX);
    if space > max_space {
        return Err(Error::ResourceLimit { what: "census search space", requested: space, limit: max_space });
    }
    Ok(())
}

/// Canonical forms of all connected rank-`d` graphs on `n` pairs, sorted.
pub fn enumerate_invariants(d: usize, n: usize, max_space: u128) -> Result<Vec<CanonicalForm>> {
    check_args(d, n, max_space)?;
    let tuples = search(d, n, true).1;
    Ok(tuples
        .into_iter()
        .map(|t| {
            let mut m = Vec::with_capacity(d);
            m.push(perm::identity(n));
            m.extend(t.chunks(n).map(|c| c.iter().map(|&x| x as usize).collect()));
            CanonicalForm::from_canonical_unchecked(m)
        })
        .collect())
}

/// Z_d(n) without materializing the forms.
pub fn count(d: usize, n: usize, max_space: u128) -> Result<u64> {
    check_args(d, n, max_space)?;
    Ok(search(d, n, false).0)
}

pub fn count_invariants(d: usize, n_max: usize, keep_forms: bool, max_space: u128) -> Result<CensusResult> {
    let mut counts = Vec::with_capacity(n_max);
    let mut forms = keep_forms.then(Vec::new);
    for n in 1..=n_max {
        if let Some(all) = forms.as_mut() {
            let f = enumerate_invariants(d, n, max_space)?;
            counts.push(f.len() as u64);
            all.push(f);
        } else {
            counts.push(count(d, n, max_space)?);
        }
    }
    Ok(CensusResult { rank: d, counts, forms })
}

/// Returns the count and, if requested, the flattened canonical tuples.
fn search(d: usize, n: usize, keep: bool) -> (u64, Vec<Vec<u8>>) {
    let m = d - 1;
    if m == 0 {
        // a single color: connected only for one pair
        return if n == 1 { (1, vec![vec![]]) } else { (0, vec![]) };
    }
    let perms: Vec<Vec<u8>> = perm::all_perms(n).into_iter().map(|p| p.into_iter().map(|x| x as u8).collect()).collect();
    let inverses: Vec<Vec<u8>> = perms
        .iter()
        .map(|p| perm::inverse(&p.iter().map(|&x| x as usize).collect::<Vec<_>>()).into_iter().map(|x| x as u8).collect())
        .collect();
    let ctx = Ctx { n, m, perms: &perms, inverses: &inverses };

    // partition on the first permutation; each block is scanned in lex order
    // so concatenating blocks in index order keeps the global order
    let blocks: Vec<(u64, Vec<Vec<u8>>)> = (0..perms.len()).into_par_iter().map(|first| ctx.scan_block(first, keep)).collect();
    let mut total: u64 = 0;
    let mut out = Vec::new();
    for (c, t) in blocks {
        total = total.checked_add(c).expect("census count overflow");
        out.extend(t);
    }
    (total, out)
}

struct Ctx<'a> {
    n: usize,
    m: usize,
    perms: &'a [Vec<u8>],
    inverses: &'a [Vec<u8>],
}

impl Ctx<'_> {
    fn scan_block(&self, first: usize, keep: bool) -> (u64, Vec<Vec<u8>>) {
        let nf = self.perms.len();
        let mut idx = vec![0usize; self.m];
        idx[0] = first;
        let mut tuple = vec![0u8; self.m * self.n];
        let mut count = 0u64;
        let mut out = Vec::new();
        loop {
            for (c, &i) in idx.iter().enumerate() {
                tuple[c * self.n..(c + 1) * self.n].copy_from_slice(&self.perms[i]);
            }
            if self.transitive(&tuple) && self.orbit_minimal(&tuple) {
                count += 1;
                if keep {
                    out.push(tuple.clone());
                }
            }
            // odometer over positions 1..m, last position fastest
            let mut pos = self.m;
            loop {
                if pos == 1 {
                    return (count, out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < nf {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    fn transitive(&self, tuple: &[u8]) -> bool {
        let n = self.n;
        let full: u32 = (1u32 << n) - 1;
        let mut seen: u32 = 1;
        let mut stack = [0u8; 16];
        let mut top = 1;
        while top > 0 {
            top -= 1;
            let x = stack[top] as usize;
            for c in 0..self.m {
                let y = tuple[c * n + x];
                if seen & (1 << y) == 0 {
                    seen |= 1 << y;
                    stack[top] = y;
                    top += 1;
                }
            }
        }
        seen == full
    }

    /// True iff no conjugate ρ·t·ρ⁻¹ is lexicographically smaller than t.
    fn orbit_minimal(&self, tuple: &[u8]) -> bool {
        let n = self.n;
        for (rho, rho_inv) in self.perms.iter().zip(self.inverses).skip(1) {
            'this_rho: for c in 0..self.m {
                let s = &tuple[c * n..(c + 1) * n];
                for i in 0..n {
                    let x = rho[s[rho_inv[i] as usize] as usize];
                    if x < s[i] {
                        return false;
                    }
                    if x > s[i] {
                        break 'this_rho;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(count(3, 2, DEFAULT_MAX_SPACE).unwrap(), 3);
        assert_eq!(count(2, 5, DEFAULT_MAX_SPACE).unwrap(), 1);
        assert_eq!(count(1, 1, DEFAULT_MAX_SPACE).unwrap(), 1);
        assert!(enumerate_invariants(1, 2, DEFAULT_MAX_SPACE).unwrap().is_empty());
    }

    #[test]
    fn forms_are_canonical_and_sorted() {
        let forms = enumerate_invariants(3, 4, DEFAULT_MAX_SPACE).unwrap();
        assert_eq!(forms.len(), 26);
        assert!(forms.windows(2).all(|w| w[0] < w[1]));
        for f in &forms {
            let g = f.to_graph();
            assert!(g.is_connected());
            assert_eq!(&g.canonical_form(), f);
        }
    }

    #[test]
    fn resource_limit() {
        let e = count(4, 6, 1000).unwrap_err();
        assert!(matches!(e, Error::ResourceLimit { requested: 373_248_000, .. }));
    }
}
