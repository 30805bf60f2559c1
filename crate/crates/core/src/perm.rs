//! Small permutation helpers on `0..n`.

/// Advance `p` to the next permutation in lexicographic order.
/// Returns false (leaving `p` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Cycle lengths of `p`, in order of their smallest element.
pub fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        out.push(len);
    }
    out
}

pub fn count_cycles(p: &[usize]) -> usize {
    cycle_lengths(p).len()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The n-cycle `i -> i+1 mod n`.
pub fn long_cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_and_count() {
        let ps = all_perms(4);
        assert_eq!(ps.len(), 24);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert!(ps.iter().all(|p| is_permutation(p)));
    }

    #[test]
    fn inverse_composes_to_identity() {
        for p in all_perms(5) {
            assert_eq!(compose(&p, &inverse(&p)), identity(5));
        }
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_lengths(&[1, 2, 0, 3]), vec![3, 1]);
        assert_eq!(count_cycles(&long_cycle(6)), 1);
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(8), 40320);
    }
}
