//! Small enumeration helpers shared by the algebra modules.

use num_bigint::BigUint;
use num_traits::One;

/// All compositions of `n` (ordered sequences of positive parts), in
/// lexicographic order. The only composition of 0 is the empty one.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in 1..=rest {
            cur.push(part);
            go(rest - part, cur, out);
            cur.pop();
        }
    }
    go(n, &mut cur, &mut out);
    out
}

/// Compositions of `n` into exactly `k` parts.
pub fn compositions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    compositions(n).into_iter().filter(|c| c.len() == k).collect()
}

/// All permutations of `1..=k` in lexicographic order (one-line notation).
pub fn permutations(k: usize) -> Vec<Vec<u32>> {
    let mut p: Vec<u32> = (1..=k as u32).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}
