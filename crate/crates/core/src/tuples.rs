//! Index-tuple enumeration: strictly increasing combinations, permutation
//! parity, and unshuffles. All indices are 0-based.

/// All strictly increasing `k`-tuples drawn from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still advance
        let Some(pos) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return out;
        };
        current[pos] += 1;
        for j in pos + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Number of `k`-subsets of an `n`-set.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts `indices` ascending and returns the parity of the sorting
/// permutation as `±1`; `None` when an index repeats (the wedge vanishes).
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // insertion sort: each adjacent swap flips the sign
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

pub fn is_strictly_increasing(indices: &[usize]) -> bool {
    indices.windows(2).all(|w| w[0] < w[1])
}

/// Sign of an arbitrary permutation of `0..len`.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    sort_with_sign(perm).map_or(0, |(_, s)| s)
}

/// All `(p, n−p)`-unshuffles of `0..n`: permutations `σ` with
/// `σ(0) < … < σ(p−1)` and `σ(p) < … < σ(n−1)`, listed as `σ(0..n)`.
pub fn unshuffles(n: usize, p: usize) -> Vec<Vec<usize>> {
    combinations(n, p)
        .into_iter()
        .map(|head| {
            let mut sigma = head.clone();
            sigma.extend((0..n).filter(|i| !head.contains(i)));
            sigma
        })
        .collect()
}

/// `tuple` without position `skip`.
pub fn without(tuple: &[usize], skip: usize) -> Vec<usize> {
    tuple
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &x)| x)
        .collect()
}

pub fn one_based(tuple: &[usize]) -> Vec<usize> {
    tuple.iter().map(|&i| i + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn combination_counts() {
        for n in 0..7 {
            for k in 0..=n + 1 {
                let c = combinations(n, k);
                assert_eq!(c.len(), binomial(n, k), "C({n},{k})");
                assert!(c.iter().all(|t| is_strictly_increasing(t) && t.len() == k));
            }
        }
        assert_eq!(combinations(4, 2)[0], vec![0, 1]);
        assert_eq!(combinations(4, 2)[5], vec![2, 3]);
    }

    #[test]
    fn signs() {
        assert_eq!(sort_with_sign(&[2, 1, 3]), Some((vec![1, 2, 3], -1)));
        assert_eq!(sort_with_sign(&[3, 1, 2]), Some((vec![1, 2, 3], 1)));
        assert_eq!(sort_with_sign(&[1, 3, 1]), None);
        assert_eq!(sort_with_sign(&[]), Some((vec![], 1)));
    }

    #[test]
    fn unshuffle_shape() {
        let u = unshuffles(3, 1);
        assert_eq!(u, vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 0, 1]]);
        assert_eq!(unshuffles(4, 0), vec![vec![0, 1, 2, 3]]);
        assert_eq!(unshuffles(4, 2).len(), 6);
    }

    proptest! {
        #[test]
        fn parity_is_multiplicative(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
                                    a in 0usize..5, b in 0usize..5) {
            prop_assume!(a != b);
            let mut swapped = perm.clone();
            swapped.swap(a, b);
            prop_assert_eq!(permutation_sign(&swapped), -permutation_sign(&perm));
        }
    }
}
