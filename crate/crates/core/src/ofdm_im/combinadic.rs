//! Lexicographic ranking and unranking of k-subsets of `{0, .., n-1}`.
//!
//! Rank 0 is `{0, 1, .., k-1}` and rank `C(n, k) - 1` is `{n-k, .., n-1}`.

/// C(n, k), or `None` on u64 overflow.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

fn binom(n: usize, k: usize) -> u64 {
    binomial(n, k).expect("binomial overflow")
}

/// Returns the `rank`-th k-subset of `{0, .., n-1}` in lexicographic order.
///
/// Panics if `rank >= C(n, k)`.
pub fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    assert!(rank < binom(n, k), "rank {rank} out of range for C({n}, {k})");
    let mut subset = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        // skip every candidate whose block of completions lies before `rank`
        loop {
            let block = binom(n - next - 1, remaining);
            if rank < block {
                break;
            }
            rank -= block;
            next += 1;
        }
        subset.push(next);
        next += 1;
    }
    subset
}

/// Lexicographic rank of a sorted k-subset of `{0, .., n-1}`.
pub fn rank(n: usize, subset: &[usize]) -> u64 {
    let k = subset.len();
    let mut r = 0;
    let mut prev = 0;
    for (slot, &elem) in subset.iter().enumerate() {
        let remaining = k - slot - 1;
        for skipped in prev..elem {
            r += binom(n - skipped - 1, remaining);
        }
        prev = elem + 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        // brute force: enumerate bitmasks, keep weight k, sort lexicographically
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(16, 2), Some(120));
        assert_eq!(binomial(4, 2), Some(6));
        assert_eq!(binomial(16, 14), Some(120));
        assert_eq!(binomial(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn matches_enumeration_order() {
        for (n, k) in [(4, 2), (6, 3), (8, 1), (8, 7), (10, 4)] {
            for (r, subset) in all_subsets(n, k).iter().enumerate() {
                assert_eq!(&unrank(n, k, r as u64), subset);
                assert_eq!(rank(n, subset), r as u64);
            }
        }
    }

    #[test]
    fn rank_zero_is_prefix() {
        assert_eq!(unrank(16, 2, 0), vec![0, 1]);
        assert_eq!(unrank(16, 5, 0), vec![0, 1, 2, 3, 4]);
        assert_eq!(unrank(16, 2, 119), vec![14, 15]);
    }

    #[test]
    fn exhaustive_round_trip_16_2() {
        for r in 0..120 {
            assert_eq!(rank(16, &unrank(16, 2, r)), r);
        }
    }
}
