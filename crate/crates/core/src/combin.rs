//! Binomial coefficients and the colex rank of small subsets.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Rank of sorted `t`-subsets of `0..v` in colex order:
/// `rank(p_0 < .. < p_{t-1}) = sum C(p_i, i + 1)`.
pub(crate) struct SubsetRanker {
    t: usize,
    v: usize,
    // table[i][p] = C(p, i + 1)
    table: Vec<Vec<u64>>,
}

impl SubsetRanker {
    pub(crate) fn new(v: usize, t: usize) -> SubsetRanker {
        let table = (0..t)
            .map(|i| (0..=v).map(|p| binomial(p as u64, i as u64 + 1)).collect())
            .collect();
        SubsetRanker { t, v, table }
    }

    pub(crate) fn count(&self) -> u64 {
        binomial(self.v as u64, self.t as u64)
    }

    pub(crate) fn rank(&self, sorted: &[u32]) -> usize {
        debug_assert_eq!(sorted.len(), self.t);
        sorted
            .iter()
            .enumerate()
            .map(|(i, &p)| self.table[i][p as usize])
            .sum::<u64>() as usize
    }

    pub(crate) fn unrank(&self, mut rank: u64) -> Vec<u32> {
        let mut out = vec![0u32; self.t];
        for i in (0..self.t).rev() {
            // largest p with C(p, i + 1) <= rank
            let row = &self.table[i];
            let p = row.partition_point(|&c| c <= rank) - 1;
            out[i] = p as u32;
            rank -= row[p];
        }
        out
    }
}

/// Calls `f` on every `t`-subset of `points` (which must be sorted).
pub(crate) fn for_each_subset(points: &[u32], t: usize, f: &mut impl FnMut(&[u32])) {
    let n = points.len();
    if t > n {
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    let mut buf = vec![0u32; t];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = points[i];
        }
        f(&buf);
        // advance lexicographically
        let mut i = t;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - t {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(112, 3), 227_920);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(10, 0), 1);
    }

    #[test]
    fn rank_is_bijective() {
        let r = SubsetRanker::new(9, 3);
        let mut seen = vec![false; r.count() as usize];
        let pts: Vec<u32> = (0..9).collect();
        for_each_subset(&pts, 3, &mut |s| {
            let k = r.rank(s);
            assert!(!seen[k]);
            seen[k] = true;
            assert_eq!(r.unrank(k as u64), s);
        });
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn subsets_of_small_sets() {
        let mut n = 0;
        for_each_subset(&[1, 4, 6, 9], 3, &mut |_| n += 1);
        assert_eq!(n, 4);
        n = 0;
        for_each_subset(&[1, 4], 3, &mut |_| n += 1);
        assert_eq!(n, 0);
        n = 0;
        for_each_subset(&[5], 1, &mut |_| n += 1);
        assert_eq!(n, 1);
    }
}
