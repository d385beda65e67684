//! Colour sets and small combinatorial helpers over them.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported number of colours.
pub const MAX_COLOURS: usize = 64;

/// A set of colours drawn from `0..r`, `r <= 64`, stored as one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColourSet(pub u64);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    /// The full palette `{0, ..., r-1}`.
    pub fn full(r: usize) -> Self {
        debug_assert!(r <= MAX_COLOURS);
        if r == 64 {
            ColourSet(u64::MAX)
        } else {
            ColourSet((1u64 << r) - 1)
        }
    }

    pub fn singleton(c: usize) -> Self {
        ColourSet(1 << c)
    }

    /// `{lo, lo+1, ..., lo+len-1}`.
    pub fn range(lo: usize, len: usize) -> Self {
        ColourSet(Self::full(len).0 << lo)
    }

    pub fn from_colours<I: IntoIterator<Item = usize>>(it: I) -> Self {
        ColourSet(it.into_iter().fold(0u64, |acc, c| acc | (1 << c)))
    }

    #[inline]
    pub fn contains(self, c: usize) -> bool {
        c < 64 && self.0 & (1 << c) != 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, c: usize) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: usize) {
        self.0 &= !(1 << c);
    }

    #[inline]
    pub fn union(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ColourSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest colour index in the set.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// The `n` smallest colours (all of them if `n >= len`).
    pub fn smallest(self, n: usize) -> ColourSet {
        let mut out = 0u64;
        let mut rest = self.0;
        for _ in 0..n {
            if rest == 0 {
                break;
            }
            let low = rest & rest.wrapping_neg();
            out |= low;
            rest &= rest - 1;
        }
        ColourSet(out)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let c = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(c)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares by sorted colour lists, so `{0,3} < {1,2}`.
    pub fn lex_cmp(self, other: ColourSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All `k`-subsets of `palette`, in lexicographic order of their sorted colour lists.
pub fn k_subsets(palette: ColourSet, k: usize) -> Vec<ColourSet> {
    let colours = palette.to_vec();
    let mut out = Vec::new();
    if k > colours.len() {
        return out;
    }
    let n = colours.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(ColourSet::from_colours(idx.iter().map(|&i| colours[i])));
        // advance the rightmost index that can still move
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The `rank`-th `k`-subset of `{0..r-1}` in colex order.
///
/// Colex rank of `{c_1 < ... < c_k}` is `sum C(c_i, i)`.
pub fn unrank_colex(r: usize, k: usize, mut rank: u64) -> ColourSet {
    let mut set = ColourSet::EMPTY;
    let mut top = r;
    for i in (1..=k).rev() {
        // largest c < top with C(c, i) <= rank
        let mut c = top;
        loop {
            c -= 1;
            if binomial(c as u64, i as u64) <= rank {
                break;
            }
        }
        rank -= binomial(c as u64, i as u64);
        set.insert(c);
        top = c;
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn k_subsets_in_lex_order() {
        let subs = k_subsets(ColourSet::full(4), 2);
        let lists: Vec<Vec<usize>> = subs.iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            lists,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(k_subsets(ColourSet::full(3), 0), vec![ColourSet::EMPTY]);
        assert_eq!(k_subsets(ColourSet::full(3), 3), vec![ColourSet::full(3)]);
        assert!(k_subsets(ColourSet::full(2), 3).is_empty());
        let odd = ColourSet::from_colours([1, 4, 6]);
        assert_eq!(k_subsets(odd, 2).len(), 3);
    }

    #[test]
    fn colex_unranking_is_a_bijection() {
        for (r, k) in [(5usize, 2usize), (6, 3), (7, 1), (4, 4)] {
            let total = binomial(r as u64, k as u64);
            let mut seen: Vec<ColourSet> = (0..total).map(|i| unrank_colex(r, k, i)).collect();
            assert!(seen.iter().all(|s| s.len() == k && s.is_subset(ColourSet::full(r))));
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len() as u64, total);
        }
    }

    #[test]
    fn smallest_and_extremes() {
        let s = ColourSet::from_colours([2, 5, 9]);
        assert_eq!(s.smallest(2), ColourSet::from_colours([2, 5]));
        assert_eq!(s.smallest(7), s);
        assert_eq!(s.min(), Some(2));
        assert_eq!(s.max(), Some(9));
        assert_eq!(ColourSet::range(3, 2), ColourSet::from_colours([3, 4]));
        assert_eq!(ColourSet::full(64).len(), 64);
    }
}
