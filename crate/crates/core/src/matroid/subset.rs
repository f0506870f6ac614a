use std::fmt;

/// A subset of a ground set of at most 64 elements, one bit per position.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSubset(pub u64);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    /// All positions `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            GroundSubset(u64::MAX)
        } else {
            GroundSubset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        GroundSubset(1u64 << i)
    }

    pub fn from_positions(positions: impl IntoIterator<Item = usize>) -> Self {
        GroundSubset(positions.into_iter().fold(0u64, |acc, i| acc | (1u64 << i)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        GroundSubset(self.0 | (1u64 << i))
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        GroundSubset(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        GroundSubset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        GroundSubset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        GroundSubset(self.0 & !other.0)
    }

    /// Complement within `0..n`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        GroundSubset::full(n).difference(self)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Positions in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// The largest position, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for GroundSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        GroundSubset::from_positions(iter)
    }
}

/// All `k`-element subsets of `0..n`, in colexicographic order of bit masks
/// (Gosper's hack).
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = GroundSubset> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = if k > n {
        None
    } else {
        Some((1u128 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit && !(k == 0 && cur == 0) {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(GroundSubset(cur as u64))
    })
}

/// All subsets of `set`, including the empty set and `set` itself.
pub fn subsets_of(set: GroundSubset) -> impl Iterator<Item = GroundSubset> {
    let full = set.0;
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == full {
            None
        } else {
            Some((s.wrapping_sub(full)) & full)
        };
        Some(GroundSubset(s))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_basics() {
        let s = GroundSubset::from_positions([0, 3, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(4));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(s.complement(6), GroundSubset::from_positions([1, 2, 4]));
        assert_eq!(s.max(), Some(5));
        assert_eq!(GroundSubset::full(64).len(), 64);
    }

    #[test]
    fn size_k_enumeration_counts() {
        assert_eq!(subsets_of_size(6, 3).count(), 20);
        assert_eq!(subsets_of_size(5, 0).collect::<Vec<_>>(), vec![GroundSubset::EMPTY]);
        assert_eq!(subsets_of_size(4, 4).count(), 1);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert!(subsets_of_size(7, 3).all(|s| s.len() == 3 && s.is_subset_of(GroundSubset::full(7))));
    }

    #[test]
    fn all_subsets_of_a_set() {
        let s = GroundSubset::from_positions([1, 4, 6]);
        let all: Vec<_> = subsets_of(s).collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(subsets_of(GroundSubset::EMPTY).count(), 1);
    }
}
