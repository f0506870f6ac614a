//! Backtracking isomorphism search on full rank tables.

use super::subset::{subsets_of_size, GroundSubset};

/// Largest ground set accepted by the isomorphism search.
pub const ISO_CAP: usize = 12;

/// Per-element invariant: own rank, then the number of dependent 2-, 3- and
/// 4-subsets through the element.
fn signatures(n: usize, table: &[u8]) -> Vec<[u32; 4]> {
    let mut sig: Vec<[u32; 4]> = (0..n).map(|e| [table[1 << e] as u32, 0, 0, 0]).collect();
    for k in 2..=4.min(n) {
        for s in subsets_of_size(n, k) {
            if (table[s.bits() as usize] as usize) < k {
                for e in s.iter() {
                    sig[e][k - 1] += 1;
                }
            }
        }
    }
    sig
}

/// Finds `map` with `rank_a(S) = rank_b(map(S))` for every `S`, where the
/// tables hold ranks of all `2^n` subsets. `map[i]` is the image of `i`.
pub fn find_isomorphism(n: usize, rank_a: &[u8], rank_b: &[u8]) -> Option<Vec<usize>> {
    assert!(n <= ISO_CAP);
    assert_eq!(rank_a.len(), 1 << n);
    assert_eq!(rank_b.len(), 1 << n);
    if rank_a[(1 << n) - 1] != rank_b[(1 << n) - 1] {
        return None;
    }
    let sig_a = signatures(n, rank_a);
    let sig_b = signatures(n, rank_b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    // elements in many small circuits first; ties by position
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| {
        let s = sig_a[e];
        (std::cmp::Reverse(s[1] + s[2] + s[3]), e)
    });

    let mut search = Search {
        n,
        rank_a,
        rank_b,
        sig_a: &sig_a,
        sig_b: &sig_b,
        order: &order,
        map: vec![usize::MAX; n],
        used: 0,
        masks_a: vec![0; 1 << n],
        masks_b: vec![0; 1 << n],
    };
    if search.extend(0) {
        Some(search.map)
    } else {
        None
    }
}

struct Search<'a> {
    n: usize,
    rank_a: &'a [u8],
    rank_b: &'a [u8],
    sig_a: &'a [[u32; 4]],
    sig_b: &'a [[u32; 4]],
    order: &'a [usize],
    map: Vec<usize>,
    used: u64,
    // masks_x[s] is the union of the first-depth elements selected by the
    // bits of s, on each side
    masks_a: Vec<u64>,
    masks_b: Vec<u64>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.n {
            return true;
        }
        let a = self.order[depth];
        for b in 0..self.n {
            if self.used >> b & 1 == 1 || self.sig_a[a] != self.sig_b[b] {
                continue;
            }
            let consistent = (0..1usize << depth).all(|s| {
                self.rank_a[(self.masks_a[s] | 1 << a) as usize]
                    == self.rank_b[(self.masks_b[s] | 1 << b) as usize]
            });
            if !consistent {
                continue;
            }
            for s in 0..1usize << depth {
                self.masks_a[s | 1 << depth] = self.masks_a[s] | 1 << a;
                self.masks_b[s | 1 << depth] = self.masks_b[s] | 1 << b;
            }
            self.map[a] = b;
            self.used |= 1 << b;
            if self.extend(depth + 1) {
                return true;
            }
            self.used &= !(1 << b);
            self.map[a] = usize::MAX;
        }
        false
    }
}

/// Checks a candidate map against full rank tables.
pub fn is_rank_preserving(n: usize, rank_a: &[u8], rank_b: &[u8], map: &[usize]) -> bool {
    (0..1u64 << n).all(|s| {
        let image: u64 = GroundSubset(s).iter().fold(0, |acc, i| acc | 1 << map[i]);
        rank_a[s as usize] == rank_b[image as usize]
    })
}
