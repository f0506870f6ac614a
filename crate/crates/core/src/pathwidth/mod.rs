//! Widths of element orderings, exact pathwidth by subset dynamic
//! programming, a greedy upper bound, and caterpillar branch-decompositions.

mod branch;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matroid::{GroundSubset, VectorMatroid};

pub use branch::{branch_width_of_tree, caterpillar, CubicTree};

/// Default ground-set limit for [`pathwidth_exact`].
pub const EXACT_CAP: usize = 24;

/// Largest cap accepted by [`pathwidth_exact_with_cap`].
pub const EXACT_HARD_LIMIT: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathwidthError {
    #[error("not a permutation of the ground set: {0}")]
    NotAPermutation(String),
    #[error("{size} elements exceeds the exact limit of {cap}")]
    GroundSetTooLargeForExact { size: usize, cap: usize },
    #[error("a caterpillar needs at least 2 leaves, got {0}")]
    TooFewElements(usize),
    #[error("tree leaves do not match the ground set: {0}")]
    LeafLabelMismatch(String),
    #[error("not a cubic tree: {0}")]
    NotCubic(String),
    #[error("bad certificate document: {0}")]
    BadDocument(String),
}

/// An ordering of the ground set with its prefix connectivities; `width` is
/// their maximum (0 for the empty ordering).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthCertificate {
    pub width: usize,
    /// Ground positions in order.
    pub ordering: Vec<usize>,
    pub labels: Vec<String>,
    pub prefix_lambdas: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    width: usize,
    ordering: Vec<String>,
    prefix_lambdas: Vec<usize>,
}

impl WidthCertificate {
    /// `{"width":..,"ordering":[labels],"prefix_lambdas":[..]}` on one line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.doc()).expect("plain data")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.doc()).expect("plain data")
    }

    fn doc(&self) -> CertificateDoc {
        CertificateDoc {
            width: self.width,
            ordering: self.labels.clone(),
            prefix_lambdas: self.prefix_lambdas.clone(),
        }
    }

    /// Reads a document and re-derives it against `m`; the stored width and
    /// prefix values must match the recomputed ones.
    pub fn from_json(text: &str, m: &VectorMatroid) -> Result<WidthCertificate, PathwidthError> {
        let doc: CertificateDoc =
            serde_json::from_str(text).map_err(|e| PathwidthError::BadDocument(e.to_string()))?;
        let cert = width_of_labels(m, &doc.ordering)?;
        if cert.width != doc.width || cert.prefix_lambdas != doc.prefix_lambdas {
            return Err(PathwidthError::BadDocument(
                "stored widths disagree with the matroid".into(),
            ));
        }
        Ok(cert)
    }

    /// Whether the certificate is a correct account of `m`.
    pub fn verify(&self, m: &VectorMatroid) -> bool {
        width_of_ordering(m, &self.ordering).is_ok_and(|c| c == *self)
    }
}

fn check_permutation(n: usize, order: &[usize]) -> Result<(), PathwidthError> {
    if order.len() != n {
        return Err(PathwidthError::NotAPermutation(format!(
            "{} entries for {n} elements",
            order.len()
        )));
    }
    let mut seen = GroundSubset::EMPTY;
    for &e in order {
        if e >= n || seen.contains(e) {
            return Err(PathwidthError::NotAPermutation(format!(
                "position {e} repeated or out of range"
            )));
        }
        seen = seen.with(e);
    }
    Ok(())
}

/// `λ` of each prefix of an ordering of ground positions.
pub fn prefix_lambdas(m: &VectorMatroid, order: &[usize]) -> Result<Vec<usize>, PathwidthError> {
    check_permutation(m.size(), order)?;
    let mut prefix = GroundSubset::EMPTY;
    Ok(order
        .iter()
        .map(|&e| {
            prefix = prefix.with(e);
            m.connectivity(prefix)
        })
        .collect())
}

/// `w_M(e_1, ..., e_n) = max_i λ(e_1, ..., e_i)` with all prefix values.
pub fn width_of_ordering(m: &VectorMatroid, order: &[usize]) -> Result<WidthCertificate, PathwidthError> {
    let lambdas = prefix_lambdas(m, order)?;
    Ok(WidthCertificate {
        width: lambdas.iter().copied().max().unwrap_or(0),
        ordering: order.to_vec(),
        labels: order.iter().map(|&e| m.label(e).to_string()).collect(),
        prefix_lambdas: lambdas,
    })
}

/// [`width_of_ordering`] for an ordering given by labels.
pub fn width_of_labels<S: AsRef<str>>(m: &VectorMatroid, labels: &[S]) -> Result<WidthCertificate, PathwidthError> {
    let order = labels
        .iter()
        .map(|l| {
            m.position(l.as_ref())
                .ok_or_else(|| PathwidthError::NotAPermutation(format!("unknown label `{}`", l.as_ref())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    width_of_ordering(m, &order)
}

/// Exact pathwidth with an optimal ordering, for at most [`EXACT_CAP`]
/// elements.
pub fn pathwidth_exact(m: &VectorMatroid) -> Result<WidthCertificate, PathwidthError> {
    pathwidth_exact_with_cap(m, EXACT_CAP)
}

/// Subset DP: `B(∅) = 0`, `B(S) = max(λ(S), min_{e ∈ S} B(S - e))`. The
/// returned ordering is the lexicographically least optimal one.
pub fn pathwidth_exact_with_cap(m: &VectorMatroid, cap: usize) -> Result<WidthCertificate, PathwidthError> {
    let n = m.size();
    let cap = cap.min(EXACT_HARD_LIMIT);
    if n > cap {
        return Err(PathwidthError::GroundSetTooLargeForExact { size: n, cap });
    }
    let best = subset_table(m);
    let full = GroundSubset::full(n);
    let width = best[full.bits() as usize];
    // by symmetry of λ, B(E - S) is the best width of any completion of the
    // prefix S, so the smallest feasible next element can be taken greedily
    let mut order = Vec::with_capacity(n);
    let mut s = GroundSubset::EMPTY;
    while s != full {
        let e = s
            .complement(n)
            .iter()
            .find(|&e| best[full.difference(s.with(e)).bits() as usize] <= width)
            .expect("an optimal completion exists");
        order.push(e);
        s = s.with(e);
    }
    let cert = width_of_ordering(m, &order)?;
    debug_assert_eq!(cert.width, width as usize);
    Ok(cert)
}

/// `B(S)` for every subset, layer by layer in size; each layer is filled in
/// parallel from the previous one.
fn subset_table(m: &VectorMatroid) -> Vec<u8> {
    let n = m.size();
    let rank = m.rank_table();
    let full = (1usize << n) - 1;
    let rank_full = rank[full];
    let mut layers: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for s in 0..=full as u32 {
        layers[s.count_ones() as usize].push(s);
    }
    let mut best = vec![0u8; 1 << n];
    for layer in layers.iter().skip(1) {
        let values: Vec<u8> = layer
            .par_iter()
            .map(|&s| {
                let lambda = rank[s as usize] + rank[full & !(s as usize)] - rank_full;
                let mut low = u8::MAX;
                let mut bits = s;
                while bits != 0 {
                    let e = bits.trailing_zeros();
                    bits &= bits - 1;
                    low = low.min(best[(s & !(1 << e)) as usize]);
                }
                lambda.max(low)
            })
            .collect();
        for (&s, v) in layer.iter().zip(values) {
            best[s as usize] = v;
        }
    }
    best
}

/// Whether `pw(M) <= w`.
pub fn decide_pathwidth(m: &VectorMatroid, w: usize, cap: usize) -> Result<bool, PathwidthError> {
    Ok(pathwidth_exact_with_cap(m, cap)?.width <= w)
}

/// Repeatedly appends the element that makes the next prefix connectivity
/// smallest, ties to the smaller position.
pub fn pathwidth_upper_greedy(m: &VectorMatroid) -> WidthCertificate {
    let n = m.size();
    let mut order = Vec::with_capacity(n);
    let mut prefix = GroundSubset::EMPTY;
    for _ in 0..n {
        let e = prefix
            .complement(n)
            .iter()
            .min_by_key(|&e| (m.connectivity(prefix.with(e)), e))
            .expect("elements remain");
        order.push(e);
        prefix = prefix.with(e);
    }
    width_of_ordering(m, &order).expect("greedy order is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, GfMatrix};
    use crate::catalog::{named_matroid, uniform};
    use crate::graph::{complete_graph, cycle_matroid};
    use crate::matroid::MinorSpec;
    use crate::testutil::{arb_matroid, random_matroid, rng};
    use itertools::Itertools;
    use proptest::prelude::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn brute_force(m: &VectorMatroid) -> usize {
        let n = m.size();
        if n == 0 {
            return 0;
        }
        (0..n)
            .permutations(n)
            .map(|p| width_of_ordering(m, &p).unwrap().width)
            .min()
            .unwrap()
    }

    #[test]
    fn free_matroid_has_width_zero_for_every_order() {
        let m = VectorMatroid::new(GfMatrix::identity(&gf(2), 5)).unwrap();
        for p in (0..5).permutations(5).take(50) {
            assert_eq!(width_of_ordering(&m, &p).unwrap().width, 0);
        }
    }

    #[test]
    fn u24_every_order_has_width_two() {
        let m = uniform(2, 4, &gf(3)).unwrap();
        for p in (0..4).permutations(4) {
            let c = width_of_ordering(&m, &p).unwrap();
            assert_eq!(c.width, 2);
            assert_eq!(c.prefix_lambdas, vec![1, 2, 1, 0]);
        }
    }

    #[test]
    fn k4_triangle_first() {
        // positions of edges 01, 02, 12 form a triangle
        let m = cycle_matroid(&complete_graph(4), &gf(2)).unwrap();
        let c = width_of_ordering(&m, &[0, 1, 3, 2, 4, 5]).unwrap();
        assert_eq!(c.prefix_lambdas, vec![1, 2, 2, 2, 1, 0]);
        assert_eq!(c.width, 2);
    }

    #[test]
    fn permutation_errors() {
        let m = uniform(2, 4, &gf(3)).unwrap();
        assert!(matches!(width_of_ordering(&m, &[0, 1, 2]), Err(PathwidthError::NotAPermutation(_))));
        assert!(width_of_ordering(&m, &[0, 1, 2, 2]).is_err());
        assert!(width_of_ordering(&m, &[0, 1, 2, 9]).is_err());
        assert!(width_of_labels(&m, &["1", "2", "3", "x"]).is_err());
    }

    #[test]
    fn exact_small_values() {
        assert_eq!(pathwidth_exact(&uniform(2, 4, &gf(3)).unwrap()).unwrap().width, 2);
        assert_eq!(pathwidth_exact(&uniform(1, 4, &gf(2)).unwrap()).unwrap().width, 1);
        for name in ["K23", "K23*", "K4"] {
            let m = named_matroid(name, &gf(2)).unwrap();
            assert_eq!(pathwidth_exact(&m).unwrap().width, 2, "{name}");
        }
    }

    #[test]
    fn degenerate_ground_sets() {
        let f = gf(5);
        let empty = pathwidth_exact(&VectorMatroid::empty(&f)).unwrap();
        assert_eq!((empty.width, empty.ordering.len()), (0, 0));
        let lp = VectorMatroid::new(GfMatrix::zeros(&f, 1, 1)).unwrap();
        assert_eq!(pathwidth_exact(&lp).unwrap().prefix_lambdas, vec![0]);
        let coloop = VectorMatroid::new(GfMatrix::identity(&f, 1)).unwrap();
        assert_eq!(pathwidth_exact(&coloop).unwrap().width, 0);
    }

    #[test]
    fn cap_is_enforced() {
        let m = VectorMatroid::new(GfMatrix::identity(&gf(2), 25)).unwrap();
        assert!(matches!(
            pathwidth_exact(&m),
            Err(PathwidthError::GroundSetTooLargeForExact { size: 25, cap: 24 })
        ));
        assert!(pathwidth_exact_with_cap(&uniform(2, 4, &gf(3)).unwrap(), 3).is_err());
    }

    #[test]
    fn dp_matches_permutation_search() {
        let mut rng = rng(4);
        for _ in 0..60 {
            let m = random_matroid(&mut rng, 7);
            let c = pathwidth_exact(&m).unwrap();
            assert!(c.verify(&m));
            assert_eq!(c.width, brute_force(&m));
        }
    }

    #[test]
    fn greedy_bounds_exact_from_above() {
        let mut rng = rng(8);
        let f = gf(2);
        for _ in 0..20 {
            let m = crate::random::random_vector_matroid(&mut rng, &f, 6, 12);
            let g = pathwidth_upper_greedy(&m);
            assert!(g.verify(&m));
            assert!(g.width >= pathwidth_exact(&m).unwrap().width);
        }
        assert_eq!(pathwidth_upper_greedy(&uniform(2, 4, &gf(3)).unwrap()).width, 2);
        let free = VectorMatroid::new(GfMatrix::identity(&f, 6)).unwrap();
        assert_eq!(pathwidth_upper_greedy(&free).width, 0);
    }

    #[test]
    fn certificate_json_is_stable() {
        let m = uniform(2, 4, &gf(3)).unwrap();
        let c = pathwidth_exact(&m).unwrap();
        let json = c.to_json();
        assert_eq!(
            json,
            r#"{"width":2,"ordering":["1","2","3","4"],"prefix_lambdas":[1,2,1,0]}"#
        );
        assert_eq!(WidthCertificate::from_json(&json, &m).unwrap(), c);
        let forged = r#"{"width":1,"ordering":["1","2","3","4"],"prefix_lambdas":[1,1,1,0]}"#;
        assert!(WidthCertificate::from_json(forged, &m).is_err());
        assert!(WidthCertificate::from_json("{", &m).is_err());
    }

    #[test]
    fn k4_certificate_json() {
        let m = cycle_matroid(&complete_graph(4), &gf(2)).unwrap();
        assert_eq!(
            pathwidth_exact(&m).unwrap().to_json(),
            r#"{"width":2,"ordering":["1","2","3","4","5","6"],"prefix_lambdas":[1,2,2,2,1,0]}"#
        );
    }

    #[test]
    fn direct_sum_takes_the_larger_width() {
        let a = uniform(2, 4, &gf(3)).unwrap();
        let b = uniform(1, 3, &gf(3)).unwrap();
        assert_eq!(pathwidth_exact(&a.direct_sum(&b).unwrap()).unwrap().width, 2);
    }

    #[test]
    fn decide_agrees_with_exact() {
        let m = uniform(2, 4, &gf(3)).unwrap();
        assert!(!decide_pathwidth(&m, 1, EXACT_CAP).unwrap());
        assert!(decide_pathwidth(&m, 2, EXACT_CAP).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pathwidth_is_self_dual(m in arb_matroid(10)) {
            prop_assert_eq!(pathwidth_exact(&m).unwrap().width, pathwidth_exact(&m.dual()).unwrap().width);
        }

        #[test]
        fn direct_sum_rule(a in arb_matroid(5), b in arb_matroid(5)) {
            prop_assume!(a.field() == b.field());
            let s = a.direct_sum(&b).unwrap();
            let expected = pathwidth_exact(&a).unwrap().width.max(pathwidth_exact(&b).unwrap().width);
            prop_assert_eq!(pathwidth_exact(&s).unwrap().width, expected);
        }

        #[test]
        fn single_element_minors_do_not_increase_width(m in arb_matroid(9)) {
            let w = pathwidth_exact(&m).unwrap().width;
            for e in 0..m.size() {
                let one = GroundSubset::singleton(e);
                let del = m.apply_minor(MinorSpec { contract: GroundSubset::EMPTY, delete: one }).unwrap();
                let con = m.apply_minor(MinorSpec { contract: one, delete: GroundSubset::EMPTY }).unwrap();
                prop_assert!(pathwidth_exact(&del).unwrap().width <= w);
                prop_assert!(pathwidth_exact(&con).unwrap().width <= w);
            }
        }

        #[test]
        fn greedy_is_an_upper_bound(m in arb_matroid(10)) {
            prop_assert!(pathwidth_upper_greedy(&m).width >= pathwidth_exact(&m).unwrap().width);
        }
    }
}
