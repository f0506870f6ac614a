//! Minor containment with replayable certificates, and the excluded-minor
//! catalogs for pathwidth at most one and two.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Field;
use crate::catalog::{is_fano, is_uniform, named_matroid};
use crate::graph::{complete_bipartite, complete_graph, MultiGraph};
use crate::matroid::{find_isomorphism, GroundSubset, MatroidError, MinorSpec, VectorMatroid};
use crate::pathwidth::{pathwidth_exact, PathwidthError};

/// Largest host accepted by [`minor_contains`].
pub const MINOR_HOST_CAP: usize = 12;

/// Largest matroid accepted by [`pw_le_1_by_minors`].
pub const PW1_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("host has {size} elements, exhaustive search handles at most {cap}")]
    HostTooLarge { size: usize, cap: usize },
    #[error("matroid has {size} elements, limit is {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
    #[error("no excluded-minor catalog for width {0}")]
    UnsupportedWidth(usize),
    #[error("minor test says {by_minors} but the exact pathwidth is {width}")]
    CharacterizationMismatch { by_minors: bool, width: usize },
    #[error(transparent)]
    Pathwidth(#[from] PathwidthError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// `host / contract \ delete`, relabelled by `bijection`, equals the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorCertificate {
    pub contract: Vec<String>,
    pub delete: Vec<String>,
    /// `(pattern label, host label)` pairs.
    pub bijection: Vec<(String, String)>,
}

impl MinorCertificate {
    /// Replays the certificate through matrix-level deletion and contraction
    /// and compares ranks on every subset of the pattern.
    pub fn verify(&self, host: &VectorMatroid, pattern: &VectorMatroid) -> bool {
        let (Ok(x), Ok(y)) = (host.subset_from_labels(&self.contract), host.subset_from_labels(&self.delete)) else {
            return false;
        };
        if x.len() != self.contract.len() || y.len() != self.delete.len() {
            return false;
        }
        let Ok(minor) = host.apply_minor(MinorSpec { contract: x, delete: y }) else {
            return false;
        };
        if minor.size() != pattern.size() || self.bijection.len() != pattern.size() {
            return false;
        }
        let mut image = vec![usize::MAX; pattern.size()];
        for (p, h) in &self.bijection {
            match (pattern.position(p), minor.position(h)) {
                (Some(i), Some(j)) if image[i] == usize::MAX => image[i] = j,
                _ => return false,
            }
        }
        if image.iter().sorted().dedup().count() != pattern.size() {
            return false;
        }
        (0..1u64 << pattern.size()).all(|s| {
            let mapped = GroundSubset::from_positions(GroundSubset(s).iter().map(|i| image[i]));
            pattern.rank_uncached(GroundSubset(s)) == minor.rank_uncached(mapped)
        })
    }
}

/// Finds `X`, `Y` with `host / X \ Y` isomorphic to `pattern`.
///
/// `X` runs over independent sets of size `r(host) - r(pattern)` and `Y` over
/// sets of the remaining size, both in lexicographic order of positions; the
/// first success is returned.
pub fn minor_contains(host: &VectorMatroid, pattern: &VectorMatroid) -> Result<Option<MinorCertificate>, MinorError> {
    let n = host.size();
    if n > MINOR_HOST_CAP {
        return Err(MinorError::HostTooLarge {
            size: n,
            cap: MINOR_HOST_CAP,
        });
    }
    let np = pattern.size();
    if np > n || pattern.rank() > host.rank() {
        return Ok(None);
    }
    let k = host.rank() - pattern.rank();
    if np + k > n {
        return Ok(None);
    }
    let d = n - np - k;
    let table = host.rank_table();
    let pattern_table = pattern.rank_table();
    let full = GroundSubset::full(n);
    let contract_sets: Vec<GroundSubset> = (0..n)
        .combinations(k)
        .map(GroundSubset::from_positions)
        .filter(|x| table[x.bits() as usize] as usize == k)
        .collect();
    let found = contract_sets.par_iter().find_map_first(|&x| {
        let rest: Vec<usize> = full.difference(x).iter().collect();
        rest.iter().copied().combinations(d).find_map(|ys| {
            let y = GroundSubset::from_positions(ys);
            if table[full.difference(y).bits() as usize] as usize != host.rank() {
                return None;
            }
            let kept: Vec<usize> = full.difference(x).difference(y).iter().collect();
            let minor_table: Vec<u8> = (0..1u64 << np)
                .map(|s| {
                    let img = GroundSubset::from_positions(GroundSubset(s).iter().map(|i| kept[i]));
                    table[img.union(x).bits() as usize] - k as u8
                })
                .collect();
            find_isomorphism(np, &pattern_table, &minor_table).map(|map| (x, y, kept, map))
        })
    });
    Ok(found.map(|(x, y, kept, map)| MinorCertificate {
        contract: host.labels_of(x),
        delete: host.labels_of(y),
        bijection: (0..np)
            .map(|i| (pattern.label(i).to_string(), host.label(kept[map[i]]).to_string()))
            .collect(),
    }))
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub matroid: VectorMatroid,
    pub expected_rank: usize,
}

impl CatalogEntry {
    /// Checks the entry against an oracle for what it should be: every
    /// `k`-subset independent for uniform matroids, seven 3-point lines for
    /// the Fano plane, and `|V| - components` on every edge subset for
    /// graphic ones (applied to the dual for starred names).
    pub fn defining_property_holds(&self) -> bool {
        let m = &self.matroid;
        if m.rank() != self.expected_rank {
            return false;
        }
        let (base, primal) = match self.name.strip_suffix('*') {
            Some(b) => (b, m.dual()),
            None => (self.name.as_str(), m.clone()),
        };
        match base {
            "U24" => is_uniform(&primal, 2) && primal.size() == 4,
            "U36" => is_uniform(&primal, 3) && primal.size() == 6,
            "F7" => is_fano(&primal),
            "K4" => graphic_ranks_match(&primal, &complete_graph(4)),
            "K5" => graphic_ranks_match(&primal, &complete_graph(5)),
            "K23" => graphic_ranks_match(&primal, &complete_bipartite(2, 3)),
            "K33" => graphic_ranks_match(&primal, &complete_bipartite(3, 3)),
            _ => false,
        }
    }
}

/// `r(S) = |V| - c(V, S)` for every edge subset `S`, with edge `i` of the
/// graph as element `i`.
fn graphic_ranks_match(m: &VectorMatroid, g: &MultiGraph) -> bool {
    let n = g.edge_count();
    if m.size() != n {
        return false;
    }
    let table = m.rank_table();
    (0..1u64 << n).all(|s| {
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        fn find(parent: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while parent[r] != r {
                r = parent[r];
            }
            parent[v] = r;
            r
        }
        let mut merged = 0;
        for i in GroundSubset(s).iter() {
            let e = g.edge(i);
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                merged += 1;
            }
        }
        table[s as usize] as usize == merged
    })
}

/// The excluded minors for pathwidth at most `w` that are representable over
/// `field`: complete for `w = 1`, the known partial list for `w = 2`.
pub fn excluded_minor_catalog(w: usize, field: &Field) -> Result<Vec<CatalogEntry>, MinorError> {
    let names: &[&str] = match w {
        1 => &["U24", "K4", "K23", "K23*"],
        2 => &["F7", "F7*", "K5", "K5*", "K33", "K33*", "U36"],
        _ => return Err(MinorError::UnsupportedWidth(w)),
    };
    Ok(names
        .iter()
        .filter_map(|&name| {
            let matroid = named_matroid(name, field).ok()?;
            Some(CatalogEntry {
                name: name.to_string(),
                expected_rank: matroid.rank(),
                matroid,
            })
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct MinorWitness {
    pub catalog: String,
    pub certificate: MinorCertificate,
}

/// Whether `m` has pathwidth at most one, decided by searching for the
/// excluded minors; the answer is checked against the exact pathwidth.
pub fn pw_le_1_by_minors(m: &VectorMatroid) -> Result<(bool, Option<MinorWitness>), MinorError> {
    if m.size() > PW1_CAP {
        return Err(MinorError::GroundSetTooLarge {
            size: m.size(),
            cap: PW1_CAP,
        });
    }
    let mut witness = None;
    for entry in excluded_minor_catalog(1, m.field())? {
        if let Some(certificate) = minor_contains(m, &entry.matroid)? {
            witness = Some(MinorWitness {
                catalog: entry.name,
                certificate,
            });
            break;
        }
    }
    let by_minors = witness.is_none();
    let width = pathwidth_exact(m)?.width;
    if by_minors != (width <= 1) {
        return Err(MinorError::CharacterizationMismatch { by_minors, width });
    }
    Ok((by_minors, witness))
}

#[derive(Debug, Clone, Serialize)]
pub struct ExcludedMinorReport {
    pub width_bound: usize,
    pub pathwidth: usize,
    pub checked_minors: usize,
    pub violations: Vec<String>,
}

impl ExcludedMinorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `pw(M) > w` while `pw(M \ e) <= w` and `pw(M / e) <= w` for
/// every element `e`.
pub fn verify_excluded_minor(m: &VectorMatroid, w: usize) -> Result<ExcludedMinorReport, MinorError> {
    let pathwidth = pathwidth_exact(m)?.width;
    let mut violations = Vec::new();
    if pathwidth <= w {
        violations.push(format!("pathwidth is {pathwidth}, not above {w}"));
    }
    let mut checked_minors = 0;
    for e in 0..m.size() {
        let single = GroundSubset::singleton(e);
        for (op, minor) in [("deleting", m.delete(single)), ("contracting", m.contract(single))] {
            let pw = pathwidth_exact(&minor)?.width;
            checked_minors += 1;
            if pw > w {
                violations.push(format!("{op} {} leaves pathwidth {pw}", m.label(e)));
            }
        }
    }
    Ok(ExcludedMinorReport {
        width_bound: w,
        pathwidth,
        checked_minors,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GfMatrix;
    use crate::catalog::uniform;
    use crate::graph::{cycle_matroid, make_umbrella};
    use crate::random::random_mixed_matroid;
    use crate::testutil::rng;
    use rand::Rng;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn pattern_inside_itself() {
        let m = named_matroid("K4", &gf(3)).unwrap();
        let cert = minor_contains(&m, &m).unwrap().unwrap();
        assert!(cert.contract.is_empty() && cert.delete.is_empty());
        assert!(cert.bijection.iter().all(|(p, h)| p == h));
        assert!(cert.verify(&m, &m));
    }

    #[test]
    fn u24_inside_u36() {
        let f = gf(4);
        let host = uniform(3, 6, &f).unwrap();
        let cert = minor_contains(&host, &uniform(2, 4, &f).unwrap()).unwrap().unwrap();
        assert_eq!((cert.contract.len(), cert.delete.len()), (1, 1));
        assert_eq!(cert.contract, vec!["1"]);
        assert_eq!(cert.delete, vec!["2"]);
        assert!(cert.verify(&host, &uniform(2, 4, &f).unwrap()));
    }

    #[test]
    fn k4_inside_fano_and_its_dual() {
        let f = gf(2);
        let k4 = named_matroid("K4", &f).unwrap();
        for name in ["F7", "F7*"] {
            let host = named_matroid(name, &f).unwrap();
            let cert = minor_contains(&host, &k4).unwrap().expect(name);
            assert!(cert.verify(&host, &k4));
        }
    }

    #[test]
    fn absent_minors() {
        let f = gf(3);
        let free = VectorMatroid::new(GfMatrix::identity(&f, 5)).unwrap();
        assert_eq!(minor_contains(&free, &uniform(2, 4, &f).unwrap()).unwrap(), None);
        let k4 = named_matroid("K4", &gf(5)).unwrap();
        assert_eq!(minor_contains(&uniform(2, 5, &gf(5)).unwrap(), &k4).unwrap(), None);
        let big = VectorMatroid::new(GfMatrix::identity(&f, 13)).unwrap();
        assert!(matches!(minor_contains(&big, &k4), Err(MinorError::HostTooLarge { .. })));
    }

    #[test]
    fn tampered_certificates_fail() {
        let f = gf(4);
        let host = uniform(3, 6, &f).unwrap();
        let pattern = uniform(2, 4, &f).unwrap();
        let cert = minor_contains(&host, &pattern).unwrap().unwrap();
        let mut bad = cert.clone();
        bad.delete.clear();
        assert!(!bad.verify(&host, &pattern));
        let mut bad = cert.clone();
        bad.bijection[0].1 = bad.bijection[1].1.clone();
        assert!(!bad.verify(&host, &pattern));
        let k4 = named_matroid("K4", &gf(2)).unwrap();
        let mut bad = minor_contains(&k4, &k4).unwrap().unwrap();
        // edges 01 and 23 are disjoint, so swapping only them is no automorphism
        bad.bijection[0].1 = "6".into();
        bad.bijection[5].1 = "1".into();
        assert!(!bad.verify(&k4, &k4));
    }

    #[test]
    fn catalogs_by_field() {
        let names = |w, q| -> Vec<String> {
            excluded_minor_catalog(w, &gf(q)).unwrap().into_iter().map(|e| e.name).collect()
        };
        assert_eq!(names(1, 2), ["K4", "K23", "K23*"]);
        assert_eq!(names(1, 3), ["U24", "K4", "K23", "K23*"]);
        assert_eq!(names(2, 2), ["F7", "F7*", "K5", "K5*", "K33", "K33*"]);
        assert_eq!(names(2, 3), ["K5", "K5*", "K33", "K33*"]);
        assert_eq!(names(2, 4), ["F7", "F7*", "K5", "K5*", "K33", "K33*", "U36"]);
        assert!(matches!(excluded_minor_catalog(3, &gf(2)), Err(MinorError::UnsupportedWidth(3))));
    }

    #[test]
    fn no_binary_matrix_represents_u24() {
        let f = gf(2);
        for bits in 0u32..256 {
            let data: Vec<u8> = (0..8).map(|i| (bits >> i & 1) as u8).collect();
            let a = GfMatrix::new(&f, 2, 4, data).unwrap();
            let all_pairs = (0..4).combinations(2).all(|c| a.select_columns(&c).rank() == 2);
            assert!(!all_pairs);
        }
    }

    #[test]
    fn catalog_entries_have_their_defining_properties() {
        for q in [2, 3, 4, 5] {
            for w in [1, 2] {
                for entry in excluded_minor_catalog(w, &gf(q)).unwrap() {
                    assert!(entry.defining_property_holds(), "{} over GF({q})", entry.name);
                }
            }
        }
        let mut wrong = excluded_minor_catalog(1, &gf(3)).unwrap().remove(1);
        wrong.name = "K23".into();
        assert!(!wrong.defining_property_holds());
    }

    #[test]
    fn width_one_catalog_is_closed_under_duality() {
        for q in [2, 3, 5] {
            let catalog = excluded_minor_catalog(1, &gf(q)).unwrap();
            for entry in &catalog {
                let dual = entry.matroid.dual();
                let hits = catalog
                    .iter()
                    .filter(|other| other.matroid.is_isomorphic(&dual).unwrap().is_some())
                    .count();
                assert_eq!(hits, 1, "{}", entry.name);
            }
        }
    }

    #[test]
    fn umbrellas_are_in_the_class() {
        for counts in [vec![0, 0], vec![1, 2, 0], vec![2, 0, 1, 1]] {
            let m = cycle_matroid(&make_umbrella(&counts).unwrap(), &gf(3)).unwrap();
            assert!(pw_le_1_by_minors(&m).unwrap().0);
        }
    }

    #[test]
    fn u24_and_k23_sum_are_outside() {
        let f = gf(3);
        let u = uniform(2, 4, &f).unwrap();
        let (ok, w) = pw_le_1_by_minors(&u).unwrap();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(w.catalog, "U24");
        assert!(w.certificate.contract.is_empty() && w.certificate.delete.is_empty());
        let k23 = named_matroid("K23", &f).unwrap();
        let sum = k23.direct_sum(&uniform(1, 2, &f).unwrap()).unwrap();
        let (ok, w) = pw_le_1_by_minors(&sum).unwrap();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(w.catalog, "K23");
        assert!(w.certificate.verify(&sum, &k23));
        assert_eq!(pathwidth_exact(&sum).unwrap().width, 2);
    }

    #[test]
    fn excluded_minor_reports() {
        let r = verify_excluded_minor(&uniform(2, 4, &gf(3)).unwrap(), 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked_minors, 8);
        let r = verify_excluded_minor(&named_matroid("F7", &gf(2)).unwrap(), 2).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        let f = gf(3);
        let with_coloop = uniform(2, 4, &f).unwrap().direct_sum(&uniform(1, 1, &f).unwrap()).unwrap();
        let r = verify_excluded_minor(&with_coloop, 1).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.contains("deleting")));
    }

    #[test]
    fn width_one_test_matches_exact_width_on_random_matroids() {
        let mut r = rng(41);
        for _ in 0..120 {
            let f = gf([2, 3][r.gen_range(0..2)]);
            let n = r.gen_range(0..=8);
            let m = random_mixed_matroid(&mut r, &f, n);
            let (ok, witness) = pw_le_1_by_minors(&m).unwrap();
            if let Some(w) = witness {
                let pattern = named_matroid(&w.catalog, &f).unwrap();
                assert!(w.certificate.verify(&m, &pattern));
            }
            assert_eq!(ok, pathwidth_exact(&m).unwrap().width <= 1);
        }
    }
}
