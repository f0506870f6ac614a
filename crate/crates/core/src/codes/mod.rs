//! Linear codes as labelled generator matrices: duals, puncturing and
//! shortening, equivalence, trellis-width and the small catalog codes.

mod equivalence;

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Field, GfMatrix};
use crate::catalog::{g23_dual_matrix, g23_matrix, g4_matrix, is_uniform, mds_matrix, CatalogError};
use crate::matroid::{default_labels, parse_labelled_matrix, MatroidError, VectorMatroid};
use crate::minors::{pw_le_1_by_minors, MinorError, MinorWitness};
use crate::pathwidth::{pathwidth_exact, prefix_lambdas, PathwidthError, WidthCertificate};
use crate::text::ParseError;

pub use equivalence::{are_equivalent, weight_distribution, Equivalence, EQUIVALENCE_CAP};

/// Longest code accepted by [`tw_le_1_check`].
pub const TW1_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("{labels} labels for length {length}")]
    LabelCountMismatch { labels: usize, length: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("code length {length} exceeds the limit {cap}")]
    LengthTooLarge { length: usize, cap: usize },
    #[error("code length {length} exceeds the exact-search cap {cap}")]
    LengthTooLargeForExact { length: usize, cap: usize },
    #[error("not a permutation of the coordinates: {0}")]
    NotAPermutation(String),
    #[error("codes are over different fields")]
    FieldMismatch,
    #[error("minor search says {by_minors} but the trellis-width is {width}")]
    CharacterizationMismatch { by_minors: bool, width: usize },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Pathwidth(PathwidthError),
    #[error(transparent)]
    Minor(MinorError),
}

impl From<PathwidthError> for CodeError {
    fn from(e: PathwidthError) -> Self {
        match e {
            PathwidthError::GroundSetTooLargeForExact { size, cap } => {
                CodeError::LengthTooLargeForExact { length: size, cap }
            }
            PathwidthError::NotAPermutation(s) => CodeError::NotAPermutation(s),
            other => CodeError::Pathwidth(other),
        }
    }
}

impl From<MinorError> for CodeError {
    fn from(e: MinorError) -> Self {
        match e {
            MinorError::CharacterizationMismatch { by_minors, width } => {
                CodeError::CharacterizationMismatch { by_minors, width }
            }
            MinorError::Pathwidth(p) => p.into(),
            other => CodeError::Minor(other),
        }
    }
}

/// A linear code given by a generator matrix, whose rows may be dependent,
/// and a label for each coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: GfMatrix,
    labels: Vec<String>,
}

impl LinearCode {
    /// Coordinates labelled `1..n`.
    pub fn new(generator: GfMatrix) -> Self {
        let labels = default_labels(generator.cols());
        LinearCode { generator, labels }
    }

    pub fn with_labels(generator: GfMatrix, labels: Vec<String>) -> Result<Self, CodeError> {
        if labels.len() != generator.cols() {
            return Err(CodeError::LabelCountMismatch {
                labels: labels.len(),
                length: generator.cols(),
            });
        }
        let mut seen = HashSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(CodeError::DuplicateLabel(l.clone()));
        }
        Ok(LinearCode { generator, labels })
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn generator(&self) -> &GfMatrix {
        &self.generator
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rank()
    }

    /// Same length, labels and row space.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.labels == other.labels && self.generator.same_row_space(&other.generator)
    }

    fn positions_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<HashSet<usize>, CodeError> {
        labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                self.labels
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| CodeError::UnknownLabel(l.to_string()))
            })
            .collect()
    }

    /// Matrix text plus a `labels` line when the labels are not `1..n`.
    pub fn to_text(&self) -> String {
        let mut s = self.generator.to_text();
        if self.labels != default_labels(self.length()) {
            s.push_str("labels ");
            s.push_str(&self.labels.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<LinearCode, ParseError> {
        let (generator, labels) = parse_labelled_matrix(text)?;
        LinearCode::with_labels(generator, labels).map_err(|e| ParseError::new(1, e.to_string()))
    }
}

/// The vector matroid of the generator's columns, labelled like the code.
pub fn code_matroid(c: &LinearCode) -> Result<VectorMatroid, CodeError> {
    Ok(VectorMatroid::with_labels(c.generator.clone(), c.labels.clone())?)
}

/// The orthogonal complement, with the same labels.
pub fn dual_code(c: &LinearCode) -> LinearCode {
    LinearCode {
        generator: c.generator.orthogonal_complement(),
        labels: c.labels.clone(),
    }
}

/// Drops the coordinates labelled by `j`.
pub fn puncture<S: AsRef<str>>(c: &LinearCode, j: &[S]) -> Result<LinearCode, CodeError> {
    let gone = c.positions_of(j)?;
    let keep: Vec<usize> = (0..c.length()).filter(|i| !gone.contains(i)).collect();
    Ok(LinearCode {
        generator: c.generator.select_columns(&keep),
        labels: keep.iter().map(|&i| c.labels[i].clone()).collect(),
    })
}

/// Keeps the codewords vanishing on `j`, then drops those coordinates.
pub fn shorten<S: AsRef<str>>(c: &LinearCode, j: &[S]) -> Result<LinearCode, CodeError> {
    Ok(dual_code(&puncture(&dual_code(c), j)?))
}

/// `tw(C) = pw(M(C))`, with an optimal coordinate ordering.
pub fn trellis_width(c: &LinearCode) -> Result<WidthCertificate, CodeError> {
    Ok(pathwidth_exact(&code_matroid(c)?)?)
}

/// `λ` of each prefix of the coordinate order given by labels.
pub fn state_profile<S: AsRef<str>>(c: &LinearCode, order: &[S]) -> Result<Vec<usize>, CodeError> {
    let m = code_matroid(c)?;
    let mut positions = Vec::with_capacity(order.len());
    for l in order {
        let l = l.as_ref();
        positions.push(m.position(l).ok_or_else(|| CodeError::NotAPermutation(format!("unknown label `{l}`")))?);
    }
    Ok(prefix_lambdas(&m, &positions)?)
}

/// Names accepted by [`catalog_code`], besides `MDS(n,k)`.
pub const CODE_NAMES: &[&str] = &["C_K4", "C_K23", "C_K23_dual"];

/// A named code: `C_K4`, `C_K23`, `C_K23_dual`, or `MDS(n,k)`.
pub fn catalog_code(name: &str, field: &Field) -> Result<LinearCode, CodeError> {
    let generator = match name {
        "C_K4" => g4_matrix(field),
        "C_K23" => g23_matrix(field),
        "C_K23_dual" => g23_dual_matrix(field),
        _ => {
            let (n, k) = parse_mds_name(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
            mds_matrix(k, n, field)?
        }
    };
    Ok(LinearCode::new(generator))
}

fn parse_mds_name(name: &str) -> Option<(usize, usize)> {
    let inner = name.strip_prefix("MDS(")?.strip_suffix(')')?;
    let (n, k) = inner.split_once(',')?;
    let (n, k) = (n.trim().parse().ok()?, k.trim().parse().ok()?);
    (k <= n).then_some((n, k))
}

/// The code under each power of the Frobenius automorphism, distinct row
/// spaces only. For prime fields this is just the code.
pub fn frobenius_variants(c: &LinearCode) -> Vec<LinearCode> {
    let f = c.field().clone();
    let mut out: Vec<LinearCode> = Vec::new();
    for power in 0..f.degree() {
        let v = LinearCode {
            generator: c.generator.map_entries(|x| f.frobenius(x, power)),
            labels: c.labels.clone(),
        };
        if !out.iter().any(|o| o.same_code(&v)) {
            out.push(v);
        }
    }
    out
}

/// Code-side name of a matroid in the width-one catalog.
fn code_name_for(matroid_name: &str) -> &'static str {
    match matroid_name {
        "U24" => "MDS(4,2)",
        "K4" => "C_K4",
        "K23" => "C_K23",
        "K23*" => "C_K23_dual",
        _ => unreachable!("width-one catalog names only"),
    }
}

/// A minor `C / X \ Y` of a code: shortened at `X`, punctured at `Y`.
#[derive(Debug, Clone, Serialize)]
pub struct CodeMinorWitness {
    pub catalog: String,
    pub shorten: Vec<String>,
    pub puncture: Vec<String>,
    /// `(catalog coordinate, code coordinate)` pairs.
    pub bijection: Vec<(String, String)>,
}

impl CodeMinorWitness {
    fn from_matroid(w: MinorWitness) -> Self {
        CodeMinorWitness {
            catalog: code_name_for(&w.catalog).to_string(),
            shorten: w.certificate.contract,
            puncture: w.certificate.delete,
            bijection: w.certificate.bijection,
        }
    }

    /// The minor itself.
    pub fn minor_of(&self, c: &LinearCode) -> Result<LinearCode, CodeError> {
        puncture(&shorten(c, &self.shorten)?, &self.puncture)
    }

    /// Whether the minor is equivalent, as a code, to the catalog code or one
    /// of its Frobenius images. For `MDS(4,2)` any `[4,2]` MDS code counts.
    pub fn is_code_equivalent(&self, c: &LinearCode) -> Result<bool, CodeError> {
        let minor = self.minor_of(c)?;
        if self.catalog == "MDS(4,2)" {
            return Ok(minor.length() == 4 && is_uniform(&code_matroid(&minor)?, 2));
        }
        let target = catalog_code(&self.catalog, c.field())?;
        for v in frobenius_variants(&target) {
            if are_equivalent(&v, &minor)?.is_some() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Tw1Verdict {
    pub at_most_one: bool,
    pub witness: Option<CodeMinorWitness>,
}

/// Whether `tw(C) <= 1`, by searching for a minor matching one of the four
/// width-one excluded codes; the answer is checked against the exact
/// trellis-width.
pub fn tw_le_1_check(c: &LinearCode) -> Result<Tw1Verdict, CodeError> {
    if c.length() > TW1_CAP {
        return Err(CodeError::LengthTooLarge {
            length: c.length(),
            cap: TW1_CAP,
        });
    }
    let (at_most_one, witness) = pw_le_1_by_minors(&code_matroid(c)?)?;
    Ok(Tw1Verdict {
        at_most_one,
        witness: witness.map(CodeMinorWitness::from_matroid),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named_matroid;
    use crate::random::random_sparse_matrix;
    use crate::testutil::rng;
    use proptest::prelude::*;
    use rand::Rng;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn repetition(n: usize, f: &Field) -> LinearCode {
        LinearCode::new(GfMatrix::new(f, 1, n, vec![1; n]).unwrap())
    }

    fn arb_code(max_n: usize) -> impl Strategy<Value = LinearCode> {
        (any::<u64>(), 0..=max_n).prop_map(|(seed, n)| {
            let mut r = rng(seed);
            let f = gf([2, 3, 4][r.gen_range(0..3)]);
            let rows = r.gen_range(0..=n.min(4));
            LinearCode::new(random_sparse_matrix(&mut r, &f, rows, n, 0.6))
        })
    }

    #[test]
    fn repetition_matroid_is_u1n() {
        let m = code_matroid(&repetition(5, &gf(3))).unwrap();
        assert!(is_uniform(&m, 1));
    }

    #[test]
    fn k4_code_matroid() {
        let f = gf(3);
        let m = code_matroid(&catalog_code("C_K4", &f).unwrap()).unwrap();
        assert!(m.is_isomorphic(&named_matroid("K4", &f).unwrap()).unwrap().is_some());
    }

    #[test]
    fn generator_choice_does_not_matter() {
        let f = gf(5);
        let c = catalog_code("C_K23", &f).unwrap();
        let other = LinearCode::new(c.generator().rref().0);
        let (a, b) = (code_matroid(&c).unwrap(), code_matroid(&other).unwrap());
        assert_eq!(a.rank_table(), b.rank_table());
    }

    #[test]
    fn dual_of_repetition_is_even_weight() {
        let d = dual_code(&repetition(4, &gf(2)));
        assert_eq!(d.dimension(), 3);
        for r in 0..d.generator().rows() {
            assert_eq!(d.generator().row(r).iter().filter(|&&x| x == 1).count() % 2, 0);
        }
        let c = catalog_code("C_K23", &gf(3)).unwrap();
        let dd = dual_code(&dual_code(&c));
        assert!(dd.same_code(&c));
    }

    #[test]
    fn k23_dual_matches_printed_matrix() {
        for q in [2, 3, 5, 7] {
            let f = gf(q);
            let d = dual_code(&catalog_code("C_K23", &f).unwrap());
            assert!(d.same_code(&catalog_code("C_K23_dual", &f).unwrap()));
            let m = code_matroid(&catalog_code("C_K23", &f).unwrap()).unwrap();
            assert_eq!(code_matroid(&d).unwrap().rank_table(), m.dual().rank_table());
        }
    }

    #[test]
    fn printed_matrices() {
        let c = catalog_code("C_K4", &gf(2)).unwrap();
        assert_eq!(c.generator().row(2), &[0, 0, 1, 0, 1, 1]);
        let d = catalog_code("C_K23_dual", &gf(3)).unwrap();
        assert_eq!(d.generator().row(0), &[1, 2, 0, 2, 1, 0]);
        assert_eq!(d.generator().row(1), &[1, 0, 2, 2, 0, 1]);
        assert!(matches!(catalog_code("C_K9", &gf(3)), Err(CodeError::Catalog(CatalogError::UnknownName(_)))));
        assert!(matches!(catalog_code("MDS(6,3)", &gf(3)), Err(CodeError::Catalog(_))));
    }

    #[test]
    fn mds_codes() {
        let c = catalog_code("MDS(4,2)", &gf(3)).unwrap();
        let g = c.generator();
        for a in 0..4 {
            for b in a + 1..4 {
                assert_eq!(g.select_columns(&[a, b]).rank(), 2);
            }
        }
        assert_eq!(trellis_width(&c).unwrap().width, 2);
    }

    #[test]
    fn puncture_and_shorten_examples() {
        let f = gf(2);
        let c = catalog_code("C_K4", &f).unwrap();
        assert!(puncture(&c, &[] as &[&str]).unwrap().same_code(&c));
        let two_labels = vec!["1".to_string(), "3".to_string()];
        let s = shorten(&repetition(3, &f), &["2"]).unwrap();
        assert_eq!((s.length(), s.dimension()), (2, 0));
        assert_eq!(s.labels(), two_labels);
        let p = puncture(&repetition(3, &f), &["2"]).unwrap();
        assert!(p.same_code(&LinearCode::with_labels(GfMatrix::new(&f, 1, 2, vec![1, 1]).unwrap(), two_labels).unwrap()));
        let mds = catalog_code("MDS(4,2)", &gf(3)).unwrap();
        let p = puncture(&mds, &["4"]).unwrap();
        assert_eq!(p.dimension(), 2);
        assert!(is_uniform(&code_matroid(&p).unwrap(), 2));
        assert!(matches!(puncture(&c, &["9"]), Err(CodeError::UnknownLabel(_))));
    }

    #[test]
    fn state_profiles() {
        let f = gf(2);
        assert_eq!(state_profile(&repetition(3, &f), &["1", "2", "3"]).unwrap(), vec![1, 1, 0]);
        let mds = catalog_code("MDS(4,2)", &gf(3)).unwrap();
        assert_eq!(state_profile(&mds, &["3", "1", "4", "2"]).unwrap(), vec![1, 2, 1, 0]);
        // columns 1, 2, 4 of the K4 generator form a triangle
        let k4 = catalog_code("C_K4", &f).unwrap();
        assert_eq!(state_profile(&k4, &["1", "2", "4", "3", "5", "6"]).unwrap(), vec![1, 2, 2, 2, 1, 0]);
        assert!(matches!(state_profile(&k4, &["1", "2"]), Err(CodeError::NotAPermutation(_))));
    }

    #[test]
    fn repetition_width_one() {
        for n in 2..7 {
            assert_eq!(trellis_width(&repetition(n, &gf(2))).unwrap().width, 1);
        }
    }

    #[test]
    fn frobenius_variants_by_field() {
        let c = catalog_code("C_K4", &gf(3)).unwrap();
        assert_eq!(frobenius_variants(&c).len(), 1);
        let f = gf(4);
        let c = LinearCode::new(GfMatrix::new(&f, 1, 3, vec![1, 2, 3]).unwrap());
        let v = frobenius_variants(&c);
        assert_eq!(v.len(), 2);
        assert_eq!(v[1].generator().row(0), &[1, 3, 2]);
    }

    #[test]
    fn width_one_checks() {
        let v = tw_le_1_check(&repetition(5, &gf(2))).unwrap();
        assert!(v.at_most_one && v.witness.is_none());
        let mds = catalog_code("MDS(4,2)", &gf(3)).unwrap();
        let v = tw_le_1_check(&mds).unwrap();
        assert!(!v.at_most_one);
        let w = v.witness.unwrap();
        assert_eq!(w.catalog, "MDS(4,2)");
        assert!(w.shorten.is_empty() && w.puncture.is_empty());
        assert!(w.is_code_equivalent(&mds).unwrap());
        let k4 = catalog_code("C_K4", &gf(2)).unwrap();
        let w = tw_le_1_check(&k4).unwrap().witness.unwrap();
        assert_eq!(w.catalog, "C_K4");
        assert!(w.is_code_equivalent(&k4).unwrap());
        let long = repetition(11, &gf(2));
        assert!(matches!(tw_le_1_check(&long), Err(CodeError::LengthTooLarge { .. })));
    }

    #[test]
    fn text_round_trip() {
        let c = LinearCode::with_labels(g4_matrix(&gf(4)), ["a", "b", "c", "d", "e", "f"].map(String::from).to_vec()).unwrap();
        assert_eq!(LinearCode::from_text(&c.to_text()).unwrap(), c);
        let plain = catalog_code("C_K23", &gf(3)).unwrap();
        assert!(!plain.to_text().contains("labels"));
        assert_eq!(LinearCode::from_text(&plain.to_text()).unwrap(), plain);
    }

    #[test]
    fn quaternary_witnesses_are_code_equivalent() {
        let f = gf(4);
        let mut r = rng(404);
        let mut witnessed = 0;
        for _ in 0..150 {
            let n = r.gen_range(4..=7);
            let rows = r.gen_range(2..=n.min(4));
            let c = LinearCode::new(random_sparse_matrix(&mut r, &f, rows, n, 0.8));
            if let Some(w) = tw_le_1_check(&c).unwrap().witness {
                witnessed += 1;
                assert!(w.is_code_equivalent(&c).unwrap(), "{}", c.to_text());
            }
        }
        assert!(witnessed > 10, "only {witnessed} witnesses");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn shorten_is_dual_puncture_dual(c in arb_code(7), pick in any::<u8>()) {
            let j: Vec<String> = c.labels().iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, l)| l.clone()).collect();
            let s = shorten(&c, &j).unwrap();
            prop_assert!(s.same_code(&dual_code(&puncture(&dual_code(&c), &j).unwrap())));
            let m = code_matroid(&c).unwrap();
            let set = m.subset_from_labels(&j).unwrap();
            prop_assert_eq!(code_matroid(&s).unwrap().rank_table(), m.contract(set).rank_table());
            prop_assert_eq!(code_matroid(&puncture(&c, &j).unwrap()).unwrap().rank_table(), m.delete(set).rank_table());
        }

        #[test]
        fn dual_is_orthogonal_with_complementary_dimension(c in arb_code(8)) {
            let d = dual_code(&c);
            prop_assert_eq!(c.dimension() + d.dimension(), c.length());
            let f = c.field();
            for a in 0..c.generator().rows() {
                for b in 0..d.generator().rows() {
                    let dot = (0..c.length()).fold(0, |acc, i| f.add(acc, f.mul(c.generator().get(a, i), d.generator().get(b, i))));
                    prop_assert_eq!(dot, 0);
                }
            }
        }

        #[test]
        fn trellis_width_is_self_dual(c in arb_code(8)) {
            prop_assert_eq!(trellis_width(&c).unwrap().width, trellis_width(&dual_code(&c)).unwrap().width);
        }
    }
}
