//! Seeded verification suites. Each suite checks one structural result on a
//! family of instances and reports every counterexample it meets.

mod graphs;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, Field};
use crate::catalog::named_matroid;
use crate::codes::{tw_le_1_check, CodeError, LinearCode};
use crate::graph::{
    graph_pathwidth, make_umbrella, umbrella_ordering, validate_path_decomposition, GraphError, MultiGraph,
};
use crate::matroid::{GroundSubset, MatroidError, VectorMatroid};
use crate::minors::{excluded_minor_catalog, pw_le_1_by_minors, verify_excluded_minor, MinorError};
use crate::pathwidth::{
    branch_width_of_tree, caterpillar, pathwidth_exact, prefix_lambdas, width_of_ordering, PathwidthError,
};
use crate::random::{random_distinct_column_matroid, random_mixed_matroid, random_sparse_matrix, seeded, TestRng};
use crate::reduction::{
    block_partition, check_block_closure, decomp_to_ordering, is_normal, normalize, ordering_to_decomp,
    reduce_instance, reorder, strip_apex, ApexGraph, ReductionError,
};

pub use graphs::{connected_simple_graphs, named_graph, random_simple_graph_with_edges};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Pathwidth(#[from] PathwidthError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Outcome of one suite: how many instances were checked, and every
/// violation found, serialized with enough data to replay it.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub violations: Vec<Value>,
    pub details: Value,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checked: 0,
            violations: Vec::new(),
            details: Value::Null,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Knobs shared by the suites; unset values fall back to per-suite defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub samples: Option<usize>,
    pub seed: u64,
    pub q: Option<u32>,
    pub n: Option<usize>,
    pub graph: Option<String>,
    pub m: Option<usize>,
    pub max_parallel: Option<usize>,
    pub w: Option<usize>,
}

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "lower-bounds",
    "free",
    "duality",
    "monotone",
    "direct-sum",
    "reduction",
    "decomp-to-ordering",
    "reorder",
    "p1q",
    "umbrella",
    "excluded",
    "codes-tw1",
    "caterpillar",
];

pub fn run_suite(id: &str, p: &SuiteParams) -> Result<SuiteReport, HarnessError> {
    let fields = |default: &[u32]| -> Result<Vec<Field>, HarnessError> {
        match p.q {
            Some(q) => Ok(vec![Field::with_order(q)?]),
            None => default.iter().map(|&q| Ok(Field::with_order(q)?)).collect(),
        }
    };
    match id {
        "lower-bounds" => lower_bounds(&fields(&[3, 4, 5])?),
        "free" => free_matroids(p.n.unwrap_or(10)),
        "duality" => duality(&fields(&[2, 3])?, p.samples.unwrap_or(200), p.n.unwrap_or(9), p.seed),
        "monotone" => monotonicity(&fields(&[2, 3])?, p.samples.unwrap_or(200), p.n.unwrap_or(9), p.seed),
        "direct-sum" => direct_sums(&fields(&[2, 3])?, p.samples.unwrap_or(100), p.n.unwrap_or(6), p.seed),
        "reduction" | "decomp-to-ordering" => {
            let graphs = reduction_graphs(p.samples.unwrap_or(20), p.seed);
            let f = fields(&[2])?.remove(0);
            let report = reduction(&graphs, &f)?;
            Ok(if id == "reduction" { report } else { split_lemma33(report) })
        }
        "reorder" => {
            let names = match &p.graph {
                Some(g) => vec![g.clone()],
                None => vec!["k3".into(), "p4".into()],
            };
            let mut graphs = Vec::new();
            for name in &names {
                graphs.push((name.clone(), named_graph(name).ok_or_else(|| HarnessError::BadParameter(format!("unknown graph `{name}`")))?));
            }
            reorder_suite(&graphs, p.samples.unwrap_or(200), p.seed)
        }
        "p1q" => pw1_minors(&fields(&[2, 3])?, p.samples.unwrap_or(500), p.n.unwrap_or(8), p.seed),
        "umbrella" => umbrellas(p.m.unwrap_or(6), p.max_parallel.unwrap_or(2), p.q.unwrap_or(3)),
        "excluded" => {
            let w = p.w.unwrap_or(2);
            let mut out = SuiteReport::new("excluded");
            for f in fields(&[2, 3, 4])? {
                let names: Vec<String> = excluded_minor_catalog(w, &f)?.into_iter().map(|e| e.name).collect();
                let r = excluded_minors(&f, &names, w)?;
                out.checked += r.checked;
                out.violations.extend(r.violations);
            }
            Ok(out)
        }
        "codes-tw1" => codes_tw1(&fields(&[2, 3])?, p.samples.unwrap_or(300), p.n.unwrap_or(7), p.seed),
        "caterpillar" => caterpillars(p.samples.unwrap_or(100), p.n.unwrap_or(9), p.seed),
        _ => Err(HarnessError::UnknownSuite(id.to_string())),
    }
}

fn matroid_json(m: &VectorMatroid) -> Value {
    Value::String(m.to_text())
}

fn graph_json(g: &MultiGraph) -> Value {
    Value::String(g.to_text())
}

/// A field from the list, chosen per sample.
fn pick<'a>(rng: &mut TestRng, fields: &'a [Field]) -> &'a Field {
    &fields[rng.gen_range(0..fields.len())]
}

/// `pw = 2` for `U2,4` over each field and for `M(K4)`, `M(K2,3)`,
/// `M*(K2,3)` over each field.
pub fn lower_bounds(fields: &[Field]) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("lower-bounds");
    let mut found = Vec::new();
    for f in fields {
        for name in ["U24", "K4", "K23", "K23*"] {
            let Ok(m) = named_matroid(name, f) else { continue };
            let cert = pathwidth_exact(&m)?;
            r.checked += 1;
            found.push(json!({"q": f.order(), "matroid": name, "width": cert.width, "ordering": cert.labels}));
            if cert.width != 2 || !cert.verify(&m) {
                r.violations.push(json!({"q": f.order(), "matroid": name, "width": cert.width}));
            }
        }
    }
    r.details = Value::Array(found);
    Ok(r)
}

/// `pw(U_{n,n}) = 0` for `n <= max_n`.
pub fn free_matroids(max_n: usize) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("free");
    let f = Field::with_order(2)?;
    for n in 0..=max_n {
        let m = VectorMatroid::new(crate::algebra::GfMatrix::identity(&f, n)).expect("small");
        r.checked += 1;
        let w = pathwidth_exact(&m)?.width;
        if w != 0 {
            r.violations.push(json!({"n": n, "width": w}));
        }
    }
    Ok(r)
}

/// `pw(M) = pw(M*)`.
pub fn duality(fields: &[Field], samples: usize, max_n: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("duality");
    let mut rng = seeded(seed);
    for _ in 0..samples {
        let f = pick(&mut rng, fields).clone();
        let n = rng.gen_range(0..=max_n);
        let m = random_mixed_matroid(&mut rng, &f, n);
        let (a, b) = (pathwidth_exact(&m)?.width, pathwidth_exact(&m.dual())?.width);
        r.checked += 1;
        if a != b {
            r.violations.push(json!({"matroid": matroid_json(&m), "pw": a, "dual_pw": b}));
        }
    }
    Ok(r)
}

/// Every single-element deletion and contraction has pathwidth at most
/// `pw(M)`.
pub fn monotonicity(fields: &[Field], samples: usize, max_n: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("monotone");
    let mut rng = seeded(seed);
    for _ in 0..samples {
        let f = pick(&mut rng, fields).clone();
        let n = rng.gen_range(0..=max_n);
        let m = random_mixed_matroid(&mut rng, &f, n);
        let w = pathwidth_exact(&m)?.width;
        for e in 0..m.size() {
            let s = GroundSubset::singleton(e);
            for (op, minor) in [("delete", m.delete(s)), ("contract", m.contract(s))] {
                let mw = pathwidth_exact(&minor)?.width;
                if mw > w {
                    r.violations.push(json!({"matroid": matroid_json(&m), "op": op, "element": m.label(e), "pw": w, "minor_pw": mw}));
                }
            }
        }
        r.checked += 1;
    }
    Ok(r)
}

/// `pw(M1 ⊕ M2) = max(pw(M1), pw(M2))`.
pub fn direct_sums(fields: &[Field], samples: usize, max_side: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("direct-sum");
    let mut rng = seeded(seed);
    for _ in 0..samples {
        let f = pick(&mut rng, fields).clone();
        let (n1, n2) = (rng.gen_range(0..=max_side), rng.gen_range(0..=max_side));
        let a = random_mixed_matroid(&mut rng, &f, n1);
        let b = random_mixed_matroid(&mut rng, &f, n2);
        let sum = a.direct_sum(&b).expect("same field");
        let (wa, wb, ws) = (pathwidth_exact(&a)?.width, pathwidth_exact(&b)?.width, pathwidth_exact(&sum)?.width);
        r.checked += 1;
        if ws != wa.max(wb) {
            r.violations.push(json!({"left": matroid_json(&a), "right": matroid_json(&b), "pw_left": wa, "pw_right": wb, "pw_sum": ws}));
        }
    }
    Ok(r)
}

/// Every connected simple graph on at most four vertices, then `random`
/// seeded simple graphs on five vertices with at most five edges.
pub fn reduction_graphs(random: usize, seed: u64) -> Vec<MultiGraph> {
    let mut graphs = connected_simple_graphs(4);
    let mut rng = seeded(seed);
    for _ in 0..random {
        graphs.push(random_simple_graph_with_edges(&mut rng, 5, 5));
    }
    graphs
}

/// `pw(M(Ḡ)) = pw(G) + 1` with `pw(G)` from the vertex-separation oracle,
/// and the ordering built from each optimal decomposition found has width
/// at most `pw(G) + 1`. The decompositions checked are the oracle's and the
/// one recovered from an optimal matroid ordering through re-ordering.
pub fn reduction(graphs: &[MultiGraph], field: &Field) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("reduction");
    let mut decomposition_violations = Vec::new();
    let mut rows = Vec::new();
    for g in graphs {
        let (m, a) = reduce_instance(g, field)?;
        let (pw, d) = graph_pathwidth(g)?;
        let cert = pathwidth_exact(&m)?;
        r.checked += 1;
        rows.push(json!({"vertices": g.vertex_count(), "edges": g.edge_count(), "graph_pw": pw, "matroid_pw": cert.width}));
        if cert.width as i64 != pw + 1 {
            r.violations.push(json!({"graph": graph_json(g), "graph_pw": pw, "matroid_pw": cert.width}));
        }
        let recovered = recovered_decomposition(&a, &m, &cert.ordering)?;
        for (source, dec) in [("oracle", d), ("re-ordered", recovered)] {
            if validate_path_decomposition(g, &dec)? != pw {
                continue;
            }
            let order = decomp_to_ordering(&a, &dec)?;
            let w = width_of_ordering(&m, &order)?.width as i64;
            if w > pw + 1 || !is_normal(&a, &order) {
                decomposition_violations.push(json!({"graph": graph_json(g), "source": source, "bags": dec.bags, "ordering_width": w, "graph_pw": pw}));
            }
        }
    }
    r.details = json!({"graphs": rows, "decomposition_violations": decomposition_violations});
    Ok(r)
}

/// Decomposition of the input graph read off a matroid ordering: normalize,
/// re-order, split into blocks, strip the apex.
fn recovered_decomposition(
    a: &ApexGraph,
    m: &VectorMatroid,
    order: &[usize],
) -> Result<crate::graph::PathDecomposition, ReductionError> {
    let star = reorder(a, m, &normalize(a, order)?)?;
    Ok(strip_apex(a, &ordering_to_decomp(a, &star)?))
}

/// Re-labels a reduction report as the decomposition-to-ordering check.
fn split_lemma33(mut r: SuiteReport) -> SuiteReport {
    r.suite = "decomp-to-ordering".into();
    r.violations = r.details["decomposition_violations"].as_array().cloned().unwrap_or_default();
    r
}

/// Random normal orderings of `Ḡ`: re-ordering never raises the width, the
/// output is normal, splits into aligned blocks satisfying the closure
/// condition, and yields decompositions of `Ḡ` and of the graph of width at
/// most `w(π*)` and `w(π*) - 1`.
pub fn reorder_suite(graphs: &[(String, MultiGraph)], samples: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("reorder");
    let mut rng = seeded(seed);
    let f = Field::with_order(2)?;
    for (name, g) in graphs {
        let (m, a) = reduce_instance(g, &f)?;
        for _ in 0..samples {
            let mut order: Vec<usize> = (0..a.edge_count()).collect();
            order.shuffle(&mut rng);
            let order = normalize(&a, &order)?;
            r.checked += 1;
            let fail = |what: &str| json!({"graph": name, "ordering": m.labels_of_order(&order), "failure": what});
            let star = match reorder(&a, &m, &order) {
                Ok(s) => s,
                Err(e) => {
                    r.violations.push(fail(&e.to_string()));
                    continue;
                }
            };
            let (w, w_star) = (width_of_ordering(&m, &order)?.width, width_of_ordering(&m, &star)?.width);
            if w_star > w {
                r.violations.push(fail(&format!("width rose from {w} to {w_star}")));
            }
            if !is_normal(&a, &star) {
                r.violations.push(fail("output is not normal"));
            }
            match block_partition(&a, &star).and_then(|b| check_block_closure(&m, &b)) {
                Err(e) => r.violations.push(fail(&e.to_string())),
                Ok(()) => match ordering_to_decomp(&a, &star) {
                    Err(e) => r.violations.push(fail(&e.to_string())),
                    Ok(d) => {
                        let stripped = strip_apex(&a, &d);
                        let ok = d.width() <= w_star as i64
                            && validate_path_decomposition(g, &stripped).is_ok_and(|sw| sw < w_star as i64);
                        if !ok {
                            r.violations.push(fail("decomposition from the blocks is too wide or invalid"));
                        }
                    }
                },
            }
        }
    }
    Ok(r)
}

trait OrderLabels {
    fn labels_of_order(&self, order: &[usize]) -> Vec<String>;
}

impl OrderLabels for VectorMatroid {
    fn labels_of_order(&self, order: &[usize]) -> Vec<String> {
        order.iter().map(|&e| self.label(e).to_string()).collect()
    }
}

/// The excluded-minor test for pathwidth one agrees with the exact
/// pathwidth, and every witness replays.
pub fn pw1_minors(fields: &[Field], samples: usize, max_n: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("p1q");
    let mut rng = seeded(seed);
    let mut inside = 0;
    for f in fields {
        for i in 0..samples {
            let m = if i % 2 == 0 || max_n < 4 {
                let n = rng.gen_range(0..=max_n);
                random_mixed_matroid(&mut rng, f, n)
            } else {
                let n = rng.gen_range(4..=max_n);
                let rows = rng.gen_range(2..=n - 2);
                random_distinct_column_matroid(&mut rng, f, rows, n)
            };
            r.checked += 1;
            match pw_le_1_by_minors(&m) {
                Ok((ok, witness)) => {
                    inside += usize::from(ok);
                    if let Some(w) = witness {
                        let pattern = named_matroid(&w.catalog, f).expect("catalog entry");
                        if !w.certificate.verify(&m, &pattern) {
                            r.violations.push(json!({"matroid": matroid_json(&m), "failure": "witness does not replay"}));
                        }
                    }
                }
                Err(MinorError::CharacterizationMismatch { by_minors, width }) => {
                    r.violations.push(json!({"matroid": matroid_json(&m), "by_minors": by_minors, "width": width}));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    r.details = json!({"width_at_most_one": inside});
    Ok(r)
}

/// Every umbrella with circuit length `2..=max_m` and at most
/// `max_parallel` extra spokes per vertex has an explicit ordering of width
/// at most one.
pub fn umbrellas(max_m: usize, max_parallel: usize, q: u32) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("umbrella");
    let f = Field::with_order(q)?;
    let base = max_parallel + 1;
    for m in 2..=max_m {
        for code in 0..base.pow(m as u32) {
            let counts: Vec<usize> = (0..m).map(|i| code / base.pow(i as u32) % base).collect();
            let h = make_umbrella(&counts)?;
            let order = umbrella_ordering(&h)?;
            let matroid = crate::graph::cycle_matroid(&h, &f)?;
            let lambdas = prefix_lambdas(&matroid, &order)?;
            r.checked += 1;
            if lambdas.iter().any(|&l| l > 1) {
                r.violations.push(json!({"counts": counts, "prefix_lambdas": lambdas}));
            }
        }
    }
    Ok(r)
}

/// [`verify_excluded_minor`] on each named matroid.
pub fn excluded_minors(field: &Field, names: &[String], w: usize) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("excluded");
    let mut rows = Vec::new();
    for name in names {
        let m = named_matroid(name, field).map_err(|e| HarnessError::BadParameter(e.to_string()))?;
        let report = verify_excluded_minor(&m, w)?;
        r.checked += 1;
        rows.push(json!({"q": field.order(), "matroid": name, "elements": m.size(), "pathwidth": report.pathwidth, "minors_checked": report.checked_minors}));
        if !report.passed() {
            r.violations.push(json!({"q": field.order(), "matroid": name, "violations": report.violations}));
        }
    }
    r.details = Value::Array(rows);
    Ok(r)
}

/// `tw(C) <= 1` iff no minor of `C` matches a width-one excluded code; each
/// witness is also re-checked by exact code equivalence.
pub fn codes_tw1(fields: &[Field], samples: usize, max_n: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("codes-tw1");
    let mut rng = seeded(seed);
    let mut witnessed = 0;
    for i in 0..samples {
        let f = pick(&mut rng, fields).clone();
        let c = if i % 2 == 0 || max_n < 4 {
            let n = rng.gen_range(1..=max_n);
            let rows = rng.gen_range(1..=n.min(5));
            let density = [0.4, 0.6, 0.9][rng.gen_range(0..3)];
            LinearCode::new(random_sparse_matrix(&mut rng, &f, rows, n, density))
        } else {
            let n = rng.gen_range(4..=max_n);
            let rows = rng.gen_range(2..=n - 2);
            LinearCode::new(random_distinct_column_matroid(&mut rng, &f, rows, n).matrix().clone())
        };
        r.checked += 1;
        match tw_le_1_check(&c) {
            Ok(v) => {
                if let Some(w) = v.witness {
                    witnessed += 1;
                    if !w.is_code_equivalent(&c)? {
                        r.violations.push(json!({"code": c.to_text(), "catalog": w.catalog, "failure": "witness minor is not code-equivalent"}));
                    }
                }
            }
            Err(CodeError::CharacterizationMismatch { by_minors, width }) => {
                r.violations.push(json!({"code": c.to_text(), "by_minors": by_minors, "width": width}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    r.details = json!({"with_witness": witnessed});
    Ok(r)
}

/// The caterpillar tree of an ordering has the ordering's width.
pub fn caterpillars(samples: usize, max_n: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut r = SuiteReport::new("caterpillar");
    let mut rng = seeded(seed);
    let fields: Vec<Field> = [2, 3, 4, 5].iter().map(|&q| Field::with_order(q)).collect::<Result<_, _>>()?;
    while r.checked < samples {
        let f = pick(&mut rng, &fields).clone();
        let n = rng.gen_range(2..=max_n);
        let m = random_mixed_matroid(&mut rng, &f, n);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let cert = width_of_ordering(&m, &order)?;
        let tree = caterpillar(&cert.labels)?;
        let bw = branch_width_of_tree(&m, &tree)?;
        r.checked += 1;
        if bw != cert.width {
            r.violations.push(json!({"matroid": matroid_json(&m), "ordering": cert.labels, "ordering_width": cert.width, "tree_width": bw}));
        }
    }
    Ok(r)
}
