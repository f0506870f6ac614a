use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pathwidth_core::algebra::Field;
use pathwidth_core::catalog::named_matroid;
use pathwidth_core::codes::{trellis_width, tw_le_1_check, LinearCode};
use pathwidth_core::graph::{graph_pathwidth, MultiGraph};
use pathwidth_core::harness::{run_suite, SuiteParams, SUITES};
use pathwidth_core::matroid::VectorMatroid;
use pathwidth_core::minors::{minor_contains, verify_excluded_minor};
use pathwidth_core::pathwidth::{decide_pathwidth, pathwidth_exact_with_cap, pathwidth_upper_greedy, EXACT_CAP};
use pathwidth_core::reduction::reduce_instance;

#[derive(Parser)]
#[command(name = "mpw", version, about = "Matroid pathwidth and code trellis-width over GF(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pathwidth of the matroid in a matrix file.
    Pathwidth {
        file: PathBuf,
        /// Largest ground set the exact solver accepts.
        #[arg(long, default_value_t = EXACT_CAP)]
        exact_cap: usize,
        /// Greedy upper bound instead of the exact value.
        #[arg(long, conflicts_with = "decide")]
        heuristic: bool,
        /// Answer whether the pathwidth is at most this.
        #[arg(long)]
        decide: Option<usize>,
    },
    /// Trellis-width of a code, with an optimal coordinate ordering.
    Tw { file: PathBuf },
    /// Whether trellis-width is at most one, with an excluded-minor witness otherwise.
    CheckTw1 { file: PathBuf },
    /// Builds the matroid of the doubled apex graph of a graph.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        field: u32,
        /// Writes PREFIX.mat and PREFIX.json instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also checks that the matroid pathwidth is one more than the graph pathwidth.
        #[arg(long)]
        verify: bool,
    },
    /// Looks for a minor of the host isomorphic to the pattern.
    CheckMinor {
        #[arg(long)]
        host: PathBuf,
        /// A catalog name (U24, K4, F7*, ...) or a matrix file.
        #[arg(long)]
        pattern: String,
    },
    /// Checks that a matroid is an excluded minor for pathwidth at most w.
    VerifyExcluded {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Runs a property suite.
    Verify {
        suite: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        max_parallel: Option<usize>,
        #[arg(long)]
        w: Option<usize>,
    },
}

enum Status {
    Ok,
    Violation,
}

struct Outcome {
    status: Status,
    payload: Value,
    summary: String,
}

impl Outcome {
    fn ok(payload: Value, summary: impl Into<String>) -> Self {
        Outcome {
            status: Status::Ok,
            payload,
            summary: summary.into(),
        }
    }

    fn judged(passed: bool, payload: Value, summary: impl Into<String>) -> Self {
        Outcome {
            status: if passed { Status::Ok } else { Status::Violation },
            payload,
            summary: summary.into(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_matroid(path: &Path) -> Result<VectorMatroid> {
    VectorMatroid::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_code(path: &Path) -> Result<LinearCode> {
    LinearCode::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<MultiGraph> {
    MultiGraph::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn pathwidth(file: &Path, exact_cap: usize, heuristic: bool, decide: Option<usize>) -> Result<Outcome> {
    let m = load_matroid(file)?;
    if let Some(w) = decide {
        let yes = decide_pathwidth(&m, w, exact_cap)?;
        let answer = if yes { "yes" } else { "no" };
        return Ok(Outcome::ok(json!({"w": w, "answer": answer}), format!("pathwidth <= {w}: {answer}")));
    }
    let cert = if heuristic {
        pathwidth_upper_greedy(&m)
    } else {
        pathwidth_exact_with_cap(&m, exact_cap)?
    };
    let kind = if heuristic { "upper bound" } else { "pathwidth" };
    Ok(Outcome::ok(cert.to_json_value(), format!("{kind} {}", cert.width)))
}

fn tw(file: &Path) -> Result<Outcome> {
    let cert = trellis_width(&load_code(file)?)?;
    Ok(Outcome::ok(cert.to_json_value(), format!("trellis-width {}", cert.width)))
}

fn check_tw1(file: &Path) -> Result<Outcome> {
    let verdict = tw_le_1_check(&load_code(file)?)?;
    let summary = match &verdict.witness {
        None if verdict.at_most_one => "trellis-width <= 1".to_string(),
        None => "trellis-width > 1".to_string(),
        Some(w) => format!("trellis-width > 1, minor equivalent to {}", w.catalog),
    };
    Ok(Outcome::ok(serde_json::to_value(&verdict)?, summary))
}

fn reduce(file: &Path, q: u32, out: Option<&Path>, verify: bool) -> Result<Outcome> {
    let g = load_graph(file)?;
    let field = Field::with_order(q)?;
    let (m, apex) = reduce_instance(&g, &field)?;
    let sidecar: Value = serde_json::from_str(&apex.sidecar_json())?;
    let mut payload = json!({"elements": m.size(), "rank": m.rank()});
    match out {
        Some(prefix) => {
            let mat = prefix.with_extension("mat");
            let side = prefix.with_extension("json");
            std::fs::write(&mat, m.to_text()).with_context(|| format!("writing {}", mat.display()))?;
            std::fs::write(&side, apex.sidecar_json()).with_context(|| format!("writing {}", side.display()))?;
            payload["matrix_file"] = json!(mat.display().to_string());
            payload["sidecar_file"] = json!(side.display().to_string());
        }
        None => {
            payload["matrix"] = json!(m.to_text());
            payload["sidecar"] = sidecar;
        }
    }
    if !verify {
        return Ok(Outcome::ok(payload, format!("reduced to {} elements", m.size())));
    }
    let (graph_width, _) = graph_pathwidth(&g)?;
    let matroid_width = pathwidth_exact_with_cap(&m, EXACT_CAP)?.width as i64;
    let holds = matroid_width == graph_width + 1;
    payload["graph_pathwidth"] = json!(graph_width);
    payload["matroid_pathwidth"] = json!(matroid_width);
    payload["holds"] = json!(holds);
    Ok(Outcome::judged(
        holds,
        payload,
        format!("{matroid_width} = {graph_width} + 1: {}", if holds { "ok" } else { "VIOLATED" }),
    ))
}

fn check_minor(host: &Path, pattern: &str) -> Result<Outcome> {
    let h = load_matroid(host)?;
    let p = if Path::new(pattern).is_file() {
        load_matroid(Path::new(pattern))?
    } else {
        named_matroid(pattern, h.field()).with_context(|| format!("pattern `{pattern}` is neither a file nor a catalog name"))?
    };
    Ok(match minor_contains(&h, &p)? {
        Some(cert) => Outcome::ok(serde_json::to_value(&cert)?, "minor found"),
        None => Outcome::ok(json!("absent"), "absent"),
    })
}

fn verify_excluded(w: usize, file: &Path) -> Result<Outcome> {
    let report = verify_excluded_minor(&load_matroid(file)?, w)?;
    let passed = report.passed();
    let summary = if passed {
        format!("excluded minor for pathwidth <= {w}")
    } else {
        format!("not an excluded minor for pathwidth <= {w}: {} problems", report.violations.len())
    };
    Ok(Outcome::judged(passed, serde_json::to_value(&report)?, summary))
}

fn verify(suite: &str, params: SuiteParams) -> Result<Outcome> {
    if !SUITES.contains(&suite) {
        bail!("unknown suite `{suite}`; known: {}", SUITES.join(", "));
    }
    let report = run_suite(suite, &params)?;
    let passed = report.passed();
    let summary = format!("{suite}: {} checked, {} violations", report.checked, report.violations.len());
    Ok(Outcome::judged(passed, serde_json::to_value(&report)?, summary))
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Pathwidth {
            file,
            exact_cap,
            heuristic,
            decide,
        } => pathwidth(&file, exact_cap, heuristic, decide),
        Command::Tw { file } => tw(&file),
        Command::CheckTw1 { file } => check_tw1(&file),
        Command::Reduce { file, field, out, verify } => reduce(&file, field, out.as_deref(), verify),
        Command::CheckMinor { host, pattern } => check_minor(&host, &pattern),
        Command::VerifyExcluded { w, matroid } => verify_excluded(w, &matroid),
        Command::Verify {
            suite,
            samples,
            seed,
            q,
            n,
            graph,
            m,
            max_parallel,
            w,
        } => verify(
            &suite,
            SuiteParams {
                samples,
                seed,
                q,
                n,
                graph,
                m,
                max_parallel,
                w,
            },
        ),
    }
}

fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            emit(&serde_json::to_string_pretty(&out.payload).expect("serializable"));
            eprintln!("{}", out.summary);
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Violation => ExitCode::from(2),
            }
        }
        Err(e) => {
            emit(&json!({"error": format!("{e:#}")}).to_string());
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
