//! Command-line front end. Every command prints one canonical JSON report
//! to stdout (byte-identical across repeated identical invocations) and a
//! short human summary to stderr. Exit codes: 0 success, 1 domain failure,
//! 2 usage.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::action::{count_points, orbit_census};
use crate::dsl::{parse_doc, print_doc, QuiverDoc};
use crate::error::{Error, Result};
use crate::higgs::{higgs_to_diagram, integrability_check, HiggsDatum};
use crate::json::{matrix_to_value, parse as parse_json};
use crate::quiver::{double, frame, frame_at, tilde, FramingFn};
use crate::rep::validate_rep;
use crate::report::Report;
use crate::solve::{solve_moment_zero, uniform_lambda, SolveConfig};
use crate::sset::SSet2;
use crate::verify::run_suite;

#[derive(Parser)]
#[command(
    name = "qstack",
    version,
    about = "Shapes, quiver representations, point counts, and moment-map solving"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derive a new shape from a quiver document
    Build {
        #[command(subcommand)]
        what: BuildWhat,
    },
    /// Count representations over a prime field, with gauge and stacky data
    Count {
        input: PathBuf,
        /// Field characteristic
        #[arg(long)]
        prime: u64,
        /// Override or complete dimensions, e.g. a=1,b=2
        #[arg(long)]
        dims: Option<String>,
        /// Also decompose the representation set into orbits
        #[arg(long)]
        census: bool,
    },
    /// Search for a float representation meeting a moment-map level
    SolveNakajima {
        input: PathBuf,
        #[arg(long)]
        dims: Option<String>,
        /// "uniform:X" or per-vertex, e.g. a=0.1,b=-0.2
        #[arg(long, default_value = "uniform:0")]
        lambda: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        #[arg(long, default_value_t = 8)]
        starts: usize,
    },
    /// Check a tuple of endomorphisms for integrability, two ways
    CheckHiggs {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run a self-check suite (or "all")
    Verify {
        suite: String,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum BuildWhat {
    /// Gauge-extended shape with primed copies and invertible edge pairs
    Tilde {
        input: PathBuf,
        /// Also write the resulting document here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add a reversed edge for every edge
    Double {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attach framing vertices
    Frame {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Vertices to frame (default: all), e.g. a,b
        #[arg(long)]
        at: Option<String>,
    },
}

struct Outcome {
    report: Report,
    human: String,
    failed: bool,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().collect();
    match dispatch(cli, argv) {
        Ok(outcome) => {
            println!("{}", outcome.report.to_canonical_json());
            eprint!("{}", outcome.human);
            if outcome.failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn read_text(path: &Path) -> Result<(Vec<u8>, String)> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Invalid(format!("{} is not UTF-8", path.display())))?;
    Ok((bytes, text))
}

fn parse_dims_arg(spec: &str) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for part in spec.split(',').filter(|s| !s.is_empty()) {
        let (v, d) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected VERTEX=N, found {part:?}")))?;
        let n: usize = d
            .parse()
            .map_err(|_| Error::Invalid(format!("bad dimension {d:?} for vertex {v:?}")))?;
        out.insert(v.to_string(), n);
    }
    Ok(out)
}

fn complete_dims(
    doc: &QuiverDoc,
    override_spec: Option<&str>,
) -> Result<BTreeMap<String, usize>> {
    let mut dims = doc.dims.clone();
    if let Some(spec) = override_spec {
        for (v, d) in parse_dims_arg(spec)? {
            if !doc.shape.has_vertex(&v) {
                return Err(Error::Invalid(format!("dimension for unknown vertex {v:?}")));
            }
            dims.insert(v, d);
        }
    }
    let missing: Vec<&String> = doc
        .shape
        .vertices()
        .iter()
        .filter(|v| !dims.contains_key(*v))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Invalid(format!(
            "no dimension for {}; give dim lines or --dims",
            missing
                .iter()
                .map(|v| format!("{v:?}"))
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    Ok(dims)
}

fn parse_lambda_arg(
    spec: &str,
    shape: &SSet2,
    f: &FramingFn,
) -> Result<BTreeMap<String, f64>> {
    if let Some(x) = spec.strip_prefix("uniform:") {
        let value: f64 = x
            .parse()
            .map_err(|_| Error::Invalid(format!("bad uniform level {x:?}")))?;
        return Ok(uniform_lambda(shape, f, value));
    }
    let mut out = BTreeMap::new();
    for part in spec.split(',').filter(|s| !s.is_empty()) {
        let (v, x) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected VERTEX=LEVEL, found {part:?}")))?;
        let value: f64 = x
            .parse()
            .map_err(|_| Error::Invalid(format!("bad level {x:?} for vertex {v:?}")))?;
        if !shape.has_vertex(v) {
            return Err(Error::Invalid(format!("level for unknown vertex {v:?}")));
        }
        if f.is_framing(v) {
            return Err(Error::Invalid(format!("vertex {v:?} is framing and carries no level")));
        }
        out.insert(v.to_string(), value);
    }
    for v in shape.vertices() {
        if !f.is_framing(v) && !out.contains_key(v) {
            return Err(Error::Invalid(format!("no level for regular vertex {v:?}")));
        }
    }
    Ok(out)
}

fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn dims_json(dims: &BTreeMap<String, usize>) -> Value {
    let mut map = serde_json::Map::new();
    for (k, v) in dims {
        map.insert(k.clone(), json!(v));
    }
    Value::Object(map)
}

fn dispatch(cli: Cli, argv: Vec<String>) -> Result<Outcome> {
    match cli.cmd {
        Cmd::Build { what } => run_build(what, argv),
        Cmd::Count {
            input,
            prime,
            dims,
            census,
        } => run_count(&input, prime, dims.as_deref(), census, argv),
        Cmd::SolveNakajima {
            input,
            dims,
            lambda,
            tol,
            seed,
            max_iter,
            starts,
        } => run_solve(&input, dims.as_deref(), &lambda, tol, seed, max_iter, starts, argv),
        Cmd::CheckHiggs { input, tol } => run_check_higgs(&input, tol, argv),
        Cmd::Verify { suite, cases, seed } => run_verify(&suite, cases, seed, argv),
    }
}

fn run_build(what: BuildWhat, argv: Vec<String>) -> Result<Outcome> {
    let (input, out_path): (&PathBuf, &Option<PathBuf>) = match &what {
        BuildWhat::Tilde { input, out } => (input, out),
        BuildWhat::Double { input, out } => (input, out),
        BuildWhat::Frame { input, out, .. } => (input, out),
    };
    let (bytes, text) = read_text(input)?;
    let doc = parse_doc(&text)?;

    let built: QuiverDoc = match &what {
        BuildWhat::Tilde { .. } => {
            let tq = tilde(&doc.shape, &doc.framing)?;
            let framed: Vec<&String> = doc
                .shape
                .vertices()
                .iter()
                .filter(|v| doc.framing.is_framing(v))
                .collect();
            let framing = FramingFn::with_framing(&tq.shape, &framed)?;
            let mut dims = doc.dims.clone();
            for (v, d) in &doc.dims {
                if let Some(p) = tq.primed_vertex(v) {
                    dims.insert(p.clone(), *d);
                }
            }
            QuiverDoc::new(format!("{}_tilde", doc.name), tq.shape.clone(), framing, dims)?
        }
        BuildWhat::Double { .. } => {
            let d = double(&doc.shape)?;
            let framed: Vec<&String> = doc
                .shape
                .vertices()
                .iter()
                .filter(|v| doc.framing.is_framing(v))
                .collect();
            let framing = FramingFn::with_framing(&d.shape, &framed)?;
            QuiverDoc::new(format!("{}_double", doc.name), d.shape.clone(), framing, doc.dims.clone())?
        }
        BuildWhat::Frame { at, .. } => {
            if doc.shape.vertices().iter().any(|v| doc.framing.is_framing(v)) {
                return Err(Error::Invalid(
                    "the input already carries framing vertices".to_string(),
                ));
            }
            let (shape, framing) = match at {
                None => frame(&doc.shape)?,
                Some(list) => {
                    let names: Vec<&str> = list.split(',').filter(|s| !s.is_empty()).collect();
                    frame_at(&doc.shape, &names)?
                }
            };
            QuiverDoc::new(format!("{}_framed", doc.name), shape, framing, doc.dims.clone())?
        }
    };

    let out_text = print_doc(&built);
    if let Some(p) = out_path {
        std::fs::write(p, &out_text)?;
    }
    let payload = json!({
        "name": built.name,
        "shape": built.shape.to_json_value(),
        "framing": built.framing.to_json_value(),
        "dims": dims_json(&built.dims),
        "text": out_text,
        "counts": {
            "vertices": built.shape.vertex_count(),
            "edges": built.shape.edge_count(),
            "identity_edges": built.shape.identity_edge_count(),
            "triangles": built.shape.triangle_count(),
        },
    });
    let mut human = String::new();
    writeln!(
        human,
        "{}: {} vertices, {} edges (+{} identity), {} triangles",
        built.name,
        built.shape.vertex_count(),
        built.shape.edge_count(),
        built.shape.identity_edge_count(),
        built.shape.triangle_count()
    )
    .unwrap();
    if let Some(p) = out_path {
        writeln!(human, "wrote {}", p.display()).unwrap();
    }
    Ok(Outcome {
        report: Report::new(argv, payload).with_input(&bytes),
        human,
        failed: false,
    })
}

fn run_count(
    input: &Path,
    prime: u64,
    dims_spec: Option<&str>,
    census: bool,
    argv: Vec<String>,
) -> Result<Outcome> {
    let (bytes, text) = read_text(input)?;
    let doc = parse_doc(&text)?;
    let dims = complete_dims(&doc, dims_spec)?;
    let report = count_points(&doc.shape, &dims, prime, &doc.framing)?;

    let mut payload = json!({
        "prime": prime,
        "dims": dims_json(&dims),
        "rep_count": report.rep_count.to_string(),
        "gauge_order": report.gauge_order.to_string(),
        "stacky": rational_string(&report.stacky),
    });
    let mut human = String::new();
    writeln!(human, "representations over F{prime}: {}", report.rep_count).unwrap();
    writeln!(human, "gauge group order: {}", report.gauge_order).unwrap();
    writeln!(human, "stacky count: {}", rational_string(&report.stacky)).unwrap();

    if census {
        let c = orbit_census(&doc.shape, &dims, prime, &doc.framing)?;
        let orbits: Vec<Value> = c
            .orbits
            .iter()
            .map(|o| json!({"size": o.size, "stabilizer_order": o.stabilizer_order}))
            .collect();
        payload.as_object_mut().unwrap().insert(
            "census".to_string(),
            json!({
                "group_order": c.group_order,
                "orbit_count": c.orbits.len(),
                "orbits": orbits,
                "stacky": rational_string(&c.stacky),
            }),
        );
        writeln!(human, "orbits: {}", c.orbits.len()).unwrap();
    }
    Ok(Outcome {
        report: Report::new(argv, payload).with_input(&bytes),
        human,
        failed: false,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_solve(
    input: &Path,
    dims_spec: Option<&str>,
    lambda_spec: &str,
    tol: f64,
    seed: u64,
    max_iter: usize,
    starts: usize,
    argv: Vec<String>,
) -> Result<Outcome> {
    let (bytes, text) = read_text(input)?;
    let doc = parse_doc(&text)?;
    let dims = complete_dims(&doc, dims_spec)?;
    let lambda = parse_lambda_arg(lambda_spec, &doc.shape, &doc.framing)?;
    let mut config = SolveConfig::new(lambda.clone());
    config.tol = tol;
    config.seed = seed;
    config.max_iter = max_iter;
    config.starts = starts;
    let result = solve_moment_zero(&doc.shape, &doc.framing, &dims, &config)?;

    let mut rep_map = serde_json::Map::new();
    for (id, m) in result.rep.mats() {
        rep_map.insert(id.clone(), matrix_to_value(m));
    }
    let mut lambda_map = serde_json::Map::new();
    for (v, x) in &lambda {
        lambda_map.insert(v.clone(), json!(x));
    }
    let payload = json!({
        "dims": dims_json(&dims),
        "lambda": Value::Object(lambda_map),
        "tol": tol,
        "starts": starts,
        "max_iter": max_iter,
        "converged": result.converged,
        "residual": result.residual,
        "iterations": result.iterations,
        "jacobian_rank": result.jacobian_rank,
        "winning_seed": result.seed,
        "rep": Value::Object(rep_map),
    });
    let mut human = String::new();
    writeln!(
        human,
        "{} after {} steps: residual {:.3e} (jacobian rank {}, start seed {})",
        if result.converged { "converged" } else { "did not converge" },
        result.iterations,
        result.residual,
        result.jacobian_rank,
        result.seed
    )
    .unwrap();
    Ok(Outcome {
        report: Report::new(argv, payload).with_input(&bytes).with_seed(seed),
        human,
        failed: !result.converged,
    })
}

fn run_check_higgs(input: &Path, tol: f64, argv: Vec<String>) -> Result<Outcome> {
    let (bytes, text) = read_text(input)?;
    let datum = HiggsDatum::from_json_value(&parse_json(&text)?)?;
    let integrable = integrability_check(&datum, tol)?;
    let diagram = higgs_to_diagram(&datum)?;
    let diagnostics = validate_rep(&diagram, tol);
    let diagram_valid = diagnostics.is_empty();

    let payload = json!({
        "n": datum.n(),
        "m": datum.m(),
        "ring": datum.ring().name(),
        "tol": tol,
        "integrable": integrable,
        "diagram_valid": diagram_valid,
        "agree": integrable == diagram_valid,
        "diagnostics": diagnostics,
    });
    let mut human = String::new();
    writeln!(
        human,
        "n={} m={} over {}: {}",
        datum.n(),
        datum.m(),
        datum.ring().name(),
        if integrable { "integrable" } else { "not integrable" }
    )
    .unwrap();
    if integrable != diagram_valid {
        writeln!(human, "WARNING: diagram encoding disagrees with the direct check").unwrap();
    }
    Ok(Outcome {
        report: Report::new(argv, payload).with_input(&bytes),
        human,
        failed: false,
    })
}

fn run_verify(suite: &str, cases: usize, seed: u64, argv: Vec<String>) -> Result<Outcome> {
    let results = run_suite(suite, cases, seed)?;
    let mut any_failed = false;
    let mut entries = Vec::new();
    let mut human = String::new();
    for r in &results {
        if !r.passed() {
            any_failed = true;
        }
        entries.push(json!({
            "name": r.name,
            "cases": r.cases,
            "passed": r.passed(),
            "failures": r.failures,
        }));
        if r.passed() {
            writeln!(human, "{}: ok ({} cases)", r.name, r.cases).unwrap();
        } else {
            writeln!(
                human,
                "{}: FAILED ({} of {} cases)",
                r.name,
                r.failures.len(),
                r.cases
            )
            .unwrap();
            for f in &r.failures {
                writeln!(human, "  {f}").unwrap();
            }
        }
    }
    let payload = json!({
        "suite": suite,
        "cases": cases,
        "all_passed": !any_failed,
        "suites": entries,
    });
    Ok(Outcome {
        report: Report::new(argv, payload).with_seed(seed),
        human,
        failed: any_failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_and_lambda_specs_parse() {
        let d = parse_dims_arg("a=1,b=2").unwrap();
        assert_eq!(d["a"], 1);
        assert_eq!(d["b"], 2);
        assert!(parse_dims_arg("a").is_err());
        assert!(parse_dims_arg("a=x").is_err());

        let mut shape = SSet2::new();
        shape.add_vertex("v").unwrap();
        shape.add_vertex("w").unwrap();
        let f = FramingFn::with_framing(&shape, &["w"]).unwrap();
        let l = parse_lambda_arg("uniform:0.5", &shape, &f).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l["v"], 0.5);
        let l = parse_lambda_arg("v=-2.5", &shape, &f).unwrap();
        assert_eq!(l["v"], -2.5);
        assert!(parse_lambda_arg("w=1", &shape, &f).is_err(), "framing has no level");
        assert!(parse_lambda_arg("", &shape, &f).is_err(), "v is missing");
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
