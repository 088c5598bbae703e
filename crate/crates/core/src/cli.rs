//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the rendered report, so the binary only prints it.
//!
//! Exit codes: 0 on success, 1 when the input parses but fails validation,
//! 2 when the input is malformed.

use crate::generate::{random_levy_instance, random_sphere_skeleton, SkeletonParams};
use crate::hyperelliptic::{descend, descend_srs};
use crate::levy::{check_prop_levy, find_levy_cycles, lifting_graph, minimal_srs, LevyError};
use crate::obstruction::{
    decide_srs, is_f_stable, proof_constants, pullback_labels, transition_matrix, ConstantsInput, ObstructionDoc,
};
use crate::orbifold::{is_exceptional, lifts_to_torus, orbifold_signature};
use crate::skeleton::{
    extended_portrait, is_topological_polynomial, levy_berstein_criterion, portrait, post_critical_set, validate,
    CoverSkeleton, SkeletonDoc, Surface,
};
use crate::stability::{check_prop_stable, infinitely_stable_points};
use crate::torus::{
    classify, construct_srs, orbit, shortest_slope, teich_distance, translation_length, TeichPoint, TorusMapSpec,
};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::io::Read;

#[derive(Debug, Parser)]
#[command(name = "branchcover", version, about = "Analyse dynamical branched covers of the sphere and torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// `INPUT` is a file path, inline JSON, or `-` for standard input.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a skeleton document against every invariant.
    Validate { input: String },
    /// Portrait and extended portrait of a skeleton.
    Portrait { input: String },
    /// Orbifold labels, Euler characteristic and type.
    Orbifold { input: String },
    /// Stable and infinitely stable marked points.
    Stability { input: String },
    /// Transition matrix and strong reduction system decision.
    Obstruction { input: String },
    /// Lifting graph, Levy cycles and the minimal reduction system check.
    Levy { input: String },
    /// Classify a linear torus map.
    TorusClassify {
        input: String,
        #[arg(long, default_value_t = 10_000)]
        iterations: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Orbit of the pullback map on Teichmüller space.
    TorusOrbit {
        input: String,
        #[arg(long, default_value_t = 32)]
        steps: usize,
        /// Starting point as `re,im`.
        #[arg(long, default_value = "0,1")]
        start: String,
    },
    /// Quotient of a torus map by the elliptic involution.
    Descend { input: String },
    /// Constants of the compactness argument.
    Constants { input: String },
    /// Seeded random skeletons or obstructed polynomial instances.
    GenSkeleton {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Fixed degree; drawn from 2..=5 when absent.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 8)]
        max_marked: usize,
        #[arg(long)]
        polynomial: bool,
        /// Emit obstruction documents with a nesting forest and a polynomial
        /// skeleton instead of bare skeletons.
        #[arg(long)]
        levy: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub text: String,
}

enum Failure {
    Malformed { detail: String, path: String },
    Invalid(Value),
}

impl Failure {
    fn invalid(error: impl std::fmt::Display) -> Self {
        Failure::Invalid(json!({ "error": "validation failed", "detail": error.to_string() }))
    }
}

fn malformed(detail: impl Into<String>) -> Failure {
    Failure::Malformed { detail: detail.into(), path: String::new() }
}

fn read_input(input: &str) -> Result<String, Failure> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| malformed(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(input).map_err(|e| malformed(format!("cannot read {input}: {e}")))
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        let part = match seg {
            Segment::Seq { index } => index.to_string(),
            Segment::Map { key } => key.clone(),
            Segment::Enum { variant } => variant.clone(),
            Segment::Unknown => "?".to_string(),
        };
        out.push_str(&part.replace('~', "~0").replace('/', "~1"));
    }
    out
}

fn load<T: DeserializeOwned>(input: &str) -> Result<T, Failure> {
    let text = read_input(input)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| malformed(format!("invalid JSON at line {} column {}: {e}", e.line(), e.column())))?;
    serde_path_to_error::deserialize(value).map_err(|e| Failure::Malformed {
        path: json_pointer(e.path()),
        detail: e.inner().to_string(),
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn merge(base: Value, extra: Value) -> Value {
    match (base, extra) {
        (Value::Object(mut a), Value::Object(b)) => {
            a.extend(b);
            Value::Object(a)
        }
        (a, _) => a,
    }
}

fn load_skeleton(input: &str) -> Result<CoverSkeleton, Failure> {
    let doc: SkeletonDoc = load(input)?;
    let report = validate(&doc);
    if !report.is_valid() {
        return Err(Failure::Invalid(json!({ "valid": false, "violations": to_value(&report.violations) })));
    }
    Ok(CoverSkeleton::from_doc(&doc).expect("validated"))
}

fn cmd_validate(input: &str) -> Result<Value, Failure> {
    let doc: SkeletonDoc = load(input)?;
    let report = validate(&doc);
    let out = json!({ "valid": report.is_valid(), "violations": to_value(&report.violations) });
    if report.is_valid() {
        Ok(out)
    } else {
        Err(Failure::Invalid(out))
    }
}

fn cmd_portrait(input: &str) -> Result<Value, Failure> {
    let s = load_skeleton(input)?;
    Ok(json!({
        "portrait": to_value(&portrait(&s)),
        "extended_portrait": to_value(&extended_portrait(&s)),
        "post_critical": to_value(&post_critical_set(&s)),
        "topological_polynomial": to_value(&is_topological_polynomial(&s)),
        "levy_berstein": levy_berstein_criterion(&s),
    }))
}

fn cmd_orbifold(input: &str) -> Result<Value, Failure> {
    let s = load_skeleton(input)?;
    let mut out = merge(to_value(&orbifold_signature(&s)), json!({ "exceptional": is_exceptional(&s) }));
    if s.surface() == Surface::Sphere {
        let lift = lifts_to_torus(&s).expect("sphere");
        out = merge(out, json!({ "lifts_to_torus": lift.lifts, "branched_cone_points": lift.branched_cone_points }));
    }
    Ok(out)
}

fn cmd_stability(input: &str) -> Result<Value, Failure> {
    let s = load_skeleton(input)?;
    let report = infinitely_stable_points(&s);
    let check = match check_prop_stable(&s) {
        Ok(v) => to_value(&v),
        Err(e) => json!({ "skipped": e.to_string() }),
    };
    Ok(merge(to_value(&report), json!({ "count_check": check })))
}

fn cmd_obstruction(input: &str) -> Result<Value, Failure> {
    let doc: ObstructionDoc = load(input)?;
    let mc = doc.multicurve();
    if let Some(d) = doc.degree {
        transition_matrix(&mc, &doc.lifting, d).map_err(Failure::invalid)?;
    }
    let report = decide_srs(&mc, &doc.lifting).map_err(Failure::invalid)?;
    let pullback = pullback_labels(&mc, &doc.lifting).map_err(Failure::invalid)?;
    let stable = is_f_stable(&mc, &doc.lifting).map_err(Failure::invalid)?;
    Ok(merge(to_value(&report), json!({ "f_stable": stable, "pullback": to_value(&pullback) })))
}

fn cmd_levy(input: &str) -> Result<Value, Failure> {
    let doc: ObstructionDoc = load(input)?;
    let mc = doc.multicurve();
    let graph = lifting_graph(&mc, &doc.lifting).map_err(Failure::invalid)?;
    let cycles = find_levy_cycles(&graph);
    let minimal = match minimal_srs(&mc, &doc.lifting) {
        Ok(m) => to_value(&m),
        Err(LevyError::Unobstructed) => Value::Null,
        Err(e) => return Err(Failure::invalid(e)),
    };
    let check = match &doc.skeleton {
        Some(sk) => {
            let report = validate(sk);
            if !report.is_valid() {
                return Err(Failure::Invalid(json!({ "valid": false, "violations": to_value(&report.violations) })));
            }
            let skeleton = CoverSkeleton::from_doc(sk).expect("validated");
            match check_prop_levy(&mc, &doc.lifting, &skeleton) {
                Ok(v) => to_value(&v),
                Err(e) => json!({ "skipped": e.to_string() }),
            }
        }
        None => json!({ "skipped": "no skeleton supplied" }),
    };
    Ok(json!({
        "lifting_graph": to_value(&graph),
        "levy_cycles": to_value(&cycles),
        "minimal_srs": minimal,
        "levy_check": check,
    }))
}

fn load_torus(input: &str) -> Result<TorusMapSpec, Failure> {
    let spec: TorusMapSpec = load(input)?;
    spec.validate().map_err(Failure::invalid)?;
    Ok(spec)
}

fn cmd_torus_classify(input: &str, iterations: usize, tolerance: f64) -> Result<Value, Failure> {
    let spec = load_torus(input)?;
    let verdict = classify(&spec).map_err(Failure::invalid)?;
    let length = translation_length(&spec, iterations, tolerance).map_err(Failure::invalid)?;
    let srs = construct_srs(&spec).ok();
    Ok(merge(
        to_value(&verdict),
        json!({ "flags": verdict.flags(), "translation": to_value(&length), "srs": to_value(&srs) }),
    ))
}

fn parse_point(s: &str) -> Result<TeichPoint, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Vec<f64> = parts.iter().filter_map(|p| p.parse().ok()).collect();
    if parts.len() != 2 || nums.len() != 2 {
        return Err(malformed(format!("--start expects re,im, got {s:?}")));
    }
    TeichPoint::new(nums[0], nums[1]).map_err(Failure::invalid)
}

fn cmd_torus_orbit(input: &str, steps: usize, start: &str) -> Result<Value, Failure> {
    let spec = load_torus(input)?;
    let start = parse_point(start)?;
    let points: Vec<Value> = orbit(&spec, start, steps)
        .into_iter()
        .enumerate()
        .map(|(k, tau)| {
            let (p, q, modulus) = shortest_slope(tau);
            json!({
                "k": k,
                "re": tau.re,
                "im": tau.im,
                "distance_from_start": teich_distance(start, tau),
                "max_slope": { "p": p, "q": q, "modulus": modulus },
            })
        })
        .collect();
    Ok(json!({ "matrix": spec.matrix, "start": to_value(&start), "steps": steps, "points": points }))
}

fn cmd_descend(input: &str) -> Result<Value, Failure> {
    let spec = load_torus(input)?;
    let e = descend(&spec).map_err(Failure::invalid)?;
    let srs = descend_srs(&spec).ok().map(|s| to_value(&s.doc()));
    Ok(merge(
        to_value(&e),
        json!({
            "orbifold": to_value(&orbifold_signature(&e.skeleton)),
            "exceptional": is_exceptional(&e.skeleton),
            "srs": srs,
        }),
    ))
}

fn cmd_constants(input: &str) -> Result<Value, Failure> {
    let c: ConstantsInput = load(input)?;
    proof_constants(&c).map(|p| to_value(&p)).map_err(Failure::invalid)
}

fn cmd_gen(seed: u64, count: usize, degree: Option<u32>, max_marked: usize, polynomial: bool, levy: bool) -> Value {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let docs: Vec<Value> = (0..count)
        .map(|_| {
            if levy {
                let inst = random_levy_instance(&mut rng, 5);
                let mut doc = ObstructionDoc::from_parts(&inst.multicurve, &inst.lifting);
                doc.degree = Some(inst.skeleton.degree());
                doc.skeleton = Some(inst.skeleton.to_doc());
                to_value(&doc)
            } else {
                let d = degree.unwrap_or_else(|| rng.gen_range(2..=5));
                let mut params = SkeletonParams::new(d, max_marked);
                if polynomial {
                    params = params.polynomial();
                }
                to_value(&random_sphere_skeleton(&mut rng, params).to_doc())
            }
        })
        .collect();
    Value::Array(docs)
}

/// Rounds every float to 12 significant digits so that reports are
/// byte-stable across platforms.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let r: f64 = format!("{x:.11e}").parse().unwrap();
            *v = serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn render_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(x, &p, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, x) in items.iter().enumerate() {
                render_text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn render(mut v: Value, format: Format) -> String {
    round_floats(&mut v);
    match format {
        Format::Json => serde_json::to_string_pretty(&v).unwrap() + "\n",
        Format::Text => {
            let mut out = String::new();
            render_text(&v, "", &mut out);
            out
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Validate { input } => cmd_validate(input),
        Command::Portrait { input } => cmd_portrait(input),
        Command::Orbifold { input } => cmd_orbifold(input),
        Command::Stability { input } => cmd_stability(input),
        Command::Obstruction { input } => cmd_obstruction(input),
        Command::Levy { input } => cmd_levy(input),
        Command::TorusClassify { input, iterations, tolerance } => cmd_torus_classify(input, *iterations, *tolerance),
        Command::TorusOrbit { input, steps, start } => cmd_torus_orbit(input, *steps, start),
        Command::Descend { input } => cmd_descend(input),
        Command::Constants { input } => cmd_constants(input),
        Command::GenSkeleton { seed, count, degree, max_marked, polynomial, levy } => {
            Ok(cmd_gen(*seed, *count, *degree, *max_marked, *polynomial, *levy))
        }
    };
    let (code, value) = match result {
        Ok(v) => (0, v),
        Err(Failure::Invalid(v)) => (1, v),
        Err(Failure::Malformed { detail, path }) => {
            let mut m = Map::new();
            m.insert("error".into(), "malformed input".into());
            m.insert("detail".into(), detail.into());
            m.insert("path".into(), path.into());
            (2, Value::Object(m))
        }
    };
    Output { code, text: render(value, cli.format) }
}
