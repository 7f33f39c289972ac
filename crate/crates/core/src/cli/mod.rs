//! Command-line front end.
//!
//! Every command reads JSON files or flags, runs one computation and
//! writes a report. JSON reports are wrapped in an envelope recording the
//! command, bound and seed, and contain nothing else that varies between
//! runs, so the same arguments reproduce the same bytes.
//!
//! Exit status is 0 on success, 1 on a domain error (the diagnostic is a
//! JSON object on stdout) and 2 when a `verify` suite fails.

mod svg;
mod verify;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::cones::{ConeSpec, HyperplaneSpec};
use crate::demazure::{roots_within, BoxPoints};
use crate::error::{Error, Result};
use crate::lattice::{parse_rational, LatticeVector, Rational};
use crate::lnd::{decompose, nilpotency_oracle, AlgebraElement, Derivation, DerivationFile, Descriptor};
use crate::restriction::{classify, cremona_roots, fiber, SubtorusRestriction};
use crate::surface::{ah_invariants, classify_surface, lambda_members, two_parameter_family, CaseTag, SurfaceData};

pub use verify::{run_suite, CheckLine, SuiteReport, SUITES};

/// Environment variable overriding the worker thread count.
pub const THREADS_VAR: &str = "TORIC_ROOTS_THREADS";

#[derive(Parser, Debug, Clone)]
#[command(name = "toric-roots", version, about = "Demazure roots, subtorus restriction and LNDs of toric varieties")]
pub struct RunConfig {
    /// Seed for randomized suites; recorded in every JSON report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Demazure roots of a cone within a sup-norm box.
    Roots {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        bound: u32,
        #[command(flatten)]
        format: Format,
    },
    /// Relative position, ray injectivity and fibers of the restriction.
    Classify {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        subtorus: PathBuf,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        json: bool,
    },
    /// The fiber of the restriction over one T-root.
    Fibers {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        subtorus: PathBuf,
        /// Comma-separated coordinates, e.g. "3,-1".
        #[arg(long, allow_hyphen_values = true)]
        t_root: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[arg(long)]
        json: bool,
    },
    /// Table row, Λ and polyhedral-divisor data of a toric surface.
    #[command(allow_negative_numbers = true)]
    Surface {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, default_value_t = 10)]
        bound: u32,
        /// Emit the two-parameter derivations over Λ (Case 3.3 only).
        #[arg(long)]
        family: bool,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
        #[command(flatten)]
        format: Format,
    },
    /// Root vectors of the unimodular Cremona group for x1 ⋯ xn = 1.
    Cremona {
        #[arg(long)]
        n: usize,
        /// 0 lists only the partial derivatives.
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        json: bool,
    },
    /// Derivations given by JSON descriptors.
    Lnd {
        #[command(subcommand)]
        action: LndAction,
    },
    /// Run a named property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum LndAction {
    /// Apply a power of the derivation to an element.
    Apply {
        #[arg(long)]
        derivation: PathBuf,
        /// JSON file holding an algebra element.
        #[arg(long, conflicts_with = "character")]
        element: Option<PathBuf>,
        /// A single character, e.g. "2,0,1".
        #[arg(long, allow_hyphen_values = true)]
        character: Option<String>,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long)]
        json: bool,
    },
    /// Iterate the derivation on probes until they vanish.
    Nilpotency {
        #[arg(long)]
        derivation: PathBuf,
        /// JSON list of characters; defaults to monoid points in the box.
        #[arg(long)]
        probes: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long)]
        json: bool,
    },
    /// Split into homogeneous pieces and test the vertex pieces.
    Decompose {
        #[arg(long)]
        derivation: PathBuf,
        /// Generators of the weight monoid, e.g. "1,0;0,1".
        #[arg(long, allow_hyphen_values = true)]
        generators: Option<String>,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone, Copy, Default)]
#[group(multiple = false)]
pub struct Format {
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub svg: bool,
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<u32>,
    result: T,
}

fn envelope<T: Serialize>(command: &str, seed: u64, bound: Option<u32>, result: T) -> String {
    let env = Envelope { command, seed, bound, result };
    serde_json::to_string_pretty(&env).expect("reports serialize") + "\n"
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Parses "1,-2,3" into a vector.
pub fn parse_vector(s: &str) -> Result<LatticeVector> {
    let coords = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Input(format!("bad coordinate {t:?}: {e}"))))
        .collect::<Result<Vec<i64>>>()?;
    if coords.is_empty() {
        return Err(Error::Input("empty vector".into()));
    }
    Ok(LatticeVector::from(coords.as_slice()))
}

/// Parses "1,0;0,1" into a list of vectors.
pub fn parse_vectors(s: &str) -> Result<Vec<LatticeVector>> {
    s.split(';').map(parse_vector).collect()
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::RankMismatch { .. } => "rank_mismatch",
        Error::ZeroVector => "zero_vector",
        Error::NotCoprime(..) => "not_coprime",
        Error::NotCorankOne { .. } => "not_corank_one",
        Error::DependentBasis => "dependent_basis",
        Error::NotSaturated(_) => "not_saturated",
        Error::NotFullDimensional { .. } => "not_full_dimensional",
        Error::NotPointed => "not_pointed",
        Error::EmptyCone => "empty_cone",
        Error::NotARoot(_) => "not_a_root",
        Error::OutsideMonoid(_) => "outside_monoid",
        Error::NotGenerated(_) => "not_generated",
        Error::Precondition(_) => "precondition",
        Error::InconsistentDecomposition(_) => "inconsistent_decomposition",
        Error::UnsupportedCorank(_) => "unsupported_corank",
        Error::InvalidSurface(_) => "invalid_surface",
        Error::NotInteriorCase => "not_interior_case",
        Error::Input(_) => "input",
    }
}

/// The machine-readable diagnostic for a domain error.
pub fn diagnostic(e: &Error) -> String {
    serde_json::to_string_pretty(&json!({ "error": error_kind(e), "message": e.to_string() })).expect("json") + "\n"
}

pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(config) {
        Ok(out) => out,
        Err(e) => Outcome { code: 1, stdout: diagnostic(&e) },
    }
}

fn dispatch(config: &RunConfig) -> Result<Outcome> {
    let seed = config.seed;
    match &config.command {
        Command::Roots { cone, bound, format } => {
            let c = read_json::<ConeSpec>(cone)?.build()?;
            let roots = roots_within(&c, *bound);
            if format.svg {
                return Ok(Outcome::ok(svg::root_diagram(&c, &roots, *bound)?));
            }
            if format.json {
                let result = json!({
                    "cone": ConeSpec::from(&c),
                    "dual_facets": c.facets(),
                    "roots": roots,
                });
                return Ok(Outcome::ok(envelope("roots", seed, Some(*bound), result)));
            }
            let mut out = String::new();
            for ray in c.rays() {
                let of_ray: Vec<String> = roots.iter().filter(|r| r.ray() == ray).map(|r| r.e().to_string()).collect();
                let _ = writeln!(out, "ray {ray}: {} roots", of_ray.len());
                for e in of_ray {
                    let _ = writeln!(out, "  {e}");
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Classify { cone, subtorus, bound, json } => {
            let c = read_json::<ConeSpec>(cone)?.build()?;
            let s = SubtorusRestriction::from_spec(&read_json::<HyperplaneSpec>(subtorus)?, c.rank())?;
            let report = classify(&s, &c, *bound)?;
            if *json {
                return Ok(Outcome::ok(envelope("classify", seed, Some(*bound), report)));
            }
            let mut out = String::new();
            let _ = writeln!(out, "position: {}", report.position.name());
            for r in &report.rays {
                let _ = writeln!(out, "ray {}: <n, m_T> = {}, injective: {}", r.ray, r.pairing_with_m_t, r.injective);
            }
            let _ = writeln!(out, "bijective on roots in the box: {}", report.bijective);
            for f in &report.fibers {
                let _ = writeln!(out, "  {} <- {} roots ({:?})", f.t_root, f.preimages.len(), f.cardinality_class);
            }
            Ok(Outcome::ok(out))
        }
        Command::Fibers { cone, subtorus, t_root, bound, json } => {
            let c = read_json::<ConeSpec>(cone)?.build()?;
            let s = SubtorusRestriction::from_spec(&read_json::<HyperplaneSpec>(subtorus)?, c.rank())?;
            let report = fiber(&s, &c, &parse_vector(t_root)?, *bound)?;
            if *json {
                return Ok(Outcome::ok(envelope("fibers", seed, Some(*bound), report)));
            }
            let mut out = format!("fiber over {}: {:?}\n", report.t_root, report.cardinality_class);
            let _ = writeln!(out, "root vectors: {:?}", report.root_vector_dimension);
            for root in &report.preimages {
                let _ = writeln!(out, "  {} (ray {})", root.e(), root.ray());
            }
            Ok(Outcome::ok(out))
        }
        Command::Surface { a, b, r, q, bound, family, alpha, beta, format } => {
            let s = SurfaceData::from_i64(*a, *b, *r, *q)?;
            surface(&s, *bound, *family, (alpha, beta), *format, seed)
        }
        Command::Cremona { n, bound, json } => {
            let roots = cremona_roots(*n, *bound)?;
            if *json {
                return Ok(Outcome::ok(envelope("cremona", seed, Some(*bound), roots)));
            }
            let mut out = String::new();
            for r in &roots {
                let _ = writeln!(out, "{}  [{}]", r.derivation, r.character_string);
            }
            Ok(Outcome::ok(out))
        }
        Command::Lnd { action } => lnd(action, seed),
        Command::Verify { suite, bound, json } => {
            let report = run_suite(suite, *bound, seed)?;
            let code = if report.passed { 0 } else { 2 };
            let stdout = if *json {
                envelope("verify", seed, Some(*bound), &report)
            } else {
                report.to_text()
            };
            Ok(Outcome { code, stdout })
        }
    }
}

fn surface(s: &SurfaceData, bound: u32, family: bool, params: (&str, &str), format: Format, seed: u64) -> Result<Outcome> {
    let case = classify_surface(s);
    if format.svg {
        return Ok(Outcome::ok(svg::t_root_line(&case, bound)));
    }
    let interior = case.lambda.is_some();
    let members = if interior { Some(lambda_members(s, bound)?) } else { None };
    let invariants = if interior { Some(ah_invariants(s)?) } else { None };
    let mut derivations = Vec::new();
    if family {
        if case.tag != CaseTag::Case33 {
            return Err(Error::Precondition(format!("the two-parameter family needs Case33, got {:?}", case.tag)));
        }
        let (alpha, beta): (Rational, Rational) = (parse_rational(params.0)?, parse_rational(params.1)?);
        for e in &members.as_ref().expect("Case33 is interior").members {
            let d = two_parameter_family(s, e, alpha.clone(), beta.clone())?;
            derivations.push(json!({ "t_root": e.to_string(), "derivation": d.to_spec() }));
        }
    }
    if format.json {
        let mut result = json!({ "case": case, "lambda_members": members, "invariants": invariants });
        if family {
            result["family"] = json!(derivations);
        }
        return Ok(Outcome::ok(envelope("surface", seed, Some(bound), result)));
    }
    let d = &case.data;
    let mut out = format!("cone{{(1,0),({},{})}}, line ({},{}): {:?}\n", d.a, d.b, d.r, d.q, case.tag);
    for row in &case.rows {
        let _ = writeln!(
            out,
            "  {:?}: root vectors {:?}, fiber {:?}, all homogeneous: {}",
            row.degrees, row.root_vectors, row.fiber, row.all_homogeneous
        );
    }
    if let Some(m) = &members {
        let shown: Vec<String> = m.members.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "Λ within {bound}: {{{}}}", shown.join(", "));
    }
    if let Some(inv) = &invariants {
        let _ = writeln!(out, "p1 = {}, p2 = {}", inv.p1, inv.p2);
    }
    for entry in &derivations {
        let _ = writeln!(out, "family over {}", entry["t_root"].as_str().unwrap_or_default());
    }
    Ok(Outcome::ok(out))
}

fn lnd(action: &LndAction, seed: u64) -> Result<Outcome> {
    match action {
        LndAction::Apply { derivation, element, character, power, json } => {
            let d = read_json::<DerivationFile>(derivation)?.build()?;
            let f = match (element, character) {
                (Some(path), None) => read_json::<AlgebraElement>(path)?,
                (None, Some(c)) => AlgebraElement::character(parse_vector(c)?),
                _ => return Err(Error::Input("give exactly one of --element and --character".into())),
            };
            let image = d.apply_power(&f, *power)?;
            if *json {
                let result = json!({ "input": f, "power": power, "image": image });
                return Ok(Outcome::ok(envelope("lnd apply", seed, None, result)));
            }
            Ok(Outcome::ok(format!("{}\n", image.to_polynomial_string())))
        }
        LndAction::Nilpotency { derivation, probes, bound, max_iter, json } => {
            let d = read_json::<DerivationFile>(derivation)?.build()?;
            let chars: Vec<LatticeVector> = match probes {
                Some(p) => read_json(p)?,
                None => BoxPoints::new(d.cone().rank(), *bound).filter(|m| d.cone().dual_contains(m)).collect(),
            };
            let elements: Vec<AlgebraElement> = chars.into_iter().map(AlgebraElement::character).collect();
            let verdict = nilpotency_oracle(&d, &elements, *max_iter)?;
            if *json {
                let result = json!({
                    "probes": elements.len(),
                    "max_iter": max_iter,
                    "verdict": verdict,
                    "known_locally_nilpotent": d.known_locally_nilpotent(),
                });
                return Ok(Outcome::ok(envelope("lnd nilpotency", seed, Some(*bound), result)));
            }
            Ok(Outcome::ok(format!("{verdict:?} on {} probes\n", elements.len())))
        }
        LndAction::Decompose { derivation, generators, max_iter, json } => {
            let d = read_json::<DerivationFile>(derivation)?.build()?;
            let gens = match generators {
                Some(g) => parse_vectors(g)?,
                None => default_generators(&d)?,
            };
            let dec = decompose(&d, &gens, *max_iter)?;
            if *json {
                return Ok(Outcome::ok(envelope("lnd decompose", seed, None, dec.report())));
            }
            let mut out = String::new();
            for piece in dec.report().pieces {
                let tag = if piece.vertex { " (vertex)" } else { "" };
                let _ = writeln!(out, "degree {}{tag}: {:?}", piece.degree, piece.verdict);
            }
            Ok(Outcome::ok(out))
        }
    }
}

/// Table generators, or the unit vectors when the cone is an orthant.
fn default_generators(d: &Derivation) -> Result<Vec<LatticeVector>> {
    if let Descriptor::Table(t) = d.descriptor() {
        return Ok(t.generators().to_vec());
    }
    let n = d.cone().rank();
    let units: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    if d.cone().rays().len() == n && units.iter().all(|u| d.cone().rays().contains(u)) {
        return Ok(units);
    }
    Err(Error::Input("pass --generators for a cone that is not an orthant".into()))
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Entry point of the `toric-roots` binary.
pub fn main() -> ExitCode {
    configure_threads();
    let config = RunConfig::parse();
    let outcome = run(&config);
    print!("{}", outcome.stdout);
    ExitCode::from(outcome.code)
}
