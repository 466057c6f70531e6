use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use ringcover::cover::{DEFAULT_SIGMA_CAP, Sigma};
use ringcover::dsl::{canonical_print, eval, parse, RingExpr, SpecError};
use ringcover::ideal::{decompose, jacobson_radical, local_data};
use ringcover::iso::{find_isomorphism, DEFAULT_ISO_BUDGET};
use ringcover::sn::{in_sn, FailureReason, QuotientSigma};
use ringcover::subring::DEFAULT_LATTICE_CAP;
use ringcover::{Limits, RingError, RingTable};
use serde_json::json;
use thiserror::Error;

use crate::cache::LatticeCache;
use crate::engine::Engine;
use crate::manifest::{check, parse_manifest, ManifestError, DEFAULT_MANIFEST};
use crate::report::{coords_of, format_set, Report, RingSummary, Timing};

const LARGE_RING: usize = 128;

#[derive(Parser, Debug)]
#[command(name = "ringcover", version, about = "Covering numbers and subring structure of finite unital rings")]
struct Cli {
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Directory for cached subring lattices
    #[arg(long, global = true, env = "RINGCOVER_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Maximum number of subrings enumerated
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_CAP)]
    max_lattice: usize,
    /// Largest covering number searched for
    #[arg(long, global = true, default_value_t = DEFAULT_SIGMA_CAP)]
    sigma_cap: usize,
    /// Worker threads for verify-paper
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized consistency checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, characteristic, radical, locality and decomposition
    Info { spec: String },
    /// Every subring
    Subrings { spec: String },
    /// The maximal subrings
    Maximal { spec: String },
    /// The covering number with a minimum cover
    Sigma { spec: String },
    /// Membership in S(N)
    Sn { n: usize, spec: String },
    /// Quotient by the ideal generated by coordinate vectors, e.g. "[[0,1,0]]"
    Quotient { spec: String, gens: String },
    /// Isomorphism test
    Iso { spec1: String, spec2: String },
    /// Check every claim of a manifest
    VerifyPaper {
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl From<ringcover::ParseError> for CliError {
    fn from(e: ringcover::ParseError) -> Self {
        CliError::Spec(e.into())
    }
}

/// Reads a spec given inline or as a path to a `.ring` file.
fn read_spec(arg: &str) -> Result<RingExpr, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    Ok(parse(&text)?)
}

fn load(arg: &str) -> Result<(RingExpr, RingTable), CliError> {
    let expr = read_spec(arg)?;
    let ring = eval(&expr)?;
    if ring.order() > LARGE_RING {
        eprintln!(
            "warning: ring of order {} is large; enumeration may be slow",
            ring.order()
        );
    }
    Ok((expr, ring))
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn engine(cli: &Cli) -> Result<Engine, CliError> {
    let cache = match &cli.cache_dir {
        Some(dir) => Some(LatticeCache::new(dir)?),
        None => None,
    };
    Ok(Engine {
        limits: Limits {
            lattice_cap: cli.max_lattice,
            sigma_cap: cli.sigma_cap,
        },
        cache,
        seed: cli.seed,
    })
}

fn emit(out: &mut dyn Write, report: &Report) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(report).expect("report serializes"))?;
    Ok(())
}

fn report(expr: &RingExpr, ring: &RingTable, result: serde_json::Value, start: Instant) -> Report {
    Report {
        spec: canonical_print(expr),
        ring: RingSummary::of(ring),
        result,
        witness: None,
        timing: start.elapsed().into(),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let engine = engine(cli)?;
    let start = Instant::now();
    match &cli.command {
        Command::Info { spec } => {
            let (expr, ring) = load(spec)?;
            let rad = jacobson_radical(&ring);
            let local = local_data(&ring);
            let dec = decompose(&ring)?;
            let factor_orders: Vec<usize> = dec.factors.iter().map(RingTable::order).collect();
            if cli.json {
                let result = json!({
                    "units": ring.units().len(),
                    "radical": { "order": rad.radical.len(), "nilpotency_index": rad.nilpotency_index },
                    "local": local.is_local,
                    "residue_field_order": local.is_local.then_some(local.residue_order),
                    "decomposition": factor_orders,
                });
                emit(out, &report(&expr, &ring, result, start))?;
            } else {
                writeln!(out, "spec: {}", canonical_print(&expr))?;
                writeln!(out, "order: {}", ring.order())?;
                writeln!(out, "characteristic: {}", ring.characteristic())?;
                writeln!(out, "commutative: {}", ring.is_commutative())?;
                writeln!(out, "units: {}", ring.units().len())?;
                writeln!(
                    out,
                    "radical: order {}, nilpotency index {}",
                    rad.radical.len(),
                    rad.nilpotency_index
                )?;
                if local.is_local {
                    writeln!(out, "local: true, residue field of order {}", local.residue_order)?;
                } else {
                    writeln!(out, "local: false")?;
                }
                writeln!(out, "decomposition: {} factor(s) of orders {factor_orders:?}", dec.factors.len())?;
            }
            Ok(0)
        }
        Command::Subrings { spec } | Command::Maximal { spec } => {
            let (expr, ring) = load(spec)?;
            let lattice = engine.lattice(&ring)?;
            let sets = if matches!(cli.command, Command::Maximal { .. }) {
                lattice.maximal_subrings()
            } else {
                lattice.subrings().to_vec()
            };
            if cli.json {
                let mut r = report(&expr, &ring, json!({ "count": sets.len() }), start);
                r.witness = Some(sets.iter().map(|s| coords_of(&ring, s)).collect());
                emit(out, &r)?;
            } else {
                writeln!(out, "{} subrings", sets.len())?;
                for s in &sets {
                    writeln!(out, "[{}] {}", s.len(), format_set(&ring, s))?;
                }
            }
            Ok(0)
        }
        Command::Sigma { spec } => {
            let (expr, ring) = load(spec)?;
            let res = engine.sigma(&ring)?;
            if cli.json {
                let result = json!({
                    "sigma": res.sigma.finite(),
                    "coverable": res.sigma != Sigma::NotCoverable,
                    "nodes": res.stats.nodes,
                    "intersection_order": res.intersection.as_ref().map(|s| s.len()),
                });
                let mut r = report(&expr, &ring, result, start);
                if !res.witness.is_empty() {
                    r.witness = Some(res.witness.iter().map(|s| coords_of(&ring, s)).collect());
                }
                emit(out, &r)?;
            } else {
                writeln!(out, "sigma = {}", res.sigma)?;
                for s in &res.witness {
                    writeln!(out, "  [{}] {}", s.len(), format_set(&ring, s))?;
                }
                if let Some(s) = &res.intersection {
                    writeln!(out, "intersection: order {}, index {}", s.len(), ring.order() / s.len())?;
                }
            }
            Ok(0)
        }
        Command::Sn { n, spec } => {
            let (expr, ring) = load(spec)?;
            let v = in_sn(&ring, *n, &engine.limits)?;
            let checks: Vec<serde_json::Value> = v
                .minimal_ideal_checks
                .iter()
                .map(|c| {
                    let (exact, more_than) = match c.quotient_sigma {
                        QuotientSigma::Exact(s) => (Some(s.to_string()), None),
                        QuotientSigma::GreaterThan(m) => (None, Some(m)),
                    };
                    json!({ "ideal_order": c.ideal.len(), "quotient_sigma": exact, "quotient_sigma_exceeds": more_than })
                })
                .collect();
            let reason = v.failure_reason.as_ref().map(|r| match r {
                FailureReason::WrongSigma => "wrong sigma".to_string(),
                FailureReason::QuotientAlsoSmall(i) => {
                    format!("quotient by an ideal of order {} has sigma <= {n}", i.len())
                }
            });
            if cli.json {
                let result = json!({
                    "n": n,
                    "member": v.member,
                    "sigma": v.sigma.sigma.to_string(),
                    "minimal_ideal_checks": checks,
                    "failure_reason": reason,
                });
                emit(out, &report(&expr, &ring, result, start))?;
            } else {
                writeln!(out, "member = {}", v.member)?;
                writeln!(out, "sigma = {}", v.sigma.sigma)?;
                for c in &v.minimal_ideal_checks {
                    let q = match c.quotient_sigma {
                        QuotientSigma::Exact(s) => s.to_string(),
                        QuotientSigma::GreaterThan(m) => format!("> {m}"),
                    };
                    writeln!(out, "  minimal ideal of order {}: quotient sigma {q}", c.ideal.len())?;
                }
                if let Some(r) = reason {
                    writeln!(out, "reason: {r}")?;
                }
            }
            Ok(if v.member { 0 } else { 1 })
        }
        Command::Quotient { spec, gens } => {
            let base = read_spec(spec)?;
            let text = format!("Quot({}, {gens})", canonical_print(&base));
            let expr = parse(&text)?;
            let ring = eval(&expr)?;
            let table = RingExpr::Table {
                shape: ring.shape().to_vec(),
                consts: ring.struct_consts(),
                unit: ring.unit_coords().to_vec(),
            };
            if cli.json {
                let result = json!({ "table": canonical_print(&table) });
                emit(out, &report(&expr, &ring, result, start))?;
            } else {
                writeln!(out, "order: {}", ring.order())?;
                writeln!(out, "table: {}", canonical_print(&table))?;
            }
            Ok(0)
        }
        Command::Iso { spec1, spec2 } => {
            let (expr, a) = load(spec1)?;
            let (other, b) = load(spec2)?;
            let map = find_isomorphism(&a, &b, DEFAULT_ISO_BUDGET)?;
            let iso = map.is_some();
            if cli.json {
                let result = json!({
                    "isomorphic": iso,
                    "other_spec": canonical_print(&other),
                    "other_ring": RingSummary::of(&b),
                });
                let mut r = report(&expr, &a, result, start);
                if let Some(m) = map {
                    // images of the basis generators
                    r.witness = Some(vec![(0..a.rank()).map(|i| b.coords(m[a.generator(i).index()])).collect()]);
                }
                emit(out, &r)?;
            } else {
                writeln!(out, "isomorphic = {iso}")?;
            }
            Ok(if iso { 0 } else { 1 })
        }
        Command::VerifyPaper { manifest } => verify(cli, &engine, manifest.as_deref(), out),
    }
}

fn verify(cli: &Cli, engine: &Engine, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let (name, text) = match path {
        Some(p) => (p.display().to_string(), std::fs::read_to_string(p)?),
        None => ("default".to_string(), DEFAULT_MANIFEST.to_string()),
    };
    let entries = parse_manifest(&text)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let start = Instant::now();
    let rows: Vec<_> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| {
                let t = Instant::now();
                let o = check(e, engine);
                (o, t.elapsed())
            })
            .collect()
    });
    let failed = rows.iter().filter(|(o, _)| !o.passed).count();

    if cli.json {
        let reports: Vec<_> = entries
            .iter()
            .zip(&rows)
            .map(|(e, (o, t))| {
                let ring = eval(&e.spec).ok().map(|r| RingSummary::of(&r));
                json!({
                    "spec": canonical_print(&e.spec),
                    "ring": ring,
                    "result": {
                        "line": e.line,
                        "claim": e.claim.to_string(),
                        "citation": e.citation,
                        "passed": o.passed,
                        "detail": o.detail,
                    },
                    "timing": Timing::from(*t),
                })
            })
            .collect();
        let doc = json!({
            "manifest": name,
            "rows": reports,
            "passed": entries.len() - failed,
            "failed": failed,
            "timing": Timing::from(start.elapsed()),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
    } else {
        for (e, (o, t)) in entries.iter().zip(&rows) {
            writeln!(
                out,
                "{} {:>9.1} ms  line {:>3}  {} :: {}  ({})",
                if o.passed { "PASS" } else { "FAIL" },
                t.as_secs_f64() * 1e3,
                e.line,
                canonical_print(&e.spec),
                e.claim,
                e.citation
            )?;
            if !o.passed {
                writeln!(out, "     {}", o.detail)?;
            }
        }
        writeln!(
            out,
            "{} of {} claims passed in {:.2} s",
            entries.len() - failed,
            entries.len(),
            start.elapsed().as_secs_f64()
        )?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
