//! Command-line front end: argument parsing, dispatch, output formats and the
//! on-disk result cache.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hall::close_downward;
use crate::lusztig::Context;
use crate::poly::BiPoly;
use crate::rootsys::{parse_levi, RootSystem, RootVector, Weight};
use crate::stable::{delta_stab, DEFAULT_STAB_CAP};
use crate::verify::{self, dominant_grid, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

pub const CACHE_ENV: &str = "WEYLPQ_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Roots,
    Kpq,
    Branch,
    Kbar,
    Stab,
    DeltaStab,
    Colored,
    Chi,
    Hl,
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "weylpq", version, about = "Two-parameter Lusztig q-analogues of weight multiplicities")]
pub struct Args {
    pub command: Command,
    /// Root system such as `C3`; for `verify`, a comma list (default: all eight).
    #[arg(long)]
    pub system: Option<String>,
    /// One-based Levi nodes, e.g. `1,2`.
    #[arg(long, default_value = "")]
    pub levi: String,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Translation weight for `delta-stab`.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// Levi-dominant target for `branch` (defaults to `--mu`).
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<String>,
    /// Root coordinates for `colored` (defaults to `ν - μ`).
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long, default_value_t = verify::DEFAULT_LEVEL)]
    pub level: i64,
    #[arg(long = "box", default_value_t = verify::DEFAULT_MU_BOX)]
    pub box_bound: i64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, conflicts_with = "cache")]
    pub no_cache: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Everything that determines a result; the cache key is its hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    pub levi: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<i64>>,
    pub level: i64,
    #[serde(rename = "box")]
    pub box_bound: i64,
}

impl JobSpec {
    /// Validates and normalizes parsed arguments.
    pub fn from_args(args: &Args) -> Result<Self> {
        let weight = |s: &Option<String>| -> Result<Option<Vec<i64>>> {
            s.as_deref().map(|s| Weight::parse(s).map(|w| w.0)).transpose()
        };
        let system = match (&args.system, args.command) {
            (Some(s), Command::Verify) => Some(
                s.split(',')
                    .map(|t| t.trim().parse::<RootSystem>().map(|rs| rs.to_string()))
                    .collect::<Result<Vec<_>>>()?
                    .join(","),
            ),
            (Some(s), _) => Some(s.parse::<RootSystem>()?.to_string()),
            (None, Command::Verify) => None,
            (None, _) => return Err(Error::Precondition("--system is required".into())),
        };
        let levi = match &system {
            Some(s) if args.command != Command::Verify => {
                let rs: RootSystem = s.parse()?;
                parse_levi(&args.levi, rs.rank)?.iter().map(|i| i + 1).collect()
            }
            _ => Vec::new(),
        };
        if args.level < 0 || args.box_bound < 0 {
            return Err(Error::Precondition("--level and --box must be nonnegative".into()));
        }
        Ok(Self {
            command: args.command,
            system,
            levi,
            nu: weight(&args.nu)?,
            mu: weight(&args.mu)?,
            delta: weight(&args.delta)?,
            target: weight(&args.target)?,
            beta: weight(&args.beta)?,
            level: args.level,
            box_bound: args.box_bound,
        })
    }

    /// Hex SHA-256 of the canonical JSON form, salted with the crate version.
    pub fn cache_key(&self) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update(serde_json::to_vec(self).expect("job specs serialize"));
        h.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// The deterministic part of a result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Payload {
    pub job: JobSpec,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poly: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Value>,
    /// Exit status the computation implies (verification outcome).
    #[serde(default)]
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct ResultRecord {
    #[serde(flatten)]
    pub payload: Payload,
    pub version: &'static str,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
    pub cached: bool,
}

/// Cache location: `--cache`, then `$WEYLPQ_CACHE`, then the user cache dir.
pub fn cache_path(args: &Args) -> Option<PathBuf> {
    if args.no_cache {
        return None;
    }
    if let Some(p) = &args.cache {
        return Some(p.clone());
    }
    if let Some(p) = std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
        return Some(p.into());
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("weylpq").join("results.json"))
}

/// A JSON file mapping job keys to payloads. Unreadable or corrupt content
/// is reported and ignored.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, Value>,
    dirty: bool,
}

impl Cache {
    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn open(path: &Path) -> Self {
        let entries = match std::fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text).unwrap_or_else(|e| {
                eprintln!("warning: ignoring corrupt cache {}: {e}", path.display());
                BTreeMap::new()
            }),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => {
                eprintln!("warning: cannot read cache {}: {e}", path.display());
                BTreeMap::new()
            }
        };
        Self {
            path: Some(path.to_path_buf()),
            entries,
            dirty: false,
        }
    }

    pub fn get(&self, job: &JobSpec) -> Option<Payload> {
        let v = self.entries.get(&job.cache_key())?;
        match serde_json::from_value::<Payload>(v.clone()) {
            Ok(p) if &p.job == job => Some(p),
            _ => {
                eprintln!("warning: recomputing corrupt cache entry");
                None
            }
        }
    }

    pub fn put(&mut self, payload: &Payload) {
        if self.path.is_some() {
            let v = serde_json::to_value(payload).expect("payloads serialize");
            self.entries.insert(payload.job.cache_key(), v);
            self.dirty = true;
        }
    }

    /// Writes the file if anything changed; failures only warn.
    pub fn flush(&mut self) {
        let Some(path) = &self.path else { return };
        if !self.dirty {
            return;
        }
        let write = || -> std::io::Result<()> {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, serde_json::to_vec(&self.entries)?)?;
            std::fs::rename(&tmp, path)
        };
        match write() {
            Ok(()) => self.dirty = false,
            Err(e) => eprintln!("warning: cannot write cache {}: {e}", path.display()),
        }
    }
}

/// Output of one computation before formatting.
struct Outcome {
    payload: Payload,
    timing: Option<Value>,
    /// Matrix commands render CSV from this.
    csv: Option<String>,
}

fn require<'a>(v: &'a Option<Vec<i64>>, flag: &str) -> Result<&'a Vec<i64>> {
    v.as_ref()
        .ok_or_else(|| Error::Precondition(format!("{flag} is required")))
}

fn poly_value(p: &BiPoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn coords(w: &Weight) -> Value {
    json!(w.0)
}

fn context(job: &JobSpec) -> Result<Context> {
    let rs: RootSystem = job.system.as_deref().unwrap_or_default().parse()?;
    let levi: Vec<usize> = job.levi.iter().map(|i| i - 1).collect();
    Context::new(rs, &levi)
}

/// Runs one job with no caching.
fn compute(job: &JobSpec) -> Result<Outcome> {
    let mut outcome = Outcome {
        payload: Payload {
            job: job.clone(),
            poly: None,
            result: None,
            passed: true,
        },
        timing: None,
        csv: None,
    };
    if job.command == Command::Verify {
        let mut cfg = VerifyConfig {
            level: job.level,
            mu_box: job.box_bound,
            ..VerifyConfig::default()
        };
        if let Some(s) = &job.system {
            cfg.systems = s.split(',').map(str::to_string).collect();
        }
        let report = verify::run_all(&cfg)?;
        outcome.payload.passed = report.passed();
        outcome.payload.result = Some(serde_json::to_value(&report)?);
        let mut csv = csv::Writer::from_writer(Vec::new());
        csv.write_record(["identity", "checked", "failed", "status"])
            .and_then(|_| {
                report.identities.iter().try_for_each(|r| {
                    csv.write_record([
                        r.name.as_str(),
                        &r.checked.to_string(),
                        &r.failed.to_string(),
                        if r.passed() { "PASS" } else { "FAIL" },
                    ])
                })
            })
            .map_err(|e| Error::Precondition(e.to_string()))?;
        outcome.csv = Some(String::from_utf8(csv.into_inner().expect("in-memory writer")).expect("utf-8"));
        return Ok(outcome);
    }
    let ctx = context(job)?;
    let weight = |v: &Option<Vec<i64>>, flag: &str| -> Result<Weight> { ctx.weight(require(v, flag)?) };
    match job.command {
        Command::Roots => {
            let rs = &ctx.rs;
            outcome.payload.result = Some(json!({
                "cartan": rs.cartan,
                "symmetrizer": rs.symmetrizer,
                "positive_roots": rs.positive_roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
                "rho": coords(&rs.rho),
                "weyl_order": rs.weyl_order,
                "levi_positive_roots": ctx.par.levi_positive_roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
                "complement_roots": ctx.par.complement_roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
                "rho_bar": coords(&ctx.par.rho_bar),
                "rho_diamond": coords(&ctx.par.rho_diamond),
                "levi_weyl_order": ctx.par.levi_weyl.len(),
            }));
        }
        Command::Kpq => {
            let (nu, mu) = (weight(&job.nu, "--nu")?, weight(&job.mu, "--mu")?);
            let k = ctx.kpq(&nu, &mu)?;
            outcome.payload.result = Some(json!({
                "p_equals_q": k.collapse_p_into_q().to_string(),
                "shifted": k.shift_vars().to_string(),
            }));
            outcome.payload.poly = Some(poly_value(&k));
        }
        Command::Branch => {
            let nu = weight(&job.nu, "--nu")?;
            let target = weight(if job.target.is_some() { &job.target } else { &job.mu }, "--target")?;
            outcome.payload.poly = Some(poly_value(&ctx.branching_poly(&nu, &target)?));
        }
        Command::Kbar => {
            let (kappa, mu) = (weight(&job.nu, "--nu")?, weight(&job.mu, "--mu")?);
            outcome.payload.poly = Some(poly_value(&ctx.parabolic_lusztig(&kappa, &mu)?));
        }
        Command::Stab => {
            let (nu, mu) = (weight(&job.nu, "--nu")?, weight(&job.mu, "--mu")?);
            let r = ctx.kpq_stab(&nu, &mu, DEFAULT_STAB_CAP)?;
            outcome.payload.poly = Some(poly_value(&r.value));
            outcome.payload.result = Some(json!({
                "k_stable": r.k_stable,
                "closed_form": r.closed_form.to_string(),
                "hypothesis_c": r.hypothesis_c.map(|c| c.to_string()),
            }));
            outcome.timing = Some(json!({ "step_ms": r.step_ms }));
        }
        Command::DeltaStab => {
            let (nu, mu) = (weight(&job.nu, "--nu")?, weight(&job.mu, "--mu")?);
            let delta = weight(&job.delta, "--delta")?;
            let d = delta_stab(&ctx.rs, &delta, &nu, &mu, DEFAULT_STAB_CAP)?;
            outcome.payload.poly = Some(poly_value(&d.result.value));
            outcome.payload.result = Some(json!({
                "levi": d.levi,
                "k_stable": d.result.k_stable,
                "closed_form": d.result.closed_form.to_string(),
                "hypothesis_c": d.result.hypothesis_c.map(|c| c.to_string()),
                "factorization": d.factorization,
            }));
            outcome.timing = Some(json!({ "step_ms": d.result.step_ms }));
        }
        Command::Colored => {
            let beta = match &job.beta {
                Some(b) => RootVector(b.clone()),
                None => {
                    let (nu, mu) = (weight(&job.nu, "--nu")?, weight(&job.mu, "--mu")?);
                    ctx.rs
                        .to_root_coords(&(&nu - &mu))
                        .ok_or_else(|| Error::Precondition("ν - μ is not in the root lattice".into()))?
                }
            };
            if beta.rank() != ctx.rank() {
                return Err(Error::InvalidWeight(format!("{beta} has the wrong length")));
            }
            let r = ctx.r_pq(&beta);
            outcome.payload.poly = Some(poly_value(&r));
            outcome.payload.result = Some(json!({
                "beta": beta.0,
                "n": ctx.n_pq(&beta).to_string(),
                "r": r.to_string(),
            }));
        }
        Command::Chi => {
            let (nu, mu) = (weight(&job.nu, "--nu")?, weight(&job.mu, "--mu")?);
            let weights = crate::charge::freudenthal(&ctx.rs, &nu)?;
            let rows: Vec<Value> = weights
                .iter()
                .filter_map(|(wt, m)| {
                    let chi = ctx.chi(wt, &mu);
                    (!chi.is_zero()).then(|| {
                        json!({
                            "weight": coords(wt),
                            "multiplicity": m,
                            "chi": chi.to_string(),
                        })
                    })
                })
                .collect();
            let sum = ctx.crystal_sum(&nu, &mu)?;
            outcome.payload.poly = Some(poly_value(&sum));
            outcome.payload.result = Some(json!({ "weights": rows }));
        }
        Command::Hl => {
            let set = close_downward(&ctx.rs, &dominant_grid(ctx.rank(), job.level))?;
            let m = match &job.mu {
                Some(_) => {
                    let mu = weight(&job.mu, "--mu")?;
                    let column = ctx.qprime(&mu, &set)?;
                    outcome.payload.result = Some(json!({
                        "qprime": column
                            .iter()
                            .map(|(nu, k)| json!({ "nu": coords(nu), "coefficient": k.to_string() }))
                            .collect::<Vec<_>>(),
                    }));
                    None
                }
                None => Some(ctx.transition_matrix(&set)?),
            };
            if let Some(m) = m {
                outcome.csv = Some(m.to_csv()?);
                outcome.payload.result = Some(json!({
                    "index": m.index.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
                    "entries": m.entries.iter()
                        .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "roundtrip": ctx.roundtrip_check(&set)?,
                }));
            }
        }
        Command::Verify => unreachable!("handled above"),
    }
    Ok(outcome)
}

fn poly_from_value(v: &Value) -> Option<BiPoly> {
    serde_json::from_value(v.clone()).ok()
}

fn render(record: &ResultRecord, csv: Option<&str>, format: Format) -> Result<String> {
    let p = &record.payload;
    Ok(match format {
        Format::Json => serde_json::to_string(record)? + "\n",
        Format::Csv => match (csv, p.poly.as_ref().and_then(poly_from_value)) {
            (Some(csv), _) => csv.to_string(),
            (None, Some(poly)) => {
                let mut s = String::from("p,q,c\n");
                for ((dp, dq), c) in poly.terms() {
                    let _ = writeln!(s, "{dp},{dq},{c}");
                }
                s
            }
            (None, None) => serde_json::to_string(&p.result)? + "\n",
        },
        Format::Text => {
            let mut s = String::new();
            if let Some(poly) = p.poly.as_ref().and_then(poly_from_value) {
                let _ = writeln!(s, "{poly}");
            }
            if p.job.command == Command::Verify {
                if let Some(identities) = p.result.as_ref().and_then(|r| r.get("identities")).and_then(Value::as_array) {
                    for r in identities {
                        let failed = r["failed"].as_u64().unwrap_or(0);
                        let status = if failed == 0 { "PASS" } else { "FAIL" };
                        let _ = writeln!(s, "{status} {} ({} checked, {failed} failed)", r["name"].as_str().unwrap_or(""), r["checked"]);
                    }
                }
            } else if let Some(Value::Object(map)) = &p.result {
                for (k, v) in map {
                    match v {
                        Value::String(t) => { let _ = writeln!(s, "{k}: {t}"); }
                        other => { let _ = writeln!(s, "{k}: {other}"); }
                    }
                }
            }
            s
        }
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::NotStabilized { .. } => EXIT_CAP,
        Error::NotUnitriangular(..) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Prints failing grid points of a verify payload to stderr.
fn report_failures(payload: &Payload) {
    let Some(ids) = payload.result.as_ref().and_then(|r| r.get("identities")).and_then(Value::as_array) else {
        return;
    };
    for r in ids.iter().filter(|r| r["failed"].as_u64().unwrap_or(0) > 0) {
        eprintln!("FAIL {}: {} of {}", r["name"].as_str().unwrap_or(""), r["failed"], r["checked"]);
        for f in r["failures"].as_array().into_iter().flatten() {
            eprintln!("  {} levi={} {} {}", f["system"].as_str().unwrap_or(""), f["levi"], f["point"].as_str().unwrap_or(""), f["detail"].as_str().unwrap_or(""));
        }
    }
}

/// Runs the CLI on explicit arguments, writing to the given sinks, and
/// returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(n) = args.jobs {
        // Fails harmlessly if a pool already exists in this process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let job = match JobSpec::from_args(&args) {
        Ok(j) => j,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut cache = cache_path(&args).map(|p| Cache::open(&p)).unwrap_or_else(Cache::disabled);
    let start = Instant::now();
    let (payload, timing, csv, cached) = match cache.get(&job) {
        Some(p) if !(args.format == Format::Csv && matches!(job.command, Command::Hl | Command::Verify)) => (p, None, None, true),
        _ => match compute(&job) {
            Ok(o) => {
                cache.put(&o.payload);
                (o.payload, o.timing, o.csv, false)
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return exit_code(&e);
            }
        },
    };
    cache.flush();
    let passed = payload.passed;
    if !passed {
        report_failures(&payload);
    }
    let record = ResultRecord {
        payload,
        version: env!("CARGO_PKG_VERSION"),
        elapsed_ms: start.elapsed().as_millis(),
        timing,
        cached,
    };
    match render(&record, csv.as_deref(), args.format) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

pub fn main() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Strips the run-dependent fields (`elapsed_ms`, `timing`, `cached`) from
/// a JSON record.
pub fn payload_section(record: &str) -> Result<String> {
    let mut v: Value = serde_json::from_str(record)?;
    if let Value::Object(map) = &mut v {
        map.remove("elapsed_ms");
        map.remove("timing");
        map.remove("cached");
    }
    Ok(serde_json::to_string(&v)?)
}
