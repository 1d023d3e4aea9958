//! Argument grammar, validation into a [`JobConfig`], and execution.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobenius_core::filtration::{contraction_multiplicities_power, semisimplicity_bound_report, signed_sum_multiplicity};
use frobenius_core::lspaths::{count_dominant_paths, generate_path_model};
use frobenius_core::rootdata::DEFAULT_RANK_CAP;
use frobenius_core::weyl::DEFAULT_GROUP_LIMIT;
use frobenius_core::{CartanType, Error, ErrorKind, Prime, RootDatum, Weight, WeylCharacters};
use num_bigint::BigInt;
use serde::Serialize;

use crate::cache::{DiskCache, SharedMemo};
use crate::grid;
use crate::json::{self, FormatError, JsonInt};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Default cap on `|B(λ)|`; large enough for the G2, p = 5 grid.
pub const DEFAULT_CLI_PATH_CAP: usize = 10_000_000;
pub const DEFAULT_GRID_CAP: usize = 100_000;

#[derive(Parser, Debug)]
#[command(name = "frobctl", version, about = "Frobenius contractions of Weyl characters and their verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; tables default to json, suites to plain text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Directory for cached Weyl characters.
    #[arg(long, global = true, env = "FROBCTL_CACHE")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Maximum number of Littelmann paths enumerated per highest weight.
    #[arg(long, global = true, default_value_t = DEFAULT_CLI_PATH_CAP)]
    pub path_cap: usize,

    /// Maximum Weyl group order materialized.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_LIMIT)]
    pub weyl_limit: usize,

    /// Maximum number of highest weights in a grid.
    #[arg(long, global = true, default_value_t = DEFAULT_GRID_CAP)]
    pub grid_cap: usize,

    /// Largest accepted rank.
    #[arg(long, global = true, default_value_t = DEFAULT_RANK_CAP)]
    pub rank_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CharKind {
    Weyl,
    Euler,
    Steinberg,
}

#[derive(Args, Debug)]
pub struct TypePrime {
    /// Cartan type, e.g. A2 or G2.
    #[arg(long = "type")]
    pub cartan_type: String,
    #[arg(long)]
    pub p: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiplicities of Weyl characters in the contraction of ∇(λ).
    Contract {
        #[command(flatten)]
        tp: TypePrime,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i32>,
        /// Contract r times.
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Alternating sum over the Weyl group of weight multiplicities of ∇(λ).
    SignedSum {
        #[command(flatten)]
        tp: TypePrime,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i32>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Vec<i32>,
    },
    /// Number of (p−1)ρ-dominant paths in B(λ) ending at pμ.
    LsCount {
        #[command(flatten)]
        tp: TypePrime,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i32>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Vec<i32>,
    },
    /// Compare the four multiplicity evaluations over a grid of λ.
    Agree {
        #[command(flatten)]
        tp: TypePrime,
        /// Largest λ coordinate (default 2p).
        #[arg(long)]
        max_coord: Option<i32>,
    },
    /// Steinberg-tensor coefficients against contraction multiplicities.
    Adjoint {
        #[command(flatten)]
        tp: TypePrime,
        #[arg(long)]
        max_coord: Option<i32>,
    },
    /// Check ⟨μ + ρ, α₀^∨⟩ < p on all restricted λ.
    Bound {
        #[command(flatten)]
        tp: TypePrime,
    },
    /// Contract ∇̂_r(λ) by φ^s and decompose into ∇̂_{r−s}.
    Hatnabla {
        #[command(flatten)]
        tp: TypePrime,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Smallest λ coordinate (default −2p).
        #[arg(long, allow_hyphen_values = true)]
        min_coord: Option<i32>,
        /// Largest λ coordinate (default 2p).
        #[arg(long, allow_hyphen_values = true)]
        max_coord: Option<i32>,
    },
    /// Rank-one finite-field checks.
    Oracle {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        p: Vec<u64>,
        #[arg(long, default_value_t = 20)]
        max_n: u32,
        #[arg(long, default_value_t = 12)]
        max_sum: u32,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        theta_p: Vec<u64>,
    },
    /// Dump a Weyl, Euler or Steinberg character.
    Char {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(value_enum)]
        kind: CharKind,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i32>>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Dump the path model B(λ).
    Paths {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i32>,
    },
}

/// A parsed and validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub job: Job,
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
    pub path_cap: usize,
    pub weyl_limit: usize,
    pub grid_cap: usize,
    pub rank_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Job {
    Contract { ty: CartanType, p: Prime, r: u32, lambda: Weight },
    SignedSum { ty: CartanType, p: Prime, lambda: Weight, mu: Weight },
    LsCount { ty: CartanType, p: Prime, lambda: Weight, mu: Weight },
    Agree { ty: CartanType, p: Prime, max_coord: i32 },
    Adjoint { ty: CartanType, p: Prime, max_coord: i32 },
    Bound { ty: CartanType, p: Prime },
    HatNabla { ty: CartanType, p: Prime, r: u32, s: u32, min_coord: i32, max_coord: i32 },
    Oracle { primes: Vec<Prime>, max_n: u32, max_sum: u32, theta_primes: Vec<Prime> },
    Char { ty: CartanType, kind: CharKind, lambda: Option<Weight>, p: Option<Prime>, r: u32 },
    Paths { ty: CartanType, lambda: Weight },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Resource(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Config => EXIT_USAGE,
                ErrorKind::Domain => EXIT_FAILED,
                ErrorKind::Resource => EXIT_RESOURCE,
            },
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Usage(_) | CliError::Format(_) | CliError::Io(_) => EXIT_USAGE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_type(s: &str, rank_cap: usize) -> Result<CartanType, CliError> {
    let ty: CartanType = s.parse()?;
    if ty.rank() > rank_cap {
        return Err(Error::RankTooLarge { rank: ty.rank(), cap: rank_cap }.into());
    }
    Ok(ty)
}

fn parse_prime(p: u64) -> Result<Prime, CliError> {
    Ok(Prime::new(p)?)
}

fn parse_weight(name: &str, coords: &[i32], ty: CartanType) -> Result<Weight, CliError> {
    if coords.len() != ty.rank() {
        return Err(usage(format!("--{name} needs {} coordinates for type {ty}, got {}", ty.rank(), coords.len())));
    }
    Ok(Weight::new(coords)?)
}

fn positive(name: &str, v: usize) -> Result<usize, CliError> {
    if v == 0 {
        return Err(usage(format!("--{name} must be positive")));
    }
    Ok(v)
}

impl JobConfig {
    pub fn from_cli(cli: Cli) -> Result<JobConfig, CliError> {
        let rank_cap = positive("rank-cap", cli.rank_cap)?;
        let tp = |tp: &TypePrime| -> Result<(CartanType, Prime), CliError> {
            Ok((parse_type(&tp.cartan_type, rank_cap)?, parse_prime(tp.p)?))
        };
        let job = match &cli.command {
            Command::Contract { tp: t, lambda, r } => {
                let (ty, p) = tp(t)?;
                positive("r", *r as usize)?;
                Job::Contract { ty, p, r: *r, lambda: parse_weight("lambda", lambda, ty)? }
            }
            Command::SignedSum { tp: t, lambda, mu } => {
                let (ty, p) = tp(t)?;
                Job::SignedSum { ty, p, lambda: parse_weight("lambda", lambda, ty)?, mu: parse_weight("mu", mu, ty)? }
            }
            Command::LsCount { tp: t, lambda, mu } => {
                let (ty, p) = tp(t)?;
                Job::LsCount { ty, p, lambda: parse_weight("lambda", lambda, ty)?, mu: parse_weight("mu", mu, ty)? }
            }
            Command::Agree { tp: t, max_coord } => {
                let (ty, p) = tp(t)?;
                let max_coord = max_coord.unwrap_or(2 * p.get() as i32);
                positive("max-coord", max_coord.max(0) as usize)?;
                Job::Agree { ty, p, max_coord }
            }
            Command::Adjoint { tp: t, max_coord } => {
                let (ty, p) = tp(t)?;
                let max_coord = max_coord.unwrap_or(2 * p.get() as i32);
                positive("max-coord", max_coord.max(0) as usize)?;
                Job::Adjoint { ty, p, max_coord }
            }
            Command::Bound { tp: t } => {
                let (ty, p) = tp(t)?;
                Job::Bound { ty, p }
            }
            Command::Hatnabla { tp: t, r, s, min_coord, max_coord } => {
                let (ty, p) = tp(t)?;
                let q = p.get() as i32;
                let min_coord = min_coord.unwrap_or(-2 * q);
                let max_coord = max_coord.unwrap_or(2 * q);
                if min_coord > max_coord {
                    return Err(usage("--min-coord exceeds --max-coord"));
                }
                if !(0 < *s && s < r) {
                    return Err(usage(format!("need 0 < s < r, got r = {r}, s = {s}")));
                }
                Job::HatNabla { ty, p, r: *r, s: *s, min_coord, max_coord }
            }
            Command::Oracle { p, max_n, max_sum, theta_p } => Job::Oracle {
                primes: p.iter().map(|&q| parse_prime(q)).collect::<Result<_, _>>()?,
                max_n: *max_n,
                max_sum: *max_sum,
                theta_primes: theta_p.iter().map(|&q| parse_prime(q)).collect::<Result<_, _>>()?,
            },
            Command::Char { cartan_type, kind, lambda, p, r } => {
                let ty = parse_type(cartan_type, rank_cap)?;
                let lambda = lambda.as_deref().map(|l| parse_weight("lambda", l, ty)).transpose()?;
                let p = p.map(parse_prime).transpose()?;
                match kind {
                    CharKind::Weyl | CharKind::Euler if lambda.is_none() => {
                        return Err(usage("--lambda is required for weyl and euler characters"))
                    }
                    CharKind::Steinberg if p.is_none() => return Err(usage("--p is required for the Steinberg character")),
                    _ => {}
                }
                positive("r", *r as usize)?;
                Job::Char { ty, kind: *kind, lambda, p, r: *r }
            }
            Command::Paths { cartan_type, lambda } => {
                let ty = parse_type(cartan_type, rank_cap)?;
                Job::Paths { ty, lambda: parse_weight("lambda", lambda, ty)? }
            }
        };
        let jobs = match cli.jobs {
            Some(j) => positive("jobs", j)?,
            None => std::thread::available_parallelism().map_or(1, usize::from),
        };
        Ok(JobConfig {
            job,
            format: cli.format,
            cache_dir: cli.cache_dir,
            jobs,
            path_cap: positive("path-cap", cli.path_cap)?,
            weyl_limit: positive("weyl-limit", cli.weyl_limit)?,
            grid_cap: positive("grid-cap", cli.grid_cap)?,
            rank_cap,
        })
    }

    fn check_grid(&self, rank: usize, lo: i32, hi: i32) -> Result<(), CliError> {
        let n = grid::box_size(rank, lo, hi);
        if n > self.grid_cap {
            return Err(CliError::Resource(format!("grid has {n} highest weights, above --grid-cap {}", self.grid_cap)));
        }
        Ok(())
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let outcome = JobConfig::from_cli(cli).and_then(|config| execute(&config, out));
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn datum(config: &JobConfig, ty: CartanType) -> Result<RootDatum, CliError> {
    Ok(RootDatum::with_rank_cap(ty, config.rank_cap)?)
}

fn memo(config: &JobConfig, ty: CartanType) -> SharedMemo {
    let disk = match &config.cache_dir {
        Some(dir) if !dir.as_os_str().is_empty() => DiskCache::open(dir),
        _ => DiskCache::disabled(),
    };
    SharedMemo::new(ty, disk)
}

#[derive(Serialize)]
struct ScalarJson {
    #[serde(rename = "type")]
    ty: String,
    p: u32,
    lambda: Vec<i32>,
    mu: Vec<i32>,
    mult: JsonInt,
}

fn write_scalar(config: &JobConfig, out: &mut dyn Write, ty: CartanType, p: Prime, lambda: &Weight, mu: &Weight, m: &BigInt) -> Result<(), CliError> {
    match config.format.unwrap_or(Format::Json) {
        Format::Json => {
            let doc = ScalarJson { ty: ty.to_string(), p: p.get(), lambda: lambda.coords().to_vec(), mu: mu.coords().to_vec(), mult: m.into() };
            writeln!(out, "{}", serde_json::to_string(&doc).map_err(FormatError::from)?)?;
        }
        Format::Csv => json::rows_to_csv(std::iter::once((mu, m)), out)?,
    }
    Ok(())
}

/// `Ok(false)` means a verification failed.
pub fn execute(config: &JobConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| usage(format!("cannot start worker threads: {e}")))?;
    // output is assembled on this thread once the pool is done
    let mut buf = Vec::new();
    let result = pool.install(|| execute_in_pool(config, &mut buf));
    out.write_all(&buf)?;
    result
}

/// Suites report as plain text unless json is requested.
fn suite_json(config: &JobConfig) -> Result<bool, CliError> {
    match config.format {
        None => Ok(false),
        Some(Format::Json) => Ok(true),
        Some(Format::Csv) => Err(usage("suites report as text or json, not csv")),
    }
}

fn execute_in_pool(config: &JobConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    match &config.job {
        Job::Contract { ty, p, r, lambda } => {
            let d = datum(config, *ty)?;
            let m = memo(config, *ty);
            let chars = WeylCharacters::new(&d, &m);
            let table = contraction_multiplicities_power(&chars, *p, *r, lambda)?;
            match config.format.unwrap_or(Format::Json) {
                Format::Json => writeln!(out, "{}", json::table_to_json(&table))?,
                Format::Csv => json::table_to_csv(&table, out)?,
            }
            Ok(true)
        }
        Job::SignedSum { ty, p, lambda, mu } => {
            let d = datum(config, *ty)?;
            let m = memo(config, *ty);
            let chars = WeylCharacters::new(&d, &m);
            let group = frobenius_core::weyl_elements(&d, config.weyl_limit)?;
            let v = signed_sum_multiplicity(&chars, &group, *p, lambda, mu)?;
            write_scalar(config, out, *ty, *p, lambda, mu, &v)?;
            Ok(true)
        }
        Job::LsCount { ty, p, lambda, mu } => {
            let d = datum(config, *ty)?;
            let v = count_dominant_paths(&d, *p, lambda, mu, config.path_cap)?;
            write_scalar(config, out, *ty, *p, lambda, mu, &BigInt::from(v))?;
            Ok(true)
        }
        Job::Agree { ty, p, max_coord } => run_agree(config, out, *ty, *p, *max_coord),
        Job::Adjoint { ty, p, max_coord } => run_adjoint(config, out, *ty, *p, *max_coord),
        Job::Bound { ty, p } => run_bound(config, out, *ty, *p),
        Job::HatNabla { ty, p, r, s, min_coord, max_coord } => {
            run_hat_nabla(config, out, *ty, *p, *r, *s, *min_coord, *max_coord)
        }
        Job::Oracle { primes, max_n, max_sum, theta_primes } => {
            run_oracle(config, out, primes, *max_n, *max_sum, theta_primes)
        }
        Job::Char { ty, kind, lambda, p, r } => {
            let d = datum(config, *ty)?;
            let m = memo(config, *ty);
            let chars = WeylCharacters::new(&d, &m);
            let c = match kind {
                CharKind::Weyl => (*chars.weyl(lambda.as_ref().unwrap())?).clone(),
                CharKind::Euler => chars.euler(lambda.as_ref().unwrap())?,
                CharKind::Steinberg => (*chars.steinberg(p.unwrap(), *r)?).clone(),
            };
            match config.format.unwrap_or(Format::Json) {
                Format::Json => writeln!(out, "{}", json::character_to_json(&c))?,
                Format::Csv => json::rows_to_csv(c.iter(), out)?,
            }
            Ok(true)
        }
        Job::Paths { ty, lambda } => {
            if config.format == Some(Format::Csv) {
                return Err(usage("path models are only available as json"));
            }
            let d = datum(config, *ty)?;
            let paths = generate_path_model(&d, lambda, config.path_cap)?;
            writeln!(out, "{}", json::paths_to_json(&paths))?;
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct SuiteJson<T: Serialize> {
    suite: &'static str,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    ty: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    cases: usize,
    failures: Vec<T>,
    passed: bool,
}

fn write_suite<T: Serialize>(
    out: &mut dyn Write,
    suite: &'static str,
    ty: Option<CartanType>,
    p: Option<Prime>,
    cases: usize,
    failures: Vec<T>,
) -> Result<bool, CliError> {
    let passed = failures.is_empty();
    let doc = SuiteJson { suite, ty: ty.map(|t| t.to_string()), p: p.map(Prime::get), cases, failures, passed };
    writeln!(out, "{}", serde_json::to_string(&doc).map_err(FormatError::from)?)?;
    Ok(passed)
}

fn coords(w: &Weight) -> Vec<i32> {
    w.coords().to_vec()
}

#[derive(Serialize)]
struct AgreeFailure {
    lambda: Vec<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<Vec<i32>>,
    what: String,
}

fn run_agree(config: &JobConfig, out: &mut dyn Write, ty: CartanType, p: Prime, max_coord: i32) -> Result<bool, CliError> {
    let as_json = suite_json(config)?;
    let d = datum(config, ty)?;
    config.check_grid(d.rank(), 0, max_coord)?;
    let m = memo(config, ty);
    let chars = WeylCharacters::new(&d, &m);
    let group = frobenius_core::weyl_elements(&d, config.weyl_limit)?;
    let results = grid::agreement_grid(&chars, &group, p, max_coord, config.path_cap)?;

    let mut cases = 0;
    let mut disagreements = 0;
    let mut failures = Vec::new();
    for la in &results {
        for row in &la.rows {
            cases += 1;
            if !row.agrees() {
                disagreements += 1;
                failures.push(AgreeFailure {
                    lambda: coords(&la.lambda),
                    mu: Some(coords(&row.mu)),
                    what: format!(
                        "decomposition={} signed_sum={} steinberg={} paths={}",
                        row.decomposition, row.signed_sum, row.steinberg, row.paths
                    ),
                });
            }
        }
        for (ok, what) in [
            (la.positive, "negative contraction multiplicity"),
            (la.dimension_balanced, "contraction dimension does not balance"),
            (la.path_model_sound, "path model does not reproduce the character"),
        ] {
            if !ok {
                failures.push(AgreeFailure { lambda: coords(&la.lambda), mu: None, what: what.into() });
            }
        }
    }
    if as_json {
        return write_suite(out, "agree", Some(ty), Some(p), cases, failures);
    }
    let paths: u64 = results.iter().map(|la| la.path_model_size).sum();
    writeln!(out, "{ty} p={p}: {} highest weights, {paths} paths enumerated", results.len())?;
    for f in &failures {
        match &f.mu {
            Some(mu) => writeln!(out, "DISAGREE lambda={:?} mu={mu:?}: {}", f.lambda, f.what)?,
            None => writeln!(out, "FAIL lambda={:?}: {}", f.lambda, f.what)?,
        }
    }
    if disagreements == 0 {
        writeln!(out, "all {cases} cases agree")?;
    } else {
        writeln!(out, "{disagreements} of {cases} cases disagree")?;
    }
    Ok(failures.is_empty())
}

#[derive(Serialize)]
struct PairFailure {
    lambda: Vec<i32>,
    mu: Vec<i32>,
    steinberg: JsonInt,
    contraction: JsonInt,
}

fn run_adjoint(config: &JobConfig, out: &mut dyn Write, ty: CartanType, p: Prime, max_coord: i32) -> Result<bool, CliError> {
    let as_json = suite_json(config)?;
    let d = datum(config, ty)?;
    config.check_grid(d.rank(), 0, max_coord)?;
    let m = memo(config, ty);
    let chars = WeylCharacters::new(&d, &m);
    let cases = grid::adjunction_grid(&chars, p, max_coord)?;
    let failures: Vec<PairFailure> = cases
        .iter()
        .filter(|c| !c.holds())
        .map(|c| PairFailure {
            lambda: coords(&c.lambda),
            mu: coords(&c.mu),
            steinberg: (&c.steinberg).into(),
            contraction: (&c.contraction).into(),
        })
        .collect();
    if as_json {
        return write_suite(out, "adjoint", Some(ty), Some(p), cases.len(), failures);
    }
    for c in cases.iter().filter(|c| !c.holds()) {
        writeln!(out, "UNEQUAL lambda={} mu={}: steinberg={} contraction={}", c.lambda, c.mu, c.steinberg, c.contraction)?;
    }
    if failures.is_empty() {
        writeln!(out, "all {} pairs equal", cases.len())?;
    } else {
        writeln!(out, "{} of {} pairs unequal", failures.len(), cases.len())?;
    }
    Ok(failures.is_empty())
}

#[derive(Serialize)]
struct BoundFailure {
    lambda: Vec<i32>,
    mu: Vec<i32>,
    pairing: i64,
}

fn run_bound(config: &JobConfig, out: &mut dyn Write, ty: CartanType, p: Prime) -> Result<bool, CliError> {
    let as_json = suite_json(config)?;
    let d = datum(config, ty)?;
    let m = memo(config, ty);
    let chars = WeylCharacters::new(&d, &m);
    let report = semisimplicity_bound_report(&chars, p)?;
    let failures: Vec<BoundFailure> = report
        .violations
        .iter()
        .map(|v| BoundFailure { lambda: coords(&v.lambda), mu: coords(&v.mu), pairing: v.pairing })
        .collect();
    if as_json {
        return write_suite(out, "bound", Some(ty), Some(p), report.cases, failures);
    }
    for v in &report.violations {
        writeln!(out, "VIOLATION lambda={} mu={}: pairing {} >= {p}", v.lambda, v.mu, v.pairing)?;
    }
    if report.is_clean() {
        writeln!(out, "no violations in {} cases", report.cases)?;
    } else {
        writeln!(out, "{} violations in {} cases", report.violations.len(), report.cases)?;
    }
    Ok(report.is_clean())
}

#[derive(Serialize)]
struct HatNablaFailure {
    lambda: Vec<i32>,
    what: String,
}

#[allow(clippy::too_many_arguments)]
fn run_hat_nabla(
    config: &JobConfig,
    out: &mut dyn Write,
    ty: CartanType,
    p: Prime,
    r: u32,
    s: u32,
    lo: i32,
    hi: i32,
) -> Result<bool, CliError> {
    let as_json = suite_json(config)?;
    let d = datum(config, ty)?;
    config.check_grid(d.rank(), lo, hi)?;
    let m = memo(config, ty);
    let chars = WeylCharacters::new(&d, &m);
    let cases = grid::hat_nabla_grid(&chars, p, r, s, lo, hi)?;
    let failures: Vec<HatNablaFailure> = cases
        .iter()
        .filter(|c| !c.holds())
        .map(|c| HatNablaFailure {
            lambda: coords(&c.lambda),
            what: match &c.outcome {
                Err(e) => e.to_string(),
                Ok(dec) if !dec.is_exact() => "nonzero remainder".into(),
                Ok(_) => "negative multiplicity".into(),
            },
        })
        .collect();
    if as_json {
        return write_suite(out, "hatnabla", Some(ty), Some(p), cases.len(), failures);
    }
    for f in &failures {
        writeln!(out, "FAIL lambda={:?}: {}", f.lambda, f.what)?;
    }
    if failures.is_empty() {
        writeln!(out, "all {} tables nonnegative with empty remainder", cases.len())?;
    } else {
        writeln!(out, "{} of {} tables fail", failures.len(), cases.len())?;
    }
    Ok(failures.is_empty())
}

#[derive(Serialize)]
struct OracleFailure {
    p: u32,
    module: String,
}

fn run_oracle(
    config: &JobConfig,
    out: &mut dyn Write,
    primes: &[Prime],
    max_n: u32,
    max_sum: u32,
    theta_primes: &[Prime],
) -> Result<bool, CliError> {
    let as_json = suite_json(config)?;
    let cases = grid::oracle_suite(primes, max_n, max_sum)?;
    let theta = grid::theta_suite(theta_primes)?;
    let mut failures: Vec<OracleFailure> = cases
        .iter()
        .filter(|c| !c.holds)
        .map(|c| OracleFailure { p: c.p.get(), module: c.label.clone() })
        .collect();
    failures.extend(
        theta.iter().filter(|(_, rank, want)| rank != want).map(|(p, ..)| OracleFailure { p: p.get(), module: "theta".into() }),
    );
    if as_json {
        return write_suite(out, "oracle", None, None, cases.len() + theta.len(), failures);
    }
    for &p in primes {
        let ok = cases.iter().filter(|c| c.p == p && c.holds).count();
        let all = cases.iter().filter(|c| c.p == p).count();
        writeln!(out, "p={p}: {ok} of {all} modules satisfy the adjunction")?;
    }
    for c in cases.iter().filter(|c| !c.holds) {
        writeln!(out, "FAIL p={} {}", c.p, c.label)?;
    }
    for (p, rank, want) in &theta {
        let mark = if rank == want { "ok" } else { "FAIL" };
        writeln!(out, "theta rank p={p}: {rank} (expected {want}) {mark}")?;
    }
    if failures.is_empty() {
        writeln!(out, "all {} checks pass", cases.len() + theta.len())?;
    }
    Ok(failures.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<JobConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("frobctl").chain(args.iter().copied())).map_err(|e| usage(e.to_string()))?;
        JobConfig::from_cli(cli)
    }

    #[test]
    fn grammar_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn validation() {
        let c = config(&["contract", "--type", "G2", "--p", "2", "--lambda", "1,1", "--jobs", "3"]).unwrap();
        assert_eq!(c.jobs, 3);
        assert!(matches!(c.job, Job::Contract { r: 1, .. }));
        let c = config(&["agree", "--type", "A1", "--p", "3"]).unwrap();
        assert!(matches!(c.job, Job::Agree { max_coord: 6, .. }));
        let c = config(&["hatnabla", "--type", "A1", "--p", "2"]).unwrap();
        assert!(matches!(c.job, Job::HatNabla { min_coord: -4, max_coord: 4, r: 2, s: 1, .. }));
        let c = config(&["contract", "--type", "A2", "--p", "2", "--lambda", "-1,3"]).unwrap();
        assert!(matches!(c.job, Job::Contract { lambda, .. } if lambda == Weight::from_slice(&[-1, 3])));

        for bad in [
            &["contract", "--type", "G2", "--p", "4", "--lambda", "1,1"][..],
            &["contract", "--type", "G2", "--p", "2", "--lambda", "1"],
            &["contract", "--type", "Q2", "--p", "2", "--lambda", "1,1"],
            &["contract", "--type", "E8", "--p", "2", "--lambda", "0,0,0,0,0,0,0,0"],
            &["agree", "--type", "A1", "--p", "2", "--jobs", "0"],
            &["hatnabla", "--type", "A1", "--p", "2", "--r", "2", "--s", "2"],
            &["char", "--type", "A1", "steinberg"],
        ] {
            let e = config(bad).unwrap_err();
            assert_eq!(e.exit_code(), EXIT_USAGE, "{bad:?}");
        }
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(CliError::from(Error::PathCapExceeded { cap: 1 }).exit_code(), EXIT_RESOURCE);
        assert_eq!(CliError::from(Error::EmptyContraction).exit_code(), EXIT_FAILED);
        assert_eq!(CliError::from(Error::NotPrime(4)).exit_code(), EXIT_USAGE);
    }
}
