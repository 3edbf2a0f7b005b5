//! Command-line front end shared by the `arw` binary.
//!
//! Every subcommand writes its tables to stdout, or into the directory given
//! by `--out` together with a `manifest.json` describing the run.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{self, Cdf, GridSpec, StandardNormal};
use crate::bandit::{self, BanditConfig, SignalSource};
use crate::error::{invalid, Error, Result};
use crate::exact::{Enumerator, ExactDistribution, DEFAULT_ENUMERATION_CAP};
use crate::mc::{self, StorageMode, DEFAULT_WALKERS};
use crate::reach::{self, ReachQuery, ReachRow};
use crate::table::{Format, Table};
use crate::walk::{self, parse_exact_number, rational_to_f64, Alpha, Rational, WalkParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_OTHER: i32 = 6;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) => EXIT_INVALID,
        Error::HorizonTooLarge { .. } | Error::ResourceLimit { .. } => EXIT_LIMIT,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => EXIT_IO,
        Error::EmptySample | Error::FinalsOnlyBatch => EXIT_OTHER,
    }
}

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "arw", version, about = "Antlion random walk toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    /// Distribution of X_t and the CDF of the standardized walk.
    Dist(DistArgs),
    /// Cramér–von Mises distance to the standard normal law.
    Cvm(CvmArgs),
    /// Positive-side residence time against the binomial reference.
    Residence(ResidenceArgs),
    /// Epsilon-reachability of target positions.
    Reach(ReachArgs),
    /// Two-armed bandit with a walk-driven threshold.
    Bandit(BanditArgs),
    /// Closed-form and enumerated mean and variance.
    Moments(MomentsArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Mc,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Arw,
    Srw,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OutputArgs {
    /// Directory receiving the output files and manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SimArgs {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Number of Monte Carlo walkers.
    #[arg(long, default_value_t = DEFAULT_WALKERS)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DistArgs {
    /// `m/n` for exact arithmetic or a decimal for floating point.
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "0.5")]
    pub p: String,
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub sim: SimArgs,
    /// CDF tabulation grid `m1,m2,n`.
    #[arg(long, default_value = "-3,3,600", value_parser = parse_grid)]
    pub grid: GridSpec,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CvmArgs {
    /// Comma-separated targets.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "arw")]
    pub target: Vec<Target>,
    /// Comma-separated values or a sweep `start:stop:step`.
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    /// Comma-separated values or a range `a..b` (inclusive).
    #[arg(long, default_value = "100")]
    pub t: String,
    #[command(flatten)]
    pub sim: SimArgs,
    #[arg(long, default_value = "-3,3,600", value_parser = parse_grid)]
    pub grid: GridSpec,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ResidenceArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "0.5")]
    pub p: String,
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub sim: SimArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ReachArgs {
    /// Comma-separated values.
    #[arg(long)]
    pub alpha: String,
    /// Comma-separated targets.
    #[arg(long)]
    pub r: Option<String>,
    /// Adds this many uniform random targets inside the bounds per alpha.
    #[arg(long)]
    pub random: Option<usize>,
    /// Comma-separated tolerances.
    #[arg(long, default_value = "1e-3")]
    pub epsilon: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BanditArgs {
    /// Comma-separated values or a sweep `start:stop:step`.
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.5)]
    pub pa: f64,
    #[arg(long, default_value_t = 0.5)]
    pub pb: f64,
    #[arg(long, default_value_t = 1000)]
    pub horizon: usize,
    /// `uniform:LO:HI`, `normal` or `ar1:COEF`.
    #[arg(long, default_value = "uniform:-5:5", value_parser = parse_signal)]
    pub signal: SignalSource,
    /// Step at which the reward probabilities are exchanged.
    #[arg(long)]
    pub swap_at: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replicates per alpha; seeds run from `seed` upward.
    #[arg(long, default_value_t = 1)]
    pub seeds: usize,
    /// Windows in the averaged correct-selection trajectory.
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MomentsArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "0.5")]
    pub p: String,
    /// Comma-separated values or a range `a..b` (inclusive).
    #[arg(long, default_value = "1..20")]
    pub t: String,
    /// Largest horizon for the enumerated columns.
    #[arg(long, default_value_t = 20)]
    pub enumerate_up_to: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_grid(s: &str) -> std::result::Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err("grid must be m1,m2,n".into());
    }
    let m1 = parts[0].parse::<f64>().map_err(|e| e.to_string())?;
    let m2 = parts[1].parse::<f64>().map_err(|e| e.to_string())?;
    let n = parts[2].parse::<usize>().map_err(|e| e.to_string())?;
    GridSpec::new(m1, m2, n).map_err(|e| e.to_string())
}

fn parse_signal(s: &str) -> std::result::Result<SignalSource, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |v: &str| v.parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    match parts.as_slice() {
        ["normal"] => Ok(SignalSource::Normal),
        ["ar1", c] => Ok(SignalSource::Ar1Gaussian { coef: num(c)? }),
        ["uniform", lo, hi] => Ok(SignalSource::UniformInt {
            lo: lo.parse().map_err(|e| format!("{lo:?}: {e}"))?,
            hi: hi.parse().map_err(|e| format!("{hi:?}: {e}"))?,
        }),
        _ => Err(format!("unknown signal {s:?}; use uniform:LO:HI, normal or ar1:COEF")),
    }
}

/// Splits a comma list; a single `start:stop:step` item expands to the
/// sweep `start, start + step, ...` up to `stop` inclusive.
pub fn parse_value_list(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|v| !v.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [_] => out.push(item.to_string()),
            [a, b, step] => {
                let (a, b, step) = (parse_exact_number(a)?, parse_exact_number(b)?, parse_exact_number(step)?);
                if step <= Rational::zero() || b < a {
                    return invalid(format!("bad sweep {item:?}"));
                }
                let mut v = a;
                while v <= b {
                    out.push(format_rational(&v));
                    v += &step;
                }
            }
            _ => return invalid(format!("bad list item {item:?}")),
        }
    }
    if out.is_empty() {
        return invalid("empty value list");
    }
    Ok(out)
}

/// Parses `a..b` (inclusive) or a comma list of horizons.
pub fn parse_horizons(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("bad horizon list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if b < a {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect()
}

/// Decimal strings keep their exact decimal value; `m/n` stays rational.
fn format_rational(v: &Rational) -> String {
    if v.is_integer() {
        return v.numer().to_string();
    }
    // terminating decimals print as such so that they route to real mode
    let mut den = v.denom().clone();
    let (two, five) = (num_bigint::BigInt::from(2), num_bigint::BigInt::from(5));
    let mut digits = 0usize;
    let zero = num_bigint::BigInt::zero();
    while &den % &two == zero || &den % &five == zero {
        if &den % &two == zero {
            den /= &two;
        }
        if &den % &five == zero {
            den /= &five;
        }
        digits += 1;
    }
    if den.is_one() {
        let scaled = v * Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(10), digits));
        let n = scaled.numer().clone();
        let neg = n < zero;
        let s = n.magnitude().to_string();
        let s = format!("{:0>width$}", s, width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let frac = frac.trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        return if frac.is_empty() { format!("{sign}{int}") } else { format!("{sign}{int}.{frac}") };
    }
    format!("{}/{}", v.numer(), v.denom())
}

fn parse_probability(s: &str) -> Result<(f64, Rational)> {
    let q = parse_exact_number(s)?;
    if q < Rational::zero() || q > Rational::one() {
        return invalid(format!("probability {s} outside [0, 1]"));
    }
    Ok((rational_to_f64(&q), q))
}

fn parse_alpha(s: &str) -> Result<Alpha> {
    s.parse()
}

fn require_exact(alpha: &Alpha) -> Result<Rational> {
    alpha
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidParameter(format!("exact mode needs a rational alpha such as 9/10, got {alpha}")))
}

#[derive(Serialize)]
struct RunManifest<'a> {
    tool: &'static str,
    version: &'static str,
    argv: &'a [String],
    command: &'a Command,
    seed: Option<u64>,
    outputs: Vec<String>,
    duration_seconds: f64,
}

struct Sink {
    dir: Option<PathBuf>,
    format: Format,
    written: Vec<PathBuf>,
    printed: bool,
}

impl Sink {
    fn new(output: &OutputArgs) -> Result<Self> {
        if let Some(dir) = &output.out {
            fs::create_dir_all(dir)?;
        }
        Ok(Sink { dir: output.out.clone(), format: output.format, written: Vec::new(), printed: false })
    }

    fn path(&self, dir: &Path, stem: &str, ext: &str) -> PathBuf {
        dir.join(format!("{stem}.{ext}"))
    }

    /// Writes a table file; without `--out` only the first table is printed.
    fn table(&mut self, stem: &str, table: &Table) -> Result<()> {
        match self.dir.clone() {
            Some(dir) => {
                let path = self.path(&dir, stem, self.format.extension());
                let mut w = BufWriter::new(File::create(&path)?);
                table.write(self.format, &mut w)?;
                w.flush()?;
                self.written.push(path);
            }
            None if !self.printed => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                table.write(self.format, &mut lock)?;
                lock.flush()?;
                self.printed = true;
            }
            None => {}
        }
        Ok(())
    }

    fn json<T: Serialize>(&mut self, stem: &str, value: &T) -> Result<()> {
        if let Some(dir) = self.dir.clone() {
            let path = self.path(&dir, stem, "json");
            let mut w = BufWriter::new(File::create(&path)?);
            serde_json::to_writer_pretty(&mut w, value)?;
            w.flush()?;
            self.written.push(path);
        }
        Ok(())
    }

    fn finish(self, argv: &[String], command: &Command, seed: Option<u64>, started: Instant) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let mut outputs: Vec<String> = self.written.iter().map(|p| p.display().to_string()).collect();
        let path = dir.join("manifest.json");
        outputs.push(path.display().to_string());
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            argv,
            command,
            seed,
            outputs,
            duration_seconds: started.elapsed().as_secs_f64(),
        };
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut w, &manifest)?;
        w.flush()?;
        Ok(())
    }
}

fn grid_table<C: Cdf + ?Sized>(grid: GridSpec, cdf: &C) -> Table {
    let mut table = Table::new(["u", "cdf"]);
    for u in grid.points() {
        table.push_row([u.to_string(), cdf.cdf(u).to_string()]);
    }
    table
}

fn dist(args: &DistArgs, sink: &mut Sink) -> Result<()> {
    let alpha = parse_alpha(&args.alpha)?;
    let (p, _) = parse_probability(&args.p)?;
    let params = WalkParams::new(alpha.clone(), p, args.t)?;
    match args.sim.mode {
        Mode::Exact => {
            require_exact(&alpha)?;
            let d = Enumerator::default().distribution(&params)?;
            sink.table("distribution", &d.to_table())?;
            sink.table("cdf", &grid_table(args.grid, &analysis::standardized_exact_cdf(&d)))?;
        }
        Mode::Mc => {
            let batch = mc::simulate(&params, args.sim.n, args.sim.seed, StorageMode::FinalsOnly)?;
            sink.table("distribution", &batch.to_table())?;
            let ecdf = mc::empirical_cdf(&batch)?.scaled(analysis::standard_scale(alpha.as_f64(), args.t));
            sink.table("cdf", &grid_table(args.grid, &ecdf))?;
        }
    }
    Ok(())
}

fn exact_standardized(alpha: &Alpha, t: usize) -> Result<analysis::DiscreteCdf> {
    require_exact(alpha)?;
    let d: ExactDistribution = Enumerator::default().distribution(&WalkParams::symmetric(alpha.clone(), t))?;
    Ok(analysis::standardized_exact_cdf(&d))
}

fn cvm(args: &CvmArgs, sink: &mut Sink) -> Result<()> {
    let alphas = parse_value_list(&args.alpha)?;
    let horizons = parse_horizons(&args.t)?;
    let mut table = Table::new(["target", "alpha", "t", "distance"]);
    for target in &args.target {
        let alpha_list: Vec<String> = match target {
            Target::Arw => alphas.clone(),
            Target::Srw => vec!["1".into()],
        };
        for a in &alpha_list {
            for &t in &horizons {
                if t == 0 {
                    return invalid("cvm needs t >= 1");
                }
                let distance = match (target, args.sim.mode) {
                    (Target::Srw, Mode::Exact) => {
                        analysis::cvm_distance(&analysis::simple_rw_exact_cdf(t)?, &StandardNormal, args.grid).distance
                    }
                    (Target::Srw, Mode::Mc) => {
                        let batch = mc::simulate_simple_rw(t, args.sim.n, args.sim.seed)?;
                        let e = mc::empirical_cdf(&batch)?.scaled(analysis::standard_scale(1.0, t));
                        analysis::cvm_distance(&e, &StandardNormal, args.grid).distance
                    }
                    (Target::Arw, Mode::Exact) => {
                        let alpha = parse_alpha(a)?;
                        analysis::cvm_distance(&exact_standardized(&alpha, t)?, &StandardNormal, args.grid).distance
                    }
                    (Target::Arw, Mode::Mc) => {
                        let alpha = parse_alpha(a)?;
                        let params = WalkParams::symmetric(alpha.clone(), t);
                        let batch = mc::simulate(&params, args.sim.n, args.sim.seed, StorageMode::FinalsOnly)?;
                        let e = mc::empirical_cdf(&batch)?.scaled(analysis::standard_scale(alpha.as_f64(), t));
                        analysis::cvm_distance(&e, &StandardNormal, args.grid).distance
                    }
                };
                let label = match target {
                    Target::Arw => "arw",
                    Target::Srw => "srw",
                };
                table.push_row([label.to_string(), a.clone(), t.to_string(), distance.to_string()]);
            }
        }
    }
    sink.table("cvm", &table)
}

fn residence(args: &ResidenceArgs, sink: &mut Sink) -> Result<()> {
    let alpha = parse_alpha(&args.alpha)?;
    let (p, p_exact) = parse_probability(&args.p)?;
    let params = WalkParams::new(alpha.clone(), p, args.t)?;
    let summary = match args.sim.mode {
        Mode::Exact => {
            require_exact(&alpha)?;
            let counts = Enumerator::default().residence(&params)?;
            let pmf_exact = counts.pmf_exact(&p_exact);
            let tv = analysis::exact_tv_to_binomial(&pmf_exact, &p_exact);
            let pmf: Vec<f64> = pmf_exact.iter().map(rational_to_f64).collect();
            let mut s = analysis::compare_residence_to_binomial(&pmf, args.t, p, alpha.as_f64())?;
            s.tv_distance = rational_to_f64(&tv);
            s
        }
        Mode::Mc => {
            let batch = mc::simulate(&params, args.sim.n, args.sim.seed, StorageMode::FullPaths)?;
            let pmf = mc::residence_pmf(&mc::residence_times(&batch)?, args.t);
            analysis::compare_residence_to_binomial(&pmf, args.t, p, alpha.as_f64())?
        }
    };
    sink.table("residence", &summary.to_table())?;
    sink.json("residence_summary", &summary)
}

#[derive(Serialize)]
struct ReachRecord {
    alpha: String,
    r: String,
    epsilon: String,
    result: reach::ReachResult,
}

fn reach_cmd(args: &ReachArgs, sink: &mut Sink) -> Result<()> {
    let alphas = parse_value_list(&args.alpha)?;
    let epsilons = parse_value_list(&args.epsilon)?;
    let fixed = match &args.r {
        Some(r) => parse_value_list(r)?,
        None => Vec::new(),
    };
    if fixed.is_empty() && args.random.unwrap_or(0) == 0 {
        return invalid("give --r targets or --random N");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for a in &alphas {
        let alpha = parse_exact_number(a)?;
        let af = rational_to_f64(&alpha);
        let mut targets: Vec<String> = fixed.clone();
        if let Some(n) = args.random {
            if !(af > 0.0 && af < 1.0) {
                return invalid("reachability needs alpha in (0, 1)");
            }
            let b = 1.0 / (1.0 - af);
            targets.extend((0..n).map(|_| rng.random_range(-b..b).to_string()));
        }
        for r in &targets {
            for e in &epsilons {
                let q = ReachQuery::exact(alpha.clone(), parse_exact_number(r)?, parse_exact_number(e)?)?;
                let result = reach::is_eps_reachable(&q);
                rows.push(ReachRow {
                    alpha: q.alpha(),
                    r: q.r(),
                    epsilon: q.epsilon(),
                    reachable: result.reachable,
                    witness_depth: result.witness_depth(),
                });
                records.push(ReachRecord { alpha: a.clone(), r: r.clone(), epsilon: e.clone(), result });
            }
        }
    }
    sink.table("reach", &reach::sweep_table(&rows))?;
    sink.json("reach_details", &records)
}

fn bandit_cmd(args: &BanditArgs, sink: &mut Sink) -> Result<()> {
    let alphas: Vec<f64> = parse_value_list(&args.alpha)?
        .iter()
        .map(|a| parse_exact_number(a).map(|v| rational_to_f64(&v)))
        .collect::<Result<_>>()?;
    let template = BanditConfig {
        k: args.k,
        alpha: alphas[0],
        delta: args.delta,
        omega: args.omega,
        p_a: args.pa,
        p_b: args.pb,
        horizon: args.horizon,
        signal: args.signal,
        swap_at: args.swap_at,
    };
    let rows = bandit::sweep_alpha(&template, &alphas, args.seeds, args.seed, args.bins)?;
    let trace = bandit::run_bandit(&template, args.seed)?;
    if alphas.len() == 1 && args.seeds == 1 {
        sink.table("trace", &trace.to_table())?;
        sink.table("sweep", &bandit::sweep_table(&rows))?;
    } else {
        sink.table("sweep", &bandit::sweep_table(&rows))?;
        sink.table("trace", &trace.to_table())?;
    }
    sink.json("sweep", &rows)
}

fn moments(args: &MomentsArgs, sink: &mut Sink) -> Result<()> {
    let alpha = parse_alpha(&args.alpha)?;
    let (p, p_exact) = parse_probability(&args.p)?;
    let horizons = parse_horizons(&args.t)?;
    let enumerator = Enumerator::with_cap(args.enumerate_up_to.min(DEFAULT_ENUMERATION_CAP))?;
    let mut table = Table::new(["t", "mean", "variance", "enumerated_mean", "enumerated_variance"]);
    for &t in &horizons {
        let params = WalkParams::new(alpha.clone(), p, t)?;
        let (mut em, mut ev) = (String::new(), String::new());
        if alpha.is_exact() && t <= enumerator.cap() {
            let d = enumerator.distribution(&params)?;
            let (m, v) = d.moments_exact(&p_exact);
            em = rational_to_f64(&m).to_string();
            ev = rational_to_f64(&v).to_string();
        }
        table.push_row([
            t.to_string(),
            walk::closed_form_mean(&params).to_string(),
            walk::closed_form_variance(&params).to_string(),
            em,
            ev,
        ]);
    }
    sink.table("moments", &table)
}

fn output_of(command: &Command) -> &OutputArgs {
    match command {
        Command::Dist(a) => &a.output,
        Command::Cvm(a) => &a.output,
        Command::Residence(a) => &a.output,
        Command::Reach(a) => &a.output,
        Command::Bandit(a) => &a.output,
        Command::Moments(a) => &a.output,
    }
}

fn seed_of(command: &Command) -> Option<u64> {
    match command {
        Command::Dist(a) => (a.sim.mode == Mode::Mc).then_some(a.sim.seed),
        Command::Cvm(a) => (a.sim.mode == Mode::Mc).then_some(a.sim.seed),
        Command::Residence(a) => (a.sim.mode == Mode::Mc).then_some(a.sim.seed),
        Command::Reach(a) => a.random.map(|_| a.seed),
        Command::Bandit(a) => Some(a.seed),
        Command::Moments(_) => None,
    }
}

pub fn run(cli: &Cli, argv: &[String]) -> Result<()> {
    let started = Instant::now();
    let mut sink = Sink::new(output_of(&cli.command))?;
    match &cli.command {
        Command::Dist(a) => dist(a, &mut sink)?,
        Command::Cvm(a) => cvm(a, &mut sink)?,
        Command::Residence(a) => residence(a, &mut sink)?,
        Command::Reach(a) => reach_cmd(a, &mut sink)?,
        Command::Bandit(a) => bandit_cmd(a, &mut sink)?,
        Command::Moments(a) => moments(a, &mut sink)?,
    }
    sink.finish(argv, &cli.command, seed_of(&cli.command), started)
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let argv: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match run(&cli, &argv) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
