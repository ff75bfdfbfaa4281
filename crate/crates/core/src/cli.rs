//! Command-line front end: argument parsing, form selection, report output
//! and exit codes. The `moment-forge` binary only calls [`main`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith;
use crate::error::{Error, Result};
use crate::lfunc::{verify_voronoi, VoronoiConfig, VoronoiKernels};
use crate::maass::{
    bundled_form, fetch_remote, load_form, parse_fixture, FetchConfig, MaassForm, BUNDLED_LABEL,
};
use crate::moment::{
    exponent_fit, moment_report, nonvanishing_scan, MomentConfig, MomentTables, DEFAULT_GRID,
};
use crate::special::EvaluationPoint;
use crate::store::{IndexRow, ReportStore};
use crate::verify::{primes_up_to, run_verify, voronoi_panel, Suite, VORONOI_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "moment-forge",
    version,
    about = "First moment of L(s0, f x chi) conj L(s0, chi) over even primitive characters mod q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite: char-sums, special, maass, l-eval, voronoi or all.
    Verify {
        #[arg(default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Both routes to the moment at one prime q.
    Moment {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Fit the growth of |moment - main term| over a range of primes.
    Fit {
        /// Explicit primes; repeatable. Without these or a range the default grid is used.
        #[arg(long)]
        q: Vec<u64>,
        #[arg(long, requires = "q_max")]
        q_min: Option<u64>,
        #[arg(long, requires = "q_min")]
        q_max: Option<u64>,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the Voronoi formula at one (c, d, N), or over the standard panel.
    Voronoi {
        #[arg(long, requires_all = ["d", "scale"])]
        c: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long)]
        scale: Option<f64>,
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Per-character product moduli and the nonvanishing flag.
    Nonvanish {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Download Hecke eigenvalues into a fixture file.
    Fetch {
        #[arg(long, default_value = BUNDLED_LABEL)]
        label: String,
        /// Number of coefficients.
        #[arg(long, default_value_t = 1000)]
        depth: usize,
        /// Fixture path to write.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PointArgs {
    #[arg(long, default_value_t = 0.5)]
    pub sigma0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
}

#[derive(Debug, Clone, Args)]
pub struct FormArgs {
    /// Fixture file; overrides --label.
    #[arg(long)]
    pub form: Option<PathBuf>,
    /// Form label; anything but the bundled label is fetched into the report directory.
    #[arg(long, default_value = BUNDLED_LABEL)]
    pub label: String,
    /// Use only lambda(1..=depth).
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 1e-6)]
    pub tol_identity: f64,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Report directory.
    #[arg(long, default_value = "reports")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Validated settings of one run, persisted next to its report.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RunConfig {
    pub command: String,
    pub q: Vec<u64>,
    pub point: Option<EvaluationPoint>,
    pub form_label: String,
    pub form_path: Option<PathBuf>,
    pub depth: Option<usize>,
    pub tol_identity: f64,
    pub threads: usize,
    pub out: PathBuf,
    pub format: Format,
}

impl RunConfig {
    fn new(command: &str, common: &CommonArgs, form: &FormArgs) -> Result<Self> {
        if !(common.tol_identity > 0.0) || !common.tol_identity.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "--tol-identity {} must be positive",
                common.tol_identity
            )));
        }
        if common.threads == 0 {
            return Err(Error::InvalidParameter("--threads must be >= 1".into()));
        }
        if form.depth == Some(0) {
            return Err(Error::InvalidParameter("--depth must be >= 1".into()));
        }
        Ok(Self {
            command: command.into(),
            q: Vec::new(),
            point: None,
            form_label: form.label.clone(),
            form_path: form.form.clone(),
            depth: form.depth,
            tol_identity: common.tol_identity,
            threads: common.threads,
            out: common.out.clone(),
            format: common.format,
        })
    }

    fn with_point(mut self, p: &PointArgs) -> Result<Self> {
        self.point = Some(EvaluationPoint::new(p.sigma0, p.t0)?);
        Ok(self)
    }

    fn with_q(mut self, q: Vec<u64>) -> Result<Self> {
        for &x in &q {
            arith::check_prime(x)?;
        }
        self.q = q;
        Ok(self)
    }

    fn moment_config(&self) -> MomentConfig {
        MomentConfig {
            tol_identity: self.tol_identity,
            ..MomentConfig::default()
        }
    }
}

/// The form a run uses: a fixture file, the bundled form, or a fetched label.
/// `validate = false` defers the Hecke checks to the caller.
fn select_form(cfg: &RunConfig, validate: bool) -> Result<MaassForm> {
    let form = match (&cfg.form_path, cfg.form_label.as_str()) {
        (Some(path), _) => read_form(path, validate)?,
        (None, BUNDLED_LABEL) => bundled_form().clone(),
        (None, label) => {
            let path = cfg.out.join("forms").join(format!("{label}.txt"));
            if !path.exists() {
                let n = cfg.depth.unwrap_or(1000);
                // A fallback notice is logged by the fetcher.
                fetch_remote(label, n, &path, &FetchConfig::from_env())?;
            }
            read_form(&path, validate)?
        }
    };
    match cfg.depth {
        Some(n) if n < form.depth() => form.truncated(n),
        _ => Ok(form),
    }
}

fn read_form(path: &Path, validate: bool) -> Result<MaassForm> {
    if validate {
        return load_form(path);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    parse_fixture(&text, &path.display().to_string())
}

#[derive(serde::Serialize)]
struct Record<'a, T: serde::Serialize> {
    schema: u32,
    config: &'a RunConfig,
    report: &'a T,
}

/// Persists a report and prints it in the requested format.
fn emit<T: serde::Serialize>(cfg: &RunConfig, report: &T, row: IndexRow) -> Result<()> {
    let store = ReportStore::open(&cfg.out)?;
    let record = Record {
        schema: crate::moment::SCHEMA_VERSION,
        config: cfg,
        report,
    };
    let path = store.persist(&record, row.clone())?;
    match cfg.format {
        Format::Json => stdout(&format!("{}\n", serde_json::to_string_pretty(&record)?))?,
        Format::Csv => {
            let mut row = row;
            row.file = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            stdout(&row.to_csv()?)?;
        }
    }
    log::info!("report written to {}", path.display());
    Ok(())
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn stdout(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { suite, form, common } => {
            let cfg = RunConfig::new("verify", &common, &form)?;
            let f = if suite.needs_form() {
                Some(select_form(&cfg, false)?)
            } else {
                None
            };
            let report = pool(cfg.threads)?.install(|| run_verify(suite, f.as_ref()))?;
            for c in &report.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                eprintln!("[{mark}] {} / {}: {}", c.suite, c.name, c.detail);
            }
            emit(&cfg, &report, IndexRow::kind("verify"))?;
            Ok(report.passed)
        }
        Command::Moment { q, point, form, common } => {
            let cfg = RunConfig::new("moment", &common, &form)?.with_point(&point)?.with_q(vec![q])?;
            let f = select_form(&cfg, true)?;
            let p = cfg.point.expect("point set");
            let report = pool(cfg.threads)?
                .install(|| moment_report(q, &p, &f, &cfg.form_label, &cfg.moment_config()))?;
            eprintln!(
                "q = {q}, s0 = {} + {}i\n  lhs          {:.12}\n  main term    {:.12}\n  residual     {:.12} (|.| = {:.6e})\n  identity gap {:.3e} (tolerance {:.3e})",
                p.sigma0,
                p.t0,
                report.lhs_direct,
                report.main_term,
                report.residual,
                report.residual_abs,
                report.identity_gap,
                report.identity_tolerance
            );
            emit(&cfg, &report, IndexRow::for_moment(&report))?;
            report.check_identity()?;
            Ok(true)
        }
        Command::Fit { q, q_min, q_max, point, form, common } => {
            let grid = match (q_min, q_max) {
                (Some(lo), Some(hi)) => primes_up_to(lo, hi),
                _ if !q.is_empty() => q,
                _ => DEFAULT_GRID.to_vec(),
            };
            let cfg = RunConfig::new("fit", &common, &form)?.with_point(&point)?.with_q(grid)?;
            let f = select_form(&cfg, true)?;
            let p = cfg.point.expect("point set");
            let (fit, reports) = pool(cfg.threads)?
                .install(|| exponent_fit(&cfg.q, &p, &f, &cfg.form_label, &cfg.moment_config()))?;
            for r in &reports {
                eprintln!(
                    "q = {:>3}  |residual| = {:.6e}  identity gap = {:.2e}",
                    r.q, r.residual_abs, r.identity_gap
                );
            }
            eprintln!(
                "slope {:.4} +- {:.4} (predicted envelope exponent {:.4}, epsilon = 0)",
                fit.slope, fit.slope_stderr, fit.envelope.q_exponent
            );
            emit(&cfg, &fit, IndexRow::for_fit(&fit))?;
            match reports.iter().find(|r| !r.identity_holds()) {
                Some(r) => r.check_identity().map(|_| true),
                None => Ok(true),
            }
        }
        Command::Voronoi { c, d, scale, form, common } => {
            let cfg = RunConfig::new("voronoi", &common, &form)?;
            let f = select_form(&cfg, true)?;
            let vc = VoronoiConfig::default();
            pool(cfg.threads)?.install(|| match (c, d, scale) {
                (Some(c), Some(d), Some(n)) => {
                    let k = VoronoiKernels::new(f.spectral_parameter(), &vc)?;
                    let r = verify_voronoi(&f, c, d, n, &k)?;
                    eprintln!("c = {c}, d = {d}, N = {n}: lhs {:.10}, rhs {:.10}, gap {:.3e}", r.lhs, r.rhs, r.gap);
                    emit(&cfg, &r, IndexRow::kind("voronoi"))?;
                    Ok(r.gap <= VORONOI_TOL)
                }
                _ => {
                    let (worst, count) = voronoi_panel(&f, &vc)?;
                    eprintln!("{count} cases, worst gap {:.3e} at {}", worst.value, worst.at);
                    emit(&cfg, &worst, IndexRow::kind("voronoi"))?;
                    Ok(worst.value <= VORONOI_TOL)
                }
            })
        }
        Command::Nonvanish { q, point, form, common } => {
            let cfg = RunConfig::new("nonvanish", &common, &form)?.with_point(&point)?.with_q(vec![q])?;
            let f = select_form(&cfg, true)?;
            let p = cfg.point.expect("point set");
            let report = pool(cfg.threads)?.install(|| {
                let tables = MomentTables::new(q, &p, &f, &cfg.moment_config())?;
                nonvanishing_scan(&tables)
            })?;
            for t in &report.terms {
                eprintln!(
                    "chi {:>3}: |L(f x chi)| = {:.6e}, |L(chi)| = {:.6e}, product {:.6e}{}",
                    t.index,
                    t.twisted_abs,
                    t.dirichlet_abs,
                    t.product_abs,
                    if t.nonvanishing { "  nonvanishing" } else { "" }
                );
            }
            eprintln!("{}", report.note);
            let mut row = IndexRow::kind("nonvanish");
            row.q = Some(q);
            row.sigma0 = Some(p.sigma0);
            row.t0 = Some(p.t0);
            emit(&cfg, &report, row)?;
            Ok(true)
        }
        Command::Fetch { label, depth, out } => {
            let outcome = fetch_remote(&label, depth, &out, &FetchConfig::from_env())?;
            stdout(&format!("{}\n", serde_json::to_string_pretty(&outcome)?))?;
            Ok(true)
        }
    }
}

/// Parses the process arguments, runs, and returns the exit status.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
