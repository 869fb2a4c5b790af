//! Command-line front end: instance files, seeded sweeps, CSV and JSON output.
//!
//! Every command returns a [`CmdOutput`] instead of printing, so the binary
//! only has to write the streams and exit with the code:
//! 0 success, 2 validation error, 3 verification failure, 4 nilpotent input.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{closed_form_curve, consistency_with_bounds, ClosedForm};
use crate::dynamics::{
    conjugation_invariance_check, exact_report, verify_free_proper, verify_metric_bounds, verify_quotient_bounds,
    AutoEquivalence, DEFAULT_N_MAX,
};
use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix, RandomLaurentParams};
use crate::perron::{check_pl_bounds, default_grid, uniform_grid};
use crate::semisimple::{random_stability_with, StabilityCondition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_NILPOTENT: i32 = 4;

/// Instance file format version understood by this build.
pub const INSTANCE_VERSION: u32 = 1;

/// Tolerance for the piecewise-linear region and the metric equalities.
pub const BOUND_TOL: f64 = 1e-9;
/// Slack allowed below the quotient lower bound at `n_max = 60`.
pub const QUOTIENT_TOL: f64 = 0.15;

pub const SUITES: [&str; 5] = ["metric-bounds", "free-proper", "quotient-bounds", "conjugation", "pl-bounds"];

#[derive(Parser, Debug)]
#[command(name = "catdyn", version, about = "Entropy, mass growth and isometry dynamics of semisimple categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample h_t = log ρ(M(e^{-t})) with the bound columns, as CSV.
    Entropy {
        #[arg(long)]
        instance: PathBuf,
        /// `lo:hi:n`; overrides the grid of the instance file.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Exact isometry report of an auto-equivalence, as JSON.
    Classify {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Run a seeded verification sweep.
    Verify {
        /// One of metric-bounds, free-proper, quotient-bounds, conjugation, pl-bounds.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Closed-form curve of a catalog entry plus its consistency report.
    Catalog {
        /// shift, gepner, dhkk, spherical-twist, serre-fractional-cy, serre-dim.
        #[arg(long)]
        name: String,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        w: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        f0: Option<i64>,
        #[arg(long = "N", allow_negative_numbers = true)]
        big_n: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        lower: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        upper: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
}

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmdOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn error(err: &Error) -> Self {
        let code = match err {
            Error::Nilpotent => EXIT_NILPOTENT,
            _ => EXIT_VALIDATION,
        };
        Self { stdout: String::new(), stderr: format!("error: {err}\n"), code }
    }
}

fn or_exit(result: Result<CmdOutput>) -> CmdOutput {
    result.unwrap_or_else(|e| CmdOutput::error(&e))
}

/// A t-grid: explicit points or `"lo:hi:n"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Points(Vec<f64>),
    Range(String),
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>> {
        match self {
            Self::Points(p) => Ok(p.clone()),
            Self::Range(s) => parse_grid(s),
        }
    }
}

/// Parses `lo:hi:n` into `n` uniform points.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(Error::InvalidGrid(format!("expected lo:hi:n, got `{spec}`")));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| Error::InvalidGrid(format!("bad number `{s}`")));
    let n = n.trim().parse::<usize>().map_err(|_| Error::InvalidGrid(format!("bad point count `{n}`")))?;
    uniform_grid(num(lo)?, num(hi)?, n)
}

/// The JSON instance file read by `entropy` and `classify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<LaurentMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub auto_equivalence: Option<AutoEquivalence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilityCondition>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stabilities: Vec<StabilityCondition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let inst: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != INSTANCE_VERSION {
            return Err(Error::Parse(format!(
                "unsupported instance version {} (expected {INSTANCE_VERSION})",
                self.version
            )));
        }
        if self.matrix.is_none() && self.auto_equivalence.is_none() {
            return Err(Error::Parse("instance needs a matrix or an auto_equivalence".into()));
        }
        let mut sizes = Vec::new();
        sizes.extend(self.matrix.as_ref().map(LaurentMatrix::size));
        sizes.extend(self.auto_equivalence.as_ref().map(AutoEquivalence::size));
        sizes.extend(self.stability.iter().chain(&self.stabilities).map(StabilityCondition::size));
        if let Some(&first) = sizes.first() {
            if let Some(&other) = sizes.iter().find(|&&s| s != first) {
                return Err(Error::SizeMismatch { left: first, right: other });
            }
        }
        if let Some(g) = &self.grid {
            g.points()?;
        }
        Ok(())
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The matrix, or the matrix of the auto-equivalence.
    pub fn functor_matrix(&self) -> Option<LaurentMatrix> {
        self.matrix.clone().or_else(|| self.auto_equivalence.as_ref().map(AutoEquivalence::matrix))
    }
}

fn resolve_grid(flag: Option<&str>, instance: Option<&GridSpec>) -> Result<Vec<f64>> {
    match (flag, instance) {
        (Some(s), _) => parse_grid(s),
        (None, Some(g)) => g.points(),
        (None, None) => Ok(default_grid()),
    }
}

/// CSV of `h_t` with the bound columns; exit 3 if the bounds are violated.
pub fn cmd_entropy(instance: &InstanceFile, grid_flag: Option<&str>) -> CmdOutput {
    or_exit((|| {
        let m = instance.functor_matrix().ok_or_else(|| Error::Parse("instance has no matrix".into()))?;
        let grid = resolve_grid(grid_flag, instance.grid.as_ref())?;
        let report = check_pl_bounds(&m, &grid)?;
        let mut out = CmdOutput::ok(report.curve.to_csv());
        if !report.holds(BOUND_TOL) {
            out.code = EXIT_VERIFICATION;
            out.stderr = format!("bound violation {} exceeds {BOUND_TOL}\n", report.max_violation);
        }
        Ok(out)
    })())
}

/// Pretty JSON isometry report.
pub fn cmd_classify(instance: &InstanceFile) -> CmdOutput {
    or_exit((|| {
        let alpha = instance
            .auto_equivalence
            .as_ref()
            .ok_or_else(|| Error::Parse("instance has no auto_equivalence".into()))?;
        let report = exact_report(alpha)?;
        let mut json = serde_json::to_string_pretty(&report).map_err(|e| Error::Parse(e.to_string()))?;
        json.push('\n');
        Ok(CmdOutput::ok(json))
    })())
}

/// A random auto-equivalence with `1 ≤ |F| ≤ 6`, `|m_i| ≤ 5`, and a random
/// stability condition with masses in `[0.5, 2]` and phases in `[−1, 1]`.
pub fn sample_auto_equivalence(seed: u64) -> (AutoEquivalence, StabilityCondition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.random_range(1..=6);
    let alpha = AutoEquivalence::random(&mut rng, size, 5);
    let sigma = random_stability_with(&mut rng, size, (0.5, 2.0), (-1.0, 1.0)).expect("valid ranges");
    (alpha, sigma)
}

/// A pair of random auto-equivalences on the same `F`.
pub fn sample_auto_equivalence_pair(seed: u64) -> (AutoEquivalence, AutoEquivalence) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.random_range(1..=6);
    (AutoEquivalence::random(&mut rng, size, 5), AutoEquivalence::random(&mut rng, size, 5))
}

/// A random non-nilpotent Laurent matrix with the default parameters.
pub fn sample_matrix(seed: u64) -> LaurentMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LaurentMatrix::random_non_nilpotent(&mut rng, &RandomLaurentParams::default())
}

/// One failed instance of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepFailure {
    pub seed: u64,
    pub instance: serde_json::Value,
    pub violation: f64,
}

/// Outcome of a seeded sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    /// Instances where the check does not apply (counted as passed).
    pub not_applicable: usize,
    pub max_violation: f64,
    pub failures: Vec<SweepFailure>,
}

struct Outcome {
    pass: bool,
    applicable: bool,
    violation: f64,
    instance: serde_json::Value,
}

fn run_one(suite: &str, seed: u64) -> Result<Outcome> {
    match suite {
        "metric-bounds" => {
            let (alpha, sigma) = sample_auto_equivalence(seed);
            let rep = verify_metric_bounds(&alpha, &sigma)?;
            Ok(Outcome { pass: rep.holds, applicable: true, violation: rep.violation, instance: to_json(&alpha) })
        }
        "free-proper" => {
            let (alpha, sigma) = sample_auto_equivalence(seed);
            match verify_free_proper(&alpha, &sigma, DEFAULT_N_MAX) {
                Ok(rep) => Ok(Outcome {
                    pass: rep.holds(),
                    applicable: true,
                    violation: (2.0 * rep.epsilon - rep.min_separation).max(0.0),
                    instance: to_json(&alpha),
                }),
                Err(Error::NotApplicable(_)) => {
                    Ok(Outcome { pass: true, applicable: false, violation: 0.0, instance: to_json(&alpha) })
                }
                Err(e) => Err(e),
            }
        }
        "quotient-bounds" => {
            let (alpha, sigma) = sample_auto_equivalence(seed);
            let rep = verify_quotient_bounds(&alpha, &sigma, DEFAULT_N_MAX)?;
            let below = (rep.lower - rep.estimate).max(0.0);
            let above = (rep.estimate - rep.upper).max(0.0);
            Ok(Outcome {
                pass: below <= QUOTIENT_TOL && above <= BOUND_TOL,
                applicable: true,
                violation: rep.violation,
                instance: to_json(&alpha),
            })
        }
        "conjugation" => {
            let (alpha, beta) = sample_auto_equivalence_pair(seed);
            let rep = conjugation_invariance_check(&alpha, &beta, &default_grid())?;
            Ok(Outcome {
                pass: rep.holds(BOUND_TOL),
                applicable: true,
                violation: rep.max_gap,
                instance: serde_json::json!({ "alpha": to_json(&alpha), "beta": to_json(&beta) }),
            })
        }
        "pl-bounds" => {
            let m = sample_matrix(seed);
            let rep = check_pl_bounds(&m, &default_grid())?;
            Ok(Outcome {
                pass: rep.holds(BOUND_TOL),
                applicable: true,
                violation: rep.max_violation,
                instance: to_json(&m),
            })
        }
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

/// Runs `count` instances seeded `seed, seed + 1, ...` in parallel; results
/// are reported in seed order.
pub fn run_sweep(suite: &str, seed: u64, count: usize) -> Result<SweepSummary> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    let outcomes: Vec<(u64, Outcome)> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            run_one(suite, s).map(|o| (s, o))
        })
        .collect::<Result<_>>()?;
    let mut summary = SweepSummary {
        suite: suite.to_string(),
        seed,
        count,
        passed: 0,
        failed: 0,
        not_applicable: 0,
        max_violation: 0.0,
        failures: Vec::new(),
    };
    for (s, o) in outcomes {
        summary.max_violation = summary.max_violation.max(o.violation);
        if !o.applicable {
            summary.not_applicable += 1;
        }
        if o.pass {
            summary.passed += 1;
        } else {
            summary.failed += 1;
            summary.failures.push(SweepFailure { seed: s, instance: o.instance, violation: o.violation });
        }
    }
    Ok(summary)
}

/// JSON sweep summary; exit 3 if any instance fails.
pub fn cmd_verify(suite: &str, seed: u64, count: usize) -> CmdOutput {
    or_exit((|| {
        let summary = run_sweep(suite, seed, count)?;
        let mut json = serde_json::to_string_pretty(&summary).map_err(|e| Error::Parse(e.to_string()))?;
        json.push('\n');
        let mut out = CmdOutput::ok(json);
        if summary.failed > 0 {
            out.code = EXIT_VERIFICATION;
            out.stderr = format!("{} of {} instances failed\n", summary.failed, summary.count);
        }
        Ok(out)
    })())
}

/// Parameters of a catalog entry as given on the command line.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CatalogParams {
    pub n: Option<i64>,
    pub w: Option<f64>,
    pub r: Option<f64>,
    pub f0: Option<i64>,
    pub big_n: Option<i64>,
    pub m: Option<i64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

/// Builds and validates a catalog entry from its name and parameters.
pub fn catalog_entry(name: &str, p: &CatalogParams) -> Result<ClosedForm> {
    fn need<T>(v: Option<T>, flag: &str, name: &str) -> Result<T> {
        v.ok_or_else(|| Error::Parse(format!("`{name}` needs --{flag}")))
    }
    let cf = match name {
        "shift" => ClosedForm::Shift { n: need(p.n, "n", name)? },
        "gepner" => ClosedForm::Gepner { w: need(p.w, "w", name)? },
        "dhkk" => ClosedForm::Dhkk { r: need(p.r, "r", name)?, f0: need(p.f0, "f0", name)? },
        "spherical-twist" => ClosedForm::SphericalTwist { big_n: need(p.big_n, "N", name)? },
        "serre-fractional-cy" => ClosedForm::SerreFractionalCy { m: need(p.m, "m", name)?, n: need(p.n, "n", name)? },
        "serre-dim" => {
            ClosedForm::SerreDim { lower: need(p.lower, "lower", name)?, upper: need(p.upper, "upper", name)? }
        }
        other => return Err(Error::Parse(format!("unknown catalog entry `{other}`"))),
    };
    cf.validate()?;
    Ok(cf)
}

/// CSV of the closed-form curve on stdout and the consistency report as JSON
/// on stderr. Entries with only known slopes print a JSON summary instead.
pub fn cmd_catalog(cf: &ClosedForm, grid: &[f64]) -> CmdOutput {
    or_exit((|| {
        if let ClosedForm::SerreDim { lower, upper } = *cf {
            cf.validate()?;
            let json = serde_json::json!({
                "entry": cf,
                "slope_minus": lower,
                "slope_plus": upper,
                "displacement_lower": (-lower).max(upper),
            });
            return Ok(CmdOutput::ok(format!("{json}\n")));
        }
        let curve = closed_form_curve(cf, grid)?;
        let report = consistency_with_bounds(cf, grid)?;
        let mut out = CmdOutput::ok(curve.to_csv());
        out.stderr = format!("{}\n", serde_json::to_string(&report).map_err(|e| Error::Parse(e.to_string()))?);
        if !report.holds() {
            out.code = EXIT_VERIFICATION;
        }
        Ok(out)
    })())
}

/// Dispatches parsed arguments.
pub fn run(cli: &Cli) -> CmdOutput {
    match &cli.command {
        Command::Entropy { instance, grid } => match InstanceFile::read(instance) {
            Ok(inst) => cmd_entropy(&inst, grid.as_deref()),
            Err(e) => CmdOutput::error(&e),
        },
        Command::Classify { instance } => match InstanceFile::read(instance) {
            Ok(inst) => cmd_classify(&inst),
            Err(e) => CmdOutput::error(&e),
        },
        Command::Verify { suite, seed, count } => cmd_verify(suite, *seed, *count),
        Command::Catalog { name, n, w, r, f0, big_n, m, lower, upper, grid } => {
            let params =
                CatalogParams { n: *n, w: *w, r: *r, f0: *f0, big_n: *big_n, m: *m, lower: *lower, upper: *upper };
            let entry = catalog_entry(name, &params);
            let points = resolve_grid(grid.as_deref(), None);
            match (entry, points) {
                (Ok(cf), Ok(g)) => cmd_catalog(&cf, &g),
                (Err(e), _) | (_, Err(e)) => CmdOutput::error(&e),
            }
        }
    }
}
