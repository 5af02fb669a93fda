//! Command-line front end: argument parsing, dispatch and output.

pub mod config;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qlo_core::thermo::Method;
use qlo_core::{growth, presets, suite, IndependenceGraph, Rational, ThermoContext, Trace, TruncatedRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::config::{parse_config, ConfigError, MonoidConfig};
use crate::format::{csv_table, num, rational, Format};

/// Largest truncated space the `gibbs` and `kms-check` commands build.
pub const MAX_BASIS: u64 = 2_000_000;

#[derive(Debug, Parser)]
#[command(name = "qlo", version, about = "Growth, critical temperature and KMS checks for right-angled Artin monoids")]
pub struct Cli {
    #[command(flatten)]
    pub source: Source,

    /// Output encoding.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct Source {
    /// JSON monoid configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Built-in graph: free:n, abelian:k, path:n or cycle:n.
    #[arg(long, global = true)]
    pub preset: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of elements at each weight up to the cutoff.
    Growth {
        #[arg(long)]
        cutoff: String,
    },
    /// Clique polynomial.
    CliquePoly,
    /// Critical inverse temperature.
    BetaC {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Roots of the clique polynomial in (0, 1].
    Roots {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Series inverse of the clique polynomial up to the cutoff.
    Invert {
        #[arg(long)]
        cutoff: String,
    },
    /// Runs every invariant check; exits with status 5 on any failure.
    Verify {
        #[arg(long)]
        cutoff: String,
    },
    /// Gibbs state on the truncated space against exact values.
    Gibbs {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        cutoff: String,
    },
    /// Symbolic and truncated-numeric KMS checks on random monomials.
    KmsCheck {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        cutoff: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Growth-rate estimate of the critical temperature.
    Limsup {
        #[arg(long)]
        cutoff: String,
    },
    /// Prints the monoid as a JSON configuration.
    EmitConfig,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Computation(_) => 4,
        }
    }
}

impl From<qlo_core::Error> for CliError {
    fn from(e: qlo_core::Error) -> Self {
        use qlo_core::Error::*;
        match e {
            NoGenerators | TooManyGenerators(_) | DuplicateGenerator(_) | UnknownEndpoint(_) | SelfLoop(_)
            | DuplicateEdge(..) | NonPositiveWeight(_) | InvalidPreset(_) | UnknownGenerator(_) | NegativeCutoff
            | InvalidTolerance | NonPositiveBeta | NegativeBeta => CliError::Validation(e.to_string()),
            _ => CliError::Computation(e.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// What a successful run produced.
#[derive(Debug, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    /// False when a verification command found a violated invariant.
    pub verified: bool,
}

impl Report {
    fn ok(output: String) -> Self {
        Self { output, verified: true }
    }
}

pub const EXIT_VERIFICATION: i32 = 5;

fn load(source: &Source) -> Result<(IndependenceGraph, Option<String>), CliError> {
    match (&source.config, &source.preset) {
        (Some(path), None) => {
            let config = parse_config(path)?;
            let g = config.to_graph()?;
            Ok((g, config.label))
        }
        (None, Some(p)) => Ok((presets::parse(p)?, Some(p.clone()))),
        _ => Err(CliError::Usage("exactly one of --config and --preset is required".into())),
    }
}

fn parse_cutoff(raw: &str) -> Result<Rational, CliError> {
    let w: Rational = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("cutoff `{raw}` is not a rational number such as 10 or 7/2")))?;
    if w < Rational::from_integer(0) {
        return Err(qlo_core::Error::NegativeCutoff.into());
    }
    Ok(w)
}

fn check_basis(g: &IndependenceGraph, cutoff: Rational) -> Result<(), CliError> {
    let total = growth::growth_table(g, cutoff)?.total();
    if total > MAX_BASIS.into() {
        return Err(CliError::Computation(format!(
            "truncated space at cutoff {} has {total} elements, more than {MAX_BASIS}; lower --cutoff",
            rational(cutoff)
        )));
    }
    Ok(())
}

fn json_string(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json serializes");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let (g, label) = load(&cli.source)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Growth { cutoff } => growth_cmd(&g, parse_cutoff(cutoff)?, fmt),
        Command::CliquePoly => Ok(poly_cmd(&growth::clique_polynomial(&g), fmt)),
        Command::Invert { cutoff } => {
            let inv = growth::invert_series(&growth::clique_polynomial(&g), parse_cutoff(cutoff)?)?;
            Ok(poly_cmd(&inv, fmt))
        }
        Command::BetaC { tol } => beta_c_cmd(&ThermoContext::new(g)?, *tol, fmt),
        Command::Roots { tol } => roots_cmd(&ThermoContext::new(g)?, *tol, fmt),
        Command::Verify { cutoff } => verify_cmd(&g, parse_cutoff(cutoff)?, fmt),
        Command::Gibbs { beta, cutoff } => gibbs_cmd(&ThermoContext::new(g)?, *beta, parse_cutoff(cutoff)?, fmt),
        Command::KmsCheck {
            beta,
            cutoff,
            samples,
            seed,
        } => kms_cmd(&ThermoContext::new(g)?, *beta, parse_cutoff(cutoff)?, *samples, *seed, fmt),
        Command::Limsup { cutoff } => {
            let w = parse_cutoff(cutoff)?;
            let est = ThermoContext::new(g)?.beta_critical_limsup_estimate(w)?;
            Ok(Report::ok(match fmt {
                Format::Text => format!("{}\n", num(est)),
                Format::Csv => csv_table(&["cutoff_num", "cutoff_den", "estimate"], &[vec![
                    w.numer().to_string(),
                    w.denom().to_string(),
                    num(est),
                ]]),
                Format::Json => json_string(json!({ "cutoff": rational(w), "estimate": est })),
            }))
        }
        Command::EmitConfig => Ok(Report::ok(format!("{}\n", MonoidConfig::from_graph(&g, label).emit()))),
    }
}

fn growth_cmd(g: &IndependenceGraph, cutoff: Rational, fmt: Format) -> Result<Report, CliError> {
    let table = growth::growth_table(g, cutoff)?;
    let rows: Vec<Vec<String>> = table
        .rows()
        .iter()
        .map(|r| vec![r.lambda.numer().to_string(), r.lambda.denom().to_string(), r.count.to_string()])
        .collect();
    Ok(Report::ok(match fmt {
        Format::Text => rows.iter().map(|r| format!("{}/{}\t{}\n", r[0], r[1], r[2])).collect(),
        Format::Csv => csv_table(&["lambda_num", "lambda_den", "a_n"], &rows),
        Format::Json => json_string(json!({
            "cutoff": rational(cutoff),
            "rows": table.rows().iter().map(|r| json!({
                "lambda": rational(r.lambda),
                "a_n": r.count.to_string(),
            })).collect::<Vec<_>>(),
        })),
    }))
}

fn poly_cmd(p: &qlo_core::WeightedPolynomial, fmt: Format) -> Report {
    let terms: Vec<(Rational, String)> = p.terms().map(|(u, c)| (p.exponent(u), c.to_string())).collect();
    Report::ok(match fmt {
        Format::Text => format!("{p}\n"),
        Format::Csv => csv_table(
            &["exponent_num", "exponent_den", "coefficient"],
            &terms
                .iter()
                .map(|(e, c)| vec![e.numer().to_string(), e.denom().to_string(), c.clone()])
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_string(json!({
            "polynomial": p.to_string(),
            "terms": terms.iter().map(|(e, c)| json!({ "exponent": rational(*e), "coefficient": c })).collect::<Vec<_>>(),
        })),
    })
}

fn beta_c_cmd(ctx: &ThermoContext, tol: f64, fmt: Format) -> Result<Report, CliError> {
    let beta_c = ctx.beta_critical(tol)?;
    let bound = ctx.critical_upper_bound();
    Ok(Report::ok(match fmt {
        Format::Text => format!("{}\n", num(beta_c)),
        Format::Csv => csv_table(&["beta_c", "upper_bound"], &[vec![num(beta_c), num(bound)]]),
        Format::Json => json_string(json!({
            "beta_c": beta_c,
            "is_zero": ctx.critical_is_zero(),
            "upper_bound": bound,
            "tol": tol,
        })),
    }))
}

fn roots_cmd(ctx: &ThermoContext, tol: f64, fmt: Format) -> Result<Report, CliError> {
    let report = ctx.clique_roots_in_unit_interval(tol)?;
    let rows: Vec<Vec<String>> = report
        .roots
        .iter()
        .map(|r| {
            vec![
                num(r.value),
                num(r.lower),
                num(r.upper),
                r.multiplicity.to_string(),
                r.exact.to_string(),
                r.merged.to_string(),
            ]
        })
        .collect();
    Ok(Report::ok(match fmt {
        Format::Text => {
            let mut s: String = report
                .roots
                .iter()
                .map(|r| format!("{} multiplicity {}{}\n", num(r.value), r.multiplicity, if r.exact { " exact" } else { "" }))
                .collect();
            if !report.subcritical.is_empty() {
                let sub: Vec<String> = report.subcritical.iter().map(|&x| num(x)).collect();
                s.push_str(&format!("subcritical: {}\n", sub.join(", ")));
            }
            s
        }
        Format::Csv => csv_table(&["value", "lower", "upper", "multiplicity", "exact", "merged"], &rows),
        Format::Json => json_string(json!({
            "roots": report.roots.iter().map(|r| json!({
                "value": r.value,
                "lower": r.lower,
                "upper": r.upper,
                "multiplicity": r.multiplicity,
                "exact": r.exact,
                "merged": r.merged,
            })).collect::<Vec<_>>(),
            "subcritical": report.subcritical,
        })),
    }))
}

fn verify_cmd(g: &IndependenceGraph, cutoff: Rational, fmt: Format) -> Result<Report, CliError> {
    let outcomes = suite::run(g, cutoff)?;
    let verified = outcomes.iter().all(|c| c.passed);
    let output = match fmt {
        Format::Text => {
            let mut s: String = outcomes
                .iter()
                .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect();
            let failed: Vec<&str> = outcomes.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            if failed.is_empty() {
                s.push_str(&format!("all {} checks passed\n", outcomes.len()));
            } else {
                s.push_str(&format!("violated: {}\n", failed.join(", ")));
            }
            s
        }
        Format::Csv => csv_table(
            &["check", "passed", "detail"],
            &outcomes
                .iter()
                .map(|c| vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()])
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_string(json!({
            "passed": verified,
            "checks": outcomes.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
        })),
    };
    Ok(Report { output, verified })
}

fn gibbs_cmd(ctx: &ThermoContext, beta: f64, cutoff: Rational, fmt: Format) -> Result<Report, CliError> {
    let g = ctx.graph();
    let z_closed = ctx.partition_function(beta, Method::Closed)?;
    let z_trunc = ctx.partition_function(beta, Method::Truncated(cutoff))?;
    let tail = ctx.tail_bound(beta, cutoff)?;
    check_basis(g, cutoff)?;
    let rep = TruncatedRep::new(g, cutoff)?;
    let mut elements = vec![g.identity()];
    elements.extend(g.generators().map(|s| g.letter(s)));
    let mut rows = Vec::new();
    for p in &elements {
        let exact = ctx.gibbs_value(p, p)?.at(beta);
        let numeric = rep.gibbs_numeric(&rep.monomial(p, p)?, beta)?.re;
        rows.push((g.format_trace(p), p.weight(), exact, numeric, (numeric - exact).abs()));
    }
    Ok(Report::ok(match fmt {
        Format::Text => {
            let mut s = format!(
                "beta {}  cutoff {}  dimension {}\nZ closed {}  Z truncated {}  tail {}\n",
                num(beta),
                rational(cutoff),
                rep.dim(),
                num(z_closed),
                num(z_trunc),
                num(tail)
            );
            for (name, _, exact, numeric, err) in &rows {
                s.push_str(&format!("{name}\texact {}\ttruncated {}\terror {}\n", num(*exact), num(*numeric), num(*err)));
            }
            s
        }
        Format::Csv => csv_table(
            &["element", "weight_num", "weight_den", "exact", "truncated", "abs_error"],
            &rows
                .iter()
                .map(|(name, w, exact, numeric, err)| {
                    vec![name.clone(), w.numer().to_string(), w.denom().to_string(), num(*exact), num(*numeric), num(*err)]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_string(json!({
            "beta": beta,
            "cutoff": rational(cutoff),
            "dimension": rep.dim(),
            "z_closed": z_closed,
            "z_truncated": z_trunc,
            "tail_bound": tail,
            "values": rows.iter().map(|(name, w, exact, numeric, err)| json!({
                "element": name,
                "weight": rational(*w),
                "exact": exact,
                "truncated": numeric,
                "abs_error": err,
            })).collect::<Vec<_>>(),
        })),
    }))
}

fn random_trace(rng: &mut ChaCha8Rng, g: &IndependenceGraph, max_len: usize) -> Trace {
    let gens: Vec<_> = g.generators().collect();
    let len = rng.gen_range(0..=max_len);
    let word: Vec<_> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
    g.normalize(&word)
}

fn kms_cmd(ctx: &ThermoContext, beta: f64, cutoff: Rational, samples: usize, seed: u64, fmt: Format) -> Result<Report, CliError> {
    let g = ctx.graph();
    ctx.partition_function(beta, Method::Closed)?;
    check_basis(g, cutoff)?;
    let rep = TruncatedRep::new(g, cutoff)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut verified = true;
    for i in 0..samples {
        let q: Vec<Trace> = (0..4).map(|_| random_trace(&mut rng, g, 2)).collect();
        let symbolic = ctx.kms_identity_check(&q[0], &q[1], &q[2], &q[3])?.holds;
        let numeric = rep.kms_numeric_check(ctx, (&q[0], &q[1]), (&q[2], &q[3]), beta, 1e-12)?;
        verified &= symbolic && numeric.within_bound;
        let mut row: Vec<String> = vec![i.to_string()];
        row.extend(q.iter().map(|t| g.format_trace(t)));
        row.extend([symbolic.to_string(), num(numeric.residual), num(numeric.bound), numeric.within_bound.to_string()]);
        rows.push(row);
    }
    let header = ["sample", "p1", "q1", "p2", "q2", "symbolic", "residual", "bound", "within_bound"];
    let output = match fmt {
        Format::Text => {
            let symbolic_ok = rows.iter().filter(|r| r[5] == "true").count();
            let numeric_ok = rows.iter().filter(|r| r[8] == "true").count();
            let mut s = format!(
                "{samples} samples at beta {} and cutoff {}\nsymbolic identity holds: {symbolic_ok}/{samples}\nwithin truncation bound: {numeric_ok}/{samples}\n",
                num(beta),
                rational(cutoff)
            );
            for r in rows.iter().filter(|r| r[5] != "true" || r[8] != "true") {
                s.push_str(&format!("failed sample {}: ({}, {}, {}, {}) residual {} bound {}\n", r[0], r[1], r[2], r[3], r[4], r[6], r[7]));
            }
            s
        }
        Format::Csv => csv_table(&header, &rows),
        Format::Json => json_string(json!({
            "beta": beta,
            "cutoff": rational(cutoff),
            "passed": verified,
            "samples": rows.iter().map(|r| {
                header.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>()
            }).collect::<Vec<_>>(),
        })),
    };
    Ok(Report { output, verified })
}
