//! Command-line front end: argument parsing, dispatch and output.

mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rug::Float;
use serde_json::json;

use crate::closedform::{decimal, ConstantsBundle};
use crate::error::{Error, Result};
use crate::gfpipe::{extract_counts, Family, GfBundle};
use crate::laws::{
    appearances_law, blocks_law, builtin_family_law, components_law, curve_to_csv, edge_entropy_tau,
    edges_law, growth_curve, local_law, FamilyKind,
};
use crate::oracle::ORACLE_NMAX;

pub use verify::{run_checks, CheckOutcome, Fault};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PLANARCOUNT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "planarcount", version, about = "Exact and asymptotic counts of labelled planar graphs")]
pub struct Cli {
    /// Working precision of floating-point evaluations, in bits.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(128..))]
    pub precision_bits: u32,
    /// Truncation order of the series in x (the y order is three times this).
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=40))]
    pub order: u64,
    /// Significant digits in reported decimals.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=200))]
    pub digits: u64,
    /// Largest n compared against brute-force enumeration.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=ORACLE_NMAX as u64))]
    pub oracle_nmax: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Omit the header row of CSV output.
    #[arg(long, global = true)]
    pub no_header: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Every named constant with its published value and agreement.
    Constants,
    /// Exact counts and EGF coefficients of one family.
    Series {
        /// g (planar), c (connected), b (2-connected) or d (networks).
        #[arg(long, value_parser = parse_family)]
        which: Family,
        /// Tabulate by edge count as well as by vertex count.
        #[arg(long)]
        bivariate: bool,
    },
    /// The growth ratio exp(λ(μ)) as a function of the edge ratio μ.
    Curve {
        #[arg(long, default_value = "1.05")]
        mu_min: String,
        #[arg(long, default_value = "2.95")]
        mu_max: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Parameters of one limit law.
    Law {
        #[command(subcommand)]
        law: LawCommand,
    },
    /// Run the full consistency suite and report a pass/fail matrix.
    Verify {
        /// Corrupt stored data before checking (for testing the harness).
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum LawCommand {
    /// Number of edges.
    Edges,
    /// Local law at a fixed edge ratio.
    Local {
        #[arg(long)]
        mu: String,
        /// Also report the log-estimate of g(n, ⌊μn⌋)/n! at this n.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Appearances of a rooted graph on h vertices.
    Appearances {
        #[arg(long, default_value_t = 1)]
        h: u32,
        /// Ratio for a deviation bound.
        #[arg(long)]
        z: Option<String>,
    },
    /// Number of blocks in a connected graph.
    Blocks,
    /// Number of connected components.
    Components,
    /// Components belonging to a family.
    Family {
        #[arg(long, value_enum, default_value = "biconnected")]
        kind: FamilyArg,
        /// Vertex count for `--kind fixed`.
        #[arg(long)]
        vertices: Option<u32>,
        /// Automorphism count for `--kind fixed`.
        #[arg(long)]
        automorphisms: Option<u64>,
    },
    /// Growth rate of planar graphs counted by edges.
    Tau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Biconnected,
    Vertex,
    Edge,
    Fixed,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    Family::from_letter(s).ok_or_else(|| format!("unknown family '{s}' (expected g, c, b or d)"))
}

fn parse_float(s: &str, prec: u32) -> Result<Float> {
    Float::parse(s)
        .map(|v| Float::with_val(prec, v))
        .map_err(|e| Error::Domain(format!("'{s}' is not a number: {e}")))
}

impl Cli {
    fn digits(&self) -> usize {
        self.digits as usize
    }
}

/// Caps the global worker pool from the environment.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // A pool configured earlier in the process stays in place.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Result of one command: text to emit and an exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn json_text(v: &serde_json::Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn csv_text(header: Option<&[&str]>, rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn header<'a>(cli: &Cli, names: &'a [&'a str]) -> Option<&'a [&'a str]> {
    (!cli.no_header).then_some(names)
}

fn cmd_constants(cli: &Cli) -> Result<Outcome> {
    let bundle = ConstantsBundle::compute(cli.precision_bits)?;
    let entries = bundle.entries();
    let code = if entries.iter().all(|e| e.agrees() != Some(false)) { 0 } else { 1 };
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&bundle.to_json(cli.digits()))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    let r = e.record(cli.digits());
                    vec![
                        r.name,
                        r.value,
                        r.paper_value.unwrap_or_default(),
                        r.agrees_to_digits.map(|d| d.to_string()).unwrap_or_default(),
                        r.agrees.map(|a| a.to_string()).unwrap_or_default(),
                        r.formula,
                    ]
                })
                .collect();
            let names = ["name", "value", "paper_value", "agrees_to_digits", "agrees", "formula"];
            csv_text(header(cli, &names), &rows)?
        }
    };
    Ok(Outcome { text, code })
}

fn cmd_series(cli: &Cli, which: Family, bivariate: bool) -> Result<Outcome> {
    let n = cli.order as usize;
    let bundle = GfBundle::build(n)?;
    let table = extract_counts(&bundle, n, &[which])?;
    let s = bundle.series(which);
    let rows = &table.tables[&which];
    let text = match (cli.format.unwrap_or(Format::Json), bivariate) {
        (Format::Json, false) => {
            let egf = bundle.series(which).at_y_one();
            let counts: Vec<_> = (1..=n)
                .map(|k| {
                    json!({
                        "n": k.to_string(),
                        "count": table.total(which, k).expect("row present").to_string(),
                        "egf_coefficient": egf.coeff(k).map(|c| c.to_string()).unwrap_or_default(),
                    })
                })
                .collect();
            json_text(&json!({"family": which.letter(), "order": n.to_string(), "counts": counts}))?
        }
        (Format::Json, true) => {
            let mut cells = Vec::new();
            for (k, row) in rows.iter().enumerate().skip(1) {
                for (q, c) in row.iter().enumerate() {
                    cells.push(json!({
                        "n": k.to_string(),
                        "q": q.to_string(),
                        "count": c.to_string(),
                        "egf_coefficient": s.coeff(k, q).to_string(),
                    }));
                }
            }
            json_text(&json!({"family": which.letter(), "order": n.to_string(), "counts": cells}))?
        }
        (Format::Csv, false) => {
            let egf = s.at_y_one();
            let out: Vec<Vec<String>> = (1..=n)
                .map(|k| {
                    vec![
                        k.to_string(),
                        table.total(which, k).expect("row present").to_string(),
                        egf.coeff(k).map(|c| c.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(header(cli, &["n", "count", "egf_coefficient"]), &out)?
        }
        (Format::Csv, true) => {
            let mut out = Vec::new();
            for (k, row) in rows.iter().enumerate().skip(1) {
                for (q, c) in row.iter().enumerate() {
                    out.push(vec![k.to_string(), q.to_string(), c.to_string(), s.coeff(k, q).to_string()]);
                }
            }
            csv_text(header(cli, &["n", "q", "count", "egf_coefficient"]), &out)?
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn cmd_curve(cli: &Cli, mu_min: &str, mu_max: &str, steps: usize) -> Result<Outcome> {
    let p = cli.precision_bits;
    let lo = parse_float(mu_min, p)?;
    let hi = parse_float(mu_max, p)?;
    let points = growth_curve(&lo, &hi, steps)?;
    let d = cli.digits();
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => curve_to_csv(&points, d, !cli.no_header),
        Format::Json => {
            let rows: Vec<_> = points
                .iter()
                .map(|pt| {
                    json!({
                        "mu": decimal(&pt.mu, d),
                        "u": decimal(&pt.u, d),
                        "lambda_mu": decimal(&pt.lambda_mu, d),
                        "growth_ratio": decimal(&pt.growth_ratio, d),
                    })
                })
                .collect();
            json_text(&json!({ "curve": rows }))?
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn cmd_law(cli: &Cli, law: &LawCommand) -> Result<Outcome> {
    let p = cli.precision_bits;
    let d = cli.digits();
    let value = match law {
        LawCommand::Edges => edges_law(p)?.to_json(d),
        LawCommand::Local { mu, n } => {
            let pt = local_law(&parse_float(mu, p)?)?;
            let mut v = pt.to_json(d);
            if let Some(n) = n {
                use crate::laws::CountKind;
                v["n"] = json!(n.to_string());
                v["log_estimate_planar"] = json!(decimal(&pt.log_estimate(*n, CountKind::Planar)?, d));
                v["log_estimate_connected"] = json!(decimal(&pt.log_estimate(*n, CountKind::Connected)?, d));
            }
            v
        }
        LawCommand::Appearances { h, z } => {
            let a = appearances_law(*h, p)?;
            let mut v = a.law.to_json(d);
            if let Some(z) = z {
                v["deviation"] = a.deviation_bound(&parse_float(z, p)?)?.to_json(d);
            }
            v
        }
        LawCommand::Blocks => blocks_law(p)?.to_json(d),
        LawCommand::Components => components_law(p)?.to_json(d),
        LawCommand::Family {
            kind,
            vertices,
            automorphisms,
        } => {
            let kind = match kind {
                FamilyArg::Biconnected => FamilyKind::Biconnected,
                FamilyArg::Vertex => FamilyKind::SingleVertex,
                FamilyArg::Edge => FamilyKind::SingleEdge,
                FamilyArg::Fixed => FamilyKind::Fixed {
                    vertices: vertices.ok_or_else(|| Error::Domain("--vertices is required".into()))?,
                    automorphisms: automorphisms
                        .ok_or_else(|| Error::Domain("--automorphisms is required".into()))?,
                },
            };
            builtin_family_law(kind, p)?.to_json(d)
        }
        LawCommand::Tau => edge_entropy_tau(p)?.to_json(d),
    };
    Ok(Outcome {
        text: json_text(&value)?,
        code: 0,
    })
}

fn cmd_verify(cli: &Cli, fault: Option<Fault>) -> Result<Outcome> {
    let checks = run_checks(
        cli.order as usize,
        cli.oracle_nmax as usize,
        cli.precision_bits,
        cli.digits(),
        fault,
    );
    let code = if checks.iter().all(|c| c.passed) { 0 } else { 1 };
    let text = match cli.format {
        Some(Format::Json) => json_text(&serde_json::to_value(&checks)?)?,
        Some(Format::Csv) => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| vec![c.name.to_string(), c.status().into(), c.detail.clone()])
                .collect();
            csv_text(header(cli, &["check", "status", "detail"]), &rows)?
        }
        None => checks
            .iter()
            .map(|c| format!("{:<4}  {:<22}  {}\n", c.status(), c.name, c.detail))
            .collect(),
    };
    Ok(Outcome { text, code })
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Constants => cmd_constants(cli),
        Command::Series { which, bivariate } => cmd_series(cli, *which, *bivariate),
        Command::Curve {
            mu_min,
            mu_max,
            steps,
        } => cmd_curve(cli, mu_min, mu_max, *steps),
        Command::Law { law } => cmd_law(cli, law),
        Command::Verify { inject_fault } => cmd_verify(cli, *inject_fault),
    }
}

/// Parses `args`, runs the command, writes its output, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    configure_threads();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    outcome.code
}
