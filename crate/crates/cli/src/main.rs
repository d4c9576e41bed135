//! `tspread`: command-line access to t-spread strongly stable ideals.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid arguments,
//! 3 domain error (input not t-spread, ideal not strongly stable,
//! construction not applicable), 4 search budget exhausted.

use std::ops::RangeInclusive;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tspread::betti::{corners_from_table, corners_via_characterization, graded_betti};
use tspread::construct::{build_omegas, construct_extremal_ideal, omega_claim_check, slex_successor_with_max_n};
use tspread::format;
use tspread::ideal::{borel_closure_degree, borel_ideal, iterated_shadow, SpreadIdeal};
use tspread::monomial::{enumerate, parse_monomial_list, spread_count, Context, Monomial, MonomialSet};
use tspread::oracle::{cross_validate, regenerate_table, SearchBudget};
use tspread::Error;

const BUDGET_ENV: &str = "TSPREAD_BUDGET_SECONDS";

#[derive(Parser)]
#[command(name = "tspread", version, about = "t-spread strongly stable ideals, Betti numbers and extremal corners")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Markdown,
    Csv,
}

#[derive(clap::Args)]
struct Ring {
    /// Number of variables.
    #[arg(short = 'n', long = "vars")]
    n: u32,
    /// Spread parameter.
    #[arg(short = 't', long = "spread")]
    t: u32,
}

impl Ring {
    fn ctx(&self) -> Result<Context, Failure> {
        Ok(Context::new(self.n, self.t)?)
    }
}

#[derive(clap::Args)]
struct Budget {
    /// Wall-clock limit for exhaustive searches [default: $TSPREAD_BUDGET_SECONDS].
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Maximal number of ideals visited per cell.
    #[arg(long)]
    max_ideals: Option<u64>,
}

impl Budget {
    fn resolve(&self) -> Result<SearchBudget, Failure> {
        let seconds = match self.budget_seconds {
            Some(s) => Some(s),
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => Some(v.parse::<f64>().map_err(|_| Failure::usage(format!("{BUDGET_ENV}={v} is not a number")))?),
                Err(_) => None,
            },
        };
        let timeout = match seconds {
            Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(Failure::usage(format!("budget of {s} seconds must be positive"))),
            None => None,
        };
        Ok(SearchBudget { timeout, max_ideals: self.max_ideals, ..SearchBudget::unlimited() })
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the t-spread monomials of degree d in slex-descending order.
    Enumerate {
        #[command(flatten)]
        ring: Ring,
        #[arg(short = 'd', long)]
        degree: usize,
        /// Print only the number of monomials.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Borel closure of one t-spread monomial within its degree.
    Closure {
        #[command(flatten)]
        ring: Ring,
        monomial: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The m-fold t-shadow of a set of monomials of one degree.
    Shadow {
        #[command(flatten)]
        ring: Ring,
        /// Comma-separated monomials, e.g. "x1*x4,x2*x5".
        set: String,
        #[arg(short = 'm', long, default_value_t = 1)]
        times: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Next t-spread monomial below u in slex order with the same maximal index n.
    Successor {
        #[command(flatten)]
        ring: Ring,
        monomial: String,
    },
    /// Graded Betti numbers and corners of an ideal.
    Betti {
        /// JSON file {"n","t","gens"} or {"n","t","borel"}.
        file: Option<PathBuf>,
        /// Minimal generators, comma-separated.
        #[arg(long, conflicts_with_all = ["file", "borel"])]
        gens: Option<String>,
        /// Borel generators, comma-separated.
        #[arg(long, conflicts_with = "file")]
        borel: Option<String>,
        #[arg(short = 'n', long = "vars")]
        n: Option<u32>,
        #[arg(short = 't', long = "spread")]
        t: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the ideal with the maximal number of corners.
    Construct {
        #[command(flatten)]
        ring: Ring,
        /// Initial degree.
        #[arg(short = 'l', long = "ell1")]
        ell1: usize,
        /// Include the minimal generators of the ideal.
        #[arg(long)]
        with_ideal: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recheck the constructed monomials by independent search.
    Claim {
        #[command(flatten)]
        ring: Ring,
        #[arg(short = 'l', long = "ell1")]
        ell1: usize,
    },
    /// Table of maximal corner counts.
    Table {
        #[arg(short = 't', long = "spread")]
        t: u32,
        /// Range of n, `a:b` inclusive.
        #[arg(long = "n", value_parser = parse_range::<u32>)]
        ns: RangeInclusive<u32>,
        /// Range of initial degrees, `a:b` inclusive.
        #[arg(long = "l", value_parser = parse_range::<usize>)]
        ells: RangeInclusive<usize>,
        /// Use exhaustive search for every n up to this value.
        #[arg(long)]
        brute_force_upto: Option<u32>,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare every closed form with exhaustive search; JSON lines.
    Validate {
        #[arg(long = "n", value_parser = parse_range::<u32>)]
        ns: RangeInclusive<u32>,
        #[arg(long = "t", value_parser = parse_range::<u32>)]
        ts: RangeInclusive<u32>,
        #[arg(long = "l", value_parser = parse_range::<usize>)]
        ells: RangeInclusive<usize>,
        #[command(flatten)]
        budget: Budget,
    },
}

fn parse_range<T: std::str::FromStr + PartialOrd + Copy>(s: &str) -> Result<RangeInclusive<T>, String> {
    let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("`{x}` is not a number"));
    let (a, b) = match s.split_once(':') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

/// An error together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Self { code: 2, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidContext(_) | Error::InvalidArgument(_) | Error::Parse(_) | Error::InvalidMonomial(_) => 2,
            Error::IndexOutOfRange { .. }
            | Error::NotSpread { .. }
            | Error::DegreeMismatch { .. }
            | Error::NotStronglyStable(_)
            | Error::Inapplicable(_) => 3,
            Error::BudgetExceeded(_) => 4,
            Error::InvariantViolation(_) => 1,
        };
        Self { code, message: e.to_string() }
    }
}

/// Printed output plus the exit code to report after printing it.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn set_output(set: &MonomialSet, format: Format) -> String {
    match format {
        Format::Json => {
            let list: Vec<&[u32]> = set.iter().map(Monomial::indices).collect();
            format!("{}\n", json!(list))
        }
        _ => set.iter().map(|u| format!("{u}\n")).collect(),
    }
}

fn monomial_arg(s: &str, ctx: &Context) -> Result<Monomial, Failure> {
    let u: Monomial = s.parse()?;
    u.check_in(ctx)?;
    Ok(u)
}

fn load_ideal(
    file: Option<PathBuf>,
    gens: Option<String>,
    borel: Option<String>,
    n: Option<u32>,
    t: Option<u32>,
) -> Result<SpreadIdeal, Failure> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(format::parse_ideal_json(&text)?);
    }
    let (Some(n), Some(t)) = (n, t) else {
        return Err(Failure::usage("inline generators need -n and -t".into()));
    };
    let ctx = Context::new(n, t)?;
    match (gens, borel) {
        (Some(g), None) => Ok(SpreadIdeal::from_generators(ctx, parse_monomial_list(&g)?)?),
        (None, Some(b)) => Ok(borel_ideal(&parse_monomial_list(&b)?, &ctx)?),
        _ => Err(Failure::usage("give an ideal file, --gens or --borel".into())),
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Enumerate { ring, degree, count, format } => {
            let ctx = ring.ctx()?;
            if count {
                return Ok(Output::ok(format!("{}\n", spread_count(&ctx, degree))));
            }
            Ok(Output::ok(set_output(&enumerate(&ctx, degree), format)))
        }
        Command::Closure { ring, monomial, format } => {
            let ctx = ring.ctx()?;
            let u = monomial_arg(&monomial, &ctx)?;
            Ok(Output::ok(set_output(&borel_closure_degree(&u, &ctx)?, format)))
        }
        Command::Shadow { ring, set, times, format } => {
            let ctx = ring.ctx()?;
            let members = parse_monomial_list(&set)?;
            for u in &members {
                u.check_in(&ctx)?;
                if !tspread::monomial::is_t_spread(u, &ctx)? {
                    return Err(Error::NotSpread { monomial: u.to_string(), t: ctx.t() }.into());
                }
            }
            let degree = members.first().map_or(0, Monomial::degree);
            let set = MonomialSet::new(degree, members)?;
            Ok(Output::ok(set_output(&iterated_shadow(&set, &ctx, times)?, format)))
        }
        Command::Successor { ring, monomial } => {
            let ctx = ring.ctx()?;
            let u = monomial_arg(&monomial, &ctx)?;
            let text = match slex_successor_with_max_n(&u, &ctx)? {
                Some(v) => format!("{v}\n"),
                None => "none\n".to_string(),
            };
            Ok(Output::ok(text))
        }
        Command::Betti { file, gens, borel, n, t, format } => {
            let ideal = load_ideal(file, gens, borel, n, t)?;
            let table = graded_betti(&ideal)?;
            let corners = corners_from_table(&table);
            let characterized = corners_via_characterization(&ideal)?;
            if corners != characterized {
                return Err(Error::InvariantViolation(format!(
                    "table corners {:?} differ from generator corners {:?}",
                    corners.corners, characterized.corners
                ))
                .into());
            }
            let text = match format {
                Format::Json => format!(
                    "{}\n",
                    json!({ "betti": format::betti_json(&table), "corners": format::corners_json(&corners) })
                ),
                _ => {
                    let mut s = format::betti_diagram(&table);
                    if !corners.is_empty() {
                        s.push_str("\ncorners:\n");
                        s.push_str(&format::corners_text(&corners));
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
        Command::Construct { ring, ell1, with_ideal, format } => {
            let (ideal, report) = construct_extremal_ideal(ring.n, ring.t, ell1)?;
            let text = match format {
                Format::Json => format!("{}\n", format::report_json(&report, with_ideal.then_some(&ideal))),
                _ => {
                    let mut s = format::report_text(&report);
                    if with_ideal {
                        s.push_str(&format!("ideal = {ideal}\n"));
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
        Command::Claim { ring, ell1 } => {
            let report = build_omegas(ring.n, ring.t, ell1)?;
            if omega_claim_check(&report.omegas, &report.ctx, ell1) {
                Ok(Output::ok(format!("claim holds for {} monomials\n", report.total)))
            } else {
                Ok(Output { text: "claim fails\n".into(), code: 1 })
            }
        }
        Command::Table { t, ns, ells, brute_force_upto, budget, format } => {
            let cells = regenerate_table(t, ns, ells, brute_force_upto, &budget.resolve()?)?;
            let text = match format {
                Format::Text => format::table_text(&cells),
                Format::Markdown => format::table_markdown(&cells),
                Format::Csv => format::table_csv(&cells),
                Format::Json => format!("{}\n", serde_json::to_string(&cells).expect("cells serialize")),
            };
            let code = if cells.iter().any(|c| c.partial) { 4 } else { 0 };
            Ok(Output { text, code })
        }
        Command::Validate { ns, ts, ells, budget } => {
            let report = cross_validate(ns, ts, ells, &budget.resolve()?)?;
            let code = if !report.disagreements.is_empty() {
                1
            } else if report.partial_cells > 0 {
                4
            } else {
                0
            };
            Ok(Output { text: format::validation_json_lines(&report), code })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error of ours
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.text.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
                _ => ExitCode::from(out.code),
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
