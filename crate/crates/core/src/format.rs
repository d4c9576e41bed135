//! Text and JSON renderings shared by the command-line tool and tests.
//!
//! Big integers go through `serde_json`'s arbitrary-precision numbers, so
//! Betti numbers of any size are emitted as plain JSON integers.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Number, Value};

use crate::betti::{BettiTable, CornerSequence};
use crate::construct::ConstructionReport;
use crate::error::{Error, Result};
use crate::ideal::{borel_ideal, SpreadIdeal};
use crate::monomial::{Context, Monomial};
use crate::oracle::{Provenance, TableCell, ValidationReport};

/// A monomial in a JSON ideal file: an index array or the `x1*x4` syntax.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum MonomialInput {
    Indices(Vec<u32>),
    Text(String),
}

impl MonomialInput {
    fn into_monomial(self) -> Result<Monomial> {
        match self {
            MonomialInput::Indices(v) => Monomial::new(v),
            MonomialInput::Text(s) => s.parse(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealInput {
    n: u32,
    t: u32,
    #[serde(default)]
    gens: Option<Vec<MonomialInput>>,
    #[serde(default)]
    borel: Option<Vec<MonomialInput>>,
}

/// Reads `{"n": .., "t": .., "gens": [..]}` (minimal generators, checked
/// later) or `{"n": .., "t": .., "borel": [..]}` (Borel generators).
pub fn parse_ideal_json(text: &str) -> Result<SpreadIdeal> {
    let input: IdealInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let ctx = Context::new(input.n, input.t)?;
    let collect = |list: Vec<MonomialInput>| -> Result<Vec<Monomial>> {
        list.into_iter().map(MonomialInput::into_monomial).collect()
    };
    match (input.gens, input.borel) {
        (Some(gens), None) => SpreadIdeal::from_generators(ctx, collect(gens)?),
        (None, Some(borel)) => borel_ideal(&collect(borel)?, &ctx),
        (None, None) => Ok(SpreadIdeal::zero(ctx)),
        (Some(_), Some(_)) => Err(Error::Parse("give either \"gens\" or \"borel\", not both".into())),
    }
}

fn indices_json(u: &Monomial) -> Value {
    Value::Array(u.indices().iter().map(|&i| Value::from(i)).collect())
}

/// `{"n": .., "t": .., "gens": [[..], ..]}`.
pub fn ideal_json(ideal: &SpreadIdeal) -> Value {
    json!({
        "n": ideal.ctx().n(),
        "t": ideal.ctx().t(),
        "gens": ideal.generators().map(indices_json).collect::<Vec<_>>(),
    })
}

fn big_json(v: &BigUint) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("decimal digits form a JSON number"))
}

/// `{"rows": {"2": [..], ..}}`, one dense row per nonzero row.
pub fn betti_json(table: &BettiTable) -> Value {
    let mut rows = Map::new();
    for ell in table.rows() {
        rows.insert(ell.to_string(), Value::Array(table.row(ell).iter().map(big_json).collect()));
    }
    json!({ "rows": rows })
}

/// `{"corners": [[k, ell], ..], "values": [..]}`.
pub fn corners_json(c: &CornerSequence) -> Value {
    json!({
        "corners": c.corners.iter().map(|&(k, l)| json!([k, l])).collect::<Vec<_>>(),
        "values": c.values.iter().map(big_json).collect::<Vec<_>>(),
    })
}

/// Right-aligned grid: a label column ending in `:` and one column per
/// homological index, `-` for zero, rows from the first to the last
/// nonzero row. Empty for the zero table.
pub fn betti_diagram(table: &BettiTable) -> String {
    let rows = table.rows();
    let (Some(&first), Some(&last), Some(max_k)) = (rows.first(), rows.last(), table.max_k()) else {
        return String::new();
    };
    let cells: Vec<(String, Vec<String>)> = (first..=last)
        .map(|ell| {
            let row = table.row(ell);
            let values = (0..=max_k)
                .map(|k| row.get(k).filter(|v| **v != BigUint::default()).map_or("-".into(), ToString::to_string))
                .collect();
            (format!("{ell}:"), values)
        })
        .collect();
    let label_width = cells.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..=max_k)
        .map(|k| cells.iter().map(|(_, v)| v[k].len()).chain([k.to_string().len()]).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    let header: Vec<String> = widths.iter().enumerate().map(|(k, w)| format!("{k:>w$}")).collect();
    writeln!(out, "{:label_width$} {}", "", header.join(" ")).unwrap();
    for (label, values) in &cells {
        let line: Vec<String> = values.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
        writeln!(out, "{label:>label_width$} {}", line.join(" ")).unwrap();
    }
    out
}

/// One line per corner: `(k, ell) = value`.
pub fn corners_text(c: &CornerSequence) -> String {
    let mut out = String::new();
    for ((k, l), v) in c.corners.iter().zip(&c.values) {
        writeln!(out, "({k},{l}) = {v}").unwrap();
    }
    out
}

#[derive(Serialize)]
struct ReportJson<'a> {
    n: u32,
    t: u32,
    ell1: usize,
    d: u32,
    k: u32,
    j_max: i64,
    s: i64,
    nu_max: i64,
    omegas: Vec<&'a [u32]>,
    corners: &'a [(usize, usize)],
    total: usize,
    regime: &'static str,
    critic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    ideal: Option<Value>,
}

/// Construction report as JSON, optionally with the ideal's generators.
pub fn report_json(r: &ConstructionReport, ideal: Option<&SpreadIdeal>) -> Value {
    serde_json::to_value(ReportJson {
        n: r.ctx.n(),
        t: r.ctx.t(),
        ell1: r.ell1,
        d: r.decomp.d,
        k: r.decomp.k,
        j_max: r.j_max,
        s: r.s,
        nu_max: r.nu_max,
        omegas: r.omegas.iter().map(Monomial::indices).collect(),
        corners: &r.predicted_corners,
        total: r.total,
        regime: r.regime.as_str(),
        critic: r.has_critic,
        ideal: ideal.map(ideal_json),
    })
    .expect("report serializes")
}

/// Human-readable construction report.
pub fn report_text(r: &ConstructionReport) -> String {
    let mut out = String::new();
    let (n, t) = (r.ctx.n(), r.ctx.t());
    writeln!(out, "n = {n} = {} + {}*{t}, ell1 = {}", r.decomp.d, r.decomp.k, r.ell1).unwrap();
    writeln!(out, "regime: {}", r.regime.as_str()).unwrap();
    writeln!(out, "j_max = {}, s = {}, nu_max = {}", r.j_max, r.s, r.nu_max).unwrap();
    writeln!(out, "critic monomial: {}", if r.has_critic { "yes" } else { "no" }).unwrap();
    for (j, w) in r.omegas.iter().enumerate() {
        writeln!(out, "omega_{j} = {w}").unwrap();
    }
    let corners: Vec<String> = r.predicted_corners.iter().map(|(k, l)| format!("({k},{l})")).collect();
    writeln!(out, "corners ({}): {}", r.total, corners.join(" ")).unwrap();
    out
}

fn table_axes(cells: &[TableCell]) -> (Vec<u32>, Vec<usize>) {
    let mut ns: Vec<u32> = cells.iter().map(|c| c.n).collect();
    let mut ells: Vec<usize> = cells.iter().map(|c| c.ell1).collect();
    ns.sort_unstable();
    ns.dedup();
    ells.sort_unstable();
    ells.dedup();
    (ns, ells)
}

fn lookup(cells: &[TableCell], n: u32, ell1: usize) -> String {
    cells.iter().find(|c| c.n == n && c.ell1 == ell1).map_or(String::new(), TableCell::display_value)
}

/// Grid with one row per initial degree and one column per `n`.
pub fn table_text(cells: &[TableCell]) -> String {
    let (ns, ells) = table_axes(cells);
    let corner = "ell1\\n";
    let label_width = ells.iter().map(|l| l.to_string().len()).max().unwrap_or(0).max(corner.len());
    let widths: Vec<usize> = ns
        .iter()
        .map(|&n| ells.iter().map(|&l| lookup(cells, n, l).len()).chain([n.to_string().len()]).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    let header: Vec<String> = ns.iter().zip(&widths).map(|(n, w)| format!("{n:>w$}")).collect();
    writeln!(out, "{corner:>label_width$} {}", header.join(" ")).unwrap();
    for &l in &ells {
        let row: Vec<String> = ns.iter().zip(&widths).map(|(&n, w)| format!("{:>w$}", lookup(cells, n, l))).collect();
        writeln!(out, "{l:>label_width$} {}", row.join(" ")).unwrap();
    }
    out
}

/// The same grid as a Markdown table.
pub fn table_markdown(cells: &[TableCell]) -> String {
    let (ns, ells) = table_axes(cells);
    let mut out = String::new();
    let header: Vec<String> = ns.iter().map(ToString::to_string).collect();
    writeln!(out, "| ell1 \\ n | {} |", header.join(" | ")).unwrap();
    writeln!(out, "|---|{}", "---|".repeat(ns.len())).unwrap();
    for &l in &ells {
        let row: Vec<String> = ns.iter().map(|&n| lookup(cells, n, l)).collect();
        writeln!(out, "| {l} | {} |", row.join(" | ")).unwrap();
    }
    out
}

/// `t,n,ell1,value,provenance`, one line per cell.
pub fn table_csv(cells: &[TableCell]) -> String {
    let mut out = String::from("t,n,ell1,value,provenance\n");
    for c in cells {
        let value = c.value.map_or_else(|| "-".to_string(), |v| v.to_string());
        let provenance = match (c.provenance, c.partial) {
            (Provenance::BruteForce, true) => "brute-force-partial",
            (p, _) => p.as_str(),
        };
        writeln!(out, "{},{},{},{value},{provenance}", c.t, c.n, c.ell1).unwrap();
    }
    out
}

/// One JSON object per disagreement, then a summary line.
pub fn validation_json_lines(report: &ValidationReport) -> String {
    let mut out = String::new();
    for d in &report.disagreements {
        writeln!(out, "{}", serde_json::to_string(d).expect("disagreement serializes")).unwrap();
    }
    let summary = json!({
        "summary": {
            "checks": report.checks,
            "disagreements": report.disagreements.len(),
            "partial_cells": report.partial_cells,
        }
    });
    writeln!(out, "{summary}").unwrap();
    out
}
