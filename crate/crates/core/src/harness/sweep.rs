//! j5 sweeps comparing the exact and asymptotic 12j symbols.

use std::io::{Read, Write};
use std::path::Path;

use crate::asymptotics::asym12j;
use crate::error::{Error, Result};
use crate::exact::{wigner12j_first_with, Symbol12Args};
use crate::geometry::{classically_allowed, EdgeSet, NEAR_CAUSTIC};
use crate::par::{map_ordered, Execution};
use crate::spin::{triangle_twice, Spin};

use super::config::SweepConfig;

pub const CSV_HEADER: [&str; 9] = [
    "twice_j5",
    "exact",
    "asym",
    "abs_err",
    "rel_err",
    "allowed",
    "margin1",
    "margin2",
    "near_caustic",
];

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub twice_j5: u32,
    /// Exact value as a decimal string.
    pub exact: String,
    /// Absent outside the classically allowed region.
    pub asym: Option<f64>,
    pub abs_err: Option<f64>,
    /// `|asym − exact|` divided by the RMS of the exact values over the
    /// allowed rows.
    pub rel_err: Option<f64>,
    pub allowed: bool,
    pub margin1: f64,
    pub margin2: f64,
    pub near_caustic: bool,
}

impl SweepRow {
    pub fn exact_f64(&self) -> f64 {
        self.exact.parse().unwrap_or(f64::NAN)
    }

    pub fn j5(&self) -> Spin {
        Spin::from_twice(self.twice_j5)
    }
}

/// Twice-values of j5 compatible with every triad of `base`, intersected with
/// the configured bounds.
pub fn j5_range(cfg: &SweepConfig) -> Result<Vec<u32>> {
    let b = cfg.base;
    let (j12, j346, j13, j135) = (b.j12.twice(), b.j346.twice(), b.j13.twice(), b.j135.twice());
    let lo = j12.abs_diff(j346).max(j13.abs_diff(j135));
    let hi = (j12 + j346).min(j13 + j135);
    let lo = cfg.j5_min.map_or(lo, |m| lo.max(m.twice()));
    let hi = cfg.j5_max.map_or(hi, |m| hi.min(m.twice()));
    let out: Vec<u32> = (lo..=hi)
        .filter(|&t| b.with_j5(Spin::from_twice(t)).is_admissible())
        .collect();
    if out.is_empty() {
        return Err(Error::EmptyRange);
    }
    // the triads (j12 j5 j346) and (j13 j5 j135) fix the parity of j5
    debug_assert!(out.windows(2).all(|w| w[1] - w[0] == 2));
    debug_assert!(triangle_twice(j12, out[0], j346));
    Ok(out)
}

fn evaluate(args: &Symbol12Args, precision: u32) -> SweepRow {
    let exact = wigner12j_first_with(args, precision);
    let (allowed, margin1, margin2) = classically_allowed(&EdgeSet::from_args(args));
    let asym = if allowed { asym12j(args).ok() } else { None };
    SweepRow {
        twice_j5: args.j5.twice(),
        exact: exact.to_decimal(precision),
        asym: asym.as_ref().map(|r| r.value),
        abs_err: None,
        rel_err: None,
        allowed: allowed && asym.is_some(),
        margin1,
        margin2,
        near_caustic: allowed && (margin1 < NEAR_CAUSTIC || margin2 < NEAR_CAUSTIC),
    }
}

/// Evaluate every admissible j5 with the configured worker count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    run_sweep_with(cfg, Execution::with_workers(cfg.workers))
}

/// [`run_sweep`] with an explicit execution mode. Rows come back ordered by
/// j5 whatever the mode.
pub fn run_sweep_with(cfg: &SweepConfig, exec: Execution) -> Result<Vec<SweepRow>> {
    let range = j5_range(cfg)?;
    let base = cfg.base;
    let precision = cfg.precision;
    let mut rows = map_ordered(range, exec, |t| {
        evaluate(&base.with_j5(Spin::from_twice(t)), precision)
    });
    fill_errors(&mut rows);
    Ok(rows)
}

/// RMS of the exact values over the allowed rows.
fn allowed_rms(rows: &[SweepRow]) -> Option<f64> {
    let vals: Vec<f64> = rows
        .iter()
        .filter(|r| r.allowed)
        .map(SweepRow::exact_f64)
        .collect();
    if vals.is_empty() {
        return None;
    }
    Some((vals.iter().map(|v| v * v).sum::<f64>() / vals.len() as f64).sqrt())
}

fn fill_errors(rows: &mut [SweepRow]) {
    let rms = allowed_rms(rows);
    for r in rows.iter_mut() {
        let exact = r.exact_f64();
        r.abs_err = r.asym.map(|a| (a - exact).abs());
        r.rel_err = match (r.abs_err, rms) {
            (Some(e), Some(n)) if n > 0.0 => Some(e / n),
            _ => None,
        };
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorSummary {
    /// `√(Σ(asym − exact)² / Σ exact²)` over allowed rows with both margins
    /// at least the exclusion margin.
    pub rms_rel_err: f64,
    pub max_abs_err: f64,
    /// First and last allowed twice-j5.
    pub window: (u32, u32),
    /// Sign changes of the exact values across the allowed window.
    pub node_count: usize,
    pub rows_used: usize,
    /// Fraction of used rows with `|exact|` above a quarter of the window RMS
    /// where asym and exact have the same sign.
    pub sign_agreement: f64,
}

pub fn error_metrics(rows: &[SweepRow], margin: f64) -> Result<ErrorSummary> {
    let allowed: Vec<&SweepRow> = rows.iter().filter(|r| r.allowed).collect();
    let used: Vec<(f64, f64)> = allowed
        .iter()
        .filter(|r| r.margin1 >= margin && r.margin2 >= margin)
        .filter_map(|r| r.asym.map(|a| (r.exact_f64(), a)))
        .collect();
    if used.is_empty() {
        return Err(Error::NoAllowedRows);
    }
    let err2: f64 = used.iter().map(|(e, a)| (a - e).powi(2)).sum();
    let norm2: f64 = used.iter().map(|(e, _)| e * e).sum();
    let rms_rel_err = if norm2 > 0.0 {
        (err2 / norm2).sqrt()
    } else if err2 == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let max_abs_err = used.iter().map(|(e, a)| (a - e).abs()).fold(0.0, f64::max);
    let window_rms = (norm2 / used.len() as f64).sqrt();
    let big: Vec<&(f64, f64)> = used
        .iter()
        .filter(|(e, _)| e.abs() > 0.25 * window_rms)
        .collect();
    let sign_agreement = if big.is_empty() {
        1.0
    } else {
        big.iter().filter(|(e, a)| e.signum() == a.signum()).count() as f64 / big.len() as f64
    };
    let signs: Vec<f64> = allowed
        .iter()
        .map(|r| r.exact_f64())
        .filter(|v| *v != 0.0)
        .map(f64::signum)
        .collect();
    let node_count = signs.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(ErrorSummary {
        rms_rel_err,
        max_abs_err,
        window: (allowed[0].twice_j5, allowed[allowed.len() - 1].twice_j5),
        node_count,
        rows_used: used.len(),
        sign_agreement,
    })
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| format!("{v:e}"))
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.twice_j5.to_string(),
            r.exact.clone(),
            fmt_opt(r.asym),
            fmt_opt(r.abs_err),
            fmt_opt(r.rel_err),
            r.allowed.to_string(),
            format!("{:e}", r.margin1),
            format!("{:e}", r.margin2),
            r.near_caustic.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    write_csv(rows, std::fs::File::create(path)?)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let bad = |what: &str, v: &str| Error::Config(format!("bad {what} field {v:?}"));
    let float = |v: &str, what: &str| v.parse::<f64>().map_err(|_| bad(what, v));
    let opt = |v: &str, what: &str| -> Result<Option<f64>> {
        if v.is_empty() {
            Ok(None)
        } else {
            float(v, what).map(Some)
        }
    };
    let flag = |v: &str, what: &str| v.parse::<bool>().map_err(|_| bad(what, v));
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        rows.push(SweepRow {
            twice_j5: f(0).parse().map_err(|_| bad("twice_j5", f(0)))?,
            exact: f(1).to_string(),
            asym: opt(f(2), "asym")?,
            abs_err: opt(f(3), "abs_err")?,
            rel_err: opt(f(4), "rel_err")?,
            allowed: flag(f(5), "allowed")?,
            margin1: float(f(6), "margin1")?,
            margin2: float(f(7), "margin2")?,
            near_caustic: flag(f(8), "near_caustic")?,
        });
    }
    Ok(rows)
}
