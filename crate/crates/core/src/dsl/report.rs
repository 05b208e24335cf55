use std::io::Write;

use serde_json::{json, Value};

use crate::density::{count_sorted, DensityReport, PointSequence};
use crate::kernel::TriVerdict;
use crate::symbol::SymbolExpr;

pub fn verdict_json(v: &TriVerdict) -> Value {
    json!({
        "value": v.value,
        "rule": v.rule,
        "witness": v.witness.as_ref().map(|w| w.to_string()),
        "dim": v.dim.map(|d| d.to_string()),
        "assumed_nontrivial": v.assumed_nontrivial,
    })
}

pub fn symbol_json(e: &SymbolExpr) -> Value {
    json!({ "space": e.space(), "symbol": e.to_string() })
}

pub fn density_json(r: &DensityReport) -> Value {
    serde_json::to_value(r).expect("density reports serialize")
}

/// Writes `value` as pretty JSON, preceded by a `#` header line unless
/// `header` is `None`.
pub fn write_report(out: &mut dyn Write, header: Option<&str>, value: &Value) -> std::io::Result<()> {
    if let Some(h) = header {
        writeln!(out, "# {h}")?;
    }
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json values serialize"))
}

/// Two-column CSV `x, n(x) − ax` on `samples` equally spaced points of
/// `[lo, hi]`.
pub fn write_deviation_csv(
    out: &mut dyn Write,
    seq: &PointSequence,
    a: f64,
    lo: f64,
    hi: f64,
    samples: usize,
) -> std::io::Result<()> {
    let pts = seq.reals();
    writeln!(out, "x,deviation")?;
    let n = samples.max(2);
    for k in 0..n {
        let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
        writeln!(out, "{x},{}", count_sorted(&pts, x) as f64 - a * x)?;
    }
    Ok(())
}

/// CSV with columns `point,re,im,modulus,phase`.
pub fn write_eval_csv(out: &mut dyn Write, points: &[f64], values: &[num_complex::Complex64]) -> std::io::Result<()> {
    writeln!(out, "point,re,im,modulus,phase")?;
    for (x, v) in points.iter().zip(values) {
        writeln!(out, "{x},{},{},{},{}", v.re, v.im, v.norm(), v.arg())?;
    }
    Ok(())
}

/// One point per row, `re,im`.
pub fn write_sequence_csv(out: &mut dyn Write, seq: &PointSequence) -> std::io::Result<()> {
    writeln!(out, "re,im")?;
    for z in seq.points() {
        writeln!(out, "{},{}", z.re, z.im)?;
    }
    Ok(())
}
