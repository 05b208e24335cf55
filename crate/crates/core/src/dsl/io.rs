use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;

use super::DslError;
use crate::density::PointSequence;
use crate::symbol::LogModulusTable;

/// A built-in sequence generator with numeric parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub name: String,
    pub params: BTreeMap<String, f64>,
}

/// Names accepted by [`GeneratorSpec::expand`].
pub const GENERATORS: &[&str] = &["worked-example", "lattice", "integers", "powers-of-two", "squares"];

impl GeneratorSpec {
    pub fn new(name: impl Into<String>) -> Self {
        GeneratorSpec { name: name.into(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, v: f64) -> Self {
        self.params.insert(key.to_string(), v);
        self
    }

    fn count(&self, default: f64) -> Result<i64, DslError> {
        let n = self.params.get("n").copied().unwrap_or(default);
        if !(n >= 1.0) || n.fract() != 0.0 || n > 1e7 {
            return Err(DslError::Format { line: 0, msg: format!("generator '{}' needs a positive integer n, got {n}", self.name) });
        }
        Ok(n as i64)
    }

    /// Expands to the sequence with its completeness window. Deterministic.
    pub fn expand(&self) -> Result<PointSequence, DslError> {
        let bad = |m: String| DslError::Format { line: 0, msg: m };
        let (points, ext): (Vec<Complex64>, f64) = match self.name.as_str() {
            // Λ = {n + i 2^{-|n|}}, 0 < |n| ≤ N
            "worked-example" => {
                let n = self.count(100.0)?;
                let pts = (-n..=n)
                    .filter(|k| *k != 0)
                    .map(|k| Complex64::new(k as f64, 2f64.powi(-(k.unsigned_abs() as i32).min(1074))))
                    .collect();
                (pts, n as f64 + 0.5)
            }
            "lattice" => {
                let n = self.count(100.0)?;
                let h = self.params.get("step").copied().unwrap_or(1.0);
                if !(h > 0.0) || !h.is_finite() {
                    return Err(bad(format!("lattice step must be positive, got {h}")));
                }
                ((-n..=n).map(|k| Complex64::new(h * k as f64, 0.0)).collect(), h * (n as f64 + 0.5))
            }
            "integers" => {
                let n = self.count(100.0)?;
                ((1..=n).map(|k| Complex64::new(k as f64, 0.0)).collect(), n as f64 + 0.5)
            }
            "powers-of-two" => {
                let n = self.count(30.0)?.min(1000);
                ((1..=n).map(|k| Complex64::new(2f64.powi(k as i32), 0.0)).collect(), 1.5 * 2f64.powi(n as i32))
            }
            "squares" => {
                let n = self.count(100.0)?;
                ((1..=n).map(|k| Complex64::new((k * k) as f64, 0.0)).collect(), (n * n + n) as f64)
            }
            other => return Err(bad(format!("unknown generator '{other}' (known: {})", GENERATORS.join(", ")))),
        };
        let seq = if points.iter().all(|z| z.im == 0.0) {
            PointSequence::real(points.iter().map(|z| z.re).collect())
        } else {
            PointSequence::upper(points)
        }
        .map_err(bad)?
        .0;
        Ok(seq.with_window(-ext, ext).with_source(self.to_string()))
    }
}

impl std::fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// What a loader saw besides the points.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LoadInfo {
    pub duplicates: usize,
    pub generator: Option<GeneratorSpec>,
    pub outside_window: usize,
}

fn build(points: Vec<Complex64>, source: String) -> Result<(PointSequence, usize), DslError> {
    let r = if points.iter().all(|z| z.im == 0.0) {
        PointSequence::real(points.iter().map(|z| z.re).collect())
    } else {
        PointSequence::upper(points)
    };
    let (s, d) = r.map_err(|m| DslError::Format { line: 0, msg: m })?;
    Ok((s.with_source(source), d))
}

fn parse_csv_points(text: &str) -> Result<Vec<Complex64>, DslError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let line = k + 1;
        let rec = rec.map_err(|e| DslError::Format { line, msg: e.to_string() })?;
        if rec.iter().all(|f| f.is_empty()) || rec.get(0).is_some_and(|f| f.starts_with('#')) {
            continue;
        }
        let nums: Result<Vec<f64>, _> = rec.iter().map(|f| f.parse::<f64>()).collect();
        match nums {
            Ok(v) if v.len() == 1 || v.len() == 2 => out.push(Complex64::new(v[0], v.get(1).copied().unwrap_or(0.0))),
            Ok(v) => return Err(DslError::Format { line, msg: format!("expected 're,im', found {} fields", v.len()) }),
            Err(_) if line == 1 => continue,
            Err(_) => return Err(DslError::Format { line, msg: format!("non-numeric row '{}'", rec.iter().collect::<Vec<_>>().join(",")) }),
        }
    }
    Ok(out)
}

fn parse_jsonl(text: &str) -> Result<(Vec<Complex64>, Option<GeneratorSpec>), DslError> {
    let mut out = Vec::new();
    let mut generator = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(raw).map_err(|e| DslError::Format { line, msg: e.to_string() })?;
        let obj = v.as_object().ok_or_else(|| DslError::Format { line, msg: "expected a JSON object".into() })?;
        if let Some(name) = obj.get("generator") {
            let name = name.as_str().ok_or_else(|| DslError::Format { line, msg: "generator name must be a string".into() })?;
            let mut spec = GeneratorSpec::new(name);
            for (key, val) in obj.iter().filter(|(key, _)| key.as_str() != "generator") {
                let x = val.as_f64().ok_or_else(|| DslError::Format { line, msg: format!("parameter '{key}' must be a number") })?;
                spec.params.insert(key.clone(), x);
            }
            generator = Some(spec);
            continue;
        }
        let num = |key: &str| -> Result<f64, DslError> {
            match obj.get(key) {
                None if key == "im" => Ok(0.0),
                None => Err(DslError::Format { line, msg: format!("missing field '{key}'") }),
                Some(x) => x.as_f64().ok_or_else(|| DslError::Format { line, msg: format!("field '{key}' must be a number") }),
            }
        };
        out.push(Complex64::new(num("re")?, num("im")?));
    }
    Ok((out, generator))
}

/// Loads a sequence from text. `jsonl` selects the JSON Lines format, else
/// CSV. Points outside `window` are dropped and the window recorded.
pub fn parse_sequence(
    text: &str,
    jsonl: bool,
    source: &str,
    window: Option<(f64, f64)>,
) -> Result<(PointSequence, LoadInfo), DslError> {
    if let Some((lo, hi)) = window {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(DslError::EmptyWindow(lo, hi));
        }
    }
    let mut info = LoadInfo::default();
    let (points, generated) = if jsonl {
        let (pts, gen) = parse_jsonl(text)?;
        match gen {
            Some(spec) => {
                if !pts.is_empty() {
                    return Err(DslError::Format { line: 0, msg: "a generator line cannot be mixed with point rows".into() });
                }
                let seq = spec.expand()?;
                info.generator = Some(spec);
                (seq.points().to_vec(), Some(seq.window_or_span()))
            }
            None => (pts, None),
        }
    } else {
        (parse_csv_points(text)?, None)
    };
    let total = points.len();
    let kept: Vec<Complex64> = match window {
        Some((lo, hi)) => points.into_iter().filter(|z| z.re >= lo && z.re <= hi).collect(),
        None => points,
    };
    info.outside_window = total - kept.len();
    if total > 0 && kept.is_empty() {
        let (lo, hi) = window.unwrap();
        return Err(DslError::EmptyWindow(lo, hi));
    }
    let (mut seq, dups) = build(kept, source.to_string())?;
    info.duplicates = dups;
    seq.window = match (window, generated) {
        (Some((lo, hi)), Some((glo, ghi))) => Some((lo.max(glo), hi.min(ghi))),
        (Some(w), None) => Some(w),
        (None, g) => g,
    };
    Ok((seq, info))
}

fn is_jsonl(path: &Path) -> bool {
    matches!(path.extension().and_then(|e| e.to_str()), Some("jsonl" | "json" | "ndjson"))
}

/// Loads a sequence file (`.csv` or `.jsonl`).
pub fn load_sequence(path: &Path, window: Option<(f64, f64)>) -> Result<(PointSequence, LoadInfo), DslError> {
    let text = std::fs::read_to_string(path).map_err(|e| DslError::Io(format!("{}: {e}", path.display())))?;
    parse_sequence(&text, is_jsonl(path), &path.display().to_string(), window)
}

/// Parses `x,logmod` rows into a table named `name`.
pub fn parse_log_modulus(text: &str, name: &str) -> Result<LogModulusTable, DslError> {
    let rows = parse_csv_points(text)?.into_iter().map(|z| (z.re, z.im)).collect();
    LogModulusTable::new(name, rows).map_err(|m| DslError::Format { line: 0, msg: m })
}

/// Loads a log-modulus table; the table is named after the file stem.
pub fn load_log_modulus(path: &Path) -> Result<LogModulusTable, DslError> {
    let text = std::fs::read_to_string(path).map_err(|e| DslError::Io(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
    parse_log_modulus(&text, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_generator() {
        let s = GeneratorSpec::new("worked-example").with("n", 100.0).expand().unwrap();
        assert_eq!(s.len(), 200);
        assert_eq!(s.window, Some((-100.5, 100.5)));
        assert_eq!(s, GeneratorSpec::new("worked-example").with("n", 100.0).expand().unwrap());
    }

    #[test]
    fn csv_rows_and_duplicates() {
        let (s, info) = parse_sequence("1,0\n2,0\n", false, "t", None).unwrap();
        assert_eq!(s.reals(), vec![1.0, 2.0]);
        let (s, info2) = parse_sequence("re,im\n1,0\n1,0\n3,0\n", false, "t", None).unwrap();
        assert_eq!((s.len(), info2.duplicates, info.duplicates), (2, 1, 0));
        let e = parse_sequence("1,0\nx,0\n", false, "t", None).unwrap_err();
        assert!(matches!(e, DslError::Format { line: 2, .. }));
    }

    #[test]
    fn jsonl_points_and_generators() {
        let (s, _) = parse_sequence("{\"re\": 1, \"im\": 0.5}\n{\"re\": -1, \"im\": 0}\n", true, "t", None).unwrap();
        assert_eq!(s.len(), 2);
        let (g, info) = parse_sequence("{\"generator\": \"lattice\", \"n\": 10, \"step\": 2}\n", true, "t", None).unwrap();
        assert_eq!(g.len(), 21);
        assert!(info.generator.is_some());
        assert!(matches!(parse_sequence("{\"re\": 1}\n[1]\n", true, "t", None), Err(DslError::Format { line: 2, .. })));
    }

    #[test]
    fn windows() {
        let (s, info) = parse_sequence("1,0\n2,0\n5,0\n", false, "t", Some((0.0, 3.0))).unwrap();
        assert_eq!((s.len(), info.outside_window), (2, 1));
        assert!(matches!(parse_sequence("1,0\n", false, "t", Some((2.0, 3.0))), Err(DslError::EmptyWindow(..))));
        assert!(matches!(parse_sequence("1,0\n", false, "t", Some((3.0, 2.0))), Err(DslError::EmptyWindow(..))));
    }
}
