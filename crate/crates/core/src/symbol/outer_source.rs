//! Log-modulus sources backing outer atoms.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::Space;

/// A closed-form log-modulus shipped with the tool.
#[derive(Debug, Clone, Copy)]
pub enum NamedSource {
    /// `log|f| = 0`.
    Unit,
    /// `log|f|(x) = 1/(1+x^2)` on the line.
    ExpCauchy,
    /// `log|f|(x) = s/(1+x^2)` on the line.
    Cauchy(f64),
    /// `log|f|(t) = cos t` on the circle.
    Cos,
    /// `log|f|(x) = (p/2) log(1+x^2)` on the line, i.e. `|f| = |x+i|^p`.
    LogPower(f64),
}

/// Sampled log-modulus: abscissae (angles in `[0, 2π)` on the disk, reals on
/// the line) and values, linearly interpolated.
#[derive(Debug, Clone)]
pub struct LogModulusTable {
    pub name: String,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub enum OuterSource {
    Named(NamedSource),
    Table(Arc<LogModulusTable>),
}

impl NamedSource {
    pub fn parse(name: &str, params: &[f64]) -> Option<NamedSource> {
        match (name, params) {
            ("unit", []) => Some(NamedSource::Unit),
            ("exp-cauchy", []) => Some(NamedSource::ExpCauchy),
            ("cauchy", [s]) if s.is_finite() => Some(NamedSource::Cauchy(*s)),
            ("cos", []) => Some(NamedSource::Cos),
            ("log-power", [p]) if p.is_finite() => Some(NamedSource::LogPower(*p)),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            NamedSource::Unit => 0,
            NamedSource::ExpCauchy => 1,
            NamedSource::Cauchy(_) => 2,
            NamedSource::Cos => 3,
            NamedSource::LogPower(_) => 4,
        }
    }

    fn param(&self) -> f64 {
        match self {
            NamedSource::Cauchy(s) => *s,
            NamedSource::LogPower(p) => *p,
            _ => 0.0,
        }
    }

    /// Coordinates in the family basis used to decide whether a product of
    /// named outers has constant log-modulus.
    pub fn family(&self) -> Option<(&'static str, f64)> {
        match self {
            NamedSource::Unit => None,
            NamedSource::ExpCauchy => Some(("cauchy", 1.0)),
            NamedSource::Cauchy(s) => Some(("cauchy", *s)),
            NamedSource::Cos => Some(("cos", 1.0)),
            NamedSource::LogPower(p) => Some(("log-power", *p)),
        }
    }
}

impl fmt::Display for NamedSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSource::Unit => write!(f, "unit"),
            NamedSource::ExpCauchy => write!(f, "exp-cauchy"),
            NamedSource::Cauchy(s) => write!(f, "cauchy:{s}"),
            NamedSource::Cos => write!(f, "cos"),
            NamedSource::LogPower(p) => write!(f, "log-power:{p}"),
        }
    }
}

impl LogModulusTable {
    /// Builds a table, sorting by abscissa. Values must be finite.
    pub fn new(name: impl Into<String>, mut rows: Vec<(f64, f64)>) -> Result<Self, String> {
        if rows.is_empty() {
            return Err("log-modulus table is empty".into());
        }
        if let Some((x, v)) = rows.iter().find(|(x, v)| !x.is_finite() || !v.is_finite()) {
            return Err(format!("non-finite log-modulus entry ({x}, {v})"));
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        rows.dedup_by(|a, b| a.0 == b.0);
        let (xs, values) = rows.into_iter().unzip();
        Ok(LogModulusTable { name: name.into(), xs, values })
    }

    fn interpolate(&self, x: f64, periodic: bool) -> f64 {
        let n = self.xs.len();
        if n == 1 {
            return self.values[0];
        }
        let x = if periodic { x.rem_euclid(2.0 * PI) } else { x };
        let idx = self.xs.partition_point(|&t| t <= x);
        if idx == 0 || idx == n {
            if !periodic {
                return if idx == 0 { self.values[0] } else { self.values[n - 1] };
            }
            // wrap between the last and first sample
            let (x0, v0) = (self.xs[n - 1] - 2.0 * PI, self.values[n - 1]);
            let (x1, v1) = (self.xs[0], self.values[0]);
            let x = if idx == n { x - 2.0 * PI } else { x };
            if x1 - x0 <= 0.0 {
                return v1;
            }
            return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
        }
        let (x0, x1) = (self.xs[idx - 1], self.xs[idx]);
        let (v0, v1) = (self.values[idx - 1], self.values[idx]);
        v0 + (v1 - v0) * (x - x0) / (x1 - x0)
    }
}

impl OuterSource {
    pub fn supports(&self, space: Space) -> bool {
        match self {
            OuterSource::Named(NamedSource::Unit) | OuterSource::Table(_) => true,
            OuterSource::Named(NamedSource::Cos) => space == Space::Disk,
            OuterSource::Named(_) => space == Space::HalfPlane,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, OuterSource::Named(NamedSource::Unit))
    }

    /// `log|f|` at a boundary coordinate (angle on the disk, real on the line).
    pub fn log_modulus(&self, x: f64, space: Space) -> f64 {
        match self {
            OuterSource::Named(n) => match n {
                NamedSource::Unit => 0.0,
                NamedSource::ExpCauchy => 1.0 / (1.0 + x * x),
                NamedSource::Cauchy(s) => s / (1.0 + x * x),
                NamedSource::Cos => x.cos(),
                NamedSource::LogPower(p) => 0.5 * p * (x * x).ln_1p(),
            },
            OuterSource::Table(t) => t.interpolate(x, space == Space::Disk),
        }
    }

    /// Certified `(inf, sup)` of the log-modulus; `None` for sampled tables.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self {
            OuterSource::Named(n) => Some(match n {
                NamedSource::Unit => (0.0, 0.0),
                NamedSource::ExpCauchy => (0.0, 1.0),
                NamedSource::Cauchy(s) => (s.min(0.0), s.max(0.0)),
                NamedSource::Cos => (-1.0, 1.0),
                NamedSource::LogPower(p) if *p > 0.0 => (0.0, f64::INFINITY),
                NamedSource::LogPower(p) if *p < 0.0 => (f64::NEG_INFINITY, 0.0),
                NamedSource::LogPower(_) => (0.0, 0.0),
            }),
            OuterSource::Table(_) => None,
        }
    }

    /// Closed-form analytic extension, normalized positive at the base point
    /// (`0` on the disk, `i` on the half-plane). `None` for tables.
    pub fn closed_form(&self, z: Complex64) -> Option<Complex64> {
        let i = Complex64::i();
        match self {
            OuterSource::Named(n) => Some(match n {
                NamedSource::Unit => Complex64::new(1.0, 0.0),
                NamedSource::ExpCauchy => (i / (z + i)).exp(),
                NamedSource::Cauchy(s) => (i * *s / (z + i)).exp(),
                NamedSource::Cos => z.exp(),
                NamedSource::LogPower(p) => (Complex64::new(1.0, 0.0) - i * z).powf(*p),
            }),
            OuterSource::Table(_) => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            OuterSource::Named(_) => 0,
            OuterSource::Table(_) => 1,
        }
    }
}

impl Ord for OuterSource {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OuterSource::Named(a), OuterSource::Named(b)) => {
                a.rank().cmp(&b.rank()).then(a.param().total_cmp(&b.param()))
            }
            (OuterSource::Table(a), OuterSource::Table(b)) => a.name.cmp(&b.name),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for OuterSource {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for OuterSource {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OuterSource {}

impl fmt::Display for OuterSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OuterSource::Named(n) => write!(f, "{n}"),
            OuterSource::Table(t) => write!(f, "@{}", t.name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_have_the_right_boundary_modulus() {
        for &x in &[-7.0, -1.0, 0.0, 0.3, 4.0] {
            let z = Complex64::new(x, 0.0);
            for src in [NamedSource::ExpCauchy, NamedSource::Cauchy(2.5), NamedSource::LogPower(1.5)] {
                let s = OuterSource::Named(src);
                let v = s.closed_form(z).unwrap();
                assert!((v.norm().ln() - s.log_modulus(x, Space::HalfPlane)).abs() < 1e-12);
            }
        }
        let cos = OuterSource::Named(NamedSource::Cos);
        let v = cos.closed_form(Complex64::from_polar(1.0, 0.7)).unwrap();
        assert!((v.norm().ln() - 0.7f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn base_point_normalization_is_positive() {
        let i = Complex64::i();
        for src in [NamedSource::ExpCauchy, NamedSource::Cauchy(-1.0), NamedSource::LogPower(0.5)] {
            let v = OuterSource::Named(src).closed_form(i).unwrap();
            assert!(v.im.abs() < 1e-14 && v.re > 0.0);
        }
    }

    #[test]
    fn table_interpolation() {
        let t = LogModulusTable::new("t", vec![(1.0, 2.0), (0.0, 0.0), (2.0, 2.0)]).unwrap();
        assert_eq!(t.interpolate(0.5, false), 1.0);
        assert_eq!(t.interpolate(-3.0, false), 0.0);
        assert_eq!(t.interpolate(9.0, false), 2.0);
        assert!(LogModulusTable::new("bad", vec![(0.0, f64::NAN)]).is_err());
        assert!(LogModulusTable::new("empty", vec![]).is_err());
    }
}
