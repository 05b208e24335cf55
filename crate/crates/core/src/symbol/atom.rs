use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::outer_source::OuterSource;
use super::{Space, SymbolError};
use crate::density::{DensityReport, PointSequence};

/// A point mass `w·δ_ζ` on the circle, `ζ = e^{i·angle}`.
#[derive(Debug, Clone, Copy)]
pub struct PointMass {
    pub angle: f64,
    pub weight: f64,
}

impl PointMass {
    pub fn zeta(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }
}

/// Zeros of a Blaschke product, compared elementwise in listed order.
#[derive(Debug, Clone)]
pub struct BlaschkeZeros {
    /// Sequence reference the zeros were loaded from, if any.
    pub label: Option<String>,
    pub zeros: Arc<Vec<Complex64>>,
}

impl BlaschkeZeros {
    pub fn new(zeros: Vec<Complex64>) -> Self {
        BlaschkeZeros { label: None, zeros: Arc::new(zeros) }
    }

    pub fn labeled(label: impl Into<String>, zeros: Vec<Complex64>) -> Self {
        BlaschkeZeros { label: Some(label.into()), zeros: Arc::new(zeros) }
    }
}

/// A meromorphic inner function known only through its spectrum `{Θ = 1}`.
#[derive(Debug, Clone)]
pub struct MifRef {
    pub name: String,
    pub spectrum: Arc<PointSequence>,
    /// Precomputed interior density of the spectrum, if available.
    pub density: Option<Arc<DensityReport>>,
}

/// Classification of an atom, computable without evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomClass {
    Inner,
    Outer,
    Const,
}

/// One concrete factor of a boundary symbol.
#[derive(Debug, Clone)]
pub enum Atom {
    /// The coordinate `z` (disk).
    Coordinate,
    /// `b_i(z) = (z − i)/(z + i)` (half-plane).
    BlaschkeAtI,
    /// Blaschke product over a zero list.
    Blaschke(BlaschkeZeros),
    /// `S^a(z) = e^{iaz}`, `a ≥ 0` (half-plane).
    SingularExp(f64),
    /// Singular inner function of a finite sum of point masses (disk).
    SingularDisk(Vec<PointMass>),
    /// Outer function with the given log-modulus.
    Outer(OuterSource),
    /// Opaque meromorphic inner function (half-plane).
    Mif(MifRef),
    /// Unimodular constant `e^{iφ}`; folded into the expression constant by
    /// normalization.
    Unimodular(f64),
}

impl Atom {
    pub fn class(&self) -> AtomClass {
        match self {
            Atom::Outer(_) => AtomClass::Outer,
            Atom::Unimodular(_) => AtomClass::Const,
            _ => AtomClass::Inner,
        }
    }

    pub fn is_inner(&self) -> bool {
        self.class() == AtomClass::Inner
    }

    /// Checks the atom invariants for `space`.
    pub fn validate(&self, space: Space) -> Result<(), SymbolError> {
        let bad = |msg: String| Err(SymbolError::InvalidAtom(msg));
        match (self, space) {
            (Atom::Coordinate, Space::Disk) | (Atom::BlaschkeAtI, Space::HalfPlane) => Ok(()),
            (Atom::Coordinate, _) => Err(SymbolError::WrongSpace("z", space)),
            (Atom::BlaschkeAtI, _) => Err(SymbolError::WrongSpace("b_i", space)),
            (Atom::Blaschke(b), _) => {
                if b.zeros.is_empty() {
                    return bad("Blaschke product with an empty zero list".into());
                }
                for a in b.zeros.iter() {
                    let ok = match space {
                        Space::Disk => a.norm() < 1.0 && a.norm() > 0.0,
                        Space::HalfPlane => a.im > 0.0 && a.re.is_finite(),
                    };
                    if !ok {
                        return bad(format!("zero {a} is not admissible for the {space} Blaschke product"));
                    }
                }
                Ok(())
            }
            (Atom::SingularExp(a), Space::HalfPlane) => {
                if a.is_finite() && *a >= 0.0 {
                    Ok(())
                } else {
                    bad(format!("singular exponent parameter {a} must be finite and ≥ 0"))
                }
            }
            (Atom::SingularExp(_), _) => Err(SymbolError::WrongSpace("S(a)", space)),
            (Atom::SingularDisk(masses), Space::Disk) => {
                if masses.is_empty() {
                    return bad("singular measure without point masses".into());
                }
                for (k, m) in masses.iter().enumerate() {
                    if !(m.weight.is_finite() && m.weight > 0.0 && m.angle.is_finite()) {
                        return bad(format!("point mass ({}, {}) needs a finite positive weight", m.angle, m.weight));
                    }
                    let t = m.angle.rem_euclid(2.0 * PI);
                    if masses[..k].iter().any(|o| o.angle.rem_euclid(2.0 * PI) == t) {
                        return bad(format!("repeated point mass at angle {}", m.angle));
                    }
                }
                Ok(())
            }
            (Atom::SingularDisk(_), _) => Err(SymbolError::WrongSpace("Sd{..}", space)),
            (Atom::Outer(src), _) => {
                if src.supports(space) {
                    Ok(())
                } else {
                    Err(SymbolError::WrongSpace("outer source", space))
                }
            }
            (Atom::Mif(_), Space::HalfPlane) => Ok(()),
            (Atom::Mif(_), _) => Err(SymbolError::WrongSpace("Theta(..)", space)),
            (Atom::Unimodular(phi), _) => {
                if phi.is_finite() {
                    Ok(())
                } else {
                    bad("non-finite unimodular constant".into())
                }
            }
        }
    }

    /// `Some(true)` when the atom is certainly a nonconstant function, `None`
    /// when that cannot be decided from its data.
    pub fn is_nonconstant(&self) -> Option<bool> {
        match self {
            Atom::Unimodular(_) => Some(false),
            Atom::SingularExp(a) => Some(*a > 0.0),
            Atom::Outer(src) => match src.bounds() {
                Some((lo, hi)) => Some(lo != hi),
                None => None,
            },
            // an MIF with an empty spectrum may be a constant
            Atom::Mif(m) => {
                if m.spectrum.is_empty() {
                    None
                } else {
                    Some(true)
                }
            }
            _ => Some(true),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Atom::Unimodular(_) => 0,
            Atom::Coordinate => 1,
            Atom::BlaschkeAtI => 2,
            Atom::Blaschke(_) => 3,
            Atom::SingularExp(_) => 4,
            Atom::SingularDisk(_) => 5,
            Atom::Mif(_) => 6,
            Atom::Outer(_) => 7,
        }
    }
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Atom::Blaschke(a), Atom::Blaschke(b)) => {
                let (x, y) = (a.zeros.as_slice(), b.zeros.as_slice());
                x.len().cmp(&y.len()).then_with(|| {
                    x.iter().zip(y).map(|(p, q)| cmp_complex(p, q)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
                })
            }
            (Atom::SingularExp(a), Atom::SingularExp(b)) => a.total_cmp(b),
            (Atom::SingularDisk(a), Atom::SingularDisk(b)) => a.len().cmp(&b.len()).then_with(|| {
                a.iter()
                    .zip(b)
                    .map(|(p, q)| p.angle.total_cmp(&q.angle).then(p.weight.total_cmp(&q.weight)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            }),
            (Atom::Outer(a), Atom::Outer(b)) => a.cmp(b),
            (Atom::Mif(a), Atom::Mif(b)) => a.name.cmp(&b.name),
            (Atom::Unimodular(a), Atom::Unimodular(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Atom {}

/// Formats a complex literal in the DSL syntax (`0.5`, `0.3+0.4i`, `-2i`).
pub fn format_complex(z: Complex64) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => format!("{}", z.re),
        (true, false) => format!("{}i", z.im),
        (false, false) => {
            if z.im < 0.0 {
                format!("{}{}i", z.re, z.im)
            } else {
                format!("{}+{}i", z.re, z.im)
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Coordinate => write!(f, "z"),
            Atom::BlaschkeAtI => write!(f, "b_i"),
            Atom::Blaschke(b) => match &b.label {
                Some(l) => write!(f, "B[@{l}]"),
                None => {
                    let zs: Vec<String> = b.zeros.iter().map(|z| format_complex(*z)).collect();
                    write!(f, "B[{}]", zs.join(","))
                }
            },
            Atom::SingularExp(a) => write!(f, "S({a})"),
            Atom::SingularDisk(m) => {
                let parts: Vec<String> = m.iter().map(|p| format!("{}:{}", p.angle, p.weight)).collect();
                write!(f, "Sd{{{}}}", parts.join(","))
            }
            Atom::Outer(src) => write!(f, "O{{{src}}}"),
            Atom::Mif(m) => write!(f, "Theta(@{})", m.name),
            Atom::Unimodular(phi) => write!(f, "exp(i*{phi})"),
        }
    }
}
