use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{blaschke_eval, singular_inner_eval, EvalError, EXCLUSION_RADIUS};
use crate::par;
use crate::symbol::{Atom, Space, SymbolExpr};

#[derive(Debug, Clone, PartialEq)]
pub enum GridKind {
    /// Angles on the circle or reals on the line.
    Boundary(Vec<f64>),
    /// Points of the open disk or upper half-plane.
    Interior(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    pub space: Space,
    pub kind: GridKind,
    pub exclusion: f64,
}

impl EvalGrid {
    /// `n` equally spaced angles in `[0, 2π)`.
    pub fn circle(n: usize) -> Self {
        let pts = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
        EvalGrid { space: Space::Disk, kind: GridKind::Boundary(pts), exclusion: EXCLUSION_RADIUS }
    }

    /// `n` equally spaced reals in `[lo, hi]`.
    pub fn line(lo: f64, hi: f64, n: usize) -> Self {
        let pts = if n <= 1 {
            vec![lo]
        } else {
            (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
        };
        EvalGrid { space: Space::HalfPlane, kind: GridKind::Boundary(pts), exclusion: EXCLUSION_RADIUS }
    }

    /// Boundary abscissae, or an empty slice for interior grids.
    pub fn abscissae(&self) -> &[f64] {
        match &self.kind {
            GridKind::Boundary(p) => p,
            GridKind::Interior(_) => &[],
        }
    }
}

fn boundary_point(x: f64, space: Space) -> Complex64 {
    match space {
        Space::Disk => Complex64::from_polar(1.0, x),
        Space::HalfPlane => Complex64::new(x, 0.0),
    }
}

/// Boundary value of one atom at abscissa `x`.
pub fn atom_boundary_eval(atom: &Atom, x: f64, space: Space) -> Result<Complex64, EvalError> {
    let z = boundary_point(x, space);
    match atom {
        Atom::Coordinate => Ok(z),
        Atom::BlaschkeAtI => Ok((z - Complex64::i()) / (z + Complex64::i())),
        Atom::Blaschke(b) => blaschke_eval(&b.zeros, z, space),
        Atom::SingularExp(_) | Atom::SingularDisk(_) => singular_inner_eval(atom, z, space),
        Atom::Outer(src) => src
            .closed_form(z)
            .ok_or_else(|| EvalError::NotEvaluable(format!("boundary values of the sampled outer {src}"))),
        Atom::Mif(m) => Err(EvalError::NotEvaluable(format!("opaque inner function Theta(@{})", m.name))),
        Atom::Unimodular(phi) => Ok(Complex64::from_polar(1.0, *phi)),
    }
}

/// Pointwise boundary values of a symbol on a boundary grid; parallel over
/// grid points, errors reported with the first failing index.
pub fn symbol_boundary_eval(e: &SymbolExpr, grid: &EvalGrid) -> Result<Vec<Complex64>, EvalError> {
    if grid.space != e.space() {
        return Err(EvalError::NotEvaluable(format!("grid on the {} for a {} symbol", grid.space, e.space())));
    }
    let xs = match &grid.kind {
        GridKind::Boundary(xs) => xs,
        GridKind::Interior(_) => return Err(EvalError::NotEvaluable("symbol evaluation needs a boundary grid".into())),
    };
    let constant = Complex64::from_polar(1.0, e.constant_angle());
    let values = par::map(xs, |&x| {
        let mut acc = constant;
        for f in e.factors() {
            let mut v = atom_boundary_eval(&f.atom, x, e.space())?;
            if f.conjugated {
                v = v.conj();
            }
            acc *= v.powi(f.exponent as i32);
        }
        Ok(acc)
    });
    values
        .into_iter()
        .enumerate()
        .map(|(index, r)| r.map_err(|e: EvalError| EvalError::AtGridIndex { index, source: Box::new(e) }))
        .collect()
}
