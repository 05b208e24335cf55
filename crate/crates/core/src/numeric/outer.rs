use std::f64::consts::TAU;

use num_complex::Complex64;

use super::EvalError;
use crate::par;
use crate::symbol::{OuterSource, Space};

/// Trapezoidal discretization of the Herglotz integral of a log-modulus.
///
/// Nodes sit at `ζ_j = e^{2πi(j+½)/N}`. Half-plane sources are pulled back to
/// the circle through `x = i(1+ζ)/(1−ζ)`, so the same engine serves both
/// spaces and the result is normalized positive at `0` (disk) or `i`
/// (half-plane).
///
/// Near the boundary the kernel is sharper than the node spacing, so the
/// value `u(ζ₀)` at the radial projection `ζ₀ = w/|w|` is subtracted from the
/// samples and added back through `∫ (ζ+w)/(ζ−w) dm(ζ) = 1`.
#[derive(Debug, Clone)]
pub struct OuterQuadrature {
    space: Space,
    source: OuterSource,
    nodes: Vec<Complex64>,
    log_modulus: Vec<f64>,
}

impl OuterQuadrature {
    pub fn new(source: &OuterSource, space: Space, size: usize) -> Result<Self, EvalError> {
        if size < 2 || !size.is_power_of_two() {
            return Err(EvalError::BadQuadratureSize(size));
        }
        let nodes: Vec<Complex64> =
            (0..size).map(|j| Complex64::from_polar(1.0, TAU * (j as f64 + 0.5) / size as f64)).collect();
        let log_modulus = par::map(&nodes, |zeta| {
            let x = match space {
                Space::Disk => zeta.arg().rem_euclid(TAU),
                Space::HalfPlane => (Complex64::i() * (1.0 + zeta) / (1.0 - zeta)).re,
            };
            source.log_modulus(x, space)
        });
        if let Some(k) = log_modulus.iter().position(|v| !v.is_finite()) {
            return Err(EvalError::NonIntegrableLogModulus(format!("non-finite value at node {k}")));
        }
        Ok(OuterQuadrature { space, source: source.clone(), nodes, log_modulus })
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    fn to_disk(&self, z: Complex64) -> Result<Complex64, EvalError> {
        match self.space {
            Space::Disk if z.norm() < 1.0 => Ok(z),
            Space::HalfPlane if z.im > 0.0 => Ok((z - Complex64::i()) / (z + Complex64::i())),
            _ => Err(EvalError::OutsideDomain(z)),
        }
    }

    /// Log-modulus at the boundary point `ζ₀` nearest to `w`, if `w` is far
    /// enough from the center for the subtraction to matter.
    fn anchor(&self, w: Complex64) -> f64 {
        if w.norm() < 0.5 {
            return 0.0;
        }
        let zeta = w / w.norm();
        let x = match self.space {
            Space::Disk => zeta.arg().rem_euclid(TAU),
            Space::HalfPlane => (Complex64::i() * (1.0 + zeta) / (1.0 - zeta)).re,
        };
        let u = self.source.log_modulus(x, self.space);
        if u.is_finite() {
            u
        } else {
            0.0
        }
    }

    fn herglotz(&self, w: Complex64) -> Complex64 {
        let n = self.nodes.len();
        let u0 = self.anchor(w);
        self.nodes
            .iter()
            .zip(&self.log_modulus)
            .map(|(zeta, u)| (zeta + w) / (zeta - w) * (*u - u0))
            .sum::<Complex64>()
            / n as f64
            + u0
    }

    /// `O(z)` at an interior point.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        let w = self.to_disk(z)?;
        let n = self.nodes.len();
        let u0 = self.anchor(w);
        let s: Complex64 =
            par::chunked_sum(n, |j| (self.nodes[j] + w) / (self.nodes[j] - w) * (self.log_modulus[j] - u0));
        Ok((s / n as f64 + u0).exp())
    }

    /// `O` on many interior points; parallel over points.
    pub fn eval_many(&self, zs: &[Complex64]) -> Result<Vec<Complex64>, EvalError> {
        par::map(zs, |z| self.to_disk(*z).map(|w| self.herglotz(w).exp()))
            .into_iter()
            .enumerate()
            .map(|(index, r)| r.map_err(|e| EvalError::AtGridIndex { index, source: Box::new(e) }))
            .collect()
    }
}

/// Evaluates the outer function of `source` at an interior point with a
/// `quadrature_size`-node trapezoidal rule.
pub fn outer_eval(source: &OuterSource, z: Complex64, space: Space, quadrature_size: usize) -> Result<Complex64, EvalError> {
    OuterQuadrature::new(source, space, quadrature_size)?.eval(z)
}

/// Largest relative modulus error `| |O(p)| / e^{log|f|} − 1 |` over
/// `samples` boundary abscissae, with `p` pushed `gap` into the domain
/// (`(1−gap)e^{iθ}` on the disk, `x + i·gap` on the half-plane).
pub fn reconstruction_error(
    source: &OuterSource,
    space: Space,
    gap: f64,
    quadrature_size: usize,
    abscissae: &[f64],
) -> Result<f64, EvalError> {
    let q = OuterQuadrature::new(source, space, quadrature_size)?;
    let points: Vec<Complex64> = abscissae
        .iter()
        .map(|&x| match space {
            Space::Disk => Complex64::from_polar(1.0 - gap, x),
            Space::HalfPlane => Complex64::new(x, gap),
        })
        .collect();
    let values = q.eval_many(&points)?;
    Ok(values
        .iter()
        .zip(abscissae)
        .map(|(v, &x)| (v.norm() / source.log_modulus(x, space).exp() - 1.0).abs())
        .fold(0.0, f64::max))
}
