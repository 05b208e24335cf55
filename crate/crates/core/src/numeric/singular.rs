use num_complex::Complex64;

use super::{EvalError, EXCLUSION_RADIUS};
use crate::symbol::{Atom, Space};

const DOMAIN_SLACK: f64 = 1e-12;

/// Evaluates a singular inner atom at an interior or boundary point.
///
/// `S^a(z) = e^{iaz}` on the half-plane; on the disk
/// `S(z) = exp(−Σ w_k (ζ_k + z)/(ζ_k − z))` for point masses `w_k δ_{ζ_k}`.
pub fn singular_inner_eval(atom: &Atom, z: Complex64, space: Space) -> Result<Complex64, EvalError> {
    match (atom, space) {
        (Atom::SingularExp(a), Space::HalfPlane) => {
            if z.im < -DOMAIN_SLACK {
                return Err(EvalError::OutsideDomain(z));
            }
            Ok((Complex64::i() * *a * z).exp())
        }
        (Atom::SingularDisk(masses), Space::Disk) => {
            if z.norm() > 1.0 + DOMAIN_SLACK {
                return Err(EvalError::OutsideDomain(z));
            }
            let mut exponent = Complex64::new(0.0, 0.0);
            for m in masses {
                let zeta = m.zeta();
                if (zeta - z).norm() < EXCLUSION_RADIUS {
                    return Err(EvalError::MassHit(z));
                }
                exponent -= m.weight * (zeta + z) / (zeta - z);
            }
            Ok(exponent.exp())
        }
        _ => Err(EvalError::NotEvaluable(format!("{atom} is not a singular inner atom on the {space}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::PointMass;

    #[test]
    fn exponential_is_unimodular_on_the_line() {
        for k in -50..50 {
            let x = k as f64 * 0.37;
            let v = singular_inner_eval(&Atom::SingularExp(2.5), Complex64::new(x, 0.0), Space::HalfPlane).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!((v - Complex64::from_polar(1.0, 2.5 * x)).norm() < 1e-12);
        }
        let one = singular_inner_eval(&Atom::SingularExp(0.0), Complex64::new(3.0, 1.0), Space::HalfPlane).unwrap();
        assert_eq!(one, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn unit_mass_at_one_gives_inverse_e_at_origin() {
        let atom = Atom::SingularDisk(vec![PointMass { angle: 0.0, weight: 1.0 }]);
        let v = singular_inner_eval(&atom, Complex64::new(0.0, 0.0), Space::Disk).unwrap();
        // kernel (1 + 0)/(1 − 0) = 1
        assert!((v - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 1e-15);
        assert!(matches!(singular_inner_eval(&atom, Complex64::new(1.0, 0.0), Space::Disk), Err(EvalError::MassHit(_))));
        let b = singular_inner_eval(&atom, Complex64::from_polar(1.0, 2.0), Space::Disk).unwrap();
        assert!((b.norm() - 1.0).abs() < 1e-12);
    }
}
