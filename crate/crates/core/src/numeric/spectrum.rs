use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use super::EvalError;
use crate::density::PointSequence;

/// Concrete meromorphic inner function `e^{iγ} e^{iax} Π (x − a_n)/(x − ā_n)`.
#[derive(Debug, Clone)]
pub struct MifParams {
    /// Angle `γ` of the unimodular constant.
    pub constant_angle: f64,
    pub a: f64,
    pub zeros: Vec<Complex64>,
}

impl MifParams {
    pub fn eval(&self, x: f64) -> Complex64 {
        let mut v = Complex64::from_polar(1.0, self.constant_angle + self.a * x);
        let z = Complex64::new(x, 0.0);
        for a in &self.zeros {
            v *= (z - a) / (z - a.conj());
        }
        v
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub points: PointSequence,
    /// Increase of the continuous phase over the interval.
    pub total_phase: f64,
}

const ROOT_TOL: f64 = 1e-10;
const PHASE_TOL: f64 = 1e-12;

/// Solves `Θ(x) = 1` on `[lo, hi]` by tracking the continuous phase of `Θ`
/// and bisecting each crossing of `2πk`.
///
/// `resolution` is the initial step; steps halve while the phase jump between
/// samples exceeds `π/2`.
pub fn spectrum_sigma(theta: &MifParams, lo: f64, hi: f64, resolution: f64) -> Result<SpectrumResult, EvalError> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) || !(resolution > 0.0) {
        return Err(EvalError::BadInterval(lo, hi));
    }
    if theta.a < 0.0 || theta.zeros.iter().any(|z| z.im <= 0.0) {
        return Err(EvalError::PhaseNotMonotone(lo));
    }
    let min_step = resolution * 1e-12;
    let mut x = lo;
    let mut v = theta.eval(lo);
    let start = v.arg();
    let mut phase = start;
    let mut roots = Vec::new();
    let mut next_k = (phase / TAU).ceil();
    if phase.abs() <= PHASE_TOL {
        roots.push(lo);
        next_k = 1.0;
    }

    while x < hi {
        let mut h = resolution.min(hi - x);
        let (v1, d) = loop {
            let v1 = theta.eval(x + h);
            let d = (v1 / v).arg();
            if d.abs() > FRAC_PI_2 && h > min_step {
                h *= 0.5;
                continue;
            }
            break (v1, d);
        };
        if d < -PHASE_TOL {
            return Err(EvalError::PhaseNotMonotone(x));
        }
        let new_phase = phase + d;
        while TAU * next_k <= new_phase + PHASE_TOL {
            let target = TAU * next_k;
            let (mut a, mut b) = (x, x + h);
            while b - a > ROOT_TOL {
                let m = 0.5 * (a + b);
                let pm = phase + (theta.eval(m) / v).arg();
                if pm < target {
                    a = m;
                } else {
                    b = m;
                }
            }
            let root = 0.5 * (a + b);
            if roots.last().map_or(true, |r: &f64| root - r > ROOT_TOL) {
                roots.push(root);
            }
            next_k += 1.0;
        }
        x += h;
        v = v1;
        phase = new_phase;
    }
    let (seq, _) = PointSequence::real(roots).map_err(EvalError::NotEvaluable)?;
    Ok(SpectrumResult { points: seq.with_window(lo, hi), total_phase: phase - start })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exponential_spectrum_is_two_pi_lattice() {
        let t = MifParams { constant_angle: 0.0, a: 1.0, zeros: vec![] };
        let r = spectrum_sigma(&t, 0.0, 10.0, 0.1).unwrap();
        let xs = r.points.reals();
        assert_eq!(xs.len(), 2);
        assert!(xs[0].abs() < 1e-10);
        assert!((xs[1] - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn elementary_blaschke_has_empty_spectrum() {
        let t = MifParams { constant_angle: 0.0, a: 0.0, zeros: vec![Complex64::i()] };
        assert!(spectrum_sigma(&t, -100.0, 100.0, 0.5).unwrap().points.is_empty());
    }

    #[test]
    fn count_matches_phase_increase() {
        let t = MifParams { constant_angle: 0.0, a: 1.0, zeros: vec![Complex64::i()] };
        let r = spectrum_sigma(&t, 0.0, 20.0, 0.25).unwrap();
        // closed-form phase: x + 2·atan(x) − π (continuous branch of b_i)
        let phase = |x: f64| x + 2.0 * x.atan() - PI;
        let oracle = ((phase(20.0) - phase(0.0)) / TAU).floor() as i64;
        assert!((r.points.len() as i64 - oracle).abs() <= 1);
        assert!((r.total_phase - (phase(20.0) - phase(0.0))).abs() < 1e-9);
        for x in r.points.reals() {
            assert!((t.eval(x) - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn invalid_parameters() {
        let t = MifParams { constant_angle: 0.0, a: -1.0, zeros: vec![] };
        assert!(matches!(spectrum_sigma(&t, 0.0, 1.0, 0.1), Err(EvalError::PhaseNotMonotone(_))));
        assert!(spectrum_sigma(&MifParams { constant_angle: 0.0, a: 1.0, zeros: vec![] }, 1.0, 0.0, 0.1).is_err());
    }
}
