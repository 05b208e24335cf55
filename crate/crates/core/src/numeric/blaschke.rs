use num_complex::Complex64;

use super::{EvalError, EXCLUSION_RADIUS};
use crate::kernel::TriVerdict;
use crate::symbol::Space;

/// Tail mass below which an infinite zero list is truncated.
pub const BLASCHKE_TAIL_TOL: f64 = 1e-10;

/// Evaluates the Blaschke product over `zeros` at `z`.
///
/// Disk factors are `(ā/|a|)(a − z)/(1 − ā z)`; half-plane factors are
/// `(z − a)/(z − ā)`, so the zero `i` reproduces `b_i`.
pub fn blaschke_eval(zeros: &[Complex64], z: Complex64, space: Space) -> Result<Complex64, EvalError> {
    let mut acc = Complex64::new(1.0, 0.0);
    for &a in zeros {
        match space {
            Space::Disk => {
                let r = a.norm();
                if r == 0.0 {
                    return Err(EvalError::ZeroAtOrigin);
                }
                let pole = 1.0 / a.conj();
                if (z - pole).norm() < EXCLUSION_RADIUS {
                    return Err(EvalError::PoleHit(z));
                }
                acc *= (a.conj() / r) * (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z);
            }
            Space::HalfPlane => {
                if (z - a.conj()).norm() < EXCLUSION_RADIUS {
                    return Err(EvalError::PoleHit(z));
                }
                acc *= (z - a) / (z - a.conj());
            }
        }
    }
    Ok(acc)
}

/// A zero list: finite, or generated term by term up to `max_terms`.
pub enum ZeroList<'a> {
    Finite(&'a [Complex64]),
    Generated { term: &'a dyn Fn(usize) -> Complex64, max_terms: usize },
}

#[derive(Debug, Clone)]
pub struct BlaschkeCondition {
    pub partial_sum: f64,
    pub converged: TriVerdict,
    /// Estimated total when convergence is certified.
    pub estimated_total: Option<f64>,
    /// Number of leading terms whose omission leaves a tail below
    /// [`BLASCHKE_TAIL_TOL`].
    pub truncate_at: Option<usize>,
}

fn condition_term(a: Complex64, space: Space) -> f64 {
    match space {
        Space::Disk => 1.0 - a.norm(),
        Space::HalfPlane => a.im / (1.0 + a.norm_sqr()),
    }
}

/// Partial sums of the Blaschke condition `Σ (1 − |a_n|)` (disk) or
/// `Σ Im a_n / (1 + |a_n|²)` (half-plane) with a convergence judgment.
///
/// Generated lists are judged on the second half of the computed terms: a
/// ratio or `n^{3/2}` comparison certifies convergence, a nondecaying `n·t_n`
/// certifies divergence against the harmonic series.
pub fn blaschke_condition(zeros: ZeroList<'_>, space: Space) -> BlaschkeCondition {
    let terms: Vec<f64> = match zeros {
        ZeroList::Finite(zs) => {
            let terms: Vec<f64> = zs.iter().map(|a| condition_term(*a, space)).collect();
            let s = terms.iter().sum();
            return BlaschkeCondition {
                partial_sum: s,
                converged: TriVerdict::yes("finite zero list"),
                estimated_total: Some(s),
                truncate_at: Some(terms.len()),
            };
        }
        ZeroList::Generated { term, max_terms } => (1..=max_terms).map(|n| condition_term(term(n), space)).collect(),
    };
    let partial: f64 = terms.iter().sum();
    let n = terms.len();
    if n < 8 {
        return BlaschkeCondition { partial_sum: partial, converged: TriVerdict::unknown("too few terms"), estimated_total: None, truncate_at: None };
    }
    let half = n / 2;
    let tail = &terms[half..];
    let idx = |k: usize| (half + k + 1) as f64;

    let ratios: Vec<f64> = tail.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect();
    let geometric = ratios.iter().all(|r| *r <= 0.9);
    let p_weighted = |k: usize| idx(k).powf(1.5) * tail[k];
    let p_decay = p_weighted(tail.len() - 1) <= p_weighted(0) && tail.iter().all(|t| *t >= 0.0);

    let tail_bound = if geometric {
        let rho = ratios.iter().cloned().fold(0.0, f64::max);
        Some(terms[n - 1] * rho / (1.0 - rho))
    } else if p_decay {
        let c = (0..tail.len()).map(p_weighted).fold(0.0, f64::max);
        Some(2.0 * c / (n as f64).sqrt())
    } else {
        None
    };
    if let Some(tb) = tail_bound {
        let mut acc = 0.0;
        let mut truncate_at = n;
        for (k, t) in terms.iter().enumerate().rev() {
            if acc + t + tb >= BLASCHKE_TAIL_TOL {
                truncate_at = k + 1;
                break;
            }
            acc += t;
        }
        return BlaschkeCondition {
            partial_sum: partial,
            converged: TriVerdict::yes(if geometric { "ratio test on the tail" } else { "comparison with n^(-3/2)" }),
            estimated_total: Some(partial + tb),
            truncate_at: (tb < BLASCHKE_TAIL_TOL).then_some(truncate_at),
        };
    }
    let harmonic: Vec<f64> = (0..tail.len()).map(|k| idx(k) * tail[k]).collect();
    let floor = harmonic.iter().cloned().fold(f64::INFINITY, f64::min);
    if floor > 0.0 && harmonic[harmonic.len() - 1] >= 0.99 * harmonic[0] {
        return BlaschkeCondition {
            partial_sum: partial,
            converged: TriVerdict::no(format!("n·t_n ≥ {floor:.3e} on the tail (harmonic comparison)")),
            estimated_total: None,
            truncate_at: None,
        };
    }
    BlaschkeCondition { partial_sum: partial, converged: TriVerdict::unknown("no tail pattern certified"), estimated_total: None, truncate_at: None }
}
