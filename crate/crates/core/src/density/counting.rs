use super::{DensityError, PointSequence};
use crate::kernel::TriVerdict;
use crate::par;

/// Tolerance on the extrapolated deficit tail for a Yes verdict.
pub const REGULARITY_TOL: f64 = 1e-3;
/// Minimum slope `|n(x) − ax|/|x|` on the tail that certifies divergence.
pub const DIVERGENCE_SLOPE: f64 = 1e-3;
/// Increment ratio below which deficit increments count as geometric.
const DECAY_RATIO: f64 = 0.75;

/// `#{λ : 0 ≤ λ ≤ x}` for `x ≥ 0`, `−#{λ : x < λ < 0}` for `x < 0`, over
/// sorted reals.
pub fn count_sorted(pts: &[f64], x: f64) -> i64 {
    let zero = pts.partition_point(|&p| p < 0.0);
    if x >= 0.0 {
        (pts.partition_point(|&p| p <= x) - zero) as i64
    } else {
        -((zero - pts.partition_point(|&p| p <= x)) as i64)
    }
}

/// The counting function `n_Λ(x)`.
pub fn counting_function(seq: &PointSequence, x: f64) -> i64 {
    count_sorted(&seq.reals(), x)
}

/// `∫_{x0}^{x1} (c − ax)/(1 + x²) dx` for `x0 ≤ x1` on one side of 0.
fn signed_piece(c: f64, a: f64, x0: f64, x1: f64) -> f64 {
    let d = x1 - x0;
    let datan = (d / (1.0 + x0 * x1)).atan();
    let dlog = (d * (x1 + x0) / (1.0 + x0 * x0)).ln_1p();
    c * datan - 0.5 * a * dlog
}

/// `∫_{x0}^{x1} |c − ax|/(1 + x²) dx`, split at the sign change `c/a`.
fn abs_piece(c: f64, a: f64, x0: f64, x1: f64) -> f64 {
    if x1 <= x0 {
        return 0.0;
    }
    if a != 0.0 {
        let root = c / a;
        if root > x0 && root < x1 {
            return signed_piece(c, a, x0, root).abs() + signed_piece(c, a, root, x1).abs();
        }
    }
    signed_piece(c, a, x0, x1).abs()
}

/// Exact `∫_{lo}^{hi} |n(x) − ax|/(1 + x²) dx` over sorted points.
pub fn deficit_sorted(pts: &[f64], a: f64, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let start = pts.partition_point(|&p| p <= lo);
    let end = pts.partition_point(|&p| p < hi);
    let mut breaks = Vec::with_capacity(end - start + 3);
    breaks.push(lo);
    let mut zero_pending = lo < 0.0 && hi > 0.0;
    for &p in &pts[start..end] {
        if zero_pending && p >= 0.0 {
            if p > 0.0 {
                breaks.push(0.0);
            }
            zero_pending = false;
        }
        breaks.push(p);
    }
    if zero_pending {
        breaks.push(0.0);
    }
    breaks.push(hi);
    par::chunked_sum(breaks.len() - 1, |i| {
        let (x0, x1) = (breaks[i], breaks[i + 1]);
        if x1 <= x0 {
            return 0.0;
        }
        let c = count_sorted(pts, 0.5 * (x0 + x1)) as f64;
        abs_piece(c, a, x0, x1)
    })
}

/// `∫_{lo}^{hi} |n_Λ(x) − ax|/(1 + x²) dx`.
pub fn deficit_on(seq: &PointSequence, a: f64, lo: f64, hi: f64) -> f64 {
    deficit_sorted(&seq.reals(), a, lo, hi)
}

/// Largest `|n(x) − ax|` over `[x0, x1]` (one side of 0).
fn max_deviation(pts: &[f64], a: f64, x0: f64, x1: f64) -> f64 {
    let dev = |c: i64, x: f64| (c as f64 - a * x).abs();
    let mut m = dev(count_sorted(pts, x0), x0).max(dev(count_sorted(pts, x1), x1));
    let start = pts.partition_point(|&p| p < x0);
    let end = pts.partition_point(|&p| p <= x1);
    for &p in &pts[start..end] {
        // both one-sided limits at a jump
        let left = p - f64::EPSILON * p.abs().max(1.0);
        m = m.max(dev(count_sorted(pts, p), p)).max(dev(count_sorted(pts, left), p));
    }
    m
}

/// Smallest `|n(x) − ax|/|x|` over `[x0, x1]` with `0 < x0` (or the mirror
/// on the negative side).
fn min_slope(pts: &[f64], a: f64, x0: f64, x1: f64) -> f64 {
    let (lo, hi) = (x0.min(x1), x0.max(x1));
    let start = pts.partition_point(|&p| p <= lo);
    let end = pts.partition_point(|&p| p < hi);
    let mut breaks = vec![lo];
    breaks.extend_from_slice(&pts[start..end]);
    breaks.push(hi);
    let mut m = f64::INFINITY;
    for w in breaks.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v <= u {
            continue;
        }
        let c = count_sorted(pts, 0.5 * (u + v)) as f64;
        if a != 0.0 && c / a > u && c / a < v {
            return 0.0;
        }
        // |c − ax|/|x| is monotone on the piece
        m = m.min(((c - a * u) / u).abs()).min(((c - a * v) / v).abs());
    }
    m
}

/// Deficit over `[−R, R]` with a tail bound `M·(π/2 − atan R)` per side,
/// `M` the largest deviation on the outer half of the radius.
pub fn regularity_deficit(seq: &PointSequence, a: f64, r: f64) -> Result<(f64, f64), DensityError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(DensityError::BadRadius(r));
    }
    let pts = seq.reals();
    let deficit = deficit_sorted(&pts, a, -r, r);
    let weight = std::f64::consts::FRAC_PI_2 - r.atan();
    let m = max_deviation(&pts, a, 0.5 * r, r).max(max_deviation(&pts, a, -r, -0.5 * r));
    Ok((deficit, 2.0 * m * weight))
}

/// Radii `E, E/2, E/4, …` down to 1, ascending.
pub fn default_schedule(extent: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut r = extent;
    while r >= 1.0 && out.len() < 64 {
        out.push(r);
        r *= 0.5;
    }
    out.reverse();
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum SideVerdict {
    Converges { tail: f64 },
    Diverges { slope: f64 },
    Undecided,
}

fn side_verdict(pts: &[f64], a: f64, radii: &[f64], sign: f64, tol: f64) -> SideVerdict {
    if radii.len() < 4 {
        return SideVerdict::Undecided;
    }
    let mut prev = 0.0;
    let incs: Vec<f64> = radii
        .iter()
        .map(|&r| {
            let (lo, hi) = if sign > 0.0 { (prev, r) } else { (-r, -prev) };
            prev = r;
            deficit_sorted(pts, a, lo, hi)
        })
        .collect();
    let tail_incs = &incs[incs.len() - 4..];
    let mut rho: f64 = 0.0;
    let mut geometric = true;
    for w in tail_incs.windows(2) {
        if w[1] == 0.0 {
            continue;
        }
        if w[0] == 0.0 {
            geometric = false;
            break;
        }
        let q = w[1] / w[0];
        rho = rho.max(q);
        if q > DECAY_RATIO {
            geometric = false;
            break;
        }
    }
    if geometric {
        let last = *incs.last().unwrap();
        let tail = if rho == 0.0 { 0.0 } else { last * rho / (1.0 - rho) };
        if tail <= tol {
            return SideVerdict::Converges { tail };
        }
    }
    let r = *radii.last().unwrap();
    let r0 = radii[radii.len() - 3];
    let slope = if sign > 0.0 { min_slope(pts, a, r0, r) } else { min_slope(pts, a, -r, -r0) };
    if slope >= DIVERGENCE_SLOPE {
        return SideVerdict::Diverges { slope };
    }
    SideVerdict::Undecided
}

/// Strong `a`-regularity from deficit increments over `schedule`, judged on
/// each side of the origin. Radii beyond the completeness window are
/// discarded. An empty schedule selects [`default_schedule`] per side.
pub fn is_strongly_a_regular(seq: &PointSequence, a: f64, schedule: &[f64], tol: f64) -> TriVerdict {
    let pts = seq.reals();
    let (lo, hi) = seq.window_or_span();
    let side = |extent: f64, sign: f64| {
        let radii: Vec<f64> = if schedule.is_empty() {
            default_schedule(extent)
        } else {
            schedule.iter().copied().filter(|&r| r > 0.0 && r <= extent).collect()
        };
        side_verdict(&pts, a, &radii, sign, tol)
    };
    let pos = side(hi.max(0.0), 1.0);
    let neg = side((-lo).max(0.0), -1.0);
    match (pos, neg) {
        (SideVerdict::Diverges { slope }, _) | (_, SideVerdict::Diverges { slope }) => {
            TriVerdict::no(format!("|n(x) - ax| >= {slope:.3e}|x| on the tail"))
        }
        (SideVerdict::Converges { tail: t1 }, SideVerdict::Converges { tail: t2 }) => {
            TriVerdict::yes(format!("deficit increments decay geometrically, extrapolated tail {:.3e}", t1 + t2))
        }
        _ => TriVerdict::unknown("deficit increments neither decay nor stay bounded below"),
    }
}
