use super::estimate::{default_grid, grid_step, interior_density_estimate, SubsequenceStrategy};
use super::star::star_transform;
use super::{Confidence, DensityError, DensityKind, DensityReport, PointSequence};
use crate::kernel::{threshold_verdict, TriVerdict};
use crate::par;

/// Gaps below this do not certify separation.
pub const SEPARATION_FLOOR: f64 = 1e-6;

/// `#(Λ ∩ (x − r, x + r))` over sorted points.
fn open_count(pts: &[f64], x: f64, r: f64) -> usize {
    let lo = pts.partition_point(|&p| p <= x - r);
    let hi = pts.partition_point(|&p| p < x + r);
    hi.saturating_sub(lo)
}

/// Exact `min_x #(Λ ∩ (x − r, x + r))` for centers `x ∈ [lo + r, hi − r]`,
/// by checking every event `λ ± r` and the midpoints between events.
pub fn min_window_count(pts: &[f64], r: f64, lo: f64, hi: f64) -> usize {
    let (a, b) = (lo + r, hi - r);
    let mut events: Vec<f64> = vec![a, b];
    for &p in pts {
        for e in [p - r, p + r] {
            if e > a && e < b {
                events.push(e);
            }
        }
    }
    events.sort_by(f64::total_cmp);
    events.dedup();
    let mut probes = events.clone();
    probes.extend(events.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    par::map(&probes, |&x| open_count(pts, x, r)).into_iter().min().unwrap_or(0)
}

/// Radii `span/4, span/8, …` (at least 1), ascending, at most 8 of them.
pub fn default_radii(span: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut r = span / 4.0;
    while r >= 1.0 && out.len() < 8 {
        out.push(r);
        r *= 0.5;
    }
    out.reverse();
    out
}

/// Lower uniform density from min-over-window counts at each radius, with
/// Richardson extrapolation `D + C/r` on the two largest radii.
pub fn lower_uniform_density(seq: &PointSequence, r_schedule: &[f64]) -> Result<DensityReport, DensityError> {
    let pts = seq.reals();
    let (lo, hi) = seq.window_or_span();
    let radii = if r_schedule.is_empty() { default_radii(hi - lo) } else { r_schedule.to_vec() };
    if radii.is_empty() {
        return Err(DensityError::BadRadius(0.0));
    }
    let mut ratios = Vec::with_capacity(radii.len());
    for &r in &radii {
        if !(r > 0.0) {
            return Err(DensityError::BadRadius(r));
        }
        if 2.0 * r > hi - lo {
            return Err(DensityError::WindowTooLarge { r, span: hi - lo });
        }
        ratios.push((r, min_window_count(&pts, r, lo, hi), 0.0));
        let last = ratios.last_mut().unwrap();
        last.2 = last.1 as f64 / (2.0 * r);
    }
    let value = match ratios.as_slice() {
        [.., (r1, _, f1), (r2, _, f2)] if r2 > r1 => ((r2 * f2 - r1 * f1) / (r2 - r1)).max(0.0),
        [.., (_, _, f)] => *f,
        [] => unreachable!(),
    };
    let mut notes: Vec<String> = ratios.iter().map(|(r, m, f)| format!("r = {r}: min count {m}, ratio {f:.6}")).collect();
    notes.push(format!("truncation window [{lo}, {hi}]"));
    Ok(DensityReport {
        kind: DensityKind::LowerUniform,
        value,
        witness: None,
        confidence: Confidence::Heuristic,
        grid_step: None,
        window: (lo, hi),
        dropped: 0,
        notes,
    })
}

/// Smallest gap between consecutive real points, if there are two.
pub fn min_gap(seq: &PointSequence) -> Option<f64> {
    let pts = seq.reals();
    pts.windows(2).map(|w| w[1] - w[0]).reduce(f64::min)
}

/// True iff consecutive gaps are all at least `delta`.
pub fn is_separated(seq: &PointSequence, delta: f64) -> bool {
    min_gap(seq).map_or(true, |g| g >= delta)
}

/// Pólya verdict for a separated sequence: Yes iff the interior density is
/// positive, decided only from a confident estimate.
pub fn polya_verdict(seq: &PointSequence) -> Result<TriVerdict, DensityError> {
    let real = star_transform(seq).sequence;
    let gap = min_gap(&real).unwrap_or(f64::INFINITY);
    if gap < SEPARATION_FLOOR {
        return Err(DensityError::NotSeparated(gap));
    }
    let mut s = real;
    if s.window.is_none() {
        s.window = Some(seq.window_or_span());
    }
    let grid = default_grid(&s, grid_step());
    let report = interior_density_estimate(&s, &grid, SubsequenceStrategy::GreedyThinning)?;
    let d = report.value;
    let v = match (report.confidence, d > 0.0) {
        (Confidence::Heuristic, _) => TriVerdict::unknown(format!("interior density estimate {d} is heuristic")),
        (Confidence::Confident, true) => TriVerdict::yes(format!("separated with interior density {d} > 0")),
        (Confidence::Confident, false) => TriVerdict::no("separated with interior density 0"),
    };
    Ok(v)
}

/// Nontriviality of `ker T_{S^a conj(Θ)}` (interior) or `ker T_{conj(S^a) Θ}`
/// (exterior) for a spectrum of density `d`.
pub fn density_kernel_threshold(d: f64, a: f64, side: DensityKind) -> TriVerdict {
    if !(d >= 0.0 && a >= 0.0) || !d.is_finite() || !a.is_finite() {
        return TriVerdict::unknown("need D >= 0 and a >= 0");
    }
    threshold_verdict(a, d, side)
}
