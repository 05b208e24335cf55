use super::counting::{is_strongly_a_regular, regularity_deficit, REGULARITY_TOL};
use super::star::star_transform;
use super::{Confidence, DensityError, DensityKind, DensityReport, DensityWitness, PointSequence};
use crate::kernel::{Tri, TriVerdict};
use crate::par;

/// Default step of the `a`-grid.
pub const DEFAULT_GRID_STEP: f64 = 1.0 / 64.0;

/// How candidate regular subsequences are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsequenceStrategy {
    /// Walk outward from 0 keeping a point whenever the kept count stays
    /// within `a|x| + ½`.
    #[default]
    GreedyThinning,
}

/// How candidate regular supersequences are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SupersequenceStrategy {
    /// Walk outward from 0 inserting points at `(c + ½)/a` wherever the count
    /// falls more than one behind `a|x|`.
    #[default]
    ArithmeticPadding,
}

/// The grid step: `TKL_GRID_STEP` if set to a positive number, else
/// [`DEFAULT_GRID_STEP`].
pub fn grid_step() -> f64 {
    std::env::var("TKL_GRID_STEP")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|s| *s > 0.0 && s.is_finite())
        .unwrap_or(DEFAULT_GRID_STEP)
}

/// `0, h, 2h, …` up to twice the average density over the window plus one.
pub fn default_grid(seq: &PointSequence, step: f64) -> Vec<f64> {
    let (lo, hi) = seq.window_or_span();
    let avg = if hi > lo { seq.len() as f64 / (hi - lo) } else { 0.0 };
    let top = (2.0 * avg + 1.0).ceil();
    let n = (top / step).round() as usize;
    (0..=n).map(|k| k as f64 * step).collect()
}

fn in_window(x: f64, (lo, hi): (f64, f64)) -> bool {
    x >= lo && x <= hi
}

/// Indices of the greedy `a`-thinned subsequence of sorted `pts`.
pub fn greedy_thinning(pts: &[f64], a: f64, window: (f64, f64)) -> Vec<usize> {
    let zero = pts.partition_point(|&p| p < 0.0);
    let mut kept = Vec::new();
    let mut c = 0.0;
    for i in (0..zero).rev() {
        if in_window(pts[i], window) && c + 1.0 <= a * pts[i].abs() + 0.5 {
            kept.push(i);
            c += 1.0;
        }
    }
    kept.reverse();
    c = 0.0;
    for (i, &p) in pts.iter().enumerate().skip(zero) {
        if in_window(p, window) && c + 1.0 <= a * p + 0.5 {
            kept.push(i);
            c += 1.0;
        }
    }
    kept
}

/// Points inserted by arithmetic padding at rate `a`, sorted.
pub fn arithmetic_padding(pts: &[f64], a: f64, window: (f64, f64)) -> Vec<f64> {
    if a <= 0.0 {
        return Vec::new();
    }
    let zero = pts.partition_point(|&p| p < 0.0);
    let mut added = Vec::new();
    let mut side = |dists: &mut dyn Iterator<Item = f64>, extent: f64, sign: f64| {
        let mut c = 0.0;
        for d in dists.filter(|d| *d <= extent) {
            while (c + 1.5) / a <= d {
                added.push(sign * (c + 0.5) / a);
                c += 1.0;
            }
            c += 1.0;
        }
        while (c + 0.5) / a <= extent {
            added.push(sign * (c + 0.5) / a);
            c += 1.0;
        }
    };
    side(&mut pts[..zero].iter().rev().map(|p| -p), -window.0, -1.0);
    side(&mut pts[zero..].iter().copied(), window.1, 1.0);
    added.retain(|x| pts.binary_search_by(|p| p.total_cmp(x)).is_err());
    added.sort_by(f64::total_cmp);
    added
}

struct Candidate {
    a: f64,
    verdict: TriVerdict,
    witness: DensityWitness,
}

fn evaluate(
    candidate: PointSequence,
    a: f64,
    indices: Vec<usize>,
    added: Vec<f64>,
    schedule: &[f64],
) -> Candidate {
    let verdict = is_strongly_a_regular(&candidate, a, schedule, REGULARITY_TOL);
    let (lo, hi) = candidate.window_or_span();
    let radius = hi.min(-lo);
    let radius = if radius >= 1.0 { radius } else { hi.max(-lo).max(1.0) };
    let (deficit, tail_bound) = regularity_deficit(&candidate, a, radius).unwrap_or((f64::NAN, f64::NAN));
    Candidate { a, verdict, witness: DensityWitness { a, original_indices: indices, added_points: added, radius, deficit, tail_bound } }
}

fn prepare(seq: &PointSequence, grid: &[f64]) -> Result<(PointSequence, usize), DensityError> {
    if grid.is_empty() {
        return Err(DensityError::EmptyGrid);
    }
    if grid.iter().any(|a| !(*a >= 0.0) || !a.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(DensityError::BadGrid);
    }
    let t = star_transform(seq);
    let mut s = t.sequence;
    if s.window.is_none() {
        s.window = Some(seq.window_or_span());
    }
    Ok((s, t.dropped))
}

fn grid_step_of(grid: &[f64]) -> Option<f64> {
    grid.windows(2).map(|w| w[1] - w[0]).reduce(f64::max)
}

fn base_report(kind: DensityKind, seq: &PointSequence, grid: &[f64], dropped: usize) -> DensityReport {
    DensityReport {
        kind,
        value: 0.0,
        witness: None,
        confidence: Confidence::Heuristic,
        grid_step: grid_step_of(grid),
        window: seq.window_or_span(),
        dropped,
        notes: Vec::new(),
    }
}

/// Largest grid `a` admitting a strongly `a`-regular subsequence found by
/// `strategy`. Confident when the next grid value is certified No.
pub fn interior_density_estimate(
    seq: &PointSequence,
    a_grid: &[f64],
    strategy: SubsequenceStrategy,
) -> Result<DensityReport, DensityError> {
    let (s, dropped) = prepare(seq, a_grid)?;
    let pts = s.reals();
    let window = s.window_or_span();
    let schedule: Vec<f64> = Vec::new();
    let candidates = par::map(a_grid, |&a| {
        let idx = match strategy {
            SubsequenceStrategy::GreedyThinning => greedy_thinning(&pts, a, window),
        };
        let sub: Vec<f64> = idx.iter().map(|&i| pts[i]).collect();
        let sub = PointSequence::real(sub).expect("subsequence of a valid sequence").0.with_window(window.0, window.1);
        evaluate(sub, a, idx, Vec::new(), &schedule)
    });

    let mut report = base_report(DensityKind::Interior, &s, a_grid, dropped);
    report.notes.push(format!("strategy: greedy thinning; truncation window [{}, {}]", window.0, window.1));
    match candidates.iter().rposition(|c| c.verdict.value == Tri::Yes) {
        None => report.notes.push("no grid value admits a certified regular subsequence".into()),
        Some(k) => {
            let c = &candidates[k];
            report.value = c.a;
            report.witness = Some(c.witness.clone());
            match candidates.get(k + 1) {
                Some(next) if next.verdict.value == Tri::No => report.confidence = Confidence::Confident,
                Some(next) => report.notes.push(format!("next grid value a = {} is {}", next.a, next.verdict.value)),
                None => report.notes.push("largest regular value is the top of the grid".into()),
            }
        }
    }
    Ok(report)
}

/// Smallest grid `a` admitting a strongly `a`-regular supersequence found by
/// `strategy`. Confident when the previous grid value is certified No or the
/// value is the grid start 0.
pub fn exterior_density_estimate(
    seq: &PointSequence,
    a_grid: &[f64],
    strategy: SupersequenceStrategy,
) -> Result<DensityReport, DensityError> {
    let (s, dropped) = prepare(seq, a_grid)?;
    let pts = s.reals();
    let window = s.window_or_span();
    let schedule: Vec<f64> = Vec::new();
    let candidates = par::map(a_grid, |&a| {
        let added = match strategy {
            SupersequenceStrategy::ArithmeticPadding => arithmetic_padding(&pts, a, window),
        };
        let mut all: Vec<f64> = pts.iter().copied().filter(|&p| in_window(p, window)).collect();
        all.extend_from_slice(&added);
        let sup = PointSequence::real(all).expect("finite points").0.with_window(window.0, window.1);
        let idx = (0..pts.len()).filter(|&i| in_window(pts[i], window)).collect();
        evaluate(sup, a, idx, added, &schedule)
    });

    let mut report = base_report(DensityKind::Exterior, &s, a_grid, dropped);
    report.notes.push(format!("strategy: arithmetic padding; truncation window [{}, {}]", window.0, window.1));
    match candidates.iter().position(|c| c.verdict.value == Tri::Yes) {
        None => report.notes.push("no grid value admits a certified regular supersequence".into()),
        Some(k) => {
            let c = &candidates[k];
            report.value = c.a;
            report.witness = Some(c.witness.clone());
            if k == 0 {
                if c.a == 0.0 {
                    report.confidence = Confidence::Confident;
                } else {
                    report.notes.push("smallest regular value is the bottom of the grid".into());
                }
            } else if candidates[k - 1].verdict.value == Tri::No {
                report.confidence = Confidence::Confident;
            } else {
                report.notes.push(format!("previous grid value is {}", candidates[k - 1].verdict.value));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(step: f64, n: i64) -> PointSequence {
        let xs = (-n..=n).map(|k| step * k as f64).collect();
        let e = step * n as f64 + 0.5 * step;
        PointSequence::real(xs).unwrap().0.with_window(-e, e)
    }

    #[test]
    fn thinning_and_padding() {
        let pts: Vec<f64> = (1..=10).map(f64::from).collect();
        assert_eq!(greedy_thinning(&pts, 0.5, (-20.0, 20.0)), vec![0, 2, 4, 6, 8]);
        let even: Vec<f64> = (1..=5).map(|k| 2.0 * k as f64).collect();
        let added = arithmetic_padding(&even, 1.0, (-0.0, 10.0));
        let mut all = even.clone();
        all.extend(&added);
        all.sort_by(f64::total_cmp);
        assert_eq!(all.len(), 10);
    }

    #[test]
    fn even_lattice_densities() {
        let s = lattice(2.0, 2048);
        let grid = default_grid(&s, DEFAULT_GRID_STEP);
        let i = interior_density_estimate(&s, &grid, SubsequenceStrategy::GreedyThinning).unwrap();
        let e = exterior_density_estimate(&s, &grid, SupersequenceStrategy::ArithmeticPadding).unwrap();
        assert!((i.value - 0.5).abs() <= DEFAULT_GRID_STEP, "{i:?}");
        assert!((e.value - 0.5).abs() <= DEFAULT_GRID_STEP, "{e:?}");
        assert!(i.is_confident() && e.is_confident());
    }

    #[test]
    fn empty_sequence() {
        let s = PointSequence::empty();
        let grid = default_grid(&s, DEFAULT_GRID_STEP);
        let i = interior_density_estimate(&s, &grid, SubsequenceStrategy::GreedyThinning).unwrap();
        let e = exterior_density_estimate(&s, &grid, SupersequenceStrategy::ArithmeticPadding).unwrap();
        assert_eq!(i.value, 0.0);
        assert_eq!(e.value, 0.0);
        assert!(interior_density_estimate(&s, &[], SubsequenceStrategy::GreedyThinning).is_err());
    }
}
