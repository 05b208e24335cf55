use num_complex::Complex64;

use super::{PointSequence, SeqSpace};

/// Result of [`star_transform`].
#[derive(Debug, Clone)]
pub struct StarTransform {
    pub sequence: PointSequence,
    /// Purely imaginary inputs, which have no image.
    pub dropped: usize,
    /// For each output point, the index of its preimage in the input.
    pub preimage: Vec<usize>,
}

/// `λ* = [Re(1/λ)]⁻¹ = |λ|²/Re λ`, dropping points with `Re λ = 0`.
pub fn star_point(z: Complex64) -> Option<f64> {
    if z.re == 0.0 {
        return None;
    }
    if z.im == 0.0 {
        return Some(z.re);
    }
    Some(z.re + z.im * z.im / z.re)
}

/// Maps a sequence in `ℂ₊ ∪ ℝ` to the real sequence `Λ*`; real inputs pass
/// through unchanged. The completeness window is carried over.
pub fn star_transform(seq: &PointSequence) -> StarTransform {
    if seq.space() == SeqSpace::Real {
        return StarTransform { sequence: seq.clone(), dropped: 0, preimage: (0..seq.len()).collect() };
    }
    let mut mapped: Vec<(f64, usize)> = Vec::with_capacity(seq.len());
    let mut dropped = 0;
    for (i, z) in seq.points().iter().enumerate() {
        match star_point(*z) {
            Some(x) => mapped.push((x, i)),
            None => dropped += 1,
        }
    }
    mapped.sort_by(|a, b| a.0.total_cmp(&b.0));
    mapped.dedup_by(|a, b| a.0 == b.0);
    let preimage = mapped.iter().map(|m| m.1).collect();
    let (mut sequence, _) = PointSequence::real(mapped.into_iter().map(|m| m.0).collect()).expect("finite images");
    sequence.window = seq.window;
    sequence.source = seq.source.clone();
    StarTransform { sequence, dropped, preimage }
}
