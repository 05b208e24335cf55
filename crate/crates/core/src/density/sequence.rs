use num_complex::Complex64;
use serde::Serialize;

/// Where the points of a [`PointSequence`] live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeqSpace {
    Real,
    UpperHalfPlane,
}

/// Completeness extent assumed for an empty sequence without a window.
pub const DEFAULT_EXTENT: f64 = 1024.0;

/// An ordered discrete set in ℝ or ℂ₊ ∪ ℝ.
///
/// Real sequences are strictly increasing. `window` is the abscissa range
/// on which a truncated infinite set is known to be complete.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSequence {
    points: Vec<Complex64>,
    space: SeqSpace,
    pub separation: Option<f64>,
    pub window: Option<(f64, f64)>,
    pub source: Option<String>,
}

impl PointSequence {
    /// Sorts and deduplicates real points. Returns the sequence and the number
    /// of duplicates removed. Non-finite values are rejected.
    pub fn real(mut xs: Vec<f64>) -> Result<(Self, usize), String> {
        if let Some(x) = xs.iter().find(|x| !x.is_finite()) {
            return Err(format!("non-finite point {x}"));
        }
        xs.sort_by(f64::total_cmp);
        let before = xs.len();
        xs.dedup();
        let dups = before - xs.len();
        let points = xs.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        Ok((PointSequence { points, space: SeqSpace::Real, separation: None, window: None, source: None }, dups))
    }

    /// Points in ℂ₊ ∪ ℝ, ordered by real then imaginary part and deduplicated.
    pub fn upper(mut zs: Vec<Complex64>) -> Result<(Self, usize), String> {
        if let Some(z) = zs.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(format!("non-finite point {z}"));
        }
        if let Some(z) = zs.iter().find(|z| z.im < 0.0) {
            return Err(format!("point {z} lies in the lower half-plane"));
        }
        zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let before = zs.len();
        zs.dedup();
        let dups = before - zs.len();
        Ok((PointSequence { points: zs, space: SeqSpace::UpperHalfPlane, separation: None, window: None, source: None }, dups))
    }

    pub fn empty() -> Self {
        PointSequence::real(Vec::new()).expect("empty is valid").0
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Self {
        self.window = Some((lo.min(hi), lo.max(hi)));
        self
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub fn space(&self) -> SeqSpace {
        self.space
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Real parts, in order.
    pub fn reals(&self) -> Vec<f64> {
        self.points.iter().map(|z| z.re).collect()
    }

    /// The completeness window. Without an explicit window the sequence is
    /// taken as complete on `[−M, M]`, `M` the largest modulus of a real
    /// part (or [`DEFAULT_EXTENT`] for an empty sequence).
    pub fn window_or_span(&self) -> (f64, f64) {
        self.window.unwrap_or_else(|| {
            let m = self.points.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
            let m = if self.points.is_empty() { DEFAULT_EXTENT } else { m };
            (-m, m)
        })
    }
}

/// Which density a [`DensityReport`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DensityKind {
    Interior,
    Exterior,
    LowerUniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Confidence {
    Confident,
    Heuristic,
}

/// Witness data backing a density value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityWitness {
    pub a: f64,
    /// Indices into the (star-transformed) input that belong to the witness.
    pub original_indices: Vec<usize>,
    /// Points added by padding (exterior witnesses only).
    pub added_points: Vec<f64>,
    pub radius: f64,
    pub deficit: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub kind: DensityKind,
    pub value: f64,
    pub witness: Option<DensityWitness>,
    pub confidence: Confidence,
    pub grid_step: Option<f64>,
    pub window: (f64, f64),
    /// Points dropped by the star transform (purely imaginary inputs).
    pub dropped: usize,
    pub notes: Vec<String>,
}

impl DensityReport {
    pub fn is_confident(&self) -> bool {
        self.confidence == Confidence::Confident
    }
}
