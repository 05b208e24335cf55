use std::f64::consts::TAU;

use super::{KernelDim, KernelError, TriVerdict};
use crate::density::{DensityKind, DensityReport};
use crate::symbol::{outer_part_is_bounded_unit, Atom, ClassVerdict, Factor, SymbolExpr};

/// Relative tolerance for the strict threshold comparisons.
pub const DICHOTOMY_TOL: f64 = 1e-12;

fn compare(c: f64, threshold: f64) -> std::cmp::Ordering {
    let scale = c.abs().max(threshold.abs());
    if (c - threshold).abs() <= DICHOTOMY_TOL * scale {
        std::cmp::Ordering::Equal
    } else if c < threshold {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

/// Nontriviality of `ker T_{S^c conj(Θ)}` (interior) or `ker T_{conj(S^c) Θ}`
/// (exterior) when the spectrum of `Θ` has density `d`: the thresholds are
/// `2πD_*` and `2πD^*`, and the endpoint is undecided.
pub fn threshold_verdict(c: f64, d: f64, kind: DensityKind) -> TriVerdict {
    let t = TAU * d;
    let desc = |op: &str| format!("a = {} {op} 2*pi*D = {t:.4}", fmt_num(c));
    match (kind, compare(c, t)) {
        (DensityKind::LowerUniform, _) => TriVerdict::unknown("lower uniform density does not decide kernels"),
        (_, std::cmp::Ordering::Equal) => TriVerdict::unknown(desc("=")),
        (DensityKind::Interior, std::cmp::Ordering::Less) => TriVerdict::yes(desc("<")),
        (DensityKind::Interior, std::cmp::Ordering::Greater) => TriVerdict::no(desc(">")),
        (DensityKind::Exterior, std::cmp::Ordering::Greater) => TriVerdict::yes(desc(">")),
        (DensityKind::Exterior, std::cmp::Ordering::Less) => TriVerdict::no(desc("<")),
    }
}

/// [`threshold_verdict`] for a density report; heuristic reports give
/// Unknown.
pub fn density_threshold_verdict(c: f64, report: &DensityReport) -> TriVerdict {
    if !report.is_confident() {
        return TriVerdict::unknown("density estimate is heuristic");
    }
    threshold_verdict(c, report.value, report.kind)
}

/// `S(c)·Θ^sign` pattern: the single MIF factor with exponent `mif_exp`, the
/// singular exponential of parameter `c ≥ 0` with the opposite sign, and the
/// remaining inner factors, which must all have the same sign as the
/// conjugated part.
fn mif_threshold(n: &SymbolExpr) -> Option<TriVerdict> {
    let mifs: Vec<&Factor> = n.mif_atoms().collect();
    let [m] = mifs.as_slice() else { return None };
    let Atom::Mif(mref) = &m.atom else { return None };
    let report = mref.density.as_ref()?;
    if m.exponent.abs() != 1 {
        return None;
    }
    // Interior form: S(c)·conj(Θ)·(other conj inner); exterior: conj(S(c))·Θ·(other analytic inner).
    let interior = m.exponent == -1;
    let s_sign = -m.exponent;
    let mut c = 0.0;
    let mut extra = false;
    for f in n.inner_factors() {
        if std::ptr::eq(f, *m) {
            continue;
        }
        match &f.atom {
            Atom::SingularExp(a) if f.exponent == s_sign => c = *a,
            _ if f.exponent == m.exponent => extra = true,
            _ => return None,
        }
    }
    let wanted = if interior { DensityKind::Interior } else { DensityKind::Exterior };
    if report.kind != wanted {
        return None;
    }
    let mut v = density_threshold_verdict(c, report);
    if extra {
        // extra factors of the conjugated sign only enlarge the kernel
        let enlarges = interior;
        if (v.is_no() && enlarges) || (v.is_yes() && !enlarges) {
            v = TriVerdict::unknown(format!("{}; additional inner factors present", v.rule));
        }
    }
    Some(v)
}

/// Whether `ker T_φ ≠ {0}` for the classical Toeplitz operator on `H²`.
pub fn kernel_nontrivial(phi: &SymbolExpr) -> TriVerdict {
    let n = phi.normalize();
    let units = outer_part_is_bounded_unit(&n);

    if let Some(v) = mif_threshold(&n) {
        if units == ClassVerdict::Member {
            return v.with_witness(n);
        }
    }

    let pos = n.inner_factors().filter(|f| f.exponent > 0).count();
    let neg: Vec<&Factor> = n.inner_factors().filter(|f| f.exponent < 0).collect();
    let conj_outer = n.outer_factors().any(|f| f.conjugated);

    if pos == 0 && !neg.is_empty() && units == ClassVerdict::Member {
        if neg.iter().any(|f| f.atom.is_nonconstant() == Some(true)) {
            let mut v = TriVerdict::yes("conjugate of a nonconstant inner function times an outer unit");
            if let Ok(d) = kernel_dim_rational(&n) {
                v = v.with_dim(d);
            }
            return v.with_witness(n);
        }
        return TriVerdict::unknown("conjugated inner factor may be constant").with_witness(n);
    }
    if neg.is_empty() && (units == ClassVerdict::Member || !conj_outer) {
        return TriVerdict::no("analytic symbol: inner function times outer factors").with_witness(n);
    }
    TriVerdict::unknown("no structural rule applies").with_witness(n)
}

/// Dimension of `ker T_φ` for `φ = conj(B)·(outer unit)` with `B` a finite
/// Blaschke product, or infinite when a conjugated singular factor appears.
pub fn kernel_dim_rational(phi: &SymbolExpr) -> Result<KernelDim, KernelError> {
    let n = phi.normalize();
    let unsupported = || KernelError::NotRational(n.to_string());
    if outer_part_is_bounded_unit(&n) != ClassVerdict::Member {
        return Err(unsupported());
    }
    let mut degree = 0u64;
    let mut infinite = false;
    for f in n.inner_factors() {
        if f.exponent > 0 {
            return Err(unsupported());
        }
        let e = f.exponent.unsigned_abs();
        match &f.atom {
            Atom::Coordinate | Atom::BlaschkeAtI => degree += e,
            Atom::Blaschke(b) => degree += b.zeros.len() as u64 * e,
            Atom::SingularExp(_) | Atom::SingularDisk(_) => infinite = true,
            _ => return Err(unsupported()),
        }
    }
    Ok(if infinite { KernelDim::Infinite } else { KernelDim::Finite(degree) })
}

/// The multiplier dichotomy for `g = S^{-b} b_i`, `h = S^{-a} conj(Θ)`: the
/// multiplier space is nonzero iff `b − a < 2πD`.
pub fn example4_dichotomy(b: f64, a: f64, d: f64) -> Result<TriVerdict, KernelError> {
    if !(b.is_finite() && a.is_finite() && d.is_finite()) || !(b > a) || !(a > 0.0) || d < 0.0 {
        return Err(KernelError::BadParameters(format!("need b > a > 0 and D >= 0, got b = {b}, a = {a}, D = {d}")));
    }
    let c = b - a;
    let t = TAU * d;
    let desc = |op: &str| format!("b-a = {} {op} 2*pi*D = {t:.4}", fmt_num(c));
    Ok(match compare(c, t) {
        std::cmp::Ordering::Less => TriVerdict::yes(desc("<")),
        std::cmp::Ordering::Greater => TriVerdict::no(desc(">")),
        std::cmp::Ordering::Equal => TriVerdict::unknown(desc("=")),
    })
}

fn fmt_num(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.4}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Tri;
    use crate::symbol::{NamedSource, OuterSource, Space};

    fn z() -> SymbolExpr {
        SymbolExpr::atom(Space::Disk, Atom::Coordinate).unwrap()
    }

    fn hp(a: Atom) -> SymbolExpr {
        SymbolExpr::atom(Space::HalfPlane, a).unwrap()
    }

    #[test]
    fn conjugated_monomials() {
        let v = kernel_nontrivial(&z().pow(3).conjugate());
        assert_eq!(v.value, Tri::Yes);
        assert_eq!(v.dim, Some(KernelDim::Finite(3)));
        assert_eq!(kernel_nontrivial(&hp(Atom::SingularExp(1.0))).value, Tri::No);
        assert_eq!(kernel_nontrivial(&SymbolExpr::one(Space::Disk)).value, Tri::No);
    }

    #[test]
    fn example_one_ratio() {
        let o = hp(Atom::Outer(OuterSource::Named(NamedSource::ExpCauchy)));
        let h = hp(Atom::SingularExp(1.0)).conjugate();
        let g = hp(Atom::BlaschkeAtI).mul(&o.conjugate()).unwrap();
        assert_eq!(kernel_nontrivial(&h.div(&g).unwrap()).value, Tri::Yes);
    }

    #[test]
    fn dimensions() {
        assert_eq!(kernel_dim_rational(&z().pow(2).conjugate()).unwrap(), KernelDim::Finite(2));
        assert_eq!(kernel_dim_rational(&hp(Atom::BlaschkeAtI).conjugate()).unwrap(), KernelDim::Finite(1));
        assert_eq!(kernel_dim_rational(&hp(Atom::SingularExp(1.0)).conjugate()).unwrap(), KernelDim::Infinite);
        assert!(kernel_dim_rational(&z()).is_err());
    }

    #[test]
    fn dichotomy() {
        assert_eq!(example4_dichotomy(2.0, 1.0, 1.0).unwrap().value, Tri::Yes);
        assert_eq!(example4_dichotomy(8.0, 1.0, 1.0).unwrap().value, Tri::No);
        assert_eq!(example4_dichotomy(1.0 + TAU, 1.0, 1.0).unwrap().value, Tri::Unknown);
        assert!(example4_dichotomy(1.0, 1.0, 1.0).is_err());
        assert!(example4_dichotomy(2.0, 0.0, 1.0).is_err());
        assert_eq!(example4_dichotomy(2.0, 1.0, 1.0).unwrap().rule, "b-a = 1 < 2*pi*D = 6.2832");
    }
}
