use super::{kernel_nontrivial, KernelError, KernelRef, SpaceDescriptor, TriVerdict};
use crate::symbol::{in_conj_smirnov, is_bounded, outer_part_is_bounded_unit, Atom, ClassVerdict, Space, SymbolError, SymbolExpr};

fn same_space(a: &SymbolExpr, b: &SymbolExpr) -> Result<Space, KernelError> {
    if a.space() != b.space() {
        return Err(SymbolError::MixedSpace(a.space(), b.space()).into());
    }
    Ok(a.space())
}

/// `ker T_g ⊆ ker T_h` (same codomain) iff `hg⁻¹ ∈ conj(N⁺)`, for nontrivial
/// kernels.
pub fn kernel_inclusion(g: &SymbolExpr, h: &SymbolExpr, space: Space) -> Result<TriVerdict, KernelError> {
    if g.space() != space {
        return Err(SymbolError::MixedSpace(space, g.space()).into());
    }
    same_space(g, h)?;
    let kg = kernel_nontrivial(g);
    let kh = kernel_nontrivial(h);
    let ratio = h.div(g)?.normalize();
    if kg.is_no() {
        return Ok(TriVerdict::yes("ker T_g is trivial").with_witness(ratio));
    }
    if kh.is_no() && kg.is_yes() {
        return Ok(TriVerdict::no("ker T_h is trivial while ker T_g is not").with_witness(ratio));
    }
    let mut v = TriVerdict::from_class(in_conj_smirnov(&ratio), "h/g in the conjugate Smirnov class").with_witness(ratio);
    v.assumed_nontrivial = !(kg.is_yes() && kh.is_yes());
    Ok(v)
}

/// Whether the bounded `w` multiplies `ker T_g` into `ker T_h`, decided by
/// `hg⁻¹w ∈ conj(N)` for the effective symbols `g·conj(Θ₂)`.
pub fn multiplier_check(w: &SymbolExpr, g: &KernelRef, h: &KernelRef) -> Result<TriVerdict, KernelError> {
    let space = same_space(&g.symbol, &h.symbol)?;
    if w.space() != space {
        return Err(SymbolError::MixedSpace(space, w.space()).into());
    }
    let w = w.normalize();
    match is_bounded(&w) {
        ClassVerdict::NotMember => return Err(KernelError::UnboundedMultiplier(w.to_string())),
        ClassVerdict::Unknown => return Ok(TriVerdict::unknown("boundedness of the multiplier is not certified")),
        ClassVerdict::Member => {}
    }
    if g.domain != SpaceDescriptor::FullHardy || h.domain != SpaceDescriptor::FullHardy {
        return Ok(TriVerdict::unknown("only E1 = H2 is decided"));
    }
    let ge = g.effective_symbol()?;
    let he = h.effective_symbol()?;
    let kg = kernel_nontrivial(&ge);
    if kg.is_no() {
        return Ok(TriVerdict::yes("domain kernel is trivial"));
    }
    let kh = kernel_nontrivial(&he);
    if kh.is_no() {
        return Ok(if kg.is_yes() {
            TriVerdict::no("target kernel is trivial while the domain kernel is not")
        } else {
            TriVerdict::unknown("target kernel is trivial, domain kernel undecided")
        });
    }
    let r = SymbolExpr::product(space, &[&he, &ge.inv(), &w])?;
    let mut v = TriVerdict::from_class(in_conj_smirnov(&r), "h/g*w in the conjugate Smirnov class").with_witness(r);
    v.assumed_nontrivial = !(kg.is_yes() && kh.is_yes());
    Ok(v)
}

/// Nontriviality of the multiplier space between `ker T_g` and `ker T_h` on
/// the half-plane, equivalent to `ker T_{h/g} ≠ {0}` when `g, g⁻¹, h` are
/// bounded and `(h/g)·b_i ∈ conj(N⁺)`.
pub fn multiplier_space_nontrivial(g: &SymbolExpr, h: &SymbolExpr) -> Result<TriVerdict, KernelError> {
    let space = same_space(g, h)?;
    if space != Space::HalfPlane {
        return Err(SymbolError::WrongSpace("the multiplier-space test", space).into());
    }
    for (name, e) in [("g", g.normalize()), ("1/g", g.inv().normalize()), ("h", h.normalize())] {
        if is_bounded(&e) == ClassVerdict::NotMember {
            return Err(KernelError::HypothesisFailed(format!("{name} = {e} is unbounded")));
        }
    }
    let ratio = h.div(g)?.normalize();
    let bi = SymbolExpr::atom(space, Atom::BlaschkeAtI)?;
    let hyp = ratio.mul(&bi)?.normalize();
    match in_conj_smirnov(&hyp) {
        ClassVerdict::Member => {}
        ClassVerdict::NotMember => {
            return Err(KernelError::HypothesisFailed(format!("(h/g)*b_i = {hyp} is not in the conjugate Smirnov class")))
        }
        ClassVerdict::Unknown => {
            return Err(KernelError::HypothesisFailed(format!("membership of (h/g)*b_i = {hyp} is undetermined")))
        }
    }
    let mut v = kernel_nontrivial(&ratio);
    v.rule = format!("ker T[h/g]: {}", v.rule);
    v.assumed_nontrivial = !(kernel_nontrivial(g).is_yes() && kernel_nontrivial(h).is_yes());
    Ok(v)
}

/// True when `a/b` is an outer unit with bounded inverse, so both symbols
/// define the same kernel.
pub fn same_kernel_up_to_units(a: &SymbolExpr, b: &SymbolExpr) -> Result<bool, KernelError> {
    same_space(a, b)?;
    let r = a.div(b)?.normalize();
    Ok(r.inner_factors().next().is_none() && outer_part_is_bounded_unit(&r) == ClassVerdict::Member)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Tri;
    use crate::symbol::{NamedSource, OuterSource};

    fn z() -> SymbolExpr {
        SymbolExpr::atom(Space::Disk, Atom::Coordinate).unwrap()
    }

    fn hp(a: Atom) -> SymbolExpr {
        SymbolExpr::atom(Space::HalfPlane, a).unwrap()
    }

    fn cz(n: i64) -> SymbolExpr {
        z().pow(n).conjugate()
    }

    #[test]
    fn inclusion_of_monomial_model_spaces() {
        assert_eq!(kernel_inclusion(&cz(2), &cz(1), Space::Disk).unwrap().value, Tri::No);
        assert_eq!(kernel_inclusion(&cz(1), &cz(2), Space::Disk).unwrap().value, Tri::Yes);
        assert_eq!(kernel_inclusion(&cz(3), &cz(3), Space::Disk).unwrap().value, Tri::Yes);
    }

    #[test]
    fn multipliers_between_monomial_model_spaces() {
        let g = KernelRef::classical(cz(2)).unwrap();
        let h = KernelRef::classical(cz(3)).unwrap();
        assert_eq!(multiplier_check(&SymbolExpr::one(Space::Disk), &g, &h).unwrap().value, Tri::Yes);
        assert_eq!(multiplier_check(&z().pow(2), &g, &h).unwrap().value, Tri::No);
        assert_eq!(multiplier_check(&z(), &g, &h).unwrap().value, Tri::Yes);
    }

    #[test]
    fn half_plane_multiplier() {
        let g = KernelRef::classical(hp(Atom::SingularExp(1.0)).conjugate()).unwrap();
        let v = multiplier_check(&hp(Atom::BlaschkeAtI), &g, &g).unwrap();
        assert_eq!(v.value, Tri::No);
    }

    #[test]
    fn example_one() {
        let o = hp(Atom::Outer(OuterSource::Named(NamedSource::ExpCauchy)));
        let g = hp(Atom::BlaschkeAtI).mul(&o.conjugate()).unwrap();
        let h = hp(Atom::SingularExp(1.0)).conjugate();
        assert_eq!(multiplier_space_nontrivial(&g, &h).unwrap().value, Tri::Yes);
        assert!(matches!(multiplier_space_nontrivial(&h, &h), Err(KernelError::HypothesisFailed(_))));
    }

    #[test]
    fn outer_units() {
        let o = hp(Atom::Outer(OuterSource::Named(NamedSource::ExpCauchy)));
        let g = hp(Atom::SingularExp(1.0)).conjugate();
        assert!(same_kernel_up_to_units(&g.mul(&o).unwrap(), &g).unwrap());
        assert!(!same_kernel_up_to_units(&g.mul(&hp(Atom::BlaschkeAtI)).unwrap(), &g).unwrap());
    }
}
