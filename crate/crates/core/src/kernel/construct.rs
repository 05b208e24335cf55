use super::{KernelError, KernelRef, SpaceDescriptor, TriVerdict};
use crate::symbol::{in_conj_smirnov, inner_outer_split, Atom, AtomClass, ClassVerdict, Space, SymbolError, SymbolExpr};

fn check_space(e: &SymbolExpr, space: Space) -> Result<(), KernelError> {
    if e.space() != space {
        return Err(SymbolError::MixedSpace(space, e.space()).into());
    }
    Ok(())
}

fn coordinate(space: Space) -> Result<SymbolExpr, KernelError> {
    Ok(SymbolExpr::atom(space, Atom::Coordinate)?)
}

/// Symbol of the smallest generalized kernel containing the analytic `k`:
/// `Θ₂·conj(θzp)/p` on the disk, `q·conj(θp)/p` on the half-plane, where
/// `k = θp`.
pub fn minimal_kernel_symbol(k: &SymbolExpr, codomain: &SpaceDescriptor, space: Space) -> Result<SymbolExpr, KernelError> {
    check_space(k, space)?;
    let theta2 = codomain.codomain_inner(space)?;
    let (theta, p) = inner_outer_split(k)?;
    let mut inside = theta.mul(&p)?;
    if space == Space::Disk {
        inside = inside.mul(&coordinate(space)?)?;
    }
    Ok(SymbolExpr::product(space, &[&theta2, &inside.conjugate(), &p.inv()])?)
}

/// The maximal vector `g⁻¹Θ₂·conj(pz)` (disk) or `g⁻¹q·conj(p)` (half-plane)
/// of `ker T_g^{H²,E₂}` attached to the outer `p`.
pub fn maximal_vector(
    g: &SymbolExpr,
    codomain: &SpaceDescriptor,
    p: &SymbolExpr,
    space: Space,
) -> Result<SymbolExpr, KernelError> {
    check_space(g, space)?;
    check_space(p, space)?;
    let theta2 = codomain.codomain_inner(space)?;
    let p = p.normalize();
    if p.factors().iter().any(|f| f.atom.class() != AtomClass::Outer || f.conjugated) {
        return Err(KernelError::NotOuter(p.to_string()));
    }
    let mut tail = p.clone();
    if space == Space::Disk {
        tail = tail.mul(&coordinate(space)?)?;
    }
    Ok(SymbolExpr::product(space, &[&g.inv(), &theta2, &tail.conjugate()])?)
}

/// Whether the analytic `k` is a maximal vector of `kernel`, i.e.
/// `k·g·conj(Θ₂) = conj(zp)` (disk) or `conj(p)` (half-plane) with `p` outer
/// and no inner residue.
pub fn is_maximal_vector(k: &SymbolExpr, kernel: &KernelRef) -> Result<TriVerdict, KernelError> {
    let space = kernel.space();
    check_space(k, space)?;
    inner_outer_split(k)?;
    if kernel.domain != SpaceDescriptor::FullHardy {
        return Ok(TriVerdict::unknown("only E1 = H2 is decided"));
    }
    let mut parts = vec![k.clone(), kernel.effective_symbol()?];
    if space == Space::Disk {
        parts.push(coordinate(space)?);
    }
    let refs: Vec<&SymbolExpr> = parts.iter().collect();
    let residue = SymbolExpr::product(space, &refs)?;

    let v = match in_conj_smirnov(&residue) {
        ClassVerdict::Unknown => TriVerdict::unknown("membership of the residue is undetermined"),
        ClassVerdict::NotMember => TriVerdict::no("k does not lie in the kernel"),
        ClassVerdict::Member => {
            let inner: Vec<_> = residue.inner_factors().collect();
            if inner.is_empty() {
                TriVerdict::yes("residue is the conjugate of an outer function")
            } else if inner.iter().any(|f| f.atom.is_nonconstant() == Some(true)) {
                TriVerdict::no("a conjugated inner factor remains, so k lies in a strictly smaller kernel")
            } else {
                TriVerdict::unknown("residual inner factor may be constant")
            }
        }
    };
    Ok(v.with_witness(residue))
}
