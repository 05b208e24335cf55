//! Syntactic membership decisions. Sound but incomplete: `Unknown` whenever
//! the rules cannot certify an answer.

use std::collections::BTreeMap;

use serde::Serialize;

use super::atom::{Atom, AtomClass};
use super::expr::{Factor, SymbolExpr};
use super::{Space, SymbolError};

const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassVerdict {
    Member,
    NotMember,
    Unknown,
}

/// True when two distinct inner atoms certainly share no zeros and no
/// singular support (so neither divides a power of the other).
pub fn inner_coprime(a: &Atom, b: &Atom) -> bool {
    use Atom::*;
    let has_zero = |zs: &[num_complex::Complex64], p: num_complex::Complex64| zs.iter().any(|z| (z - p).norm() <= ZERO_TOL);
    match (a, b) {
        (Mif(_), _) | (_, Mif(_)) => false,
        (Coordinate, Blaschke(_)) | (Blaschke(_), Coordinate) => true,
        (Coordinate, SingularDisk(_)) | (SingularDisk(_), Coordinate) => true,
        (BlaschkeAtI, Blaschke(z)) | (Blaschke(z), BlaschkeAtI) => !has_zero(&z.zeros, num_complex::Complex64::i()),
        (BlaschkeAtI, SingularExp(_)) | (SingularExp(_), BlaschkeAtI) => true,
        (Blaschke(x), Blaschke(y)) => !x.zeros.iter().any(|p| has_zero(&y.zeros, *p)),
        (Blaschke(_), SingularExp(_) | SingularDisk(_)) | (SingularExp(_) | SingularDisk(_), Blaschke(_)) => true,
        (SingularDisk(x), SingularDisk(y)) => !x.iter().any(|p| y.iter().any(|q| (p.angle - q.angle).abs() <= ZERO_TOL)),
        _ => false,
    }
}

/// Net log-modulus of the outer factors in the named-family basis; `None`
/// when a sampled table is involved.
pub fn outer_families<'a>(factors: impl Iterator<Item = &'a Factor>) -> Option<BTreeMap<&'static str, f64>> {
    let mut net = BTreeMap::new();
    for f in factors {
        let Atom::Outer(src) = &f.atom else { continue };
        match src {
            super::OuterSource::Named(n) => {
                if let Some((fam, c)) = n.family() {
                    *net.entry(fam).or_insert(0.0) += c * f.exponent as f64;
                }
            }
            super::OuterSource::Table(_) => return None,
        }
    }
    net.retain(|_, c: &mut f64| c.abs() > ZERO_TOL);
    Some(net)
}

/// Whether the net log-modulus of one family is bounded above and below.
fn family_bounds(family: &str, coeff: f64) -> (bool, bool) {
    match family {
        "log-power" => (coeff <= 0.0, coeff >= 0.0),
        _ => (true, true),
    }
}

/// Member when the outer factors of `e` multiply to a bounded function with
/// bounded inverse (conjugation does not change the modulus).
pub fn outer_part_is_bounded_unit(e: &SymbolExpr) -> ClassVerdict {
    match outer_families(e.outer_factors()) {
        None => ClassVerdict::Unknown,
        Some(net) => {
            if net.iter().all(|(fam, c)| family_bounds(fam, *c) == (true, true)) {
                ClassVerdict::Member
            } else {
                ClassVerdict::NotMember
            }
        }
    }
}

/// Membership of a normalized symbol in the conjugate Smirnov class
/// (`conj(N)` on the disk, `conj(N⁺)` on the half-plane; the two rules
/// coincide syntactically).
pub fn in_conj_smirnov(e: &SymbolExpr) -> ClassVerdict {
    let pos: Vec<&Factor> = e.inner_factors().filter(|f| f.exponent > 0).collect();
    let neg: Vec<&Factor> = e.inner_factors().filter(|f| f.exponent < 0).collect();
    let unconj_outer: Vec<&Factor> = e.outer_factors().filter(|f| !f.conjugated).collect();
    let conj_outer = e.outer_factors().any(|f| f.conjugated);

    if pos.is_empty() && unconj_outer.is_empty() {
        // conj(e) = (inner) · (outer ratio) ∈ N⁺
        return ClassVerdict::Member;
    }
    if unconj_outer.is_empty() {
        // conj(e) = N·(outer)/P lies in N⁺ iff P divides N
        let obstruction = pos.iter().any(|p| {
            p.atom.is_nonconstant() == Some(true) && neg.iter().all(|n| inner_coprime(&p.atom, &n.atom))
        });
        return if obstruction { ClassVerdict::NotMember } else { ClassVerdict::Unknown };
    }
    // e = P·O with P inner and O outer of smooth nonconstant log-modulus:
    // conj(e) ∈ N⁺ would make conj(O)/O a continuous zero-free inner function.
    if neg.is_empty() && !conj_outer {
        if let Some(net) = outer_families(unconj_outer.iter().copied()) {
            if !net.is_empty() {
                return ClassVerdict::NotMember;
            }
        }
    }
    ClassVerdict::Unknown
}

/// Whether a normalized symbol is essentially bounded on the boundary.
pub fn is_bounded(e: &SymbolExpr) -> ClassVerdict {
    match outer_families(e.outer_factors()) {
        None => ClassVerdict::Unknown,
        Some(net) => {
            if net.iter().all(|(fam, c)| family_bounds(fam, *c).0) {
                ClassVerdict::Member
            } else {
                ClassVerdict::NotMember
            }
        }
    }
}

/// Riesz–Smirnov split of an analytic symbol into `(inner, outer)`; the
/// constant travels with the inner part.
pub fn inner_outer_split(e: &SymbolExpr) -> Result<(SymbolExpr, SymbolExpr), SymbolError> {
    let e = e.normalize();
    let space: Space = e.space();
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for f in e.factors() {
        match f.atom.class() {
            AtomClass::Inner if f.exponent < 0 => {
                return Err(SymbolError::NotAnalytic(format!("inner factor {} has negative exponent", f.atom)));
            }
            AtomClass::Outer if f.conjugated => {
                return Err(SymbolError::NotAnalytic(format!("outer factor {} is conjugated", f.atom)));
            }
            AtomClass::Inner => inner.push(f.clone()),
            _ => outer.push(f.clone()),
        }
    }
    Ok((
        SymbolExpr::from_factors(space, e.constant_angle(), inner)?,
        SymbolExpr::from_factors(space, 0.0, outer)?,
    ))
}
