use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;

use super::atom::{Atom, AtomClass, PointMass};
use super::{Space, SymbolError};

/// Tolerance for folding unimodular constants and singular parameters.
pub const ANGLE_TOL: f64 = 1e-12;

/// One factor `atom^exponent`, conjugated when `conjugated` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub atom: Atom,
    pub exponent: i64,
    pub conjugated: bool,
}

/// A formal product `e^{i·constant} · Π atom^exponent`.
#[derive(Debug, Clone)]
pub struct SymbolExpr {
    space: Space,
    constant: f64,
    factors: Vec<Factor>,
}

fn fold_angle(phi: f64) -> f64 {
    let t = phi.rem_euclid(TAU);
    if t < ANGLE_TOL || TAU - t < ANGLE_TOL {
        0.0
    } else {
        t
    }
}

impl SymbolExpr {
    /// The constant function 1.
    pub fn one(space: Space) -> Self {
        SymbolExpr { space, constant: 0.0, factors: Vec::new() }
    }

    /// The unimodular constant `e^{iφ}`.
    pub fn constant(space: Space, phi: f64) -> Self {
        SymbolExpr { space, constant: fold_angle(phi), factors: Vec::new() }
    }

    /// A single validated atom.
    pub fn atom(space: Space, atom: Atom) -> Result<Self, SymbolError> {
        atom.validate(space)?;
        Ok(SymbolExpr { space, constant: 0.0, factors: vec![Factor { atom, exponent: 1, conjugated: false }] })
    }

    /// Builds an expression from raw factors, validating every atom.
    pub fn from_factors(space: Space, constant: f64, factors: Vec<Factor>) -> Result<Self, SymbolError> {
        for f in &factors {
            f.atom.validate(space)?;
            if f.exponent == 0 {
                return Err(SymbolError::InvalidAtom("zero exponent".into()));
            }
        }
        Ok(SymbolExpr { space, constant: fold_angle(constant), factors })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// The constant's angle in `[0, 2π)`.
    pub fn constant_angle(&self) -> f64 {
        self.constant
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Unnormalized product.
    pub fn mul(&self, other: &SymbolExpr) -> Result<SymbolExpr, SymbolError> {
        if self.space != other.space {
            return Err(SymbolError::MixedSpace(self.space, other.space));
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(SymbolExpr { space: self.space, constant: fold_angle(self.constant + other.constant), factors })
    }

    /// Unnormalized reciprocal.
    pub fn inv(&self) -> SymbolExpr {
        SymbolExpr {
            space: self.space,
            constant: fold_angle(-self.constant),
            factors: self.factors.iter().map(|f| Factor { exponent: -f.exponent, ..f.clone() }).collect(),
        }
    }

    pub fn div(&self, other: &SymbolExpr) -> Result<SymbolExpr, SymbolError> {
        self.mul(&other.inv())
    }

    /// Unnormalized integer power.
    pub fn pow(&self, n: i64) -> SymbolExpr {
        if n == 0 {
            return SymbolExpr::one(self.space);
        }
        SymbolExpr {
            space: self.space,
            constant: fold_angle(self.constant * n as f64),
            factors: self.factors.iter().map(|f| Factor { exponent: f.exponent * n, ..f.clone() }).collect(),
        }
    }

    /// Product of several expressions, normalized.
    pub fn product(space: Space, parts: &[&SymbolExpr]) -> Result<SymbolExpr, SymbolError> {
        let mut acc = SymbolExpr::one(space);
        for p in parts {
            acc = acc.mul(p)?;
        }
        Ok(acc.normalize())
    }

    /// Canonical form: inner conjugations become exponent negations, like
    /// factors merge, singular parameters and point masses combine, zero
    /// exponents and trivial outers disappear, and constants fold into the
    /// constant angle. Idempotent.
    pub fn normalize(&self) -> SymbolExpr {
        let mut constant = self.constant;
        let mut singular_exp = 0.0;
        let mut masses: BTreeMap<u64, f64> = BTreeMap::new();
        let mut grouped: BTreeMap<(Atom, bool), i64> = BTreeMap::new();

        for f in &self.factors {
            let sign = if f.conjugated { -1.0 } else { 1.0 };
            match (&f.atom, f.atom.class()) {
                (Atom::Unimodular(phi), _) => constant += sign * phi * f.exponent as f64,
                (Atom::Outer(src), _) if src.is_unit() => {}
                (Atom::SingularExp(a), _) => singular_exp += sign * a * f.exponent as f64,
                (Atom::SingularDisk(ms), _) => {
                    for m in ms {
                        let key = m.angle.rem_euclid(TAU).to_bits();
                        *masses.entry(key).or_insert(0.0) += sign * m.weight * f.exponent as f64;
                    }
                }
                (atom, AtomClass::Inner) => {
                    let e = if f.conjugated { -f.exponent } else { f.exponent };
                    *grouped.entry((atom.clone(), false)).or_insert(0) += e;
                }
                (atom, _) => {
                    *grouped.entry((atom.clone(), f.conjugated)).or_insert(0) += f.exponent;
                }
            }
        }

        if singular_exp.abs() > ANGLE_TOL {
            let e = if singular_exp > 0.0 { 1 } else { -1 };
            grouped.insert((Atom::SingularExp(singular_exp.abs()), false), e);
        }
        let (pos, neg): (Vec<PointMass>, Vec<PointMass>) = {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for (bits, w) in masses {
                let angle = f64::from_bits(bits);
                if w > ANGLE_TOL {
                    pos.push(PointMass { angle, weight: w });
                } else if w < -ANGLE_TOL {
                    neg.push(PointMass { angle, weight: -w });
                }
            }
            (pos, neg)
        };
        if !pos.is_empty() {
            grouped.insert((Atom::SingularDisk(pos), false), 1);
        }
        if !neg.is_empty() {
            grouped.insert((Atom::SingularDisk(neg), false), -1);
        }

        let factors = grouped
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|((atom, conjugated), exponent)| Factor { atom, exponent, conjugated })
            .collect();
        SymbolExpr { space: self.space, constant: fold_angle(constant), factors }
    }

    /// Factorwise conjugate, normalized. An involution up to normalization.
    pub fn conjugate(&self) -> SymbolExpr {
        SymbolExpr {
            space: self.space,
            constant: fold_angle(-self.constant),
            factors: self.factors.iter().map(|f| Factor { conjugated: !f.conjugated, ..f.clone() }).collect(),
        }
        .normalize()
    }

    /// Factors whose atom is inner.
    pub fn inner_factors(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| f.atom.is_inner())
    }

    /// Factors whose atom is outer.
    pub fn outer_factors(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| f.atom.class() == AtomClass::Outer)
    }

    /// The first MIF atom, if any.
    pub fn mif_atoms(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| matches!(f.atom, Atom::Mif(_)))
    }
}

impl PartialEq for SymbolExpr {
    fn eq(&self, other: &Self) -> bool {
        let d = (self.constant - other.constant).rem_euclid(TAU);
        self.space == other.space && (d < ANGLE_TOL || TAU - d < ANGLE_TOL) && self.factors == other.factors
    }
}

impl fmt::Display for SymbolExpr {
    /// Canonical DSL spelling: the constant (when nontrivial) followed by the
    /// factors in stored order, `atom^e` for exponents other than 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.constant != 0.0 {
            if (self.constant - PI).abs() < ANGLE_TOL {
                parts.push("(-1)".to_string());
            } else {
                parts.push(format!("exp(i*{})", self.constant));
            }
        }
        for fac in &self.factors {
            let base = if fac.conjugated { format!("conj({})", fac.atom) } else { fac.atom.to_string() };
            if fac.exponent == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{}", fac.exponent));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{NamedSource, OuterSource};

    fn z() -> SymbolExpr {
        SymbolExpr::atom(Space::Disk, Atom::Coordinate).unwrap()
    }

    fn s(a: f64) -> SymbolExpr {
        SymbolExpr::atom(Space::HalfPlane, Atom::SingularExp(a)).unwrap()
    }

    fn o() -> SymbolExpr {
        SymbolExpr::atom(Space::HalfPlane, Atom::Outer(OuterSource::Named(NamedSource::ExpCauchy))).unwrap()
    }

    #[test]
    fn coordinate_times_its_conjugate_is_one() {
        let e = z().mul(&z().conjugate()).unwrap().normalize();
        assert_eq!(e, SymbolExpr::one(Space::Disk));
    }

    #[test]
    fn singular_exponents_add() {
        let e = s(2.0).mul(&s(3.0)).unwrap().normalize();
        assert_eq!(e, s(5.0));
        assert_eq!(s(1.0).div(&s(1.0)).unwrap().normalize(), SymbolExpr::one(Space::HalfPlane));
    }

    #[test]
    fn example_one_quotient_keeps_outer_flag() {
        let e = s(1.0).conjugate().div(&o().conjugate()).unwrap().normalize();
        let fs = e.factors();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], Factor { atom: Atom::SingularExp(1.0), exponent: -1, conjugated: false });
        assert_eq!(fs[1], Factor { atom: Atom::Outer(OuterSource::Named(NamedSource::ExpCauchy)), exponent: -1, conjugated: true });
    }

    #[test]
    fn conjugation_rules() {
        let cz = z().conjugate();
        assert_eq!(cz.factors(), &[Factor { atom: Atom::Coordinate, exponent: -1, conjugated: false }]);
        let co = o().conjugate();
        assert!(co.factors()[0].conjugated && co.factors()[0].exponent == 1);
        let e = s(1.0).conjugate().div(&o().conjugate()).unwrap().normalize();
        assert_eq!(e.conjugate(), s(1.0).div(&o()).unwrap().normalize());
    }

    #[test]
    fn mixed_spaces_are_rejected() {
        assert!(matches!(z().mul(&s(1.0)), Err(SymbolError::MixedSpace(..))));
    }

    #[test]
    fn constants_fold() {
        let m1 = SymbolExpr::constant(Space::Disk, PI);
        assert_eq!(m1.mul(&m1).unwrap().normalize(), SymbolExpr::one(Space::Disk));
        assert_eq!(m1.to_string(), "(-1)");
        let u = SymbolExpr::atom(Space::Disk, Atom::Unimodular(0.5)).unwrap().normalize();
        assert!(u.is_constant() && (u.constant_angle() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn point_masses_net_out() {
        let a = SymbolExpr::atom(Space::Disk, Atom::SingularDisk(vec![PointMass { angle: 0.0, weight: 1.0 }, PointMass { angle: 1.0, weight: 2.0 }])).unwrap();
        let b = SymbolExpr::atom(Space::Disk, Atom::SingularDisk(vec![PointMass { angle: 1.0, weight: 3.0 }])).unwrap();
        let e = a.div(&b).unwrap().normalize();
        assert_eq!(e.factors().len(), 2);
        assert_eq!(e.factors()[0].exponent + e.factors()[1].exponent, 0);
        assert_eq!(e.normalize(), e);
    }

    #[test]
    fn printing() {
        assert_eq!(z().conjugate().pow(2).normalize().to_string(), "z^-2");
        let g = SymbolExpr::atom(Space::HalfPlane, Atom::BlaschkeAtI).unwrap().mul(&o().conjugate()).unwrap().normalize();
        assert_eq!(g.to_string(), "b_i*conj(O{exp-cauchy})");
        assert_eq!(SymbolExpr::one(Space::Disk).to_string(), "1");
    }
}
