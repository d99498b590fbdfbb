//! Coefficient rings for leading terms: the rationals, cyclotomic
//! extensions `Q[y]/(Phi_d)`, and dynamic quotients `Q[y]/(m)` for an
//! arbitrary squarefree monic `m`.
//!
//! Dynamic rings follow the dynamic-evaluation discipline: arithmetic is
//! total, but any invertibility decision that meets a zero divisor fails
//! with [`Error::DynamicSplit`] carrying the two coprime factors of the
//! modulus, and the caller retries in each branch.

use crate::error::{Error, Result};
use crate::intpoly::{cyclotomic, RatPoly};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RingKind {
    /// `Q` itself, modeled as `Q[y]/(y)`.
    Rational,
    /// `Q(zeta_d)` with modulus the `d`-th cyclotomic polynomial.
    Cyclotomic(u64),
    /// `Q[y]/(m)` for a squarefree monic `m`; not necessarily a field.
    Dynamic,
}

#[derive(Clone, Debug)]
pub struct CoeffRing {
    kind: RingKind,
    modulus: RatPoly,
}

pub type RingRef = Arc<CoeffRing>;

impl PartialEq for CoeffRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.modulus == other.modulus
    }
}
impl Eq for CoeffRing {}

impl CoeffRing {
    pub fn rationals() -> RingRef {
        Arc::new(CoeffRing {
            kind: RingKind::Rational,
            modulus: RatPoly::y(),
        })
    }

    pub fn cyclotomic(d: u64) -> RingRef {
        let modulus = cyclotomic(d).to_rat().monic();
        Arc::new(CoeffRing {
            kind: RingKind::Cyclotomic(d),
            modulus,
        })
    }

    /// Dynamic quotient by a squarefree nonconstant modulus (monicized here).
    pub fn dynamic(modulus: RatPoly) -> Result<RingRef> {
        let m = modulus.monic();
        if m.degree().unwrap_or(0) == 0 {
            return Err(Error::invalid("dynamic modulus must be nonconstant"));
        }
        if !m.is_squarefree() {
            return Err(Error::invalid("dynamic modulus must be squarefree"));
        }
        Ok(Arc::new(CoeffRing {
            kind: RingKind::Dynamic,
            modulus: m,
        }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    /// Degree of the extension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn cyclotomic_order(&self) -> Option<u64> {
        match self.kind {
            RingKind::Cyclotomic(d) => Some(d),
            _ => None,
        }
    }
}

pub fn ring_zero(ring: &RingRef) -> RingElem {
    RingElem {
        ring: ring.clone(),
        rep: RatPoly::zero(),
    }
}

pub fn ring_one(ring: &RingRef) -> RingElem {
    ring_from_rational(ring, BigRational::one())
}

pub fn ring_from_rational(ring: &RingRef, q: BigRational) -> RingElem {
    RingElem::new(ring.clone(), RatPoly::constant(q))
}

pub fn ring_from_i64(ring: &RingRef, n: i64) -> RingElem {
    ring_from_rational(ring, BigRational::from_integer(BigInt::from(n)))
}

/// The class of `y`: a primitive `d`-th root of unity in a cyclotomic
/// ring, an abstract root of the modulus in a dynamic ring, `0` over `Q`.
pub fn ring_generator(ring: &RingRef) -> RingElem {
    RingElem::new(ring.clone(), RatPoly::y())
}

/// Residue-ring element, stored fully reduced modulo the ring modulus.
#[derive(Clone, Debug)]
pub struct RingElem {
    ring: RingRef,
    rep: RatPoly,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.rep == other.rep
    }
}
impl Eq for RingElem {}

impl RingElem {
    pub fn new(ring: RingRef, rep: RatPoly) -> Self {
        let rep = rep.rem(ring.modulus());
        RingElem { ring, rep }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    /// Zero as a ring element (identically zero in every branch).
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.degree() == Some(0) && self.rep.coeff(0).is_one()
    }

    fn same_ring(&self, other: &RingElem) {
        assert!(
            *self.ring == *other.ring,
            "mixed coefficient rings: {:?} vs {:?}",
            self.ring.modulus(),
            other.ring.modulus()
        );
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.same_ring(other);
        RingElem {
            ring: self.ring.clone(),
            rep: self.rep.add(&other.rep),
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.same_ring(other);
        RingElem {
            ring: self.ring.clone(),
            rep: self.rep.sub(&other.rep),
        }
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            rep: self.rep.neg(),
        }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.same_ring(other);
        RingElem {
            ring: self.ring.clone(),
            rep: self.rep.mul(&other.rep).rem(self.ring.modulus()),
        }
    }

    pub fn scale(&self, q: &BigRational) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            rep: self.rep.scale(q),
        }
    }

    pub fn pow(&self, mut e: u64) -> RingElem {
        let mut base = self.clone();
        let mut acc = ring_one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Decide invertibility: `Ok(true)` invertible, `Ok(false)` zero,
    /// `Err(DynamicSplit)` when the element is a zero divisor.
    pub fn decide_invertible(&self) -> Result<bool> {
        if self.rep.is_zero() {
            return Ok(false);
        }
        let m = self.ring.modulus();
        let g = self.rep.gcd(m);
        if g.degree() == Some(0) {
            return Ok(true);
        }
        if g == m.monic() {
            // rep is reduced, so this cannot happen for nonzero rep
            return Ok(false);
        }
        let other = m.div_rem(&g).0;
        Err(Error::DynamicSplit {
            left: g,
            right: other.monic(),
        })
    }

    pub fn inverse(&self) -> Result<RingElem> {
        match self.decide_invertible()? {
            false => Err(Error::invalid("inverse of zero")),
            true => {
                let (g, u, _) = self.rep.extended_gcd(self.ring.modulus());
                debug_assert_eq!(g.degree(), Some(0));
                let inv_g = BigRational::one() / g.coeff(0);
                Ok(RingElem::new(self.ring.clone(), u.scale(&inv_g)))
            }
        }
    }

    /// Reduce into a ring with a modulus dividing this ring's modulus.
    pub fn project(&self, target: &RingRef) -> RingElem {
        RingElem::new(target.clone(), self.rep.clone())
    }

    /// The rational value, if the element is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.rep.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Rational => write!(f, "Q"),
            RingKind::Cyclotomic(d) => write!(f, "Q(zeta_{})", d),
            RingKind::Dynamic => write!(f, "Q[y]/({})", crate::textio::format_ratpoly(&self.modulus)),
        }
    }
}

/// Polynomial with `RingElem` coefficients (used for residual polynomials).
#[derive(Clone, Debug, PartialEq)]
pub struct RingPoly {
    ring: RingRef,
    coeffs: Vec<RingElem>,
}

impl RingPoly {
    pub fn from_coeffs(ring: RingRef, mut coeffs: Vec<RingElem>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RingPoly { ring, coeffs }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RingElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| ring_zero(&self.ring))
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &RingElem) -> RingElem {
        let mut acc = ring_zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> RingPoly {
        if self.coeffs.len() <= 1 {
            return RingPoly::from_coeffs(self.ring.clone(), vec![]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
            .collect();
        RingPoly::from_coeffs(self.ring.clone(), coeffs)
    }

    /// Multiplicity of `x` as a root, decided by successive derivatives.
    pub fn root_multiplicity(&self, x: &RingElem) -> Result<u32> {
        let mut p = self.clone();
        let mut k = 0u32;
        let deg = self.degree().unwrap_or(0) as u32;
        while k <= deg {
            if p.eval(x).decide_invertible()? {
                return Ok(k);
            }
            k += 1;
            p = p.derivative();
        }
        Ok(k)
    }

    /// Order of the lowest nonzero coefficient (`None` for zero).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::IntPoly;

    fn to_rp(coeffs: &[i64]) -> RatPoly {
        IntPoly::from_i64(coeffs).to_rat()
    }

    #[test]
    fn cyclotomic_generator_orders() {
        for d in [1u64, 2, 3, 4, 5, 6, 8, 12] {
            let ring = CoeffRing::cyclotomic(d);
            let beta = ring_generator(&ring);
            assert!(beta.pow(d).is_one(), "beta^{} = 1 in order {}", d, d);
            for e in 1..d {
                assert!(!beta.pow(e).is_one(), "beta^{} != 1 in order {}", e, d);
            }
        }
    }

    #[test]
    fn rational_ring_is_plain_arithmetic() {
        let q = CoeffRing::rationals();
        let a = ring_from_i64(&q, 3);
        let b = ring_from_i64(&q, -7);
        assert_eq!(a.mul(&b).as_rational().unwrap(), num::BigRational::from_integer((-21).into()));
        assert!(a.decide_invertible().unwrap());
        assert!(!ring_zero(&q).decide_invertible().unwrap());
    }

    #[test]
    fn dynamic_split_on_zero_divisor() {
        // modulus (y-1)(y-2): y-1 is a zero divisor
        let m = to_rp(&[2, -3, 1]);
        let ring = CoeffRing::dynamic(m).unwrap();
        let y = ring_generator(&ring);
        let zd = y.sub(&ring_one(&ring));
        match zd.decide_invertible() {
            Err(Error::DynamicSplit { left, right }) => {
                let mut degs = [left.degree().unwrap(), right.degree().unwrap()];
                degs.sort();
                assert_eq!(degs, [1, 1]);
                // decisions become definite in the branches
                let b1 = CoeffRing::dynamic(left).unwrap();
                let b2 = CoeffRing::dynamic(right).unwrap();
                let p1 = zd.project(&b1);
                let p2 = zd.project(&b2);
                let mut outcomes = [
                    p1.decide_invertible().unwrap(),
                    p2.decide_invertible().unwrap(),
                ];
                outcomes.sort();
                assert_eq!(outcomes, [false, true]);
            }
            other => panic!("expected a split, got {:?}", other),
        }
    }

    #[test]
    fn quadratic_ring_inverse() {
        // y^2 + 4y + 1, roots -2 +- sqrt(3)
        let ring = CoeffRing::dynamic(to_rp(&[1, 4, 1])).unwrap();
        let y = ring_generator(&ring);
        let inv = y.inverse().unwrap();
        assert!(y.mul(&inv).is_one());
        // y^2 reduces to -4y - 1
        let y2 = y.mul(&y);
        assert_eq!(y2.rep(), &to_rp(&[-1, -4]));
    }

    #[test]
    fn ring_poly_multiplicity() {
        let ring = CoeffRing::rationals();
        // (x-2)^3 (x-5)
        let two = ring_from_i64(&ring, 2);
        let five = ring_from_i64(&ring, 5);
        let other = RingPoly::from_coeffs(ring.clone(), vec![five.neg(), ring_one(&ring)]);
        let mut p = other;
        for _ in 0..3 {
            let mut acc = vec![ring_zero(&ring); p.coeffs().len() + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                acc[i] = acc[i].add(&c.mul(&two.neg()));
                acc[i + 1] = acc[i + 1].add(c);
            }
            p = RingPoly::from_coeffs(ring.clone(), acc);
        }
        assert_eq!(p.root_multiplicity(&two).unwrap(), 3);
        assert_eq!(p.root_multiplicity(&five).unwrap(), 1);
        assert_eq!(p.root_multiplicity(&ring_from_i64(&ring, 7)).unwrap(), 0);
    }
}
