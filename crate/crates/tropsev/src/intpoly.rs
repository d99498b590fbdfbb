//! Dense univariate polynomials over the integers and the rationals,
//! plus the handful of exact operations the rest of the crate is built
//! on: exact division, gcd, squarefree parts and cyclotomic polynomials.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// Polynomial in `Z[x]`, coefficients stored by ascending exponent with a
/// nonzero top coefficient (the zero polynomial stores nothing).
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c * x^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    /// `x^e - 1`.
    pub fn x_pow_minus_one(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[e] = BigInt::one();
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Exponent of the lowest nonzero term.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^s`.
    pub fn shift_up(&self, s: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Substitute `x -> x^s`.
    pub fn substitute_power(&self, s: usize) -> IntPoly {
        assert!(s >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * s + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * s] = c.clone();
        }
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
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

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact division; `None` when `other` does not divide `self` in `Z[x]`.
    pub fn divide_exact(&self, other: &IntPoly) -> Option<IntPoly> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.to_rat().div_rem(&other.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }

    /// Positive gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num::Integer::gcd(&g, c);
        }
        g
    }

    /// `self` divided by its content, sign-normalized to a positive
    /// leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let g = self.to_rat().gcd(&other.to_rat());
        RatPoly::to_int_primitive(&g)
    }

    /// `self / gcd(self, self')`: same roots, all simple, primitive.
    pub fn squarefree_part(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Err(Error::invalid("squarefree part of the zero polynomial"));
        }
        let g = self.gcd(&self.derivative());
        let q = self
            .divide_exact(&g)
            .or_else(|| {
                // The integer gcd divides self only up to content.
                let qr = self.to_rat().div_rem(&g.to_rat());
                if qr.1.is_zero() {
                    Some(RatPoly::to_int_primitive(&qr.0))
                } else {
                    None
                }
            })
            .expect("gcd divides the polynomial");
        Ok(q.primitive_part())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    /// Compact descending form, e.g. `x^5-4x^4+6x^3-4x^2+x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if mag != BigInt::one() || e == 0 {
                write!(f, "{}", mag)?;
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", e)?,
            }
        }
        Ok(())
    }
}

/// The `d`-th cyclotomic polynomial, computed by exact division of
/// `x^d - 1` by the cyclotomic polynomials of the proper divisors of `d`.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic order must be positive");
    let d = d as usize;
    let mut memo: Vec<Option<IntPoly>> = vec![None; d + 1];
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        let mut phi = IntPoly::x_pow_minus_one(e);
        for f in 1..e {
            if e % f == 0 {
                let divisor = memo[f].as_ref().expect("divisors computed in order");
                phi = phi
                    .divide_exact(divisor)
                    .expect("cyclotomic factors divide x^e - 1 exactly");
            }
        }
        memo[e] = Some(phi);
    }
    memo[d].take().unwrap()
}

/// Polynomial in `Q[y]`, ascending coefficients, trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn y() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        RatPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] / &lead;
            if q.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                let delta = c * &q;
                rem[idx] -= delta;
            }
            quot[k - dd] = q;
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => {
                let inv = BigRational::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = RatPoly::one();
        let mut s1 = RatPoly::zero();
        let mut t0 = RatPoly::zero();
        let mut t1 = RatPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (RatPoly::zero(), RatPoly::zero(), RatPoly::zero()),
            Some(l) => {
                let inv = BigRational::one() / l;
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == Some(0) || self.degree() == Some(0)
    }

    /// `None` unless every coefficient is an integer.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            coeffs.push(c.to_integer());
        }
        Some(IntPoly::from_coeffs(coeffs))
    }

    /// Clear denominators and strip content, normalizing the sign.
    pub fn to_int_primitive(p: &RatPoly) -> IntPoly {
        if p.is_zero() {
            return IntPoly::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &p.coeffs {
            denom_lcm = num::Integer::lcm(&denom_lcm, c.denom());
        }
        let ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        IntPoly::from_coeffs(ints).primitive_part()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Moebius-formula route, used as an independent oracle for `cyclotomic`.
    fn cyclotomic_moebius(d: u64) -> IntPoly {
        fn moebius(mut n: u64) -> i64 {
            let mut m = 1i64;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    m = -m;
                }
                p += 1;
            }
            if n > 1 {
                m = -m;
            }
            m
        }
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for e in 1..=d {
            if d % e != 0 {
                continue;
            }
            match moebius(d / e) {
                1 => num = num.mul(&IntPoly::x_pow_minus_one(e as usize)),
                -1 => den = den.mul(&IntPoly::x_pow_minus_one(e as usize)),
                _ => {}
            }
        }
        num.divide_exact(&den).expect("exact cyclotomic quotient")
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        // Frozen from the Moebius-formula oracle: x^2 - x + 1.
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(6), cyclotomic_moebius(6));
    }

    #[test]
    fn cyclotomic_product_recovers_x_pow_minus_one() {
        for d in 1..=50u64 {
            let mut prod = IntPoly::one();
            for e in 1..=d {
                if d % e == 0 {
                    prod = prod.mul(&cyclotomic(e));
                }
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(d as usize), "d = {}", d);
            assert_eq!(cyclotomic(d), cyclotomic_moebius(d), "d = {}", d);
        }
    }

    #[test]
    fn squarefree_part_examples() {
        // x(x-1)^4 -> x(x-1)
        let p = IntPoly::x().mul(&IntPoly::from_i64(&[-1, 1]).pow(4));
        assert_eq!(
            p.squarefree_part().unwrap(),
            IntPoly::x().mul(&IntPoly::from_i64(&[-1, 1]))
        );
        // already squarefree
        let q = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(q.squarefree_part().unwrap(), q);
        // phi_2^2 * phi_3 -> phi_2 * phi_3, checked by exact division
        let prod = cyclotomic(2).pow(2).mul(&cyclotomic(3));
        let sf = prod.squarefree_part().unwrap();
        assert_eq!(sf, cyclotomic(2).mul(&cyclotomic(3)));
        assert!(prod.divide_exact(&sf).is_some());
        assert!(IntPoly::zero().squarefree_part().is_err());
    }

    #[test]
    fn squarefree_part_random_products() {
        let mut rng = StdRng::seed_from_u64(42);
        let irreducibles = [
            IntPoly::from_i64(&[-1, 1]),
            IntPoly::from_i64(&[1, 1]),
            IntPoly::from_i64(&[0, 1]),
            IntPoly::from_i64(&[1, 1, 1]),
            IntPoly::from_i64(&[2, 0, 1]),
            IntPoly::from_i64(&[-2, 0, 1]),
        ];
        for _ in 0..60 {
            let mut p = IntPoly::one();
            let mut chosen = vec![];
            for q in irreducibles.iter() {
                let e = rng.gen_range(0..3u32);
                if e > 0 {
                    p = p.mul(&q.pow(e));
                    chosen.push(q.clone());
                }
            }
            if p.degree() == Some(0) {
                continue;
            }
            let sf = p.squarefree_part().unwrap();
            // divides exactly, and is squarefree
            assert!(p.divide_exact(&sf).is_some());
            assert_eq!(sf.gcd(&sf.derivative()).degree(), Some(0));
            // same root set: every chosen irreducible divides sf exactly once
            for q in chosen {
                let once = sf.divide_exact(&q);
                assert!(once.is_some());
                assert!(once.unwrap().divide_exact(&q).is_none());
            }
        }
    }

    #[test]
    fn rat_poly_div_rem_and_gcd() {
        let a = RatPoly::from_coeffs(
            [6, -5, 1].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        ); // (y-2)(y-3)
        let b = RatPoly::from_coeffs(
            [-2, 1].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        );
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q.coeff(0), BigRational::from_integer(BigInt::from(-3)));
        let g = a.gcd(&b);
        assert_eq!(g, b.monic());
        let (g2, u, v) = a.extended_gcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g2);
    }

    #[test]
    fn display_compact() {
        let p = IntPoly::x().mul(&IntPoly::from_i64(&[-1, 1]).pow(4));
        assert_eq!(p.to_string(), "x^5-4x^4+6x^3-4x^2+x");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_i64(&[-3]).to_string(), "-3");
    }
}
