//! Truncated Puiseux series: finite sums of `c * t^e` with exact rational
//! exponents and coefficients in a [`CoeffRing`], known either exactly or
//! modulo `t^T`.
//!
//! Addition and multiplication are total. The operations that certify
//! something about a series (valuation queries, inversion) can fail with
//! `Truncated` when the series is zero up to its truncation order, or with
//! `DynamicSplit` when the leading coefficient is a zero divisor of a
//! dynamic ring. Callers never guess: an uncertified valuation is an error.

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::ring::{ring_from_rational, ring_one, RingElem, RingRef};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use std::collections::BTreeMap;

/// Truncation state: `Exact` means every term is stored (the series is a
/// finite sum), `Order(T)` means the series is only known modulo `t^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trunc {
    Exact,
    Order(BigRational),
}

impl Trunc {
    pub fn min(&self, other: &Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Exact, t) => t.clone(),
            (t, Trunc::Exact) => t.clone(),
            (Trunc::Order(a), Trunc::Order(b)) => Trunc::Order(a.min(b).clone()),
        }
    }

    pub fn shift(&self, delta: &BigRational) -> Trunc {
        match self {
            Trunc::Exact => Trunc::Exact,
            Trunc::Order(t) => Trunc::Order(t + delta),
        }
    }

    fn admits(&self, e: &BigRational) -> bool {
        match self {
            Trunc::Exact => true,
            Trunc::Order(t) => e < t,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxTrunc {
    ring: RingRef,
    /// Strictly increasing exponents, coefficients nonzero in the ring.
    terms: Vec<(BigRational, RingElem)>,
    trunc: Trunc,
}

impl PuiseuxTrunc {
    pub fn zero(ring: &RingRef) -> Self {
        PuiseuxTrunc {
            ring: ring.clone(),
            terms: vec![],
            trunc: Trunc::Exact,
        }
    }

    pub fn zero_mod(ring: &RingRef, order: BigRational) -> Self {
        PuiseuxTrunc {
            ring: ring.clone(),
            terms: vec![],
            trunc: Trunc::Order(order),
        }
    }

    pub fn from_terms(
        ring: &RingRef,
        terms: Vec<(BigRational, RingElem)>,
        trunc: Trunc,
    ) -> Self {
        let mut map: BTreeMap<BigRational, RingElem> = BTreeMap::new();
        for (e, c) in terms {
            assert!(**c.ring() == **ring, "term coefficient from a foreign ring");
            if !trunc.admits(&e) {
                continue;
            }
            match map.remove(&e) {
                None => {
                    map.insert(e, c);
                }
                Some(prev) => {
                    map.insert(e, prev.add(&c));
                }
            }
        }
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        PuiseuxTrunc {
            ring: ring.clone(),
            terms,
            trunc,
        }
    }

    /// Single-term series `c * t^e`, exact.
    pub fn monomial(ring: &RingRef, c: RingElem, e: BigRational) -> Self {
        Self::from_terms(ring, vec![(e, c)], Trunc::Exact)
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::monomial(ring, ring_one(ring), BigRational::zero())
    }

    /// `t^e`, exact.
    pub fn t_pow(ring: &RingRef, e: BigRational) -> Self {
        Self::monomial(ring, ring_one(ring), e)
    }

    pub fn from_rational(ring: &RingRef, q: BigRational) -> Self {
        Self::monomial(ring, ring_from_rational(ring, q), BigRational::zero())
    }

    pub fn from_i64(ring: &RingRef, n: i64) -> Self {
        Self::from_rational(ring, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn constant(c: RingElem) -> Self {
        let ring = c.ring().clone();
        Self::monomial(&ring, c, BigRational::zero())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(BigRational, RingElem)] {
        &self.terms
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    /// No stored terms and exact: the series is identically zero.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc == Trunc::Exact
    }

    /// No stored terms (zero as far as the truncation shows).
    pub fn is_zero_up_to_trunc(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(BigRational, RingElem)> {
        self.terms.first()
    }

    /// Known lower bound on the valuation: first exponent, or the
    /// truncation order for an empty truncated series; `None` means
    /// "+infinity" (exact zero).
    pub fn val_lower_bound(&self) -> Option<BigRational> {
        match self.terms.first() {
            Some((e, _)) => Some(e.clone()),
            None => match &self.trunc {
                Trunc::Exact => None,
                Trunc::Order(t) => Some(t.clone()),
            },
        }
    }

    /// Certified valuation: requires an invertible leading coefficient.
    /// Zero-up-to-truncation is refused (`Truncated`), exact zero is
    /// refused (`Invalid`), a zero-divisor leading coefficient splits.
    pub fn valuation(&self) -> Result<BigRational> {
        match self.terms.first() {
            Some((e, c)) => {
                if c.decide_invertible()? {
                    Ok(e.clone())
                } else {
                    unreachable!("stored coefficients are nonzero")
                }
            }
            None => match &self.trunc {
                Trunc::Exact => Err(Error::invalid("the zero series has no valuation")),
                Trunc::Order(t) => Err(Error::Truncated(format!(
                    "series is zero modulo t^{}; valuation not certifiable",
                    t
                ))),
            },
        }
    }

    pub fn truncate_to(&self, order: &BigRational) -> PuiseuxTrunc {
        let trunc = self.trunc.min(&Trunc::Order(order.clone()));
        PuiseuxTrunc::from_terms(&self.ring, self.terms.clone(), trunc)
    }

    /// Reinterpret the series as known modulo `t^order`, keeping the
    /// stored terms below it. Only sound when a mathematical argument
    /// certifies the terms below `order`; interval propagation alone
    /// cannot see the quadratic convergence of the Newton inversion.
    fn with_trunc_order(&self, order: &BigRational) -> PuiseuxTrunc {
        PuiseuxTrunc::from_terms(&self.ring, self.terms.clone(), Trunc::Order(order.clone()))
    }

    /// Reduce every coefficient into a quotient of the current ring
    /// (a branch of a dynamic split).
    pub fn project(&self, target: &RingRef) -> PuiseuxTrunc {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.project(target)))
            .collect();
        PuiseuxTrunc::from_terms(target, terms, self.trunc.clone())
    }

    pub fn add(&self, other: &PuiseuxTrunc) -> PuiseuxTrunc {
        assert!(*self.ring == *other.ring, "mixed rings in series addition");
        let trunc = self.trunc.min(&other.trunc);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        PuiseuxTrunc::from_terms(&self.ring, terms, trunc)
    }

    pub fn neg(&self) -> PuiseuxTrunc {
        PuiseuxTrunc {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &PuiseuxTrunc) -> PuiseuxTrunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PuiseuxTrunc) -> PuiseuxTrunc {
        assert!(*self.ring == *other.ring, "mixed rings in series product");
        // exact zero absorbs
        if self.is_exact_zero() || other.is_exact_zero() {
            return PuiseuxTrunc::zero(&self.ring);
        }
        // a known mod t^T1, b known mod t^T2 => ab known mod
        // min(T1 + val(b), T2 + val(a)); empty truncated factors only
        // contribute their truncation bound.
        let trunc = match (&self.trunc, &other.trunc) {
            (Trunc::Exact, Trunc::Exact) => Trunc::Exact,
            _ => {
                let va = self.val_lower_bound();
                let vb = other.val_lower_bound();
                let mut bound: Option<BigRational> = None;
                if let Trunc::Order(t1) = &self.trunc {
                    if let Some(vb) = &vb {
                        let cand = t1 + vb;
                        bound = Some(match bound {
                            None => cand,
                            Some(b) => b.min(cand),
                        });
                    }
                }
                if let Trunc::Order(t2) = &other.trunc {
                    if let Some(va) = &va {
                        let cand = t2 + va;
                        bound = Some(match bound {
                            None => cand,
                            Some(b) => b.min(cand),
                        });
                    }
                }
                match bound {
                    // one factor is exact zero-like; handled above, but be safe
                    None => Trunc::Exact,
                    Some(b) => Trunc::Order(b),
                }
            }
        };
        let mut map: BTreeMap<BigRational, RingElem> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if !trunc.admits(&e) {
                    continue;
                }
                let prod = c1.mul(c2);
                match map.remove(&e) {
                    None => {
                        map.insert(e, prod);
                    }
                    Some(prev) => {
                        map.insert(e, prev.add(&prod));
                    }
                }
            }
        }
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        PuiseuxTrunc {
            ring: self.ring.clone(),
            terms,
            trunc,
        }
    }

    pub fn mul_elem(&self, c: &RingElem) -> PuiseuxTrunc {
        self.mul(&PuiseuxTrunc::constant(c.clone()))
    }

    /// Multiply by `t^delta` (exact exponent shift).
    pub fn mul_t_pow(&self, delta: &BigRational) -> PuiseuxTrunc {
        PuiseuxTrunc {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + delta, c.clone()))
                .collect(),
            trunc: self.trunc.shift(delta),
        }
    }

    pub fn pow(&self, e: u32) -> PuiseuxTrunc {
        let mut acc = PuiseuxTrunc::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse with result truncated at `target` (absolute
    /// order), or earlier when the input truncation forces it. Satisfies
    /// `self * inv = 1 + O(t^min(target, T - 2v) + v)`-ish; the exact
    /// guarantee is carried in the result's truncation field.
    pub fn inv(&self, target: &BigRational) -> Result<PuiseuxTrunc> {
        let (v, lead) = match self.terms.first() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => {
                return Err(match &self.trunc {
                    Trunc::Exact => Error::invalid("inverse of the zero series"),
                    Trunc::Order(t) => Error::Truncated(format!(
                        "cannot invert a series that is zero modulo t^{}",
                        t
                    )),
                })
            }
        };
        let lead_inv = lead.inverse()?;
        // result known at best modulo t^(T - 2v) for input trunc T
        let result_trunc = match &self.trunc {
            Trunc::Exact => target.clone(),
            Trunc::Order(t) => {
                let bound = t - &v - &v;
                bound.min(target.clone())
            }
        };
        // self = lead t^v (1 + q), val(q) > 0; Newton iteration for
        // 1/(1 + q). If r agrees with the inverse modulo t^a then
        // r(2 - ur) agrees modulo t^2a, whatever the stored tail of r
        // holds, so the known order is reset by that identity rather
        // than by interval propagation.
        let work = &result_trunc + &v;
        let unit = self
            .mul_t_pow(&(-v.clone()))
            .mul_elem(&lead_inv)
            .truncate_to(&work);
        let one = PuiseuxTrunc::one(&self.ring);
        let q = unit.sub(&one);
        let mut acc = one.truncate_to(&work);
        if let Some(delta) = q.val_lower_bound() {
            let two = PuiseuxTrunc::from_i64(&self.ring, 2);
            let mut prec = delta;
            while prec < work {
                prec = (&prec + &prec).min(work.clone());
                let lifted = acc.with_trunc_order(&prec);
                let ur = unit.truncate_to(&prec).mul(&lifted);
                acc = lifted.mul(&two.sub(&ur)).with_trunc_order(&prec);
            }
        }
        Ok(acc.mul_elem(&lead_inv).mul_t_pow(&(-v)))
    }
}

/// Determinant of a square matrix of series by Laplace expansion along
/// the first row. Intended for the small (<= 6) matrices used here.
pub fn det_series(rows: &[Vec<PuiseuxTrunc>]) -> PuiseuxTrunc {
    let n = rows.len();
    assert!(n >= 1 && rows.iter().all(|r| r.len() == n), "square matrix required");
    if n == 1 {
        return rows[0][0].clone();
    }
    let ring = rows[0][0].ring().clone();
    let mut acc = PuiseuxTrunc::zero(&ring);
    for c in 0..n {
        if rows[0][c].is_exact_zero() {
            continue;
        }
        let sub: Vec<Vec<PuiseuxTrunc>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = rows[0][c].mul(&det_series(&sub));
        if c % 2 == 0 {
            acc = acc.add(&cof);
        } else {
            acc = acc.sub(&cof);
        }
    }
    acc
}

/// Evaluate an integer polynomial at a series by Horner's rule.
pub fn eval_intpoly_at_series(p: &IntPoly, b: &PuiseuxTrunc) -> PuiseuxTrunc {
    let ring = b.ring();
    let mut acc = PuiseuxTrunc::zero(ring);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(b);
        if !c.is_zero() {
            acc = acc.add(&PuiseuxTrunc::from_rational(
                ring,
                BigRational::from_integer(c.clone()),
            ));
        }
    }
    acc
}
