//! The 4x4 minor engine for the node-condition matrix
//!
//! ```text
//!         ( 1    1     1    ...  1    )
//!   M  =  ( 0    1     2    ...  n    )
//!         ( 1    x     x^2  ...  x^n  )
//!         ( 0    x     2x^2 ...  nx^n )
//! ```
//!
//! For a column set `J = {i1 < i2 < i3 < i4}` the determinant
//! `D_J = det(M_J)` is an integer polynomial in `x`. This module computes
//! it in closed form, analyzes its roots of unity, detects exceptional
//! configurations and their affine images, and certifies the valuation of
//! `D_J` at perturbed roots of unity.

use crate::error::{Error, Result};
use crate::intpoly::{cyclotomic, IntPoly};
use crate::precision::with_precision;
use crate::puiseux::{eval_intpoly_at_series, PuiseuxTrunc};
use crate::ring::{ring_from_rational, ring_generator, ring_zero, CoeffRing, RingElem};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

/// Strictly increasing 4-element index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet4 {
    idx: [usize; 4],
}

impl IndexSet4 {
    pub fn new(idx: [usize; 4]) -> Result<Self> {
        if idx[0] < idx[1] && idx[1] < idx[2] && idx[2] < idx[3] {
            Ok(IndexSet4 { idx })
        } else {
            Err(Error::invalid(format!(
                "index set {:?} is not strictly increasing",
                idx
            )))
        }
    }

    pub fn from_slice(v: &[usize]) -> Result<Self> {
        if v.len() != 4 {
            return Err(Error::invalid("index set must have 4 elements"));
        }
        let mut idx = [v[0], v[1], v[2], v[3]];
        idx.sort_unstable();
        if idx.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::invalid(format!("repeated index in {:?}", v)));
        }
        Ok(IndexSet4 { idx })
    }

    pub fn indices(&self) -> [usize; 4] {
        self.idx
    }

    pub fn gaps(&self) -> [usize; 3] {
        [
            self.idx[1] - self.idx[0],
            self.idx[2] - self.idx[1],
            self.idx[3] - self.idx[2],
        ]
    }

    /// Translate every index by `s`.
    pub fn translated(&self, s: usize) -> IndexSet4 {
        IndexSet4 {
            idx: self.idx.map(|i| i + s),
        }
    }

    /// Scale every index by `s >= 1`.
    pub fn scaled(&self, s: usize) -> IndexSet4 {
        assert!(s >= 1);
        IndexSet4 {
            idx: self.idx.map(|i| i * s),
        }
    }
}

/// `D_J` together with its defining index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorPoly {
    pub j: IndexSet4,
    pub poly: IntPoly,
}

/// Closed form for `D_{{0,i,j,k}}`:
/// `ik x^i (x^{k-i}-1)(x^j-1) - ij x^i (x^{j-i}-1)(x^k-1) - jk x^j (x^{k-j}-1)(x^i-1)`,
/// extended to general `J` by `D_{J(+s)} = x^{2s} D_J`.
pub fn minor_poly(j: &IndexSet4) -> MinorPoly {
    let [i1, i2, i3, i4] = j.indices();
    let (i, jj, k) = (i2 - i1, i3 - i1, i4 - i1);
    let term = |a: usize, b: usize, xpow: usize, e1: usize, e2: usize| -> IntPoly {
        IntPoly::monomial(BigInt::from((a * b) as i64), xpow)
            .mul(&IntPoly::x_pow_minus_one(e1))
            .mul(&IntPoly::x_pow_minus_one(e2))
    };
    let base = term(i, k, i, k - i, jj)
        .sub(&term(i, jj, i, jj - i, k))
        .sub(&term(jj, k, jj, k - jj, i));
    MinorPoly {
        j: *j,
        poly: base.shift_up(2 * i1),
    }
}

/// Independent oracle: expand `det(M_J)` as a 4x4 determinant with
/// polynomial entries. Used by tests to cross-check the closed form.
pub fn minor_poly_det_oracle(j: &IndexSet4) -> IntPoly {
    let cols: Vec<[IntPoly; 4]> = j
        .indices()
        .iter()
        .map(|&i| {
            [
                IntPoly::one(),
                IntPoly::monomial(BigInt::from(i as i64), 0),
                IntPoly::monomial(BigInt::from(1), i),
                IntPoly::monomial(BigInt::from(i as i64), i),
            ]
        })
        .collect();
    // Laplace expansion along the first row
    fn det(rows: &[Vec<IntPoly>]) -> IntPoly {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = IntPoly::zero();
        for c in 0..n {
            if rows[0][c].is_zero() {
                continue;
            }
            let sub: Vec<Vec<IntPoly>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(i, _)| *i != c)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let cof = rows[0][c].mul(&det(&sub));
            if c % 2 == 0 {
                acc = acc.add(&cof);
            } else {
                acc = acc.sub(&cof);
            }
        }
        acc
    }
    let rows: Vec<Vec<IntPoly>> = (0..4)
        .map(|r| cols.iter().map(|col| col[r].clone()).collect())
        .collect();
    det(&rows)
}

/// Multiplicity of the primitive `d`-th roots of unity in `D_J`,
/// certified by repeated exact division by the cyclotomic polynomial.
pub fn unity_root_multiplicity(j: &IndexSet4, d: u64) -> u32 {
    let phi = cyclotomic(d);
    let mut p = minor_poly(j).poly;
    let mut mult = 0;
    while let Some(q) = p.divide_exact(&phi) {
        mult += 1;
        p = q;
    }
    mult
}

/// The five exceptional configurations.
pub const EXCEPTIONAL_CONFIGS: [[usize; 4]; 5] = [
    [0, 1, 2, 3],
    [0, 1, 2, 4],
    [0, 2, 3, 4],
    [0, 3, 4, 6],
    [0, 2, 3, 6],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExceptionalDecomp {
    pub base: [usize; 4],
    pub scale: usize,
    pub shift: usize,
}

/// Decide whether `J` is the affine image `(base * s) + r` of an
/// exceptional configuration. The decomposition is unique when it exists.
pub fn is_exceptional_affine(j: &IndexSet4) -> Option<ExceptionalDecomp> {
    let idx = j.indices();
    for base in EXCEPTIONAL_CONFIGS {
        let bg = [base[1] - base[0], base[2] - base[1], base[3] - base[2]];
        let g = j.gaps();
        if g[0] % bg[0] != 0 {
            continue;
        }
        let s = g[0] / bg[0];
        if s == 0 {
            continue;
        }
        if g[1] == s * bg[1] && g[2] == s * bg[2] {
            return Some(ExceptionalDecomp {
                base,
                scale: s,
                shift: idx[0],
            });
        }
    }
    None
}

/// The four gap gcds controlling which triples of powers of a root of
/// unity can coincide: dropping one index from `J` leaves a triple whose
/// pairwise gap gcd is listed here.
pub fn triple_gap_gcds(j: &IndexSet4) -> [usize; 4] {
    let [i1, i2, i3, i4] = j.indices();
    let gcd = |a: usize, b: usize| num::integer::gcd(a, b);
    [
        gcd(i3 - i2, i4 - i2), // i1 dropped
        gcd(i3 - i1, i4 - i1), // i2 dropped
        gcd(i2 - i1, i4 - i1), // i3 dropped
        gcd(i2 - i1, i3 - i1), // i4 dropped
    ]
}

/// True iff every root `beta != 0, 1` of `D_J` makes at least three of
/// the powers `beta^{i_1}, ..., beta^{i_4}` coincide. Certified by exact
/// division: after stripping `x^{i1+i2}` and the powers of `x - 1`, the
/// remainder must be a product of cyclotomics whose orders divide one of
/// the triple gap gcds.
pub fn all_roots_three_powers_equal(j: &IndexSet4) -> bool {
    let mp = minor_poly(j);
    let order = mp.poly.order().expect("minor polynomial is nonzero");
    let mut p = mp
        .poly
        .divide_exact(&IntPoly::monomial(BigInt::from(1), order))
        .expect("x^order divides exactly");
    let x_minus_one = IntPoly::from_i64(&[-1, 1]);
    while let Some(q) = p.divide_exact(&x_minus_one) {
        p = q;
    }
    let mut orders: Vec<u64> = vec![];
    for s in triple_gap_gcds(j) {
        for e in 2..=s {
            if s % e == 0 && !orders.contains(&(e as u64)) {
                orders.push(e as u64);
            }
        }
    }
    orders.sort_unstable();
    for d in orders {
        let phi = cyclotomic(d);
        while let Some(q) = p.divide_exact(&phi) {
            p = q;
        }
    }
    p.degree() == Some(0)
}

/// All `(n, m)` with `1 < n <= bound`, `m <= bound`, `n` a multiple of
/// `m` and `m + 1` a multiple of `n - 1`.
pub fn diophantine_pairs(bound: u64) -> Vec<(u64, u64)> {
    let mut out = vec![];
    for n in 2..=bound {
        for m in 1..=bound {
            if n % m == 0 && (m + 1) % (n - 1) == 0 {
                out.push((n, m));
            }
        }
    }
    out
}

/// Evaluate an integer polynomial at a ring element by Horner's rule.
pub fn eval_intpoly_at_elem(p: &IntPoly, x: &RingElem) -> RingElem {
    let ring = x.ring();
    let mut acc = ring_zero(ring);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x);
        if !c.is_zero() {
            acc = acc.add(&ring_from_rational(
                ring,
                BigRational::from_integer(c.clone()),
            ));
        }
    }
    acc
}

/// Multiplicity of `x` as a root of `p`, decided through derivatives.
/// May split in dynamic rings.
pub fn multiplicity_at_elem(p: &IntPoly, x: &RingElem) -> Result<u32> {
    let mut q = p.clone();
    let mut k = 0;
    let deg = p.degree().unwrap_or(0) as u32;
    while k <= deg {
        if eval_intpoly_at_elem(&q, x).decide_invertible()? {
            return Ok(k);
        }
        k += 1;
        q = q.derivative();
    }
    Ok(k)
}

/// The matrix `M_K(beta)` for an arbitrary ordered column index list.
pub fn node_matrix_at_elem(indices: &[usize], beta: &RingElem) -> Vec<Vec<RingElem>> {
    let ring = beta.ring();
    let one = crate::ring::ring_one(ring);
    let mut rows = vec![vec![]; 4];
    for &i in indices {
        let bi = beta.pow(i as u64);
        let iq = ring_from_rational(ring, BigRational::from_integer(BigInt::from(i as i64)));
        rows[0].push(one.clone());
        rows[1].push(iq.clone());
        rows[2].push(bi.clone());
        rows[3].push(iq.mul(&bi));
    }
    rows
}

/// The matrix `M_K(b)` with series entries.
pub fn node_matrix_at_series(indices: &[usize], b: &PuiseuxTrunc) -> Vec<Vec<PuiseuxTrunc>> {
    let ring = b.ring();
    let max = indices.iter().copied().max().unwrap_or(0);
    let mut powers = Vec::with_capacity(max + 1);
    powers.push(PuiseuxTrunc::one(ring));
    for i in 1..=max {
        let prev: &PuiseuxTrunc = &powers[i - 1];
        powers.push(prev.mul(b));
    }
    let mut rows = vec![vec![]; 4];
    for &i in indices {
        rows[0].push(PuiseuxTrunc::one(ring));
        rows[1].push(PuiseuxTrunc::from_i64(ring, i as i64));
        rows[2].push(powers[i].clone());
        rows[3].push(powers[i].mul(&PuiseuxTrunc::from_i64(ring, i as i64)));
    }
    rows
}

/// Rank of `M_J(beta)` by exact Gaussian elimination over the ring.
/// Always in `{2, 3, 4}` for `beta != 0`.
pub fn rank_mj_at(j: &IndexSet4, beta: &RingElem) -> Result<usize> {
    if beta.is_zero() {
        return Err(Error::invalid("rank analysis requires beta != 0"));
    }
    let mut rows = node_matrix_at_elem(&j.indices(), beta);
    let ncols = 4;
    let mut rank = 0;
    for col in 0..ncols {
        // find an invertible pivot; zero-divisor pivots split
        let mut pivot = None;
        for r in rank..rows.len() {
            if rows[r][col].decide_invertible()? {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inverse()?;
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].mul(&inv);
            for c in col..ncols {
                let delta = factor.mul(&rows[rank][c]);
                rows[r][c] = rows[r][c].sub(&delta);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Valuation of `D_J(beta + h t^v)` for `beta` a primitive `d`-th root
/// of unity whose order divides both gaps of the congruent triple
/// `sigma`. Returns `4v` when `d` also divides `extra - sigma[0]` and `v`
/// otherwise; any other outcome is a bug and panics.
pub fn val_dj_perturbed(
    sigma: [usize; 3],
    extra: usize,
    d: u64,
    v: &BigRational,
    h: &BigRational,
) -> Result<BigRational> {
    let mut s = sigma;
    s.sort_unstable();
    if d < 2 {
        return Err(Error::invalid("the root of unity must have order d > 1"));
    }
    if h.is_zero() {
        return Err(Error::invalid("the perturbation coefficient h must be nonzero"));
    }
    if !v.is_positive() {
        return Err(Error::invalid("the perturbation exponent v must be positive"));
    }
    let g = num::integer::gcd(s[1] - s[0], s[2] - s[0]) as u64;
    if g % d != 0 {
        return Err(Error::invalid(format!(
            "d = {} does not divide the gap gcd {} of {:?}",
            d, g, s
        )));
    }
    let mut all = vec![s[0], s[1], s[2], extra];
    all.sort_unstable();
    let j = IndexSet4::from_slice(&all)?;
    let congruent = (extra as i64 - s[0] as i64).rem_euclid(d as i64) == 0;
    let expected = if congruent {
        v * BigRational::from_integer(BigInt::from(4))
    } else {
        v.clone()
    };
    let ring = CoeffRing::cyclotomic(d);
    let beta = ring_generator(&ring);
    let poly = minor_poly(&j).poly;
    let four = BigRational::from_integer(BigInt::from(4));
    let initial = v * &four + v;
    let val = with_precision(initial, |tau| {
        let b = PuiseuxTrunc::constant(beta.clone())
            .add(&PuiseuxTrunc::monomial(
                &ring,
                ring_from_rational(&ring, h.clone()),
                v.clone(),
            ))
            .truncate_to(tau);
        eval_intpoly_at_series(&poly, &b).valuation()
    })?;
    assert_eq!(
        val, expected,
        "perturbed minor valuation violates the root-of-unity criterion for J={:?}, d={}",
        j, d
    );
    Ok(val)
}

/// Which of the five 4-subsets of a 5-index set have a vanishing minor at
/// `beta`, with multiplicities. The last entry of `j5` is the
/// distinguished added index.
#[derive(Clone, Debug)]
pub struct VanishingReport {
    /// `(omitted index, vanishes, multiplicity of beta)` for each 4-subset
    /// `J5 - {omitted}`, in the order of `j5`.
    pub entries: Vec<(usize, bool, u32)>,
    /// Whether the all-or-nothing dichotomy was asserted (its power
    /// pattern hypothesis held).
    pub dichotomy_asserted: bool,
}

/// Evaluate all five 4-subset minors of `j5` at `beta` and report
/// vanishing and multiplicities. When the minor omitting the last index
/// vanishes and the power pattern of the remaining four indices is not
/// "exactly three equal", the all-or-nothing dichotomy is asserted:
/// either all five minors vanish or the other four are all nonzero.
pub fn vanishing_pattern(j5: &[usize; 5], beta: &RingElem) -> Result<VanishingReport> {
    if !beta.decide_invertible()? {
        return Err(Error::invalid("the evaluation point must be nonzero"));
    }
    if beta.sub(&crate::ring::ring_one(beta.ring())).is_zero() {
        return Err(Error::invalid("the evaluation point must differ from 1"));
    }
    let mut seen = j5.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::invalid("the five indices must be distinct"));
    }
    let mut entries = vec![];
    for omit in 0..5 {
        let rest: Vec<usize> = (0..5).filter(|&k| k != omit).map(|k| j5[k]).collect();
        let j = IndexSet4::from_slice(&rest)?;
        let mult = multiplicity_at_elem(&minor_poly(&j).poly, beta)?;
        entries.push((j5[omit], mult > 0, mult));
    }
    // power pattern of the first four indices; the dichotomy only holds
    // outside the "exactly three equal" pattern, so skip it there
    let mut dichotomy_asserted = false;
    if entries[4].1 {
        let powers: Vec<RingElem> = j5[..4].iter().map(|&i| beta.pow(i as u64)).collect();
        let mut coincide = [[false; 4]; 4];
        for a in 0..4 {
            for b in (a + 1)..4 {
                let invertible = powers[a].sub(&powers[b]).decide_invertible()?;
                coincide[a][b] = !invertible;
                coincide[b][a] = !invertible;
            }
            coincide[a][a] = true;
        }
        let class_size = |a: usize| (0..4).filter(|&b| coincide[a][b]).count();
        let has_exactly_three = (0..4).any(|a| class_size(a) == 3);
        if !has_exactly_three {
            let vanish: Vec<bool> = entries.iter().map(|e| e.1).collect();
            let all = vanish.iter().all(|&v| v);
            let first_four_nonzero = vanish[..4].iter().all(|&v| !v);
            assert!(
                all || first_four_nonzero,
                "vanishing dichotomy violated at J5={:?}: {:?}",
                j5,
                vanish
            );
            dichotomy_asserted = true;
        }
    }
    Ok(VanishingReport {
        entries,
        dichotomy_asserted,
    })
}
