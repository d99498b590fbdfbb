//! Tropical membership for kernels of full-rank matrices over valuated
//! fields, decided two independent ways: directly through maximal minors
//! (for every rank-(d-1) column subset `J`, the minimum of
//! `val(det(M_{J u {k}})) + w_k` must be attained at least twice), and
//! through the circuits of the matrix, which form a tropical basis.
//!
//! Minor valuations are only used when the leading series coefficient is
//! certifiably nonzero; an ambiguous minor that could affect a verdict is
//! an error, never a guess.

use crate::error::{Error, Result};
use crate::puiseux::{det_series, PuiseuxTrunc, Trunc};
use crate::ring::RingRef;
use num::rational::BigRational;

/// Matrix of truncated Puiseux series over a shared coefficient ring.
#[derive(Clone, Debug)]
pub struct ValMatrix {
    ring: RingRef,
    rows: Vec<Vec<PuiseuxTrunc>>,
}

impl ValMatrix {
    pub fn new(rows: Vec<Vec<PuiseuxTrunc>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::invalid("matrix must be nonempty"));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged matrix"));
        }
        let ring = rows[0][0].ring().clone();
        for r in &rows {
            for e in r {
                if **e.ring() != *ring {
                    return Err(Error::invalid("matrix entries from different rings"));
                }
            }
        }
        Ok(ValMatrix { ring, rows })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &PuiseuxTrunc {
        &self.rows[r][c]
    }

    fn submatrix_cols(&self, cols: &[usize]) -> Vec<Vec<PuiseuxTrunc>> {
        self.rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect()
    }

    /// Scale one column by `t^a` (for covariance tests).
    pub fn scale_column(&self, col: usize, a: &BigRational) -> ValMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, e)| if c == col { e.mul_t_pow(a) } else { e.clone() })
                    .collect()
            })
            .collect();
        ValMatrix {
            ring: self.ring.clone(),
            rows,
        }
    }
}

/// Outcome of a minor determinant: certified valuation, certified zero,
/// or only a lower bound on the valuation (truncated away).
enum MinorVal {
    Val(BigRational),
    Zero,
    Ambiguous(BigRational),
}

fn minor_val(rows: &[Vec<PuiseuxTrunc>]) -> Result<MinorVal> {
    let det = det_series(rows);
    match det.leading() {
        Some((e, c)) => {
            if c.decide_invertible()? {
                Ok(MinorVal::Val(e.clone()))
            } else {
                unreachable!("stored leading coefficients are nonzero")
            }
        }
        None => match det.trunc() {
            Trunc::Exact => Ok(MinorVal::Zero),
            Trunc::Order(t) => Ok(MinorVal::Ambiguous(t.clone())),
        },
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, pos: usize, start: usize, n: usize) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur[pos] = v;
            rec(out, cur, pos + 1, v + 1, n);
        }
    }
    let mut out = vec![];
    if k <= n {
        let mut cur = vec![0usize; k];
        rec(&mut out, &mut cur, 0, 0, n);
    }
    out
}

/// Does the d x (d-1) column submatrix have rank d-1? `None` when the
/// answer is not certifiable at the working truncation.
fn rank_is_full(m: &ValMatrix, j: &[usize]) -> Result<Option<bool>> {
    let d = m.nrows();
    let sub = m.submatrix_cols(j);
    let mut saw_ambiguous = false;
    for rows in subsets(d, d - 1) {
        let minor: Vec<Vec<PuiseuxTrunc>> = rows.iter().map(|&r| sub[r].clone()).collect();
        match minor_val(&minor)? {
            MinorVal::Val(_) => return Ok(Some(true)),
            MinorVal::Zero => {}
            MinorVal::Ambiguous(_) => saw_ambiguous = true,
        }
    }
    if saw_ambiguous {
        Ok(None)
    } else {
        Ok(Some(false))
    }
}

/// Verdict of a membership test, with the refuting data when negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelDecision {
    Member,
    NotMember {
        /// The rank-(d-1) column subset whose minor minimum is attained once.
        subset: Vec<usize>,
        /// The unique minimizing column.
        minimizer: usize,
    },
}

impl KernelDecision {
    pub fn is_member(&self) -> bool {
        matches!(self, KernelDecision::Member)
    }
}

fn ambiguity_error(context: &str, bound: &BigRational) -> Error {
    Error::PrecisionExhausted(format!(
        "{}: a minor is zero modulo t^{} and its valuation could affect the verdict",
        context, bound
    ))
}

/// Direct minor-based membership test.
pub fn in_trop_kernel(m: &ValMatrix, w: &[BigRational]) -> Result<KernelDecision> {
    let d = m.nrows();
    let cols = m.ncols();
    if w.len() != cols {
        return Err(Error::invalid(format!(
            "weight vector length {} does not match {} columns",
            w.len(),
            cols
        )));
    }
    if d < 1 || d > cols {
        return Err(Error::invalid("matrix shape unsupported"));
    }
    for j in subsets(cols, d - 1) {
        match rank_is_full(m, &j)? {
            Some(true) => {}
            Some(false) => continue,
            None => {
                return Err(Error::PrecisionExhausted(format!(
                    "rank of the column subset {:?} is not certifiable at the input truncation",
                    j
                )))
            }
        }
        let mut vals: Vec<Option<BigRational>> = vec![None; cols];
        let mut ambiguous: Vec<Option<BigRational>> = vec![None; cols];
        for k in 0..cols {
            if j.contains(&k) {
                continue;
            }
            let mut ext = j.clone();
            ext.push(k);
            ext.sort_unstable();
            match minor_val(&m.submatrix_cols(&ext))? {
                MinorVal::Val(v) => vals[k] = Some(v + &w[k]),
                MinorVal::Zero => {}
                MinorVal::Ambiguous(t) => ambiguous[k] = Some(t + &w[k]),
            }
        }
        let Some(min) = vals.iter().flatten().min().cloned() else {
            if let Some(bound) = ambiguous.iter().flatten().min() {
                return Err(ambiguity_error("extension minors", bound));
            }
            unreachable!("a rank-(d-1) subset extends to a rank-d subset");
        };
        // an ambiguous minor whose lower bound does not exceed the
        // certified minimum could still change the verdict
        if let Some(bound) = ambiguous.iter().flatten().min() {
            if *bound <= min {
                return Err(ambiguity_error(&format!("subset {:?}", j), bound));
            }
        }
        let attained: Vec<usize> = (0..cols)
            .filter(|&k| vals[k].as_ref() == Some(&min))
            .collect();
        if attained.len() == 1 {
            return Ok(KernelDecision::NotMember {
                subset: j,
                minimizer: attained[0],
            });
        }
    }
    Ok(KernelDecision::Member)
}

/// A circuit: the minimal-support row-span element built from a
/// rank-(d-1) column subset.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub subset: Vec<usize>,
    pub support: Vec<usize>,
    pub vector: Vec<PuiseuxTrunc>,
}

/// One circuit per rank-(d-1) column subset, deduplicated by support.
pub fn circuits(m: &ValMatrix) -> Result<Vec<Circuit>> {
    let d = m.nrows();
    let cols = m.ncols();
    let ring = m.ring().clone();
    let mut seen_supports: Vec<Vec<usize>> = vec![];
    let mut out = vec![];
    for j in subsets(cols, d - 1) {
        match rank_is_full(m, &j)? {
            Some(true) => {}
            Some(false) => continue,
            None => {
                return Err(Error::PrecisionExhausted(format!(
                    "rank of the column subset {:?} is not certifiable at the input truncation",
                    j
                )))
            }
        }
        let mut vector = vec![PuiseuxTrunc::zero(&ring); cols];
        let mut support = vec![];
        for k in 0..cols {
            if j.contains(&k) {
                continue;
            }
            let mut ext = j.clone();
            ext.push(k);
            ext.sort_unstable();
            let det = det_series(&m.submatrix_cols(&ext));
            match det.leading() {
                Some(_) => {
                    // sign from moving column k past the smaller entries of j
                    let before = j.iter().filter(|&&x| x < k).count();
                    let signed = if before % 2 == 0 { det } else { det.neg() };
                    vector[k] = signed;
                    support.push(k);
                }
                None => match det.trunc() {
                    Trunc::Exact => {}
                    Trunc::Order(t) => {
                        return Err(ambiguity_error(&format!("circuit of {:?}", j), &t))
                    }
                },
            }
        }
        if seen_supports.contains(&support) {
            continue;
        }
        seen_supports.push(support.clone());
        out.push(Circuit {
            subset: j,
            support,
            vector,
        });
    }
    Ok(out)
}

/// Circuit-based membership: for every circuit, the minimum of
/// `val(r_k) + w_k` over the support must be attained at least twice.
pub fn in_trop_kernel_via_circuits(m: &ValMatrix, w: &[BigRational]) -> Result<KernelDecision> {
    if w.len() != m.ncols() {
        return Err(Error::invalid("weight vector length mismatch"));
    }
    for circuit in circuits(m)? {
        let mut vals: Vec<(usize, BigRational)> = vec![];
        for &k in &circuit.support {
            let v = circuit.vector[k].valuation().map_err(|e| match e {
                Error::Truncated(msg) => Error::PrecisionExhausted(msg),
                other => other,
            })?;
            vals.push((k, v + &w[k]));
        }
        let Some(min) = vals.iter().map(|(_, v)| v).min().cloned() else {
            continue;
        };
        let attained: Vec<usize> = vals
            .iter()
            .filter(|(_, v)| *v == min)
            .map(|(k, _)| *k)
            .collect();
        if attained.len() == 1 {
            return Ok(KernelDecision::NotMember {
                subset: circuit.subset,
                minimizer: attained[0],
            });
        }
    }
    Ok(KernelDecision::Member)
}

/// The 4 x (n+1) node-condition matrix at a series point `b`.
pub fn node_condition_matrix(n: usize, b: &PuiseuxTrunc) -> Result<ValMatrix> {
    let rows = crate::minors::node_matrix_at_series(&(0..=n).collect::<Vec<_>>(), b);
    ValMatrix::new(rows)
}

/// The fixed 6-point planar configuration
/// `{(0,0),(1,0),(1,1),(0,1),(-1,0),(0,-1)}` with one node pinned at
/// `(1,1)` and the other at `(b1, b2)`: the kernel matrix specialized to
/// the one-dimensional families where the full 6x6 system drops rank.
/// Rows are scaled by exact units (`b1`, `b1^2`) so every entry is an
/// exact series; row scaling leaves the kernel unchanged.
pub mod planar_fixture {
    use super::*;
    use num::One;

    fn is_minus_one(b1: &PuiseuxTrunc) -> bool {
        b1.terms().len() == 1 && b1.terms()[0].0 == BigRational::from_integer(0.into()) && {
            let c = &b1.terms()[0].1;
            c.as_rational()
                .map_or(false, |q| q == -BigRational::one())
        }
    }

    /// The family `b2 = 1/b1` (`b1 != 0, 1`); rank-5 submatrix with the
    /// appropriate row removed.
    pub fn matrix_inverse_pair(b1: &PuiseuxTrunc) -> Result<ValMatrix> {
        let ring = b1.ring().clone();
        let one = PuiseuxTrunc::one(&ring);
        let zero = PuiseuxTrunc::zero(&ring);
        let b1sq = b1.mul(b1);
        let r1 = vec![one.clone(); 6];
        let r2 = vec![
            zero.clone(),
            one.clone(),
            one.clone(),
            zero.clone(),
            one.neg(),
            zero.clone(),
        ];
        let r3 = vec![
            zero.clone(),
            zero.clone(),
            one.clone(),
            one.clone(),
            zero.clone(),
            one.neg(),
        ];
        // underlying row (b1 b2, b1^2 b2, b1^2 b2^2, b1 b2^2, b2, b1)
        // with b2 = 1/b1, cleared by b1
        let r4 = vec![
            b1.clone(),
            b1sq.clone(),
            b1.clone(),
            one.clone(),
            one.clone(),
            b1sq.clone(),
        ];
        let r5 = vec![
            zero.clone(),
            b1sq.clone(),
            b1.clone(),
            zero.clone(),
            one.neg(),
            zero.clone(),
        ];
        // underlying row (0, 0, b1 b2^2, b2^2, 0, -1), cleared by b1^2
        let r6 = vec![
            zero.clone(),
            zero.clone(),
            b1.clone(),
            one.clone(),
            zero,
            b1sq.neg(),
        ];
        let rows = if is_minus_one(b1) {
            vec![r1, r2, r3, r4, r6]
        } else {
            vec![r1, r2, r3, r5, r6]
        };
        ValMatrix::new(rows)
    }

    /// The family `b2 = 1` (`b1 != 1`), exact when `b1` is.
    pub fn matrix_b2_one(b1: &PuiseuxTrunc) -> Result<ValMatrix> {
        let ring = b1.ring().clone();
        let one = PuiseuxTrunc::one(&ring);
        let zero = PuiseuxTrunc::zero(&ring);
        let b1sq = b1.mul(b1);
        let r1 = vec![one.clone(); 6];
        let r2 = vec![
            zero.clone(),
            one.clone(),
            one.clone(),
            zero.clone(),
            one.neg(),
            zero.clone(),
        ];
        let r3 = vec![
            zero.clone(),
            zero.clone(),
            one.clone(),
            one.clone(),
            zero.clone(),
            one.neg(),
        ];
        let r4 = vec![
            b1.clone(),
            b1sq.clone(),
            b1sq.clone(),
            b1.clone(),
            one.clone(),
            b1.clone(),
        ];
        let r5 = vec![
            zero.clone(),
            b1sq.clone(),
            b1sq.clone(),
            zero.clone(),
            one.neg(),
            zero.clone(),
        ];
        let r6 = vec![
            zero.clone(),
            zero.clone(),
            b1.clone(),
            one.clone(),
            zero,
            one.neg(),
        ];
        let rows = if is_minus_one(b1) {
            vec![r1, r2, r3, r4, r6]
        } else {
            vec![r1, r2, r3, r5, r6]
        };
        ValMatrix::new(rows)
    }

    /// Expected values of the six 5x5 minors of the inverse-pair matrix
    /// (column `i` removed, 1-indexed), for `b1` away from `-1`: the raw
    /// closed forms scaled by the row clearing factor `b1^2`.
    pub fn cleared_minor_closed_form(i: usize, b1: &PuiseuxTrunc) -> PuiseuxTrunc {
        let ring = b1.ring().clone();
        let one = PuiseuxTrunc::one(&ring);
        let bm1 = b1.sub(&one);
        let bp1 = b1.add(&one);
        let sq = bm1.mul(&bm1);
        match i {
            1 => sq.mul(&bp1).mul(&bp1),
            3 => sq.mul(&bp1).mul(&bp1).neg(),
            4 | 5 => b1.mul(&sq).mul(&bp1).neg(),
            2 => sq.mul(&bp1).neg(),
            6 => sq.mul(&bp1),
            _ => panic!("column index must be 1..=6"),
        }
    }
}
