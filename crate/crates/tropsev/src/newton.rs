//! Newton diagrams of weight vectors: exact lower convex hulls of the
//! lifted points `(i, w_i)`, the induced marked subdivisions of
//! `{0, ..., n}`, slope/length profiles and residual polynomials.

use crate::error::{Error, Result};
use crate::puiseux::PuiseuxTrunc;
use crate::ring::{RingPoly, RingRef};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;

/// Rational weight vector indexed by `0..=n`, `n >= 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    entries: Vec<BigRational>,
}

impl WeightVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() < 5 {
            return Err(Error::invalid(format!(
                "weight vector needs n >= 4 (got {} entries)",
                entries.len()
            )));
        }
        Ok(WeightVector { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.entries[i]
    }

    /// Reverse `w_i -> w_{n-i}` (corresponds to `x -> 1/x`).
    pub fn reversed(&self) -> WeightVector {
        let mut entries = self.entries.clone();
        entries.reverse();
        WeightVector { entries }
    }
}

/// One lower-hull facet: all lifted points lying on the facet, its
/// endpoints, its interior (marked) points, the exact slope and the
/// primitive integer interior normal of the facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub support: Vec<usize>,
    pub left: usize,
    pub right: usize,
    pub marked: Vec<usize>,
    pub slope: BigRational,
    /// Primitive `(a, b)` with `b > 0` such that `a*j + b*w_j` is
    /// constant on the facet and minimal there over all lifted points.
    pub eta: (BigInt, BigInt),
}

impl Cell {
    pub fn lattice_length(&self) -> usize {
        self.right - self.left
    }

    pub fn is_marked(&self) -> bool {
        !self.marked.is_empty()
    }

    /// `<eta, (j, w_j)>` for the cell's normal.
    pub fn eta_value(&self, j: usize, wj: &BigRational) -> BigRational {
        let (a, b) = &self.eta;
        BigRational::from_integer(a * BigInt::from(j)) + BigRational::from_integer(b.clone()) * wj
    }
}

/// The marked subdivision induced by a weight vector: consecutive cells
/// covering `0..=n` with strictly increasing slopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSubdivision {
    pub cells: Vec<Cell>,
}

impl MarkedSubdivision {
    pub fn marked_cells(&self) -> Vec<&Cell> {
        self.cells.iter().filter(|c| c.is_marked()).collect()
    }

    pub fn total_marks(&self) -> usize {
        self.cells.iter().map(|c| c.marked.len()).sum()
    }

    /// The cell whose span contains `i` in its interior, or starts at `i`.
    pub fn cell_index_with_support(&self, support: &[usize]) -> Option<usize> {
        self.cells.iter().position(|c| c.support == support)
    }
}

fn primitive_eta(slope: &BigRational) -> (BigInt, BigInt) {
    // slope = p/q in lowest terms with q > 0; eta = (-p, q)
    let p = slope.numer().clone();
    let q = slope.denom().clone();
    (-p, q)
}

/// Exact lower convex hull of `{(i, w_i)}`, with collinear points kept on
/// their facet (they become support/marked points).
pub fn newton_diagram(w: &WeightVector) -> MarkedSubdivision {
    let n = w.n();
    // monotone chain, strict turns only: stack holds hull vertex indices
    let mut stack: Vec<usize> = vec![];
    for i in 0..=n {
        while stack.len() >= 2 {
            let a = stack[stack.len() - 2];
            let b = stack[stack.len() - 1];
            // cross((b - a), (i - b)) <= 0 => b is not a strict vertex
            let abx = BigRational::from_integer(BigInt::from(b as i64 - a as i64));
            let aby = w.get(b) - w.get(a);
            let bcx = BigRational::from_integer(BigInt::from(i as i64 - b as i64));
            let bcy = w.get(i) - w.get(b);
            let cross = &abx * &bcy - &aby * &bcx;
            if cross <= BigRational::zero() {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(i);
    }
    let mut cells = vec![];
    for pair in stack.windows(2) {
        let (l, r) = (pair[0], pair[1]);
        let slope = (w.get(r) - w.get(l)) / BigRational::from_integer(BigInt::from((r - l) as i64));
        let mut support = vec![];
        let mut marked = vec![];
        for j in l..=r {
            let on_line = (w.get(j) - w.get(l))
                == &slope * BigRational::from_integer(BigInt::from((j - l) as i64));
            if on_line {
                support.push(j);
                if j != l && j != r {
                    marked.push(j);
                }
            }
        }
        let eta = primitive_eta(&slope);
        cells.push(Cell {
            support,
            left: l,
            right: r,
            marked,
            slope,
            eta,
        });
    }
    MarkedSubdivision { cells }
}

/// Invertible reparametrization `w'_i = w_i + alpha*i + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTransform {
    pub alpha: BigRational,
    pub shift: BigRational,
}

impl AffineTransform {
    pub fn identity() -> Self {
        AffineTransform {
            alpha: BigRational::zero(),
            shift: BigRational::zero(),
        }
    }

    pub fn apply(&self, w: &WeightVector) -> WeightVector {
        let entries = w
            .entries()
            .iter()
            .enumerate()
            .map(|(i, wi)| {
                wi + &self.alpha * BigRational::from_integer(BigInt::from(i as i64)) + &self.shift
            })
            .collect();
        WeightVector { entries }
    }

    pub fn inverse(&self) -> AffineTransform {
        AffineTransform {
            alpha: -self.alpha.clone(),
            shift: -self.shift.clone(),
        }
    }
}

/// Reparametrize so the chosen cell has slope 0 and value 0; returns the
/// new weights and the recorded transform.
pub fn normalize(w: &WeightVector, cell_index: usize) -> Result<(WeightVector, AffineTransform)> {
    let diagram = newton_diagram(w);
    let cell = diagram
        .cells
        .get(cell_index)
        .ok_or_else(|| Error::invalid(format!("no cell with index {}", cell_index)))?;
    let alpha = -cell.slope.clone();
    let shift = -(w.get(cell.left)
        + &alpha * BigRational::from_integer(BigInt::from(cell.left as i64)));
    let transform = AffineTransform { alpha, shift };
    Ok((transform.apply(w), transform))
}

/// One `(v, l)` pair per cell: `v` the negated slope, `l` the lattice
/// length; matches the multiset of root valuations with multiplicity.
pub fn valuation_profile(sub: &MarkedSubdivision) -> Vec<(BigRational, usize)> {
    sub.cells
        .iter()
        .map(|c| (-c.slope.clone(), c.lattice_length()))
        .collect()
}

/// Leading coefficients of the terms supported on one cell, as a
/// polynomial over the residue ring. Requires `val(c_i) = w_i` for all i.
pub fn residual_polynomial(
    coeffs: &[PuiseuxTrunc],
    cell: &Cell,
    w: &WeightVector,
) -> Result<RingPoly> {
    if coeffs.len() != w.n() + 1 {
        return Err(Error::invalid("coefficient count does not match the weight vector"));
    }
    let ring: RingRef = coeffs[0].ring().clone();
    for (i, c) in coeffs.iter().enumerate() {
        let v = c.valuation().map_err(|e| match e {
            Error::Truncated(m) => Error::Truncated(m),
            other => other,
        })?;
        if &v != w.get(i) {
            return Err(Error::invalid(format!(
                "coefficient {} has valuation {} but the weight vector requires {}",
                i, v, w.get(i)
            )));
        }
    }
    let mut out = vec![crate::ring::ring_zero(&ring); cell.right + 1];
    for &i in &cell.support {
        let (_, lead) = coeffs[i].leading().expect("valuation checked above");
        out[i] = lead.clone();
    }
    Ok(RingPoly::from_coeffs(ring, out))
}
