//! Membership of a weight vector in the union of the three cone families,
//! with certificates.
//!
//! A certificate names the combinatorial data of a closed cone containing
//! the input: two marked segments with one interior mark each (type I), a
//! single four-point marked segment with two marks that is not a pure
//! translation of an exceptional configuration (type II), or a three-point
//! marked segment with a gap gcd `g > 1`, a divisor `d > 1` of `g`, and a
//! hidden tie: a pair of indices, both non-congruent to the segment
//! modulo `d`, where the minimum of the segment-normal values over all
//! non-congruent indices is attained.
//!
//! Membership uses the closed cones (weak inequalities); whether the
//! input also satisfies the strict interior conditions is reported as a
//! flag on each certificate.

use crate::error::{Error, Result};
use crate::minors::{is_exceptional_affine, IndexSet4};
use crate::newton::{newton_diagram, MarkedSubdivision, WeightVector};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;

/// Endpoints plus single interior mark of a marked segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkedTriple {
    pub left: usize,
    pub mark: usize,
    pub right: usize,
}

impl MarkedTriple {
    pub fn support(&self) -> [usize; 3] {
        [self.left, self.mark, self.right]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeCertificate {
    TypeI {
        cell_a: MarkedTriple,
        cell_b: MarkedTriple,
        interior: bool,
    },
    TypeII {
        cell: [usize; 4],
        interior: bool,
    },
    TypeIII {
        sigma: [usize; 3],
        d: u64,
        tie: [usize; 2],
        interior: bool,
    },
}

impl ConeCertificate {
    pub fn type_name(&self) -> &'static str {
        match self {
            ConeCertificate::TypeI { .. } => "I",
            ConeCertificate::TypeII { .. } => "II",
            ConeCertificate::TypeIII { .. } => "III",
        }
    }

    pub fn interior(&self) -> bool {
        match self {
            ConeCertificate::TypeI { interior, .. } => *interior,
            ConeCertificate::TypeII { interior, .. } => *interior,
            ConeCertificate::TypeIII { interior, .. } => *interior,
        }
    }

    /// The cone data with the interior flag dropped.
    pub fn data(&self) -> ConeData {
        match self {
            ConeCertificate::TypeI { cell_a, cell_b, .. } => ConeData::TypeI {
                cell_a: cell_a.support(),
                cell_b: cell_b.support(),
            },
            ConeCertificate::TypeII { cell, .. } => ConeData::TypeII { cell: *cell },
            ConeCertificate::TypeIII { sigma, d, tie, .. } => ConeData::TypeIII {
                sigma: *sigma,
                d: *d,
                tie: *tie,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub member: bool,
    pub certificates: Vec<ConeCertificate>,
    pub refusal_reason: Option<String>,
}

/// All maximal stretches of indices lying on one supporting line of the
/// lower hull (the diagram's cells), with their support sets.
fn face_supports(diagram: &MarkedSubdivision) -> Vec<&Vec<usize>> {
    diagram.cells.iter().map(|c| &c.support).collect()
}

pub fn classify(w: &WeightVector) -> ClassificationResult {
    classify_impl(w, None)
}

/// Stop after the first `limit` certificates (used by bulk validation).
pub fn classify_limited(w: &WeightVector, limit: usize) -> ClassificationResult {
    classify_impl(w, Some(limit))
}

fn classify_impl(w: &WeightVector, limit: Option<usize>) -> ClassificationResult {
    let n = w.n();
    let diagram = newton_diagram(w);
    let total_marks = diagram.total_marks();
    let marked_cells: Vec<usize> = diagram
        .cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_marked())
        .map(|(i, _)| i)
        .collect();
    let mut certificates: Vec<ConeCertificate> = vec![];
    let full = |certs: &Vec<ConeCertificate>| limit.map_or(false, |l| certs.len() >= l);

    // candidate marked triples: 3-subsets of one face's support
    let mut triples: Vec<MarkedTriple> = vec![];
    for support in face_supports(&diagram) {
        let m = support.len();
        for a in 0..m {
            for b in (a + 1)..m {
                for c in (b + 1)..m {
                    triples.push(MarkedTriple {
                        left: support[a],
                        mark: support[b],
                        right: support[c],
                    });
                }
            }
        }
    }
    triples.sort();
    triples.dedup();

    // type I: two marked triples with disjoint interiors
    'type_i: for (ai, a) in triples.iter().enumerate() {
        for b in triples.iter().skip(ai) {
            if a.right > b.left {
                continue;
            }
            let interior = total_marks == 2
                && diagram.cells.iter().any(|c| c.support == a.support())
                && diagram.cells.iter().any(|c| c.support == b.support());
            certificates.push(ConeCertificate::TypeI {
                cell_a: *a,
                cell_b: *b,
                interior,
            });
            if full(&certificates) {
                break 'type_i;
            }
        }
    }

    // type II: four support points on one face, not a pure translation of
    // an exceptional configuration
    if !full(&certificates) {
        'type_ii: for support in face_supports(&diagram) {
            let m = support.len();
            for a in 0..m {
                for b in (a + 1)..m {
                    for c in (b + 1)..m {
                        for d in (c + 1)..m {
                            let cell = [support[a], support[b], support[c], support[d]];
                            let j = IndexSet4::new(cell).unwrap();
                            if let Some(dec) = is_exceptional_affine(&j) {
                                if dec.scale == 1 {
                                    continue;
                                }
                            }
                            let interior = total_marks == 2
                                && diagram.cells.iter().any(|f| f.support == cell);
                            certificates.push(ConeCertificate::TypeII { cell, interior });
                            if full(&certificates) {
                                break 'type_ii;
                            }
                        }
                    }
                }
            }
        }
    }

    // type III: a three-point segment with gap gcd > 1 plus a hidden tie
    if !full(&certificates) {
        'type_iii: for t in &triples {
            let g = num::integer::gcd(t.right - t.left, t.mark - t.left);
            if g <= 1 {
                continue;
            }
            // segment-normal values cleared of denominators:
            // (r - l) * w_j - (w_r - w_l) * j
            let span = BigRational::from_integer(BigInt::from((t.right - t.left) as i64));
            let rise = w.get(t.right) - w.get(t.left);
            let eta_val = |j: usize| -> BigRational {
                &span * w.get(j) - &rise * BigRational::from_integer(BigInt::from(j as i64))
            };
            for d in 2..=g {
                if g % d != 0 {
                    continue;
                }
                let non_congruent: Vec<usize> = (0..=n)
                    .filter(|&j| (j as i64 - t.left as i64).rem_euclid(d as i64) != 0)
                    .collect();
                if non_congruent.len() < 2 {
                    continue;
                }
                let values: Vec<BigRational> = non_congruent.iter().map(|&j| eta_val(j)).collect();
                let min = values.iter().min().unwrap().clone();
                let argmins: Vec<usize> = non_congruent
                    .iter()
                    .zip(values.iter())
                    .filter(|(_, v)| **v == min)
                    .map(|(&j, _)| j)
                    .collect();
                if argmins.len() < 2 {
                    continue;
                }
                let sigma_interior = total_marks == 1
                    && diagram.cells.iter().any(|f| f.support == t.support());
                for x in 0..argmins.len() {
                    for y in (x + 1)..argmins.len() {
                        let interior = sigma_interior && argmins.len() == 2;
                        certificates.push(ConeCertificate::TypeIII {
                            sigma: t.support(),
                            d: d as u64,
                            tie: [argmins[x], argmins[y]],
                            interior,
                        });
                        if full(&certificates) {
                            break 'type_iii;
                        }
                    }
                }
            }
        }
    }

    if !certificates.is_empty() {
        return ClassificationResult {
            member: true,
            certificates,
            refusal_reason: None,
        };
    }

    // diagnose the refusal
    let reason = if marked_cells.is_empty() {
        "no marked cell: the diagram admits no double root at all".to_string()
    } else if marked_cells.len() == 1 {
        let cell = &diagram.cells[marked_cells[0]];
        let support = &cell.support;
        if support.len() == 4 {
            let j = IndexSet4::new([support[0], support[1], support[2], support[3]]).unwrap();
            match is_exceptional_affine(&j) {
                Some(dec) if dec.scale == 1 => format!(
                    "single marked cell {:?} is a translation of exceptional configuration {:?}",
                    support, dec.base
                ),
                _ => format!("single marked cell {:?} admits no certificate", support),
            }
        } else if cell.lattice_length() == 3 {
            format!("single marked cell {:?} of lattice length 3", support)
        } else if support.len() == 3 {
            let g = num::integer::gcd(support[2] - support[0], support[1] - support[0]);
            if g <= 1 {
                format!(
                    "single marked cell {:?} has gap gcd 1: no admissible divisor",
                    support
                )
            } else {
                format!(
                    "single marked cell {:?}: hidden-tie minimum attained once for every divisor of {}",
                    support, g
                )
            }
        } else {
            format!("single marked cell {:?} admits no certificate", support)
        }
    } else {
        "marked cells admit no type I/II/III certificate".to_string()
    };

    ClassificationResult {
        member: false,
        certificates: vec![],
        refusal_reason: Some(reason),
    }
}

/// Cone data without a reference weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeData {
    TypeI { cell_a: [usize; 3], cell_b: [usize; 3] },
    TypeII { cell: [usize; 4] },
    TypeIII { sigma: [usize; 3], d: u64, tie: [usize; 2] },
}

impl ConeData {
    pub fn type_name(&self) -> &'static str {
        match self {
            ConeData::TypeI { .. } => "I",
            ConeData::TypeII { .. } => "II",
            ConeData::TypeIII { .. } => "III",
        }
    }

    pub fn to_certificate(&self, interior: bool) -> ConeCertificate {
        match self {
            ConeData::TypeI { cell_a, cell_b } => ConeCertificate::TypeI {
                cell_a: MarkedTriple {
                    left: cell_a[0],
                    mark: cell_a[1],
                    right: cell_a[2],
                },
                cell_b: MarkedTriple {
                    left: cell_b[0],
                    mark: cell_b[1],
                    right: cell_b[2],
                },
                interior,
            },
            ConeData::TypeII { cell } => ConeCertificate::TypeII {
                cell: *cell,
                interior,
            },
            ConeData::TypeIII { sigma, d, tie } => ConeCertificate::TypeIII {
                sigma: *sigma,
                d: *d,
                tie: *tie,
                interior,
            },
        }
    }
}

/// Linear form `sum coeffs[i] * w_i`; used as `= 0` or `>= 0` constraints.
pub type LinearForm = Vec<BigRational>;

/// H-description of one closed cone: the equalities cut out the span, the
/// weak inequalities cut out the cone inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescriptor {
    pub n: usize,
    pub data: ConeData,
    pub equalities: Vec<LinearForm>,
    pub inequalities: Vec<LinearForm>,
}

fn zero_form(n: usize) -> LinearForm {
    vec![BigRational::zero(); n + 1]
}

/// `(r-l) w_k - (r-k) w_l - (k-l) w_r`: zero iff `(k, w_k)` lies on the
/// segment line, positive iff strictly above.
fn segment_form(n: usize, l: usize, r: usize, k: usize) -> LinearForm {
    let mut f = zero_form(n);
    f[k] += BigRational::from_integer(BigInt::from((r - l) as i64));
    f[l] -= BigRational::from_integer(BigInt::from(r as i64 - k as i64));
    f[r] -= BigRational::from_integer(BigInt::from(k as i64 - l as i64));
    f
}

/// `(i3-i1)(w_j - w_k) - (w_{i3} - w_{i1})(j - k)`: the difference of the
/// segment-normal values at `j` and `k`, cleared of denominators.
fn eta_diff_form(n: usize, i1: usize, i3: usize, j: usize, k: usize) -> LinearForm {
    let mut f = zero_form(n);
    let span = BigRational::from_integer(BigInt::from((i3 - i1) as i64));
    let jk = BigRational::from_integer(BigInt::from(j as i64 - k as i64));
    f[j] += &span;
    f[k] -= &span;
    f[i3] -= &jk;
    f[i1] += &jk;
    f
}

/// Build the H-description for cone data.
pub fn descriptor_for(n: usize, data: &ConeData) -> ConeDescriptor {
    let mut equalities = vec![];
    let mut inequalities = vec![];
    match data {
        ConeData::TypeI { cell_a, cell_b } => {
            for cell in [cell_a, cell_b] {
                let [l, m, r] = *cell;
                equalities.push(segment_form(n, l, r, m));
                for k in 0..=n {
                    if k != l && k != m && k != r {
                        inequalities.push(segment_form(n, l, r, k));
                    }
                }
            }
        }
        ConeData::TypeII { cell } => {
            let [i1, i2, i3, i4] = *cell;
            equalities.push(segment_form(n, i1, i4, i2));
            equalities.push(segment_form(n, i1, i4, i3));
            for k in 0..=n {
                if !cell.contains(&k) {
                    inequalities.push(segment_form(n, i1, i4, k));
                }
            }
        }
        ConeData::TypeIII { sigma, d, tie } => {
            let [i1, i2, i3] = *sigma;
            let [j1, j2] = *tie;
            equalities.push(segment_form(n, i1, i3, i2));
            for k in 0..=n {
                if !sigma.contains(&k) {
                    inequalities.push(segment_form(n, i1, i3, k));
                }
            }
            equalities.push(eta_diff_form(n, i1, i3, j1, j2));
            for j in 0..=n {
                if (j as i64 - i1 as i64).rem_euclid(*d as i64) != 0 && j != j1 && j != j2 {
                    inequalities.push(eta_diff_form(n, i1, i3, j, j1));
                }
            }
        }
    }
    ConeDescriptor {
        n,
        data: data.clone(),
        equalities,
        inequalities,
    }
}

/// Does `w` satisfy the descriptor's closed-cone constraints? With
/// `strict`, the inequalities must hold strictly.
pub fn satisfies(w: &WeightVector, desc: &ConeDescriptor, strict: bool) -> bool {
    let eval = |f: &LinearForm| -> BigRational {
        f.iter()
            .zip(w.entries())
            .map(|(c, wi)| c * wi)
            .fold(BigRational::zero(), |a, b| a + b)
    };
    desc.equalities.iter().all(|f| eval(f).is_zero())
        && desc.inequalities.iter().all(|f| {
            let v = eval(f);
            if strict {
                v > BigRational::zero()
            } else {
                v >= BigRational::zero()
            }
        })
}

/// All maximal cones of each type for a small `n`, as pairwise distinct
/// descriptors with explicit H-descriptions.
pub fn enumerate_cones(n: usize) -> Result<Vec<ConeDescriptor>> {
    if !(4..=12).contains(&n) {
        return Err(Error::invalid(format!(
            "cone enumeration supports 4 <= n <= 12 (got {})",
            n
        )));
    }
    let mut out = vec![];
    let mut triples = vec![];
    for l in 0..=n {
        for m in (l + 1)..=n {
            for r in (m + 1)..=n {
                triples.push([l, m, r]);
            }
        }
    }
    // type I: pairs with disjoint interiors
    for (i, a) in triples.iter().enumerate() {
        for b in triples.iter().skip(i) {
            if a[2] <= b[0] {
                out.push(descriptor_for(
                    n,
                    &ConeData::TypeI {
                        cell_a: *a,
                        cell_b: *b,
                    },
                ));
            }
        }
    }
    // type II: 4-subsets that are not pure translations of exceptionals
    for i1 in 0..=n {
        for i2 in (i1 + 1)..=n {
            for i3 in (i2 + 1)..=n {
                for i4 in (i3 + 1)..=n {
                    let cell = [i1, i2, i3, i4];
                    let j = IndexSet4::new(cell).unwrap();
                    if matches!(is_exceptional_affine(&j), Some(d) if d.scale == 1) {
                        continue;
                    }
                    out.push(descriptor_for(n, &ConeData::TypeII { cell }));
                }
            }
        }
    }
    // type III
    for t in &triples {
        let g = num::integer::gcd(t[2] - t[0], t[1] - t[0]);
        if g <= 1 {
            continue;
        }
        for d in 2..=g {
            if g % d != 0 {
                continue;
            }
            let non_congruent: Vec<usize> = (0..=n)
                .filter(|&j| (j as i64 - t[0] as i64).rem_euclid(d as i64) != 0)
                .collect();
            for x in 0..non_congruent.len() {
                for y in (x + 1)..non_congruent.len() {
                    out.push(descriptor_for(
                        n,
                        &ConeData::TypeIII {
                            sigma: *t,
                            d: d as u64,
                            tie: [non_congruent[x], non_congruent[y]],
                        },
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Affine dimension of the cone's span: `n + 1` minus the rank of its
/// equality constraints. Maximal cones have dimension `n - 1`.
pub fn dimension_check(cert: &ConeCertificate, n: usize) -> usize {
    dimension_of(&descriptor_for(n, &cert.data()))
}

pub fn dimension_of(desc: &ConeDescriptor) -> usize {
    let mut rows: Vec<Vec<BigRational>> = desc.equalities.clone();
    let cols = desc.n + 1;
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = BigRational::from_integer(BigInt::from(1)) / rows[rank][col].clone();
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..cols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    cols - rank
}
