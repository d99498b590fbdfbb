//! Constructive membership: given a weight vector in the interior of a
//! certified cone, build an explicit polynomial over truncated Puiseux
//! series whose coefficients have exactly those valuations and which has
//! double roots at 1 and at a second node `b`, then verify it.
//!
//! All constructions work in normalized coordinates where the relevant
//! marked cell sits at height 0 with slope 0 (the recorded transform maps
//! back). Off the chosen four-column set `J` the coefficients are plain
//! monomials `t^{w_i}`; the four remaining coefficients solve the 4x4
//! node system by Cramer's rule over series, with one series inversion of
//! the minor `D_J(b)`.

use crate::classifier::{descriptor_for, satisfies, ConeCertificate};
use crate::error::{Error, Result};
use crate::intpoly::{IntPoly, RatPoly};
use crate::minors::{
    eval_intpoly_at_elem, minor_poly, multiplicity_at_elem, vanishing_pattern, IndexSet4,
};
use crate::newton::{newton_diagram, normalize, AffineTransform, WeightVector};
use crate::precision::with_precision;
use crate::puiseux::{det_series, eval_intpoly_at_series, PuiseuxTrunc};
use crate::ring::{ring_from_i64, ring_generator, CoeffRing, RingRef};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// A constructed witness. `coefficients` and `b` live in normalized
/// coordinates (nodes at 1 and `b`); `transform` maps the original weight
/// vector to the normalized one, so the original-coordinate coefficients
/// are `c_i * t^(-(alpha*i + shift))`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub certificate: ConeCertificate,
    pub ring: RingRef,
    pub b: PuiseuxTrunc,
    pub coefficients: Vec<PuiseuxTrunc>,
    pub normalized_weight: WeightVector,
    pub transform: AffineTransform,
}

impl Witness {
    pub fn n(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficients with the original valuations `w_i`.
    pub fn original_coefficients(&self) -> Vec<PuiseuxTrunc> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let delta = -(&self.transform.alpha
                    * BigRational::from_integer(BigInt::from(i as i64))
                    + &self.transform.shift);
                c.mul_t_pow(&delta)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// Certificate cells must be exact faces and ties exact.
    Interior,
    /// Closed-cone (weak) consistency only.
    Closure,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Dispatch on the certificate type.
pub fn construct(w: &WeightVector, cert: &ConeCertificate) -> Result<Witness> {
    match cert {
        ConeCertificate::TypeI { .. } => witness_type_i(w, cert),
        ConeCertificate::TypeII { .. } => witness_type_ii(w, cert),
        ConeCertificate::TypeIII { .. } => witness_type_iii(w, cert),
    }
}

fn require_interior(w: &WeightVector, cert: &ConeCertificate) -> Result<()> {
    let desc = descriptor_for(w.n(), &cert.data());
    if !satisfies(w, &desc, true) {
        return Err(Error::NonGenericWeight(format!(
            "weight vector is not in the interior of the {} cone {:?}",
            cert.type_name(),
            cert.data()
        )));
    }
    Ok(())
}

/// Solve the 4x4 node system for the columns `j4` with all other
/// coefficients fixed to `t^{w'_i}`: replaced-column determinants over
/// series, then one inversion of `D_J(b)`.
fn solve_node_system(
    ring: &RingRef,
    b: &PuiseuxTrunc,
    j4: [usize; 4],
    wprime: &WeightVector,
    tau: &BigRational,
) -> Result<[PuiseuxTrunc; 4]> {
    let n = wprime.n();
    let b_t = b.truncate_to(tau);
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(PuiseuxTrunc::one(ring).truncate_to(tau));
    for _ in 1..=n {
        let last: &PuiseuxTrunc = powers.last().unwrap();
        powers.push(last.mul(&b_t));
    }
    // right-hand side: minus the contribution of the fixed coefficients
    let mut rhs = vec![PuiseuxTrunc::zero(ring).truncate_to(tau); 4];
    for i in 0..=n {
        if j4.contains(&i) {
            continue;
        }
        let ti = PuiseuxTrunc::t_pow(ring, wprime.get(i).clone()).truncate_to(tau);
        let iq = PuiseuxTrunc::from_i64(ring, i as i64);
        rhs[0] = rhs[0].sub(&ti);
        rhs[1] = rhs[1].sub(&ti.mul(&iq));
        let bi_t = powers[i].mul(&ti);
        rhs[2] = rhs[2].sub(&bi_t);
        rhs[3] = rhs[3].sub(&bi_t.mul(&iq));
    }
    // matrix columns for the unknowns
    let cols: Vec<[PuiseuxTrunc; 4]> = j4
        .iter()
        .map(|&i| {
            let iq = PuiseuxTrunc::from_i64(ring, i as i64);
            [
                PuiseuxTrunc::one(ring).truncate_to(tau),
                iq.clone(),
                powers[i].clone(),
                powers[i].mul(&iq),
            ]
        })
        .collect();
    let d_j = IndexSet4::new(j4).expect("sorted column set");
    let det = eval_intpoly_at_series(&minor_poly(&d_j).poly, &b_t);
    let det_inv = det.inv(tau)?;
    let mut out: Vec<PuiseuxTrunc> = vec![];
    for q in 0..4 {
        // replaced-column determinant, expanded along the (dense)
        // right-hand side: transpose with that column moved to the front
        let mut rows_t: Vec<Vec<PuiseuxTrunc>> = vec![rhs.clone()];
        for (c, col) in cols.iter().enumerate() {
            if c != q {
                rows_t.push(col.to_vec());
            }
        }
        let num = det_series(&rows_t);
        let num = if q % 2 == 0 { num } else { num.neg() };
        out.push(num.mul(&det_inv));
    }
    Ok([
        out[0].clone(),
        out[1].clone(),
        out[2].clone(),
        out[3].clone(),
    ])
}

/// Check the four solved coefficients have the required valuations;
/// ambiguity surfaces as `Truncated` for the precision loop.
fn check_solution_valuations(
    solved: &[PuiseuxTrunc; 4],
    j4: [usize; 4],
    wprime: &WeightVector,
) -> Result<()> {
    for (q, c) in solved.iter().enumerate() {
        let v = c.valuation()?;
        if &v != wprime.get(j4[q]) {
            return Err(Error::NonGenericWeight(format!(
                "solved coefficient {} has valuation {} instead of {}",
                j4[q],
                v,
                wprime.get(j4[q])
            )));
        }
    }
    Ok(())
}

fn assemble(
    cert: &ConeCertificate,
    ring: &RingRef,
    b: &PuiseuxTrunc,
    j4: [usize; 4],
    solved: [PuiseuxTrunc; 4],
    wprime: &WeightVector,
    transform: AffineTransform,
) -> Witness {
    let n = wprime.n();
    let mut coefficients = Vec::with_capacity(n + 1);
    for i in 0..=n {
        match j4.iter().position(|&j| j == i) {
            Some(q) => coefficients.push(solved[q].clone()),
            None => coefficients.push(PuiseuxTrunc::t_pow(ring, wprime.get(i).clone())),
        }
    }
    Witness {
        certificate: cert.clone(),
        ring: ring.clone(),
        b: b.clone(),
        coefficients,
        normalized_weight: wprime.clone(),
        transform,
    }
}

fn max_weight(wprime: &WeightVector) -> BigRational {
    wprime
        .entries()
        .iter()
        .cloned()
        .max()
        .unwrap_or_else(BigRational::zero)
}

fn four() -> BigRational {
    BigRational::from_integer(BigInt::from(4))
}

/// Two marked cells with distinct slopes: nodes at `1` and `b = t^v`.
pub fn witness_type_i(w: &WeightVector, cert: &ConeCertificate) -> Result<Witness> {
    let ConeCertificate::TypeI { cell_a, cell_b, .. } = cert else {
        return Err(Error::invalid("certificate is not of type I"));
    };
    require_interior(w, cert)?;
    // normalize on the right marked cell
    let diagram = newton_diagram(w);
    let cell_b_index = diagram
        .cells
        .iter()
        .position(|c| c.support == cell_b.support())
        .ok_or_else(|| {
            Error::NonGenericWeight("right marked cell is not an exact face".into())
        })?;
    let (wprime, transform) = normalize(w, cell_b_index)?;
    // slope of the left cell in normalized coordinates
    let span = BigRational::from_integer(BigInt::from((cell_a.right - cell_a.left) as i64));
    let slope_a = (wprime.get(cell_a.right) - wprime.get(cell_a.left)) / span;
    let v = -slope_a;
    debug_assert!(v.is_positive());
    let ring = CoeffRing::rationals();
    let b = PuiseuxTrunc::t_pow(&ring, v.clone());
    let j4 = [cell_a.left, cell_a.mark, cell_b.mark, cell_b.right];
    let tau0 = max_weight(&wprime) * four()
        + &v * BigRational::from_integer(BigInt::from(4))
        + BigRational::one();
    let solved = with_precision(tau0, |tau| {
        let solved = solve_node_system(&ring, &b, j4, &wprime, tau)?;
        check_solution_valuations(&solved, j4, &wprime)?;
        Ok(solved)
    })?;
    // leading coefficients forced by the limit system
    let (i1, j1, k1) = (cell_a.left as i64, cell_a.mark as i64, cell_a.right as i64);
    let (i2, j2, k2) = (cell_b.left as i64, cell_b.mark as i64, cell_b.right as i64);
    let expected = [
        BigRational::new(BigInt::from(k1 - j1), BigInt::from(j1 - i1)),
        BigRational::new(BigInt::from(i1 - k1), BigInt::from(j1 - i1)),
        BigRational::new(BigInt::from(i2 - k2), BigInt::from(k2 - j2)),
        BigRational::new(BigInt::from(j2 - i2), BigInt::from(k2 - j2)),
    ];
    for (q, c) in solved.iter().enumerate() {
        let lead = c
            .leading()
            .and_then(|(_, l)| l.as_rational())
            .expect("valuations checked");
        assert_eq!(
            lead, expected[q],
            "solved leading coefficient disagrees with the limit system at column {}",
            j4[q]
        );
    }
    Ok(assemble(cert, &ring, &b, j4, solved, &wprime, transform))
}

/// One four-point marked cell; the second node has valuation 0 with
/// leading coefficient a root of `D_J` whose power pattern repeats each
/// value at most once (general case) or a primitive `s`-th root of unity
/// (cell an `s`-fold affine image of an exceptional configuration).
pub fn witness_type_ii(w: &WeightVector, cert: &ConeCertificate) -> Result<Witness> {
    let ConeCertificate::TypeII { cell, .. } = cert else {
        return Err(Error::invalid("certificate is not of type II"));
    };
    require_interior(w, cert)?;
    let diagram = newton_diagram(w);
    let cell_index = diagram
        .cells
        .iter()
        .position(|c| c.support == *cell)
        .ok_or_else(|| Error::NonGenericWeight("marked cell is not an exact face".into()))?;
    let (wprime, transform) = normalize(w, cell_index)?;
    let j = IndexSet4::new(*cell).expect("certificate cell sorted");
    match crate::minors::is_exceptional_affine(&j) {
        Some(dec) if dec.scale == 1 => Err(Error::ExceptionalTranslation {
            base: dec.base,
            cell: *cell,
        }),
        Some(dec) => witness_type_ii_scaled(cert, &wprime, transform, *cell, dec.scale),
        None => witness_type_ii_general(cert, &wprime, transform, *cell),
    }
}

/// Affine images of exceptional configurations with scale `s > 1`.
fn witness_type_ii_scaled(
    cert: &ConeCertificate,
    wprime: &WeightVector,
    transform: AffineTransform,
    cell: [usize; 4],
    s: usize,
) -> Result<Witness> {
    let n = wprime.n();
    let i1 = cell[0];
    // unique minimizer over the indices off the cell in classes not hit
    // by the scaled configuration
    let candidates: Vec<usize> = (0..=n)
        .filter(|&i| !cell.contains(&i) && (i as i64 - i1 as i64).rem_euclid(s as i64) != 0)
        .collect();
    let i5 = unique_min(&candidates, wprime).ok_or_else(|| {
        Error::NonGenericWeight(
            "tied or empty minimizer for the scaled exceptional construction".into(),
        )
    })?;
    let v = wprime.get(i5) / BigRational::from_integer(BigInt::from(3));
    let ring = CoeffRing::cyclotomic(s as u64);
    let beta = ring_generator(&ring);
    let d_poly = minor_poly(&IndexSet4::new(cell).unwrap()).poly;
    let tau0 = max_weight(wprime) * four() + &v * four() + BigRational::one();
    let expected_val = &v * four();
    let (b, solved) = with_precision(tau0, |tau| {
        for h in 1..=10i64 {
            let b = PuiseuxTrunc::constant(beta.clone()).add(&PuiseuxTrunc::monomial(
                &ring,
                ring_from_i64(&ring, h),
                v.clone(),
            ));
            let dval = eval_intpoly_at_series(&d_poly, &b.truncate_to(tau)).valuation()?;
            if dval != expected_val {
                continue;
            }
            let solved = solve_node_system(&ring, &b, cell, wprime, tau)?;
            check_solution_valuations(&solved, cell, wprime)?;
            return Ok((b, solved));
        }
        Err(Error::PrecisionExhausted(
            "no perturbation coefficient gave a usable minor valuation".into(),
        ))
    })?;
    Ok(assemble(cert, &ring, &b, cell, solved, wprime, transform))
}

/// General type II: dynamic evaluation over the squarefree part of the
/// interesting factor of `D_J`, branch by branch in order of increasing
/// modulus degree.
fn witness_type_ii_general(
    cert: &ConeCertificate,
    wprime: &WeightVector,
    transform: AffineTransform,
    cell: [usize; 4],
) -> Result<Witness> {
    let j = IndexSet4::new(cell).unwrap();
    let d_poly = minor_poly(&j).poly;
    // strip x^order and all factors of (x - 1)
    let order = d_poly.order().expect("minor is nonzero");
    let mut interesting = d_poly
        .divide_exact(&IntPoly::monomial(BigInt::from(1), order))
        .expect("x^order divides");
    let x_minus_one = IntPoly::from_i64(&[-1, 1]);
    while let Some(q) = interesting.divide_exact(&x_minus_one) {
        interesting = q;
    }
    if interesting.degree() == Some(0) {
        return Err(Error::invalid(
            "minor has no roots besides 0 and 1; the cell cannot carry a second node",
        ));
    }
    let c0 = interesting.squarefree_part()?.to_rat().monic();
    let mut worklist: Vec<RatPoly> = vec![c0];
    let mut last_err: Option<Error> = None;
    while !worklist.is_empty() {
        // branches in order of increasing modulus degree
        let pos = (0..worklist.len())
            .min_by_key(|&i| worklist[i].degree().unwrap_or(0))
            .unwrap();
        let modulus = worklist.remove(pos);
        match try_type_ii_branch(cert, wprime, &transform, cell, &modulus) {
            Ok(Some(witness)) => return Ok(witness),
            Ok(None) => continue,
            Err(Error::DynamicSplit { left, right }) => {
                worklist.push(left);
                worklist.push(right);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::invalid(format!(
            "no root of the minor for cell {:?} has the required power pattern",
            cell
        ))
    }))
}

fn unique_min(candidates: &[usize], wprime: &WeightVector) -> Option<usize> {
    let best = candidates.iter().map(|&i| wprime.get(i)).min()?;
    let hits: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&i| wprime.get(i) == best)
        .collect();
    if hits.len() == 1 {
        Some(hits[0])
    } else {
        None
    }
}

fn try_type_ii_branch(
    cert: &ConeCertificate,
    wprime: &WeightVector,
    transform: &AffineTransform,
    cell: [usize; 4],
    modulus: &RatPoly,
) -> Result<Option<Witness>> {
    let n = wprime.n();
    let ring = CoeffRing::dynamic(modulus.clone())?;
    let beta = ring_generator(&ring);
    // power-coincidence pattern: each power value at most twice
    let mut coincide = [[false; 4]; 4];
    for a in 0..4 {
        for b in (a + 1)..4 {
            let gap = (cell[b] - cell[a]) as u64;
            let distinct = beta
                .pow(gap)
                .sub(&crate::ring::ring_one(&ring))
                .decide_invertible()?;
            coincide[a][b] = !distinct;
            coincide[b][a] = !distinct;
        }
        coincide[a][a] = true;
    }
    let class_size = |a: usize| (0..4).filter(|&b| coincide[a][b]).count();
    if (0..4).any(|a| class_size(a) >= 3) {
        return Ok(None);
    }
    let j = IndexSet4::new(cell).unwrap();
    let d_poly = minor_poly(&j).poly;
    let mult = multiplicity_at_elem(&d_poly, &beta)?;
    assert!(
        (1..=2).contains(&mult),
        "root multiplicity {} is impossible when no three powers coincide",
        mult
    );
    // second-monomial selection set
    let mut selection: Vec<usize> = vec![];
    for i in 0..=n {
        if cell.contains(&i) {
            continue;
        }
        let mut k4 = vec![cell[1], cell[2], cell[3], i];
        k4.sort_unstable();
        let minor = minor_poly(&IndexSet4::from_slice(&k4)?).poly;
        if eval_intpoly_at_elem(&minor, &beta).decide_invertible()? {
            selection.push(i);
        }
    }
    assert!(
        !selection.is_empty(),
        "second-monomial selection set is empty for cell {:?}",
        cell
    );
    let Some(i5) = unique_min(&selection, wprime) else {
        return Err(Error::NonGenericWeight(format!(
            "tied minimizer over the selection set {:?}",
            selection
        )));
    };
    // all four replaced minors must be nonzero at beta
    let report = vanishing_pattern(&[cell[0], cell[1], cell[2], cell[3], i5], &beta)?;
    for k in 0..4 {
        assert!(
            !report.entries[k].1,
            "replaced minor omitting {} vanishes at the chosen root",
            report.entries[k].0
        );
    }
    assert!(report.entries[4].1, "the cell minor must vanish at its own root");

    let v = wprime.get(i5) / BigRational::from_integer(BigInt::from(mult as i64));
    let expected_val = wprime.get(i5).clone();
    let tau0 = max_weight(wprime) * four() + BigRational::one();
    let (b, solved) = with_precision(tau0, |tau| {
        for h in 1..=10i64 {
            let b = PuiseuxTrunc::constant(beta.clone()).add(&PuiseuxTrunc::monomial(
                &ring,
                ring_from_i64(&ring, h),
                v.clone(),
            ));
            let dval = eval_intpoly_at_series(&d_poly, &b.truncate_to(tau)).valuation()?;
            if dval != expected_val {
                continue;
            }
            let solved = solve_node_system(&ring, &b, cell, wprime, tau)?;
            check_solution_valuations(&solved, cell, wprime)?;
            return Ok((b, solved));
        }
        Err(Error::PrecisionExhausted(
            "no perturbation coefficient made the cell minor certifiably nonzero".into(),
        ))
    })?;
    Ok(Some(assemble(
        cert,
        &ring,
        &b,
        cell,
        solved,
        wprime,
        transform.clone(),
    )))
}

/// One three-point marked cell with a hidden tie: the second node is a
/// perturbed primitive `d`-th root of unity.
pub fn witness_type_iii(w: &WeightVector, cert: &ConeCertificate) -> Result<Witness> {
    let ConeCertificate::TypeIII { sigma, d, tie, .. } = cert else {
        return Err(Error::invalid("certificate is not of type III"));
    };
    require_interior(w, cert)?;
    let diagram = newton_diagram(w);
    let cell_index = diagram
        .cells
        .iter()
        .position(|c| c.support == *sigma)
        .ok_or_else(|| Error::NonGenericWeight("marked cell is not an exact face".into()))?;
    let (wprime, transform) = normalize(w, cell_index)?;
    let n = wprime.n();
    let [i1, _i2, _i3] = *sigma;
    // the congruent indices with small positive weight need a unique
    // minimizer when present
    let i4 = tie[0].min(tie[1]);
    let wtie = wprime.get(i4).clone();
    if !wtie.is_positive() {
        return Err(Error::NonGenericWeight("tie weight must be positive".into()));
    }
    let congruent_small: Vec<usize> = (0..=n)
        .filter(|&s| {
            (s as i64 - i1 as i64).rem_euclid(*d as i64) == 0
                && wprime.get(s).is_positive()
                && wprime.get(s) <= &wtie
        })
        .collect();
    if !congruent_small.is_empty() && unique_min(&congruent_small, &wprime).is_none() {
        return Err(Error::NonGenericWeight(
            "tied minimizer among the congruent indices".into(),
        ));
    }
    let mut j4vec = vec![sigma[0], sigma[1], sigma[2], i4];
    j4vec.sort_unstable();
    let j4 = [j4vec[0], j4vec[1], j4vec[2], j4vec[3]];
    let ring = CoeffRing::cyclotomic(*d);
    let beta = ring_generator(&ring);
    let b = PuiseuxTrunc::constant(beta).add(&PuiseuxTrunc::t_pow(&ring, wtie.clone()));
    let d_poly = minor_poly(&IndexSet4::new(j4).unwrap()).poly;
    let tau0 = max_weight(&wprime) * four() + &wtie * four() + BigRational::one();
    let solved = with_precision(tau0, |tau| {
        let dval = eval_intpoly_at_series(&d_poly, &b.truncate_to(tau)).valuation()?;
        assert_eq!(
            dval, wtie,
            "cell minor at the perturbed root of unity must have the tie valuation"
        );
        let solved = solve_node_system(&ring, &b, j4, &wprime, tau)?;
        check_solution_valuations(&solved, j4, &wprime)?;
        Ok(solved)
    })?;
    Ok(assemble(cert, &ring, &b, j4, solved, &wprime, transform))
}

/// Check a witness against a weight vector: valuations, vanishing at both
/// nodes up to truncation, and consistency of the diagram with the
/// certificate.
pub fn verify_witness(w: &WeightVector, witness: &Witness, strictness: Strictness) -> VerifyReport {
    fn push(checks: &mut Vec<Check>, name: &str, passed: bool, detail: String) {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
    let mut checks: Vec<Check> = vec![];
    let n = w.n();
    let count_ok = witness.coefficients.len() == n + 1;
    push(
        &mut checks,
        "coefficient_count",
        count_ok,
        format!("{} coefficients for n = {}", witness.coefficients.len(), n),
    );
    let wprime = witness.transform.apply(w);
    let transform_ok = wprime == witness.normalized_weight;
    push(
        &mut checks,
        "transform_consistency",
        transform_ok,
        "recorded normalized weights match the transform".into(),
    );
    if !count_ok {
        return VerifyReport { checks };
    }
    // valuations
    let mut val_ok = true;
    let mut val_detail = String::new();
    for (i, c) in witness.coefficients.iter().enumerate() {
        match c.valuation() {
            Ok(v) => {
                if &v != wprime.get(i) {
                    val_ok = false;
                    val_detail = format!(
                        "coefficient {} has valuation {} instead of {}",
                        i,
                        v,
                        wprime.get(i)
                    );
                    break;
                }
            }
            Err(e) => {
                val_ok = false;
                val_detail = format!("coefficient {}: {}", i, e);
                break;
            }
        }
    }
    push(
        &mut checks,
        "valuations",
        val_ok,
        if val_ok {
            "val(c_i) = w_i exactly, nonzero leading coefficients".into()
        } else {
            val_detail
        },
    );
    // node residues
    let ring = &witness.ring;
    let zero_check = |name: &str, series: &PuiseuxTrunc, checks: &mut Vec<Check>| {
        let passed = series.is_zero_up_to_trunc();
        let detail = if passed {
            match series.trunc() {
                crate::puiseux::Trunc::Exact => "vanishes exactly".to_string(),
                crate::puiseux::Trunc::Order(t) => format!("vanishes modulo t^{}", t),
            }
        } else {
            let (e, _) = series.leading().unwrap();
            format!("nonzero residue of valuation {}", e)
        };
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    };
    let mut f_at_one = PuiseuxTrunc::zero(ring);
    let mut df_at_one = PuiseuxTrunc::zero(ring);
    for (i, c) in witness.coefficients.iter().enumerate() {
        f_at_one = f_at_one.add(c);
        df_at_one = df_at_one.add(&c.mul(&PuiseuxTrunc::from_i64(ring, i as i64)));
    }
    zero_check("node_one_value", &f_at_one, &mut checks);
    zero_check("node_one_derivative", &df_at_one, &mut checks);
    let mut f_at_b = PuiseuxTrunc::zero(ring);
    let mut df_at_b = PuiseuxTrunc::zero(ring);
    let mut bpow = PuiseuxTrunc::one(ring);
    for (i, c) in witness.coefficients.iter().enumerate() {
        let term = c.mul(&bpow);
        f_at_b = f_at_b.add(&term);
        df_at_b = df_at_b.add(&term.mul(&PuiseuxTrunc::from_i64(ring, i as i64)));
        bpow = bpow.mul(&witness.b);
    }
    zero_check("node_b_value", &f_at_b, &mut checks);
    zero_check("node_b_derivative", &df_at_b, &mut checks);
    // the second node must differ from the first
    let b_minus_one = witness.b.sub(&PuiseuxTrunc::one(ring));
    push(
        &mut checks,
        "nodes_distinct",
        !b_minus_one.is_zero_up_to_trunc(),
        "b differs from 1".into(),
    );
    // diagram consistency with the certificate
    let desc = descriptor_for(n, &witness.certificate.data());
    let strict = matches!(strictness, Strictness::Interior);
    let diagram_ok = satisfies(w, &desc, strict);
    push(
        &mut checks,
        "diagram_match",
        diagram_ok,
        format!(
            "weights {} the certificate's cone constraints",
            if diagram_ok { "satisfy" } else { "violate" }
        ),
    );
    VerifyReport { checks }
}
