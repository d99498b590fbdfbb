//! Forward verification: sample polynomials with two double roots by
//! construction, expand them over exact series, and check that the
//! resulting valuation vectors classify as members with the slope/length
//! and residual-root structure they must have.

use crate::classifier::classify_limited;
use crate::error::{Error, Result};
use crate::newton::{newton_diagram, residual_polynomial, valuation_profile, WeightVector};
use crate::puiseux::PuiseuxTrunc;
use crate::ring::{ring_generator, CoeffRing, RingElem, RingRef};
#[cfg(test)]
use crate::ring::ring_from_i64;
use num::rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Expand `lead * (x-1)^2 (x-b)^2 * prod (x - r)` over exact series and
/// return the coefficients with their valuation vector. The first node is
/// fixed at 1; `b` must differ from it and every root must be nonzero.
pub fn forward_map(
    node_b: &PuiseuxTrunc,
    simple_roots: &[PuiseuxTrunc],
    lead: &PuiseuxTrunc,
) -> Result<(Vec<PuiseuxTrunc>, WeightVector)> {
    let ring = node_b.ring().clone();
    let one = PuiseuxTrunc::one(&ring);
    if node_b.sub(&one).is_zero_up_to_trunc() {
        return Err(Error::invalid("the second node must differ from 1"));
    }
    if node_b.is_zero_up_to_trunc() || lead.is_zero_up_to_trunc() {
        return Err(Error::invalid("nodes and leading coefficient must be nonzero"));
    }
    for r in simple_roots {
        if r.is_zero_up_to_trunc() {
            return Err(Error::invalid("simple roots must be nonzero"));
        }
    }
    let mut coeffs: Vec<PuiseuxTrunc> = vec![lead.clone()];
    let mul_linear = |coeffs: &mut Vec<PuiseuxTrunc>, root: &PuiseuxTrunc| {
        let mut next = vec![PuiseuxTrunc::zero(&ring); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(root));
        }
        *coeffs = next;
    };
    mul_linear(&mut coeffs, &one);
    mul_linear(&mut coeffs, &one);
    mul_linear(&mut coeffs, node_b);
    mul_linear(&mut coeffs, node_b);
    for r in simple_roots {
        mul_linear(&mut coeffs, r);
    }
    let mut vals = Vec::with_capacity(coeffs.len());
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero_up_to_trunc() {
            return Err(Error::invalid(format!(
                "coefficient {} vanished: the sample lies outside the torus",
                i
            )));
        }
        vals.push(c.valuation()?);
    }
    let w = WeightVector::new(vals)?;
    Ok((coeffs, w))
}

/// A sampled point: the inputs that generated it plus the expansion.
pub struct ForwardSample {
    pub ring: RingRef,
    pub node_b: PuiseuxTrunc,
    pub simple_roots: Vec<PuiseuxTrunc>,
    pub lead: PuiseuxTrunc,
    pub coefficients: Vec<PuiseuxTrunc>,
    pub weight: WeightVector,
}

/// One random series `m * zeta^a * t^v (+ optional higher term)` over the
/// given cyclotomic ring.
fn sample_series<R: Rng>(ring: &RingRef, zeta: &RingElem, rng: &mut R) -> PuiseuxTrunc {
    let order = ring.cyclotomic_order().unwrap_or(1);
    let coeff_at = |rng: &mut R| -> RingElem {
        let m = loop {
            let m = rng.gen_range(-3..=3i64);
            if m != 0 {
                break m;
            }
        };
        let a = rng.gen_range(0..order.max(1));
        zeta.pow(a).scale(&BigRational::from_integer(m.into()))
    };
    let v = crate::sampling::sample_rational(rng, -4, 4, 4);
    let mut terms = vec![(v.clone(), coeff_at(rng))];
    if rng.gen_bool(0.5) {
        let delta = crate::sampling::sample_rational(rng, 1, 4, 4);
        terms.push((&v + delta, coeff_at(rng)));
    }
    PuiseuxTrunc::from_terms(ring, terms, crate::puiseux::Trunc::Exact)
}

/// Sample a forward point at degree `n`; `None` when the draw degenerated
/// (coefficient outside the torus, node collision).
pub fn sample_forward<R: Rng>(n: usize, rng: &mut R) -> Option<ForwardSample> {
    assert!(n >= 4);
    let order = [1u64, 2, 3, 4, 5, 6][rng.gen_range(0..6)];
    let ring = CoeffRing::cyclotomic(order);
    let zeta = ring_generator(&ring);
    let node_b = sample_series(&ring, &zeta, rng);
    let lead = sample_series(&ring, &zeta, rng);
    let simple_roots: Vec<PuiseuxTrunc> = (0..n - 4).map(|_| sample_series(&ring, &zeta, rng)).collect();
    match forward_map(&node_b, &simple_roots, &lead) {
        Ok((coefficients, weight)) => Some(ForwardSample {
            ring,
            node_b,
            simple_roots,
            lead,
            coefficients,
            weight,
        }),
        Err(_) => None,
    }
}

#[derive(Debug, Default)]
pub struct CrossValidateReport {
    pub samples: usize,
    pub resampled: usize,
    pub failures: Vec<String>,
    pub histogram: BTreeMap<&'static str, usize>,
}

impl CrossValidateReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The multiset of root valuations with multiplicity, as (valuation,
/// count) pairs sorted by descending valuation (matching the profile
/// order of the diagram, whose slopes increase).
fn root_valuation_profile(sample: &ForwardSample) -> Result<Vec<(BigRational, usize)>> {
    let mut counts: BTreeMap<BigRational, usize> = BTreeMap::new();
    let mut add = |v: BigRational, c: usize| {
        *counts.entry(v).or_insert(0) += c;
    };
    add(BigRational::from_integer(0.into()), 2); // the node at 1
    add(sample.node_b.valuation()?, 2);
    for r in &sample.simple_roots {
        add(r.valuation()?, 1);
    }
    Ok(counts.into_iter().rev().collect())
}

/// Validate one sample: classification, slope/length profile, residual
/// roots with multiplicities.
pub fn validate_sample(sample: &ForwardSample) -> Result<&'static str> {
    let w = &sample.weight;
    let classification = classify_limited(w, 1);
    if !classification.member {
        return Err(Error::invalid(format!(
            "forward sample classified as non-member: w = {:?}, reason {:?}",
            w.entries(),
            classification.refusal_reason
        )));
    }
    let diagram = newton_diagram(w);
    let profile = valuation_profile(&diagram);
    let expected = root_valuation_profile(sample)?;
    if profile != expected {
        return Err(Error::invalid(format!(
            "diagram profile {:?} does not match root valuations {:?}",
            profile, expected
        )));
    }
    // residual roots: group the roots by valuation, then by leading
    // coefficient; each group's total multiplicity must match the
    // residual polynomial of the corresponding cell
    let mut roots: Vec<(&PuiseuxTrunc, usize)> = vec![(&sample.node_b, 2)];
    let one = PuiseuxTrunc::one(&sample.ring);
    roots.push((&one, 2));
    for r in &sample.simple_roots {
        roots.push((r, 1));
    }
    for cell in &diagram.cells {
        let residual = residual_polynomial(&sample.coefficients, cell, w)?;
        let v = -cell.slope.clone();
        let mut groups: Vec<(RingElem, usize)> = vec![];
        for (root, mult) in &roots {
            if root.valuation()? != v {
                continue;
            }
            let lead = root.leading().unwrap().1.clone();
            match groups.iter_mut().find(|(g, _)| *g == lead) {
                Some((_, m)) => *m += mult,
                None => groups.push((lead, *mult)),
            }
        }
        for (alpha, mult) in groups {
            let got = residual.root_multiplicity(&alpha)?;
            if got as usize != mult {
                return Err(Error::invalid(format!(
                    "residual multiplicity mismatch on cell {:?}: got {}, expected {}",
                    cell.support, got, mult
                )));
            }
        }
    }
    Ok(classification.certificates[0].type_name())
}

/// Sample `sample_count` forward points at degree `n` and validate each;
/// failures are collected, never raised.
pub fn cross_validate(n: usize, sample_count: usize, seed: u64) -> CrossValidateReport {
    assert!((4..=10).contains(&n), "cross validation supports 4 <= n <= 10");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CrossValidateReport::default();
    while report.samples < sample_count {
        let Some(sample) = sample_forward(n, &mut rng) else {
            report.resampled += 1;
            continue;
        };
        report.samples += 1;
        match validate_sample(&sample) {
            Ok(kind) => {
                *report.histogram.entry(kind).or_insert(0) += 1;
            }
            Err(e) => report.failures.push(format!(
                "sample {} (seed {}): {}",
                report.samples, seed, e
            )),
        }
    }
    report
}

/// Count forward samples whose valuation vector equals `target` (used as
/// a bounded negative control: the count must stay at zero for weight
/// vectors the classifier refuses).
pub fn negative_control_sampling(
    n: usize,
    target: &WeightVector,
    sample_count: usize,
    seed: u64,
) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    let mut drawn = 0;
    while drawn < sample_count {
        let Some(sample) = sample_forward(n, &mut rng) else {
            drawn += 1;
            continue;
        };
        drawn += 1;
        if sample.weight == *target {
            hits += 1;
        }
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    #[test]
    fn forward_examples() {
        let ring = CoeffRing::rationals();
        // lead t, b = t, one simple root t^-1: valuations (2,1,0,0,0,1)
        let b = PuiseuxTrunc::t_pow(&ring, rat_int(1));
        let lead = PuiseuxTrunc::t_pow(&ring, rat_int(1));
        let simple = vec![PuiseuxTrunc::t_pow(&ring, rat_int(-1))];
        let (_, w) = forward_map(&b, &simple, &lead).unwrap();
        assert_eq!(
            w.entries().to_vec(),
            [2, 1, 0, 0, 0, 1].map(rat_int).to_vec()
        );

        // b = -1 - t, simple root t^2, lead 1: valuations (2,0,1,0,1,0)
        let b = PuiseuxTrunc::from_i64(&ring, -1).sub(&PuiseuxTrunc::t_pow(&ring, rat_int(1)));
        let simple = vec![PuiseuxTrunc::t_pow(&ring, rat_int(2))];
        let lead = PuiseuxTrunc::one(&ring);
        let (_, w) = forward_map(&b, &simple, &lead).unwrap();
        assert_eq!(
            w.entries().to_vec(),
            [2, 0, 1, 0, 1, 0].map(rat_int).to_vec()
        );

        // n = 4: no simple roots, b = 2, lead 1: all valuations zero
        let b = PuiseuxTrunc::from_i64(&ring, 2);
        let (_, w) = forward_map(&b, &[], &PuiseuxTrunc::one(&ring)).unwrap();
        assert_eq!(w.entries().to_vec(), vec![rat_int(0); 5]);

        // degenerate draws refused
        assert!(forward_map(&PuiseuxTrunc::one(&ring), &[], &PuiseuxTrunc::one(&ring)).is_err());
        assert!(
            forward_map(&b, &[PuiseuxTrunc::zero(&ring)], &PuiseuxTrunc::one(&ring)).is_err()
        );
    }

    #[test]
    fn coefficient_collision_outside_torus() {
        let ring = CoeffRing::rationals();
        // (x-1)^2 (x+1)^2: the odd coefficients vanish... n = 4 with b = -1
        let b = PuiseuxTrunc::from_i64(&ring, -1);
        let r = forward_map(&b, &[], &PuiseuxTrunc::one(&ring));
        assert!(r.is_err());
    }

    #[test]
    fn profile_matches_on_fractional_valuations() {
        let ring = CoeffRing::rationals();
        let b = PuiseuxTrunc::t_pow(&ring, rat(1, 2));
        let simple = vec![PuiseuxTrunc::t_pow(&ring, rat(-3, 2))];
        let lead = PuiseuxTrunc::from_i64(&ring, 3);
        let (coeffs, w) = forward_map(&b, &simple, &lead).unwrap();
        let diagram = newton_diagram(&w);
        let profile = valuation_profile(&diagram);
        let sample = ForwardSample {
            ring: ring.clone(),
            node_b: b,
            simple_roots: simple,
            lead,
            coefficients: coeffs,
            weight: w,
        };
        assert_eq!(profile, root_valuation_profile(&sample).unwrap());
        assert!(validate_sample(&sample).is_ok());
    }

    #[test]
    fn small_cross_validation_run() {
        let report = cross_validate(5, 60, 7);
        assert_eq!(report.samples, 60);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(!report.histogram.is_empty());
    }

    #[test]
    fn engineered_equal_valuation_nodes_give_type_ii_or_iii() {
        // node at 1 and b = zeta_2 * (1 + t): equal valuations, root of
        // unity ratio: the certificate cannot be type I
        let ring = CoeffRing::cyclotomic(2);
        let zeta = ring_generator(&ring);
        let b = PuiseuxTrunc::constant(zeta)
            .add(&PuiseuxTrunc::monomial(&ring, ring_from_i64(&ring, -1), rat_int(1)));
        let simple = vec![PuiseuxTrunc::t_pow(&ring, rat_int(2))];
        let (_, w) = forward_map(&b, &simple, &PuiseuxTrunc::one(&ring)).unwrap();
        let r = classify_limited(&w, 1);
        assert!(r.member);
        assert_ne!(r.certificates[0].type_name(), "I");
    }

    #[test]
    fn distinct_node_valuations_give_type_i() {
        let ring = CoeffRing::rationals();
        let b = PuiseuxTrunc::t_pow(&ring, rat_int(1));
        let simple = vec![PuiseuxTrunc::t_pow(&ring, rat_int(-1))];
        let lead = PuiseuxTrunc::t_pow(&ring, rat_int(1));
        let (_, w) = forward_map(&b, &simple, &lead).unwrap();
        let r = classify_limited(&w, 1);
        assert!(r.member);
        assert_eq!(r.certificates[0].type_name(), "I");
    }
}
