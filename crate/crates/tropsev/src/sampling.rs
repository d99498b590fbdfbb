//! Seeded random generators for cone data and interior rational points,
//! used by the validation suites: every generated point satisfies the
//! strict inequalities of its cone's H-description by construction.

use crate::classifier::{descriptor_for, satisfies, ConeData};
use crate::minors::{is_exceptional_affine, IndexSet4};
use crate::newton::{AffineTransform, WeightVector};
use crate::rat_int;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use rand::Rng;

/// Random rational with numerator in `[lo, hi]` and denominator up to
/// `max_den`.
pub fn sample_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(lo..=hi)),
        BigInt::from(rng.gen_range(1..=max_den)),
    )
}

/// Pairwise distinct positive integers (small, to keep the witness
/// truncation orders modest).
fn distinct_positive<R: Rng>(rng: &mut R, count: usize) -> Vec<BigRational> {
    let hi = (count as i64 + 3).max(12);
    let mut out: Vec<BigRational> = Vec::with_capacity(count);
    while out.len() < count {
        let q = rat_int(rng.gen_range(1..=hi));
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

pub fn sample_type_i_data<R: Rng>(n: usize, rng: &mut R) -> ConeData {
    loop {
        let split = rng.gen_range(2..=(n - 2));
        let l1 = rng.gen_range(0..split.saturating_sub(1));
        let r1 = rng.gen_range((l1 + 2)..=split);
        let l2 = rng.gen_range(r1..(n - 1));
        let r2 = rng.gen_range((l2 + 2)..=n);
        let m1 = rng.gen_range(l1 + 1..r1);
        let m2 = rng.gen_range(l2 + 1..r2);
        if r1 <= l2 {
            return ConeData::TypeI {
                cell_a: [l1, m1, r1],
                cell_b: [l2, m2, r2],
            };
        }
    }
}

pub fn sample_type_ii_data<R: Rng>(n: usize, rng: &mut R) -> ConeData {
    loop {
        let mut seen: Vec<usize> = vec![];
        while seen.len() < 4 {
            let c = rng.gen_range(0..=n);
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen.sort_unstable();
        let cell = [seen[0], seen[1], seen[2], seen[3]];
        let j = IndexSet4::new(cell).unwrap();
        if matches!(is_exceptional_affine(&j), Some(d) if d.scale == 1) {
            continue;
        }
        return ConeData::TypeII { cell };
    }
}

pub fn sample_type_iii_data<R: Rng>(n: usize, rng: &mut R) -> ConeData {
    loop {
        let mut tri: Vec<usize> = vec![];
        while tri.len() < 3 {
            let c = rng.gen_range(0..=n);
            if !tri.contains(&c) {
                tri.push(c);
            }
        }
        tri.sort_unstable();
        let sigma = [tri[0], tri[1], tri[2]];
        let g = num::integer::gcd(sigma[2] - sigma[0], sigma[1] - sigma[0]);
        if g <= 1 {
            continue;
        }
        let divisors: Vec<usize> = (2..=g).filter(|d| g % d == 0).collect();
        let d = divisors[rng.gen_range(0..divisors.len())];
        let non_congruent: Vec<usize> = (0..=n)
            .filter(|&j| (j as i64 - sigma[0] as i64).rem_euclid(d as i64) != 0)
            .collect();
        if non_congruent.len() < 2 {
            continue;
        }
        let a = rng.gen_range(0..non_congruent.len());
        let mut b = rng.gen_range(0..non_congruent.len());
        while b == a {
            b = rng.gen_range(0..non_congruent.len());
        }
        return ConeData::TypeIII {
            sigma,
            d: d as u64,
            tie: [non_congruent[a.min(b)], non_congruent[a.max(b)]],
        };
    }
}

/// A rational point in the relative interior of the cone, produced in
/// normalized coordinates and then pushed through a random invertible
/// reparametrization.
pub fn sample_interior_point<R: Rng>(n: usize, data: &ConeData, rng: &mut R) -> WeightVector {
    let w = match data {
        ConeData::TypeI { cell_a, cell_b } => {
            let [l1, m1, r1] = *cell_a;
            let [l2, m2, r2] = *cell_b;
            // right cell at the zero level; left cell on a line of slope
            // -v crossing zero strictly between the cells (at the shared
            // endpoint when they are adjacent)
            let v = sample_rational(rng, 1, 6, 3);
            let pivot = BigRational::new(BigInt::from((r1 + l2) as i64), BigInt::from(2));
            let line_a = |j: usize| -> BigRational {
                -(&v) * (BigRational::from_integer(BigInt::from(j as i64)) - &pivot)
            };
            let mut entries = vec![BigRational::zero(); n + 1];
            let mut bumps = distinct_positive(rng, n + 1).into_iter();
            for (j, entry) in entries.iter_mut().enumerate() {
                let in_a = j == l1 || j == m1 || j == r1;
                let in_b = j == l2 || j == m2 || j == r2;
                *entry = if in_a {
                    line_a(j)
                } else if in_b {
                    BigRational::zero()
                } else {
                    line_a(j).max(BigRational::zero()) + bumps.next().unwrap()
                };
            }
            WeightVector::new(entries).unwrap()
        }
        ConeData::TypeII { cell } => {
            let mut entries = vec![BigRational::zero(); n + 1];
            let mut bumps = distinct_positive(rng, n + 1).into_iter();
            for (j, entry) in entries.iter_mut().enumerate() {
                if !cell.contains(&j) {
                    *entry = bumps.next().unwrap();
                }
            }
            WeightVector::new(entries).unwrap()
        }
        ConeData::TypeIII { sigma, d, tie } => {
            let mut entries = vec![BigRational::zero(); n + 1];
            let tie_value = sample_rational(rng, 1, 6, 3);
            let mut bumps = distinct_positive(rng, n + 1).into_iter();
            for (j, entry) in entries.iter_mut().enumerate() {
                if sigma.contains(&j) {
                    continue;
                }
                if tie.contains(&j) {
                    *entry = tie_value.clone();
                } else if (j as i64 - sigma[0] as i64).rem_euclid(*d as i64) != 0 {
                    *entry = &tie_value + bumps.next().unwrap();
                } else {
                    *entry = bumps.next().unwrap();
                }
            }
            WeightVector::new(entries).unwrap()
        }
    };
    debug_assert!(
        satisfies(&w, &descriptor_for(n, data), true),
        "sampled point must be interior for {:?}: {:?}",
        data,
        w
    );
    let t = AffineTransform {
        alpha: sample_rational(rng, -5, 5, 3),
        shift: sample_rational(rng, -5, 5, 3),
    };
    t.apply(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn sampled_points_are_interior_members() {
        let mut rng = StdRng::seed_from_u64(4242);
        for n in 4..=7usize {
            for _ in 0..10 {
                for data in [
                    sample_type_i_data(n, &mut rng),
                    sample_type_ii_data(n, &mut rng),
                    sample_type_iii_data(n, &mut rng),
                ] {
                    let w = sample_interior_point(n, &data, &mut rng);
                    let desc = descriptor_for(n, &data);
                    assert!(satisfies(&w, &desc, true), "not interior: {:?}", data);
                    let r = classify(&w);
                    assert!(r.member, "sampled point rejected for {:?}", data);
                    assert!(
                        r.certificates.iter().any(|c| c.data() == data),
                        "certificate {:?} missing among {:?}",
                        data,
                        r.certificates
                    );
                }
            }
        }
    }
}
