//! Boundedness certificates for ratios of minors on the positive
//! weight domain. A ratio num/den with balanced boundary content is
//! certified bounded (by 1) when den - num has only nonnegative
//! coefficients; the sampled mode evaluates both sides at random
//! positive integer weights and reports any violation exactly.

use super::poly::SparsePoly;
use super::{free_count, PluckerTable};
use crate::error::{Error, Result};
use crate::pluecker::RatioVector;
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn require_st0(alpha: &RatioVector) -> Result<()> {
    let defects = alpha.st0_defects();
    if let Some(position) = defects.iter().position(|&d| d != 0) {
        return Err(Error::NotSt0 { position: position + 1 });
    }
    Ok(())
}

fn check_boundary_balance(table: &PluckerTable, alpha: &RatioVector) {
    let bc = table.minors()[0].boundary().len();
    let mut total = vec![0i64; bc];
    for (idx, a) in alpha.support() {
        for (t, &b) in total.iter_mut().zip(table.get(&idx).boundary()) {
            *t += a * b as i64;
        }
    }
    assert!(
        total.iter().all(|&t| t == 0),
        "boundary content must cancel for a balanced ratio"
    );
}

/// Product of the minors on one side of the ratio, smallest factors
/// first to keep intermediate term counts down.
fn side_product(
    table: &PluckerTable,
    alpha: &RatioVector,
    positive: bool,
    term_cap: usize,
) -> Result<SparsePoly> {
    let mut factors: Vec<&SparsePoly> = Vec::new();
    for (idx, a) in alpha.support() {
        let e = if positive { a } else { -a };
        for _ in 0..e.max(0) {
            factors.push(table.get(&idx).free());
        }
    }
    factors.sort_by_key(|f| f.num_terms());
    let mut acc = SparsePoly::one(free_count(alpha.n()));
    for f in factors {
        acc = acc.mul(f, term_cap)?;
    }
    Ok(acc)
}

pub struct SubtractionFreeOutcome {
    /// den - num has only nonnegative coefficients.
    pub certified: bool,
    /// Term count of den - num.
    pub difference_terms: usize,
    /// A negative term (exponents, coefficient) when not certified.
    pub witness: Option<(Vec<u8>, i64)>,
}

/// Symbolic boundedness certificate: expands both sides of the ratio
/// and checks den - num coefficientwise. Requires a balanced ratio.
pub fn subtraction_free_check(
    table: &PluckerTable,
    alpha: &RatioVector,
    term_cap: usize,
) -> Result<SubtractionFreeOutcome> {
    require_st0(alpha)?;
    check_boundary_balance(table, alpha);
    let num = side_product(table, alpha, true, term_cap)?;
    let den = side_product(table, alpha, false, term_cap)?;
    let diff = den.sub(&num)?;
    Ok(SubtractionFreeOutcome {
        certified: diff.all_coeffs_nonneg(),
        difference_terms: diff.num_terms(),
        witness: diff.negative_term(),
    })
}

/// Numerator and denominator values at the given positive weights.
pub fn eval_ratio(
    table: &PluckerTable,
    alpha: &RatioVector,
    weights: &[BigInt],
) -> (BigInt, BigInt) {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for (idx, a) in alpha.support() {
        let v = table.get(&idx).eval(weights);
        let p = v.pow(a.unsigned_abs() as u32);
        if a > 0 {
            num *= p;
        } else {
            den *= p;
        }
    }
    (num, den)
}

pub struct SampleOutcome {
    pub samples: usize,
    /// Weights with num > den, if any were found.
    pub violation: Option<Vec<u64>>,
}

/// Evaluates the ratio at `samples` random integer weight vectors in
/// {1..100}^d and reports the first point where it exceeds 1.
pub fn bounded_on_samples(
    table: &PluckerTable,
    alpha: &RatioVector,
    samples: usize,
    seed: u64,
) -> Result<SampleOutcome> {
    require_st0(alpha)?;
    check_boundary_balance(table, alpha);
    let d = free_count(alpha.n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let w: Vec<u64> = (0..d).map(|_| rng.gen_range(1..=100)).collect();
        let wb: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        let (num, den) = eval_ratio(table, alpha, &wb);
        if num > den {
            return Ok(SampleOutcome {
                samples: s + 1,
                violation: Some(w),
            });
        }
    }
    Ok(SampleOutcome {
        samples,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::PluckerIndex;

    fn ratio(n: u8, sets: &[(&[u8], i64)]) -> RatioVector {
        let support: Vec<(PluckerIndex, i64)> = sets
            .iter()
            .map(|(elems, a)| (PluckerIndex::new(n, elems.to_vec()).unwrap(), *a))
            .collect();
        RatioVector::from_support(n, &support).unwrap()
    }

    #[test]
    fn order_two_koteljanskii() {
        // det . empty / (x11 x22) is balanced and bounded by 1; in
        // coordinates det = [1 2], empty = [3 4], x11 = [1 3], x22 = [2 4]
        let table = PluckerTable::new(2).unwrap();
        let bounded = ratio(
            2,
            &[(&[1, 2], 1), (&[3, 4], 1), (&[1, 3], -1), (&[2, 4], -1)],
        );
        let out = subtraction_free_check(&table, &bounded, 10_000).unwrap();
        assert!(out.certified);
        let s = bounded_on_samples(&table, &bounded, 50, 1).unwrap();
        assert!(s.violation.is_none());

        let unbounded = bounded.negated();
        let out = subtraction_free_check(&table, &unbounded, 10_000).unwrap();
        assert!(!out.certified);
        assert!(out.witness.is_some());
        let s = bounded_on_samples(&table, &unbounded, 50, 1).unwrap();
        assert!(s.violation.is_some());
    }

    #[test]
    fn st0_required() {
        let table = PluckerTable::new(2).unwrap();
        let off = ratio(2, &[(&[1, 2], 1), (&[1, 3], -1)]);
        assert!(matches!(
            subtraction_free_check(&table, &off, 10_000),
            Err(Error::NotSt0 { .. })
        ));
        assert!(matches!(
            bounded_on_samples(&table, &off, 5, 1),
            Err(Error::NotSt0 { .. })
        ));
    }

    #[test]
    fn trivial_ratio_is_certified() {
        let table = PluckerTable::new(2).unwrap();
        let zero = RatioVector::zero(2);
        let out = subtraction_free_check(&table, &zero, 10_000).unwrap();
        assert!(out.certified);
        assert_eq!(out.difference_terms, 0);
    }
}
