//! Random covering of popular product sets.
//!
//! Draw `c` translates of `A` by elements sampled i.i.d. uniformly from
//! `B` (with replacement). Every popular element `g` (convolution count at
//! least `t_count`) stays uncovered with probability at most
//! `(1 - t_count/|B|)^c`, so both the mean uncovered fraction and every
//! per-element frequency must stay within binomial concentration of that
//! exact rational bound. Comparisons against the 4-sigma tolerance are
//! done in exact arithmetic by squaring, never through floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::{MetricValue, Report, Verdict};

use super::{popular_product, CyclicSet};

/// Runs `trials` independent rounds of the covering experiment and checks
/// the empirical uncovered fractions against the exact theoretical bound.
///
/// Per-trial randomness comes from one seed with the trial index as the
/// stream number, so trials are independent and the whole experiment is
/// reproducible from `(inputs, seed)`.
pub fn sample_cover_experiment(
    a: &CyclicSet,
    b: &CyclicSet,
    t_count: u64,
    c: u64,
    trials: u64,
    seed: u64,
) -> Result<Report> {
    if a.space() != b.space() {
        return Err(Error::Contract("sets live in different spaces".into()));
    }
    if c == 0 || trials == 0 {
        return Err(Error::Contract("need c >= 1 and trials >= 1".into()));
    }
    let popular = popular_product(a, b, t_count)?;
    let base = Report::new("sample-cover")
        .seed(seed)
        .metric_usize("a_size", a.len())
        .metric_usize("b_size", b.len())
        .metric_usize("t_count", t_count as usize)
        .metric_usize("c", c as usize)
        .metric_usize("trials", trials as usize)
        .metric_usize("popular_size", popular.len());
    if popular.is_empty() {
        return Ok(base
            .metric_text("note", "popular set is empty; nothing to cover")
            .verdict(Verdict::Vacuous));
    }

    let b_elems = b.elems();
    let pop_elems = popular.elems();
    let space = a.space();
    let mut uncovered_sum: u64 = 0;
    let mut uncovered_max: u64 = 0;
    let mut per_element: Vec<u64> = vec![0; pop_elems.len()];
    let mut covered = vec![false; pop_elems.len()];
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        covered.iter_mut().for_each(|c| *c = false);
        for _ in 0..c {
            let &(bx, by) = &b_elems[rng.gen_range(0..b_elems.len())];
            for &(ax, ay) in a.elems() {
                let g = ((ax + bx) % space.p(), (ay + by) % space.m());
                if let Ok(idx) = pop_elems.binary_search(&g) {
                    covered[idx] = true;
                }
            }
        }
        let mut uncovered = 0u64;
        for (idx, &cov) in covered.iter().enumerate() {
            if !cov {
                uncovered += 1;
                per_element[idx] += 1;
            }
        }
        uncovered_sum += uncovered;
        uncovered_max = uncovered_max.max(uncovered);
    }

    let rat = |n: u64, d: u64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let mean = rat(uncovered_sum, trials * pop_elems.len() as u64);
    let max_frac = rat(uncovered_max, pop_elems.len() as u64);
    // Exact per-element bound: (1 - t/|B|)^c.
    let bound = rat(b.len() as u64 - t_count, b.len() as u64).pow(c as i32);
    let worst_count = per_element.iter().copied().max().unwrap();
    let worst_freq = rat(worst_count, trials);

    let mean_ok = within_tolerance(&mean, &bound, trials);
    let per_elem_ok = within_tolerance(&worst_freq, &bound, trials);
    let verdict = if mean_ok && per_elem_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(base
        .metric("mean_uncovered", MetricValue::Rat(mean))
        .metric("max_uncovered", MetricValue::Rat(max_frac))
        .metric("bound", MetricValue::Rat(bound))
        .metric("worst_element_freq", MetricValue::Rat(worst_freq))
        .metric_usize("mean_within_tolerance", mean_ok as usize)
        .metric_usize("elements_within_tolerance", per_elem_ok as usize)
        .verdict(verdict))
}

/// `value <= bound + 4 sqrt(bound (1-bound) / trials) + 1/trials`, decided
/// exactly: move the non-radical part to the left and compare squares.
fn within_tolerance(value: &BigRational, bound: &BigRational, trials: u64) -> bool {
    let one = BigRational::from_integer(BigInt::from(1));
    let t = BigRational::from_integer(BigInt::from(trials));
    let excess = value - bound - &one / &t;
    if excess <= BigRational::zero() {
        return true;
    }
    let variance = bound * (&one - bound) / t;
    &excess * &excess <= BigRational::from_integer(BigInt::from(16)) * variance
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CyclicProductSpace;
    use crate::generate::cyclic_interval;

    #[test]
    fn full_group_is_covered_by_one_sample() {
        let sp = CyclicProductSpace::new(11, 1).unwrap();
        let g = CyclicSet::full(sp);
        let rep = sample_cover_experiment(&g, &g, 11, 1, 50, 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep
            .metrics
            .iter()
            .any(|(n, v)| n == "mean_uncovered" && v.to_string() == "0"));
    }

    #[test]
    fn interval_experiment_stays_within_bound() {
        let sp = CyclicProductSpace::new(101, 1).unwrap();
        let a = cyclic_interval(&sp, 0, 30).unwrap();
        let rep = sample_cover_experiment(&a, &a, 10, 25, 200, 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn single_trial_is_well_defined() {
        let sp = CyclicProductSpace::new(13, 1).unwrap();
        let a = cyclic_interval(&sp, 0, 6).unwrap();
        let rep = sample_cover_experiment(&a, &a, 2, 3, 1, 9).unwrap();
        assert!(matches!(rep.verdict, Verdict::Pass | Verdict::Fail));
    }

    #[test]
    fn experiment_is_reproducible() {
        let sp = CyclicProductSpace::new(101, 1).unwrap();
        let a = cyclic_interval(&sp, 3, 25).unwrap();
        let b = cyclic_interval(&sp, 10, 20).unwrap();
        let r1 = sample_cover_experiment(&a, &b, 5, 10, 100, 42).unwrap();
        let r2 = sample_cover_experiment(&a, &b, 5, 10, 100, 42).unwrap();
        assert_eq!(r1.records(), r2.records());
    }

    #[test]
    fn tolerance_comparison_is_exact() {
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // bound 1/4, trials 100: tolerance = 4*sqrt(3/1600) + 1/100 ~ 0.183.
        assert!(within_tolerance(&rat(1, 4), &rat(1, 4), 100));
        assert!(within_tolerance(&rat(43, 100), &rat(1, 4), 100));
        assert!(!within_tolerance(&rat(45, 100), &rat(1, 4), 100));
    }
}
