//! Brute-force ground truth: the smallest subset of `B` whose translates
//! of `A` reach a threshold.
//!
//! Subsets are enumerated by size and, within a size, in lexicographic
//! order of index tuples over the sorted elements of `B`; the first hit
//! wins, which fixes the tie-break. A 1-D bitmask fast path handles the
//! small ranges the exhaustive suites sweep; its winner is re-verified
//! through the generic set arithmetic before being returned.

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, PointSet};

use super::{SourceLabel, Strategy, TranslateWitness};

const ENUMERATION_GUARD: u128 = 100_000_000;

/// Finds a minimum-cardinality `S` (subset of `B`, `|S| <= max_size`) with
/// `|A + S| >= threshold`, or `None` when no such subset exists.
pub fn minimal_witness_oracle(
    a: &PointSet,
    b: &PointSet,
    threshold: usize,
    max_size: usize,
) -> Result<Option<TranslateWitness>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(
            "oracle inputs live in different dimensions".into(),
        ));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::Contract("oracle needs non-empty sets".into()));
    }
    if max_size == 0 {
        return Err(Error::Contract("oracle needs max_size >= 1".into()));
    }
    let n = b.len();
    let kmax = max_size.min(n);
    let mut total: u128 = 0;
    for k in 1..=kmax {
        total = total.saturating_add(binomial(n as u128, k as u128));
        if total > ENUMERATION_GUARD {
            return Err(Error::EnumerationGuard(format!(
                "oracle would enumerate more than {ENUMERATION_GUARD} candidate subsets"
            )));
        }
    }

    // The bitmask path enumerates the same subsets in the same order, so
    // when it applies its answer (positive or negative) is final.
    if let Some(outcome) = bitmask_search(a, b, threshold, kmax)? {
        return Ok(outcome);
    }
    generic_search(a, b, threshold, kmax)
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > ENUMERATION_GUARD {
            return acc;
        }
    }
    acc
}

/// 1-D fast path for coordinate ranges that fit in a 128-bit window.
/// The outer `None` means the path does not apply; the inner option is
/// the final oracle answer.
#[allow(clippy::type_complexity)]
fn bitmask_search(
    a: &PointSet,
    b: &PointSet,
    threshold: usize,
    kmax: usize,
) -> Result<Option<Option<TranslateWitness>>> {
    if a.dim() != 1 {
        return Ok(None);
    }
    let (Some(av), Some(bv)) = (flat_i64(a), flat_i64(b)) else {
        return Ok(None);
    };
    let (amin, amax) = (av[0], av[av.len() - 1]);
    let (bmin, bmax) = (bv[0], bv[bv.len() - 1]);
    let span = (amax - amin) as i128 + (bmax - bmin) as i128;
    if span >= 128 {
        return Ok(None);
    }
    let a_mask: u128 = av.iter().fold(0u128, |m, &v| m | (1u128 << (v - amin)));

    let mut found: Option<Vec<usize>> = None;
    'sizes: for k in 1..=kmax {
        let mut combo = Combinations::new(bv.len(), k);
        while let Some(idx) = combo.next() {
            let mask = idx
                .iter()
                .fold(0u128, |m, &i| m | (a_mask << (bv[i] - bmin)));
            if mask.count_ones() as usize >= threshold {
                found = Some(idx.to_vec());
                break 'sizes;
            }
        }
    }
    let Some(idx) = found else { return Ok(Some(None)) };
    let selected = PointSet::new(
        1,
        idx.iter().map(|&i| b.points()[i].clone()).collect(),
    )?;
    let w = TranslateWitness::evaluated(
        SourceLabel::B,
        selected,
        a,
        threshold as i64,
        Strategy::ExhaustiveMinimal,
    )?;
    // The bitmask count and the set arithmetic must agree exactly.
    if !w.meets_target() {
        return Err(Error::Invariant(format!(
            "bitmask oracle and set arithmetic disagree on {w} for A = {a}, B = {b}"
        )));
    }
    Ok(Some(Some(w)))
}

fn flat_i64(s: &PointSet) -> Option<Vec<i64>> {
    s.iter().map(|p| i64::try_from(&p.coords()[0]).ok()).collect()
}

fn generic_search(
    a: &PointSet,
    b: &PointSet,
    threshold: usize,
    kmax: usize,
) -> Result<Option<TranslateWitness>> {
    let pts = b.points();
    for k in 1..=kmax {
        let mut combo = Combinations::new(pts.len(), k);
        while let Some(idx) = combo.next() {
            let selected: Vec<LatticePoint> = idx.iter().map(|&i| pts[i].clone()).collect();
            let sel = PointSet::new(b.dim(), selected)?;
            if a.sumset_len(&sel)? >= threshold {
                let w = TranslateWitness::evaluated(
                    SourceLabel::B,
                    sel,
                    a,
                    threshold as i64,
                    Strategy::ExhaustiveMinimal,
                )?;
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Lexicographic k-combinations of `0..n`, without allocation per step.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.idx[i] != i + self.n - k {
                break;
            }
        }
        self.idx[i] += 1;
        for j in i + 1..k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(&self.idx)
    }
}
