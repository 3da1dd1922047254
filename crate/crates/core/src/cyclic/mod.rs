//! Finite simulator for the product group `Z_p x Z_m`.
//!
//! The first coordinate plays the role of a circle quotient: `chi(x, y) = x`
//! is a surjective homomorphism onto `Z_p` with kernel `{0} x Z_m`. The
//! normalized counting measure (mass `1/(p m)` per element) stands in for
//! the invariant measure, and every statement is computed with exact
//! integer counts: a density `t` becomes the integer count `t * p * m`.
//!
//! `p` is required to be prime so the quotient direction has no proper
//! nontrivial subgroups, the right finite analogue of connectedness for
//! the statements simulated here.

mod cover;
mod sweep;
mod triple;

pub use cover::sample_cover_experiment;
pub use sweep::{exhaustive_triple_select_sweep, exhaustive_xs_sweep, TripleSweepSummary, XsSweepSummary};
pub use triple::interval_triple_select;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{Report, Verdict};

/// The group `Z_p x Z_m` with its projection to `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicProductSpace {
    p: u64,
    m: u64,
}

impl CyclicProductSpace {
    pub fn new(p: u64, m: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Contract(format!("p = {p} must be prime")));
        }
        if m == 0 {
            return Err(Error::Contract("kernel size m must be positive".into()));
        }
        if p.checked_mul(m).is_none() || p * m > 1 << 40 {
            return Err(Error::EnumerationGuard(format!(
                "group order {p} * {m} is beyond desk scale"
            )));
        }
        Ok(CyclicProductSpace { p, m })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn total(&self) -> u64 {
        self.p * self.m
    }

    pub fn reduce(&self, x: i128, y: i128) -> (u64, u64) {
        (x.rem_euclid(self.p as i128) as u64, y.rem_euclid(self.m as i128) as u64)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A canonical subset of `Z_p x Z_m`: reduced residues, sorted, distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSet {
    space: CyclicProductSpace,
    elems: Vec<(u64, u64)>,
}

impl CyclicSet {
    pub fn new<I: IntoIterator<Item = (u64, u64)>>(
        space: CyclicProductSpace,
        elems: I,
    ) -> Result<Self> {
        let mut v: Vec<(u64, u64)> = elems
            .into_iter()
            .map(|(x, y)| (x % space.p, y % space.m))
            .collect();
        v.sort_unstable();
        v.dedup();
        Ok(CyclicSet { space, elems: v })
    }

    /// The whole group.
    pub fn full(space: CyclicProductSpace) -> Self {
        let mut elems = Vec::with_capacity(space.total() as usize);
        for x in 0..space.p {
            for y in 0..space.m {
                elems.push((x, y));
            }
        }
        CyclicSet { space, elems }
    }

    pub fn space(&self) -> &CyclicProductSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[(u64, u64)] {
        &self.elems
    }

    pub fn contains(&self, e: (u64, u64)) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    pub fn translate(&self, dx: u64, dy: u64) -> CyclicSet {
        let (dx, dy) = (dx % self.space.p, dy % self.space.m);
        let mut elems: Vec<(u64, u64)> = self
            .elems
            .iter()
            .map(|&(x, y)| ((x + dx) % self.space.p, (y + dy) % self.space.m))
            .collect();
        elems.sort_unstable();
        CyclicSet {
            space: self.space.clone(),
            elems,
        }
    }

    pub fn sumset(&self, other: &CyclicSet) -> Result<CyclicSet> {
        self.check_space(other)?;
        let mut elems: Vec<(u64, u64)> = Vec::with_capacity(self.len() * other.len());
        for &(ax, ay) in &self.elems {
            for &(bx, by) in &other.elems {
                elems.push(((ax + bx) % self.space.p, (ay + by) % self.space.m));
            }
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(CyclicSet {
            space: self.space.clone(),
            elems,
        })
    }

    /// Exact fiber counts `|A /\ chi^-1(x)|` for every residue `x`.
    pub fn fiber_profile(&self) -> Vec<u64> {
        let mut profile = vec![0u64; self.space.p as usize];
        for &(x, _) in &self.elems {
            profile[x as usize] += 1;
        }
        profile
    }

    /// Distinct residues of the projection, sorted.
    pub fn chi_support(&self) -> Vec<u64> {
        let mut xs: Vec<u64> = self.elems.iter().map(|&(x, _)| x).collect();
        xs.dedup();
        xs
    }

    fn check_space(&self, other: &CyclicSet) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Contract(format!(
                "sets live in different spaces: Z_{} x Z_{} vs Z_{} x Z_{}",
                self.space.p, self.space.m, other.space.p, other.space.m
            )));
        }
        Ok(())
    }
}

/// A window of consecutive residues `start, start+1, .., start+length`
/// modulo `p` (so `length + 1` residues in total).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalWindow {
    pub start: u64,
    pub length: u64,
}

impl IntervalWindow {
    pub fn new(space: &CyclicProductSpace, start: u64, length: u64) -> Result<Self> {
        if length >= space.p() {
            return Err(Error::Contract(format!(
                "window of {} residues does not fit in Z_{}",
                length + 1,
                space.p()
            )));
        }
        Ok(IntervalWindow {
            start: start % space.p(),
            length,
        })
    }

    pub fn contains(&self, space: &CyclicProductSpace, x: u64) -> bool {
        let offset = (x + space.p() - self.start) % space.p();
        offset <= self.length
    }

    /// Offset of `x` from the window start, when inside.
    pub fn offset_of(&self, space: &CyclicProductSpace, x: u64) -> Option<u64> {
        let offset = (x + space.p() - self.start) % space.p();
        (offset <= self.length).then_some(offset)
    }
}

/// Exact convolution counts `N(g) = #{(a, b) in A x B : a + b = g}`.
/// Elements with count zero are omitted; the counts of the stored entries
/// sum to `|A| * |B|`.
pub fn convolution_counts(
    a: &CyclicSet,
    b: &CyclicSet,
) -> Result<BTreeMap<(u64, u64), u64>> {
    a.check_space(b)?;
    let space = a.space();
    let mut counts = BTreeMap::new();
    for &(ax, ay) in a.elems() {
        for &(bx, by) in b.elems() {
            *counts
                .entry((((ax + bx) % space.p), ((ay + by) % space.m)))
                .or_insert(0u64) += 1;
        }
    }
    Ok(counts)
}

/// The popular product set at integer threshold `t_count`: all `g` whose
/// convolution count is at least `t_count`. Thresholds run from 1 (the
/// full sumset) up to `min(|A|, |B|)`.
pub fn popular_product(a: &CyclicSet, b: &CyclicSet, t_count: u64) -> Result<CyclicSet> {
    a.check_space(b)?;
    if t_count == 0 || t_count > a.len().min(b.len()) as u64 {
        return Err(Error::Contract(format!(
            "popular threshold {t_count} out of range 1..={}",
            a.len().min(b.len())
        )));
    }
    let counts = convolution_counts(a, b)?;
    CyclicSet::new(
        a.space().clone(),
        counts
            .into_iter()
            .filter(|&(_, n)| n >= t_count)
            .map(|(g, _)| g),
    )
}

/// Maximum projection of `X` at shift period `w`, on the identity lift of
/// the residues to `[0, p-1]`: the sum over residue classes modulo `w` of
/// the largest fiber count in the class.
///
/// The lift must not wrap: the projection support has to fit inside a
/// window of at most `p - 1` consecutive integers as laid out, i.e.
/// `max(support) - min(support) <= p - 2`. Callers with configurations
/// that straddle the wrap point translate them first.
pub fn max_projection(x: &CyclicSet, w: u64) -> Result<u64> {
    if w == 0 {
        return Err(Error::Contract("shift period w must be positive".into()));
    }
    if x.is_empty() {
        return Ok(0);
    }
    let support = x.chi_support();
    let (min, max) = (support[0], support[support.len() - 1]);
    if max - min > x.space().p() - 2 {
        return Err(Error::Contract(format!(
            "projection support spans residues {min}..{max}, which wraps in Z_{}",
            x.space().p()
        )));
    }
    let profile = x.fiber_profile();
    let mut pi = 0u64;
    for class in 0..w.min(x.space().p()) {
        let mut best = 0u64;
        let mut pos = class;
        while pos < x.space().p() {
            best = best.max(profile[pos as usize]);
            pos += w;
        }
        pi += best;
    }
    Ok(pi)
}

/// `|A + B| >= min(|A| + |B| - 1, p)` in `Z_p` (Cauchy-Davenport). Requires
/// `m = 1`; failure is a bug signal, not a reportable outcome.
pub fn cauchy_davenport_check(a: &CyclicSet, b: &CyclicSet) -> Result<Report> {
    a.check_space(b)?;
    if a.space().m() != 1 {
        return Err(Error::Contract(
            "cauchy-davenport check needs the plain cyclic group (m = 1)".into(),
        ));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::Contract("cauchy-davenport needs non-empty sets".into()));
    }
    let lhs = a.sumset(b)?.len() as u64;
    let rhs = (a.len() as u64 + b.len() as u64 - 1).min(a.space().p());
    if lhs < rhs {
        return Err(Error::Invariant(format!(
            "cauchy-davenport failed in Z_{}: |A+B| = {lhs} < {rhs}, A = {:?}, B = {:?}",
            a.space().p(),
            a.elems(),
            b.elems()
        )));
    }
    Ok(Report::new("cauchy-davenport")
        .metric_usize("a_size", a.len())
        .metric_usize("b_size", b.len())
        .metric_usize("p", a.space().p() as usize)
        .metric_usize("sumset_size", lhs as usize)
        .metric_usize("bound", rhs as usize)
        .metric_usize("slack", (lhs - rhs) as usize)
        .verdict(Verdict::Pass))
}
