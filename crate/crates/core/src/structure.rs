//! Structural analysis of point sets: parallel-line covers, dense-line
//! detection, and additive-inequality checkers.
//!
//! The checkers assert statements that are theorems on their stated
//! preconditions, so a checker failure is a bug-detection signal: it
//! returns [`Error::Invariant`] with a dump of the offending instance
//! rather than a failing report.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{Direction, LatticePoint, PointSet};
use crate::report::{MetricValue, Report, Verdict};

/// A direction together with the decomposition of a set into fibers of
/// parallel lines. Fibers are sorted by decreasing size, ties by the
/// lexicographic order of their representatives.
#[derive(Debug, Clone)]
pub struct LineCover {
    dir: Direction,
    fibers: Vec<(LatticePoint, PointSet)>,
}

impl LineCover {
    pub fn dir(&self) -> &Direction {
        &self.dir
    }

    /// Number of lines in the cover.
    pub fn r(&self) -> usize {
        self.fibers.len()
    }

    /// Fibers as (lexicographically minimal representative, fiber).
    pub fn fibers(&self) -> &[(LatticePoint, PointSet)] {
        &self.fibers
    }

    pub fn top_fiber(&self) -> &PointSet {
        &self.fibers[0].1
    }

    pub fn min_fiber_size(&self) -> usize {
        self.fibers.last().map(|(_, f)| f.len()).unwrap_or(0)
    }

    pub fn covered_len(&self) -> usize {
        self.fibers.iter().map(|(_, f)| f.len()).sum()
    }

    /// True when the fibers partition exactly the given set.
    pub fn covers_exactly(&self, a: &PointSet) -> bool {
        self.covered_len() == a.len() && self.fibers.iter().all(|(_, f)| a.contains_all(f))
    }
}

/// The minimal cover of `A` by lines parallel to `dir`: exactly the fiber
/// partition of the orthogonal projection.
pub fn line_cover(a: &PointSet, dir: &Direction) -> Result<LineCover> {
    let fibers_map = a.project_orthogonal(dir)?;
    let mut fibers: Vec<(LatticePoint, PointSet)> = fibers_map.into_iter().collect();
    fibers.sort_by(|(ra, fa), (rb, fb)| fb.len().cmp(&fa.len()).then_with(|| ra.cmp(rb)));
    Ok(LineCover {
        dir: dir.clone(),
        fibers,
    })
}

/// Candidate directions for cover searches: canonical pairwise difference
/// directions. When there are more than `budget` point pairs, a seeded
/// sample of `budget` pairs is used instead. Candidates come back sorted,
/// so downstream scans are deterministic.
pub fn candidate_directions(a: &PointSet, budget: usize, seed: u64) -> Vec<Direction> {
    let pts = a.points();
    let n = pts.len();
    let mut dirs: BTreeSet<Direction> = BTreeSet::new();
    let pairs = n.saturating_mul(n.saturating_sub(1)) / 2;
    if pairs <= budget {
        for i in 0..n {
            for j in i + 1..n {
                if let Ok(d) = Direction::between(&pts[i], &pts[j]) {
                    dirs.insert(d);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            if let Ok(d) = Direction::between(&pts[i], &pts[j]) {
                dirs.insert(d);
            }
        }
    }
    dirs.into_iter().collect()
}

/// Per-direction fiber statistics, cheap enough to run over thousands of
/// candidate directions.
#[derive(Debug, Clone)]
pub(crate) struct FiberStats {
    /// Fiber sizes in decreasing order.
    pub sizes: Vec<usize>,
}

impl FiberStats {
    pub fn r(&self) -> usize {
        self.sizes.len()
    }

    pub fn top(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn singleton_fibers(&self) -> usize {
        self.sizes.iter().filter(|&&s| s == 1).count()
    }
}

/// Fiber sizes of `A` for one direction. Uses an `i64` shadow of the
/// coordinates when they fit; both paths group by the same integer linear
/// quotient map, so results are identical. The plane and space cases are
/// specialized because cover detection scans thousands of directions.
pub(crate) fn fiber_stats(
    rows_i64: Option<&[Vec<i64>]>,
    a: &PointSet,
    dir: &Direction,
) -> FiberStats {
    let mut sizes: Vec<usize> = if let (Some(rows), Some(dvec)) = (rows_i64, dir.to_i64()) {
        let j = dir.pivot();
        match dvec.len() {
            2 => {
                let t = 1 - j;
                let mut keys: Vec<i128> = rows
                    .iter()
                    .map(|row| {
                        row[t] as i128 * dvec[j] as i128 - row[j] as i128 * dvec[t] as i128
                    })
                    .collect();
                keys.sort_unstable();
                run_lengths(&keys)
            }
            3 => {
                let (t0, t1) = match j {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let mut keys: Vec<(i128, i128)> = rows
                    .iter()
                    .map(|row| {
                        (
                            row[t0] as i128 * dvec[j] as i128 - row[j] as i128 * dvec[t0] as i128,
                            row[t1] as i128 * dvec[j] as i128 - row[j] as i128 * dvec[t1] as i128,
                        )
                    })
                    .collect();
                keys.sort_unstable();
                run_lengths(&keys)
            }
            dim => {
                let mut keys: Vec<[i128; 8]> = Vec::with_capacity(rows.len());
                for row in rows {
                    let mut key = [0i128; 8];
                    let mut t_out = 0;
                    for t in 0..dim {
                        if t == j {
                            continue;
                        }
                        key[t_out] =
                            row[t] as i128 * dvec[j] as i128 - row[j] as i128 * dvec[t] as i128;
                        t_out += 1;
                    }
                    keys.push(key);
                }
                keys.sort_unstable();
                run_lengths(&keys)
            }
        }
    } else {
        let mut keys: Vec<Vec<BigInt>> = a.iter().map(|p| dir.line_key(p)).collect();
        keys.sort_unstable();
        run_lengths(&keys)
    };
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    FiberStats { sizes }
}

fn run_lengths<T: PartialEq>(sorted: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        out.push(j - i);
        i = j;
    }
    out
}

/// The best cover over candidate directions: minimal `r`, ties broken by
/// larger top fiber, then by lexicographically smaller direction.
/// Deterministic given `(A, budget, seed)`.
pub fn best_line_cover(a: &PointSet, direction_budget: usize, seed: u64) -> Result<LineCover> {
    if a.is_empty() {
        return Err(Error::Contract("cover of an empty set".into()));
    }
    if a.len() == 1 {
        return line_cover(a, &Direction::axis(a.dim(), 0));
    }
    let dirs = candidate_directions(a, direction_budget, seed);
    let rows = a.to_i64_rows();
    let mut best: Option<(usize, usize, Direction)> = None;
    for dir in dirs {
        let stats = fiber_stats(rows.as_deref(), a, &dir);
        let cand = (stats.r(), stats.top(), dir);
        let better = match &best {
            None => true,
            Some((r, top, d)) => {
                cand.0 < *r || (cand.0 == *r && (cand.1 > *top || (cand.1 == *top && cand.2 < *d)))
            }
        };
        if better {
            best = Some(cand);
        }
    }
    let (_, _, dir) = best.expect("at least one candidate direction for |A| >= 2");
    line_cover(a, &dir)
}

/// Looks for a line direction that is simultaneously dense for `A` and `B`:
/// some fiber of `A` has at least `|A|/d` points and some fiber of `B` at
/// least `|B|/d`, compared exactly. Returns the first hit in canonical
/// direction order, or `None`.
pub fn detect_dense_line(
    a: &PointSet,
    b: &PointSet,
) -> Result<Option<(Direction, PointSet, PointSet)>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(
            "dense-line detection needs equal ambient dimensions".into(),
        ));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::Contract("dense-line detection on empty sets".into()));
    }
    if a.len() != b.len() {
        return Err(Error::Contract(format!(
            "dense-line detection needs |A| = |B|, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let d = a.dim();
    let mut dirs: BTreeSet<Direction> = BTreeSet::new();
    dirs.extend(candidate_directions(a, usize::MAX, 0));
    dirs.extend(candidate_directions(b, usize::MAX, 0));
    if dirs.is_empty() {
        // Two singletons: every direction works, use the first canonical one.
        dirs.insert(Direction::axis(d, 0));
    }
    let rows_a = a.to_i64_rows();
    let rows_b = b.to_i64_rows();
    for dir in dirs {
        let top_a = fiber_stats(rows_a.as_deref(), a, &dir).top();
        let top_b = fiber_stats(rows_b.as_deref(), b, &dir).top();
        // |fiber| >= |A|/d as rationals: d * |fiber| >= |A|.
        if d * top_a >= a.len() && d * top_b >= b.len() {
            let dense_a = densest_fiber(a, &dir)?;
            let dense_b = densest_fiber(b, &dir)?;
            return Ok(Some((dir, dense_a, dense_b)));
        }
    }
    Ok(None)
}

fn densest_fiber(a: &PointSet, dir: &Direction) -> Result<PointSet> {
    let cover = line_cover(a, dir)?;
    Ok(cover.fibers()[0].1.clone())
}

// ---------------------------------------------------------------------------
// Inequality checkers
// ---------------------------------------------------------------------------

/// Lower bound for the doubling of a full-dimensional set:
/// `|A+A| >= (d+1)|A| - d(d+1)/2` (Freiman's lemma).
pub fn check_freiman(a: &PointSet) -> Result<Report> {
    let d = a.dim();
    if a.affine_dim()? != d {
        return Err(Error::Contract(format!(
            "freiman check needs a full-dimensional set: affine dim {} < ambient {d}",
            a.affine_dim()?
        )));
    }
    let lhs = a.sumset_len(a)?;
    let rhs = (d as i64 + 1) * a.len() as i64 - (d as i64 * (d as i64 + 1)) / 2;
    let slack = lhs as i64 - rhs;
    if slack < 0 {
        return Err(Error::Invariant(format!(
            "freiman inequality failed: |A+A| = {lhs} < {rhs} for A = {a}"
        )));
    }
    Ok(Report::new("freiman")
        .metric_usize("set_size", a.len())
        .metric_usize("dim", d)
        .metric_usize("sumset_size", lhs)
        .metric_i64("bound", rhs)
        .metric_i64("slack", slack)
        .verdict(Verdict::Pass))
}

/// Asymmetric lower bound `|A+B| >= |A| + d|B| - d(d+1)/2` for
/// full-dimensional `A` and `|A| >= |B|` (Ruzsa).
pub fn check_ruzsa_asymmetric(a: &PointSet, b: &PointSet) -> Result<Report> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch("ruzsa check dimension mismatch".into()));
    }
    let d = a.dim();
    if a.affine_dim()? != d {
        return Err(Error::Contract(
            "ruzsa check needs a full-dimensional first set".into(),
        ));
    }
    if a.len() < b.len() || b.is_empty() {
        return Err(Error::Contract("ruzsa check needs |A| >= |B| >= 1".into()));
    }
    let lhs = a.sumset_len(b)?;
    let rhs = a.len() as i64 + d as i64 * b.len() as i64 - (d as i64 * (d as i64 + 1)) / 2;
    let slack = lhs as i64 - rhs;
    if slack < 0 {
        return Err(Error::Invariant(format!(
            "ruzsa inequality failed: |A+B| = {lhs} < {rhs} for A = {a}, B = {b}"
        )));
    }
    Ok(Report::new("ruzsa")
        .metric_usize("a_size", a.len())
        .metric_usize("b_size", b.len())
        .metric_usize("dim", d)
        .metric_usize("sumset_size", lhs)
        .metric_i64("bound", rhs)
        .metric_i64("slack", slack)
        .verdict(Verdict::Pass))
}

/// Line-cover lower bound for `|A+B|`: with `A` on `r` parallel lines, `B`
/// on `q` lines of the same direction, `|A| >= |B|`, `dim(A) = d >= 2`,
///
/// `|A+B| >= |A| + (d + 1 - 1/(r-d+2) - 1/(q-c+2))|B| - (d-1)(r+q)`,
///
/// where `c = d` if `B` is full-dimensional and `c = dim(B)` otherwise.
/// Evaluated in exact rational arithmetic.
pub fn check_m2_inequality(
    a: &PointSet,
    b: &PointSet,
    cover_a: &LineCover,
    cover_b: &LineCover,
) -> Result<Report> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch("m2 check dimension mismatch".into()));
    }
    if cover_a.dir() != cover_b.dir() {
        return Err(Error::Contract(
            "m2 check needs covers sharing one direction".into(),
        ));
    }
    if !cover_a.covers_exactly(a) || !cover_b.covers_exactly(b) {
        return Err(Error::Contract("m2 check covers must partition the sets".into()));
    }
    if a.len() < b.len() || b.is_empty() {
        return Err(Error::Contract("m2 check needs |A| >= |B| >= 1".into()));
    }
    let d = a.dim();
    if d < 2 || a.affine_dim()? != d {
        return Err(Error::Contract(
            "m2 check needs dim(A) = ambient d >= 2".into(),
        ));
    }
    let r = cover_a.r() as i64;
    let q = cover_b.r() as i64;
    let dim_b = b.affine_dim()?;
    let c = if dim_b == d { d as i64 } else { dim_b as i64 };
    let di = d as i64;
    let rat = |n: i64| BigRational::from_integer(BigInt::from(n));
    let coeff = rat(di + 1) - (rat(1) / rat(r - di + 2)) - (rat(1) / rat(q - c + 2));
    let rhs = rat(a.len() as i64) + coeff * rat(b.len() as i64) - rat((di - 1) * (r + q));
    let lhs = a.sumset_len(b)?;
    let slack = rat(lhs as i64) - rhs.clone();
    if slack < rat(0) {
        return Err(Error::Invariant(format!(
            "line-cover inequality failed: |A+B| = {lhs} < {rhs} for A = {a}, B = {b}, r = {r}, q = {q}, c = {c}"
        )));
    }
    Ok(Report::new("m2")
        .metric_usize("a_size", a.len())
        .metric_usize("b_size", b.len())
        .metric_usize("dim", d)
        .metric_i64("r", r)
        .metric_i64("q", q)
        .metric_i64("c", c)
        .metric_usize("sumset_size", lhs)
        .metric(
            "bound",
            MetricValue::Rat(rhs),
        )
        .metric("slack", MetricValue::Rat(slack))
        .verdict(Verdict::Pass))
}

/// Iterated-sumset upper bound `|kA| <= K^k |B|` with `K = |A+B|/|B|`
/// (Pluennecke-Ruzsa). Supported for `k` in `{2, 3}`; larger `k` would
/// blow up the exact enumeration.
pub fn check_plunnecke_ruzsa(a: &PointSet, b: &PointSet, k: u32) -> Result<Report> {
    if !(2..=3).contains(&k) {
        return Err(Error::EnumerationGuard(format!(
            "k-fold sumsets supported for k in {{2,3}}, got {k}"
        )));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch("pr check dimension mismatch".into()));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::Contract("pr check needs non-empty sets".into()));
    }
    let ab = a.sumset_len(b)?;
    let big_k = BigRational::new(BigInt::from(ab), BigInt::from(b.len()));
    let ka = a.iterated_sumset(k)?.len();
    let bound = big_k.pow(k as i32) * BigRational::from_integer(BigInt::from(b.len()));
    let lhs = BigRational::from_integer(BigInt::from(ka));
    if lhs > bound {
        return Err(Error::Invariant(format!(
            "pluennecke-ruzsa failed: |{k}A| = {ka} > {bound} for A = {a}, B = {b}"
        )));
    }
    Ok(Report::new("pr")
        .metric_usize("a_size", a.len())
        .metric_usize("b_size", b.len())
        .metric_usize("k", k as usize)
        .metric_rat("doubling", big_k)
        .metric_usize("k_fold_size", ka)
        .metric_rat("bound", bound)
        .verdict(Verdict::Pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{chr_family, grid};

    fn ps(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(dim, rows).unwrap()
    }

    #[test]
    fn line_cover_of_generator_family() {
        let a = chr_family(2, 5).unwrap();
        let cover = line_cover(&a, &Direction::axis(2, 1)).unwrap();
        assert_eq!(cover.r(), 2);
        assert_eq!(cover.fibers()[0].1.len(), 5);
        assert_eq!(cover.fibers()[1].1.len(), 5);
        assert!(cover.covers_exactly(&a));
    }

    #[test]
    fn line_cover_generic_direction_is_all_singletons() {
        let a = chr_family(2, 5).unwrap();
        let cover = line_cover(&a, &Direction::from_i64(&[7, 3]).unwrap()).unwrap();
        assert_eq!(cover.r(), a.len());
    }

    #[test]
    fn line_cover_collinear_single_line() {
        let a = ps(2, &[&[0, 0], &[1, 1], &[3, 3]]);
        let cover = line_cover(&a, &Direction::from_i64(&[1, 1]).unwrap()).unwrap();
        assert_eq!(cover.r(), 1);
    }

    #[test]
    fn best_cover_finds_the_two_line_direction() {
        let a = chr_family(2, 5).unwrap();
        let cover = best_line_cover(&a, usize::MAX, 0).unwrap();
        assert_eq!(cover.r(), 2);
        assert_eq!(cover.dir(), &Direction::axis(2, 1));
    }

    #[test]
    fn best_cover_diagonal_example() {
        let a = ps(2, &[&[0, 0], &[1, 1], &[2, 2], &[5, 7]]);
        let cover = best_line_cover(&a, usize::MAX, 0).unwrap();
        assert_eq!(cover.r(), 2);
        assert_eq!(cover.dir(), &Direction::from_i64(&[1, 1]).unwrap());
    }

    #[test]
    fn best_cover_single_point() {
        let a = ps(3, &[&[5, 5, 5]]);
        let cover = best_line_cover(&a, usize::MAX, 0).unwrap();
        assert_eq!(cover.r(), 1);
    }

    #[test]
    fn dense_line_hit_and_miss() {
        let a = chr_family(2, 10).unwrap();
        let hit = detect_dense_line(&a, &a).unwrap();
        let (dir, fa, fb) = hit.expect("generator family has a dense direction");
        assert_eq!(dir, Direction::axis(2, 1));
        assert_eq!(fa.len(), 10);
        assert_eq!(fb.len(), 10);

        let g = grid(2, 5).unwrap();
        assert!(detect_dense_line(&g, &g).unwrap().is_none());
    }

    #[test]
    fn dense_line_singletons() {
        let a = ps(2, &[&[3, 4]]);
        let b = ps(2, &[&[9, 1]]);
        let hit = detect_dense_line(&a, &b).unwrap().unwrap();
        assert_eq!(hit.1.len(), 1);
    }

    #[test]
    fn freiman_equality_family() {
        let a = chr_family(2, 3).unwrap();
        let report = check_freiman(&a).unwrap();
        let slack = report
            .metrics
            .iter()
            .find(|(n, _)| n == "slack")
            .unwrap()
            .1
            .clone();
        assert_eq!(slack, MetricValue::from_i64(0));
    }

    #[test]
    fn freiman_grid_slack_one() {
        let g = grid(2, 3).unwrap();
        let report = check_freiman(&g).unwrap();
        assert!(report
            .metrics
            .iter()
            .any(|(n, v)| n == "slack" && *v == MetricValue::from_i64(1)));
        assert!(report
            .metrics
            .iter()
            .any(|(n, v)| n == "sumset_size" && *v == MetricValue::from_usize(25)));
    }

    #[test]
    fn freiman_simplex_equality() {
        for d in 1..=4 {
            let a = crate::generate::simplex(d).unwrap();
            let report = check_freiman(&a).unwrap();
            assert!(report
                .metrics
                .iter()
                .any(|(n, v)| n == "slack" && *v == MetricValue::from_i64(0)));
        }
    }

    #[test]
    fn ruzsa_on_family_and_grid() {
        let a = chr_family(2, 3).unwrap();
        let rep = check_ruzsa_asymmetric(&a, &a).unwrap();
        assert!(rep
            .metrics
            .iter()
            .any(|(n, v)| n == "slack" && *v == MetricValue::from_i64(0)));

        let g = grid(2, 3).unwrap();
        let b = ps(2, &[&[0, 0], &[1, 0]]);
        let rep = check_ruzsa_asymmetric(&g, &b).unwrap();
        assert!(rep
            .metrics
            .iter()
            .any(|(n, v)| n == "sumset_size" && *v == MetricValue::from_usize(12)));
    }

    #[test]
    fn ruzsa_singleton_b() {
        let a = chr_family(2, 4).unwrap();
        let b = ps(2, &[&[1, 1]]);
        check_ruzsa_asymmetric(&a, &b).unwrap();
    }

    #[test]
    fn m2_family_example() {
        let a = chr_family(2, 5).unwrap();
        let dir = Direction::axis(2, 1);
        let cover = line_cover(&a, &dir).unwrap();
        let rep = check_m2_inequality(&a, &a, &cover, &cover).unwrap();
        assert!(rep
            .metrics
            .iter()
            .any(|(n, v)| n == "sumset_size" && *v == MetricValue::from_usize(27)));
        let bound = rep.metrics.iter().find(|(n, _)| n == "bound").unwrap();
        assert_eq!(bound.1, MetricValue::Rat(BigRational::from_integer(BigInt::from(26))));
    }

    #[test]
    fn m2_single_fiber_b() {
        // B is one fiber of the family, so dim(B) = 1 < d and c = 1.
        let a = chr_family(2, 5).unwrap();
        let dir = Direction::axis(2, 1);
        let cover_a = line_cover(&a, &dir).unwrap();
        let b = cover_a.fibers()[0].1.clone();
        let cover_b = line_cover(&b, &dir).unwrap();
        let rep = check_m2_inequality(&a, &b, &cover_a, &cover_b).unwrap();
        assert!(rep
            .metrics
            .iter()
            .any(|(n, v)| n == "c" && *v == MetricValue::from_i64(1)));
    }

    #[test]
    fn plunnecke_progressions_and_family() {
        let a = ps(1, &[&[0], &[1], &[2], &[3], &[4]]);
        check_plunnecke_ruzsa(&a, &a, 2).unwrap();

        let fam = chr_family(2, 3).unwrap();
        let rep = check_plunnecke_ruzsa(&fam, &fam, 3).unwrap();
        assert!(rep
            .metrics
            .iter()
            .any(|(n, v)| n == "k_fold_size" && *v == MetricValue::from_usize(28)));
    }

    #[test]
    fn plunnecke_k_guard() {
        let a = ps(1, &[&[0], &[1]]);
        assert!(matches!(
            check_plunnecke_ruzsa(&a, &a, 4),
            Err(Error::EnumerationGuard(_))
        ));
    }

    #[test]
    fn plunnecke_sparse_example() {
        let a = ps(1, &[&[0], &[1], &[10]]);
        let b = ps(1, &[&[0], &[1]]);
        let rep = check_plunnecke_ruzsa(&a, &b, 2).unwrap();
        assert!(rep
            .metrics
            .iter()
            .any(|(n, v)| n == "k_fold_size" && *v == MetricValue::from_usize(6)));
        assert!(rep.metrics.iter().any(|(n, v)| n == "doubling"
            && *v == MetricValue::Rat(BigRational::new(BigInt::from(5), BigInt::from(2)))));
    }
}
