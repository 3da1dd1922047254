//! Exact integer-lattice geometry: canonical point sets, sumsets, affine
//! dimension, line projections, and convex-position tests.
//!
//! Everything here is pure and exact. Point coordinates are arbitrary-
//! precision integers; convex-hull queries run over the rationals. No
//! floating point anywhere.

mod hull;

pub use hull::{in_convex_hull, in_convex_hull_lattice, QPoint};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A point of `Z^d` with arbitrary-precision coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    coords: Vec<BigInt>,
}

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Coordinates as `i64` if every one fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A canonical finite subset of `Z^d`: duplicate-free, sorted
/// lexicographically, every point of length `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl PointSet {
    /// Builds a canonical set, sorting and removing duplicates.
    pub fn new(dim: usize, mut points: Vec<LatticePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Contract("ambient dimension must be positive".into()));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "point {p} has {} coordinates, expected {dim}",
                    p.dim()
                )));
            }
        }
        points.sort();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    /// Like [`PointSet::new`] but rejects duplicate points instead of
    /// silently merging them. Returns the number of duplicates dropped.
    pub fn new_checked(dim: usize, points: Vec<LatticePoint>) -> Result<(Self, usize)> {
        let before = points.len();
        let set = PointSet::new(dim, points)?;
        Ok((set.clone(), before - set.len()))
    }

    pub fn from_rows(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        PointSet::new(
            dim,
            rows.iter().map(|r| LatticePoint::from_i64(r)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticePoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// True when `other` is a subset of `self`.
    pub fn contains_all(&self, other: &PointSet) -> bool {
        other.iter().all(|p| self.contains(p))
    }

    /// All coordinates as `i64` rows, or `None` if any coordinate overflows.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.points.iter().map(|p| p.to_i64()).collect()
    }

    pub fn translate(&self, t: &LatticePoint) -> Result<PointSet> {
        if t.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "translation vector has dim {}, set has dim {}",
                t.dim(),
                self.dim
            )));
        }
        // Translation preserves both distinctness and lexicographic order.
        Ok(PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.add(t)).collect(),
        })
    }

    pub fn without(&self, remove: &PointSet) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self
                .points
                .iter()
                .filter(|p| !remove.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(
                "union of sets with different ambient dimension".into(),
            ));
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        PointSet::new(self.dim, points)
    }

    /// The sumset `A + B = { a + b : a in A, b in B }` in canonical form.
    pub fn sumset(&self, other: &PointSet) -> Result<PointSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "sumset of dim {} with dim {}",
                self.dim, other.dim
            )));
        }
        if self.is_empty() || other.is_empty() {
            return Err(Error::Contract("sumset of an empty set".into()));
        }
        let mut out: Vec<LatticePoint> = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                out.push(a.add(b));
            }
        }
        out.sort();
        out.dedup();
        Ok(PointSet {
            dim: self.dim,
            points: out,
        })
    }

    /// `|A + B|` without materializing the canonical set twice.
    pub fn sumset_len(&self, other: &PointSet) -> Result<usize> {
        Ok(self.sumset(other)?.len())
    }

    /// The k-fold sumset `A + A + ... + A`.
    pub fn iterated_sumset(&self, k: u32) -> Result<PointSet> {
        if k == 0 {
            return Err(Error::Contract("iterated sumset needs k >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.sumset(self)?;
        }
        Ok(acc)
    }

    /// Dimension of the affine span, computed exactly.
    pub fn affine_dim(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::Contract("affine dimension of an empty set".into()));
        }
        let base = &self.points[0];
        let rows: Vec<Vec<BigInt>> = self.points[1..]
            .iter()
            .map(|p| p.sub(base).coords)
            .collect();
        Ok(integer_rank(rows))
    }

    /// Partitions the set into fibers of lines parallel to `dir`.
    ///
    /// Each fiber is keyed by its lexicographically minimal point, so keys
    /// stay integral; the partition is exactly the level-set decomposition
    /// of any linear map whose kernel is spanned by `dir`.
    pub fn project_orthogonal(&self, dir: &Direction) -> Result<BTreeMap<LatticePoint, PointSet>> {
        if dir.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "direction dim {} vs set dim {}",
                dir.dim(),
                self.dim
            )));
        }
        if self.is_empty() {
            return Err(Error::Contract("projecting an empty set".into()));
        }
        let mut groups: BTreeMap<Vec<BigInt>, Vec<LatticePoint>> = BTreeMap::new();
        for p in &self.points {
            groups
                .entry(dir.line_key(p))
                .or_default()
                .push(p.clone());
        }
        let mut out = BTreeMap::new();
        for (_, pts) in groups {
            // Input order is lexicographic, so the first point is the rep.
            let rep = pts[0].clone();
            out.insert(
                rep,
                PointSet {
                    dim: self.dim,
                    points: pts,
                },
            );
        }
        Ok(out)
    }

    /// The extreme points: those not expressible as a convex combination of
    /// the others, decided exactly over the rationals.
    pub fn extreme_points(&self) -> Result<PointSet> {
        if self.is_empty() {
            return Err(Error::Contract("extreme points of an empty set".into()));
        }
        let mut out = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            let others: Vec<&LatticePoint> = self
                .points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q)
                .collect();
            if others.is_empty() || !hull::point_in_hull_of(p, &others) {
                out.push(p.clone());
            }
        }
        Ok(PointSet {
            dim: self.dim,
            points: out,
        })
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// A canonical nonzero integer direction: gcd of the entries is 1 and the
/// first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction {
    vec: Vec<BigInt>,
}

impl Direction {
    pub fn new(vec: Vec<BigInt>) -> Result<Self> {
        if vec.iter().all(|c| c.is_zero()) {
            return Err(Error::Contract("direction must be nonzero".into()));
        }
        let mut g = BigInt::zero();
        for c in &vec {
            g = g.gcd(c);
        }
        let mut vec: Vec<BigInt> = vec.into_iter().map(|c| c / &g).collect();
        if vec
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
        {
            for c in &mut vec {
                *c = -&*c;
            }
        }
        Ok(Direction { vec })
    }

    pub fn from_i64(vec: &[i64]) -> Result<Self> {
        Direction::new(vec.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The i-th canonical basis direction in dimension `dim`.
    pub fn axis(dim: usize, i: usize) -> Self {
        let mut vec = vec![BigInt::zero(); dim];
        vec[i] = BigInt::from(1);
        Direction { vec }
    }

    /// The direction of the segment from `a` to `b`.
    pub fn between(a: &LatticePoint, b: &LatticePoint) -> Result<Self> {
        Direction::new(b.sub(a).coords)
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn vec(&self) -> &[BigInt] {
        &self.vec
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.vec.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    /// Index of the first nonzero (hence positive) entry.
    pub fn pivot(&self) -> usize {
        self.vec.iter().position(|c| !c.is_zero()).unwrap()
    }

    /// Identifies the line through `p` with this direction: the value of an
    /// integer linear map with kernel `span(dir)`, namely all cross terms
    /// `p_t * v_j - p_j * v_t` against the pivot coordinate `j`.
    pub fn line_key(&self, p: &LatticePoint) -> Vec<BigInt> {
        let j = self.pivot();
        let vj = &self.vec[j];
        let pj = &p.coords()[j];
        let mut key = Vec::with_capacity(self.dim() - 1);
        for t in 0..self.dim() {
            if t == j {
                continue;
            }
            key.push(&p.coords()[t] * vj - pj * &self.vec[t]);
        }
        key
    }

    /// The same linear quotient map as [`Direction::line_key`], applied to a
    /// whole set. The image has one point per line of the fiber partition
    /// and, being the image under a linear map with kernel `span(dir)`, is
    /// affinely isomorphic to the orthogonal projection of the set.
    pub fn quotient_image(&self, set: &PointSet) -> Result<PointSet> {
        if self.dim() != set.dim() {
            return Err(Error::DimensionMismatch(
                "quotient map dimension mismatch".into(),
            ));
        }
        if self.dim() < 2 {
            return Err(Error::Contract(
                "quotient image needs ambient dimension >= 2".into(),
            ));
        }
        PointSet::new(
            self.dim() - 1,
            set.iter().map(|p| LatticePoint::new(self.line_key(p))).collect(),
        )
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.vec.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Rank of an integer matrix, by fraction-free Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub(crate) fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(row, p);
        for r in row + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let (num, den) = (rows[r][col].clone(), rows[row][col].clone());
            for c in col..ncols {
                rows[r][c] = &rows[r][c] * &den - &rows[row][c] * &num;
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(dim, rows).unwrap()
    }

    #[test]
    fn sumset_smallest_nontrivial() {
        let a = ps(1, &[&[0], &[1]]);
        let s = a.sumset(&a).unwrap();
        assert_eq!(s, ps(1, &[&[0], &[1], &[2]]));
    }

    #[test]
    fn sumset_singletons() {
        let p = ps(2, &[&[3, -1]]);
        let q = ps(2, &[&[-2, 5]]);
        assert_eq!(p.sumset(&q).unwrap(), ps(2, &[&[1, 4]]));
    }

    #[test]
    fn sumset_dimension_mismatch() {
        let a = ps(1, &[&[0]]);
        let b = ps(2, &[&[0, 0]]);
        assert!(matches!(a.sumset(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn affine_dim_simplex_and_collinear() {
        assert_eq!(ps(2, &[&[0, 0], &[1, 0], &[0, 1]]).affine_dim().unwrap(), 2);
        assert_eq!(ps(2, &[&[0, 0], &[2, 4], &[1, 2]]).affine_dim().unwrap(), 1);
        assert_eq!(ps(3, &[&[7, 7, 7]]).affine_dim().unwrap(), 0);
    }

    #[test]
    fn project_collects_lines() {
        let a = ps(2, &[&[0, 0], &[0, 5]]);
        let fibers = a.project_orthogonal(&Direction::axis(2, 1)).unwrap();
        assert_eq!(fibers.len(), 1);
        assert_eq!(fibers.values().next().unwrap().len(), 2);
    }

    #[test]
    fn project_generic_direction_gives_singletons() {
        let a = ps(2, &[&[0, 0], &[1, 0], &[0, 1], &[5, 9]]);
        let fibers = a.project_orthogonal(&Direction::from_i64(&[13, 17]).unwrap()).unwrap();
        assert_eq!(fibers.len(), a.len());
    }

    #[test]
    fn projection_fibers_differ_by_direction_multiples() {
        let a = ps(3, &[&[0, 0, 0], &[2, 4, 6], &[1, 2, 3], &[0, 1, 0]]);
        let dir = Direction::from_i64(&[1, 2, 3]).unwrap();
        let fibers = a.project_orthogonal(&dir).unwrap();
        assert_eq!(fibers.len(), 2);
        for fiber in fibers.values() {
            for p in fiber.iter() {
                for q in fiber.iter() {
                    let d = p.sub(q);
                    if d.coords().iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    assert_eq!(Direction::new(d.coords().to_vec()).unwrap(), dir);
                }
            }
        }
    }

    #[test]
    fn extreme_points_interval() {
        let a = ps(1, &[&[0], &[1], &[2], &[3]]);
        assert_eq!(a.extreme_points().unwrap(), ps(1, &[&[0], &[3]]));
    }

    #[test]
    fn extreme_points_single_point() {
        let a = ps(2, &[&[4, 4]]);
        assert_eq!(a.extreme_points().unwrap(), a);
    }

    #[test]
    fn extreme_points_square_plus_outlier() {
        // (1,1) = midpoint of (1,0) and (1,2), so it is not extreme.
        let a = ps(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[1, 2]]);
        assert_eq!(
            a.extreme_points().unwrap(),
            ps(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 2]])
        );
    }

    #[test]
    fn direction_canonicalization() {
        let d = Direction::from_i64(&[-2, 4, -6]).unwrap();
        assert_eq!(d, Direction::from_i64(&[1, -2, 3]).unwrap());
        assert!(Direction::from_i64(&[0, 0]).is_err());
    }

    #[test]
    fn rank_of_singular_matrix() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(3), BigInt::from(6)],
        ];
        assert_eq!(integer_rank(rows), 1);
    }
}
