//! Convex-hull membership over the rationals.
//!
//! Membership `q in conv(X)` is a linear feasibility problem: find
//! `lambda >= 0` with `sum lambda_i = 1` and `sum lambda_i x_i = q`. We
//! solve it with a phase-one simplex using exact rational pivots and
//! Bland's rule, so the answer is a decision, not an approximation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{LatticePoint, PointSet};
use crate::error::{Error, Result};

/// A point with rational coordinates, for hull queries at half-integer
/// midpoints and the like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoint(pub Vec<BigRational>);

impl QPoint {
    pub fn from_lattice(p: &LatticePoint) -> Self {
        QPoint(
            p.coords()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// The midpoint of two lattice points (half-integer coordinates).
    pub fn midpoint(a: &LatticePoint, b: &LatticePoint) -> Self {
        let two = BigInt::from(2);
        QPoint(
            a.coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| BigRational::new(x + y, two.clone()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Exact test for `q in conv(X)`.
pub fn in_convex_hull(q: &QPoint, x: &PointSet) -> Result<bool> {
    if q.dim() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "query point has dim {}, set has dim {}",
            q.dim(),
            x.dim()
        )));
    }
    if x.is_empty() {
        return Ok(false);
    }
    let pts: Vec<&LatticePoint> = x.iter().collect();
    Ok(hull_feasible(&q.0, &pts))
}

/// [`in_convex_hull`] specialized to an integer query point.
pub fn in_convex_hull_lattice(q: &LatticePoint, x: &PointSet) -> Result<bool> {
    in_convex_hull(&QPoint::from_lattice(q), x)
}

pub(crate) fn point_in_hull_of(p: &LatticePoint, others: &[&LatticePoint]) -> bool {
    let q: Vec<BigRational> = p
        .coords()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    hull_feasible(&q, others)
}

/// Phase-one simplex feasibility for the hull system.
#[allow(clippy::needless_range_loop)]
fn hull_feasible(q: &[BigRational], pts: &[&LatticePoint]) -> bool {
    let d = q.len();
    let n = pts.len();
    let m = d + 1; // d coordinate equations plus the convexity row

    // Constraint matrix: column j is (x_j ; 1), right-hand side (q ; 1).
    // Flip row signs so every right-hand side is nonnegative, then append
    // an artificial identity to get a starting basis.
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for row in 0..m {
        let mut r: Vec<BigRational> = Vec::with_capacity(n + m + 1);
        for p in pts {
            let entry = if row < d {
                BigRational::from_integer(p.coords()[row].clone())
            } else {
                BigRational::one()
            };
            r.push(entry);
        }
        for art in 0..m {
            r.push(if art == row {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        let rhs = if row < d {
            q[row].clone()
        } else {
            BigRational::one()
        };
        r.push(rhs);
        if r[n + m].is_negative() {
            for e in &mut r {
                *e = -&*e;
            }
            // Re-orient the artificial column so the basis stays an identity.
            r[n + row] = BigRational::one();
        }
        tab.push(r);
    }

    let mut basis: Vec<usize> = (0..m).map(|i| n + i).collect();

    // Reduced costs for minimizing the sum of artificials, with the basic
    // artificials priced out: r_j = c_j - sum_i tab[i][j].
    let mut red: Vec<BigRational> = (0..n + m)
        .map(|j| {
            let c = if j >= n {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            let mut s = BigRational::zero();
            for row in tab.iter() {
                s += &row[j];
            }
            c - s
        })
        .collect();

    #[allow(clippy::while_let_loop)]
    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..n + m).find(|&j| red[j].is_negative()) else {
            break;
        };
        // Ratio test; ties broken by smallest basic variable index (Bland).
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][n + m] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((li, _)) = leave else {
            // The phase-one objective is bounded below by zero, so an
            // unbounded ray cannot occur.
            unreachable!("phase-one simplex reported unbounded");
        };

        // Pivot on (li, enter).
        let piv = tab[li][enter].clone();
        for e in &mut tab[li] {
            *e = &*e / &piv;
        }
        for i in 0..m {
            if i == li || tab[i][enter].is_zero() {
                continue;
            }
            let f = tab[i][enter].clone();
            for j in 0..=n + m {
                let delta = &f * &tab[li][j];
                tab[i][j] = &tab[i][j] - delta;
            }
        }
        if !red[enter].is_zero() {
            let f = red[enter].clone();
            for j in 0..n + m {
                let delta = &f * &tab[li][j];
                red[j] = &red[j] - delta;
            }
        }
        basis[li] = enter;
    }

    // Feasible iff no artificial carries positive value at the optimum.
    (0..m).all(|i| basis[i] < n || tab[i][n + m].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ps(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(dim, rows).unwrap()
    }

    fn qp(coords: &[(i64, i64)]) -> QPoint {
        QPoint(
            coords
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    #[test]
    fn center_of_unit_square() {
        let square = ps(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(in_convex_hull(&qp(&[(1, 2), (1, 2)]), &square).unwrap());
    }

    #[test]
    fn outside_bounding_box() {
        let square = ps(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(!in_convex_hull(&qp(&[(2, 1), (0, 1)]), &square).unwrap());
    }

    #[test]
    fn midpoint_of_hull_vertices() {
        let x = ps(2, &[&[0, 0], &[4, 0], &[1, 3], &[-2, 7]]);
        let pts = x.points();
        let mid = QPoint::midpoint(&pts[0], &pts[1]);
        assert!(in_convex_hull(&mid, &x).unwrap());
    }

    #[test]
    fn boundary_point_counts_as_inside() {
        let seg = ps(1, &[&[0], &[10]]);
        assert!(in_convex_hull(&qp(&[(10, 1)]), &seg).unwrap());
        assert!(in_convex_hull(&qp(&[(19, 2)]), &seg).unwrap());
        assert!(!in_convex_hull(&qp(&[(21, 2)]), &seg).unwrap());
    }

    #[test]
    fn degenerate_flat_set_in_higher_dim() {
        // Collinear points in the plane: hull is a segment.
        let x = ps(2, &[&[0, 0], &[2, 2], &[4, 4]]);
        assert!(in_convex_hull(&qp(&[(1, 1), (1, 1)]), &x).unwrap());
        assert!(!in_convex_hull(&qp(&[(1, 1), (2, 1)]), &x).unwrap());
    }
}
