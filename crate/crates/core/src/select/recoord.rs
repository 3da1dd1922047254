//! Exact change of coordinates onto `Z^k` for sets living in a proper
//! affine subspace.
//!
//! The map is affine with rational coefficients, injective on the affine
//! span of the input, and scaled by a global denominator so images are
//! integral. Affine injective maps preserve every additive coincidence
//! `a + b = c + d`, hence all sumset cardinalities, which is what the
//! recursive selection needs when it descends into a hyperplane.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Direction, LatticePoint, PointSet};

pub(crate) struct Recoord {
    /// The set in the new coordinates, same cardinality as the input.
    pub image: PointSet,
    /// Image of the requested line direction.
    pub image_dir: Direction,
    back: BTreeMap<LatticePoint, LatticePoint>,
}

impl Recoord {
    /// Pulls a subset of the image back to original coordinates.
    pub fn back_map(&self, selected: &PointSet) -> Result<PointSet> {
        let mut out = Vec::with_capacity(selected.len());
        for p in selected.iter() {
            let Some(orig) = self.back.get(p) else {
                return Err(Error::Invariant(format!(
                    "image point {p} has no preimage in the recoordinatization"
                )));
            };
            out.push(orig.clone());
        }
        PointSet::new(self.back.values().next().map(|p| p.dim()).unwrap_or(1), out)
    }
}

/// Maps `a` (affine dimension `k`) onto `Z^k`, carrying `dir` along.
/// `dir` must be parallel to the affine span of `a`.
pub(crate) fn recoordinatize(a: &PointSet, dir: &Direction) -> Result<Recoord> {
    let d = a.dim();
    let k = a.affine_dim()?;
    if k == 0 {
        return Err(Error::Contract(
            "cannot recoordinatize a single point onto a positive-dimensional lattice".into(),
        ));
    }
    let base = a.points()[0].clone();
    let diffs: Vec<Vec<BigRational>> = a
        .iter()
        .map(|p| {
            p.sub(&base)
                .coords()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();

    // Greedy basis of the difference space, tracked by a rational echelon.
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    for v in &diffs {
        if basis.len() == k {
            break;
        }
        let mut red = v.clone();
        reduce_against(&mut red, &echelon);
        if red.iter().any(|c| !c.is_zero()) {
            echelon.push(normalize_row(red));
            basis.push(v.clone());
        }
    }
    if basis.len() != k {
        return Err(Error::Invariant(
            "difference vectors failed to span the affine dimension".into(),
        ));
    }

    // Pivot rows of the d x k basis matrix, then the inverse of the k x k
    // pivot submatrix; coordinates come from solving against it.
    let bmat: Vec<Vec<BigRational>> = (0..d)
        .map(|row| (0..k).map(|col| basis[col][row].clone()).collect())
        .collect();
    let pivot_rows = independent_rows(&bmat, k)?;
    let sub: Vec<Vec<BigRational>> = pivot_rows
        .iter()
        .map(|&r| bmat[r].clone())
        .collect();
    let inv = invert(&sub).ok_or_else(|| {
        Error::Invariant("pivot submatrix of the basis is singular".into())
    })?;

    let coords_of = |v: &[BigRational]| -> Result<Vec<BigRational>> {
        let rhs: Vec<BigRational> = pivot_rows.iter().map(|&r| v[r].clone()).collect();
        let c: Vec<BigRational> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| &inv[i][j] * &rhs[j])
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect();
        // The vector must reproduce exactly in every ambient coordinate.
        for row in 0..d {
            let recovered = (0..k)
                .map(|j| &bmat[row][j] * &c[j])
                .fold(BigRational::zero(), |acc, t| acc + t);
            if recovered != v[row] {
                return Err(Error::Invariant(
                    "vector outside the span reached the recoordinatization".into(),
                ));
            }
        }
        Ok(c)
    };

    let point_coords: Vec<Vec<BigRational>> = diffs
        .iter()
        .map(|v| coords_of(v))
        .collect::<Result<_>>()?;
    let dir_rat: Vec<BigRational> = dir
        .vec()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let dir_coords = coords_of(&dir_rat)?;

    // One global scale clears every denominator, keeping the map linear.
    let mut scale = BigInt::one();
    for c in point_coords.iter().flatten().chain(dir_coords.iter()) {
        scale = scale.lcm(c.denom());
    }
    let scale_rat = BigRational::from_integer(scale);

    let to_int_point = |c: &[BigRational]| -> LatticePoint {
        LatticePoint::new(
            c.iter()
                .map(|x| (x * &scale_rat).to_integer())
                .collect(),
        )
    };

    let mut back = BTreeMap::new();
    let mut image_points = Vec::with_capacity(a.len());
    for (orig, c) in a.iter().zip(&point_coords) {
        let img = to_int_point(c);
        image_points.push(img.clone());
        back.insert(img, orig.clone());
    }
    let image = PointSet::new(k, image_points)?;
    if image.len() != a.len() {
        return Err(Error::Invariant(
            "recoordinatization collapsed two points".into(),
        ));
    }
    let image_dir = Direction::new(
        dir_coords
            .iter()
            .map(|x| (x * &scale_rat).to_integer())
            .collect(),
    )?;
    Ok(Recoord {
        image,
        image_dir,
        back,
    })
}

fn reduce_against(v: &mut [BigRational], echelon: &[Vec<BigRational>]) {
    for row in echelon {
        let pivot = row.iter().position(|c| !c.is_zero()).unwrap();
        if v[pivot].is_zero() {
            continue;
        }
        let f = &v[pivot] / &row[pivot];
        for (vi, ri) in v.iter_mut().zip(row) {
            let delta = &f * ri;
            *vi = &*vi - delta;
        }
    }
}

fn normalize_row(mut v: Vec<BigRational>) -> Vec<BigRational> {
    let pivot = v.iter().position(|c| !c.is_zero()).unwrap();
    let p = v[pivot].clone();
    for c in &mut v {
        *c = &*c / &p;
    }
    v
}

/// Indices of `k` linearly independent rows.
fn independent_rows(mat: &[Vec<BigRational>], k: usize) -> Result<Vec<usize>> {
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut rows = Vec::new();
    for (i, row) in mat.iter().enumerate() {
        if rows.len() == k {
            break;
        }
        let mut red = row.clone();
        reduce_against(&mut red, &echelon);
        if red.iter().any(|c| !c.is_zero()) {
            echelon.push(normalize_row(red));
            rows.push(i);
        }
    }
    if rows.len() != k {
        return Err(Error::Invariant(
            "basis matrix has rank below the affine dimension".into(),
        ));
    }
    Ok(rows)
}

/// Gauss-Jordan inverse of a small rational matrix.
fn invert(mat: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = mat.len();
    let mut work: Vec<Vec<BigRational>> = mat.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        inv.swap(col, pivot);
        let p = work[col][col].clone();
        for j in 0..n {
            work[col][j] = &work[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let f = work[r][col].clone();
            for j in 0..n {
                let dw = &f * &work[col][j];
                work[r][j] = &work[r][j] - dw;
                let di = &f * &inv[col][j];
                inv[r][j] = &inv[r][j] - di;
            }
        }
    }
    Some(inv)
}
