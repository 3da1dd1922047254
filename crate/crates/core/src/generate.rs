//! Deterministic generators for the input families used by experiments
//! and tests.

use num_bigint::BigInt;
use rand::Rng;

use crate::cyclic::{CyclicProductSpace, CyclicSet};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, PointSet};

/// The sharp-growth family: `{0, e_1, ..., e_{d-1}} x {1, .., n}` in `Z^d`,
/// i.e. `d` parallel lines of `n` points whose doubling meets the
/// full-dimensional lower bound with equality. For `d = 1` this is just
/// `{1, .., n}`.
pub fn chr_family(d: usize, n: usize) -> Result<PointSet> {
    if d < 1 || n < 1 {
        return Err(Error::Contract("chr family needs d >= 1 and N >= 1".into()));
    }
    let mut prefixes: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); d - 1]];
    for i in 0..d - 1 {
        let mut e = vec![BigInt::from(0); d - 1];
        e[i] = BigInt::from(1);
        prefixes.push(e);
    }
    let mut points = Vec::with_capacity(d * n);
    for prefix in &prefixes {
        for t in 1..=n {
            let mut coords = prefix.clone();
            coords.push(BigInt::from(t));
            points.push(LatticePoint::new(coords));
        }
    }
    PointSet::new(d, points)
}

/// The cube `{0, .., side-1}^d`.
pub fn grid(d: usize, side: usize) -> Result<PointSet> {
    if d < 1 || side < 1 {
        return Err(Error::Contract("grid needs d >= 1 and side >= 1".into()));
    }
    let total = (side as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > 1_000_000 {
        return Err(Error::EnumerationGuard(format!(
            "grid would have {total} points"
        )));
    }
    let mut points = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; d];
    loop {
        points.push(LatticePoint::new(
            idx.iter().map(|&c| BigInt::from(c)).collect(),
        ));
        let mut k = 0;
        loop {
            if k == d {
                return PointSet::new(d, points);
            }
            idx[k] += 1;
            if idx[k] < side {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// The standard simplex `{0, e_1, .., e_d}` in `Z^d`.
pub fn simplex(d: usize) -> Result<PointSet> {
    if d < 1 {
        return Err(Error::Contract("simplex needs d >= 1".into()));
    }
    let mut points = vec![LatticePoint::new(vec![BigInt::from(0); d])];
    for i in 0..d {
        let mut e = vec![BigInt::from(0); d];
        e[i] = BigInt::from(1);
        points.push(LatticePoint::new(e));
    }
    PointSet::new(d, points)
}

/// `n` distinct uniform points of `{0, .., box_side-1}^d`.
pub fn random_lattice<R: Rng>(d: usize, n: usize, box_side: u64, rng: &mut R) -> Result<PointSet> {
    if d < 1 || n < 1 || box_side < 1 {
        return Err(Error::Contract(
            "random lattice set needs d, n, box >= 1".into(),
        ));
    }
    let cells = (box_side as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if (n as u128) > cells {
        return Err(Error::Contract(format!(
            "cannot draw {n} distinct points from a box with {cells} cells"
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < n {
        let p: Vec<i64> = (0..d).map(|_| rng.gen_range(0..box_side) as i64).collect();
        seen.insert(p);
    }
    PointSet::new(
        d,
        seen.into_iter()
            .map(|row| LatticePoint::from_i64(&row))
            .collect(),
    )
}

/// `n` distinct uniform elements of `Z_p x Z_m`.
pub fn random_cyclic<R: Rng>(
    space: &CyclicProductSpace,
    n: usize,
    rng: &mut R,
) -> Result<CyclicSet> {
    if n < 1 || n as u128 > space.total() as u128 {
        return Err(Error::Contract(format!(
            "cannot draw {n} distinct elements from a group of order {}",
            space.total()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < n {
        let x = rng.gen_range(0..space.p());
        let y = rng.gen_range(0..space.m());
        seen.insert((x, y));
    }
    CyclicSet::new(space.clone(), seen)
}

/// An interval of `count` consecutive residues starting at `start`, times
/// the full kernel: the natural interval-shaped set in `Z_p x Z_m`.
pub fn cyclic_interval(space: &CyclicProductSpace, start: u64, count: u64) -> Result<CyclicSet> {
    if count == 0 || count > space.p() {
        return Err(Error::Contract(format!(
            "interval of {count} residues in Z_{}",
            space.p()
        )));
    }
    let start = start % space.p();
    let mut elems = Vec::new();
    for i in 0..count {
        for y in 0..space.m() {
            elems.push(((start + i) % space.p(), y));
        }
    }
    CyclicSet::new(space.clone(), elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chr_family_matches_definition() {
        let a = chr_family(2, 3).unwrap();
        assert_eq!(a.len(), 6);
        let expected = PointSet::from_rows(
            2,
            &[&[0, 1], &[0, 2], &[0, 3], &[1, 1], &[1, 2], &[1, 3]],
        )
        .unwrap();
        assert_eq!(a, expected);
        assert_eq!(a.affine_dim().unwrap(), 2);
    }

    #[test]
    fn chr_family_dimension_full_for_n_at_least_two() {
        for d in 1..=4 {
            let a = chr_family(d, 2).unwrap();
            assert_eq!(a.len(), 2 * d);
            assert_eq!(a.affine_dim().unwrap(), d);
        }
    }

    #[test]
    fn chr_family_one_dimensional() {
        let a = chr_family(1, 4).unwrap();
        assert_eq!(a, PointSet::from_rows(1, &[&[1], &[2], &[3], &[4]]).unwrap());
    }

    #[test]
    fn simplex_has_d_plus_one_points() {
        let s = simplex(3).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.affine_dim().unwrap(), 3);
    }

    #[test]
    fn random_lattice_is_reproducible() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let a = random_lattice(2, 20, 10, &mut r1).unwrap();
        let b = random_lattice(2, 20, 10, &mut r2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
    }

    #[test]
    fn random_lattice_too_dense_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(random_lattice(1, 11, 10, &mut rng).is_err());
    }
}
