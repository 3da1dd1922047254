//! Text formats for point sets and cyclic sets.
//!
//! Point-set format: a `dim d` header line, then one point per line as
//! `d` whitespace-separated entries. Entries may be integers or rationals
//! written `num/den`; rational inputs are cleared to integers by scaling
//! every coordinate with the least common denominator, which preserves
//! all additive coincidences and hence every cardinality this crate
//! computes. `#` starts a comment. Duplicate points are rejected unless
//! deduplication is requested, in which case they are dropped with a
//! warning.
//!
//! Cyclic-set format: a `cyclic p m` header, then one element per line as
//! `x y`, reduced modulo `(p, m)` on ingestion.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::cyclic::{CyclicProductSpace, CyclicSet};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, PointSet};

/// Parses the point-set format. Returns the set and any warnings
/// (rational scaling, dropped duplicates).
pub fn parse_point_set(text: &str, dedupe: bool) -> Result<(PointSet, Vec<String>)> {
    let mut warnings = Vec::new();
    let mut lines = content_lines(text);
    let Some(header) = lines.next() else {
        return Err(Error::Parse("empty point-set file".into()));
    };
    let dim = parse_dim_header(&header)?;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for line in lines {
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != dim {
            return Err(Error::Parse(format!(
                "expected {dim} coordinates, got {} in line: {line}",
                entries.len()
            )));
        }
        let row: Vec<BigRational> = entries
            .iter()
            .map(|e| {
                BigRational::from_str(e)
                    .map_err(|_| Error::Parse(format!("bad coordinate '{e}' in line: {line}")))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("point-set file has no points".into()));
    }

    // Clear denominators with one global scale.
    let mut scale = BigInt::one();
    for c in rows.iter().flatten() {
        scale = scale.lcm(c.denom());
    }
    if !scale.is_one() {
        warnings.push(format!(
            "rational coordinates scaled by {scale} to clear denominators"
        ));
    }
    let scale = BigRational::from_integer(scale);
    let points: Vec<LatticePoint> = rows
        .iter()
        .map(|row| LatticePoint::new(row.iter().map(|c| (c * &scale).to_integer()).collect()))
        .collect();

    let (set, dropped) = PointSet::new_checked(dim, points)?;
    if dropped > 0 {
        if !dedupe {
            return Err(Error::Parse(format!(
                "{dropped} duplicate point(s); pass the dedupe flag to drop them"
            )));
        }
        warnings.push(format!("dropped {dropped} duplicate point(s)"));
    }
    Ok((set, warnings))
}

fn parse_dim_header(header: &str) -> Result<usize> {
    let mut it = header.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some("dim"), Some(d), None) => d
            .parse::<usize>()
            .ok()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Parse(format!("bad dimension '{d}'"))),
        _ => Err(Error::Parse(format!(
            "expected 'dim d' header, got: {header}"
        ))),
    }
}

pub fn write_point_set(set: &PointSet) -> String {
    let mut out = format!("dim {}\n", set.dim());
    for p in set.iter() {
        let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the cyclic-set format.
pub fn parse_cyclic_set(text: &str, dedupe: bool) -> Result<(CyclicSet, Vec<String>)> {
    let mut warnings = Vec::new();
    let mut lines = content_lines(text);
    let Some(header) = lines.next() else {
        return Err(Error::Parse("empty cyclic-set file".into()));
    };
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "cyclic" {
        return Err(Error::Parse(format!(
            "expected 'cyclic p m' header, got: {header}"
        )));
    }
    let p: u64 = parts[1]
        .parse()
        .map_err(|_| Error::Parse(format!("bad modulus '{}'", parts[1])))?;
    let m: u64 = parts[2]
        .parse()
        .map_err(|_| Error::Parse(format!("bad kernel size '{}'", parts[2])))?;
    let space = CyclicProductSpace::new(p, m)?;
    let mut elems = Vec::new();
    for line in lines {
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != 2 {
            return Err(Error::Parse(format!(
                "expected 'x y' element, got: {line}"
            )));
        }
        let x: i128 = entries[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue '{}'", entries[0])))?;
        let y: i128 = entries[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue '{}'", entries[1])))?;
        elems.push(space.reduce(x, y));
    }
    if elems.is_empty() {
        return Err(Error::Parse("cyclic-set file has no elements".into()));
    }
    let before = elems.len();
    let set = CyclicSet::new(space, elems)?;
    let dropped = before - set.len();
    if dropped > 0 {
        if !dedupe {
            return Err(Error::Parse(format!(
                "{dropped} duplicate element(s); pass the dedupe flag to drop them"
            )));
        }
        warnings.push(format!("dropped {dropped} duplicate element(s)"));
    }
    Ok((set, warnings))
}

pub fn write_cyclic_set(set: &CyclicSet) -> String {
    let mut out = format!("cyclic {} {}\n", set.space().p(), set.space().m());
    for &(x, y) in set.elems() {
        out.push_str(&format!("{x} {y}\n"));
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = String> + '_ {
    text.lines().filter_map(|line| {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let line = line.trim();
        (!line.is_empty()).then(|| line.to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_point_set() {
        let a = PointSet::from_rows(2, &[&[0, 0], &[1, 5], &[-3, 2]]).unwrap();
        let text = write_point_set(&a);
        let (back, warnings) = parse_point_set(&text, false).unwrap();
        assert_eq!(a, back);
        assert!(warnings.is_empty());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a comment\ndim 1\n\n0 # inline\n1\n";
        let (set, _) = parse_point_set(text, false).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn rational_scaling() {
        let text = "dim 2\n1/2 0\n0 1/3\n";
        let (set, warnings) = parse_point_set(text, false).unwrap();
        assert_eq!(set, PointSet::from_rows(2, &[&[3, 0], &[0, 2]]).unwrap());
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn duplicates_rejected_without_flag() {
        let text = "dim 1\n3\n3\n";
        assert!(parse_point_set(text, false).is_err());
        let (set, warnings) = parse_point_set(text, true).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn bad_headers() {
        assert!(parse_point_set("dim 0\n1\n", false).is_err());
        assert!(parse_point_set("dimension 2\n0 0\n", false).is_err());
        assert!(parse_point_set("", false).is_err());
        assert!(parse_cyclic_set("cyclic 6 1\n0 0\n", false).is_err());
    }

    #[test]
    fn cyclic_round_trip_with_reduction() {
        let text = "cyclic 7 2\n-1 5\n3 1\n";
        let (set, _) = parse_cyclic_set(text, false).unwrap();
        assert!(set.contains((6, 1)));
        assert!(set.contains((3, 1)));
        let back = write_cyclic_set(&set);
        let (again, _) = parse_cyclic_set(&back, false).unwrap();
        assert_eq!(set, again);
    }
}
