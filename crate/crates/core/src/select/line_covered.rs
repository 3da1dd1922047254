//! Recursive translate selection for sets covered by parallel lines.
//!
//! For a full-dimensional `A` in `Z^d` covered by `r >= d` parallel lines
//! with every fiber carrying at least two points, selection proceeds by
//! induction on the ambient dimension: project along the line direction,
//! peel off an extreme line, recurse on the rest, and stitch in triples
//! selected inside fiber pairs. The two inductive cases depend on whether
//! removing the extreme projected point drops the projected dimension.
//! The final selection satisfies `|S| <= 3 d r^2` and
//! `|A + S| >= (d+1)|A| - 3dr`, and both facts are re-verified at every
//! level of the recursion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{in_convex_hull_lattice, Direction, LatticePoint, PointSet, QPoint};
use crate::lattice::in_convex_hull;
use crate::structure::{self, LineCover};

use super::{recoord, select_triple_1d, SourceLabel, Strategy, TranslateWitness};

/// 1-D parametrization of fibers along a common direction: the points of a
/// fiber are `rep + k * dir`, and sums between fibers correspond exactly
/// to sums of the integer parameters `k`.
pub(crate) struct FiberParams {
    dir: Direction,
}

impl FiberParams {
    pub fn new(dir: &Direction) -> Self {
        FiberParams { dir: dir.clone() }
    }

    /// The fiber as a 1-D set of parameters relative to its own
    /// lexicographically minimal representative.
    pub fn to_1d(&self, fiber: &PointSet) -> Result<PointSet> {
        let rep = &fiber.points()[0];
        let j = self.dir.pivot();
        let vj = &self.dir.vec()[j];
        let mut params = Vec::with_capacity(fiber.len());
        for p in fiber.iter() {
            let num = &p.coords()[j] - &rep.coords()[j];
            let (k, rem) = num_integer::div_rem(num, vj.clone());
            if !rem.is_zero() || !self.on_line(rep, &k, p) {
                return Err(Error::Invariant(format!(
                    "fiber point {p} is not on the line through {rep} with direction {}",
                    self.dir
                )));
            }
            params.push(LatticePoint::new(vec![k]));
        }
        PointSet::new(1, params)
    }

    fn on_line(&self, rep: &LatticePoint, k: &BigInt, p: &LatticePoint) -> bool {
        rep.coords()
            .iter()
            .zip(self.dir.vec())
            .zip(p.coords())
            .all(|((r, v), c)| &(r + k * v) == c)
    }

    /// Maps selected 1-D parameters back to points of the fiber.
    pub fn map_back(&self, fiber: &PointSet, selected: &PointSet) -> Result<Vec<LatticePoint>> {
        let rep = &fiber.points()[0];
        let mut out = Vec::with_capacity(selected.len());
        for kp in selected.iter() {
            let k = &kp.coords()[0];
            let point = LatticePoint::new(
                rep.coords()
                    .iter()
                    .zip(self.dir.vec())
                    .map(|(r, v)| r + k * v)
                    .collect(),
            );
            if !fiber.contains(&point) {
                return Err(Error::Invariant(format!(
                    "parameter {k} maps outside its fiber"
                )));
            }
            out.push(point);
        }
        Ok(out)
    }
}

pub(crate) fn select_line_covered(a: &PointSet, cover: &LineCover) -> Result<TranslateWitness> {
    if cover.dir().dim() != a.dim() {
        return Err(Error::DimensionMismatch(
            "cover direction dimension differs from the set".into(),
        ));
    }
    if !cover.covers_exactly(a) {
        return Err(Error::Contract(
            "cover fibers must partition exactly the input set".into(),
        ));
    }
    let d = a.dim();
    if a.affine_dim()? != d {
        return Err(Error::Contract(format!(
            "line-covered selection needs a full-dimensional set (affine dim {} < {d})",
            a.affine_dim()?
        )));
    }
    let r = cover.r();
    if d > r {
        return Err(Error::Contract(format!(
            "line-covered selection needs d <= r, got d = {d}, r = {r}"
        )));
    }
    if cover.min_fiber_size() < 2 {
        return Err(Error::Contract(
            "every line of the cover must contain at least 2 points".into(),
        ));
    }
    rec(a, cover)
}

/// One level of the induction. The caller guarantees: full-dimensional
/// input, `d <= r`, all fibers of size at least 2.
fn rec(a: &PointSet, cover: &LineCover) -> Result<TranslateWitness> {
    let d = a.dim();
    let r = cover.r();
    let target = (d as i64 + 1) * a.len() as i64 - 3 * d as i64 * r as i64;

    if d == 1 {
        // A single line: three translates of A inside itself already give
        // |A + S| >= 2|A| - 1, which clears 2|A| - 3r.
        let t = select_triple_1d(a, a)?;
        let w = TranslateWitness::evaluated(
            SourceLabel::A,
            t.selected,
            a,
            target,
            Strategy::LineCovered,
        )?;
        return finish_level(w, d, r, a);
    }

    let dir = cover.dir();
    // Projected points, each carrying its fiber. The integer quotient map
    // has kernel span(dir), so this is the projection along the lines up
    // to an invertible linear change of coordinates.
    let mut by_key: BTreeMap<LatticePoint, (LatticePoint, PointSet)> = BTreeMap::new();
    for (rep, fiber) in cover.fibers() {
        by_key.insert(
            LatticePoint::new(dir.line_key(rep)),
            (rep.clone(), fiber.clone()),
        );
    }
    if by_key.len() != r {
        return Err(Error::Invariant(
            "projected line keys are not pairwise distinct".into(),
        ));
    }
    let x = PointSet::new(d - 1, by_key.keys().cloned().collect())?;
    if x.affine_dim()? != d - 1 {
        return Err(Error::Invariant(format!(
            "projection of a full-dimensional set must span dimension {}, got {}",
            d - 1,
            x.affine_dim()?
        )));
    }

    // Peel off the lexicographically largest extreme projected point.
    let extremes = x.extreme_points()?;
    let e = extremes.points().last().unwrap().clone();
    let fiber_e = by_key.get(&e).unwrap().1.clone();
    let x_prime = x.without(&PointSet::new(d - 1, vec![e.clone()])?);
    let a_prime = a.without(&fiber_e);
    let dx = x_prime.affine_dim()?;

    let params = FiberParams::new(dir);
    let fe_1d = params.to_1d(&fiber_e)?;
    let mut selection: Vec<LatticePoint> = Vec::new();

    if dx == d - 2 {
        // Dropping the extreme point drops the projected dimension, so
        // the sumsets fiber_e + fiber_i and A' + A' live on pairwise
        // disjoint lines. Recurse on A' inside its own hyperplane and add
        // a triple for every fiber pair.
        let rc = recoord::recoordinatize(&a_prime, dir)?;
        let subcover = structure::line_cover(&rc.image, &rc.image_dir)?;
        if subcover.r() != r - 1 || subcover.min_fiber_size() < 2 {
            return Err(Error::Invariant(
                "recoordinatized subproblem lost its line structure".into(),
            ));
        }
        let sub = rec(&rc.image, &subcover)?;
        sub.recheck(&rc.image, &rc.image)?;
        let s_orig = rc.back_map(&sub.selected)?;
        if a_prime.sumset_len(&s_orig)? != sub.achieved {
            return Err(Error::Invariant(
                "recoordinatization changed a sumset cardinality".into(),
            ));
        }
        selection.extend(s_orig.iter().cloned());
        for (_, fiber_i) in cover.fibers() {
            let fi_1d = params.to_1d(fiber_i)?;
            if fiber_e.len() >= fiber_i.len() {
                let t = select_triple_1d(&fe_1d, &fi_1d)?;
                selection.extend(params.map_back(fiber_i, &t.selected)?);
            } else {
                let t = select_triple_1d(&fi_1d, &fe_1d)?;
                selection.extend(params.map_back(&fiber_e, &t.selected)?);
            }
        }
    } else if dx == d - 1 {
        // The projection stays full-dimensional without e. Pick d-1
        // elements of X' whose midpoints with e avoid conv(X'): together
        // with a triple inside fiber_e they contribute along lines
        // disjoint from A' + A'.
        if in_convex_hull_lattice(&e, &x_prime)? {
            return Err(Error::Invariant(
                "extreme projected point lies in the hull of the others".into(),
            ));
        }
        let ys = midpoint_avoiding_elements(&e, &x_prime, d - 1)?;
        let subcover = structure::line_cover(&a_prime, dir)?;
        if subcover.r() != r - 1 || subcover.min_fiber_size() < 2 {
            return Err(Error::Invariant(
                "removing one fiber lost the line structure".into(),
            ));
        }
        if a_prime.affine_dim()? != d {
            return Err(Error::Invariant(
                "residual set must stay full-dimensional in this case".into(),
            ));
        }
        let sub = rec(&a_prime, &subcover)?;
        sub.recheck(&a_prime, &a_prime)?;
        selection.extend(sub.selected.iter().cloned());
        for y in &ys {
            let fiber_y = &by_key.get(y).unwrap().1;
            selection.push(fiber_y.points()[0].clone());
        }
        let t = select_triple_1d(&fe_1d, &fe_1d)?;
        selection.extend(params.map_back(&fiber_e, &t.selected)?);
    } else {
        return Err(Error::Invariant(format!(
            "projected set of dimension {} lost {} dimensions at once",
            d - 1,
            d as i64 - 1 - dx as i64
        )));
    }

    let w = TranslateWitness::evaluated(
        SourceLabel::A,
        PointSet::new(d, selection)?,
        a,
        target,
        Strategy::LineCovered,
    )?;
    finish_level(w, d, r, a)
}

fn finish_level(w: TranslateWitness, d: usize, r: usize, a: &PointSet) -> Result<TranslateWitness> {
    if !w.meets_target() {
        return Err(Error::Invariant(format!(
            "line-covered selection missed its bound at d = {d}, r = {r}: {w} on A = {a}"
        )));
    }
    if w.selected.len() > 3 * d * r * r {
        return Err(Error::Invariant(format!(
            "line-covered selection used {} translates, above the 3dr^2 = {} cap",
            w.selected.len(),
            3 * d * r * r
        )));
    }
    Ok(w)
}

/// First `count` elements of `x_prime`, in lexicographic order, whose
/// midpoint with `e` lies outside `conv(x_prime)`. Existence is
/// guaranteed for an extreme `e` over a full-dimensional `x_prime`;
/// exhausting the candidates is therefore an internal inconsistency.
fn midpoint_avoiding_elements(
    e: &LatticePoint,
    x_prime: &PointSet,
    count: usize,
) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::with_capacity(count);
    for y in x_prime.iter() {
        let mid = QPoint::midpoint(e, y);
        if !in_convex_hull(&mid, x_prime)? {
            out.push(y.clone());
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(Error::Invariant(format!(
        "found only {} of {count} midpoint-avoiding elements for e = {e} over X' = {x_prime}",
        out.len()
    )))
}
