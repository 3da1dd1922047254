//! Exhaustive verification sweeps over small `Z_p x Z_m`.
//!
//! Configurations are enumerated as kernel bitmasks laid out column-major
//! (`bit = chi * m + kernel`), normalized so the projection support starts
//! at residue 0 and attains its last column; every instance with larger
//! windows normalizes onto one of these, so the family is covered
//! exhaustively up to the translations the operation itself performs.
//! Translating a configuration inside the kernel commutes with the whole
//! computation, so the `A` side is deduplicated to kernel-rotation class
//! representatives; the `B` side is enumerated in full because the choice
//! of fiber representatives is not rotation-equivariant.
//!
//! The projection sweep checks `|X| >= |A| + pi_w(X)` alone, which
//! depends on `B` only through the shift period and the two kernel
//! offsets, so those three parameters are swept directly (a superset of
//! everything a concrete `B` could induce). The selection sweep drives
//! the full engine over `(A, B)` pairs and re-runs a deterministic
//! subsample through the public entry point as a cross-check.

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::triple::{self, EngineBufs};
use super::{CyclicProductSpace, CyclicSet, IntervalWindow};

#[derive(Debug, Clone, Copy, Default)]
pub struct XsSweepSummary {
    pub p: u64,
    pub m: u64,
    pub max_size: usize,
    /// Verified `(A, w, kernel-offset)` instances.
    pub instances: u64,
    /// Smallest observed slack `|X| - |A| - pi_w(X)`.
    pub min_slack: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TripleSweepSummary {
    pub p: u64,
    pub m: u64,
    pub max_size: usize,
    /// Verified `(A, B)` instances.
    pub instances: u64,
    /// Instances where `|A + S| >= |A| + |B|` held with no slack at all.
    pub undiminished: u64,
    /// Instances where the kernel slack was genuinely needed.
    pub needed_slack: u64,
    /// Instances re-run through the public entry point.
    pub spot_checks: u64,
}

const WORK_GUARD: u128 = 8_000_000_000;

/// Masks by span: `lists[l][s]` holds every configuration with projection
/// span exactly `l` (columns 0 and `l` nonempty), `s` elements.
struct ConfigLists {
    lists: Vec<Vec<Vec<u64>>>,
}

fn kernel_class_masks(m: u32, bits: u32) -> Vec<u64> {
    (0..m)
        .map(|j| {
            let mut k = 0u64;
            let mut pos = j;
            while pos < bits {
                k |= 1u64 << pos;
                pos += m;
            }
            k
        })
        .collect()
}

fn rot_all(mask: u64, y: u32, m: u32, class_masks: &[u64]) -> u64 {
    if y == 0 {
        return mask;
    }
    let mut out = 0u64;
    for (j, &k) in class_masks.iter().enumerate() {
        let target = (j as u32 + y) % m;
        let part = mask & k;
        if target >= j as u32 {
            out |= part << (target - j as u32);
        } else {
            out |= part >> (j as u32 - target);
        }
    }
    out
}

fn build_configs(
    max_span: usize,
    m: u32,
    max_size: usize,
    min_size: usize,
    kernel_canonical: bool,
) -> Result<ConfigLists> {
    let mut lists = Vec::with_capacity(max_span + 1);
    for l in 0..=max_span {
        let cols = l + 1;
        let bits = (cols * m as usize) as u32;
        if bits > 62 {
            return Err(Error::EnumerationGuard(format!(
                "sweep universe of {bits} bits is too large"
            )));
        }
        let class_masks = kernel_class_masks(m, bits);
        let first_col: u64 = (1u64 << m) - 1;
        let last_col: u64 = first_col << (l * m as usize);
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); max_size + 1];
        #[allow(clippy::needless_range_loop)]
        for size in min_size..=max_size.min(bits as usize) {
            // Gosper's hack over fixed-popcount masks.
            let mut mask: u64 = (1u64 << size) - 1;
            let limit: u64 = 1u64 << bits;
            while mask < limit {
                if mask & first_col != 0 && mask & last_col != 0 {
                    let canonical = !kernel_canonical
                        || (1..m).all(|y| rot_all(mask, y, m, &class_masks) >= mask);
                    if canonical {
                        by_size[size].push(mask);
                    }
                }
                let c = mask & mask.wrapping_neg();
                let r = mask + c;
                if r >= limit || c == 0 {
                    break;
                }
                mask = (((r ^ mask) >> 2) / c) | r;
            }
        }
        lists.push(by_size);
    }
    Ok(ConfigLists { lists })
}

fn mask_to_cols(mask: u64, cols: usize, m: u32, out: &mut Vec<u64>) {
    let full: u64 = (1u64 << m) - 1;
    out.clear();
    for x in 0..cols {
        out.push((mask >> (x * m as usize)) & full);
    }
}

/// Exhaustively verifies the projection inequality `|X| >= |A| + pi_w(X)`
/// over every normalized configuration of at most `max_size` points with
/// valid windows in `Z_p x Z_m`, for every shift period and kernel offset.
pub fn exhaustive_xs_sweep(p: u64, m: u64, max_size: usize) -> Result<XsSweepSummary> {
    CyclicProductSpace::new(p, m)?;
    if m > 21 || max_size == 0 {
        return Err(Error::Contract(
            "projection sweep supports m <= 21 and max_size >= 1".into(),
        ));
    }
    if p < 3 {
        return Ok(XsSweepSummary {
            p,
            m,
            max_size,
            instances: 0,
            min_slack: 0,
        });
    }
    let max_span = (p - 3) as usize;
    let configs = build_configs(max_span, m as u32, max_size, 1, true)?;

    let units: Vec<(usize, u64)> = configs
        .lists
        .iter()
        .enumerate()
        .flat_map(|(l, by_size)| {
            by_size
                .iter()
                .flatten()
                .map(move |&mask| (l, mask))
                .collect::<Vec<_>>()
        })
        .collect();

    let partial = units
        .par_iter()
        .map(|&(la, mask)| -> Result<(u64, u64)> {
            let mut cols_a = Vec::new();
            let mut x_cols = Vec::new();
            mask_to_cols(mask, la + 1, m as u32, &mut cols_a);
            let a_len: u64 = cols_a.iter().map(|c| c.count_ones() as u64).sum();
            let mut instances = 0u64;
            let mut min_slack = u64::MAX;
            for w in 1..=(p as usize - 2 - la) {
                for y2 in 0..m as u32 {
                    let (x_card, pi) = triple::xs_stat(&cols_a, 0, y2, w, m as u32, &mut x_cols);
                    if x_card < a_len + pi {
                        return Err(Error::Invariant(format!(
                            "projection inequality failed: |X| = {x_card} < {a_len} + {pi} at p = {p}, m = {m}, A mask {mask:#x}, span {la}, w = {w}, y2 = {y2}"
                        )));
                    }
                    min_slack = min_slack.min(x_card - a_len - pi);
                    instances += 1;
                }
            }
            Ok((instances, min_slack))
        })
        .try_reduce(
            || (0u64, u64::MAX),
            |a, b| Ok((a.0 + b.0, a.1.min(b.1))),
        )?;

    Ok(XsSweepSummary {
        p,
        m,
        max_size,
        instances: partial.0,
        min_slack: if partial.1 == u64::MAX { 0 } else { partial.1 },
    })
}

/// Drives the full interval selection over every normalized `(A, B)` pair
/// with `|A| >= |B| >= 2` and valid windows, checking both certified
/// bounds on every instance. A deterministic subsample is replayed
/// through [`interval_triple_select`](super::interval_triple_select) with
/// translated inputs as an independent cross-check.
pub fn exhaustive_triple_select_sweep(
    p: u64,
    m: u64,
    max_size: usize,
) -> Result<TripleSweepSummary> {
    CyclicProductSpace::new(p, m)?;
    if m > 21 || max_size < 2 {
        return Err(Error::Contract(
            "selection sweep supports m <= 21 and max_size >= 2".into(),
        ));
    }
    if p < 3 {
        return Ok(TripleSweepSummary {
            p,
            m,
            max_size,
            ..Default::default()
        });
    }
    let max_span = (p - 3) as usize;
    let a_configs = build_configs(max_span, m as u32, max_size, 2, true)?;
    // B may span up to p-2 residues when A sits in a single column.
    let b_configs = build_configs((p - 2) as usize, m as u32, max_size, 2, false)?;

    // Work estimate before committing to the enumeration.
    let mut estimate: u128 = 0;
    for la in 0..=max_span {
        for lb in 1..=(p as usize - 2 - la) {
            let a_count: u128 = a_configs.lists[la].iter().map(|v| v.len() as u128).sum();
            let b_count: u128 = b_configs.lists[lb].iter().map(|v| v.len() as u128).sum();
            estimate += a_count * b_count;
        }
    }
    if estimate > WORK_GUARD {
        return Err(Error::EnumerationGuard(format!(
            "selection sweep would visit about {estimate} pairs"
        )));
    }

    let units: Vec<(usize, usize, u64)> = a_configs
        .lists
        .iter()
        .enumerate()
        .flat_map(|(la, by_size)| {
            by_size
                .iter()
                .enumerate()
                .flat_map(move |(sa, masks)| {
                    masks.iter().map(move |&mask| (la, sa, mask)).collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let partial = units
        .par_iter()
        .enumerate()
        .map(|(unit_idx, &(la, a_size, a_mask))| -> Result<TripleSweepPartial> {
            let mut out = TripleSweepPartial::default();
            let mut cols_a = Vec::new();
            let mut cols_b = Vec::new();
            let mut bufs = EngineBufs::default();
            mask_to_cols(a_mask, la + 1, m as u32, &mut cols_a);
            let mut counter: u64 = a_mask.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ la as u64;
            for lb in 1..=(p as usize - 2 - la) {
                for (b_size, masks) in b_configs.lists[lb].iter().enumerate() {
                    if b_size > a_size {
                        continue;
                    }
                    for &b_mask in masks {
                        mask_to_cols(b_mask, lb + 1, m as u32, &mut cols_b);
                        let result = triple::engine(
                            &cols_a,
                            a_size as u64,
                            &cols_b,
                            b_size as u64,
                            m as u32,
                            &mut bufs,
                        )?;
                        out.instances += 1;
                        if result.achieved >= (a_size + b_size) as u64 {
                            out.undiminished += 1;
                        } else {
                            out.needed_slack += 1;
                        }
                        counter = counter.wrapping_add(0x2545_f491_4f6c_dd1d);
                        if counter.is_multiple_of(8192) || (unit_idx == 0 && out.instances == 1) {
                            spot_check(
                                p, m, la, a_mask, lb, b_mask, counter, &result,
                            )?;
                            out.spot_checks += 1;
                        }
                    }
                }
            }
            Ok(out)
        })
        .try_reduce(TripleSweepPartial::default, |a, b| {
            Ok(TripleSweepPartial {
                instances: a.instances + b.instances,
                undiminished: a.undiminished + b.undiminished,
                needed_slack: a.needed_slack + b.needed_slack,
                spot_checks: a.spot_checks + b.spot_checks,
            })
        })?;

    Ok(TripleSweepSummary {
        p,
        m,
        max_size,
        instances: partial.instances,
        undiminished: partial.undiminished,
        needed_slack: partial.needed_slack,
        spot_checks: partial.spot_checks,
    })
}

#[derive(Debug, Clone, Copy, Default)]
struct TripleSweepPartial {
    instances: u64,
    undiminished: u64,
    needed_slack: u64,
    spot_checks: u64,
}

/// Replays one instance through the public entry point, translated to a
/// nontrivial position, and compares the certified quantities.
#[allow(clippy::too_many_arguments)]
fn spot_check(
    p: u64,
    m: u64,
    la: usize,
    a_mask: u64,
    lb: usize,
    b_mask: u64,
    counter: u64,
    engine_out: &triple::EngineOut,
) -> Result<()> {
    let space = CyclicProductSpace::new(p, m)?;
    let dx_a = counter % p;
    let dx_b = (counter / p) % p;
    let dy_a = (counter / 7) % m;
    let a = mask_to_set(&space, a_mask, la, dx_a, dy_a)?;
    let b = mask_to_set(&space, b_mask, lb, dx_b, 0)?;
    let i = IntervalWindow::new(&space, dx_a, la as u64)?;
    let j = IntervalWindow::new(&space, dx_b, lb as u64)?;
    let (witness, report) = super::interval_triple_select(&a, &b, &i, &j)?;
    let metric = |name: &str| -> u64 {
        report
            .metrics
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.to_string().parse().unwrap())
            .unwrap()
    };
    if witness.achieved as u64 != engine_out.achieved
        || metric("max_projection") != engine_out.pi
        || metric("union_two") != engine_out.x_card
    {
        return Err(Error::Invariant(format!(
            "sweep engine and public selection disagree at p = {p}, m = {m}, A mask {a_mask:#x}, B mask {b_mask:#x}: engine {engine_out:?}, public {witness}"
        )));
    }
    Ok(())
}

fn mask_to_set(
    space: &CyclicProductSpace,
    mask: u64,
    span: usize,
    dx: u64,
    dy: u64,
) -> Result<CyclicSet> {
    let mut elems = Vec::new();
    for x in 0..=span {
        for y in 0..space.m() {
            if mask >> (x as u64 * space.m() + y) & 1 == 1 {
                elems.push((((x as u64) + dx) % space.p(), (y + dy) % space.m()));
            }
        }
    }
    CyclicSet::new(space.clone(), elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xs_sweep_tiny_group() {
        let s = exhaustive_xs_sweep(5, 1, 3).unwrap();
        assert!(s.instances > 0);
    }

    #[test]
    fn xs_sweep_with_kernel() {
        let s = exhaustive_xs_sweep(5, 2, 3).unwrap();
        assert!(s.instances > 0);
    }

    #[test]
    fn triple_sweep_tiny_group() {
        let s = exhaustive_triple_select_sweep(5, 1, 3).unwrap();
        assert!(s.instances > 0);
        assert_eq!(s.instances, s.undiminished + s.needed_slack);
    }

    #[test]
    fn triple_sweep_with_kernel() {
        let s = exhaustive_triple_select_sweep(7, 2, 4).unwrap();
        assert!(s.instances > 0);
        assert_eq!(s.instances, s.undiminished + s.needed_slack);
        assert!(s.spot_checks > 0);
    }

    #[test]
    fn rot_all_rotates_blocks() {
        let class_masks = kernel_class_masks(3, 9);
        // Columns (reading low to high): 0b001, 0b010, 0b100.
        let mask = 0b100_010_001u64;
        let rotated = rot_all(mask, 1, 3, &class_masks);
        assert_eq!(rotated, 0b001_100_010u64);
    }

    #[test]
    fn degenerate_small_p() {
        let s = exhaustive_xs_sweep(2, 1, 3).unwrap();
        assert_eq!(s.instances, 0);
        let t = exhaustive_triple_select_sweep(2, 2, 3).unwrap();
        assert_eq!(t.instances, 0);
    }
}
