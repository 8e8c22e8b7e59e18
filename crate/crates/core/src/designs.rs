//! Block designs: verification of the t-design property by brute force over
//! all t-subsets, derivation from incidence structures, resolvability by
//! exhaustive backtracking, counting identities, and enumeration of designs
//! with block size equal to the strength.

use crate::fingeo::IncidenceStructure;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// Cap on `C(v, t)` for verification.
pub const MAX_T_SUBSETS: u64 = 100_000;
/// Cap on block count for resolution search.
pub const MAX_RESOLUTION_BLOCKS: usize = 64;
/// Caps for the k = t exhaustive enumeration.
pub const MAX_KT_POINTS: u64 = 8;
pub const MAX_KT_STRENGTH: u64 = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("block {0} has a point out of range")]
    PointOutOfRange(usize),
    #[error("block {0} has a repeated point")]
    RepeatedPoint(usize),
    #[error("block {0} has size {1}, expected {2}")]
    UnequalBlockSizes(usize, usize, usize),
    #[error("duplicate block at index {0}")]
    DuplicateBlock(usize),
    #[error("strength must be at least 1")]
    BadStrength,
    #[error("C(v, t) exceeds the cap {MAX_T_SUBSETS}")]
    TooManySubsets,
    #[error("too many blocks for resolution search (cap {MAX_RESOLUTION_BLOCKS})")]
    TooManyBlocks,
    #[error("k = t search limited to v <= {MAX_KT_POINTS}, t <= {MAX_KT_STRENGTH}")]
    KtLimit,
    #[error("lines of the structure do not have uniform size")]
    NonUniformLines,
    #[error("structure is not a 2-design: {0}")]
    NotADesign(String),
    #[error("no blocks")]
    Empty,
}

/// A verified t-design: `v` points, blocks of size `k`, every t-subset of
/// points in exactly `lambda` blocks. An alternative notation for the
/// triple is `(v, t, r)` with `r = lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDesign {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
    pub k: usize,
    pub t: usize,
    pub lambda: u64,
}

/// Why a block list fails to be a t-design: two t-subsets with different
/// block counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignWitness {
    pub subset_a: Vec<usize>,
    pub count_a: u64,
    pub subset_b: Vec<usize>,
    pub count_b: u64,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

fn check_blocks(v: usize, blocks: &[Vec<usize>]) -> Result<usize, DesignError> {
    if blocks.is_empty() {
        return Err(DesignError::Empty);
    }
    let k = blocks[0].len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, b) in blocks.iter().enumerate() {
        if b.len() != k {
            return Err(DesignError::UnequalBlockSizes(i, b.len(), k));
        }
        if b.iter().any(|&p| p >= v) {
            return Err(DesignError::PointOutOfRange(i));
        }
        let set: BTreeSet<usize> = b.iter().copied().collect();
        if set.len() != b.len() {
            return Err(DesignError::RepeatedPoint(i));
        }
        if !seen.insert(set.into_iter().collect()) {
            return Err(DesignError::DuplicateBlock(i));
        }
    }
    Ok(k)
}

fn t_subsets(v: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(t);
    fn rec(start: usize, v: usize, t: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == t {
            out.push(current.clone());
            return;
        }
        for p in start..v {
            current.push(p);
            rec(p + 1, v, t, current, out);
            current.pop();
        }
    }
    rec(0, v, t, &mut current, &mut out);
    out
}

/// If every t-subset of points lies in the same number of blocks, returns
/// that count; otherwise returns a witness pair of differing t-subsets.
pub fn verify_design(
    v: usize,
    blocks: &[Vec<usize>],
    t: usize,
) -> Result<Result<u64, DesignWitness>, DesignError> {
    if t < 1 {
        return Err(DesignError::BadStrength);
    }
    check_blocks(v, blocks)?;
    if binomial(v as u64, t as u64) > MAX_T_SUBSETS {
        return Err(DesignError::TooManySubsets);
    }
    let block_sets: Vec<BTreeSet<usize>> =
        blocks.iter().map(|b| b.iter().copied().collect()).collect();
    let mut first: Option<(Vec<usize>, u64)> = None;
    for subset in t_subsets(v, t) {
        let count = block_sets
            .iter()
            .filter(|b| subset.iter().all(|p| b.contains(p)))
            .count() as u64;
        match &first {
            None => first = Some((subset, count)),
            Some((s0, c0)) => {
                if count != *c0 {
                    return Ok(Err(DesignWitness {
                        subset_a: s0.clone(),
                        count_a: *c0,
                        subset_b: subset,
                        count_b: count,
                    }));
                }
            }
        }
    }
    let (_, lambda) = first.expect("t <= v gives at least one subset");
    if lambda == 0 {
        // uniform zero coverage (t > k) is not a design
        return Ok(Err(DesignWitness {
            subset_a: t_subsets(v, t)[0].clone(),
            count_a: 0,
            subset_b: t_subsets(v, t)[0].clone(),
            count_b: 0,
        }));
    }
    Ok(Ok(lambda))
}

impl BlockDesign {
    /// Validates the block list and the t-design property.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>, t: usize) -> Result<Self, DesignError> {
        let k = check_blocks(v, &blocks)?;
        let lambda = match verify_design(v, &blocks, t)? {
            Ok(l) => l,
            Err(w) => {
                return Err(DesignError::NotADesign(format!(
                    "{:?} in {} blocks but {:?} in {}",
                    w.subset_a, w.count_a, w.subset_b, w.count_b
                )))
            }
        };
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        Ok(BlockDesign {
            v,
            blocks,
            k,
            t,
            lambda,
        })
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }
}

/// Points become design points, lines become blocks, verified as a
/// 2-design.
pub fn design_from_plane(s: &IncidenceStructure) -> Result<BlockDesign, DesignError> {
    if s.lines.is_empty() {
        return Err(DesignError::Empty);
    }
    let k = s.lines[0].len();
    if s.lines.iter().any(|l| l.len() != k) {
        return Err(DesignError::NonUniformLines);
    }
    BlockDesign::new(s.points.len(), s.lines.clone(), 2)
}

/// A partition of the block list into parallel classes, each class
/// partitioning the point set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolution {
    /// Classes of block indices into the design's block list.
    pub classes: Vec<Vec<usize>>,
}

/// Searches for a resolution by exhaustive backtracking over parallel
/// classes. `k | v` is required as a fast necessary condition.
pub fn find_resolution(d: &BlockDesign) -> Result<Option<Resolution>, DesignError> {
    if d.b() > MAX_RESOLUTION_BLOCKS {
        return Err(DesignError::TooManyBlocks);
    }
    if d.v % d.k != 0 {
        return Ok(None);
    }
    let class_size = d.v / d.k;
    let block_masks: Vec<u64> = d
        .blocks
        .iter()
        .map(|b| b.iter().fold(0u64, |m, &p| m | (1 << p)))
        .collect();
    let full_points: u64 = if d.v == 64 { u64::MAX } else { (1 << d.v) - 1 };

    let mut assigned = vec![false; d.b()];
    let mut classes: Vec<Vec<usize>> = Vec::new();

    fn backtrack(
        block_masks: &[u64],
        full_points: u64,
        class_size: usize,
        assigned: &mut [bool],
        classes: &mut Vec<Vec<usize>>,
    ) -> bool {
        let first = match assigned.iter().position(|&a| !a) {
            None => return true,
            Some(i) => i,
        };
        // the lowest unassigned block anchors the next class
        let mut class = vec![first];
        assigned[first] = true;
        let ok = extend_class(
            block_masks,
            full_points,
            class_size,
            block_masks[first],
            first,
            assigned,
            &mut class,
            classes,
        );
        if ok {
            return true;
        }
        assigned[first] = false;
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_class(
        block_masks: &[u64],
        full_points: u64,
        class_size: usize,
        covered: u64,
        last: usize,
        assigned: &mut [bool],
        class: &mut Vec<usize>,
        classes: &mut Vec<Vec<usize>>,
    ) -> bool {
        if class.len() == class_size {
            if covered != full_points {
                return false;
            }
            classes.push(class.clone());
            if backtrack(block_masks, full_points, class_size, assigned, classes) {
                return true;
            }
            classes.pop();
            return false;
        }
        for i in last + 1..block_masks.len() {
            if assigned[i] || covered & block_masks[i] != 0 {
                continue;
            }
            assigned[i] = true;
            class.push(i);
            if extend_class(
                block_masks,
                full_points,
                class_size,
                covered | block_masks[i],
                i,
                assigned,
                class,
                classes,
            ) {
                return true;
            }
            class.pop();
            assigned[i] = false;
        }
        false
    }

    if backtrack(
        &block_masks,
        full_points,
        class_size,
        &mut assigned,
        &mut classes,
    ) {
        Ok(Some(Resolution { classes }))
    } else {
        Ok(None)
    }
}

/// Block count and (uniform) per-point replication number, with the
/// identity `b * k = v * replication` asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DesignCounts {
    pub b: usize,
    pub point_replication: u64,
}

pub fn design_counts(d: &BlockDesign) -> Result<DesignCounts, DesignError> {
    let reps: Vec<u64> = (0..d.v)
        .map(|p| d.blocks.iter().filter(|b| b.contains(&p)).count() as u64)
        .collect();
    let r0 = reps[0];
    if reps.iter().any(|&r| r != r0) {
        return Err(DesignError::NotADesign(
            "point replication is not uniform".to_string(),
        ));
    }
    assert_eq!(d.b() as u64 * d.k as u64, d.v as u64 * r0);
    Ok(DesignCounts {
        b: d.b(),
        point_replication: r0,
    })
}

/// All t-designs on `v` points whose block size equals the strength, by
/// exhaustive enumeration over sets of t-subsets. The expected outcome is a
/// single design: all t-subsets, with lambda = 1.
pub fn k_equals_t_designs(v: usize, t: usize) -> Result<Vec<BlockDesign>, DesignError> {
    if t < 1 {
        return Err(DesignError::BadStrength);
    }
    if v as u64 > MAX_KT_POINTS || t as u64 > MAX_KT_STRENGTH || t > v {
        return Err(DesignError::KtLimit);
    }
    let subsets = t_subsets(v, t);
    let m = subsets.len();
    let mut out = Vec::new();
    if m <= 30 {
        // plain loop over every nonempty set of t-subsets
        for mask in 1u64..1 << m {
            if kt_mask_is_design(mask, m) {
                let blocks: Vec<Vec<usize>> = (0..m)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| subsets[i].clone())
                    .collect();
                out.push(BlockDesign::new(v, blocks, t)?);
            }
        }
    } else {
        // same search with feasibility pruning: once one subset is in and
        // another is out, no uniform coverage is possible
        kt_pruned(&subsets, v, t, 0, false, false, &mut out)?;
    }
    Ok(out)
}

/// For k = t a t-subset is covered once if it is a block and zero times
/// otherwise, so uniform positive coverage means every subset is chosen.
fn kt_mask_is_design(mask: u64, m: usize) -> bool {
    let mut cover_first = None;
    for i in 0..m {
        let c = mask >> i & 1;
        match cover_first {
            None => cover_first = Some(c),
            Some(c0) => {
                if c != c0 {
                    return false;
                }
            }
        }
    }
    cover_first == Some(1)
}

fn kt_pruned(
    subsets: &[Vec<usize>],
    v: usize,
    t: usize,
    idx: usize,
    any_in: bool,
    any_out: bool,
    out: &mut Vec<BlockDesign>,
) -> Result<(), DesignError> {
    if any_in && any_out {
        return Ok(());
    }
    if idx == subsets.len() {
        if any_in && !any_out {
            let blocks: Vec<Vec<usize>> = subsets.to_vec();
            out.push(BlockDesign::new(v, blocks, t)?);
        }
        return Ok(());
    }
    kt_pruned(subsets, v, t, idx + 1, true, any_out, out)?;
    kt_pruned(subsets, v, t, idx + 1, any_in, true, out)?;
    Ok(())
}
