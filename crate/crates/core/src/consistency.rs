//! Consistent-subset verification and the exhaustive oracle every fast solver
//! is checked against.
//!
//! The oracle enumerates index subsets by increasing cardinality and
//! lexicographically within each cardinality, so its answer is deterministic:
//! among minimum consistent subsets it returns the lexicographically smallest
//! index set.

use crate::geom::cmp_dist;
use crate::instance::{Instance, SubsetSolution};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConsistencyError {
    #[error("no consistent subset within the size cap {0}")]
    NoSolutionWithinCap(usize),
    #[error("instance too large for exhaustive search ({0} points, limit 62)")]
    TooLarge(usize),
}

/// Is `sol` a consistent subset of `inst`?
///
/// Every point outside the subset must have *all* of its minimum-distance
/// subset points colored like itself (a tie with a differently colored point
/// fails), and the subset must contain at least one point of every color
/// present.
pub fn is_consistent(inst: &Instance, sol: &SubsetSolution) -> bool {
    let n = inst.len();
    assert!(
        sol.indices.iter().all(|&i| i < n),
        "solution indices out of range"
    );
    if sol.indices.is_empty() {
        return n == 0;
    }
    let mut colors = inst.colors();
    colors.retain(|c| !sol.indices.iter().any(|&i| inst.points[i].color == *c));
    if !colors.is_empty() {
        return false;
    }
    for (idx, p) in inst.points.iter().enumerate() {
        if sol.contains(idx) {
            continue;
        }
        let mut best: Option<usize> = None;
        let mut ok = true;
        for &s in &sol.indices {
            match best {
                None => {
                    best = Some(s);
                    ok = inst.points[s].color == p.color;
                }
                Some(b) => match cmp_dist(&p.pos, &inst.points[s].pos, &inst.points[b].pos) {
                    Ordering::Less => {
                        best = Some(s);
                        ok = inst.points[s].color == p.color;
                    }
                    Ordering::Equal => {
                        ok = ok && inst.points[s].color == p.color;
                    }
                    Ordering::Greater => {}
                },
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Precomputed neighbor rankings used by the exhaustive search. For each
/// point the other points are sorted by exact distance, with tied distances
/// sharing a rank, so subset checks are pure integer work.
struct NeighborRanks {
    /// `order[p]` = (rank, point index) sorted by increasing distance from p.
    order: Vec<Vec<(u32, u32)>>,
    color_bit: Vec<u64>,
    full_mask: u64,
    point_color: Vec<u32>,
}

impl NeighborRanks {
    fn build(inst: &Instance) -> Self {
        let n = inst.len();
        let colors = inst.colors();
        let color_id = |c| colors.iter().position(|&x| x == c).unwrap();
        let mut order = Vec::with_capacity(n);
        for p in 0..n {
            let mut others: Vec<u32> = (0..n as u32).filter(|&q| q as usize != p).collect();
            others.sort_by(|&a, &b| {
                cmp_dist(
                    &inst.points[p].pos,
                    &inst.points[a as usize].pos,
                    &inst.points[b as usize].pos,
                )
                .then(a.cmp(&b))
            });
            let mut ranked = Vec::with_capacity(others.len());
            let mut rank = 0u32;
            for i in 0..others.len() {
                if i > 0 {
                    let prev = others[i - 1] as usize;
                    let cur = others[i] as usize;
                    if cmp_dist(&inst.points[p].pos, &inst.points[prev].pos, &inst.points[cur].pos)
                        != Ordering::Equal
                    {
                        rank += 1;
                    }
                }
                ranked.push((rank, others[i]));
            }
            order.push(ranked);
        }
        let color_bit = inst
            .points
            .iter()
            .map(|p| 1u64 << color_id(p.color))
            .collect();
        NeighborRanks {
            order,
            color_bit,
            full_mask: (1u64 << colors.len()) - 1,
            point_color: inst.points.iter().map(|p| p.color).collect(),
        }
    }

    /// Consistency of the subset encoded as a bitmask. Color coverage must
    /// have been checked already.
    fn consistent_mask(&self, mask: u64) -> bool {
        for (p, ranks) in self.order.iter().enumerate() {
            if mask & (1u64 << p) != 0 {
                continue;
            }
            let mut hit_rank: Option<u32> = None;
            for &(rank, q) in ranks {
                if let Some(r) = hit_rank {
                    if rank != r {
                        break;
                    }
                }
                if mask & (1u64 << q) != 0 {
                    if self.point_color[q as usize] != self.point_color[p] {
                        return false;
                    }
                    hit_rank = Some(rank);
                }
            }
            if hit_rank.is_none() {
                return false;
            }
        }
        true
    }
}

fn mask_to_solution(mask: u64, n: usize) -> SubsetSolution {
    SubsetSolution::new((0..n).filter(|&i| mask & (1u64 << i) != 0).collect())
}

/// Iterates subsets of {0..n-1} of size k in lexicographic order of the
/// sorted index sequence, calling `f` until it returns true; returns that
/// subset's mask.
fn first_subset<F: FnMut(u64) -> bool>(n: usize, k: usize, mut f: F) -> Option<u64> {
    if k == 0 || k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | (1u64 << i));
        if f(mask) {
            return Some(mask);
        }
        // Classic next-combination step.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != n - k + i {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Minimum consistent subset by exhaustive search, enumerating subsets by
/// increasing cardinality and lexicographically within a cardinality.
pub fn brute_min_consistent(
    inst: &Instance,
    size_cap: Option<usize>,
) -> Result<SubsetSolution, ConsistencyError> {
    let n = inst.len();
    if n > 62 {
        return Err(ConsistencyError::TooLarge(n));
    }
    let cap = size_cap.unwrap_or(n).min(n);
    if n == 0 {
        return Ok(SubsetSolution::new(Vec::new()));
    }
    let ranks = NeighborRanks::build(inst);
    let k_min = ranks.full_mask.count_ones() as usize;
    for k in k_min..=cap {
        let found = first_subset(n, k, |mask| {
            let mut colors = 0u64;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                colors |= ranks.color_bit[i];
                m &= m - 1;
            }
            colors == ranks.full_mask && ranks.consistent_mask(mask)
        });
        if let Some(mask) = found {
            return Ok(mask_to_solution(mask, n));
        }
    }
    Err(ConsistencyError::NoSolutionWithinCap(cap))
}

/// Is there a consistent subset of size exactly `k`? Returns the
/// lexicographically smallest one if so.
pub fn decide_k(inst: &Instance, k: usize) -> Option<SubsetSolution> {
    assert!(k >= 1, "decide_k requires k >= 1");
    let n = inst.len();
    if k > n || n > 62 {
        return None;
    }
    let ranks = NeighborRanks::build(inst);
    first_subset(n, k, |mask| {
        let mut colors = 0u64;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            colors |= ranks.color_bit[i];
            m &= m - 1;
        }
        colors == ranks.full_mask && ranks.consistent_mask(mask)
    })
    .map(|mask| mask_to_solution(mask, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{ColoredPoint, StructureTag};

    fn inst(points: Vec<ColoredPoint>) -> Instance {
        Instance::new(points, StructureTag::General).unwrap()
    }

    #[test]
    fn monochromatic_single_point_consistent() {
        let i = inst(vec![
            ColoredPoint::ints(0, 0, 0),
            ColoredPoint::ints(1, 0, 0),
            ColoredPoint::ints(5, 3, 0),
        ]);
        for k in 0..3 {
            assert!(is_consistent(&i, &SubsetSolution::new(vec![k])));
        }
    }

    #[test]
    fn missing_color_inconsistent() {
        let i = inst(vec![ColoredPoint::ints(0, 0, 0), ColoredPoint::ints(1, 0, 1)]);
        assert!(!is_consistent(&i, &SubsetSolution::new(vec![0])));
    }

    #[test]
    fn near_blue_saves_far_blue() {
        // blue(3,0) is closer to blue(4,0) than to red(0,0), so the subset
        // {red(0,0), blue(4,0)} is consistent.
        let i = inst(vec![
            ColoredPoint::ints(0, 0, 0),
            ColoredPoint::ints(4, 0, 1),
            ColoredPoint::ints(3, 0, 1),
        ]);
        let sol = SubsetSolution::new(vec![0, 1]);
        // Direct distance table: d(p2, p1) = 1 < d(p2, p0) = 3.
        assert!(is_consistent(&i, &sol));
    }

    #[test]
    fn tie_with_wrong_color_fails() {
        // (1,0) is equidistant from red(0,0) and blue(2,0).
        let i = inst(vec![
            ColoredPoint::ints(0, 0, 0),
            ColoredPoint::ints(2, 0, 1),
            ColoredPoint::ints(1, 0, 0),
        ]);
        assert!(!is_consistent(&i, &SubsetSolution::new(vec![0, 1])));
    }

    #[test]
    fn full_set_always_consistent() {
        let i = inst(vec![
            ColoredPoint::ints(0, 0, 0),
            ColoredPoint::ints(2, 1, 1),
            ColoredPoint::ints(-3, 4, 2),
        ]);
        let all = SubsetSolution::new((0..i.len()).collect());
        assert!(is_consistent(&i, &all));
    }

    #[test]
    fn brute_monochromatic_size_one() {
        let i = inst(vec![
            ColoredPoint::ints(0, 0, 0),
            ColoredPoint::ints(1, 0, 0),
            ColoredPoint::ints(2, 5, 0),
            ColoredPoint::ints(-4, 2, 0),
            ColoredPoint::ints(3, -1, 0),
        ]);
        let sol = brute_min_consistent(&i, None).unwrap();
        assert_eq!(sol.size, 1);
        assert_eq!(sol.indices, vec![0]);
    }

    #[test]
    fn brute_two_far_clusters() {
        let i = inst(vec![
            ColoredPoint::ints(0, 0, 0),
            ColoredPoint::ints(1, 0, 0),
            ColoredPoint::ints(100, 0, 1),
            ColoredPoint::ints(101, 0, 1),
        ]);
        let sol = brute_min_consistent(&i, None).unwrap();
        assert_eq!(sol.size, 2);
    }

    /// Independent oracle: scan all 2^n subsets and keep the best by
    /// (size, lexicographic indices).
    fn full_scan_min(inst: &Instance) -> SubsetSolution {
        let n = inst.len();
        let mut best: Option<SubsetSolution> = None;
        for mask in 1u64..(1u64 << n) {
            let sol = mask_to_solution(mask, n);
            if is_consistent(inst, &sol) {
                let better = match &best {
                    None => true,
                    Some(b) => {
                        sol.size < b.size || (sol.size == b.size && sol.indices < b.indices)
                    }
                };
                if better {
                    best = Some(sol);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn brute_matches_full_scan_on_seeded_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xC0);
        for _ in 0..40 {
            let n = rng.gen_range(1..=10);
            let mut pts = Vec::new();
            while pts.len() < n {
                let p = ColoredPoint::ints(
                    rng.gen_range(-8..=8),
                    rng.gen_range(-8..=8),
                    rng.gen_range(0..3),
                );
                if !pts.iter().any(|q: &ColoredPoint| q.pos == p.pos) {
                    pts.push(p);
                }
            }
            let i = inst(pts);
            let fast = brute_min_consistent(&i, None).unwrap();
            let slow = full_scan_min(&i);
            assert_eq!(fast, slow);
            assert!(is_consistent(&i, &fast));
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let i = inst(vec![
            ColoredPoint::ints(0, 0, 0),
            ColoredPoint::ints(9, 0, 1),
            ColoredPoint::ints(0, 7, 2),
        ]);
        assert_eq!(
            brute_min_consistent(&i, Some(2)).unwrap_err(),
            ConsistencyError::NoSolutionWithinCap(2)
        );
        assert_eq!(brute_min_consistent(&i, Some(3)).unwrap().size, 3);
    }

    #[test]
    fn decide_k_edges() {
        let i = inst(vec![
            ColoredPoint::ints(0, 0, 0),
            ColoredPoint::ints(9, 0, 1),
            ColoredPoint::ints(0, 7, 2),
        ]);
        // k = n: the full set is always consistent.
        assert!(decide_k(&i, 3).is_some());
        // k below the number of colors: impossible by pigeonhole.
        assert!(decide_k(&i, 2).is_none());
    }

    #[test]
    fn decide_k_agrees_with_brute_min() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xD1);
        for _ in 0..25 {
            let n = rng.gen_range(2..=10);
            let mut pts = Vec::new();
            while pts.len() < n {
                let p = ColoredPoint::ints(
                    rng.gen_range(-8..=8),
                    rng.gen_range(-8..=8),
                    rng.gen_range(0..3),
                );
                if !pts.iter().any(|q: &ColoredPoint| q.pos == p.pos) {
                    pts.push(p);
                }
            }
            let i = inst(pts);
            let min = brute_min_consistent(&i, None).unwrap();
            let at_min = decide_k(&i, min.size).expect("solution at the minimum size");
            assert!(is_consistent(&i, &at_min));
            if min.size > 1 {
                assert!(decide_k(&i, min.size - 1).is_none());
            }
            // Observed monotonicity of the minimum: brute size is the least k
            // with decide_k != none.
            for k in 1..min.size {
                assert!(decide_k(&i, k).is_none());
            }
        }
    }
}
