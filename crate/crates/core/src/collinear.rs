//! Dynamic programs for collinear instances: an O(n) solver over x-sorted
//! points, the quadratic reference it was derived from, and a constrained
//! variant (forbidden points, forced extreme selections) needed by the
//! two-parallel-lines solver.
//!
//! Points live on a line, so all distance comparisons reduce to differences
//! of the 1-D parameters; with integer inputs the whole DP runs on `i128`,
//! otherwise on exact rationals.

use crate::geom::Coord;
use crate::instance::{Color, Instance, SubsetSolution};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A colored point on the common line, identified by its exact 1-D parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinePoint {
    pub t: Coord,
    pub color: Color,
}

impl LinePoint {
    pub fn new(t: Coord, color: Color) -> Self {
        LinePoint { t, color }
    }
}

/// A point of a constrained instance: forbidden points take part in every
/// nearest-neighbor validity check but may not be selected.
#[derive(Clone, Debug)]
pub struct ConstrainedPoint {
    pub t: Coord,
    pub color: Color,
    pub selectable: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CollinearError {
    #[error("points must be strictly sorted by position")]
    NotSorted,
    #[error("no valid selection exists under the given constraints")]
    Infeasible,
}

/// Maximal run of equal colors in the sorted sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub color: Color,
}

/// Partition of a color sequence into maximal blocks.
pub fn blocks(colors: &[Color]) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    for (i, &c) in colors.iter().enumerate() {
        match out.last_mut() {
            Some(b) if b.color == c => b.end = i,
            _ => out.push(Block {
                start: i,
                end: i,
                color: c,
            }),
        }
    }
    out
}

/// DP table of the collinear solvers, exposed for tests. Entry `t[k]` is the
/// minimum size of a consistent subset of the first `k+1` points that
/// contains point `k`; the final entry belongs to the far sentinel.
#[derive(Clone, Debug)]
pub struct LinearDpTable {
    pub t: Vec<u32>,
    pub back: Vec<Option<usize>>,
    /// Per point, the index of the nearest same-block point to its left with
    /// a strictly smaller table value, or the point itself.
    pub cached_idx: Vec<usize>,
}

pub(crate) trait LineScalar: Clone + Ord + Sized {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn double(&self) -> Self;
    fn inc(&self) -> Self;
}

impl LineScalar for i128 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn double(&self) -> Self {
        self * 2
    }
    fn inc(&self) -> Self {
        self + 1
    }
}

impl LineScalar for Coord {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn double(&self) -> Self {
        self + self
    }
    fn inc(&self) -> Self {
        self + Coord::one()
    }
}

fn check_sorted(points: &[LinePoint]) -> Result<(), CollinearError> {
    if points.windows(2).any(|w| w[0].t >= w[1].t) {
        return Err(CollinearError::NotSorted);
    }
    Ok(())
}

/// Integer fast path: all parameters integral and comfortably inside i64.
fn as_i128(points: &[LinePoint]) -> Option<Vec<i128>> {
    let limit = num_bigint::BigInt::from(i64::MAX);
    points
        .iter()
        .map(|p| {
            if p.t.denom().is_one() && p.t.numer().abs() < limit {
                p.t.numer().try_into().ok()
            } else {
                None
            }
        })
        .collect()
}

/// Appends the far sentinel: a fresh color at distance more than |p1 pn|
/// beyond the last point.
fn with_sentinel<S: LineScalar>(ts: &[S], colors: &[Color]) -> (Vec<S>, Vec<Color>) {
    let n = ts.len();
    let span = ts[n - 1].sub(&ts[0]);
    let sentinel_t = ts[n - 1].add(&span.double()).inc();
    let fresh = colors.iter().copied().max().unwrap_or(0) + 1;
    let mut ts2 = ts.to_vec();
    ts2.push(sentinel_t);
    let mut c2 = colors.to_vec();
    c2.push(fresh);
    (ts2, c2)
}

/// The O(n) table computation: same-block candidates come from the cached
/// indices, different-color candidates from a window on the previous block
/// maintained with a pointer that only moves left within a block scan.
fn linear_tables<S: LineScalar>(ts: &[S], colors: &[Color]) -> LinearDpTable {
    let n = ts.len();
    let mut t = vec![0u32; n];
    let mut back: Vec<Option<usize>> = vec![None; n];
    let mut cached = vec![0usize; n];
    let mut block_start = vec![0usize; n];
    // Pointer into the previous block for the sliding window; reset whenever
    // a new block begins.
    let mut window_ptr = 0usize;

    for k in 0..n {
        let bstart = if k > 0 && colors[k] == colors[k - 1] {
            block_start[k - 1]
        } else {
            k
        };
        block_start[k] = bstart;
        if bstart == 0 {
            // Monochromatic prefix.
            t[k] = 1;
            back[k] = None;
        } else {
            let a = bstart - 1; // rightmost point of the previous block
            let y = block_start[a]; // leftmost point of the previous block
            if k == bstart {
                window_ptr = a;
            }
            let mut best: Option<(u32, usize)> = None;
            let consider = |val: u32, idx: usize, best: &mut Option<(u32, usize)>| {
                if best.as_ref().map_or(true, |(v, _)| val < *v) {
                    *best = Some((val, idx));
                }
            };
            // Same-color candidates: the block prefix minimum is attained at
            // k-1 or at its cached index.
            if k > bstart {
                consider(t[k - 1], k - 1, &mut best);
                let c = cached[k - 1];
                consider(t[c], c, &mut best);
            }
            // Different-color candidates from the previous block, restricted
            // to the open window (l, r). The window slides left as k scans
            // the block, so the pointer only ever decreases.
            let l = ts[a].double().sub(&ts[k]);
            let r = ts[bstart].double().sub(&ts[k]);
            while window_ptr > y && ts[window_ptr] >= r {
                window_ptr -= 1;
            }
            if ts[window_ptr] < r && ts[window_ptr] > l {
                consider(t[window_ptr], window_ptr, &mut best);
                let c = cached[window_ptr];
                if c >= y && ts[c] > l {
                    consider(t[c], c, &mut best);
                }
            }
            let (bv, bi) = best.expect("a valid predecessor always exists");
            t[k] = bv + 1;
            back[k] = Some(bi);
        }
        // Maintain the cached index of the nearest smaller value within the
        // block.
        cached[k] = if k == block_start[k] {
            k
        } else {
            let x = cached[k - 1];
            if t[x] < t[k] {
                x
            } else {
                k
            }
        };
    }
    LinearDpTable {
        t,
        back,
        cached_idx: cached,
    }
}

fn reconstruct(back: &[Option<usize>], from: usize, drop_from: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = Some(from);
    while let Some(k) = cur {
        if k != drop_from {
            out.push(k);
        }
        cur = back[k];
    }
    out
}

/// Minimum consistent subset of x-sorted collinear points in O(n).
pub fn solve_collinear_linear(points: &[LinePoint]) -> Result<SubsetSolution, CollinearError> {
    check_sorted(points)?;
    if points.is_empty() {
        return Ok(SubsetSolution::new(Vec::new()));
    }
    let colors: Vec<Color> = points.iter().map(|p| p.color).collect();
    let table = match as_i128(points) {
        Some(ts) => {
            let (ts, cs) = with_sentinel(&ts, &colors);
            linear_tables(&ts, &cs)
        }
        None => {
            let ts: Vec<Coord> = points.iter().map(|p| p.t.clone()).collect();
            let (ts, cs) = with_sentinel(&ts, &colors);
            linear_tables(&ts, &cs)
        }
    };
    let sentinel = points.len();
    Ok(SubsetSolution::new(reconstruct(
        &table.back,
        sentinel,
        sentinel,
    )))
}

/// The table itself (sentinel included), for property tests.
pub fn linear_dp_table(points: &[LinePoint]) -> Result<LinearDpTable, CollinearError> {
    check_sorted(points)?;
    assert!(!points.is_empty());
    let colors: Vec<Color> = points.iter().map(|p| p.color).collect();
    let ts: Vec<Coord> = points.iter().map(|p| p.t.clone()).collect();
    let (ts, cs) = with_sentinel(&ts, &colors);
    Ok(linear_tables(&ts, &cs))
}

/// Validity of predecessor `i` for point `k` by the explicit scan of the
/// points strictly between them: same color is always valid; otherwise every
/// in-between point must be strictly nearer to the endpoint sharing its
/// color. Exposed for window-correctness tests.
pub(crate) fn explicit_validity<S: LineScalar>(
    ts: &[S],
    colors: &[Color],
    i: usize,
    k: usize,
) -> bool {
    if colors[i] == colors[k] {
        return true;
    }
    let sum = ts[i].add(&ts[k]);
    for j in (i + 1)..k {
        let dj = ts[j].double();
        if dj == sum {
            return false;
        }
        if colors[j] == colors[i] && dj > sum {
            return false;
        }
        if colors[j] == colors[k] && dj < sum {
            return false;
        }
        if colors[j] != colors[i] && colors[j] != colors[k] {
            return false;
        }
    }
    true
}

/// Quadratic reference DP: the same recurrence with validity decided by one
/// binary search around the midpoint of each candidate gap.
fn quadratic_tables<S: LineScalar>(ts: &[S], colors: &[Color]) -> (Vec<u32>, Vec<Option<usize>>) {
    let n = ts.len();
    let mut t = vec![0u32; n];
    let mut back: Vec<Option<usize>> = vec![None; n];
    let mut block_start = vec![0usize; n];
    for k in 0..n {
        let bstart = if k > 0 && colors[k] == colors[k - 1] {
            block_start[k - 1]
        } else {
            k
        };
        block_start[k] = bstart;
        if bstart == 0 {
            t[k] = 1;
            continue;
        }
        let y = block_start[bstart - 1];
        let mut best: Option<(u32, usize)> = None;
        for i in y..k {
            let valid = if colors[i] == colors[k] {
                true
            } else {
                // One binary search for the midpoint split, then the two
                // boundary points decide validity.
                let sum = ts[i].add(&ts[k]);
                // First index j in (i, k) with 2*ts[j] >= sum.
                let mut lo = i + 1;
                let mut hi = k;
                while lo < hi {
                    let mid = (lo + hi) / 2;
                    if ts[mid].double() >= sum {
                        hi = mid;
                    } else {
                        lo = mid + 1;
                    }
                }
                let split = lo;
                let mut ok = true;
                if split < k && ts[split].double() == sum {
                    ok = false;
                }
                if ok && split > i + 1 {
                    ok = colors[split - 1] == colors[i];
                }
                if ok && split < k {
                    ok = colors[split] == colors[k];
                }
                debug_assert_eq!(ok, explicit_validity(ts, colors, i, k));
                ok
            };
            if valid && best.as_ref().map_or(true, |(v, _)| t[i] < *v) {
                best = Some((t[i], i));
            }
        }
        let (bv, bi) = best.expect("a valid predecessor always exists");
        t[k] = bv + 1;
        back[k] = Some(bi);
    }
    (t, back)
}

/// Minimum consistent subset of x-sorted collinear points, quadratic
/// reference implementation.
pub fn solve_collinear_quadratic(points: &[LinePoint]) -> Result<SubsetSolution, CollinearError> {
    check_sorted(points)?;
    if points.is_empty() {
        return Ok(SubsetSolution::new(Vec::new()));
    }
    let colors: Vec<Color> = points.iter().map(|p| p.color).collect();
    let (back, sentinel) = match as_i128(points) {
        Some(ts) => {
            let (ts, cs) = with_sentinel(&ts, &colors);
            (quadratic_tables(&ts, &cs).1, points.len())
        }
        None => {
            let ts: Vec<Coord> = points.iter().map(|p| p.t.clone()).collect();
            let (ts, cs) = with_sentinel(&ts, &colors);
            (quadratic_tables(&ts, &cs).1, points.len())
        }
    };
    Ok(SubsetSolution::new(reconstruct(&back, sentinel, sentinel)))
}

/// Minimum valid selection when some points are forbidden (they still
/// participate in every validity check) and the extreme selected points may
/// be forced.
///
/// `forced_ends = (s, t)` requires `s` and `t` to be selected and to be the
/// leftmost and rightmost selected indices.
pub fn solve_collinear_constrained(
    points: &[ConstrainedPoint],
    forced_ends: Option<(usize, usize)>,
) -> Result<SubsetSolution, CollinearError> {
    let n = points.len();
    if points
        .windows(2)
        .any(|w| w[0].t > w[1].t)
    {
        return Err(CollinearError::NotSorted);
    }
    // Selectable points must be at pairwise distinct parameters.
    for w in points.windows(2) {
        if w[0].t == w[1].t && w[0].selectable && w[1].selectable {
            return Err(CollinearError::NotSorted);
        }
    }
    if n == 0 {
        return Ok(SubsetSolution::new(Vec::new()));
    }
    if let Some((s, t)) = forced_ends {
        if s > t || t >= n || !points[s].selectable || !points[t].selectable {
            return Err(CollinearError::Infeasible);
        }
    }

    // Nearest-of-two rule for a point strictly between selected i and j,
    // honoring the strict-closer convention.
    let gap_ok = |i: usize, j: usize| -> bool {
        let sum = points[i].t.clone() + points[j].t.clone();
        for u in (i + 1)..j {
            let du = points[u].t.clone() + points[u].t.clone();
            let cu = points[u].color;
            match du.cmp(&sum) {
                std::cmp::Ordering::Less => {
                    if cu != points[i].color {
                        return false;
                    }
                }
                std::cmp::Ordering::Greater => {
                    if cu != points[j].color {
                        return false;
                    }
                }
                std::cmp::Ordering::Equal => {
                    if cu != points[i].color || cu != points[j].color {
                        return false;
                    }
                }
            }
        }
        true
    };
    let left_ok = |j: usize| (0..j).all(|u| points[u].color == points[j].color);
    let right_ok = |j: usize| ((j + 1)..n).all(|u| points[u].color == points[j].color);

    const INF: u32 = u32::MAX;
    let mut t = vec![INF; n];
    let mut back: Vec<Option<usize>> = vec![None; n];
    let (range_lo, range_hi) = match forced_ends {
        Some((s, e)) => (s, e),
        None => (0, n.saturating_sub(1)),
    };
    for j in range_lo..=range_hi {
        if !points[j].selectable {
            continue;
        }
        if match forced_ends {
            Some((s, _)) => j == s,
            None => true,
        } && left_ok(j)
        {
            t[j] = 1;
        }
        for i in range_lo..j {
            if t[i] == INF || !points[i].selectable {
                continue;
            }
            if gap_ok(i, j) && t[i] + 1 < t[j] {
                t[j] = t[i] + 1;
                back[j] = Some(i);
            }
        }
    }
    let mut best: Option<(u32, usize)> = None;
    for j in range_lo..=range_hi {
        if t[j] == INF {
            continue;
        }
        if let Some((_, e)) = forced_ends {
            if j != e {
                continue;
            }
        }
        if right_ok(j) && best.as_ref().map_or(true, |(v, _)| t[j] < *v) {
            best = Some((t[j], j));
        }
    }
    match best {
        Some((_, j)) => Ok(SubsetSolution::new(reconstruct(&back, j, usize::MAX))),
        None => Err(CollinearError::Infeasible),
    }
}

/// Projects a collinear instance onto exact 1-D parameters along its line.
/// Returns the sorted line points together with the original instance index
/// of each.
pub fn line_points_from_instance(inst: &Instance) -> Option<(Vec<LinePoint>, Vec<usize>)> {
    let n = inst.len();
    if n == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    // Direction of the common line: from the first point to any distinct one.
    let p0 = &inst.points[0].pos;
    let dir = inst
        .points
        .iter()
        .find(|p| p.pos != *p0)
        .map(|p| (&p.pos.x - &p0.x, &p.pos.y - &p0.y));
    let mut items: Vec<(Coord, Color, usize)> = Vec::with_capacity(n);
    for (idx, p) in inst.points.iter().enumerate() {
        let t = match &dir {
            None => Coord::zero(),
            Some((dx, dy)) => (&p.pos.x - &p0.x) * dx + (&p.pos.y - &p0.y) * dy,
        };
        items.push((t, p.color, idx));
    }
    items.sort_by(|a, b| a.0.cmp(&b.0));
    if items.windows(2).any(|w| w[0].0 == w[1].0) {
        return None; // not genuinely collinear-distinct
    }
    let order: Vec<usize> = items.iter().map(|it| it.2).collect();
    let pts = items
        .into_iter()
        .map(|(t, c, _)| LinePoint::new(t, c))
        .collect();
    Some((pts, order))
}

/// Solves a collinear instance and reports indices of the original instance.
pub fn solve_instance(inst: &Instance) -> Result<SubsetSolution, CollinearError> {
    let (pts, order) = line_points_from_instance(inst).ok_or(CollinearError::NotSorted)?;
    let sol = solve_collinear_linear(&pts)?;
    Ok(SubsetSolution::new(
        sol.indices.iter().map(|&i| order[i]).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::{brute_min_consistent, is_consistent};
    use crate::geom::coord;
    use crate::instance::{ColoredPoint, Instance, StructureTag};
    use rand::{Rng, SeedableRng};

    fn lp(vals: &[(i64, u32)]) -> Vec<LinePoint> {
        vals.iter()
            .map(|&(t, c)| LinePoint::new(coord(t), c))
            .collect()
    }

    fn as_instance(points: &[LinePoint]) -> Instance {
        Instance::new(
            points
                .iter()
                .map(|p| ColoredPoint::new(crate::geom::Point::new(p.t.clone(), coord(0)), p.color))
                .collect(),
            StructureTag::Collinear,
        )
        .unwrap()
    }

    fn random_points(rng: &mut impl Rng, n: usize, colors: u32, span: i64) -> Vec<LinePoint> {
        let mut ts = std::collections::BTreeSet::new();
        while ts.len() < n {
            ts.insert(rng.gen_range(-span..=span));
        }
        ts.into_iter()
            .map(|t| LinePoint::new(coord(t), rng.gen_range(0..colors)))
            .collect()
    }

    #[test]
    fn monochromatic_is_one() {
        let pts = lp(&[(0, 0), (1, 0), (3, 0), (7, 0), (8, 0), (20, 0), (21, 0)]);
        assert_eq!(solve_collinear_linear(&pts).unwrap().size, 1);
        assert_eq!(solve_collinear_quadratic(&pts).unwrap().size, 1);
    }

    #[test]
    fn one_per_far_block() {
        let pts = lp(&[(0, 0), (1, 0), (10, 1), (11, 1)]);
        let sol = solve_collinear_linear(&pts).unwrap();
        assert_eq!(sol.size, 2);
        let inst = as_instance(&pts);
        assert_eq!(brute_min_consistent(&inst, None).unwrap().size, 2);
        assert!(is_consistent(&inst, &sol));
    }

    #[test]
    fn not_sorted_rejected() {
        let pts = lp(&[(3, 0), (1, 1)]);
        assert_eq!(
            solve_collinear_linear(&pts).unwrap_err(),
            CollinearError::NotSorted
        );
        let dup = lp(&[(1, 0), (1, 1)]);
        assert_eq!(
            solve_collinear_quadratic(&dup).unwrap_err(),
            CollinearError::NotSorted
        );
    }

    #[test]
    fn single_point() {
        let pts = lp(&[(5, 2)]);
        let sol = solve_collinear_linear(&pts).unwrap();
        assert_eq!(sol.indices, vec![0]);
    }

    #[test]
    fn linear_matches_brute_on_seeded_instances() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x11a);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let colors = rng.gen_range(1..=4);
            let pts = random_points(&mut rng, n, colors, 40);
            let inst = as_instance(&pts);
            let fast = solve_collinear_linear(&pts).unwrap();
            let brute = brute_min_consistent(&inst, None).unwrap();
            assert_eq!(fast.size, brute.size, "pts={pts:?}");
            assert!(is_consistent(&inst, &fast));
        }
    }

    #[test]
    fn linear_matches_quadratic_on_seeded_instances() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x11b);
        for _ in 0..200 {
            let n = rng.gen_range(1..=80);
            let colors = rng.gen_range(1..=5);
            let pts = random_points(&mut rng, n, colors, 500);
            let a = solve_collinear_linear(&pts).unwrap();
            let b = solve_collinear_quadratic(&pts).unwrap();
            assert_eq!(a.size, b.size, "pts={pts:?}");
            let inst = as_instance(&pts);
            assert!(is_consistent(&inst, &a));
            assert!(is_consistent(&inst, &b));
        }
    }

    #[test]
    fn rational_coordinates_supported() {
        use crate::geom::ratio;
        let pts = vec![
            LinePoint::new(ratio(-1, 3), 0),
            LinePoint::new(ratio(1, 7), 0),
            LinePoint::new(ratio(22, 7), 1),
            LinePoint::new(ratio(23, 7), 1),
        ];
        assert_eq!(solve_collinear_linear(&pts).unwrap().size, 2);
        assert_eq!(solve_collinear_quadratic(&pts).unwrap().size, 2);
    }

    /// Lemma-style cache property: within each block, for the minimizing x
    /// over any prefix range ending at j, T(j) <= T(x) + 1.
    #[test]
    fn table_block_property_holds() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x11c);
        for _ in 0..60 {
            let n = rng.gen_range(1..=60);
            let colors = rng.gen_range(1..=4);
            let pts = random_points(&mut rng, n, colors, 300);
            let table = linear_dp_table(&pts).unwrap();
            let mut colors: Vec<Color> = pts.iter().map(|p| p.color).collect();
            colors.push(colors.iter().copied().max().unwrap() + 1);
            let bl = blocks(&colors);
            for b in &bl {
                for j in b.start..=b.end {
                    let min_prefix = (b.start..=j).map(|x| table.t[x]).min().unwrap();
                    assert!(table.t[j] <= min_prefix + 1);
                    // Cached index invariants.
                    let c = table.cached_idx[j];
                    assert!(c >= b.start && c <= j);
                    if c != j {
                        assert!(table.t[c] < table.t[j]);
                    }
                }
            }
        }
    }

    /// Window correctness: a blue predecessor passes the explicit
    /// condition-(ii) scan iff its parameter lies in the open window (l, r).
    #[test]
    fn window_equals_explicit_scan() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x11d);
        for _ in 0..80 {
            let n = rng.gen_range(2..=60);
            let colors = rng.gen_range(2..=4);
            let pts = random_points(&mut rng, n, colors, 200);
            let mut ts: Vec<i128> = pts.iter().map(|p| p.t.to_integer().try_into().unwrap()).collect();
            let mut colors: Vec<Color> = pts.iter().map(|p| p.color).collect();
            let (ts2, cs2) = {
                let span = ts[ts.len() - 1] - ts[0];
                ts.push(ts[ts.len() - 1] + 2 * span + 1);
                colors.push(colors.iter().copied().max().unwrap() + 1);
                (ts, colors)
            };
            let bl = blocks(&cs2);
            for w in bl.windows(2) {
                let (prev, cur) = (&w[0], &w[1]);
                for k in cur.start..=cur.end {
                    let l = 2 * ts2[prev.end] - ts2[k];
                    let r = 2 * ts2[cur.start] - ts2[k];
                    for i in prev.start..=prev.end {
                        let in_window = ts2[i] > l && ts2[i] < r;
                        assert_eq!(
                            in_window,
                            explicit_validity(&ts2, &cs2, i, k),
                            "i={i} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn constrained_reduces_to_unconstrained() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x11e);
        for _ in 0..80 {
            let n = rng.gen_range(1..=14);
            let colors = rng.gen_range(1..=3);
            let pts = random_points(&mut rng, n, colors, 50);
            let cons: Vec<ConstrainedPoint> = pts
                .iter()
                .map(|p| ConstrainedPoint {
                    t: p.t.clone(),
                    color: p.color,
                    selectable: true,
                })
                .collect();
            let a = solve_collinear_constrained(&cons, None).unwrap();
            let b = solve_collinear_linear(&pts).unwrap();
            assert_eq!(a.size, b.size);
        }
    }

    #[test]
    fn constrained_color_unrepresentable_is_infeasible() {
        let cons = vec![
            ConstrainedPoint {
                t: coord(0),
                color: 0,
                selectable: true,
            },
            ConstrainedPoint {
                t: coord(10),
                color: 1,
                selectable: false,
            },
        ];
        assert_eq!(
            solve_collinear_constrained(&cons, None).unwrap_err(),
            CollinearError::Infeasible
        );
    }

    /// Constrained enumeration oracle: try all subsets of selectable indices,
    /// honoring forced ends, and validate directly.
    fn constrained_brute(
        points: &[ConstrainedPoint],
        forced: Option<(usize, usize)>,
    ) -> Option<usize> {
        let n = points.len();
        let selectable: Vec<usize> = (0..n).filter(|&i| points[i].selectable).collect();
        let m = selectable.len();
        let mut best: Option<usize> = None;
        'mask: for mask in 1u32..(1u32 << m) {
            let chosen: Vec<usize> = (0..m)
                .filter(|&b| mask & (1 << b) != 0)
                .map(|b| selectable[b])
                .collect();
            if let Some((s, t)) = forced {
                if !chosen.contains(&s) || !chosen.contains(&t) {
                    continue;
                }
                if chosen.iter().any(|&c| c < s || c > t) {
                    continue;
                }
            }
            // Validate every non-chosen point against its nearest chosen.
            for u in 0..n {
                if chosen.contains(&u) {
                    continue;
                }
                let du = |i: usize| {
                    let d = &points[u].t - &points[i].t;
                    if d.is_negative() {
                        -d
                    } else {
                        d
                    }
                };
                let dmin = chosen.iter().map(|&i| du(i)).min().unwrap();
                if chosen
                    .iter()
                    .any(|&i| du(i) == dmin && points[i].color != points[u].color)
                {
                    continue 'mask;
                }
            }
            if best.map_or(true, |b| chosen.len() < b) {
                best = Some(chosen.len());
            }
        }
        best
    }

    #[test]
    fn constrained_matches_enumeration() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x11f);
        for _ in 0..150 {
            let n = rng.gen_range(1..=10);
            let colors = rng.gen_range(1..=3);
            let pts = random_points(&mut rng, n, colors, 40);
            let cons: Vec<ConstrainedPoint> = pts
                .iter()
                .map(|p| ConstrainedPoint {
                    t: p.t.clone(),
                    color: p.color,
                    selectable: rng.gen_bool(0.7),
                })
                .collect();
            let brute = constrained_brute(&cons, None);
            let dp = solve_collinear_constrained(&cons, None);
            match brute {
                Some(sz) => assert_eq!(dp.unwrap().size, sz, "cons={cons:?}"),
                None => assert!(dp.is_err()),
            }
        }
    }

    #[test]
    fn constrained_forced_ends_match_enumeration() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x120);
        let mut tested = 0;
        while tested < 120 {
            let n = rng.gen_range(2..=10);
            let colors = rng.gen_range(1..=3);
            let pts = random_points(&mut rng, n, colors, 40);
            let cons: Vec<ConstrainedPoint> = pts
                .iter()
                .map(|p| ConstrainedPoint {
                    t: p.t.clone(),
                    color: p.color,
                    selectable: rng.gen_bool(0.8),
                })
                .collect();
            let sel: Vec<usize> = (0..n).filter(|&i| cons[i].selectable).collect();
            if sel.len() < 2 {
                continue;
            }
            let s = sel[rng.gen_range(0..(sel.len() / 2).max(1))];
            let t = *sel.iter().rfind(|&&x| x >= s).unwrap();
            tested += 1;
            let brute = constrained_brute(&cons, Some((s, t)));
            let dp = solve_collinear_constrained(&cons, Some((s, t)));
            match brute {
                Some(sz) => assert_eq!(dp.unwrap().size, sz),
                None => assert!(dp.is_err()),
            }
        }
    }

    #[test]
    fn instance_wrapper_projects_slanted_lines() {
        // Points on the line y = 2x + 1.
        let inst = Instance::new(
            vec![
                ColoredPoint::ints(0, 1, 0),
                ColoredPoint::ints(1, 3, 0),
                ColoredPoint::ints(5, 11, 1),
                ColoredPoint::ints(6, 13, 1),
            ],
            StructureTag::Collinear,
        )
        .unwrap();
        let sol = solve_instance(&inst).unwrap();
        assert_eq!(sol.size, 2);
        assert!(is_consistent(&inst, &sol));
    }
}
