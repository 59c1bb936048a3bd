//! Solver for instances with a single red point among blue points.
//!
//! Pipeline: invert the blue points through the red point (an exact rational
//! map that turns "blue u is strictly closer to blue v than to the red point"
//! into "the image of u lies strictly inside the disk centered at the image
//! of v through the red point"), order them radially, find for each blue the
//! first clockwise and counterclockwise blue it does not protect, turn those
//! into arcs over a cyclic sequence of symbolic direction slots, and cover
//! the circle with a minimum number of arcs.
//!
//! Radial ordering, slot arithmetic and the arc system are purely
//! combinatorial: a slot is either a blue's direction or the angular bisector
//! of two consecutive directions, so no square roots ever appear.

use crate::consistency::is_consistent;
use crate::geom::{cmp_dist, dist2, convex_hull, Coord, Hull, Point};
use crate::instance::{Instance, SubsetSolution};
use num_traits::Zero;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OneRedError {
    #[error("instance is not one red point plus at least one blue point")]
    BadColorProfile,
    #[error("arc family does not cover the circle")]
    NotCoverable,
}

/// Blue points in clockwise angular order around the center, with their
/// exact direction vectors. Ties in angle (several blues on one ray) are
/// ordered by increasing distance and flagged.
pub struct RadialOrder {
    pub center: Point,
    /// Mapped blue positions in clockwise order.
    pub points: Vec<Point>,
    /// Direction vectors (point - center), same order.
    pub dirs: Vec<(Coord, Coord)>,
    /// Original indices (into whatever list was sorted), same order.
    pub original: Vec<usize>,
    /// True when two blues share a ray from the center.
    pub has_ray_ties: bool,
}

/// Clockwise angular class starting at the +x axis: 0 = +x ray, 1 = lower
/// halfplane, 2 = -x ray, 3 = upper halfplane.
fn cw_class(d: &(Coord, Coord)) -> u8 {
    if d.1.is_zero() {
        if d.0 > Coord::zero() {
            0
        } else {
            2
        }
    } else if d.1 < Coord::zero() {
        1
    } else {
        3
    }
}

fn cross(a: &(Coord, Coord), b: &(Coord, Coord)) -> Coord {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Clockwise comparison of direction vectors; `Less` means `a` comes first
/// when sweeping clockwise from the +x axis. Equal directions compare equal.
pub fn cmp_clockwise(a: &(Coord, Coord), b: &(Coord, Coord)) -> Ordering {
    let (ca, cb) = (cw_class(a), cw_class(b));
    if ca != cb {
        return ca.cmp(&cb);
    }
    let c = cross(a, b);
    if c < Coord::zero() {
        Ordering::Less
    } else if c > Coord::zero() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Sorts `(point, original index)` pairs clockwise around `center`.
pub fn radial_order(center: Point, blues: &[(Point, usize)]) -> RadialOrder {
    let mut items: Vec<(Point, (Coord, Coord), usize)> = blues
        .iter()
        .map(|(p, idx)| {
            let d = (&p.x - &center.x, &p.y - &center.y);
            (p.clone(), d, *idx)
        })
        .collect();
    items.sort_by(|a, b| {
        cmp_clockwise(&a.1, &b.1).then_with(|| cmp_dist(&center, &a.0, &b.0)).then(a.2.cmp(&b.2))
    });
    let has_ray_ties = items
        .windows(2)
        .any(|w| cmp_clockwise(&w[0].1, &w[1].1) == Ordering::Equal);
    RadialOrder {
        center,
        points: items.iter().map(|it| it.0.clone()).collect(),
        dirs: items.iter().map(|it| it.1.clone()).collect(),
        original: items.iter().map(|it| it.2).collect(),
        has_ray_ties,
    }
}

/// Outcome of the per-blue neighbor search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcOutcome {
    /// First counterclockwise / clockwise blues not protected by this blue,
    /// as radial positions.
    Pair { cc: usize, c: usize },
    /// Every other blue is protected: the arc spans the full circle.
    AllInside,
}

/// `other` is protected by `owner`: strictly inside the disk centered at
/// `owner` through `center`.
fn protected(center: &Point, owner: &Point, other: &Point) -> bool {
    dist2(owner, other) < dist2(center, owner)
}

/// Naive quadratic scan for the first unprotected blue in each direction.
pub fn compute_c_cc_naive(order: &RadialOrder) -> Vec<CcOutcome> {
    let m = order.points.len();
    assert!(m >= 2);
    (0..m)
        .map(|i| {
            let mut c = None;
            for step in 1..m {
                let j = (i + step) % m;
                if !protected(&order.center, &order.points[i], &order.points[j]) {
                    c = Some(j);
                    break;
                }
            }
            let mut cc = None;
            for step in 1..m {
                let j = (i + m - step) % m;
                if !protected(&order.center, &order.points[i], &order.points[j]) {
                    cc = Some(j);
                    break;
                }
            }
            match (cc, c) {
                (Some(cc), Some(c)) => CcOutcome::Pair { cc, c },
                (None, None) => CcOutcome::AllInside,
                _ => unreachable!("both scans cover the same set"),
            }
        })
        .collect()
}

/// Balanced tree over the doubled radial sequence; each node stores the
/// convex hull of its leaves, answering farthest-point queries by a scan of
/// the hull vertices (the farthest point from any query is a hull vertex).
pub struct RangeFarthestTree {
    pub leaves: Vec<Point>,
    nodes: Vec<TreeNode>,
    root: usize,
}

struct TreeNode {
    lo: usize,
    hi: usize, // exclusive
    left: usize,
    right: usize,
    hull: Hull,
}

const NO_CHILD: usize = usize::MAX;

impl RangeFarthestTree {
    /// Builds the tree over the radial order repeated twice.
    pub fn build(order: &RadialOrder) -> Self {
        let mut leaves = order.points.clone();
        leaves.extend(order.points.iter().cloned());
        let mut tree = RangeFarthestTree {
            leaves,
            nodes: Vec::new(),
            root: 0,
        };
        tree.root = tree.build_node(0, tree.leaves.len());
        tree
    }

    fn build_node(&mut self, lo: usize, hi: usize) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(TreeNode {
            lo,
            hi,
            left: NO_CHILD,
            right: NO_CHILD,
            hull: Hull { vertices: Vec::new() },
        });
        if hi - lo == 1 {
            self.nodes[idx].hull = Hull {
                vertices: vec![self.leaves[lo].clone()],
            };
        } else {
            let mid = (lo + hi) / 2;
            let l = self.build_node(lo, mid);
            let r = self.build_node(mid, hi);
            let mut pts = self.nodes[l].hull.vertices.clone();
            pts.extend(self.nodes[r].hull.vertices.iter().cloned());
            let hull = convex_hull(&pts);
            let node = &mut self.nodes[idx];
            node.left = l;
            node.right = r;
            node.hull = hull;
        }
        idx
    }

    /// Farthest leaf point from `q` within one node, by hull scan.
    fn node_farthest(&self, node: usize, q: &Point) -> &Point {
        let hull = &self.nodes[node].hull;
        let mut best = &hull.vertices[0];
        for v in &hull.vertices[1..] {
            if cmp_dist(q, v, best) == Ordering::Greater {
                best = v;
            }
        }
        best
    }

    fn node_has_unprotected(&self, node: usize, q: &Point, r2: &Coord) -> bool {
        dist2(q, self.node_farthest(node, q)) >= *r2
    }

    /// First leaf in `[lo, hi)` (scanning forward, or backward when
    /// `reverse`) whose point is not protected by `q` (farther from `q` than
    /// `r2` allows). Walks the canonical node decomposition in order and
    /// descends into the first qualifying node.
    pub fn first_unprotected(
        &self,
        lo: usize,
        hi: usize,
        q: &Point,
        r2: &Coord,
        reverse: bool,
    ) -> Option<usize> {
        let mut canonical = Vec::new();
        self.decompose(self.root, lo, hi, &mut canonical);
        if reverse {
            canonical.reverse();
        }
        for node in canonical {
            if self.node_has_unprotected(node, q, r2) {
                return Some(self.descend(node, q, r2, reverse));
            }
        }
        None
    }

    fn decompose(&self, node: usize, lo: usize, hi: usize, out: &mut Vec<usize>) {
        let n = &self.nodes[node];
        if n.hi <= lo || hi <= n.lo {
            return;
        }
        if lo <= n.lo && n.hi <= hi {
            out.push(node);
            return;
        }
        self.decompose(n.left, lo, hi, out);
        self.decompose(n.right, lo, hi, out);
    }

    fn descend(&self, mut node: usize, q: &Point, r2: &Coord, reverse: bool) -> usize {
        loop {
            let n = &self.nodes[node];
            if n.left == NO_CHILD {
                return n.lo;
            }
            let (first, second) = if reverse {
                (n.right, n.left)
            } else {
                (n.left, n.right)
            };
            node = if self.node_has_unprotected(first, q, r2) {
                first
            } else {
                second
            };
        }
    }
}

/// Tree-accelerated version of the per-blue neighbor search.
pub fn compute_c_cc(order: &RadialOrder, tree: &RangeFarthestTree) -> Vec<CcOutcome> {
    let m = order.points.len();
    assert!(m >= 2);
    (0..m)
        .map(|i| {
            let q = &order.points[i];
            let r2 = dist2(&order.center, q);
            let c = tree.first_unprotected(i + 1, i + m, q, &r2, false);
            let cc = tree.first_unprotected(i + 1, i + m, q, &r2, true);
            match (cc, c) {
                (Some(cc), Some(c)) => CcOutcome::Pair {
                    cc: cc % m,
                    c: c % m,
                },
                (None, None) => CcOutcome::AllInside,
                _ => unreachable!("both walks cover the same range"),
            }
        })
        .collect()
}

/// One arc over the cyclic slot sequence: either the whole circle or the
/// closed clockwise span between two slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arc {
    Full,
    Span { start: usize, end: usize },
}

/// Arcs over `2m` symbolic slots: even slots are blue directions, odd slots
/// the bisectors of consecutive directions. Arc endpoints land only on odd
/// (bisector) slots, where the shrinking rule puts them.
pub struct CyclicArcSystem {
    pub slots: usize,
    pub arcs: Vec<Arc>,
}

/// Builds the per-blue arcs: the wedge from the first unprotected
/// counterclockwise blue, clockwise to the first unprotected clockwise blue,
/// with each endpoint pulled to the adjacent bisector slot.
pub fn build_arcs(order: &RadialOrder, cc_c: &[CcOutcome]) -> CyclicArcSystem {
    let m = order.points.len();
    let slots = 2 * m;
    let arcs = cc_c
        .iter()
        .map(|outcome| match *outcome {
            CcOutcome::AllInside => Arc::Full,
            CcOutcome::Pair { cc, c } => Arc::Span {
                start: (2 * cc + 1) % slots,
                end: (2 * c + slots - 1) % slots,
            },
        })
        .collect();
    CyclicArcSystem { slots, arcs }
}

/// Does the arc union cover the whole circle? Coverage is tracked on the
/// inter-slot gaps: an arc covers the gaps between its consecutive slots.
pub fn covers_circle(sys: &CyclicArcSystem) -> bool {
    if sys.arcs.iter().any(|a| matches!(a, Arc::Full)) {
        return true;
    }
    let s = sys.slots;
    let mut gap = vec![false; s];
    for a in &sys.arcs {
        if let Arc::Span { start, end } = *a {
            let len = (end + s - start) % s + 1;
            for g in 0..len.saturating_sub(1) {
                gap[(start + g) % s] = true;
            }
        }
    }
    gap.into_iter().all(|g| g)
}

/// Minimum-cardinality subfamily of arcs covering the circle. Greedy over
/// every candidate first arc, accelerated with binary-lifting jump pointers.
pub fn min_circle_cover(sys: &CyclicArcSystem) -> Result<Vec<usize>, OneRedError> {
    if let Some(full) = sys.arcs.iter().position(|a| matches!(a, Arc::Full)) {
        return Ok(vec![full]);
    }
    let s = sys.slots;
    let n = sys.arcs.len();
    if n == 0 {
        return Err(OneRedError::NotCoverable);
    }
    // Unrolled entries over two turns: (start, end, original index).
    let mut entries: Vec<(usize, usize, usize)> = Vec::with_capacity(2 * n);
    for (idx, a) in sys.arcs.iter().enumerate() {
        let Arc::Span { start, end } = *a else { unreachable!() };
        let len = (end + s - start) % s + 1;
        entries.push((start, start + len - 1, idx));
        entries.push((start + s, start + s + len - 1, idx));
    }
    entries.sort_by_key(|e| (e.0, e.2));
    let ne = entries.len();
    // best_up_to[k]: entry with maximum end among entries[0..=k].
    let mut best_up_to = vec![0usize; ne];
    for k in 0..ne {
        best_up_to[k] = if k == 0 {
            0
        } else if entries[k].1 > entries[best_up_to[k - 1]].1 {
            k
        } else {
            best_up_to[k - 1]
        };
    }
    let starts: Vec<usize> = entries.iter().map(|e| e.0).collect();
    // One greedy step: the reachable arc extending farthest. Stalls map to
    // the entry itself.
    let step = |e: usize| -> usize {
        let reach = entries[e].1;
        let pos = starts.partition_point(|&st| st <= reach);
        if pos == 0 {
            return e;
        }
        let cand = best_up_to[pos - 1];
        if entries[cand].1 > entries[e].1 {
            cand
        } else {
            e
        }
    };
    let levels = (usize::BITS - ne.leading_zeros()) as usize + 1;
    let mut up = vec![vec![0usize; ne]; levels];
    for e in 0..ne {
        up[0][e] = step(e);
    }
    for k in 1..levels {
        for e in 0..ne {
            up[k][e] = up[k - 1][up[k - 1][e]];
        }
    }
    let mut best: Option<(usize, usize)> = None; // (count, start entry)
    for a in 0..ne {
        if entries[a].0 >= s {
            break; // second-copy starts only continue chains
        }
        let target = entries[a].0 + s;
        let mut cur = a;
        let mut count = 1usize;
        if entries[cur].1 < target {
            for k in (0..levels).rev() {
                let nx = up[k][cur];
                if entries[nx].1 < target && nx != cur {
                    cur = nx;
                    count += 1 << k;
                }
            }
            // One or two finishing steps.
            let mut done = false;
            for _ in 0..2 {
                let nx = up[0][cur];
                if nx == cur {
                    break;
                }
                cur = nx;
                count += 1;
                if entries[cur].1 >= target {
                    done = true;
                    break;
                }
            }
            if !done && entries[cur].1 < target {
                continue;
            }
        }
        if best.map_or(true, |(c, _)| count < c) {
            best = Some((count, a));
        }
    }
    let Some((count, start_entry)) = best else {
        return Err(OneRedError::NotCoverable);
    };
    // Reconstruct by replaying the greedy walk.
    let target = entries[start_entry].0 + s;
    let mut chosen = vec![entries[start_entry].2];
    let mut cur = start_entry;
    while entries[cur].1 < target {
        let nx = step(cur);
        debug_assert_ne!(nx, cur, "cover exists, so the walk cannot stall");
        cur = nx;
        chosen.push(entries[cur].2);
    }
    debug_assert_eq!(chosen.len(), count);
    chosen.sort_unstable();
    chosen.dedup();
    Ok(chosen)
}

/// Inversion through `center`: exact rational map preserving directions and
/// turning protection into disk membership.
fn invert(center: &Point, p: &Point) -> Point {
    let d2 = dist2(center, p);
    Point::new(
        &center.x + (&p.x - &center.x) / &d2,
        &center.y + (&p.y - &center.y) / &d2,
    )
}

/// Minimum consistent subset of an instance with exactly one red point.
pub fn solve_one_red(inst: &Instance) -> Result<SubsetSolution, OneRedError> {
    // Identify the singleton color.
    let mut counts: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
    for p in &inst.points {
        *counts.entry(p.color).or_insert(0) += 1;
    }
    if counts.len() != 2 {
        return Err(OneRedError::BadColorProfile);
    }
    let red_color = counts
        .iter()
        .find(|(_, &c)| c == 1)
        .map(|(&c, _)| c)
        .ok_or(OneRedError::BadColorProfile)?;
    let red_idx = inst
        .points
        .iter()
        .position(|p| p.color == red_color)
        .unwrap();
    let center = inst.points[red_idx].pos.clone();
    let blues: Vec<(Point, usize)> = inst
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.color != red_color)
        .map(|(idx, p)| (invert(&center, &p.pos), idx))
        .collect();
    if blues.is_empty() {
        return Err(OneRedError::BadColorProfile);
    }
    if blues.len() == 1 {
        return Ok(SubsetSolution::new(vec![red_idx, blues[0].1]));
    }
    let order = radial_order(center, &blues);
    let tree = RangeFarthestTree::build(&order);
    let cc_c = compute_c_cc(&order, &tree);
    debug_assert_eq!(cc_c, compute_c_cc_naive(&order));
    let arcs = build_arcs(&order, &cc_c);
    debug_assert!(covers_circle(&arcs));
    let cover = min_circle_cover(&arcs)?;
    let mut indices: Vec<usize> = cover.into_iter().map(|i| order.original[i]).collect();
    indices.push(red_idx);
    let sol = SubsetSolution::new(indices);
    debug_assert!(is_consistent(inst, &sol));
    Ok(sol)
}
