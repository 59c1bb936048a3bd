//! Dynamic program for colored points on two parallel horizontal lines.
//!
//! The solver considers solutions using only one line (delegating to the
//! constrained collinear solver over projected points) and solutions using
//! both lines, handled by a four-index subproblem table over an instance
//! augmented with four far-away dummy points of fresh colors.

use crate::collinear::{solve_collinear_constrained, solve_collinear_linear, ConstrainedPoint, LinePoint};
use crate::consistency::is_consistent;
use crate::geom::{Coord, Point};
use crate::instance::{Color, ColoredPoint, Instance, StructureTag, SubsetSolution};
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap};

/// Points on two horizontal lines, each side sorted by x. Combined indices
/// (as used in returned solutions) run over the top side first, then the
/// bottom side.
#[derive(Clone, Debug)]
pub struct TwoLineInstance {
    pub top: Vec<LinePoint>,
    pub bottom: Vec<LinePoint>,
    pub gap: Coord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Top,
    Bottom,
}

impl TwoLineInstance {
    pub fn new(top: Vec<LinePoint>, bottom: Vec<LinePoint>, gap: Coord) -> Self {
        assert!(gap > Coord::zero(), "line gap must be positive");
        assert!(top.windows(2).all(|w| w[0].t < w[1].t));
        assert!(bottom.windows(2).all(|w| w[0].t < w[1].t));
        TwoLineInstance { top, bottom, gap }
    }

    pub fn len(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 2-D view with the bottom line at y = 0 and the top at y = gap.
    pub fn to_instance(&self) -> Instance {
        let mut pts = Vec::with_capacity(self.len());
        for p in &self.top {
            pts.push(ColoredPoint::new(
                Point::new(p.t.clone(), self.gap.clone()),
                p.color,
            ));
        }
        for q in &self.bottom {
            pts.push(ColoredPoint::new(
                Point::new(q.t.clone(), Coord::zero()),
                q.color,
            ));
        }
        Instance::new(
            pts,
            StructureTag::TwoLines {
                y_top: self.gap.clone(),
                y_bottom: Coord::zero(),
            },
        )
        .expect("two-line instances are valid by construction")
    }

    /// Splits a tagged two-lines instance into sorted sides plus the mapping
    /// from combined side-order indices back to instance indices.
    pub fn from_instance(inst: &Instance) -> Option<(Self, Vec<usize>)> {
        let StructureTag::TwoLines { y_top, y_bottom } = &inst.tag else {
            return None;
        };
        let mut top: Vec<(Coord, Color, usize)> = Vec::new();
        let mut bottom: Vec<(Coord, Color, usize)> = Vec::new();
        for (idx, p) in inst.points.iter().enumerate() {
            if &p.pos.y == y_top {
                top.push((p.pos.x.clone(), p.color, idx));
            } else {
                bottom.push((p.pos.x.clone(), p.color, idx));
            }
        }
        top.sort_by(|a, b| a.0.cmp(&b.0));
        bottom.sort_by(|a, b| a.0.cmp(&b.0));
        let mut order = Vec::with_capacity(inst.len());
        order.extend(top.iter().map(|t| t.2));
        order.extend(bottom.iter().map(|t| t.2));
        let two = TwoLineInstance::new(
            top.into_iter()
                .map(|(t, c, _)| LinePoint::new(t, c))
                .collect(),
            bottom
                .into_iter()
                .map(|(t, c, _)| LinePoint::new(t, c))
                .collect(),
            y_top - y_bottom,
        );
        Some((two, order))
    }
}

const INF: u32 = u32::MAX / 4;

/// Best solution restricted to one side: the other side's points are
/// projected onto the chosen line and participate in validity checks only.
/// Returns combined-convention indices, or None when no such solution exists
/// (for instance a color present only on the excluded side).
pub fn solve_single_line_case(inst: &TwoLineInstance, which: Side) -> Option<SubsetSolution> {
    let (chosen, other, offset_chosen) = match which {
        Side::Top => (&inst.top, &inst.bottom, 0usize),
        Side::Bottom => (&inst.bottom, &inst.top, inst.top.len()),
    };
    if chosen.is_empty() {
        return if other.is_empty() {
            Some(SubsetSolution::new(Vec::new()))
        } else {
            None
        };
    }
    let mut merged: Vec<(ConstrainedPoint, Option<usize>)> = Vec::new();
    for (i, p) in chosen.iter().enumerate() {
        merged.push((
            ConstrainedPoint {
                t: p.t.clone(),
                color: p.color,
                selectable: true,
            },
            Some(i),
        ));
    }
    for p in other.iter() {
        merged.push((
            ConstrainedPoint {
                t: p.t.clone(),
                color: p.color,
                selectable: false,
            },
            None,
        ));
    }
    merged.sort_by(|a, b| {
        a.0.t
            .cmp(&b.0.t)
            .then_with(|| b.0.selectable.cmp(&a.0.selectable))
    });
    let points: Vec<ConstrainedPoint> = merged.iter().map(|(p, _)| p.clone()).collect();
    let sol = solve_collinear_constrained(&points, None).ok()?;
    Some(SubsetSolution::new(
        sol.indices
            .iter()
            .map(|&m| offset_chosen + merged[m].1.expect("selected points are selectable"))
            .collect(),
    ))
}

/// Internal coordinates of the dummy-augmented instance: per-side x arrays
/// and colors, with a far dummy at each end of each line.
struct Aug {
    xp: Vec<Coord>,
    cp: Vec<Color>,
    xq: Vec<Coord>,
    cq: Vec<Color>,
    gap2: Coord,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
struct Pt {
    side_rank: u8, // 0 = top, 1 = bottom; kept first for ordering
    idx: usize,
}

impl Pt {
    fn top(idx: usize) -> Self {
        Pt { side_rank: 0, idx }
    }
    fn bottom(idx: usize) -> Self {
        Pt { side_rank: 1, idx }
    }
    fn on(side: Side, idx: usize) -> Self {
        match side {
            Side::Top => Pt::top(idx),
            Side::Bottom => Pt::bottom(idx),
        }
    }
    fn side(&self) -> Side {
        if self.side_rank == 0 {
            Side::Top
        } else {
            Side::Bottom
        }
    }
}

impl Aug {
    fn x(&self, p: Pt) -> &Coord {
        match p.side() {
            Side::Top => &self.xp[p.idx],
            Side::Bottom => &self.xq[p.idx],
        }
    }

    fn color(&self, p: Pt) -> Color {
        match p.side() {
            Side::Top => self.cp[p.idx],
            Side::Bottom => self.cq[p.idx],
        }
    }

    fn d2(&self, a: Pt, b: Pt) -> Coord {
        let dx = self.x(a) - self.x(b);
        let mut d = &dx * &dx;
        if a.side() != b.side() {
            d += &self.gap2;
        }
        d
    }

    /// Strict nearest-color validity of `from` against the selected set `v`:
    /// all minimum-distance members must share `from`'s color.
    fn point_ok(&self, from: Pt, v: &[Pt]) -> bool {
        let mut best: Option<Coord> = None;
        let mut ok = true;
        let c = self.color(from);
        for &s in v {
            let d = self.d2(from, s);
            match &best {
                None => {
                    ok = self.color(s) == c;
                    best = Some(d);
                }
                Some(b) => match d.cmp(b) {
                    std::cmp::Ordering::Less => {
                        ok = self.color(s) == c;
                        best = Some(d);
                    }
                    std::cmp::Ordering::Equal => ok = ok && self.color(s) == c,
                    std::cmp::Ordering::Greater => {}
                },
            }
        }
        ok
    }
}

#[derive(Clone, Debug)]
enum Choice {
    Four,
    Split { s: usize, t: usize },
    Five { side: Side, idx: usize },
    DropLeft { side: Side, new_lo: usize },
    DropRight { side: Side, new_hi: usize },
    Inner { side: Side, s: usize, t: usize },
}

/// Memo tables of the four-index subproblem; kept per solve call.
struct Solver {
    aug: Aug,
    s_memo: HashMap<(usize, usize, usize, usize), (u32, Choice)>,
    t_memo: HashMap<(u8, usize, usize), (u32, Vec<usize>)>,
    run_p: Vec<usize>,
    run_q: Vec<usize>,
}

fn runs(colors: &[Color]) -> Vec<usize> {
    let mut run = vec![0usize; colors.len()];
    for i in 1..colors.len() {
        run[i] = if colors[i] == colors[i - 1] {
            run[i - 1]
        } else {
            run[i - 1] + 1
        };
    }
    run
}

impl Solver {
    fn new(aug: Aug) -> Self {
        let run_p = runs(&aug.cp);
        let run_q = runs(&aug.cq);
        Solver {
            aug,
            s_memo: HashMap::new(),
            t_memo: HashMap::new(),
            run_p,
            run_q,
        }
    }

    fn xs(&self, side: Side) -> &[Coord] {
        match side {
            Side::Top => &self.aug.xp,
            Side::Bottom => &self.aug.xq,
        }
    }

    fn colors(&self, side: Side) -> &[Color] {
        match side {
            Side::Top => &self.aug.cp,
            Side::Bottom => &self.aug.cq,
        }
    }

    fn run(&self, side: Side) -> &[usize] {
        match side {
            Side::Top => &self.run_p,
            Side::Bottom => &self.run_q,
        }
    }

    /// Does the closed Voronoi cell of `mid` among sites {a, mid, b} meet the
    /// segment of the `seg_side` line between x-coordinates lo..hi? Both
    /// dominance conditions are linear in x along the line.
    fn cell_meets_segment(
        &self,
        mid: Pt,
        a: Pt,
        b: Pt,
        seg_side: Side,
        seg_lo: &Coord,
        seg_hi: &Coord,
    ) -> bool {
        let mut lo = seg_lo.clone();
        let mut hi = seg_hi.clone();
        for other in [a, b] {
            let xm = self.aug.x(mid);
            let xo = self.aug.x(other);
            let em = if mid.side() == seg_side {
                Coord::zero()
            } else {
                self.aug.gap2.clone()
            };
            let eo = if other.side() == seg_side {
                Coord::zero()
            } else {
                self.aug.gap2.clone()
            };
            // d2(x, mid) - d2(x, other) = c1*x + c0 with:
            let c1 = (xo - xm) + (xo - xm);
            let c0 = xm * xm - xo * xo + em - eo;
            if c1.is_zero() {
                if c0 > Coord::zero() {
                    return false;
                }
            } else {
                let bound = -c0 / &c1;
                if c1 > Coord::zero() {
                    if bound < hi {
                        hi = bound;
                    }
                } else if bound > lo {
                    lo = bound;
                }
            }
            if lo > hi {
                return false;
            }
        }
        lo <= hi
    }

    /// Per-point validity of the sub-instance against a candidate selected
    /// set `v`.
    fn scan_valid(&self, i: usize, j: usize, k: usize, l: usize, v: &[Pt]) -> bool {
        for side in [Side::Top, Side::Bottom] {
            let (lo, hi) = match side {
                Side::Top => (i, j),
                Side::Bottom => (k, l),
            };
            for idx in lo..=hi {
                let p = Pt::on(side, idx);
                if v.contains(&p) {
                    continue;
                }
                if !self.aug.point_ok(p, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Per-point scan of validity for an inner pair (s, t): checks every
    /// sub-instance point outside the open x-band (x_s, x_t).
    fn band_scan_valid(
        &self,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        in_side: Side,
        s: usize,
        t: usize,
        v: &[Pt; 6],
    ) -> bool {
        let band_lo = &self.xs(in_side)[s];
        let band_hi = &self.xs(in_side)[t];
        for side in [Side::Top, Side::Bottom] {
            let (lo, hi) = match side {
                Side::Top => (i, j),
                Side::Bottom => (k, l),
            };
            for idx in lo..=hi {
                let p = Pt::on(side, idx);
                if v.contains(&p) {
                    continue;
                }
                let x = self.aug.x(p);
                if x > band_lo && x < band_hi {
                    continue;
                }
                if !self.aug.point_ok(p, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Interval-based validity of an inner pair (s, t): the six selected
    /// sites partition each line into at most six ownership intervals (the
    /// lower envelope of six linear functions); each interval of
    /// non-selected points must be a uniform color run matching its owner.
    fn interval_valid(
        &self,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        in_side: Side,
        s: usize,
        t: usize,
        v: &[Pt; 6],
    ) -> bool {
        let band_lo = self.xs(in_side)[s].clone();
        let band_hi = self.xs(in_side)[t].clone();
        for side in [Side::Top, Side::Bottom] {
            let (lo, hi) = match side {
                Side::Top => (i, j),
                Side::Bottom => (k, l),
            };
            if hi - lo < 2 && side == in_side {
                continue;
            }
            let mut ranges: Vec<(usize, usize)> = Vec::new();
            if side == in_side {
                if s > lo + 1 {
                    ranges.push((lo + 1, s - 1));
                }
                if hi > t + 1 {
                    ranges.push((t + 1, hi - 1));
                }
            } else {
                let xs = self.xs(side);
                // Last index with x <= band_lo and first with x >= band_hi.
                let a = xs.partition_point(|x| x <= &band_lo);
                if a > lo + 1 {
                    ranges.push((lo + 1, (a - 1).min(hi.saturating_sub(1))));
                }
                let b = xs.partition_point(|x| x < &band_hi);
                if b < hi {
                    ranges.push((b.max(lo + 1), hi - 1));
                }
            }
            let env = envelope(&self.aug, side, v);
            for (rlo, rhi) in ranges {
                if rlo > rhi {
                    continue;
                }
                let mut idx = rlo;
                while idx <= rhi {
                    let p = Pt::on(side, idx);
                    let x = &self.xs(side)[idx];
                    let owners = env.owners_at(x);
                    let c = self.colors(side)[idx];
                    if owners.len() >= 2 {
                        // Breakpoint: resolve the exact tie set directly.
                        if !self.aug.point_ok(p, v) {
                            return false;
                        }
                        idx += 1;
                    } else {
                        let owner_color = self.aug.color(v[owners[0]]);
                        let end_idx = match env.piece_end(x) {
                            Some(bx) => {
                                let e = self.xs(side).partition_point(|xx| xx < &bx);
                                (e - 1).min(rhi)
                            }
                            None => rhi,
                        };
                        if !(self.run(side)[idx] == self.run(side)[end_idx] && c == owner_color) {
                            return false;
                        }
                        idx = end_idx + 1;
                    }
                }
            }
        }
        true
    }

    /// Interior candidate index range on `side`, strictly right of both left
    /// anchors and strictly left of both right anchors.
    fn interior_range(
        &self,
        side: Side,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    ) -> Option<(usize, usize)> {
        let (own_lo, own_hi, other, other_lo, other_hi) = match side {
            Side::Top => (i, j, Side::Bottom, k, l),
            Side::Bottom => (k, l, Side::Top, i, j),
        };
        let left = std::cmp::max(
            self.xs(side)[own_lo].clone(),
            self.xs(other)[other_lo].clone(),
        );
        let right = std::cmp::min(
            self.xs(side)[own_hi].clone(),
            self.xs(other)[other_hi].clone(),
        );
        let xs = self.xs(side);
        let lo = xs.partition_point(|x| x <= &left);
        let hi = xs.partition_point(|x| x < &right);
        if hi == 0 {
            return None;
        }
        let lo = lo.max(own_lo + 1);
        let hi = (hi - 1).min(own_hi.saturating_sub(1));
        if lo > hi {
            None
        } else {
            Some((lo, hi))
        }
    }

    /// Constrained collinear subproblem on the `side` band [s, t]: points of
    /// the other line strictly inside the band are projected in as forbidden,
    /// and s, t are forced extreme selections.
    fn solve_t(&mut self, side: Side, s: usize, t: usize) -> u32 {
        if let Some((v, _)) = self.t_memo.get(&(side as u8, s, t)) {
            return *v;
        }
        let xs = self.xs(side);
        let other = match side {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
        };
        let (band_lo, band_hi) = (xs[s].clone(), xs[t].clone());
        let mut merged: Vec<(ConstrainedPoint, Option<usize>)> = Vec::new();
        for idx in s..=t {
            merged.push((
                ConstrainedPoint {
                    t: xs[idx].clone(),
                    color: self.colors(side)[idx],
                    selectable: true,
                },
                Some(idx),
            ));
        }
        for (idx, x) in self.xs(other).iter().enumerate() {
            if x > &band_lo && x < &band_hi {
                merged.push((
                    ConstrainedPoint {
                        t: x.clone(),
                        color: self.colors(other)[idx],
                        selectable: false,
                    },
                    None,
                ));
            }
        }
        merged.sort_by(|a, b| {
            a.0.t
                .cmp(&b.0.t)
                .then_with(|| b.0.selectable.cmp(&a.0.selectable))
        });
        let points: Vec<ConstrainedPoint> = merged.iter().map(|(p, _)| p.clone()).collect();
        let forced = (0usize, points.len() - 1);
        debug_assert!(points[forced.0].selectable && points[forced.1].selectable);
        let result = match solve_collinear_constrained(&points, Some(forced)) {
            Ok(sol) => {
                let selected: Vec<usize> = sol
                    .indices
                    .iter()
                    .map(|&m| merged[m].1.expect("forbidden points are never selected"))
                    .collect();
                (sol.size as u32, selected)
            }
            Err(_) => (INF, Vec::new()),
        };
        let v = result.0;
        self.t_memo.insert((side as u8, s, t), result);
        v
    }

    fn solve_s(&mut self, i: usize, j: usize, k: usize, l: usize) -> u32 {
        if let Some((v, _)) = self.s_memo.get(&(i, j, k, l)) {
            return *v;
        }
        debug_assert!(i < j && k < l);
        let pi = Pt::top(i);
        let pj = Pt::top(j);
        let qk = Pt::bottom(k);
        let ql = Pt::bottom(l);
        let mut best: (u32, Choice) = (INF, Choice::Four);

        // No interior point selected.
        let v4 = [pi, pj, qk, ql];
        if self.scan_valid(i, j, k, l, &v4) {
            best = (4, Choice::Four);
        }

        let p_range = self.interior_range(Side::Top, i, j, k, l);
        let q_range = self.interior_range(Side::Bottom, i, j, k, l);

        // Interior points on both sides: split at every candidate closest
        // pair; subproblem validity carries over.
        if let (Some((plo, phi)), Some((qlo, qhi))) = (p_range, q_range) {
            for s in plo..=phi {
                for t in qlo..=qhi {
                    let a = self.solve_s(i, s, k, t);
                    if a >= INF {
                        continue;
                    }
                    let b = self.solve_s(s, j, t, l);
                    if b >= INF {
                        continue;
                    }
                    let val = a + b - 2;
                    if val < best.0 {
                        best = (val, Choice::Split { s, t });
                    }
                }
            }
        }

        // Interior points on exactly one side.
        for side in [Side::Top, Side::Bottom] {
            let range = match side {
                Side::Top => p_range,
                Side::Bottom => q_range,
            };
            let Some((rlo, rhi)) = range else { continue };
            let (lo_anchor, hi_anchor, seg_a, seg_b, seg_side, seg_lo_idx, seg_hi_idx) = match side
            {
                Side::Bottom => (qk, ql, pi, pj, Side::Top, i, j),
                Side::Top => (pi, pj, qk, ql, Side::Bottom, k, l),
            };
            let (own_lo_idx, own_hi_idx) = match side {
                Side::Bottom => (k, l),
                Side::Top => (i, j),
            };
            let seg_lo = self.xs(seg_side)[seg_lo_idx].clone();
            let seg_hi = self.xs(seg_side)[seg_hi_idx].clone();

            // Exactly one interior point.
            for u in rlo..=rhi {
                if best.0 <= 5 {
                    break;
                }
                let pu = Pt::on(side, u);
                let v5 = [pi, pj, qk, ql, pu];
                if self.scan_valid(i, j, k, l, &v5) {
                    best = (5, Choice::Five { side, idx: u });
                }
            }

            // Two or more interior points whose left anchor cannot serve the
            // opposite segment: absorb it and recurse from the leftmost
            // interior selection.
            for s in rlo..rhi {
                let ps = Pt::on(side, s);
                if self.cell_meets_segment(lo_anchor, seg_a, ps, seg_side, &seg_lo, &seg_hi) {
                    continue;
                }
                let trio = [seg_a, lo_anchor, ps];
                let mut ok = true;
                for u in (own_lo_idx + 1)..s {
                    if !self.aug.point_ok(Pt::on(side, u), &trio) {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let sub = match side {
                    Side::Bottom => self.solve_s(i, j, s, l),
                    Side::Top => self.solve_s(s, j, k, l),
                };
                if sub < INF && sub + 1 < best.0 {
                    best = (sub + 1, Choice::DropLeft { side, new_lo: s });
                }
            }
            // Mirrored right-anchor absorption.
            for t in (rlo + 1)..=rhi {
                let pt = Pt::on(side, t);
                if self.cell_meets_segment(hi_anchor, seg_b, pt, seg_side, &seg_lo, &seg_hi) {
                    continue;
                }
                let trio = [seg_b, hi_anchor, pt];
                let mut ok = true;
                for u in (t + 1)..own_hi_idx {
                    if !self.aug.point_ok(Pt::on(side, u), &trio) {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let sub = match side {
                    Side::Bottom => self.solve_s(i, j, k, t),
                    Side::Top => self.solve_s(i, t, k, l),
                };
                if sub < INF && sub + 1 < best.0 {
                    best = (sub + 1, Choice::DropRight { side, new_hi: t });
                }
            }

            // Two or more interior points with both anchor cells reaching the
            // opposite segment: the extremes (s, t) delimit a constrained
            // collinear band subproblem. The cell conditions are required:
            // they guarantee that band points are served from within the band
            // selections, which is what the band subproblem validates.
            for s in rlo..rhi {
                let ps = Pt::on(side, s);
                if !self.cell_meets_segment(lo_anchor, seg_a, ps, seg_side, &seg_lo, &seg_hi) {
                    continue;
                }
                for t in (s + 1)..=rhi {
                    let pt = Pt::on(side, t);
                    if !self.cell_meets_segment(hi_anchor, seg_b, pt, seg_side, &seg_lo, &seg_hi)
                    {
                        continue;
                    }
                    let v6 = [pi, pj, qk, ql, ps, pt];
                    let fast = self.interval_valid(i, j, k, l, side, s, t, &v6);
                    debug_assert_eq!(
                        fast,
                        self.band_scan_valid(i, j, k, l, side, s, t, &v6),
                        "interval validity disagrees with the per-point scan"
                    );
                    if !fast {
                        continue;
                    }
                    let tv = self.solve_t(side, s, t);
                    if tv < INF && tv + 4 < best.0 {
                        best = (tv + 4, Choice::Inner { side, s, t });
                    }
                }
            }
        }

        self.s_memo.insert((i, j, k, l), best.clone());
        best.0
    }

    fn reconstruct(&self, i: usize, j: usize, k: usize, l: usize, out: &mut BTreeSet<Pt>) {
        let (_, choice) = self.s_memo.get(&(i, j, k, l)).expect("solved entry");
        out.insert(Pt::top(i));
        out.insert(Pt::top(j));
        out.insert(Pt::bottom(k));
        out.insert(Pt::bottom(l));
        match choice.clone() {
            Choice::Four => {}
            Choice::Split { s, t } => {
                self.reconstruct(i, s, k, t, out);
                self.reconstruct(s, j, t, l, out);
            }
            Choice::Five { side, idx } => {
                out.insert(Pt::on(side, idx));
            }
            Choice::DropLeft { side, new_lo } => match side {
                Side::Bottom => self.reconstruct(i, j, new_lo, l, out),
                Side::Top => self.reconstruct(new_lo, j, k, l, out),
            },
            Choice::DropRight { side, new_hi } => match side {
                Side::Bottom => self.reconstruct(i, j, k, new_hi, out),
                Side::Top => self.reconstruct(i, new_hi, k, l, out),
            },
            Choice::Inner { side, s, t } => {
                let (_, selected) = self
                    .t_memo
                    .get(&(side as u8, s, t))
                    .expect("inner subproblem solved");
                for &idx in selected {
                    out.insert(Pt::on(side, idx));
                }
            }
        }
    }
}

/// Both-lines machinery: solves the dummy-augmented root subproblem and
/// returns its table value together with the stripped solution in combined
/// indices. `None` when a side is empty (the caller delegates instead).
pub fn solve_case3(inst: &TwoLineInstance) -> Option<(u32, SubsetSolution)> {
    if inst.top.is_empty() || inst.bottom.is_empty() {
        return None;
    }
    let np = inst.top.len();
    let nq = inst.bottom.len();
    let min_x = inst
        .top
        .iter()
        .chain(inst.bottom.iter())
        .map(|p| p.t.clone())
        .min()
        .unwrap();
    let max_x = inst
        .top
        .iter()
        .chain(inst.bottom.iter())
        .map(|p| p.t.clone())
        .max()
        .unwrap();
    // Dummies farther from every real point than the instance diameter, so
    // they are inert: never the nearest selected point of a real point.
    let span = &max_x - &min_x + &inst.gap;
    let offset = &span + &span + &span + Coord::one();
    let left = &min_x - &offset;
    let right = &max_x + &offset;
    let fresh = inst
        .top
        .iter()
        .chain(inst.bottom.iter())
        .map(|p| p.color)
        .max()
        .unwrap()
        + 1;

    let mut xp = vec![left.clone()];
    let mut cp = vec![fresh];
    xp.extend(inst.top.iter().map(|p| p.t.clone()));
    cp.extend(inst.top.iter().map(|p| p.color));
    xp.push(right.clone());
    cp.push(fresh + 1);
    let mut xq = vec![left];
    let mut cq = vec![fresh + 2];
    xq.extend(inst.bottom.iter().map(|p| p.t.clone()));
    cq.extend(inst.bottom.iter().map(|p| p.color));
    xq.push(right);
    cq.push(fresh + 3);

    let aug = Aug {
        xp,
        cp,
        xq,
        cq,
        gap2: &inst.gap * &inst.gap,
    };
    let mut solver = Solver::new(aug);
    let root = (0usize, np + 1, 0usize, nq + 1);
    let val = solver.solve_s(root.0, root.1, root.2, root.3);
    if val >= INF {
        return None;
    }
    let mut set = BTreeSet::new();
    solver.reconstruct(root.0, root.1, root.2, root.3, &mut set);
    debug_assert!(
        [Pt::top(0), Pt::top(np + 1), Pt::bottom(0), Pt::bottom(nq + 1)]
            .iter()
            .all(|d| set.contains(d)),
        "every optimal augmented solution contains the four dummies"
    );
    let mut indices = Vec::new();
    for p in set {
        match p.side() {
            Side::Top => {
                if p.idx >= 1 && p.idx <= np {
                    indices.push(p.idx - 1);
                }
            }
            Side::Bottom => {
                if p.idx >= 1 && p.idx <= nq {
                    indices.push(np + p.idx - 1);
                }
            }
        }
    }
    Some((val, SubsetSolution::new(indices)))
}

/// Minimum consistent subset of points on two parallel lines.
pub fn solve_two_lines(inst: &TwoLineInstance) -> SubsetSolution {
    if inst.bottom.is_empty() {
        return solve_collinear_linear(&inst.top).expect("sorted by construction");
    }
    if inst.top.is_empty() {
        return solve_collinear_linear(&inst.bottom).expect("sorted by construction");
    }
    let mut best: Option<SubsetSolution> = None;
    let consider = |cand: Option<SubsetSolution>, best: &mut Option<SubsetSolution>| {
        if let Some(c) = cand {
            if best.as_ref().map_or(true, |b| c.size < b.size) {
                *best = Some(c);
            }
        }
    };
    consider(solve_single_line_case(inst, Side::Bottom), &mut best);
    consider(solve_single_line_case(inst, Side::Top), &mut best);
    consider(solve_case3(inst).map(|(_, sol)| sol), &mut best);
    let sol = best.expect("the full point set is always consistent");
    debug_assert!(is_consistent(&inst.to_instance(), &sol));
    sol
}

/// Convenience for callers holding a tagged [`Instance`].
pub fn solve_instance(inst: &Instance) -> Option<SubsetSolution> {
    let (two, order) = TwoLineInstance::from_instance(inst)?;
    let sol = solve_two_lines(&two);
    Some(SubsetSolution::new(
        sol.indices.iter().map(|&i| order[i]).collect(),
    ))
}

/// Lower envelope of six per-site linear functions along one line. Pieces
/// are stored as `owners[0] | cut[0] | owners[1] | cut[1] | ...`.
struct Envelope {
    cuts: Vec<Coord>,
    owners: Vec<usize>,
}

impl Envelope {
    /// All owners achieving the minimum at x: one inside a piece, two when x
    /// is exactly a cut.
    fn owners_at(&self, x: &Coord) -> Vec<usize> {
        let i = self.cuts.partition_point(|c| c < x);
        let mut out = vec![self.owners[i]];
        if i < self.cuts.len() && &self.cuts[i] == x {
            out.push(self.owners[i + 1]);
        }
        out
    }

    /// Exclusive end of the piece containing x; None for the last piece.
    /// Only meaningful when x is strictly inside a piece.
    fn piece_end(&self, x: &Coord) -> Option<Coord> {
        let i = self.cuts.partition_point(|c| c < x);
        self.cuts.get(i).cloned()
    }
}

/// Builds the lower envelope of `d2((x, side), v)` over the sites of `v` as a
/// function of x, with the common x^2 term dropped (each site contributes the
/// line -2*xv*x + xv^2 + cross-term).
fn envelope(aug: &Aug, side: Side, v: &[Pt; 6]) -> Envelope {
    let mut lines: Vec<(Coord, Coord, usize)> = v
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let xv = aug.x(*p);
            let cross = if p.side() == side {
                Coord::zero()
            } else {
                aug.gap2.clone()
            };
            (-(xv + xv), xv * xv + cross, idx)
        })
        .collect();
    // Slopes descending; for equal slopes keep the smaller intercept.
    lines.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    lines.dedup_by(|a, b| a.0 == b.0);
    let mut stack: Vec<(Coord, Coord, usize)> = Vec::new();
    let mut cuts: Vec<Coord> = Vec::new();
    for l in lines {
        let push_x;
        loop {
            match stack.last() {
                None => {
                    push_x = None;
                    break;
                }
                Some(top) => {
                    let denom = &top.0 - &l.0; // slopes strictly decreasing
                    let x = (&l.1 - &top.1) / denom;
                    if let Some(cut) = cuts.last() {
                        if &x <= cut {
                            stack.pop();
                            cuts.pop();
                            continue;
                        }
                    }
                    push_x = Some(x);
                    break;
                }
            }
        }
        if let Some(x) = push_x {
            cuts.push(x);
        }
        stack.push(l);
    }
    Envelope {
        cuts,
        owners: stack.iter().map(|l| l.2).collect(),
    }
}
