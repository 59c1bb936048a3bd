//! Size-two consistent subsets of bichromatic point sets.
//!
//! A pair (r, b) works exactly when the perpendicular bisector of r and b
//! separates the reds from the blues, which reduces — through the facing hull
//! chains, disk conditions, and the paraboloid lift — to membership of a
//! lifted blue point in one of a family of translated cones, decided by the
//! point-cone incidence sweep.

use crate::cone_sweep::{
    canonicalize, decide_incidence, CanonicalizeError, IncidenceMode, Vec3,
};
use crate::geom::{bisector_separates, chains_between_tangents, dist2, Coord, Point};
use num_traits::Zero;

/// A planar point lifted onto the paraboloid z = x^2 + y^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPoint {
    pub x: Coord,
    pub y: Coord,
    pub z: Coord,
}

impl LiftedPoint {
    pub fn lift(p: &Point) -> Self {
        LiftedPoint {
            x: p.x.clone(),
            y: p.y.clone(),
            z: &p.x * &p.x + &p.y * &p.y,
        }
    }

    pub fn coords(&self) -> Vec3 {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

/// A halfspace `a*x + b*y + c*z (<|<=) d` in lifted space.
#[derive(Clone, Debug)]
pub struct Halfspace3 {
    pub a: Coord,
    pub b: Coord,
    pub c: Coord,
    pub d: Coord,
    pub strict: bool,
}

impl Halfspace3 {
    pub fn satisfied(&self, p: &LiftedPoint) -> bool {
        let v = &self.a * &p.x + &self.b * &p.y + &self.c * &p.z;
        if self.strict {
            v < self.d
        } else {
            v <= self.d
        }
    }

    /// The plane through the lift of the boundary circle of the disk
    /// centered at `center` passing through `through`: points strictly
    /// inside the disk lift strictly below it.
    fn lower_of_disk(center: &Point, through: &Point) -> Halfspace3 {
        // z - 2*cx*x - 2*cy*y <= r^2 - |c|^2
        let two_cx = &center.x + &center.x;
        let two_cy = &center.y + &center.y;
        let d = dist2(center, through) - (&center.x * &center.x + &center.y * &center.y);
        Halfspace3 {
            a: -two_cx,
            b: -two_cy,
            c: Coord::one(),
            d,
            strict: true,
        }
    }

    /// The complementary strict upper halfspace.
    fn upper_of_disk(center: &Point, through: &Point) -> Halfspace3 {
        let lower = Self::lower_of_disk(center, through);
        Halfspace3 {
            a: -lower.a,
            b: -lower.b,
            c: -lower.c,
            d: -lower.d,
            strict: true,
        }
    }
}

use num_traits::One;

/// The family of translated cones encoding the feasible regions of all red
/// points: a blue point pairs with red i exactly when its lift lies strictly
/// inside cone i.
#[derive(Clone, Debug)]
pub struct ConeSpec {
    /// Halfspaces of the first red's cone; every boundary plane passes
    /// through that red's lift.
    pub base: Vec<Halfspace3>,
    /// Lifts of all reds; cone i is the base cone translated from apex 0 to
    /// apex i.
    pub apexes: Vec<LiftedPoint>,
}

impl ConeSpec {
    /// Strict membership of a lifted point in cone `i`.
    pub fn contains(&self, i: usize, p: &LiftedPoint) -> bool {
        let shift = |a: &Coord, b: &Coord| a - b;
        let q = LiftedPoint {
            x: &p.x - &shift(&self.apexes[i].x, &self.apexes[0].x),
            y: &p.y - &shift(&self.apexes[i].y, &self.apexes[0].y),
            z: &p.z - &shift(&self.apexes[i].z, &self.apexes[0].z),
        };
        self.base.iter().all(|h| h.satisfied(&q))
    }

    /// The same halfspaces built directly for red `i` instead of by
    /// translation; used to verify the translation identity.
    pub fn built_directly(
        reds_chain: &[Point],
        blues_chain: &[Point],
        red: &Point,
    ) -> Vec<Halfspace3> {
        let mut out = Vec::new();
        for b in blues_chain {
            out.push(Halfspace3::lower_of_disk(b, red));
        }
        for r in reds_chain {
            out.push(Halfspace3::upper_of_disk(r, red));
        }
        out
    }
}

/// Builds the cone family from the facing chains, or None when the hulls
/// intersect (no size-two subset exists).
pub fn build_cone_spec(reds: &[Point], blues: &[Point]) -> Option<ConeSpec> {
    let (red_chain, blue_chain) = chains_between_tangents(reds, blues).ok()?;
    let base = ConeSpec::built_directly(&red_chain, &blue_chain, &reds[0]);
    let apexes = reds.iter().map(LiftedPoint::lift).collect();
    Some(ConeSpec { base, apexes })
}

/// All pairs tested against the definitional separation check; the first
/// valid pair in (red, blue) index order.
pub fn solve_pair_naive(reds: &[Point], blues: &[Point]) -> Option<(usize, usize)> {
    for (ri, r) in reds.iter().enumerate() {
        for (bi, b) in blues.iter().enumerate() {
            if bisector_separates(r, b, reds, blues) {
                return Some((ri, bi));
            }
        }
    }
    None
}

/// Finds a size-two consistent subset (a red and a blue index) through the
/// point-cone incidence sweep, or None when no pair exists.
pub fn solve_pair(reds: &[Point], blues: &[Point]) -> Option<(usize, usize)> {
    if reds.is_empty() || blues.is_empty() {
        return None;
    }
    let spec = build_cone_spec(reds, blues)?;
    // Homogeneous normals of the base cone relative to its apex: the strict
    // halfspaces all pass through the first red's lift.
    let apex0 = spec.apexes[0].coords();
    let normals: Vec<Vec3> = spec
        .base
        .iter()
        .map(|h| {
            debug_assert!(
                (&h.a * &apex0[0] + &h.b * &apex0[1] + &h.c * &apex0[2] - &h.d).is_zero(),
                "cone halfspaces are apex-incident"
            );
            [h.a.clone(), h.b.clone(), h.c.clone()]
        })
        .collect();
    let apexes: Vec<Vec3> = spec.apexes.iter().map(|a| a.coords()).collect();
    let queries: Vec<Vec3> = blues.iter().map(|b| LiftedPoint::lift(b).coords()).collect();
    let hit = match canonicalize(&normals, &apexes, &queries) {
        Ok(canonical) => {
            let (verdict, _fallbacks) = decide_incidence(&canonical, IncidenceMode::Open);
            verdict
        }
        Err(CanonicalizeError::EmptyInterior) => {
            // No lifted point can satisfy every strict halfspace.
            None
        }
        Err(CanonicalizeError::NotPointed) => {
            // Degenerate chain geometry (all chain points collinear): test
            // membership directly.
            let mut found = None;
            'outer: for (bi, b) in blues.iter().enumerate() {
                let lifted = LiftedPoint::lift(b);
                for ri in 0..reds.len() {
                    if spec.contains(ri, &lifted) {
                        found = Some((bi, ri));
                        break 'outer;
                    }
                }
            }
            found
        }
    };
    hit.map(|(query, site)| (site, query)) // (red index, blue index)
}
