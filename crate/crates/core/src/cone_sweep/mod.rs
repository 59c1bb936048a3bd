//! Point-cone incidence for translated copies of one cone in three
//! dimensions, decided by a sweep over the additively-weighted
//! convex-distance minimization diagram of the translated apexes.
//!
//! The cone arrives as apex-incident halfspaces. Canonicalization finds an
//! interior ray, applies a rational linear change of basis sending it to the
//! vertical axis (incidence is invariant under invertible linear maps, so no
//! irrational rotation is needed), and splits each cone at its apex into a
//! right and a left half. Each half's boundary is the graph of
//! `weight + gauge(q - apex)` over a halfplane, and the minimization diagram
//! of those functions is swept left to right; the sweep line and the front
//! coincide because a site affects nothing left of its apex.

pub mod polygon;
pub mod sweep;

use crate::geom::Coord;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use polygon::PolygonM;
use thiserror::Error;

pub use polygon::{line_bitangent, tritangent, PiecewiseLinear};
pub use sweep::{sweep_incidence, SweepOutcome};

pub type Vec3 = [Coord; 3];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalizeError {
    #[error("cone has empty interior")]
    EmptyInterior,
    #[error("cone contains a line; no section polygon exists")]
    NotPointed,
}

/// Raised when exact event ties or structural ambiguities make the sweep's
/// general-position assumptions fail; callers fall back to the naive check.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("degenerate configuration detected during sweep")]
pub struct DegeneracyDetected;

/// Apex projection plus additive weight (the apex height) of one translated
/// half-cone; `orig` is the caller's cone index.
#[derive(Clone, Debug)]
pub struct Site {
    pub pos: (Coord, Coord),
    pub weight: Coord,
    pub orig: usize,
}

/// A query point after canonicalization.
#[derive(Clone, Debug)]
pub struct Query3 {
    pub x: Coord,
    pub y: Coord,
    pub z: Coord,
    pub orig: usize,
}

/// Closed membership admits boundary contact; open membership requires the
/// query strictly inside the cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncidenceMode {
    Closed,
    Open,
}

/// One half of the split problem: a section polygon with its translated
/// sites and the queries, all in canonical coordinates.
#[derive(Clone, Debug)]
pub struct HalfFamily {
    pub m: PolygonM,
    pub sites: Vec<Site>,
    pub queries: Vec<Query3>,
}

/// Canonicalized problem: the applied transform and the two half-families
/// (the left half is stored x-reflected so both share one sweep).
#[derive(Debug)]
pub struct Canonical {
    pub transform: Mat3,
    pub halves: [HalfFamily; 2],
}

/// 3x3 rational matrix acting on column vectors; stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3 {
    pub rows: [[Coord; 3]; 3],
}

impl Mat3 {
    pub fn identity() -> Self {
        let z = Coord::zero;
        let o = Coord::one;
        Mat3 {
            rows: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
        }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let dot = |r: &[Coord; 3]| &r[0] * &v[0] + &r[1] * &v[1] + &r[2] * &v[2];
        [dot(&self.rows[0]), dot(&self.rows[1]), dot(&self.rows[2])]
    }

    pub fn det(&self) -> Coord {
        let r = &self.rows;
        &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
            - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
            + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0])
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let r = &self.rows;
        let e = |i: usize, j: usize| &r[i][j];
        let m2 = |a: &Coord, b: &Coord, c: &Coord, dd: &Coord| (a * dd - b * c) / &d;
        Some(Mat3 {
            rows: [
                [
                    m2(e(1, 1), e(1, 2), e(2, 1), e(2, 2)),
                    -m2(e(0, 1), e(0, 2), e(2, 1), e(2, 2)),
                    m2(e(0, 1), e(0, 2), e(1, 1), e(1, 2)),
                ],
                [
                    -m2(e(1, 0), e(1, 2), e(2, 0), e(2, 2)),
                    m2(e(0, 0), e(0, 2), e(2, 0), e(2, 2)),
                    -m2(e(0, 0), e(0, 2), e(1, 0), e(1, 2)),
                ],
                [
                    m2(e(1, 0), e(1, 1), e(2, 0), e(2, 1)),
                    -m2(e(0, 0), e(0, 1), e(2, 0), e(2, 1)),
                    m2(e(0, 0), e(0, 1), e(1, 0), e(1, 1)),
                ],
            ],
        })
    }

    /// Row vector times matrix: transforms halfspace normals for the change
    /// of variables y = Ax (n.x <= 0 becomes (n A^-1).y <= 0).
    pub fn row_mul(&self, n: &Vec3) -> Vec3 {
        let col = |j: usize| &n[0] * &self.rows[0][j] + &n[1] * &self.rows[1][j] + &n[2] * &self.rows[2][j];
        [col(0), col(1), col(2)]
    }
}

fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot3(a: &Vec3, b: &Vec3) -> Coord {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn is_zero3(v: &Vec3) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Scales a rational vector to a primitive integer vector (unique up to the
/// sign, which is preserved).
fn primitive(v: &Vec3) -> Vec3 {
    let lcm = v.iter().fold(BigInt::one(), |acc, c| {
        num_integer::lcm(acc, c.denom().clone())
    });
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = ints
        .iter()
        .fold(BigInt::zero(), |acc, i| num_integer::gcd(acc, i.clone()));
    if g.is_zero() {
        g = BigInt::one();
    }
    [
        Coord::from_integer(&ints[0] / &g),
        Coord::from_integer(&ints[1] / &g),
        Coord::from_integer(&ints[2] / &g),
    ]
}

/// Rank of the normal matrix, by fraction-free elimination.
fn rank3(normals: &[Vec3]) -> usize {
    let mut rows: Vec<Vec3> = normals.to_vec();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in (rank + 1)..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &rows[rank][col];
            for c in col..3 {
                let sub = &factor * &rows[rank][c];
                rows[r][c] = &rows[r][c] - sub;
            }
        }
        rank += 1;
        if rank == 3 {
            break;
        }
    }
    rank
}

/// Finds the canonical form of the cone `{x : n.x <= 0 for all normals}` and
/// transforms the translated apexes and the query points along with it.
pub fn canonicalize(
    normals: &[Vec3],
    apexes: &[Vec3],
    queries: &[Vec3],
) -> Result<Canonical, CanonicalizeError> {
    assert!(normals.len() >= 2, "a cone needs at least two halfspaces");
    if rank3(normals) < 3 {
        return Err(CanonicalizeError::NotPointed);
    }
    // Extreme rays: directions on two boundary planes satisfying the rest.
    let mut rays: Vec<Vec3> = Vec::new();
    for i in 0..normals.len() {
        for j in (i + 1)..normals.len() {
            let v = cross3(&normals[i], &normals[j]);
            if is_zero3(&v) {
                continue;
            }
            let neg = [-v[0].clone(), -v[1].clone(), -v[2].clone()];
            for cand in [v, neg] {
                if normals.iter().all(|n| !dot3(n, &cand).is_positive()) {
                    let p = primitive(&cand);
                    if !rays.contains(&p) {
                        rays.push(p);
                    }
                }
            }
        }
    }
    if rays.is_empty() {
        return Err(CanonicalizeError::EmptyInterior);
    }
    // Interior direction: a positive combination of every extreme ray.
    let mut d = [Coord::zero(), Coord::zero(), Coord::zero()];
    for r in &rays {
        for k in 0..3 {
            d[k] = &d[k] + &r[k];
        }
    }
    if normals.iter().any(|n| !dot3(n, &d).is_negative()) {
        return Err(CanonicalizeError::EmptyInterior);
    }
    let d = primitive(&d);
    // Linear functional positive on the cone minus the origin.
    let mut phi = [Coord::zero(), Coord::zero(), Coord::zero()];
    for n in normals {
        for k in 0..3 {
            phi[k] = &phi[k] - &n[k];
        }
    }
    let phi = primitive(&phi);
    debug_assert!(dot3(&phi, &d).is_positive());
    // Two rows spanning the plane orthogonal to d, chosen so an
    // already-canonical cone maps by the identity.
    let axis_idx = (0..3)
        .min_by(|&a, &b| {
            d[a].abs().cmp(&d[b].abs()).then(a.cmp(&b))
        })
        .unwrap();
    let mut axis = [Coord::zero(), Coord::zero(), Coord::zero()];
    axis[axis_idx] = Coord::one();
    let v1 = primitive(&cross3(&d, &axis));
    let v2 = primitive(&cross3(&v1, &d));
    let transform = Mat3 {
        rows: [v2, v1, phi],
    };
    let inv = transform.inverse().expect("rows are independent");

    let new_normals: Vec<Vec3> = normals.iter().map(|n| inv_row(n, &inv)).collect();
    let new_apexes: Vec<Vec3> = apexes.iter().map(|a| transform.apply(a)).collect();
    let new_queries: Vec<Vec3> = queries.iter().map(|q| transform.apply(q)).collect();
    debug_assert!(new_normals
        .iter()
        .all(|n| dot3(n, &[Coord::zero(), Coord::zero(), Coord::one()]).is_negative()));

    let build_half = |reflect: bool| -> Result<HalfFamily, CanonicalizeError> {
        let sx = if reflect { -Coord::one() } else { Coord::one() };
        let halfplanes: Vec<(Coord, Coord, Coord)> = new_normals
            .iter()
            .map(|n| (&n[0] * &sx, n[1].clone(), -n[2].clone()))
            .collect();
        let m = PolygonM::build(&halfplanes)?;
        let sites = new_apexes
            .iter()
            .enumerate()
            .map(|(orig, a)| Site {
                pos: (&a[0] * &sx, a[1].clone()),
                weight: a[2].clone(),
                orig,
            })
            .collect();
        let qs = new_queries
            .iter()
            .enumerate()
            .map(|(orig, q)| Query3 {
                x: &q[0] * &sx,
                y: q[1].clone(),
                z: q[2].clone(),
                orig,
            })
            .collect();
        Ok(HalfFamily {
            m,
            sites,
            queries: qs,
        })
    };
    Ok(Canonical {
        transform,
        halves: [build_half(false)?, build_half(true)?],
    })
}

fn inv_row(n: &Vec3, inv: &Mat3) -> Vec3 {
    inv.row_mul(n)
}

/// Exhaustive membership loop over one half-family: the first incidence in
/// (query, site) lexicographic order of the canonical indices.
pub fn naive_incidence(half: &HalfFamily, mode: IncidenceMode) -> Option<(usize, usize)> {
    for q in &half.queries {
        for s in &half.sites {
            if let Some(f) = half.m.f_eval(s, &q.x, &q.y) {
                let hit = match mode {
                    IncidenceMode::Closed => q.z >= f,
                    IncidenceMode::Open => q.z > f,
                };
                if hit {
                    return Some((q.orig, s.orig));
                }
            }
        }
    }
    None
}

/// Incidence decision over both halves with the sweep, falling back to the
/// naive loop per half when a degeneracy is detected. Returns the verdict
/// together with the number of halves that needed the fallback.
pub fn decide_incidence(canonical: &Canonical, mode: IncidenceMode) -> (Option<(usize, usize)>, usize) {
    let mut fallbacks = 0;
    for half in &canonical.halves {
        match sweep_incidence(half, mode) {
            Ok(outcome) => {
                if outcome.incidence.is_some() {
                    return (outcome.incidence, fallbacks);
                }
            }
            Err(DegeneracyDetected) => {
                fallbacks += 1;
                if let Some(hit) = naive_incidence(half, mode) {
                    return (Some(hit), fallbacks);
                }
            }
        }
    }
    (None, fallbacks)
}
