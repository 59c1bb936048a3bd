//! Exact-arithmetic library for the minimum consistent subset problem on
//! colored planar point sets.
//!
//! A subset `S` of a colored point set `P` is *consistent* when every point of
//! `P \ S` has all of its nearest neighbors in `S` colored like itself. This
//! crate provides an exhaustive oracle plus specialized solvers for structured
//! inputs: collinear points, points on two parallel lines, bichromatic
//! parallel lines, instances with a single red point, and size-two subsets of
//! bichromatic sets via a point-cone incidence sweep.
//!
//! All coordinates are arbitrary-precision rationals and every predicate is
//! evaluated exactly; there is no floating-point fast path.

pub mod bichromatic;
pub mod collinear;
pub mod cone_sweep;
pub mod parallel_lines;
pub mod consistency;
pub mod gen;
pub mod geom;
pub mod instance;
pub mod io;
pub mod one_red;
pub mod size_two;
pub mod svg;

pub use geom::{Coord, Point};
pub use instance::{Color, ColoredPoint, Instance, StructureTag, SubsetSolution};
