//! Core problem types: colored points, instances and subset solutions.

use crate::geom::{orient, Coord, Point};
use thiserror::Error;

/// Small non-negative color identifier.
pub type Color = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPoint {
    pub pos: Point,
    pub color: Color,
}

impl ColoredPoint {
    pub fn new(pos: Point, color: Color) -> Self {
        ColoredPoint { pos, color }
    }

    pub fn ints(x: i64, y: i64, color: Color) -> Self {
        ColoredPoint::new(Point::ints(x, y), color)
    }
}

/// Structural class an instance claims to belong to. The tag is validated on
/// construction from text input; solvers dispatch on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureTag {
    General,
    Collinear,
    /// Two horizontal lines at the recorded heights, `y_top > y_bottom`.
    TwoLines { y_top: Coord, y_bottom: Coord },
    OneRed,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("points must be pairwise distinct (duplicate at index {0})")]
    DuplicatePoint(usize),
    #[error("tag does not match the point set: {0}")]
    TagMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub points: Vec<ColoredPoint>,
    pub tag: StructureTag,
}

impl Instance {
    /// Builds an instance and validates both distinctness and the tag.
    pub fn new(points: Vec<ColoredPoint>, tag: StructureTag) -> Result<Self, InstanceError> {
        let inst = Instance { points, tag };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                if self.points[i].pos == self.points[j].pos {
                    return Err(InstanceError::DuplicatePoint(j));
                }
            }
        }
        match &self.tag {
            StructureTag::General => {}
            StructureTag::Collinear => {
                if self.points.len() >= 3 {
                    let a = &self.points[0].pos;
                    let b = &self.points[1].pos;
                    for (i, p) in self.points.iter().enumerate().skip(2) {
                        if orient(a, b, &p.pos) != 0 {
                            return Err(InstanceError::TagMismatch(format!(
                                "point {i} is not on the common line"
                            )));
                        }
                    }
                }
            }
            StructureTag::TwoLines { y_top, y_bottom } => {
                if y_top <= y_bottom {
                    return Err(InstanceError::TagMismatch(
                        "line heights must satisfy y_top > y_bottom".into(),
                    ));
                }
                for (i, p) in self.points.iter().enumerate() {
                    if &p.pos.y != y_top && &p.pos.y != y_bottom {
                        return Err(InstanceError::TagMismatch(format!(
                            "point {i} lies on neither recorded line"
                        )));
                    }
                }
            }
            StructureTag::OneRed => {
                let mut counts: std::collections::BTreeMap<Color, usize> =
                    std::collections::BTreeMap::new();
                for p in &self.points {
                    *counts.entry(p.color).or_insert(0) += 1;
                }
                let singles = counts.values().filter(|&&c| c == 1).count();
                if counts.len() != 2 || singles == 0 {
                    return Err(InstanceError::TagMismatch(
                        "one-red instances need exactly two colors, one a singleton".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distinct colors present, ascending.
    pub fn colors(&self) -> Vec<Color> {
        let mut cs: Vec<Color> = self.points.iter().map(|p| p.color).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }
}

/// A solver result: a sorted, duplicate-free set of indices into an
/// instance's point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSolution {
    pub indices: Vec<usize>,
    pub size: usize,
}

impl SubsetSolution {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        let size = indices.len();
        SubsetSolution { indices, size }
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }
}
