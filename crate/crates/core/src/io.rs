//! Text format for instances.
//!
//! First line: a structural tag (`general`, `collinear`, `two-lines`,
//! `one-red`). Two-line instances carry a second header `lines <top>
//! <bottom>`. Every following line holds one point as `x y color`, with
//! coordinates written as integers, decimals, or fractions `p/q` — all
//! parsed exactly.

use crate::geom::Coord;
use crate::instance::{ColoredPoint, Instance, InstanceError, StructureTag};
use crate::Point;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("tag mismatch: {0}")]
    TagMismatch(String),
}

fn perr(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses an exact rational from integer, decimal, or `p/q` notation.
pub fn parse_coord(s: &str, line: usize) -> Result<Coord, IoError> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .parse()
            .map_err(|_| perr(line, format!("bad numerator {num:?}")))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| perr(line, format!("bad denominator {den:?}")))?;
        if d.is_zero() {
            return Err(perr(line, "zero denominator"));
        }
        return Ok(Coord::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits
                .parse()
                .map_err(|_| perr(line, format!("bad number {s:?}")))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(perr(line, format!("bad decimal {s:?}")));
        }
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| perr(line, format!("bad decimal {s:?}")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut v = Coord::new(whole * &scale + frac, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| perr(line, format!("bad number {s:?}")))?;
    Ok(Coord::from_integer(n))
}

/// Canonical text of a coordinate: integer or `p/q`.
pub fn render_coord(c: &Coord) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses an instance, validating the declared tag exactly.
pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (tag_line_no, tag_line) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let mut rest: Vec<(usize, &str)> = lines.collect();
    let tag = match tag_line {
        "general" => StructureTag::General,
        "collinear" => StructureTag::Collinear,
        "one-red" => StructureTag::OneRed,
        "two-lines" => {
            let Some(&(hline_no, header)) = rest.first() else {
                return Err(perr(tag_line_no, "two-lines needs a `lines y1 y2` header"));
            };
            let mut parts = header.split_whitespace();
            if parts.next() != Some("lines") {
                return Err(perr(hline_no, "expected `lines y1 y2`"));
            }
            let y1 = parse_coord(
                parts.next().ok_or_else(|| perr(hline_no, "missing y1"))?,
                hline_no,
            )?;
            let y2 = parse_coord(
                parts.next().ok_or_else(|| perr(hline_no, "missing y2"))?,
                hline_no,
            )?;
            if y1 == y2 {
                return Err(perr(hline_no, "line heights must differ"));
            }
            rest.remove(0);
            let (y_top, y_bottom) = if y1 > y2 { (y1, y2) } else { (y2, y1) };
            StructureTag::TwoLines { y_top, y_bottom }
        }
        other => return Err(perr(tag_line_no, format!("unknown tag {other:?}"))),
    };
    let mut points = Vec::new();
    for (no, l) in rest {
        let mut parts = l.split_whitespace();
        let x = parse_coord(parts.next().ok_or_else(|| perr(no, "missing x"))?, no)?;
        let y = parse_coord(parts.next().ok_or_else(|| perr(no, "missing y"))?, no)?;
        let c: u32 = parts
            .next()
            .ok_or_else(|| perr(no, "missing color"))?
            .parse()
            .map_err(|_| perr(no, "bad color id"))?;
        if parts.next().is_some() {
            return Err(perr(no, "trailing fields"));
        }
        points.push(ColoredPoint::new(Point::new(x, y), c));
    }
    Instance::new(points, tag).map_err(|e| match e {
        InstanceError::TagMismatch(m) => IoError::TagMismatch(m),
        InstanceError::DuplicatePoint(i) => IoError::TagMismatch(format!("duplicate point {i}")),
    })
}

/// Canonical text of an instance; `parse_instance` of the result reproduces
/// the instance exactly.
pub fn render_instance(inst: &Instance) -> String {
    let mut out = String::new();
    match &inst.tag {
        StructureTag::General => out.push_str("general\n"),
        StructureTag::Collinear => out.push_str("collinear\n"),
        StructureTag::OneRed => out.push_str("one-red\n"),
        StructureTag::TwoLines { y_top, y_bottom } => {
            out.push_str("two-lines\n");
            out.push_str(&format!(
                "lines {} {}\n",
                render_coord(y_top),
                render_coord(y_bottom)
            ));
        }
    }
    for p in &inst.points {
        out.push_str(&format!(
            "{} {} {}\n",
            render_coord(&p.pos.x),
            render_coord(&p.pos.y),
            p.color
        ));
    }
    out
}
