//! The `.ogb` control-net text format.
//!
//! ```text
//! n d          # side count and degree
//! x y z        # central point P_0
//! x y z        # P_ijk, lexicographic in (i, j, k), n·(⌊d/2⌋+1)² lines
//! ```
//!
//! `#` starts a comment, blank lines are skipped. Numbers use `.` as the
//! radix regardless of locale. The parser does not enforce the point count;
//! run [`ControlNet::validate`] for that.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::patch::ControlNet;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_point(line: usize, fields: &[&str]) -> Result<Point3> {
    if fields.len() != 3 {
        return Err(parse_err(
            line,
            format!("expected 3 coordinates, found {}", fields.len()),
        ));
    }
    let mut xyz = [0.0; 3];
    for (slot, f) in xyz.iter_mut().zip(fields) {
        *slot = f
            .parse::<f64>()
            .map_err(|_| parse_err(line, format!("invalid number `{f}`")))?;
    }
    Ok(Point3::new(xyz[0], xyz[1], xyz[2]))
}

pub fn parse(text: &str) -> Result<ControlNet> {
    let mut records = text.lines().enumerate().filter_map(|(idx, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then(|| (idx + 1, content.split_whitespace().collect::<Vec<_>>()))
    });

    let (line, header) = records.next().ok_or_else(|| parse_err(1, "missing `n d` header"))?;
    if header.len() != 2 {
        return Err(parse_err(line, "header must be `n d`"));
    }
    let int = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(line, format!("invalid integer `{s}`")))
    };
    let sides = int(header[0])?;
    let degree = int(header[1])?;

    let (line, fields) = records
        .next()
        .ok_or_else(|| parse_err(line + 1, "missing central point"))?;
    let center = parse_point(line, &fields)?;

    let points = records
        .map(|(line, fields)| parse_point(line, &fields))
        .collect::<Result<Vec<_>>>()?;

    Ok(ControlNet {
        sides,
        degree,
        center,
        points,
    })
}

/// Serializes a net; `parse(&write(net))` reproduces every coordinate bit for bit.
pub fn write(net: &ControlNet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", net.sides, net.degree);
    let _ = writeln!(out, "{:?} {:?} {:?}", net.center.x, net.center.y, net.center.z);
    for p in &net.points {
        let _ = writeln!(out, "{:?} {:?} {:?}", p.x, p.y, p.z);
    }
    out
}
