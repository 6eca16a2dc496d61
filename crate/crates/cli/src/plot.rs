//! SVG line plots of constant-parameter lines.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use circpatch::{DomainConfig, DomainPoint, LevelSet, Result};

/// Segments per drawn level line or side arc.
pub const SEGMENTS: usize = 128;

pub const GREEN: &str = "#1a9c3a";
pub const RED: &str = "#d62728";
pub const BLUE: &str = "#1f5fd6";
pub const BLACK: &str = "#000000";
pub const GRAY: &str = "#555555";

/// `count` evenly spaced heights `ℓ/(count−1)`.
pub fn level_values(count: usize) -> Vec<f64> {
    let last = count.max(2) - 1;
    (0..=last).map(|l| l as f64 / last as f64).collect()
}

/// Polyline of the level set `h_side = h`, in global domain coordinates.
pub fn level_polyline(cfg: &DomainConfig, side: usize, h: f64, segments: usize) -> Result<Vec<DomainPoint>> {
    let ls = cfg.level_set(h)?;
    ls.polyline(segments)
        .into_iter()
        .map(|p| cfg.from_canonical(side, p))
        .collect()
}

/// Points along the rim arc of side `i`, clockwise corner first.
pub fn side_arc(cfg: &DomainConfig, i: usize, segments: usize) -> Result<Vec<DomainPoint>> {
    (0..=segments)
        .map(|k| cfg.side_point(i, k as f64 / segments as f64))
        .collect()
}

/// Whether sides `a` and `b` share a corner.
fn adjacent(cfg: &DomainConfig, a: usize, b: usize) -> bool {
    cfg.wrap(a as isize + 1) == b || cfg.wrap(b as isize + 1) == a
}

struct Svg {
    body: String,
}

impl Svg {
    fn new() -> Self {
        let mut body = String::new();
        body.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        body.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n",
        );
        body.push_str("<rect x=\"-1.1\" y=\"-1.1\" width=\"2.2\" height=\"2.2\" fill=\"#ffffff\"/>\n");
        body.push_str(
            "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n",
        );
        Self { body }
    }

    fn polyline(&mut self, attrs: &[(&str, String)], color: &str, width: f64, pts: &[DomainPoint]) {
        self.body.push_str("<polyline");
        for (k, v) in attrs {
            let _ = write!(self.body, " {k}=\"{v}\"");
        }
        let _ = write!(self.body, " stroke=\"{color}\" stroke-width=\"{width}\" points=\"");
        for (idx, p) in pts.iter().enumerate() {
            if idx > 0 {
                self.body.push(' ');
            }
            let _ = write!(self.body, "{:.12},{:.12}", p.u, p.v);
        }
        self.body.push_str("\"/>\n");
    }

    fn raw(&mut self, s: &str) {
        self.body.push_str(s);
    }

    fn finish(mut self) -> String {
        self.body.push_str("</g>\n</svg>\n");
        self.body
    }
}

fn draw_sides(svg: &mut Svg, cfg: &DomainConfig, color_of: impl Fn(usize) -> &'static str) -> Result<()> {
    for i in 1..=cfg.sides() {
        let pts = side_arc(cfg, i, SEGMENTS)?;
        svg.polyline(
            &[("class", "side".into()), ("data-side", i.to_string())],
            color_of(i),
            0.012,
            &pts,
        );
    }
    Ok(())
}

fn draw_family(
    svg: &mut Svg,
    cfg: &DomainConfig,
    family: &str,
    side: usize,
    values: &[f64],
    color: &str,
) -> Result<()> {
    for &h in values {
        let pts = level_polyline(cfg, side, h, SEGMENTS)?;
        svg.polyline(
            &[
                ("class", "level".into()),
                ("data-family", family.into()),
                ("data-side", side.to_string()),
                ("data-h", format!("{h}")),
            ],
            color,
            0.005,
            &pts,
        );
    }
    Ok(())
}

/// Level lines of `h_side`: base side green, distant sides red.
pub fn levels_svg(cfg: &DomainConfig, side: usize, count: usize) -> Result<String> {
    cfg.check_side(side)?;
    let mut svg = Svg::new();
    draw_family(&mut svg, cfg, "base", side, &level_values(count), GRAY)?;
    draw_sides(&mut svg, cfg, |i| {
        if i == side {
            GREEN
        } else if adjacent(cfg, i, side) {
            BLACK
        } else {
            RED
        }
    })?;
    Ok(svg.finish())
}

/// Level lines of `h_corner` (green) and `h_{corner+1}` (blue) over one corner.
pub fn corner_svg(cfg: &DomainConfig, corner: usize, count: usize) -> Result<String> {
    cfg.check_side(corner)?;
    let next = cfg.wrap(corner as isize + 1);
    let values = level_values(count);
    let mut svg = Svg::new();
    draw_family(&mut svg, cfg, "first", corner, &values, GREEN)?;
    draw_family(&mut svg, cfg, "second", next, &values, BLUE)?;
    draw_sides(&mut svg, cfg, |i| {
        if i == corner {
            GREEN
        } else if i == next {
            BLUE
        } else if adjacent(cfg, i, corner) || adjacent(cfg, i, next) {
            BLACK
        } else {
            RED
        }
    })?;
    Ok(svg.finish())
}

/// The level lines `h_{i−1} = t` and `h_{i+1} = 1 − t` where they reach side `i`.
#[derive(Debug, Clone)]
pub struct ConstraintPair {
    pub t: f64,
    pub previous: Vec<DomainPoint>,
    pub next: Vec<DomainPoint>,
    /// Where each line meets side `i`.
    pub previous_start: DomainPoint,
    pub next_start: DomainPoint,
    /// Unit directions, pointing into the domain, at those points.
    pub previous_direction: DomainPoint,
    pub next_direction: DomainPoint,
}

fn unit(p: DomainPoint) -> DomainPoint {
    p * (1.0 / p.norm())
}

/// Step used for the finite-difference start directions of [`constraint_pair`].
pub const DIRECTION_STEP: f64 = 1e-7;

pub fn constraint_pair(cfg: &DomainConfig, side: usize, t: f64) -> Result<ConstraintPair> {
    cfg.check_side(side)?;
    let prev_side = cfg.wrap(side as isize - 1);
    let next_side = cfg.wrap(side as isize + 1);
    let prev_ls: LevelSet = cfg.level_set(t)?;
    let next_ls: LevelSet = cfg.level_set(1.0 - t)?;
    let to_prev = |p| cfg.from_canonical(prev_side, p);
    let to_next = |p| cfg.from_canonical(next_side, p);

    // side i is counterclockwise from side i−1 (the p1 end of its level set)
    // and clockwise from side i+1 (the p2 end)
    let previous_start = to_prev(prev_ls.point_at(1.0))?;
    let next_start = to_next(next_ls.point_at(0.0))?;
    let previous_direction = unit(to_prev(prev_ls.point_at(1.0 - DIRECTION_STEP))? - previous_start);
    let next_direction = unit(to_next(next_ls.point_at(DIRECTION_STEP))? - next_start);

    let previous = prev_ls
        .polyline(SEGMENTS)
        .into_iter()
        .map(to_prev)
        .collect::<Result<_>>()?;
    let next = next_ls
        .polyline(SEGMENTS)
        .into_iter()
        .map(to_next)
        .collect::<Result<_>>()?;
    Ok(ConstraintPair {
        t,
        previous,
        next,
        previous_start,
        next_start,
        previous_direction,
        next_direction,
    })
}

/// Level lines of `h_{i−1}` (red) and `h_{i+1}` (blue) with complementary
/// values, and their common start tangents on side `i` (green).
pub fn constraint_svg(cfg: &DomainConfig, side: usize, count: usize) -> Result<String> {
    cfg.check_side(side)?;
    let prev_side = cfg.wrap(side as isize - 1);
    let next_side = cfg.wrap(side as isize + 1);
    let mut svg = Svg::new();
    for t in level_values(count) {
        let pair = constraint_pair(cfg, side, t)?;
        let tag = |fam: &str, s: usize, h: f64| {
            [
                ("class", "level".to_string()),
                ("data-family", fam.to_string()),
                ("data-side", s.to_string()),
                ("data-h", format!("{h}")),
            ]
        };
        svg.polyline(&tag("previous", prev_side, t), RED, 0.005, &pair.previous);
        svg.polyline(&tag("next", next_side, 1.0 - t), BLUE, 0.005, &pair.next);
        if t > 0.0 && t < 1.0 {
            let p = pair.previous_start;
            let q = p + pair.previous_direction * 0.15;
            svg.raw(&format!(
                "<circle class=\"tangent-point\" data-t=\"{t}\" cx=\"{:.12}\" cy=\"{:.12}\" r=\"0.015\" fill=\"{BLACK}\"/>\n",
                p.u, p.v
            ));
            svg.raw(&format!(
                "<line class=\"tangent\" data-t=\"{t}\" x1=\"{:.12}\" y1=\"{:.12}\" x2=\"{:.12}\" y2=\"{:.12}\" stroke=\"{BLACK}\" stroke-width=\"0.008\"/>\n",
                p.u, p.v, q.u, q.v
            ));
        }
    }
    draw_sides(&mut svg, cfg, |i| {
        if i == side {
            GREEN
        } else if i == prev_side {
            RED
        } else if i == next_side {
            BLUE
        } else {
            BLACK
        }
    })?;
    Ok(svg.finish())
}

/// A `<polyline>` read back from one of the plots above.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub attrs: BTreeMap<String, String>,
    pub points: Vec<DomainPoint>,
}

/// Extracts every `<polyline .../>` element of an SVG produced by this module.
pub fn read_polylines(svg: &str) -> Vec<Polyline> {
    let mut out = Vec::new();
    for chunk in svg.split("<polyline").skip(1) {
        let Some(end) = chunk.find("/>") else { continue };
        let mut attrs = BTreeMap::new();
        let mut rest = &chunk[..end];
        while let Some(eq) = rest.find("=\"") {
            let key = rest[..eq].trim().to_string();
            let after = &rest[eq + 2..];
            let Some(close) = after.find('"') else { break };
            attrs.insert(key, after[..close].to_string());
            rest = &after[close + 1..];
        }
        let points = attrs
            .get("points")
            .map(|s| {
                s.split_whitespace()
                    .filter_map(|pair| {
                        let (u, v) = pair.split_once(',')?;
                        Some(DomainPoint::new(u.parse().ok()?, v.parse().ok()?))
                    })
                    .collect()
            })
            .unwrap_or_default();
        out.push(Polyline { attrs, points });
    }
    out
}

/// Angle in `[0, π]` between two directions.
pub fn angle_between(a: DomainPoint, b: DomainPoint) -> f64 {
    a.cross(b).abs().atan2(a.dot(b)).clamp(0.0, PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize) -> DomainConfig {
        DomainConfig::new(n).unwrap()
    }

    #[test]
    fn values_include_endpoints() {
        assert_eq!(level_values(3), vec![0.0, 0.5, 1.0]);
        assert_eq!(level_values(10)[3], 1.0 / 3.0);
    }

    #[test]
    fn levels_plot_structure() {
        let svg = levels_svg(&cfg(5), 1, 11).unwrap();
        let lines = read_polylines(&svg);
        let levels: Vec<_> = lines.iter().filter(|l| l.attrs["class"] == "level").collect();
        assert_eq!(levels.len(), 11);
        assert!(levels.iter().all(|l| l.points.len() == SEGMENTS + 1));
        let sides: Vec<_> = lines.iter().filter(|l| l.attrs["class"] == "side").collect();
        assert_eq!(sides.len(), 5);
        assert_eq!(sides[0].attrs["stroke"], GREEN);
        assert_eq!(sides[2].attrs["stroke"], RED);
        assert_eq!(sides[3].attrs["stroke"], RED);
        assert_eq!(sides[1].attrs["stroke"], BLACK);
    }

    #[test]
    fn boundary_levels_follow_circle() {
        let svg = levels_svg(&cfg(6), 2, 5).unwrap();
        for l in read_polylines(&svg) {
            let h: Option<f64> = l.attrs.get("data-h").and_then(|s| s.parse().ok());
            if matches!(h, Some(h) if h == 0.0 || h == 1.0) {
                assert!(l.points.iter().all(|p| (p.norm() - 1.0).abs() < 1e-9));
            }
        }
    }

    #[test]
    fn corner_plot_has_two_families() {
        let svg = corner_svg(&cfg(5), 1, 7).unwrap();
        let lines = read_polylines(&svg);
        for fam in ["first", "second"] {
            assert_eq!(
                lines
                    .iter()
                    .filter(|l| l.attrs.get("data-family").map(String::as_str) == Some(fam))
                    .count(),
                7
            );
        }
        // only side 4 is away from both sides 1 and 2
        let red: Vec<_> = lines
            .iter()
            .filter(|l| l.attrs["class"] == "side" && l.attrs["stroke"] == RED)
            .map(|l| l.attrs["data-side"].clone())
            .collect();
        assert_eq!(red, vec!["4".to_string()]);
    }

    #[test]
    fn constraint_pairs_share_start_and_direction() {
        for n in 4..=8 {
            let c = cfg(n);
            for side in 1..=n {
                for k in 1..10 {
                    let pair = constraint_pair(&c, side, k as f64 / 10.0).unwrap();
                    assert!(pair.previous_start.distance(pair.next_start) < 1e-9);
                    assert!(angle_between(pair.previous_direction, pair.next_direction) < 1e-4);
                }
            }
        }
        let half = constraint_pair(&cfg(5), 2, 0.5).unwrap();
        let mid = cfg(5).side_point(2, 0.5).unwrap();
        assert!(half.previous_start.distance(mid) < 1e-12);
    }

    #[test]
    fn bad_side_rejected() {
        assert!(levels_svg(&cfg(5), 6, 3).is_err());
        assert!(constraint_svg(&cfg(5), 0, 3).is_err());
    }
}
