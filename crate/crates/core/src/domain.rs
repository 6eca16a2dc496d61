//! Geometry of the unit-circle domain.
//!
//! Side `i` (1-based, counterclockwise) occupies the arc
//! `[(2(i-1)-1)π/n, (2(i-1)+1)π/n]`, so side 1 is the canonical base arc
//! `[-π/n, π/n]`. The level set of a height `h` over the base side is a
//! circular arc that meets the domain circle at angle `hπ`; its endpoints sit
//! on the two adjacent sides at polar angles `±(2h+1)π/n`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{normalize_angle, DomainPoint};

/// Heights closer than this to `ĥ` are represented by the straight-line level set.
pub const STRAIGHT_LINE_TOLERANCE: f64 = 1e-12;

/// Side layout of an `n`-sided circular domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainConfig {
    n: usize,
}

impl DomainConfig {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSideCount(n));
        }
        Ok(Self { n })
    }

    pub fn sides(&self) -> usize {
        self.n
    }

    /// Angular width of one side, `2π/n`.
    pub fn side_angle(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// The height whose level set is a straight line, `1/(n-2)`.
    pub fn h_hat(&self) -> f64 {
        1.0 / (self.n as f64 - 2.0)
    }

    /// Abscissa of the straight level line, `cos(π/(n-2))`.
    pub fn u_hat(&self) -> f64 {
        (PI / (self.n as f64 - 2.0)).cos()
    }

    pub fn check_side(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::SideIndexOutOfRange { index: i, n: self.n });
        }
        Ok(())
    }

    /// Wraps any integer side index (including 0 and negatives) into `1..=n`.
    pub fn wrap(&self, i: isize) -> usize {
        (i - 1).rem_euclid(self.n as isize) as usize + 1
    }

    /// Polar angle of the midpoint of side `i`.
    pub fn side_mid_angle(&self, i: usize) -> f64 {
        (i as f64 - 1.0) * self.side_angle()
    }

    /// Polar angle of the corner between sides `i` and `i+1`.
    pub fn corner_angle(&self, i: usize) -> f64 {
        (2.0 * i as f64 - 1.0) * PI / self.n as f64
    }

    /// The corner point shared by sides `i` and `i+1`.
    pub fn corner(&self, i: usize) -> Result<DomainPoint> {
        self.check_side(i)?;
        Ok(DomainPoint::on_circle(normalize_angle(self.corner_angle(i))))
    }

    /// The two corners bounding side `i`, in counterclockwise order.
    pub fn side_corners(&self, i: usize) -> Result<(DomainPoint, DomainPoint)> {
        self.check_side(i)?;
        let half = PI / self.n as f64;
        let mid = self.side_mid_angle(i);
        Ok((
            DomainPoint::on_circle(normalize_angle(mid - half)),
            DomainPoint::on_circle(normalize_angle(mid + half)),
        ))
    }

    /// Point on side `i` at fraction `t` (0 at the clockwise corner, 1 at the counterclockwise one).
    pub fn side_point(&self, i: usize, t: f64) -> Result<DomainPoint> {
        self.check_side(i)?;
        let half = PI / self.n as f64;
        let alpha = self.side_mid_angle(i) - half + t * self.side_angle();
        Ok(DomainPoint::on_circle(normalize_angle(alpha)))
    }

    /// Rotates `p` so that side `i` lands on the canonical base arc.
    pub fn to_canonical(&self, i: usize, p: DomainPoint) -> Result<DomainPoint> {
        self.check_side(i)?;
        if i == 1 {
            return Ok(p);
        }
        Ok(p.rotated(normalize_angle(-self.side_mid_angle(i))))
    }

    /// Inverse of [`to_canonical`](Self::to_canonical).
    pub fn from_canonical(&self, i: usize, p: DomainPoint) -> Result<DomainPoint> {
        self.check_side(i)?;
        if i == 1 {
            return Ok(p);
        }
        Ok(p.rotated(normalize_angle(self.side_mid_angle(i))))
    }

    /// `(φ, θ, ψ)` for height `h`: endpoint angle, tangency angle and their difference.
    pub fn arc_angles(&self, h: f64) -> (f64, f64, f64) {
        let phi = normalize_angle((2.0 * h + 1.0) * PI / self.n as f64);
        let theta = normalize_angle(h * PI);
        let psi = normalize_angle(theta - phi);
        (phi, theta, psi)
    }

    /// Endpoints `(p1, p2)` of the level set for `h`, on the sides adjacent to the base.
    pub fn arc_endpoints(&self, h: f64) -> Result<(DomainPoint, DomainPoint)> {
        check_height(h)?;
        let (phi, _, _) = self.arc_angles(h);
        let (s, c) = phi.sin_cos();
        Ok((DomainPoint::new(c, s), DomainPoint::new(c, -s)))
    }

    /// The constant-parameter line for height `h` over the base side.
    pub fn level_set(&self, h: f64) -> Result<LevelSet> {
        check_height(h)?;
        let (phi, theta, psi) = self.arc_angles(h);
        let (p1, p2) = self.arc_endpoints(h)?;
        if h == 0.0 {
            return Ok(LevelSet::BoundaryArc {
                start: -phi,
                sweep: 2.0 * phi,
            });
        }
        if h == 1.0 {
            // Runs clockwise from p2 through (-1, 0) to p1.
            return Ok(LevelSet::BoundaryArc {
                start: -phi,
                sweep: -(2.0 * PI - 2.0 * phi),
            });
        }
        if (h - self.h_hat()).abs() <= STRAIGHT_LINE_TOLERANCE {
            return Ok(LevelSet::Line {
                abscissa: self.u_hat(),
                half_length: p1.v,
            });
        }
        let center = DomainPoint::new(theta.sin() / psi.sin(), 0.0);
        let radius = (phi.sin() / psi.sin()).abs();
        Ok(LevelSet::Arc {
            center,
            radius,
            p1,
            p2,
            phi,
            theta,
            psi,
        })
    }

    /// Angle at `p2` between the counterclockwise tangent of the unit circle and
    /// the tangent of the level arc pointing into the domain.
    pub fn tangency_angle(&self, h: f64) -> Result<f64> {
        let ls = self.level_set(h)?;
        let LevelSet::Arc { center, p2, phi, .. } = ls else {
            return Err(Error::DegenerateLevelSet(h));
        };
        let circle_tangent = DomainPoint::new(phi.sin(), phi.cos());
        let mut arc_tangent = (p2 - center).perp();
        let toward_mid = ls.midpoint() - p2;
        if arc_tangent.dot(toward_mid) < 0.0 {
            arc_tangent = -arc_tangent;
        }
        let arc_tangent = arc_tangent * (1.0 / arc_tangent.norm());
        Ok(circle_tangent
            .cross(arc_tangent)
            .abs()
            .atan2(circle_tangent.dot(arc_tangent)))
    }
}

pub(crate) fn check_height(h: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::HeightOutOfRange(h));
    }
    Ok(())
}

/// Geometry of one constant-parameter line in canonical position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevelSet {
    /// A proper circular arc centred on the u-axis.
    Arc {
        center: DomainPoint,
        radius: f64,
        p1: DomainPoint,
        p2: DomainPoint,
        phi: f64,
        theta: f64,
        psi: f64,
    },
    /// The straight level line `u = û`, between `v = -half_length` and `v = half_length`.
    Line { abscissa: f64, half_length: f64 },
    /// The level set lies on the domain circle (h = 0 or h = 1).
    BoundaryArc { start: f64, sweep: f64 },
}

impl LevelSet {
    /// Point at parameter `t ∈ [0, 1]`, running from the lower endpoint `p2` to `p1`.
    pub fn point_at(&self, t: f64) -> DomainPoint {
        match *self {
            LevelSet::Arc {
                center,
                radius,
                p2,
                psi,
                ..
            } => {
                let start = (p2 - center).angle();
                // the interior part of the circle crosses the u-axis on the side facing the origin
                let mid = if psi < 0.0 { 0.0 } else { PI };
                let sweep = normalize_angle(mid - start);
                let alpha = start + 2.0 * t * sweep;
                center + DomainPoint::new(alpha.cos(), alpha.sin()) * radius
            }
            LevelSet::Line { abscissa, half_length } => DomainPoint::new(abscissa, half_length * (2.0 * t - 1.0)),
            LevelSet::BoundaryArc { start, sweep } => DomainPoint::on_circle(start + t * sweep),
        }
    }

    /// The point where the level set crosses the u-axis.
    pub fn midpoint(&self) -> DomainPoint {
        match *self {
            LevelSet::Arc {
                center, radius, psi, ..
            } => {
                let dir = if psi < 0.0 { 1.0 } else { -1.0 };
                DomainPoint::new(center.u + dir * radius, 0.0)
            }
            LevelSet::Line { abscissa, .. } => DomainPoint::new(abscissa, 0.0),
            LevelSet::BoundaryArc { start, sweep } => DomainPoint::on_circle(start + 0.5 * sweep),
        }
    }

    /// `segments + 1` evenly spaced points from `p2` to `p1`.
    pub fn polyline(&self, segments: usize) -> Vec<DomainPoint> {
        let segments = segments.max(1);
        (0..=segments)
            .map(|k| self.point_at(k as f64 / segments as f64))
            .collect()
    }

    pub fn is_arc(&self) -> bool {
        matches!(self, LevelSet::Arc { .. })
    }
}
