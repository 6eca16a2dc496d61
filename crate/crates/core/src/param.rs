//! The height mapping `h_i` over the circular domain.
//!
//! A point is mapped to the height of the level arc passing through it. The
//! straight level line `u = û` splits the domain: points with `u > û` have
//! `h < ĥ`, points with `u < û` have `h > ĥ`, and each half is solved by
//! bisection on the deviation `Δ(h) = ‖p − O(h)‖ − r(h)`.

use std::f64::consts::PI;

use crate::domain::{check_height, DomainConfig};
use crate::error::{Error, Result};
use crate::geom::DomainPoint;

/// Points farther than this outside the unit circle are rejected; closer ones are projected onto it.
pub const RIM_PROJECTION_SLACK: f64 = 1e-9;

/// `|u − û|` below which a point is assigned `ĥ` directly.
pub const STRAIGHT_LINE_SNAP: f64 = 1e-9;

/// Heights this close to `ĥ` have no usable arc centre; the deviation refuses them.
pub const DEVIATION_GUARD: f64 = 1e-10;

// Δ at the outer bracket end may be this far above zero from rounding of points on the rim.
const OUTER_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionSettings {
    /// Half-width of the excluded band around `ĥ`.
    pub epsilon_gap: f64,
    /// Bracket width at which bisection stops.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for BisectionSettings {
    fn default() -> Self {
        Self {
            epsilon_gap: 1e-7,
            tolerance: 1e-12,
            max_iterations: 200,
        }
    }
}

impl BisectionSettings {
    pub fn validate(&self, cfg: &DomainConfig) -> Result<()> {
        let h_hat = cfg.h_hat();
        let limit = if cfg.sides() > 3 { h_hat.min(1.0 - h_hat) } else { 1.0 };
        if !(self.epsilon_gap > 0.0 && self.epsilon_gap < limit) {
            return Err(Error::InvalidSettings(format!(
                "epsilon {} must lie in (0, {limit})",
                self.epsilon_gap
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidSettings(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        let needed = (1.0 / self.tolerance).log2().ceil().max(0.0) as usize;
        if self.max_iterations < needed {
            return Err(Error::InvalidSettings(format!(
                "{} iterations cannot reach tolerance {} (need {needed})",
                self.max_iterations, self.tolerance
            )));
        }
        Ok(())
    }
}

/// The `n` heights `h_1..h_n` of one domain point.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightField(Vec<f64>);

impl HeightField {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `h_i` with wrap-around, so `side(0) == side(n)` and `side(n + 1) == side(1)`.
    pub fn side(&self, i: isize) -> f64 {
        let n = self.0.len() as isize;
        self.0[(i - 1).rem_euclid(n) as usize]
    }
}

/// Signed distance of `p` from the level circle of height `h`: `‖p − O(h)‖ − r(h)`.
///
/// Evaluated through the power of the point with respect to the level circle,
/// `‖p − O‖² − r² = u² + v² + (sin(θ+φ) − 2u sin θ) / sin ψ`, which stays
/// accurate when the circle is very large.
pub fn deviation(cfg: &DomainConfig, p: DomainPoint, h: f64) -> Result<f64> {
    check_height(h)?;
    let h_hat = cfg.h_hat();
    if (h - h_hat).abs() < DEVIATION_GUARD {
        return Err(Error::StraightLineBand { h, h_hat });
    }
    Ok(deviation_unchecked(cfg.sides(), p, h))
}

fn deviation_unchecked(n: usize, p: DomainPoint, h: f64) -> f64 {
    let phi = (2.0 * h + 1.0) * PI / n as f64;
    let theta = h * PI;
    let sin_psi = (theta - phi).sin();
    let center_u = theta.sin() / sin_psi;
    let radius = (phi.sin() / sin_psi).abs();
    let power = p.norm_squared() + ((theta + phi).sin() - 2.0 * p.u * theta.sin()) / sin_psi;
    let dist = (p.u - center_u).hypot(p.v);
    power / (dist + radius)
}

fn check_in_disk(p: DomainPoint) -> Result<f64> {
    let norm = p.norm();
    if !norm.is_finite() || norm > 1.0 + RIM_PROJECTION_SLACK {
        return Err(Error::OutsideDomain { u: p.u, v: p.v });
    }
    Ok(norm)
}

/// Height of a point of the domain circle, from its polar angle.
///
/// Level sets meet the circle only at their endpoints `±(2h+1)π/n`, so on the
/// rim the height is 0 on the base side, `(|α|n/π − 1)/2` on the adjacent
/// sides and 1 on the distant ones.
pub fn rim_height(cfg: &DomainConfig, p: DomainPoint) -> f64 {
    let n = cfg.sides() as f64;
    ((p.angle().abs() * n / PI - 1.0) * 0.5).clamp(0.0, 1.0)
}

/// Height of a point given in canonical position (base side = side 1).
///
/// Points within [`RIM_PROJECTION_SLACK`] of the unit circle are projected
/// onto it and evaluated by [`rim_height`]. Near a corner the height grows
/// like the square root of the distance from the rim, so bisecting a rounded
/// rim point would only resolve it to about `1e-8`.
pub fn height(cfg: &DomainConfig, p: DomainPoint, settings: &BisectionSettings) -> Result<f64> {
    settings.validate(cfg)?;
    let norm = check_in_disk(p)?;
    if (norm - 1.0).abs() <= RIM_PROJECTION_SLACK {
        return Ok(rim_height(cfg, p));
    }
    bisect_height(cfg, p, settings)
}

/// Height of a point of the closed disk by bisection on the deviation, split at `u = û`.
pub fn bisect_height(cfg: &DomainConfig, p: DomainPoint, settings: &BisectionSettings) -> Result<f64> {
    settings.validate(cfg)?;
    let norm = check_in_disk(p)?;
    let p = if norm > 1.0 { p * (1.0 / norm) } else { p };
    let n = cfg.sides();
    let h_hat = cfg.h_hat();
    let u_hat = cfg.u_hat();
    if (p.u - u_hat).abs() <= STRAIGHT_LINE_SNAP {
        return Ok(h_hat);
    }
    let eps = settings.epsilon_gap;
    let delta = |h: f64| deviation_unchecked(n, p, h);

    // `inner` is the bracket end next to ĥ, where Δ > 0; `outer` is 0 or 1, where Δ ≤ 0.
    let near_side = p.u > u_hat;
    let (mut inner, mut outer) = if near_side {
        (h_hat - eps, 0.0)
    } else {
        (h_hat + eps, 1.0)
    };
    let lost = |inner: f64, outer: f64| Error::BracketLost {
        lo: inner.min(outer),
        hi: inner.max(outer),
        u: p.u,
        v: p.v,
    };
    let d_outer = delta(outer);
    if d_outer.is_nan() || d_outer > OUTER_SLACK {
        return Err(lost(inner, outer));
    }
    let d_inner = delta(inner);
    if d_inner.is_nan() || d_inner <= 0.0 {
        inner = if near_side {
            h_hat - 0.5 * eps
        } else {
            h_hat + 0.5 * eps
        };
        let d = delta(inner);
        if d.is_nan() {
            return Err(lost(inner, outer));
        }
        if d <= 0.0 {
            // p is beyond the arc at ĥ ∓ ε/2 yet on the same side of the line u = û,
            // so its height lies within ε/2 of ĥ.
            return Ok(h_hat);
        }
    }

    for _ in 0..settings.max_iterations {
        if (inner - outer).abs() <= settings.tolerance {
            return Ok(0.5 * (inner + outer));
        }
        let mid = 0.5 * (inner + outer);
        let d = delta(mid);
        if d.is_nan() {
            return Err(lost(inner, outer));
        }
        if d > 0.0 {
            inner = mid;
        } else {
            outer = mid;
        }
    }
    if (inner - outer).abs() <= settings.tolerance {
        return Ok(0.5 * (inner + outer));
    }
    Err(Error::NoConvergence(settings.max_iterations))
}

/// `h_i(p)` for an arbitrary side `i`.
pub fn height_for_side(cfg: &DomainConfig, i: usize, p: DomainPoint, settings: &BisectionSettings) -> Result<f64> {
    height(cfg, cfg.to_canonical(i, p)?, settings)
}

/// All `n` heights of `p`.
pub fn height_field(cfg: &DomainConfig, p: DomainPoint, settings: &BisectionSettings) -> Result<HeightField> {
    (1..=cfg.sides())
        .map(|i| {
            height_for_side(cfg, i, p, settings).map_err(|e| Error::AtSide {
                side: i,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(HeightField)
}

/// `(h_{i+1}(p), h_i(p))`, the parameter pair of the corner between sides `i` and `i+1`.
pub fn corner_pair(cfg: &DomainConfig, i: usize, p: DomainPoint, settings: &BisectionSettings) -> Result<(f64, f64)> {
    cfg.check_side(i)?;
    let next = cfg.wrap(i as isize + 1);
    let at = |side: usize| {
        height_for_side(cfg, side, p, settings).map_err(|e| Error::AtSide {
            side,
            source: Box::new(e),
        })
    };
    Ok((at(next)?, at(i)?))
}

/// Finite-difference gradient of `h_i` at `p`.
///
/// Central differences where both samples stay in the disk, second-order
/// one-sided differences otherwise.
pub fn gradient(
    cfg: &DomainConfig,
    i: usize,
    p: DomainPoint,
    settings: &BisectionSettings,
    fd_step: f64,
) -> Result<DomainPoint> {
    if fd_step.is_nan() || fd_step <= 0.0 {
        return Err(Error::InvalidStep(fd_step));
    }
    cfg.check_side(i)?;
    let h = |q: DomainPoint| height_for_side(cfg, i, q, settings);
    let admissible = |q: DomainPoint| q.norm() <= 1.0 + RIM_PROJECTION_SLACK;
    // one-sided stencils are second order: (−3f(0) + 4f(s) − f(2s)) / 2s
    let partial = |dir: DomainPoint| -> Result<f64> {
        let fwd = p + dir * fd_step;
        let bwd = p - dir * fd_step;
        match (admissible(fwd), admissible(bwd)) {
            (true, true) => Ok((h(fwd)? - h(bwd)?) / (2.0 * fd_step)),
            (true, false) => {
                let far = p + dir * (2.0 * fd_step);
                Ok((-3.0 * h(p)? + 4.0 * h(fwd)? - h(far)?) / (2.0 * fd_step))
            }
            (false, true) => {
                let far = p - dir * (2.0 * fd_step);
                Ok((3.0 * h(p)? - 4.0 * h(bwd)? + h(far)?) / (2.0 * fd_step))
            }
            (false, false) => Err(Error::OutsideDomain { u: p.u, v: p.v }),
        }
    };
    Ok(DomainPoint::new(
        partial(DomainPoint::new(1.0, 0.0))?,
        partial(DomainPoint::new(0.0, 1.0))?,
    ))
}
