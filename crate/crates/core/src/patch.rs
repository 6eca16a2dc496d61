//! Overlap-Generalized-Bézier (OGB) surface evaluation.
//!
//! The surface is a sum of `n` tensor-product corner interpolants. Corner `i`
//! (between sides `i` and `i+1`) owns the control points `P_ijk`,
//! `0 ≤ j, k ≤ ⌊d/2⌋`, weighted by `B^d_j(h_{i+1}) B^d_k(h_i)`. Whatever weight
//! the corners leave over goes to the central point `P_0`.

use std::fmt;

use crate::domain::DomainConfig;
use crate::error::{Error, Result};
use crate::geom::{DomainPoint, Point3};
use crate::param::{height_field, BisectionSettings, HeightField};

/// `C(n, k)` as a float; exact for the degrees used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The Bernstein polynomial `B^d_j(t) = C(d, j) t^j (1 − t)^(d − j)`.
pub fn bernstein(d: usize, j: usize, t: f64) -> Result<f64> {
    if j > d {
        return Err(Error::BernsteinIndex { degree: d, index: j });
    }
    Ok(binomial(d, j) * t.powi(j as i32) * (1.0 - t).powi((d - j) as i32))
}

/// Degree-`d` Bernstein basis with precomputed binomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinBasis {
    coeffs: Vec<f64>,
}

impl BernsteinBasis {
    pub fn new(degree: usize) -> Self {
        Self {
            coeffs: (0..=degree).map(|j| binomial(degree, j)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Writes `B^d_0(t) .. B^d_{out.len()-1}(t)` into `out`.
    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        let d = self.degree() as i32;
        let s = 1.0 - t;
        for (j, slot) in out.iter_mut().enumerate() {
            let j_i = j as i32;
            *slot = self.coeffs[j] * t.powi(j_i) * s.powi(d - j_i);
        }
    }
}

/// Control structure of an `n`-sided, degree-`d` OGB patch.
///
/// `points` holds `P_ijk` in lexicographic `(i, j, k)` order with
/// `i = 1..=n` and `j, k = 0..=⌊d/2⌋`.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlNet {
    pub sides: usize,
    pub degree: usize,
    pub center: Point3,
    pub points: Vec<Point3>,
}

/// Evaluated surface point and the central weight used for it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub position: Point3,
    pub deficiency: f64,
}

impl ControlNet {
    /// `⌊d/2⌋ + 1`, the number of rows (and columns) per corner.
    pub fn corner_size(&self) -> usize {
        self.degree / 2 + 1
    }

    pub fn expected_point_count(&self) -> usize {
        self.sides * self.corner_size() * self.corner_size()
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let m = self.corner_size();
        ((i - 1) * m + j) * m + k
    }

    /// `P_ijk` with `i` taken modulo `n` (1-based).
    pub fn point(&self, i: isize, j: usize, k: usize) -> Point3 {
        let i = (i - 1).rem_euclid(self.sides as isize) as usize + 1;
        self.points[self.index(i, j, k)]
    }

    pub fn point_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Point3 {
        let idx = self.index(i, j, k);
        &mut self.points[idx]
    }

    /// Builds a net by calling `f(i, j, k)` for every corner point.
    pub fn from_fn(
        sides: usize,
        degree: usize,
        center: Point3,
        mut f: impl FnMut(usize, usize, usize) -> Point3,
    ) -> Self {
        let m = degree / 2 + 1;
        let mut points = Vec::with_capacity(sides * m * m);
        for i in 1..=sides {
            for j in 0..m {
                for k in 0..m {
                    points.push(f(i, j, k));
                }
            }
        }
        Self {
            sides,
            degree,
            center,
            points,
        }
    }

    /// Every control point set to `p`.
    pub fn constant(sides: usize, degree: usize, p: Point3) -> Self {
        Self::from_fn(sides, degree, p, |_, _, _| p)
    }

    /// Applies `f` to every control point, including the centre.
    pub fn map_points(&self, f: impl Fn(Point3) -> Point3) -> Self {
        Self {
            sides: self.sides,
            degree: self.degree,
            center: f(self.center),
            points: self.points.iter().map(|&p| f(p)).collect(),
        }
    }

    /// The `d + 1` control points that govern the boundary curve on side `s`,
    /// ordered from corner `(s, s+1)` to corner `(s-1, s)`.
    pub fn boundary_control_points(&self, s: usize) -> Vec<Point3> {
        let m = self.corner_size();
        let s = s as isize;
        let mut out: Vec<Point3> = (0..m).map(|j| self.point(s, j, 0)).collect();
        out.extend((0..m).rev().map(|k| self.point(s - 1, 0, k)));
        out
    }

    pub fn validate(&self) -> ValidationReport {
        self.check(false)
    }

    /// Like [`validate`](Self::validate), plus warnings about degenerate boundary control polygons.
    pub fn validate_strict(&self) -> ValidationReport {
        self.check(true)
    }

    fn check(&self, strict: bool) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.sides < 3 {
            report.violations.push(Violation::SideCount(self.sides));
        }
        if self.degree == 0 || self.degree.is_multiple_of(2) {
            report.violations.push(Violation::EvenDegree(self.degree));
        }
        let expected = self.expected_point_count();
        if self.points.len() != expected {
            report.violations.push(Violation::PointCount {
                expected,
                got: self.points.len(),
            });
        }
        if !self.center.is_finite() {
            report.violations.push(Violation::NonFinite { index: 0 });
        }
        for (idx, p) in self.points.iter().enumerate() {
            if !p.is_finite() {
                report.violations.push(Violation::NonFinite { index: idx + 1 });
            }
        }
        if strict && report.is_valid() {
            for s in 1..=self.sides {
                let row = self.boundary_control_points(s);
                for (pos, pair) in row.windows(2).enumerate() {
                    if pair[0].distance(pair[1]) <= 1e-12 {
                        report
                            .warnings
                            .push(Warning::CoincidentBoundaryPoints { side: s, position: pos });
                    }
                }
            }
        }
        report
    }

    fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidNet(report.to_string()))
        }
    }

    /// Weight deficiency `B_0 = 1 − Σ_i Σ_j Σ_k B^d_j(h_{i+1}) B^d_k(h_i)`.
    pub fn deficiency(&self, hf: &HeightField) -> Result<f64> {
        let mut total = 0.0;
        self.accumulate(hf, |_, w| total += w)?;
        Ok(1.0 - total)
    }

    /// Surface point for a precomputed height field.
    pub fn evaluate_heights(&self, hf: &HeightField) -> Result<SurfaceSample> {
        let mut position = Point3::ZERO;
        let mut total = 0.0;
        self.accumulate(hf, |p, w| {
            position += p * w;
            total += w;
        })?;
        let deficiency = 1.0 - total;
        position += self.center * deficiency;
        Ok(SurfaceSample { position, deficiency })
    }

    /// Surface point `S(p)` of the patch.
    pub fn evaluate(&self, p: DomainPoint, settings: &BisectionSettings) -> Result<SurfaceSample> {
        self.ensure_valid()?;
        let cfg = DomainConfig::new(self.sides)?;
        let hf = height_field(&cfg, p, settings)?;
        self.evaluate_heights(&hf)
    }

    /// Calls `visit(P_ijk, weight)` for every corner term.
    fn accumulate(&self, hf: &HeightField, mut visit: impl FnMut(Point3, f64)) -> Result<()> {
        self.ensure_valid()?;
        if hf.len() != self.sides {
            return Err(Error::HeightFieldLength {
                expected: self.sides,
                got: hf.len(),
            });
        }
        let m = self.corner_size();
        let basis = BernsteinBasis::new(self.degree);
        // b[i-1][j] = B^d_j(h_i)
        let mut b = vec![0.0; self.sides * m];
        for (i, row) in b.chunks_mut(m).enumerate() {
            basis.eval_into(hf.values()[i], row);
        }
        for i in 1..=self.sides {
            let next = i % self.sides;
            let along = &b[next * m..(next + 1) * m];
            let across = &b[(i - 1) * m..i * m];
            for (j, bj) in along.iter().enumerate() {
                for (k, bk) in across.iter().enumerate() {
                    visit(self.points[self.index(i, j, k)], bj * bk);
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    SideCount(usize),
    EvenDegree(usize),
    PointCount {
        expected: usize,
        got: usize,
    },
    /// `index` 0 is the centre point, `k ≥ 1` is the k-th corner point.
    NonFinite {
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    CoincidentBoundaryPoints { side: usize, position: usize },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SideCount(n) => write!(f, "side count {n} is below 3"),
            Violation::EvenDegree(d) => write!(f, "degree {d} is not a positive odd number"),
            Violation::PointCount { expected, got } => {
                write!(f, "expected {expected} corner points, found {got}")
            }
            Violation::NonFinite { index: 0 } => write!(f, "central point has a non-finite coordinate"),
            Violation::NonFinite { index } => write!(f, "corner point #{index} has a non-finite coordinate"),
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::CoincidentBoundaryPoints { side, position } => write!(
                f,
                "side {side}: boundary control points {position} and {} coincide",
                position + 1
            ),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .violations
            .iter()
            .map(ToString::to_string)
            .chain(self.warnings.iter().map(|w| format!("warning: {w}")))
            .collect();
        if items.is_empty() {
            f.write_str("ok")
        } else {
            f.write_str(&items.join("; "))
        }
    }
}
