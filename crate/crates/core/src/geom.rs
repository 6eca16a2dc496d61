//! Small 2D/3D value types used throughout the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Slack allowed on `u² + v² ≤ 1` for points of the closed unit disk.
pub const DISK_SLACK: f64 = 1e-12;

/// A point `(u, v)` of the circular domain (or any 2D point / vector).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DomainPoint {
    pub u: f64,
    pub v: f64,
}

impl DomainPoint {
    pub const ORIGIN: DomainPoint = DomainPoint { u: 0.0, v: 0.0 };

    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    /// Point of the unit circle at angle `alpha`.
    pub fn on_circle(alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self { u: c, v: s }
    }

    pub fn norm(self) -> f64 {
        self.u.hypot(self.v)
    }

    pub fn norm_squared(self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    pub fn dot(self, o: Self) -> f64 {
        self.u * o.u + self.v * o.v
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Self) -> f64 {
        self.u * o.v - self.v * o.u
    }

    pub fn distance(self, o: Self) -> f64 {
        (self - o).norm()
    }

    /// Polar angle in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.v.atan2(self.u)
    }

    /// Rotation about the origin by `alpha` (counterclockwise).
    pub fn rotated(self, alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self {
            u: c * self.u - s * self.v,
            v: s * self.u + c * self.v,
        }
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Self {
        Self { u: -self.v, v: self.u }
    }

    pub fn in_disk(self) -> bool {
        self.norm_squared() <= 1.0 + DISK_SLACK
    }
}

impl Add for DomainPoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.u + o.u, self.v + o.v)
    }
}

impl Sub for DomainPoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.u - o.u, self.v - o.v)
    }
}

impl Mul<f64> for DomainPoint {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.u * s, self.v * s)
    }
}

impl Neg for DomainPoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.u, -self.v)
    }
}

impl fmt::Display for DomainPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// A point or vector in 3D.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ZERO: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Self) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Unit vector in the same direction, or `None` when the norm is zero or not finite.
    pub fn normalized(self) -> Option<Self> {
        let len = self.norm();
        (len > 0.0 && len.is_finite()).then(|| self * (1.0 / len))
    }
}

impl Add for Point3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Point3 {
    fn add_assign(&mut self, o: Self) {
        self.x += o.x;
        self.y += o.y;
        self.z += o.z;
    }
}

impl Sub for Point3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Point3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Reduces an angle to `(-π, π]`.
pub fn normalize_angle(alpha: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut a = alpha.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    a
}
