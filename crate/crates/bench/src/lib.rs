//! Deterministic inputs shared by the benchmarks.

use std::f64::consts::PI;

use circpatch::{ControlNet, DomainPoint, Point3};

/// A domed net whose control points circle the centre, `n` sides, degree `d`.
pub fn dome(n: usize, d: usize) -> ControlNet {
    let center = Point3::new(0.0, 0.0, 1.0);
    ControlNet::from_fn(n, d, center, |i, j, k| {
        let a = 2.0 * PI * ((i - 1) as f64 + 0.25 * (j as f64 - k as f64)) / n as f64;
        let r = 1.0 - 0.2 * (j + k) as f64;
        Point3::new(r * a.cos(), r * a.sin(), 0.3 * (j + k) as f64)
    })
}

/// `count` points spread over the disk on a sunflower spiral.
pub fn spiral_points(count: usize) -> Vec<DomainPoint> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let r = ((k as f64 + 0.5) / count as f64).sqrt() * 0.999;
            DomainPoint::on_circle(k as f64 * golden) * r
        })
        .collect()
}
