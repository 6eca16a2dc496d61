//! Raster and mesh emitters.

use std::fmt::Write as _;

use circpatch::mesh::DomainMesh;
use circpatch::param::height_for_side;
use circpatch::{BisectionSettings, DomainConfig, Result, SurfaceMesh};
use rayon::prelude::*;

use crate::image::{height_color, pixel_center, Image, Rgb, WHITE};

/// Rasterizes `h_side` over the disk; pixels outside the disk stay white.
pub fn height_map(cfg: &DomainConfig, side: usize, resolution: usize, settings: &BisectionSettings) -> Result<Image> {
    cfg.check_side(side)?;
    let rows = (0..resolution)
        .into_par_iter()
        .map(|row| {
            (0..resolution)
                .map(|col| {
                    let p = pixel_center(resolution, col, row);
                    if !p.in_disk() {
                        return Ok(WHITE);
                    }
                    height_for_side(cfg, side, p, settings).map(height_color)
                })
                .collect::<Result<Vec<Rgb>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Image {
        width: resolution,
        height: resolution,
        pixels: rows.into_iter().flatten().collect(),
    })
}

const BAND_DARK: Rgb = [30, 30, 30];
const BAND_LIGHT: Rgb = [250, 215, 110];

/// Band index of an isophote value in `[−1, 1]` split into `bands` stripes.
pub fn band_of(value: f64, bands: usize) -> usize {
    let x = ((value.clamp(-1.0, 1.0) + 1.0) * 0.5 * bands as f64).floor() as usize;
    x.min(bands - 1)
}

/// Domain-space picture of per-vertex isophote values, interpolated linearly
/// over the triangles and drawn as alternating stripes.
pub fn isophote_image(dm: &DomainMesh, values: &[f64], bands: usize, resolution: usize) -> Image {
    let mut img = Image::filled(resolution, resolution, WHITE);
    let scale = (resolution - 1) as f64 / 2.0;
    let to_px = |u: f64, v: f64| ((u + 1.0) * scale, (1.0 - v) * scale);
    for tri in &dm.triangles {
        let [a, b, c] = tri.map(|i| dm.vertices[i]);
        let [va, vb, vc] = tri.map(|i| values[i]);
        let (ax, ay) = to_px(a.u, a.v);
        let (bx, by) = to_px(b.u, b.v);
        let (cx, cy) = to_px(c.u, c.v);
        let area = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        if area.abs() < 1e-15 {
            continue;
        }
        let min_x = ax.min(bx).min(cx).floor().max(0.0) as usize;
        let max_x = (ax.max(bx).max(cx).ceil() as usize).min(resolution - 1);
        let min_y = ay.min(by).min(cy).floor().max(0.0) as usize;
        let max_y = (ay.max(by).max(cy).ceil() as usize).min(resolution - 1);
        for row in min_y..=max_y {
            for col in min_x..=max_x {
                let (px, py) = (col as f64, row as f64);
                let wa = ((bx - px) * (cy - py) - (by - py) * (cx - px)) / area;
                let wb = ((cx - px) * (ay - py) - (cy - py) * (ax - px)) / area;
                let wc = 1.0 - wa - wb;
                let tol = -1e-9;
                if wa < tol || wb < tol || wc < tol {
                    continue;
                }
                let value = wa * va + wb * vb + wc * vc;
                let color = if band_of(value, bands).is_multiple_of(2) {
                    BAND_DARK
                } else {
                    BAND_LIGHT
                };
                img.set(col, row, color);
            }
        }
    }
    img
}

/// Wavefront OBJ with `v`, `vn` and `f` records only.
pub fn obj(sm: &SurfaceMesh) -> String {
    let mut out = String::new();
    for p in &sm.positions {
        let _ = writeln!(out, "v {} {} {}", p.x, p.y, p.z);
    }
    for n in &sm.normals {
        let _ = writeln!(out, "vn {} {} {}", n.x, n.y, n.z);
    }
    for t in &sm.triangles {
        let [a, b, c] = t.map(|i| i + 1);
        let _ = writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}");
    }
    out
}
