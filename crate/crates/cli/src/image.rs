//! RGB raster images and the binary PPM (P6) encoding.

use circpatch::DomainPoint;

pub type Rgb = [u8; 3];

pub const WHITE: Rgb = [255, 255, 255];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<Rgb>,
}

impl Image {
    pub fn filled(width: usize, height: usize, color: Rgb) -> Self {
        Self {
            width,
            height,
            pixels: vec![color; width * height],
        }
    }

    pub fn get(&self, col: usize, row: usize) -> Rgb {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, col: usize, row: usize, color: Rgb) {
        self.pixels[row * self.width + col] = color;
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for px in &self.pixels {
            out.extend_from_slice(px);
        }
        out
    }

    /// Decodes a binary PPM with maxval 255 (comments are not supported).
    pub fn from_ppm(bytes: &[u8]) -> Option<Self> {
        let mut fields = Vec::new();
        let mut pos = 0;
        while fields.len() < 4 {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return None;
            }
            fields.push(std::str::from_utf8(&bytes[start..pos]).ok()?);
        }
        pos += 1;
        if fields[0] != "P6" || fields[3] != "255" {
            return None;
        }
        let width: usize = fields[1].parse().ok()?;
        let height: usize = fields[2].parse().ok()?;
        let data = bytes.get(pos..pos + width * height * 3)?;
        Some(Self {
            width,
            height,
            pixels: data.chunks(3).map(|c| [c[0], c[1], c[2]]).collect(),
        })
    }
}

/// Domain position of a pixel centre in a square `resolution`² raster.
///
/// The outermost pixel centres sit exactly on `±1`, so with an odd resolution
/// the origin, `(±1, 0)` and `(0, ±1)` are pixel centres.
pub fn pixel_center(resolution: usize, col: usize, row: usize) -> DomainPoint {
    let scale = 2.0 / (resolution - 1) as f64;
    DomainPoint::new(-1.0 + col as f64 * scale, 1.0 - row as f64 * scale)
}

/// Nearest pixel `(col, row)` to a domain point.
pub fn pixel_of(resolution: usize, p: DomainPoint) -> (usize, usize) {
    let scale = (resolution - 1) as f64 / 2.0;
    let col = ((p.u + 1.0) * scale).round().clamp(0.0, (resolution - 1) as f64);
    let row = ((1.0 - p.v) * scale).round().clamp(0.0, (resolution - 1) as f64);
    (col as usize, row as usize)
}

/// Green at `h = 0`, yellow at `h = 0.5`, red at `h = 1`, linear in between.
pub fn height_color(h: f64) -> Rgb {
    let h = h.clamp(0.0, 1.0);
    if h <= 0.5 {
        [(510.0 * h).round() as u8, 255, 0]
    } else {
        [255, (510.0 * (1.0 - h)).round() as u8, 0]
    }
}
