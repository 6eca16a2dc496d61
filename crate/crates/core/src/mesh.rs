//! Disk tessellation and surface sampling.

use std::collections::VecDeque;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::domain::DomainConfig;
use crate::error::{Error, Result};
use crate::geom::{DomainPoint, Point3};
use crate::param::{BisectionSettings, RIM_PROJECTION_SLACK};
use crate::patch::ControlNet;

/// Step of the finite differences used for surface normals.
pub const NORMAL_STEP: f64 = 1e-5;

/// Cross products shorter than this give no usable normal.
pub const DEGENERATE_NORMAL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexTag {
    Interior,
    /// On the rim, strictly inside side `i`.
    Side(usize),
    /// The corner between sides `i` and `i+1`.
    Corner(usize),
}

/// Triangulated unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainMesh {
    pub sides: usize,
    pub vertices: Vec<DomainPoint>,
    /// Counterclockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    pub tags: Vec<VertexTag>,
}

impl DomainMesh {
    pub fn corner_vertex(&self, i: usize) -> Option<usize> {
        self.tags.iter().position(|&t| t == VertexTag::Corner(i))
    }

    pub fn is_rim(&self, v: usize) -> bool {
        self.tags[v] != VertexTag::Interior
    }

    /// Vertex count of [`tessellate_disk_subdivided`]: `1 + n·m·R(R+1)/2`.
    pub fn expected_vertex_count(n: usize, rings: usize, per_side: usize) -> usize {
        1 + n * per_side * rings * (rings + 1) / 2
    }

    /// Triangle count of [`tessellate_disk_subdivided`]: `n·m·R²`.
    pub fn expected_triangle_count(n: usize, rings: usize, per_side: usize) -> usize {
        n * per_side * rings * rings
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for t in &self.triangles {
            for e in 0..3 {
                let (a, b) = (t[e], t[(e + 1) % 3]);
                if !adj[a].contains(&b) {
                    adj[a].push(b);
                }
                if !adj[b].contains(&a) {
                    adj[b].push(a);
                }
            }
        }
        adj
    }
}

/// [`tessellate_disk_subdivided`] with one rim segment per side and ring.
pub fn tessellate_disk(cfg: &DomainConfig, rings: usize) -> Result<DomainMesh> {
    tessellate_disk_subdivided(cfg, rings, 1)
}

/// Concentric-ring triangulation of the unit disk.
///
/// Ring `ℓ = 1..=rings` has radius `ℓ/rings` and `n·m·ℓ` vertices starting at
/// angle `−π/n`, so every side corner is a rim vertex.
pub fn tessellate_disk_subdivided(cfg: &DomainConfig, rings: usize, per_side: usize) -> Result<DomainMesh> {
    if rings < 1 || per_side < 1 {
        return Err(Error::InvalidRings);
    }
    let n = cfg.sides();
    let start = -PI / n as f64;
    let mut vertices = vec![DomainPoint::ORIGIN];
    let mut tags = vec![VertexTag::Interior];
    let mut ring_offsets = vec![0usize];

    for ring in 1..=rings {
        ring_offsets.push(vertices.len());
        let count = n * per_side * ring;
        let radius = ring as f64 / rings as f64;
        let per_side_here = per_side * ring;
        for k in 0..count {
            let alpha = start + 2.0 * PI * k as f64 / count as f64;
            let p = if ring == rings {
                DomainPoint::on_circle(alpha)
            } else {
                DomainPoint::on_circle(alpha) * radius
            };
            vertices.push(p);
            tags.push(if ring < rings {
                VertexTag::Interior
            } else if k % per_side_here == 0 {
                let c = k / per_side_here;
                VertexTag::Corner(if c == 0 { n } else { c })
            } else {
                VertexTag::Side(k / per_side_here + 1)
            });
        }
    }

    let mut triangles = Vec::with_capacity(DomainMesh::expected_triangle_count(n, rings, per_side));
    let first = ring_offsets[1];
    let count = n * per_side;
    for k in 0..count {
        triangles.push([0, first + k, first + (k + 1) % count]);
    }
    for ring in 2..=rings {
        let inner = ring_offsets[ring - 1];
        let outer = ring_offsets[ring];
        let a_n = n * per_side * (ring - 1);
        let b_n = n * per_side * ring;
        let (mut ia, mut ib) = (0usize, 0usize);
        while ia < a_n || ib < b_n {
            // advance whichever ring has the next vertex at the smaller angle
            let take_outer = ib < b_n && (ia == a_n || (ib + 1) * a_n <= (ia + 1) * b_n);
            if take_outer {
                triangles.push([inner + ia % a_n, outer + ib, outer + (ib + 1) % b_n]);
                ib += 1;
            } else {
                triangles.push([inner + ia, outer + ib % b_n, inner + (ia + 1) % a_n]);
                ia += 1;
            }
        }
    }

    Ok(DomainMesh {
        sides: n,
        vertices,
        triangles,
        tags,
    })
}

/// Sampled patch surface over a [`DomainMesh`].
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub positions: Vec<Point3>,
    pub normals: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
    /// Weight of the central point at each vertex.
    pub deficiency: Vec<f64>,
    /// Vertices whose own normal was degenerate and got copied from a neighbour.
    pub degenerate: Vec<bool>,
    pub scalar: Option<Vec<f64>>,
}

fn partial(
    net: &ControlNet,
    p: DomainPoint,
    at_p: Point3,
    dir: DomainPoint,
    settings: &BisectionSettings,
) -> Result<Point3> {
    let admissible = |q: DomainPoint| q.norm() <= 1.0 + RIM_PROJECTION_SLACK;
    let eval = |q: DomainPoint| net.evaluate(q, settings).map(|s| s.position);
    let fwd = p + dir * NORMAL_STEP;
    let bwd = p - dir * NORMAL_STEP;
    match (admissible(fwd), admissible(bwd)) {
        (true, true) => Ok((eval(fwd)? - eval(bwd)?) * (0.5 / NORMAL_STEP)),
        (true, false) => Ok((eval(fwd)? - at_p) * (1.0 / NORMAL_STEP)),
        (false, true) => Ok((at_p - eval(bwd)?) * (1.0 / NORMAL_STEP)),
        (false, false) => Err(Error::OutsideDomain { u: p.u, v: p.v }),
    }
}

/// Evaluates the patch at every mesh vertex, with finite-difference normals.
pub fn sample_surface(net: &ControlNet, dm: &DomainMesh, settings: &BisectionSettings) -> Result<SurfaceMesh> {
    if net.sides != dm.sides {
        return Err(Error::SideCountMismatch {
            net: net.sides,
            mesh: dm.sides,
        });
    }
    let samples = dm
        .vertices
        .par_iter()
        .map(|&p| {
            let s = net.evaluate(p, settings)?;
            let du = partial(net, p, s.position, DomainPoint::new(1.0, 0.0), settings)?;
            let dv = partial(net, p, s.position, DomainPoint::new(0.0, 1.0), settings)?;
            let cross = du.cross(dv);
            let normal = (cross.norm() >= DEGENERATE_NORMAL)
                .then(|| cross.normalized())
                .flatten();
            Ok((s, normal))
        })
        .collect::<Result<Vec<_>>>()?;

    let positions = samples.iter().map(|(s, _)| s.position).collect();
    let deficiency = samples.iter().map(|(s, _)| s.deficiency).collect();
    let degenerate: Vec<bool> = samples.iter().map(|(_, n)| n.is_none()).collect();
    let mut normals: Vec<Option<Point3>> = samples.iter().map(|(_, n)| *n).collect();

    // breadth-first from every valid vertex; each flagged vertex takes the first normal that reaches it
    let adj = dm.adjacency();
    let mut queue: VecDeque<usize> = (0..normals.len()).filter(|&v| normals[v].is_some()).collect();
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if normals[w].is_none() {
                normals[w] = normals[v];
                queue.push_back(w);
            }
        }
    }
    let normals = normals
        .into_iter()
        .map(|n| n.unwrap_or(Point3::new(0.0, 0.0, 1.0)))
        .collect();

    Ok(SurfaceMesh {
        positions,
        normals,
        triangles: dm.triangles.clone(),
        deficiency,
        degenerate,
        scalar: None,
    })
}

/// Per-vertex `normal · light`, the quantity whose level lines are isophotes.
pub fn isophote_scalar(sm: &SurfaceMesh, light: Point3) -> Result<Vec<f64>> {
    let light = light.normalized().ok_or(Error::ZeroLight)?;
    Ok(sm.normals.iter().map(|n| n.dot(light).clamp(-1.0, 1.0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn cfg(n: usize) -> DomainConfig {
        DomainConfig::new(n).unwrap()
    }

    fn edge_use(dm: &DomainMesh) -> HashMap<(usize, usize), usize> {
        let mut edges = HashMap::new();
        for t in &dm.triangles {
            for e in 0..3 {
                let (a, b) = (t[e], t[(e + 1) % 3]);
                *edges.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        edges
    }

    #[test]
    fn single_ring_is_a_fan() {
        let dm = tessellate_disk(&cfg(5), 1).unwrap();
        assert_eq!(dm.vertices.len(), 6);
        assert_eq!(dm.triangles.len(), 5);
        assert!(dm.triangles.iter().all(|t| t[0] == 0));
        for i in 1..=5 {
            assert!(dm.corner_vertex(i).is_some());
        }
        assert!(tessellate_disk(&cfg(5), 0).is_err());
    }

    #[test]
    fn counts_and_euler_characteristic() {
        for n in 3..=8 {
            for rings in 1..=6 {
                for m in 1..=3 {
                    let dm = tessellate_disk_subdivided(&cfg(n), rings, m).unwrap();
                    assert_eq!(dm.vertices.len(), DomainMesh::expected_vertex_count(n, rings, m));
                    assert_eq!(dm.triangles.len(), DomainMesh::expected_triangle_count(n, rings, m));
                    let edges = edge_use(&dm);
                    let euler = dm.vertices.len() as isize - edges.len() as isize + dm.triangles.len() as isize;
                    assert_eq!(euler, 1, "n={n} rings={rings} m={m}");
                }
            }
        }
    }

    #[test]
    fn watertight_and_counterclockwise() {
        let dm = tessellate_disk_subdivided(&cfg(6), 5, 2).unwrap();
        for (&(a, b), &uses) in &edge_use(&dm) {
            let rim_edge = dm.is_rim(a) && dm.is_rim(b);
            assert_eq!(uses, if rim_edge { 1 } else { 2 }, "edge {a}-{b}");
        }
        for t in &dm.triangles {
            let [a, b, c] = t.map(|i| dm.vertices[i]);
            assert!((b - a).cross(c - a) > 0.0);
        }
    }

    #[test]
    fn rim_vertices_on_circle_with_exact_corners() {
        let c = cfg(7);
        let dm = tessellate_disk_subdivided(&c, 4, 2).unwrap();
        for (p, tag) in dm.vertices.iter().zip(&dm.tags) {
            assert!(p.norm() <= 1.0 + 1e-15);
            if *tag != VertexTag::Interior {
                assert!((p.norm() - 1.0).abs() < 1e-12);
            }
        }
        for i in 1..=7 {
            let v = dm.corner_vertex(i).unwrap();
            assert!(dm.vertices[v].distance(c.corner(i).unwrap()) < 1e-12);
        }
        let side_count = dm.tags.iter().filter(|t| matches!(t, VertexTag::Side(3))).count();
        assert_eq!(side_count, 2 * 4 - 1);
    }

    #[test]
    fn isophote_needs_light() {
        let sm = SurfaceMesh {
            positions: vec![Point3::ZERO],
            normals: vec![Point3::new(0.0, 0.0, 1.0)],
            triangles: vec![],
            deficiency: vec![0.0],
            degenerate: vec![false],
            scalar: None,
        };
        assert_eq!(isophote_scalar(&sm, Point3::ZERO), Err(Error::ZeroLight));
        assert_eq!(isophote_scalar(&sm, Point3::new(0.0, 0.0, 2.0)).unwrap(), vec![1.0]);
        assert_eq!(isophote_scalar(&sm, Point3::new(1.0, 0.0, 0.0)).unwrap(), vec![0.0]);
    }
}
