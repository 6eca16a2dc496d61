//! Height parameterization over a circular domain for `n`-sided surface
//! patches, and the Overlap-Generalized-Bézier (OGB) surface built on it.
//!
//! * [`domain`]: side layout of the unit circle and the circular level arcs.
//! * [`param`]: the bisection-based height mapping `h_i(u, v)`.
//! * [`patch`]: Bernstein basis, control nets and surface evaluation.
//! * [`mesh`]: disk tessellation, surface sampling and isophote values.

pub mod domain;
pub mod error;
pub mod geom;
pub mod mesh;
pub mod ogb;
pub mod param;
pub mod patch;

pub use domain::{DomainConfig, LevelSet};
pub use error::{Error, Result};
pub use geom::{DomainPoint, Point3};
pub use mesh::{DomainMesh, SurfaceMesh, VertexTag};
pub use param::{BisectionSettings, HeightField};
pub use patch::{ControlNet, SurfaceSample, ValidationReport};
