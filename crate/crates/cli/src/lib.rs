//! Emitters behind the `circpatch` command: PPM height maps, SVG level-line
//! plots and OBJ meshes of OGB patches.

pub mod app;
pub mod image;
pub mod plot;
pub mod render;

pub use app::{run, Cli, CliError};
