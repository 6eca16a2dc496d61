//! Argument parsing and subcommand dispatch.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use circpatch::mesh::{isophote_scalar, sample_surface, tessellate_disk_subdivided};
use circpatch::{ogb, BisectionSettings, DomainConfig, Point3};
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::{plot, render};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    /// 1 usage error, 2 input or parse error, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<circpatch::Error> for CliError {
    fn from(e: circpatch::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "circpatch", version, about = "Circular-domain height maps and OGB patches")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bitmap of one height mapping (green h=0, yellow h=0.5, red h=1).
    Hmap(HmapArgs),
    /// Constant-parameter lines of one height mapping.
    Levels(LineArgs),
    /// Level lines of the two mappings meeting at a corner.
    Corner(LineArgs),
    /// Complementary level lines of the two neighbours of a side.
    Constraint(LineArgs),
    /// Tessellate and evaluate an OGB control net, writing an OBJ mesh.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
pub struct Numerics {
    /// Half-width of the excluded band around the straight-line height.
    #[arg(long, default_value_t = 1e-7)]
    pub epsilon: f64,
    /// Bisection tolerance on h.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

impl Numerics {
    fn settings(&self, cfg: &DomainConfig) -> Result<BisectionSettings, CliError> {
        let s = BisectionSettings {
            epsilon_gap: self.epsilon,
            tolerance: self.tolerance,
            ..BisectionSettings::default()
        };
        s.validate(cfg).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(s)
    }
}

#[derive(Debug, Args)]
pub struct HmapArgs {
    #[arg(long, default_value_t = 5)]
    pub sides: usize,
    /// Base side of the mapping.
    #[arg(long, default_value_t = 1)]
    pub side: usize,
    /// Image width and height in pixels.
    #[arg(long, default_value_t = 513)]
    pub resolution: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub numerics: Numerics,
}

#[derive(Debug, Args)]
pub struct LineArgs {
    #[arg(long, default_value_t = 5)]
    pub sides: usize,
    /// Base side (for `corner`: the first of the two sides).
    #[arg(long, default_value_t = 1)]
    pub side: usize,
    /// Number of level lines per family.
    #[arg(long, default_value_t = 11)]
    pub count: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Control net in `.ogb` format.
    pub net: PathBuf,
    /// OBJ output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tessellation rings.
    #[arg(long, default_value_t = 16)]
    pub rings: usize,
    /// Rim segments per side and ring.
    #[arg(long, default_value_t = 2)]
    pub subdivision: usize,
    /// Also write a domain-space isophote bitmap.
    #[arg(long)]
    pub isophotes: bool,
    /// Path of the isophote bitmap (default: OBJ path with `.isophotes.ppm`).
    #[arg(long)]
    pub isophote_out: Option<PathBuf>,
    /// Number of isophote stripes.
    #[arg(long, default_value_t = 16)]
    pub count: usize,
    /// Light direction as `x,y,z`.
    #[arg(long, default_value = "0,0,1")]
    pub light: String,
    /// Isophote bitmap size in pixels.
    #[arg(long, default_value_t = 513)]
    pub resolution: usize,
    /// Only validate the net; exit non-zero on violations.
    #[arg(long)]
    pub check: bool,
    /// With `--check`, also report warnings.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub numerics: Numerics,
}

fn domain(sides: usize) -> Result<DomainConfig, CliError> {
    DomainConfig::new(sides).map_err(|e| CliError::Usage(e.to_string()))
}

fn check_side(cfg: &DomainConfig, side: usize) -> Result<(), CliError> {
    cfg.check_side(side).map_err(|e| CliError::Usage(e.to_string()))
}

fn check_resolution(resolution: usize) -> Result<(), CliError> {
    if resolution < 16 {
        return Err(CliError::Usage(format!(
            "resolution must be at least 16, got {resolution}"
        )));
    }
    Ok(())
}

fn check_count(count: usize) -> Result<(), CliError> {
    if count < 2 {
        return Err(CliError::Usage(format!("count must be at least 2, got {count}")));
    }
    Ok(())
}

/// Writes through a temporary file in the target directory, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::Input(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut builder = tempfile::Builder::new();
    builder.prefix(".circpatch-");
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(fs::Permissions::from_mode(0o644));
    }
    let mut tmp = builder.tempfile_in(&dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn parse_light(s: &str) -> Result<Point3, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("invalid light direction `{s}`")))?;
    match parts[..] {
        [x, y, z] if x.is_finite() && y.is_finite() && z.is_finite() => Ok(Point3::new(x, y, z)),
        _ => Err(CliError::Usage(format!(
            "light direction needs three numbers, got `{s}`"
        ))),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Hmap(a) => {
            let cfg = domain(a.sides)?;
            check_side(&cfg, a.side)?;
            check_resolution(a.resolution)?;
            let settings = a.numerics.settings(&cfg)?;
            let img = render::height_map(&cfg, a.side, a.resolution, &settings)?;
            write_atomic(&a.out, &img.to_ppm())
        }
        Command::Levels(a) | Command::Corner(a) | Command::Constraint(a) if a.sides > 12 => Err(CliError::Usage(
            format!("line plots support at most 12 sides, got {}", a.sides),
        )),
        Command::Levels(a) => line_plot(&a, plot::levels_svg),
        Command::Corner(a) => line_plot(&a, plot::corner_svg),
        Command::Constraint(a) => line_plot(&a, plot::constraint_svg),
        Command::Eval(a) => eval(&a),
    }
}

fn line_plot(a: &LineArgs, draw: fn(&DomainConfig, usize, usize) -> circpatch::Result<String>) -> Result<(), CliError> {
    let cfg = domain(a.sides)?;
    check_side(&cfg, a.side)?;
    check_count(a.count)?;
    let svg = draw(&cfg, a.side, a.count)?;
    write_atomic(&a.out, svg.as_bytes())
}

fn eval(a: &EvalArgs) -> Result<(), CliError> {
    let text =
        fs::read_to_string(&a.net).map_err(|e| CliError::Input(format!("cannot read {}: {e}", a.net.display())))?;
    let net = ogb::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", a.net.display())))?;
    let report = if a.strict {
        net.validate_strict()
    } else {
        net.validate()
    };
    if a.check {
        println!("{report}");
        return if report.is_valid() && (!a.strict || report.warnings.is_empty()) {
            Ok(())
        } else {
            Err(CliError::Input(format!(
                "{}: control net failed validation",
                a.net.display()
            )))
        };
    }
    if !report.is_valid() {
        return Err(CliError::Input(format!("{}: {report}", a.net.display())));
    }
    let out = a
        .out
        .as_ref()
        .ok_or_else(|| CliError::Usage("eval needs --out unless --check is given".into()))?;
    if a.rings < 1 || a.subdivision < 1 {
        return Err(CliError::Usage("rings and subdivision must be at least 1".into()));
    }
    let light = parse_light(&a.light)?;
    if a.isophotes {
        check_resolution(a.resolution)?;
        check_count(a.count)?;
    }

    let cfg = domain(net.sides)?;
    let settings = a.numerics.settings(&cfg)?;
    let dm = tessellate_disk_subdivided(&cfg, a.rings, a.subdivision)?;
    let sm = sample_surface(&net, &dm, &settings)?;
    let scalar = isophote_scalar(&sm, light).map_err(|e| CliError::Usage(e.to_string()))?;
    write_atomic(out, render::obj(&sm).as_bytes())?;
    if a.isophotes {
        let img = render::isophote_image(&dm, &scalar, a.count, a.resolution);
        let path = a
            .isophote_out
            .clone()
            .unwrap_or_else(|| out.with_extension("isophotes.ppm"));
        write_atomic(&path, &img.to_ppm())?;
    }
    Ok(())
}
