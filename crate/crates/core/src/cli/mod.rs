//! Command-line front end.
//!
//! Inputs are TOML files. A cone file holds `kind` (`orthant`, `lorentz`, `psd`,
//! `polyhedral`), `dim` (orthant and Lorentz: ambient dimension, psd: matrix order,
//! polyhedral: ambient dimension) and, for polyhedral cones, `facets` as a list of
//! rows. A point file holds `coords` (psd matrices row-major) or `points`, a list of
//! coordinate lists. A map file holds `kind` (`linear`, `congruence`, `inversion`,
//! `partial_inversion`, `composite`) with `matrix`, `g`, `index` or `[[maps]]`.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::cones::ConeSpec;
use crate::embeddings::{self, GromovSeries};
use crate::error::Error;
use crate::geodesics::{self, LegOrder};
use crate::isometries::{self, ConeMap};
use crate::point::Point;
use crate::uniqueness;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "conemetric",
    version,
    about = "Thompson and Hilbert metric geometry on cones"
)]
struct Cli {
    /// Digits after the decimal point.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(6..=17))]
    precision: u8,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Thompson and Hilbert distances between two points.
    Dist {
        #[arg(long)]
        cone: PathBuf,
        x: PathBuf,
        y: PathBuf,
    },
    /// Equally spaced points along a Thompson geodesic.
    Geodesic {
        #[arg(long)]
        cone: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long, default_value_t = 10000)]
        samples: usize,
        /// Run the ray leg before the plane leg for unbalanced pairs.
        #[arg(long)]
        ray_first: bool,
    },
    /// Decide whether the geodesic between two points is unique.
    Unique {
        #[arg(long)]
        cone: PathBuf,
        x: PathBuf,
        y: PathBuf,
        /// Use Hilbert's projective metric instead of Thompson's.
        #[arg(long)]
        hilbert: bool,
    },
    /// Log coordinates of a point of a polyhedral cone.
    Embed {
        #[arg(long)]
        cone: PathBuf,
        x: PathBuf,
    },
    /// Gromov products of boundary sequences for each pair of directions.
    Gromov {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        base: PathBuf,
        directions: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        eta: f64,
        #[arg(long, default_value_t = 30)]
        kmax: usize,
    },
    /// Isometry deviation and projective linearity of a map.
    Isometry {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 10000)]
        samples: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Numeric(_)) => EXIT_NUMERIC,
            _ => EXIT_INPUT,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ConeFile {
    Orthant { dim: usize },
    Lorentz { dim: usize },
    Psd { dim: usize },
    Polyhedral { dim: usize, facets: Vec<Vec<f64>> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    coords: Option<Vec<f64>>,
    points: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum MapFile {
    Linear { matrix: Vec<Vec<f64>> },
    Congruence { g: Vec<f64> },
    Inversion,
    PartialInversion { index: usize },
    Composite { maps: Vec<MapFile> },
}

fn read_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    toml::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn load_cone(path: &Path) -> CliResult<ConeSpec> {
    let cone = match read_toml::<ConeFile>(path)? {
        ConeFile::Orthant { dim } => ConeSpec::orthant(dim)?,
        ConeFile::Lorentz { dim } => ConeSpec::lorentz(dim)?,
        ConeFile::Psd { dim } => ConeSpec::psd(dim)?,
        ConeFile::Polyhedral { dim, facets } => {
            if facets.iter().any(|r| r.len() != dim) {
                return Err(CliError::Invalid(format!(
                    "facet rows must have length {dim}"
                )));
            }
            ConeSpec::polyhedral(facets)?
        }
    };
    Ok(cone)
}

fn load_points(path: &Path) -> CliResult<Vec<Point>> {
    let file: PointFile = read_toml(path)?;
    match (file.coords, file.points) {
        (Some(c), None) => Ok(vec![Point::new(c)]),
        (None, Some(ps)) => Ok(ps.into_iter().map(Point::new).collect()),
        _ => Err(CliError::Invalid(format!(
            "{}: give exactly one of `coords` or `points`",
            path.display()
        ))),
    }
}

fn load_point(cone: &ConeSpec, path: &Path) -> CliResult<Point> {
    let mut pts = load_points(path)?;
    if pts.len() != 1 {
        return Err(CliError::Invalid(format!(
            "{}: expected a single point",
            path.display()
        )));
    }
    let p = pts.remove(0);
    cone.validate(&p)?;
    Ok(p)
}

fn build_map(cone: &ConeSpec, file: MapFile) -> CliResult<ConeMap> {
    let map = match file {
        MapFile::Linear { matrix } => ConeMap::linear(cone, matrix)?,
        MapFile::Congruence { g } => ConeMap::congruence(cone, Point::new(g))?,
        MapFile::Inversion => ConeMap::inversion(cone)?,
        MapFile::PartialInversion { index } => ConeMap::partial_inversion(cone, index)?,
        MapFile::Composite { maps } => {
            let parts = maps
                .into_iter()
                .map(|m| build_map(cone, m))
                .collect::<CliResult<Vec<_>>>()?;
            ConeMap::composite(cone, parts)?
        }
    };
    Ok(map)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
/// Results go to `out` only when the command succeeds; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> CliResult<String> {
    let prec = usize::from(cli.precision);
    let fx = |v: f64| format::fixed(v, prec);
    let mut s = String::new();
    match &cli.command {
        Command::Dist { cone, x, y } => {
            let cone = load_cone(cone)?;
            let (x, y) = (load_point(&cone, x)?, load_point(&cone, y)?);
            let _ = writeln!(s, "{}", fx(cone.thompson_distance(&x, &y)?));
            let _ = writeln!(s, "{}", fx(cone.hilbert_distance(&x, &y)?));
        }
        Command::Geodesic {
            cone,
            x,
            y,
            samples,
            ray_first,
        } => {
            let cone = load_cone(cone)?;
            let (x, y) = (load_point(&cone, x)?, load_point(&cone, y)?);
            if *samples == 0 {
                return Err(CliError::Invalid("--samples must be positive".into()));
            }
            let order = if *ray_first {
                LegOrder::RayFirst
            } else {
                LegOrder::PlaneFirst
            };
            let path = geodesics::geodesic_with_order(&cone, &x, &y, order)?;
            for p in path.sample(*samples) {
                let _ = writeln!(s, "{}", format::point_line(&p, prec));
            }
        }
        Command::Unique {
            cone,
            x,
            y,
            hilbert,
        } => {
            let cone = load_cone(cone)?;
            let (x, y) = (load_point(&cone, x)?, load_point(&cone, y)?);
            let verdict = if *hilbert {
                uniqueness::hilbert_unique(&cone, &x, &y)?
            } else {
                uniqueness::is_unique(&cone, &x, &y)?
            };
            let _ = write!(s, "{} {}", verdict.status, verdict.method);
            if let Some(values) = &verdict.spectrum {
                let _ = write!(s, " {}", format::spectrum(values, prec));
            }
            s.push('\n');
            if let Some(w) = &verdict.witness {
                let dist = |a: &Point, b: &Point| {
                    if *hilbert {
                        cone.hilbert_distance(a, b)
                    } else {
                        cone.thompson_distance(a, b)
                    }
                };
                let excess = dist(&x, w)? + dist(w, &y)? - dist(&x, &y)?;
                let _ = writeln!(s, "witness");
                let _ = writeln!(s, "{}", format::point_line(w, prec));
                let _ = writeln!(s, "check: d(x,w)+d(w,y)-d(x,y) = {}", fx(excess));
            }
        }
        Command::Embed { cone, x } => {
            let cone = load_cone(cone)?;
            let x = load_point(&cone, x)?;
            for v in embeddings::log_embed(&cone, &x)? {
                let _ = writeln!(s, "{}", fx(v));
            }
        }
        Command::Gromov {
            cone,
            base,
            directions,
            eta,
            kmax,
        } => {
            let cone = load_cone(cone)?;
            let p = load_point(&cone, base)?;
            let dirs = load_points(directions)?;
            for d in &dirs {
                cone.validate(d)?;
            }
            let seqs = embeddings::boundary_sequences(&cone, &p, &dirs, *kmax)?;
            for i in 0..seqs.len() {
                for j in (i + 1)..seqs.len() {
                    let series = GromovSeries::new(&cone, &p, &seqs[i], &seqs[j], *eta)?;
                    let _ = writeln!(s, "pair {} {}", i + 1, j + 1);
                    for v in &series.values {
                        let _ = writeln!(s, "{}", fx(*v));
                    }
                }
            }
        }
        Command::Isometry { cone, map, samples } => {
            let cone = load_cone(cone)?;
            let map = build_map(&cone, read_toml(map)?)?;
            let deviation = isometries::check_isometry(&map, *samples, cli.seed)?;
            let fit = isometries::is_projectively_linear(&map, *samples, cli.seed)?;
            let _ = writeln!(s, "{}", fx(deviation));
            let _ = writeln!(s, "{}", fit.verdict);
            let _ = writeln!(s, "{}", format::fixed(fit.residual, prec));
        }
    }
    Ok(s)
}
