//! `drawings`: generate, verify and render simple drawings of K_n.
//!
//! Exit status: 0 when everything passes, 1 when a check fails, 2 for
//! parse, I/O or validation failures, 3 for usage errors.

mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use simple_drawings::checks::{self, TheoremId, TheoremReport};
use simple_drawings::drawing::{validate_good, GoodDrawing, ValidationReport};
use simple_drawings::geometry::{generate_convex, generate_general, PointConfiguration};
use simple_drawings::planarizer::build_plane_map;
use simple_drawings::sides::all_side_partitions;
use simple_drawings::{decode, encode};

pub use render::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("no-geometry: {0}")]
    NoGeometry(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "drawings",
    version,
    about = "Simple drawings of complete graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated drawing (and its point configuration) as JSON.
    Generate(GenerateArgs),
    /// Validate drawings and run structural checks.
    Verify(VerifyArgs),
    /// Draw a straight-line drawing as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Points in convex position.
    Natural,
    /// Random points in general position.
    Random,
    /// Read the drawing from `--in`.
    File,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "natural")]
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drawing JSON destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Point configuration destination; defaults to `<out>.points.json`.
    #[arg(long)]
    points_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Seed range `a..b` (half-open) or `a..=b`.
    #[arg(long)]
    seeds: Option<String>,
    /// Comma-separated subset of t1,t2,t3,segbound,natural,claims or `all`.
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Report JSON destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also dump the plane map of a single drawing, for debugging.
    #[arg(long)]
    map_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Point configuration; defaults to `<in>.points.json`.
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Shade bounded faces, coloured by face id.
    #[arg(long)]
    shade_faces: bool,
}

/// Which checks to run. `all` means every check except `natural`, which is
/// added only for drawings generated as natural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSelection {
    pub all: bool,
    pub explicit: Vec<TheoremId>,
}

impl CheckSelection {
    pub fn resolve(&self, natural: bool) -> Vec<TheoremId> {
        if !self.all {
            return self.explicit.clone();
        }
        TheoremId::ALL
            .into_iter()
            .filter(|&t| t != TheoremId::Natural || natural)
            .collect()
    }
}

impl FromStr for CheckSelection {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut sel = CheckSelection {
            all: false,
            explicit: Vec::new(),
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                sel.all = true;
            } else {
                let t = part.parse::<TheoremId>().map_err(CliError::Usage)?;
                if !sel.explicit.contains(&t) {
                    sel.explicit.push(t);
                }
            }
        }
        if sel.all {
            sel.explicit.clear();
        } else if sel.explicit.is_empty() {
            return Err(CliError::Usage("--checks selects nothing".into()));
        }
        Ok(sel)
    }
}

/// Resolved options for one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub kind: Kind,
    pub n: Option<usize>,
    pub seeds: Vec<u64>,
    pub checks: CheckSelection,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn parse_seed_range(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Usage(format!("bad seed range {s:?}, expected a..b or a..=b"));
    let (lo, hi, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b, false)
    } else {
        let single: u64 = s.trim().parse().map_err(|_| bad())?;
        return Ok(vec![single]);
    };
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    let seeds: Vec<u64> = if inclusive {
        (lo..=hi).collect()
    } else {
        (lo..hi).collect()
    };
    if seeds.is_empty() {
        return Err(CliError::Usage(format!("seed range {s:?} is empty")));
    }
    Ok(seeds)
}

fn require_n(n: Option<usize>) -> Result<usize, CliError> {
    match n {
        Some(n) if n >= 3 => Ok(n),
        Some(n) => Err(CliError::Usage(format!("--n must be at least 3, got {n}"))),
        None => Err(CliError::Usage(
            "--n is required for generated drawings".into(),
        )),
    }
}

/// Point configuration of a generated drawing.
pub fn generate_points(kind: Kind, n: usize, seed: u64) -> PointConfiguration {
    match kind {
        Kind::Natural => generate_convex(n, seed),
        Kind::Random | Kind::File => generate_general(n, seed),
    }
}

fn geometric(cfg: &PointConfiguration) -> GoodDrawing {
    GoodDrawing::from_geometric(cfg).expect("generated configurations are in general position")
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
    }
}

fn read_in(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `drawing.json` -> `drawing.points.json`.
pub fn sidecar_path(drawing: &Path) -> PathBuf {
    let stem = drawing
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    drawing.with_file_name(format!("{stem}.points.json"))
}

fn cmd_generate(args: GenerateArgs) -> Result<i32, CliError> {
    let n = require_n(args.n)?;
    if args.kind == Kind::File {
        return Err(CliError::Usage(
            "generate needs --kind natural or random".into(),
        ));
    }
    let cfg = generate_points(args.kind, n, args.seed);
    let drawing = geometric(&cfg);
    write_out(args.out.as_deref(), &encode(&drawing))?;
    let points_path = args
        .points_out
        .or_else(|| args.out.as_deref().map(sidecar_path));
    if let Some(p) = points_path {
        write_out(Some(&p), cfg.to_json().as_bytes())?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize, Debug)]
pub struct VerifyEntry {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
    pub validation: ValidationReport,
    pub reports: Vec<TheoremReport>,
}

impl VerifyEntry {
    pub fn pass(&self) -> bool {
        self.validation.ok && self.reports.iter().all(|r| r.pass)
    }
}

#[derive(Serialize, Debug)]
pub struct VerifyReport {
    pub pass: bool,
    pub entries: Vec<VerifyEntry>,
}

/// Validates one drawing and runs the selected checks on it.
pub fn verify_drawing(
    drawing: &GoodDrawing,
    checks: &[TheoremId],
    source: String,
    seed: Option<u64>,
) -> Result<VerifyEntry, CliError> {
    let validation = validate_good(drawing);
    let mut reports = Vec::new();
    if validation.ok {
        let map = build_plane_map(drawing).map_err(|e| CliError::Invalid(e.to_string()))?;
        for &t in checks {
            let report = match t {
                TheoremId::ConnectedIntersection => checks::check_theorem1(&map),
                TheoremId::FaceFromTriangles => {
                    let parts =
                        all_side_partitions(&map).map_err(|e| CliError::Invalid(e.to_string()))?;
                    checks::check_theorem2(&map, &parts)
                }
                TheoremId::NoThreeAtVertex => checks::check_theorem3(&map),
                TheoremId::SegmentBound => checks::check_segment_bound(&map),
                TheoremId::Natural => checks::check_natural_properties(&map, drawing.n()),
                TheoremId::VertexDeletionClaims => checks::check_vertex_deletion_claims(drawing)
                    .map_err(|e| CliError::Invalid(e.to_string()))?,
            };
            reports.push(report);
        }
    }
    Ok(VerifyEntry {
        source,
        seed,
        n: drawing.n(),
        validation,
        reports,
    })
}

fn resolve_verify(args: &VerifyArgs) -> Result<RunConfig, CliError> {
    let checks: CheckSelection = args.checks.parse()?;
    let kind = match (args.kind, &args.input) {
        (Some(Kind::File), None) => return Err(CliError::Usage("--kind file needs --in".into())),
        (Some(Kind::File), Some(_)) | (None, Some(_)) => Kind::File,
        (Some(k), None) => k,
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--in cannot be combined with a generated --kind".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("verify needs --in or --kind".into())),
    };
    let mut seeds = Vec::new();
    if kind != Kind::File {
        require_n(args.n)?;
        if let Some(s) = args.seed {
            seeds.push(s);
        }
        if let Some(range) = &args.seeds {
            seeds.extend(parse_seed_range(range)?);
        }
        if seeds.is_empty() {
            return Err(CliError::Usage(
                "generated kinds need --seed or --seeds".into(),
            ));
        }
        seeds.sort_unstable();
        seeds.dedup();
    }
    Ok(RunConfig {
        kind,
        n: args.n,
        seeds,
        checks,
        input: args.input.clone(),
        out: args.out.clone(),
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let cfg = resolve_verify(&args)?;
    let entries: Vec<VerifyEntry> = match cfg.kind {
        Kind::File => {
            let path = cfg.input.as_deref().expect("resolved");
            let bytes = read_in(path)?;
            let drawing = decode(&bytes).map_err(|e| CliError::Invalid(e.to_string()))?;
            if let Some(map_out) = &args.map_out {
                if let Ok(map) = build_plane_map(&drawing) {
                    let json = serde_json::to_vec_pretty(&map.to_json()).expect("json");
                    write_out(Some(map_out), &json)?;
                }
            }
            vec![verify_drawing(
                &drawing,
                &cfg.checks.resolve(false),
                path.display().to_string(),
                None,
            )?]
        }
        kind => {
            let n = cfg.n.expect("resolved");
            let checks = cfg.checks.resolve(kind == Kind::Natural);
            let label = if kind == Kind::Natural {
                "natural"
            } else {
                "random"
            };
            cfg.seeds
                .par_iter()
                .map(|&seed| {
                    let drawing = geometric(&generate_points(kind, n, seed));
                    verify_drawing(
                        &drawing,
                        &checks,
                        format!("{label} n={n} seed={seed}"),
                        Some(seed),
                    )
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };

    let valid = entries.iter().all(|e| e.validation.ok);
    let report = VerifyReport {
        pass: entries.iter().all(VerifyEntry::pass),
        entries,
    };
    let mut json = serde_json::to_vec_pretty(&report).expect("report serializes");
    json.push(b'\n');
    write_out(cfg.out.as_deref(), &json)?;
    Ok(if !valid {
        EXIT_INVALID
    } else if report.pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_render(args: RenderArgs) -> Result<i32, CliError> {
    let drawing = decode(&read_in(&args.input)?).map_err(|e| CliError::Invalid(e.to_string()))?;
    let points_path = args
        .points
        .clone()
        .unwrap_or_else(|| sidecar_path(&args.input));
    if !points_path.exists() {
        return Err(CliError::NoGeometry(format!(
            "no point configuration for {} (looked for {})",
            args.input.display(),
            points_path.display()
        )));
    }
    let text = String::from_utf8_lossy(&read_in(&points_path)?).into_owned();
    let cfg = PointConfiguration::from_json(&text).map_err(|e| CliError::Invalid(e.to_string()))?;
    let svg = render_svg(&drawing, &cfg, args.shade_faces)?;
    write_out(args.out.as_deref(), svg.as_bytes())?;
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Render(a) => cmd_render(a),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("drawings: {err}");
            err.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seed_range("2..5").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_seed_range("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_seed_range("7").unwrap(), vec![7]);
        assert!(parse_seed_range("5..5").is_err());
        assert!(parse_seed_range("a..b").is_err());
    }

    #[test]
    fn check_selection() {
        let all: CheckSelection = "all".parse().unwrap();
        assert_eq!(all.resolve(false).len(), 5);
        assert_eq!(all.resolve(true).len(), 6);
        let some: CheckSelection = "t2, t1,t2".parse().unwrap();
        assert_eq!(
            some.resolve(true),
            vec![
                TheoremId::FaceFromTriangles,
                TheoremId::ConnectedIntersection
            ]
        );
        assert!("bogus".parse::<CheckSelection>().is_err());
        assert!("".parse::<CheckSelection>().is_err());
    }

    #[test]
    fn sidecar() {
        assert_eq!(
            sidecar_path(Path::new("/tmp/k5.json")),
            PathBuf::from("/tmp/k5.points.json")
        );
    }
}
