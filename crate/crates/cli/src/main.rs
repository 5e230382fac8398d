//! Command-line interface: widths, inradii, erosion, optimal cuts, theorem
//! verification suites, coverage checks, conjecture probes and SVG figures.
//!
//! Exit codes: 0 = success / no violation, 1 = usage or data error,
//! 2 = violation found.

mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::json;

use plankgeo::{
    apply_cut_tree, c_inradius, covers_body, erode, inradius_sequence, minimal_relative_width,
    minimal_width, optimal_conway_cuts, probe, relative_width_parallel, run_suite,
    successive_inradius, voronoi_partition, width_parallel, ConvexBody, CutTree, Direction,
    Plank, PlankFamily, ProbeConfig, Reduced, SuiteConfig, TheoremSuite,
};

#[derive(Parser)]
#[command(
    name = "plankgeo",
    about = "Convex-geometry toolkit: plank coverings, successive inradii, cuts and probes",
    version
)]
struct Cli {
    /// Worker threads for trial execution (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock timing in reports (omitted by default so repeated
    /// runs are byte-identical).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct IoArgs {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal width / minimal C-width, or the width parallel to a direction.
    Width {
        #[arg(long)]
        body: PathBuf,
        /// Gauge body C: computes relative (C-)widths when given.
        #[arg(long)]
        gauge: Option<PathBuf>,
        /// Comma-separated direction, e.g. "1,0"; fixed-direction width.
        #[arg(long)]
        direction: Option<String>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// C-inradius: the largest homothety factor with a translate of C in K.
    Inradius {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[command(flatten)]
        io: IoArgs,
    },
    /// m-th successive C-inradius (fixed-point bisection; optionally the
    /// packing oracle or the whole sequence).
    SuccessiveInradius {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[arg(long, short)]
        m: u32,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Use the linear-packing characterization instead.
        #[arg(long)]
        packing: bool,
        /// Emit the full sequence 1..=m with m*r values.
        #[arg(long)]
        sequence: bool,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Inner parallel body K eroded by rho * C (exact halfspace offsets).
    Erode {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Optimal successive-cut tree for n pieces.
    OptimalCuts {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[arg(long, short)]
        n: u32,
        #[arg(long, short, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Theorem verification suites over random (or given) instances.
    Verify {
        /// bang | ball | two-plank | conway | akopyan-karasev | corollary-width
        suite: String,
        #[arg(long)]
        body: Option<PathBuf>,
        #[arg(long)]
        gauge: Option<PathBuf>,
        #[arg(long, short, default_value_t = 2)]
        n: u32,
        #[arg(long, short, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 2)]
        dimension: usize,
        /// Random cut trees per instance (conway suite).
        #[arg(long, default_value_t = 50)]
        inner_trials: u32,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decide whether a plank family covers the body.
    CoverCheck {
        #[arg(long)]
        body: PathBuf,
        /// JSON array of planks {"normal":[...],"low":..,"high":..}.
        #[arg(long)]
        planks: PathBuf,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Seeded randomized conjecture probe from a JSON config.
    Probe {
        #[arg(long)]
        config: PathBuf,
        /// Also write a per-trial CSV summary (seed, deficit).
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Deterministic SVG figure of a 2D body with optional layers.
    Plot {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        gauge: Option<PathBuf>,
        /// Draw the erosion by rho * gauge.
        #[arg(long)]
        rho: Option<f64>,
        /// Cut-tree JSON: draws the resulting pieces.
        #[arg(long)]
        cuts: Option<PathBuf>,
        #[arg(long)]
        planks: Option<PathBuf>,
        /// Voronoi sites "x,y;x,y;...": draws clipped cells.
        #[arg(long)]
        sites: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap would exit 2; the exit-code contract reserves 2 for
            // violations.
            let _ = e.print();
            std::process::exit(1);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error[Threads]: {e}");
            std::process::exit(1);
        }
    }
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            // Display already carries the originating error name.
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, plankgeo::Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| plankgeo::Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| plankgeo::Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn read_planks(path: &Path) -> Result<Vec<Plank>, plankgeo::Error> {
    #[derive(serde::Deserialize)]
    struct Wrapped {
        planks: Vec<Plank>,
    }
    let text = fs::read_to_string(path)
        .map_err(|e| plankgeo::Error::InvalidInput(format!("{}: {e}", path.display())))?;
    if let Ok(list) = serde_json::from_str::<Vec<Plank>>(&text) {
        return Ok(list);
    }
    serde_json::from_str::<Wrapped>(&text)
        .map(|w| w.planks)
        .map_err(|e| {
            plankgeo::Error::InvalidInput(format!(
                "{}: expected a JSON array of planks or {{\"planks\": [...]}}: {e}",
                path.display()
            ))
        })
}

fn parse_numbers(s: &str) -> Result<Vec<f64>, plankgeo::Error> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| plankgeo::Error::InvalidInput(format!("number {t:?}: {e}")))
        })
        .collect()
}

fn emit(io: &IoArgs, value: &serde_json::Value) -> Result<(), plankgeo::Error> {
    let text = format!("{}\n", serde_json::to_string_pretty(value).expect("serializable"));
    match &io.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| plankgeo::Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(cli: Cli) -> Result<i32, plankgeo::Error> {
    let timing = cli.timing;
    match cli.cmd {
        Cmd::Width {
            body,
            gauge,
            direction,
            io,
        } => {
            let k: ConvexBody = read_json(&body)?;
            let gauge: Option<ConvexBody> = gauge.map(|p| read_json(&p)).transpose()?;
            let value = match direction {
                Some(s) => {
                    let u = Direction::new(parse_numbers(&s)?)?;
                    let v = match &gauge {
                        Some(c) => relative_width_parallel(&k, c, &u)?,
                        None => width_parallel(&k, &u)?,
                    };
                    json!({ "value": v, "direction": u })
                }
                None => {
                    let r = match &gauge {
                        Some(c) => minimal_relative_width(&k, c)?,
                        None => minimal_width(&k)?,
                    };
                    to_value(&r)
                }
            };
            emit(&io, &value)?;
            Ok(0)
        }
        Cmd::Inradius { body, gauge, io } => {
            let k: ConvexBody = read_json(&body)?;
            let c: ConvexBody = read_json(&gauge)?;
            let (scale, witness) = c_inradius(&k, &c)?;
            emit(&io, &json!({ "scale": scale, "witness": witness }))?;
            Ok(0)
        }
        Cmd::SuccessiveInradius {
            body,
            gauge,
            m,
            tol,
            packing,
            sequence,
            io,
        } => {
            let k: ConvexBody = read_json(&body)?;
            let c: ConvexBody = read_json(&gauge)?;
            let value = if sequence {
                let seq = inradius_sequence(&k, &c, m, tol)?;
                let rows: Vec<serde_json::Value> = seq
                    .iter()
                    .map(|(m, r, mr)| json!({ "m": m, "rho": r, "mRho": mr }))
                    .collect();
                json!({ "sequence": rows })
            } else if packing {
                to_value(&plankgeo::successive_inradius_via_packing(&k, &c, m, tol)?)
            } else {
                to_value(&successive_inradius(&k, &c, m, tol)?)
            };
            emit(&io, &value)?;
            Ok(0)
        }
        Cmd::Erode {
            body,
            gauge,
            rho,
            io,
        } => {
            let k: ConvexBody = read_json(&body)?;
            let c: ConvexBody = read_json(&gauge)?;
            let value = match erode(&k, &c, rho)? {
                Reduced::Body(b) => to_value(&b),
                Reduced::Flat { margin, witness, .. } => {
                    json!({ "degenerate": true, "margin": margin, "witness": witness })
                }
                Reduced::Empty { margin } => json!({ "empty": true, "margin": margin }),
            };
            emit(&io, &value)?;
            Ok(0)
        }
        Cmd::OptimalCuts {
            body,
            gauge,
            n,
            m,
            tol,
            io,
        } => {
            let k: ConvexBody = read_json(&body)?;
            let c: ConvexBody = read_json(&gauge)?;
            let tree = optimal_conway_cuts(&k, &c, n, m, tol)?;
            emit(&io, &to_value(&tree))?;
            Ok(0)
        }
        Cmd::Verify {
            suite,
            body,
            gauge,
            n,
            m,
            trials,
            seed,
            tol,
            dimension,
            inner_trials,
            io,
        } => {
            let suite: TheoremSuite =
                serde_json::from_value(serde_json::Value::String(suite.clone())).map_err(|_| {
                    plankgeo::Error::InvalidInput(format!(
                        "unknown suite {suite:?}; expected bang | ball | two-plank | conway | akopyan-karasev | corollary-width"
                    ))
                })?;
            let k: Option<ConvexBody> = body.map(|p| read_json(&p)).transpose()?;
            let c: Option<ConvexBody> = gauge.map(|p| read_json(&p)).transpose()?;
            // Explicit bodies + conway: run the single-instance theorem
            // verifier, whose report carries the bound and the optimal tree.
            if suite == TheoremSuite::Conway {
                if let Some(k) = &k {
                    let c = c.as_ref().unwrap_or(k);
                    let start = Instant::now();
                    let report = plankgeo::verify_conway_theorem(k, c, n, m, trials, seed, tol)?;
                    let mut value = to_value(&report);
                    if timing {
                        value["wallTimeMs"] = json!(start.elapsed().as_millis() as u64);
                    }
                    let code = if report.violation { 2 } else { 0 };
                    emit(&io, &value)?;
                    return Ok(code);
                }
            }
            let bodies = match (&k, &c) {
                (Some(k), Some(c)) => Some((k, c)),
                (Some(k), None) => Some((k, k)),
                _ => None,
            };
            let config = SuiteConfig {
                dimension,
                trials,
                master_seed: seed,
                m,
                n,
                tolerance: tol,
                generator: Default::default(),
                inner_trials,
            };
            let start = Instant::now();
            let mut report = run_suite(suite, &config, bodies)?;
            if timing {
                report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            let code = if report.violations.is_empty() { 0 } else { 2 };
            emit(&io, &to_value(&report))?;
            Ok(code)
        }
        Cmd::CoverCheck { body, planks, io } => {
            let k: ConvexBody = read_json(&body)?;
            let planks = read_planks(&planks)?;
            let family = PlankFamily::new(planks, k.clone())?;
            let verdict = covers_body(&k, &family)?;
            emit(&io, &to_value(&verdict))?;
            Ok(0)
        }
        Cmd::Probe { config, csv, io } => {
            let cfg: ProbeConfig = read_json(&config)?;
            let start = Instant::now();
            let mut report = probe(&cfg)?;
            if timing {
                report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            if let Some(path) = csv {
                fs::write(&path, report.csv()).map_err(|e| {
                    plankgeo::Error::InvalidInput(format!("{}: {e}", path.display()))
                })?;
            }
            let code = if report.violations.is_empty() { 0 } else { 2 };
            emit(&io, &to_value(&report))?;
            Ok(code)
        }
        Cmd::Plot {
            body,
            gauge,
            rho,
            cuts,
            planks,
            sites,
            out,
        } => {
            let k: ConvexBody = read_json(&body)?;
            let gauge: Option<ConvexBody> = gauge.map(|p| read_json(&p)).transpose()?;
            let erosion = match (&gauge, rho) {
                (Some(c), Some(rho)) => match erode(&k, &c.recentered()?, rho)? {
                    Reduced::Body(b) => Some(b),
                    _ => None,
                },
                _ => None,
            };
            let tree: Option<CutTree> = cuts.map(|p| read_json(&p)).transpose()?;
            let pieces = match &tree {
                Some(t) => Some(apply_cut_tree(&k, t)?),
                None => None,
            };
            let plank_list = match planks {
                Some(p) => read_planks(&p)?,
                None => Vec::new(),
            };
            let (cells, site_pts) = match sites {
                Some(s) => {
                    let pts: Vec<Vec<f64>> = s
                        .split(';')
                        .filter(|t| !t.trim().is_empty())
                        .map(parse_numbers)
                        .collect::<Result<_, _>>()?;
                    let bbox = plankgeo::geometry::width::bounding_box_of(&k)?;
                    let padded: Vec<(f64, f64)> = bbox
                        .iter()
                        .map(|&(lo, hi)| {
                            let pad = 0.5 * (hi - lo).max(0.1);
                            (lo - pad, hi + pad)
                        })
                        .collect();
                    let clip = ConvexBody::axis_box(&padded)?;
                    (Some(voronoi_partition(&pts, &clip)?), pts)
                }
                None => (None, Vec::new()),
            };
            let scene = svg::Scene {
                body: &k,
                erosion: erosion.as_ref(),
                pieces: pieces.as_ref(),
                planks: &plank_list,
                cells: cells.as_ref(),
                sites: &site_pts,
                cut_tree: tree.as_ref(),
            };
            let rendered = svg::render(&scene)?;
            fs::write(&out, rendered)
                .map_err(|e| plankgeo::Error::InvalidInput(format!("{}: {e}", out.display())))?;
            Ok(0)
        }
    }
}
