use std::fmt::Display;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use angulation::angulator::{self, AngulatorError};
use angulation::formulas::{self, FormulaError, InfeasibleReason};
use angulation::geom::{self, PointSet, Position};
use angulation::oracle::{self, SearchOptions};
use angulation::plane_graph::{GraphDoc, PlaneGraph};
use angulation::render::{render_svg, RenderSpec};

#[derive(Parser)]
#[command(
    name = "angulation",
    version,
    about = "Edge bounds and g-angulations of plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convex hull of a point set
    Hull {
        #[command(flatten)]
        points: PointsInput,
        /// Keep points lying inside hull edges instead of rejecting them
        #[arg(long)]
        lax: bool,
    },
    /// Maximum edge count of a plane graph with the given parameters
    Bound(BoundArgs),
    /// Whether a convex hull g-angulation exists, with its counts
    Feasible(FeasibleArgs),
    /// Build a convex hull g-angulation
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        g: u64,
        /// Attach integer coordinates to the output
        #[arg(long)]
        coords: bool,
    },
    /// Classify a graph given in the interchange format
    Recognize {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Triangulate a point set in general position
    Triangulate {
        #[command(flatten)]
        points: PointsInput,
    },
    /// Exhaustive maximum-edge search on a small point set
    Oracle {
        #[command(flatten)]
        points: PointsInput,
        #[arg(long)]
        g: u64,
        /// Restrict to one exterior degree; otherwise every realized degree is reported
        #[arg(long)]
        h: Option<u64>,
        /// Incumbent search instead of descending from the bound
        #[arg(long)]
        slow: bool,
    },
    /// Draw a graph with coordinates as SVG
    Render {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 480)]
        width: u32,
        #[arg(long, default_value_t = 480)]
        height: u32,
        #[arg(long, default_value_t = 2.0)]
        stroke_width: f64,
        #[arg(long, default_value_t = 4.0)]
        vertex_radius: f64,
        /// Leave inner faces unlabeled
        #[arg(long)]
        no_labels: bool,
    },
}

/// A point set read from JSON (file or stdin) or drawn at random.
#[derive(Args)]
struct PointsInput {
    #[arg(long = "in", value_name = "FILE", conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Number of random points in general position
    #[arg(long, value_name = "N", requires = "seed")]
    random: Option<usize>,
    #[arg(long, requires = "random")]
    seed: Option<u64>,
    /// Random coordinates are drawn from [0, RANGE)
    #[arg(long, default_value_t = 1024)]
    range: i64,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    g: u64,
    #[arg(long, required_unless_present_any = ["convex", "closed"])]
    h: Option<u64>,
    /// All points on the exterior face (h = n)
    #[arg(long, conflicts_with_all = ["h", "closed"])]
    convex: bool,
    /// Exterior face of degree g
    #[arg(long, conflicts_with = "h")]
    closed: bool,
}

#[derive(Args)]
struct FeasibleArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, required_unless_present = "triangulation")]
    g: Option<u64>,
    #[arg(long, required_unless_present_any = ["convex", "closed"])]
    h: Option<u64>,
    #[arg(long, conflicts_with_all = ["h", "closed", "triangulation"])]
    convex: bool,
    #[arg(long, conflicts_with_all = ["h", "triangulation"])]
    closed: bool,
    /// Triangulation counts for n points with h on the hull
    #[arg(long, conflicts_with = "g")]
    triangulation: bool,
}

enum Failure {
    /// Bad input: exit status 2.
    Invalid(String),
    /// A checked invariant broke: exit status 1.
    Internal(String),
}

fn invalid(e: impl Display) -> Failure {
    Failure::Invalid(e.to_string())
}

impl From<AngulatorError> for Failure {
    fn from(e: AngulatorError) -> Self {
        match e {
            AngulatorError::Inconsistent(_) => Failure::Internal(e.to_string()),
            _ => invalid(e),
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output, status) = match run(cli.command) {
        Ok(out) => out,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(1);
        }
    };
    match output {
        Output::Json(v) => println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("values serialize")
        ),
        Output::Text(s) => print!("{s}"),
    }
    status
}

fn to_json(value: impl serde::Serialize) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn run(command: Command) -> Result<(Output, ExitCode), Failure> {
    let ok = |v: Value| Ok((Output::Json(v), ExitCode::SUCCESS));
    match command {
        Command::Hull { points, lax } => {
            let ps = points.load()?;
            let mode = if lax { Position::Lax } else { Position::Strict };
            ok(to_json(geom::convex_hull_with(&ps, mode).map_err(invalid)?))
        }
        Command::Bound(args) => {
            let max = if args.convex {
                formulas::convex_bound(args.n, args.g)
            } else if args.closed {
                formulas::closed_bound(args.n, args.g)
            } else {
                formulas::edge_bound(args.n, args.g, args.h.expect("clap requires h"))
            };
            ok(json!({ "max_edges": max.map_err(invalid)? }))
        }
        Command::Feasible(args) => ok(feasible(args)?),
        Command::Construct { n, h, g, coords } => {
            let mut graph = angulator::construct_combinatorial(n, h, g)?;
            if coords {
                graph = angulator::synthesize_coordinates(&graph)?;
            }
            ok(to_json(graph.to_doc()))
        }
        Command::Recognize { input } => {
            let graph = load_graph(input)?;
            ok(to_json(angulator::recognize(&graph)?))
        }
        Command::Triangulate { points } => {
            let ps = points.load()?;
            ok(to_json(angulator::triangulate_points(&ps)?.to_doc()))
        }
        Command::Oracle { points, g, h, slow } => {
            let ps = points.load()?;
            let opts = SearchOptions {
                slow,
                sequential: false,
            };
            let reports = match h {
                Some(h) => vec![oracle::enumerate_extremal_with(&ps, g, h, opts).map_err(invalid)?],
                None => oracle::certify_bound_with(&ps, g, opts).map_err(invalid)?,
            };
            let status = if reports.iter().all(|r| r.within_bound()) {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: a graph exceeds the edge bound");
                ExitCode::from(1)
            };
            let doc = match h {
                Some(_) => to_json(&reports[0]),
                None => to_json(&reports),
            };
            Ok((Output::Json(doc), status))
        }
        Command::Render {
            input,
            width,
            height,
            stroke_width,
            vertex_radius,
            no_labels,
        } => {
            let graph = load_graph(input)?;
            let spec = RenderSpec {
                width,
                height,
                stroke_width,
                vertex_radius,
                face_labels: !no_labels,
            };
            Ok((
                Output::Text(render_svg(&graph, &spec).map_err(invalid)?),
                ExitCode::SUCCESS,
            ))
        }
    }
}

fn feasible(args: FeasibleArgs) -> Result<Value, Failure> {
    let n = args.n;
    if args.triangulation {
        let (edges, inner) =
            formulas::triangulation_counts(n, args.h.expect("clap requires h")).map_err(invalid)?;
        return Ok(json!({ "edges": edges, "inner_triangles": inner }));
    }
    let g = args.g.expect("clap requires g");
    let not_divisible = || json!({ "feasible": false, "reason": InfeasibleReason::NotDivisible });
    if args.convex {
        return match formulas::convex_counts(n, g) {
            Ok(params) => Ok(json!({ "feasible": true, "params": params })),
            Err(FormulaError::NotDivisible { .. }) => Ok(not_divisible()),
            Err(e) => Err(invalid(e)),
        };
    }
    if args.closed {
        return match formulas::g_angulation_counts(n, g) {
            Ok(c) => Ok(json!({ "feasible": true, "t_prime": c.t_prime, "params": c.params })),
            Err(FormulaError::NotDivisible { .. }) => Ok(not_divisible()),
            Err(e) => Err(invalid(e)),
        };
    }
    let report = formulas::feasibility(n, g, args.h.expect("clap requires h")).map_err(invalid)?;
    Ok(to_json(report))
}

impl PointsInput {
    fn load(&self) -> Result<PointSet, Failure> {
        if let (Some(n), Some(seed)) = (self.random, self.seed) {
            // A roomy grid keeps the rejection sampler from stalling.
            if n < 3 || self.range < 4 * n as i64 || self.range > geom::COORD_LIMIT {
                return Err(Failure::Invalid(format!(
                    "--random needs at least 3 points and 4 * N <= --range <= {}",
                    geom::COORD_LIMIT
                )));
            }
            return Ok(PointSet::random_general_position(n, self.range, seed));
        }
        serde_json::from_str(&read_input(self.input.as_ref())?).map_err(invalid)
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(invalid)?;
            Ok(s)
        }
    }
}

fn load_graph(input: Option<PathBuf>) -> Result<PlaneGraph, Failure> {
    let doc: GraphDoc = serde_json::from_str(&read_input(input.as_ref())?).map_err(invalid)?;
    PlaneGraph::from_doc(&doc).map_err(invalid)
}
