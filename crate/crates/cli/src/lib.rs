//! Command-line front end: argument parsing, command dispatch and the exit
//! code contract (0 pass, 1 identity failure, 2 invalid input, 3 size cap).

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use tqft_core::error::Error;
use tqft_core::euler::{boundary_torsor, euler_closed, relative_euler};
use tqft_core::gauge::DEFAULT_NODE_CAP;
use tqft_core::io::{
    coloring_json, load_bundle, load_group, load_manifold, parse_cocycle_arg, result_json, value_json, OutputMode,
};
use tqft_core::pathintegral::{hilbert_space, partition_report};
use tqft_core::phase::fmt_rational;
use tqft_core::verify::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;

pub const MAX_NODES_ENV: &str = "TQFT_MAX_NODES";

#[derive(Parser, Debug)]
#[command(
    name = "tqft",
    version,
    about = "Exact finite-group gauge theory in three dimensions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Which renderings of numeric results to emit.
    #[arg(long, value_enum, global = true, default_value_t = Output::Both)]
    pub output: Output,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Search-node cap; overrides TQFT_MAX_NODES.
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,

    /// Add wall-clock timing to the output (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partition function of a closed 3-manifold.
    Z {
        /// Preset name or triangulation file.
        #[arg(long)]
        manifold: String,
        /// Preset name or group file.
        #[arg(long)]
        group: String,
        /// `trivial`, `cyclic:n:p` or a cocycle file.
        #[arg(long, default_value = "trivial")]
        cocycle: String,
    },
    /// Hilbert space of a closed oriented surface.
    Hilbert {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
    },
    /// Run a verification suite.
    Verify {
        /// gluing, coboundary, triangulation, verlinde, euler or all.
        suite: String,
    },
    /// Absolute or relative Euler number of a line bundle file.
    Euler { bundle: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Exact,
    Approx,
    Both,
}

impl From<Output> for OutputMode {
    fn from(o: Output) -> Self {
        match o {
            Output::Exact => OutputMode::Exact,
            Output::Approx => OutputMode::Approx,
            Output::Both => OutputMode::Both,
        }
    }
}

/// A failed run: the stage it failed in and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub stage: &'static str,
    pub error: Error,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        if self.error.is_size_limit() {
            EXIT_SIZE_LIMIT
        } else {
            EXIT_INVALID
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.stage, self.error)
    }
}

pub struct Outcome {
    pub json: Value,
    pub code: i32,
}

fn at<T, E: Into<Error>>(stage: &'static str, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure { stage, error: e.into() })
}

/// The flag, else the environment, else the library default.
pub fn node_cap(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(c) = flag {
        return positive(c);
    }
    match std::env::var(MAX_NODES_ENV) {
        Ok(s) => {
            let c = s.trim().parse::<u64>().map_err(|_| Failure {
                stage: "read TQFT_MAX_NODES",
                error: tqft_core::error::ParseError::Format(format!("not a positive integer: {s:?}")).into(),
            })?;
            positive(c)
        }
        Err(_) => Ok(DEFAULT_NODE_CAP),
    }
}

fn positive(c: u64) -> Result<u64, Failure> {
    if c == 0 {
        return Err(Failure {
            stage: "read node cap",
            error: tqft_core::error::ParseError::Format("node cap must be positive".into()).into(),
        });
    }
    Ok(c)
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let cap = node_cap(cli.max_nodes)?;
    let mode: OutputMode = cli.output.into();
    let (mut json, code) = match &cli.command {
        Command::Z {
            manifold,
            group,
            cocycle,
        } => (cmd_z(manifold, group, cocycle, mode, cap)?, EXIT_OK),
        Command::Hilbert { genus, group, cocycle } => (cmd_hilbert(*genus, group, cocycle, cap)?, EXIT_OK),
        Command::Verify { suite } => {
            let r = at("run suite", run_suite(suite, cli.seed, cap))?;
            let code = if r.passed() { EXIT_OK } else { EXIT_IDENTITY_FAILED };
            (r.to_json(), code)
        }
        Command::Euler { bundle } => (cmd_euler(bundle)?, EXIT_OK),
    };
    if cli.timing {
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        match json.get_mut("meta").and_then(Value::as_object_mut) {
            Some(meta) => {
                meta.insert("timing_ms".into(), json!(ms));
            }
            None => {
                json["timing_ms"] = json!(ms);
            }
        }
    }
    Ok(Outcome { json, code })
}

fn cmd_z(manifold: &str, group: &str, cocycle: &str, mode: OutputMode, cap: u64) -> Result<Value, Failure> {
    let x = at("load manifold", load_manifold(manifold))?;
    at("check manifold", x.check_manifold())?;
    let g = at("load group", load_group(group))?;
    let w = at("load cocycle", parse_cocycle_arg(cocycle, &g))?;
    let r = at("state sum", partition_report(&x, &g, &w, cap))?;
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            json!({
                "representative": coloring_json(&c.representative),
                "aut": c.aut as u64,
                "orbit_size": c.orbit_size as u64,
                "phase": c.phase.to_string(),
            })
        })
        .collect();
    let mut meta = Map::new();
    meta.insert("manifold".into(), x.label().into());
    meta.insert("group".into(), g.label().into());
    meta.insert("cocycle".into(), cocycle.into());
    meta.insert("vertices".into(), r.num_vertices.into());
    meta.insert("flat_colorings".into(), r.num_colorings.into());
    meta.insert("classes".into(), classes.into());
    meta.insert("groupoid_sum".into(), Value::Object(value_json(&r.z_groupoid, mode)));
    meta.insert("conventions_agree".into(), (r.z == r.z_groupoid).into());
    Ok(result_json(&r.z, mode, meta))
}

fn cmd_hilbert(genus: usize, group: &str, cocycle: &str, cap: u64) -> Result<Value, Failure> {
    let g = at("load group", load_group(group))?;
    let w = at("load cocycle", parse_cocycle_arg(cocycle, &g))?;
    let e = at("hilbert space", hilbert_space(genus, &g, &w, cap))?;
    let sectors: Vec<Value> = e
        .sectors
        .iter()
        .map(|s| json!({"label": s.label, "weight": fmt_rational(&s.weight), "survives": s.survives}))
        .collect();
    Ok(json!({
        "genus": genus,
        "group": g.label(),
        "cocycle": cocycle,
        "dim": e.dim(),
        "sectors": sectors,
    }))
}

fn cmd_euler(path: &std::path::Path) -> Result<Value, Failure> {
    let l = at("load bundle", load_bundle(path))?;
    if l.base().is_closed() {
        let e = at("euler number", euler_closed(&l))?;
        return Ok(json!({"kind": "closed", "euler": e}));
    }
    let t = at("boundary torsor", boundary_torsor(&l))?;
    let e = at("relative euler number", relative_euler(&l))?;
    let reference: Vec<String> = t.reference().lifts.iter().map(fmt_rational).collect();
    let holonomies: Vec<String> = t.holonomies.iter().map(|h| h.to_string()).collect();
    Ok(json!({
        "kind": "relative",
        "offset": e.offset,
        "reference_lifts": reference,
        "circle_holonomies": holonomies,
    }))
}
