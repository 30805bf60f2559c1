//! The `tensortrack` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::Error;
use crate::graph::{self, ColoredGraph};
use crate::power::{ModelKind, ModelSpec};
use crate::{beta, census, gaussian, melonic, numerics, power};

pub const THREADS_ENV: &str = "TENSORTRACK_THREADS";

/// Fixed decimal format with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..17).contains(&e) {
        format!("{:.*}", (16 - e).max(0) as usize, x)
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Parser, Debug)]
#[command(name = "tensortrack", version, about = "Random tensor model combinatorics and one-loop renormalization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count connected invariants of rank D on N pairs
    Enumerate {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        pairs: usize,
        /// Write each canonical form as DIR/<hash>.gct
        #[arg(long, value_name = "DIR")]
        emit: Option<PathBuf>,
        /// Largest permutation-tuple space to search
        #[arg(long, value_name = "BOUND", default_value_t = census::DEFAULT_MAX_SPACE)]
        max_space: u128,
    },
    /// Per-jacket genera and the degree of a closed graph
    Degree {
        #[arg(long, value_name = "FILE.gct")]
        input: PathBuf,
    },
    /// Melonic test with the dipole-removal trace
    Melonic {
        #[arg(long, value_name = "FILE.gct")]
        input: PathBuf,
    },
    /// Number of melonic graphs of rank K on P pairs
    Melons {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        pairs: usize,
        #[arg(long, value_name = "BOUND", default_value_t = census::DEFAULT_MAX_SPACE)]
        max_space: u128,
    },
    /// Table of divergent diagram classes
    Powercount {
        #[arg(long)]
        model: ModelKind,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// One-loop coefficients a, b and beta2
    Beta {
        #[arg(long)]
        model: ModelKind,
    },
    /// One-loop running coupling g(t), t = ln N
    Flow {
        #[arg(long)]
        model: ModelKind,
        #[arg(long)]
        g0: f64,
        #[arg(long)]
        tmax: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Lattice sum S(N) on a grid and its slope against ln N
    Divsum {
        #[arg(long, default_value_t = numerics::DEFAULT_MASS2)]
        mass_squared: f64,
        #[arg(long, value_delimiter = ',', default_values_t = numerics::DEFAULT_GRID)]
        grid: Vec<u64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Exact Gaussian moment of a bubble, optionally with Monte Carlo
    Moment {
        #[arg(long, value_name = "BUBBLE.gct")]
        input: PathBuf,
        #[arg(long)]
        n_dim: u64,
        /// Monte Carlo sample count
        #[arg(long, value_name = "SAMPLES")]
        mc: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Graphviz rendering of a graph
    ExportDot {
        #[arg(long, value_name = "FILE.gct")]
        input: PathBuf,
        /// Relabel to the canonical form first
        #[arg(long)]
        canonical: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

impl std::str::FromStr for ModelSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(ModelSpec::new(s.parse()?))
    }
}

impl clap::ValueEnum for ModelKind {
    fn value_variants<'a>() -> &'a [Self] {
        &[ModelKind::Vector, ModelKind::Matrix, ModelKind::Tensor]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            ModelKind::Vector => "vector",
            ModelKind::Matrix => "matrix",
            ModelKind::Tensor => "tensor",
        }))
    }
}

enum Failure {
    Input(String),
    Compute(String),
    Write(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Compute(_) | Failure::Write(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. }
            | Error::Inconsistent(_)
            | Error::Overflow(_)
            | Error::PoleCrossing { .. }
            | Error::DegenerateFit(_) => Failure::Compute(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Ctx {
    argv: Vec<String>,
    subcommand: &'static str,
    started: Instant,
    out: String,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    /// Write a data file and its `.manifest` sidecar.
    fn data_file(&self, path: &Path, contents: &str, params: serde_json::Value, seed: Option<u64>) -> Result<(), Failure> {
        std::fs::write(path, contents).map_err(|e| Failure::Write(format!("cannot write {}: {e}", path.display())))?;
        let manifest = json!({
            "subcommand": self.subcommand,
            "argv": self.argv,
            "parameters": params,
            "seed": seed,
            "version": env!("CARGO_PKG_VERSION"),
            "wall_time_seconds": self.started.elapsed().as_secs_f64(),
        });
        let mut sidecar = path.as_os_str().to_owned();
        sidecar.push(".manifest");
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        std::fs::write(&sidecar, text)
            .map_err(|e| Failure::Write(format!("cannot write {}: {e}", Path::new(&sidecar).display())))
    }

    /// CSV to `out` (with manifest) or to stdout.
    fn emit(&mut self, out: &Option<PathBuf>, csv: &str, params: serde_json::Value, seed: Option<u64>) -> Result<(), Failure> {
        match out {
            Some(p) => self.data_file(p, csv, params, seed),
            None => {
                self.out.push_str(csv);
                Ok(())
            }
        }
    }
}

fn read_graph(path: &Path) -> Result<ColoredGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    graph::parse_gct(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        // fails only if the pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            eprintln!("tensortrack: usage error: {first}");
            return 2;
        }
    };
    configure_threads();
    let mut ctx = Ctx {
        argv: args.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
        subcommand: "",
        started: Instant::now(),
        out: String::new(),
    };
    let result = dispatch(cli.command, &mut ctx);
    print!("{}", ctx.out);
    match result {
        Ok(()) => 0,
        Err(f) => {
            let (kind, msg) = match &f {
                Failure::Input(m) => ("input error", m),
                Failure::Compute(m) => ("error", m),
                Failure::Write(m) => ("write error", m),
            };
            eprintln!("tensortrack: {kind}: {msg}");
            f.code()
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<(), Failure> {
    match cmd {
        Command::Enumerate { rank, pairs, emit, max_space } => {
            ctx.subcommand = "enumerate";
            if let Some(dir) = emit {
                let forms = census::enumerate_invariants(rank, pairs, max_space)?;
                std::fs::create_dir_all(&dir)
                    .map_err(|e| Failure::Write(format!("cannot create {}: {e}", dir.display())))?;
                for f in &forms {
                    let path = dir.join(format!("{}.gct", f.content_hash()));
                    let params = json!({ "rank": rank, "pairs": pairs, "max_space": max_space.to_string() });
                    ctx.data_file(&path, &graph::to_gct(&f.to_graph()), params, None)?;
                }
                ctx.line(format!("Z_{rank}({pairs}) = {}", forms.len()));
            } else {
                let z = census::count(rank, pairs, max_space)?;
                ctx.line(format!("Z_{rank}({pairs}) = {z}"));
            }
        }
        Command::Degree { input } => {
            ctx.subcommand = "degree";
            let g = read_graph(&input)?;
            let r = melonic::degree(&g)?;
            for (j, genus) in &r.genera {
                let order: Vec<String> = j.order().iter().map(|c| c.to_string()).collect();
                ctx.line(format!("jacket {} genus {genus}", order.join("-")));
            }
            ctx.line(format!("omega = {}", r.degree));
        }
        Command::Melonic { input } => {
            ctx.subcommand = "melonic";
            let g = read_graph(&input)?;
            if !g.is_connected() {
                return Err(Error::Disconnected.into());
            }
            let r = melonic::melonic_reduction(&g);
            ctx.line(format!("melonic: {}", if r.melonic { "yes" } else { "no" }));
            for (i, s) in r.trace.iter().enumerate() {
                ctx.line(format!(
                    "step {}: remove white {} black {} (open color {})",
                    i + 1,
                    s.white,
                    s.black,
                    s.open_color
                ));
            }
            if !r.melonic {
                ctx.line(format!("stuck with {} pairs and no dipole", r.residual_pairs));
            }
        }
        Command::Melons { rank, pairs, max_space } => {
            ctx.subcommand = "melons";
            let c = melonic::melon_census(rank, pairs, max_space)?;
            ctx.line(format!("melons(k={rank}, p={pairs}) = {c}"));
        }
        Command::Powercount { model, max_vertices, out } => {
            ctx.subcommand = "powercount";
            let spec = ModelSpec::new(model);
            let scan = power::scan_divergent(&spec, max_vertices)?;
            let mut csv = String::from(
                "class,vertices,n_points,internal_lines,closed_strands,delta,divergence,multiplicity,closure_min_degree,closure_melonic\n",
            );
            for c in &scan.classes {
                let opt = |x: Option<String>| x.unwrap_or_else(|| "NA".into());
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{},{}",
                    c.hash,
                    c.vertices,
                    c.n_points,
                    c.internal_lines,
                    c.closed_strands,
                    c.report.degree,
                    c.report.class,
                    c.multiplicity,
                    opt(c.closure.min_degree.map(|d| d.to_string())),
                    opt(c.closure.melonic.map(|m| m.to_string())),
                );
            }
            ctx.emit(&out, &csv, json!({ "model": model.to_string(), "max_vertices": max_vertices }), None)?;
            if out.is_some() {
                ctx.line(format!("{} divergent classes for the {model} model up to {max_vertices} vertices", scan.classes.len()));
            }
        }
        Command::Beta { model } => {
            ctx.subcommand = "beta";
            let c = beta::one_loop_coefficients(&ModelSpec::new(model))?;
            ctx.line(c.to_string());
        }
        Command::Flow { model, g0, tmax, steps, out } => {
            ctx.subcommand = "flow";
            let c = beta::one_loop_coefficients(&ModelSpec::new(model))?;
            let traj = beta::integrate_flow(g0, c.beta2(), tmax, steps)?;
            let mut csv = String::from("t,g\n");
            for (t, g) in &traj.points {
                let _ = writeln!(csv, "{},{}", fmt_f64(*t), fmt_f64(*g));
            }
            let params = json!({ "model": model.to_string(), "g0": g0, "tmax": tmax, "steps": steps, "beta2": c.beta2() });
            ctx.emit(&out, &csv, params, None)?;
        }
        Command::Divsum { mass_squared, grid, out } => {
            ctx.subcommand = "divsum";
            let fit = numerics::log_sum_fit(&grid, mass_squared)?;
            let mut csv = String::from("N,S\n");
            for (n, s) in &fit.samples {
                let _ = writeln!(csv, "{n},{}", fmt_f64(*s));
            }
            ctx.emit(&out, &csv, json!({ "mass_squared": mass_squared, "grid": grid }), None)?;
            let dev = (fit.slope - beta::TWO_PI_SQUARED) / beta::TWO_PI_SQUARED;
            ctx.line(format!(
                "slope = {} (2*pi^2 = {}, relative deviation = {})",
                fmt_f64(fit.slope),
                fmt_f64(beta::TWO_PI_SQUARED),
                fmt_f64(dev)
            ));
        }
        Command::Moment { input, n_dim, mc, seed } => {
            ctx.subcommand = "moment";
            let g = read_graph(&input)?;
            let r = match mc {
                Some(samples) => gaussian::mc_moment(&g, n_dim, samples, seed)?,
                None => gaussian::exact_moment(&g, n_dim)?,
            };
            ctx.line("covariance: unit, E[phi phibar] = 1 per index tuple");
            ctx.line(format!("polynomial: {}", r.polynomial));
            match r.exact {
                Some(v) => ctx.line(format!("value at N={n_dim}: {v}")),
                None => ctx.line(format!("value at N={n_dim}: {}", fmt_f64(r.value))),
            }
            if let Some(m) = r.mc {
                ctx.line(format!(
                    "mc: {} +- {} ({} samples, seed {}, {})",
                    fmt_f64(m.mean),
                    fmt_f64(m.std_error),
                    m.samples,
                    m.seed,
                    m.rng
                ));
            }
        }
        Command::ExportDot { input, canonical, out } => {
            ctx.subcommand = "export-dot";
            let mut g = read_graph(&input)?;
            if canonical {
                g = g.canonical_form().to_graph();
            }
            let dot = graph::export_dot(&g);
            let params = json!({ "input": input.display().to_string(), "canonical": canonical });
            ctx.emit(&out, &dot, params, None)?;
        }
    }
    Ok(())
}
