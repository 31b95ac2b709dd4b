//! The `cliqueband` command line.
//!
//! Exit codes: 0 on success, 1 when a check fails (spread outside the
//! bracket, shape mismatch, search budget exhausted), 2 for malformed
//! arguments or input files. Data goes to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use cliqueband::oracle::DEFAULT_BUDGET;
use cliqueband::{
    align_max_edges_to_dim1, bounds, construct, exact_min_spread, exact_min_spread_unrestricted,
    harper_numbering, io, Arrangement, BoundsReport, Error, Shape,
};
use serde_json::json;

/// Shapes up to this volume get a construction attached to `bounds` output.
const BOUNDS_CONSTRUCTION_VOLUME: usize = 1 << 20;

#[derive(Parser, Debug)]
#[command(
    name = "cliqueband",
    version,
    about = "Bandwidth of products of cliques"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower and upper bandwidth bounds for a shape.
    Bounds {
        #[arg(required = true, value_name = "N")]
        dims: Vec<usize>,
        /// Use the d-dimensional formulas even when d = 2.
        #[arg(long)]
        general_bounds: bool,
    },
    /// Build an arrangement meeting the upper bound.
    Construct {
        #[arg(required = true, value_name = "N")]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the arrangement here instead of printing it.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Spread of a stored arrangement.
    Spread {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Defaults to csv for *.csv files, json otherwise.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check a stored arrangement against the bounds for its shape.
    Verify {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Expected shape.
        #[arg(long, num_args = 1.., value_name = "N")]
        shape: Option<Vec<usize>>,
    },
    /// Exact minimum spread by exhaustive search (small shapes only).
    Exact {
        #[arg(required = true, value_name = "N")]
        dims: Vec<usize>,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Search all bijections rather than monotonic ones (at most 9 cells).
        #[arg(long)]
        unrestricted: bool,
    },
    /// Optimal numbering of the d-cube as a list of bit strings.
    Hypercube {
        #[arg(value_name = "D")]
        d: u32,
        /// Permute coordinates so every widest edge runs along the first.
        #[arg(long)]
        aligned: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConstructionInvariant(_)
            | Error::BudgetExceeded { .. }
            | Error::ShapeMismatch(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Bounds {
            dims,
            general_bounds,
        } => cmd_bounds(&dims, general_bounds, out, err),
        Command::Construct {
            dims,
            format,
            out: path,
        } => cmd_construct(&dims, format, path.as_deref(), out, err),
        Command::Spread { input, format } => cmd_spread(&input, format, out),
        Command::Verify {
            input,
            format,
            shape,
        } => cmd_verify(&input, format, shape.as_deref(), out, err),
        Command::Exact {
            dims,
            budget,
            unrestricted,
        } => cmd_exact(&dims, budget, unrestricted, out, err),
        Command::Hypercube { d, aligned } => cmd_hypercube(d, aligned, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    writeln!(out, "{text}").map_err(|e| Failure::input(format!("cannot write output: {e}")))
}

fn parse_shape(dims: &[usize], err: &mut dyn Write) -> Result<Shape, Failure> {
    let shape = Shape::new(dims)?;
    let mut given: Vec<usize> = dims.iter().copied().filter(|&n| n != 1).collect();
    if given.windows(2).any(|w| w[0] > w[1]) {
        given.sort_unstable();
        let _ = writeln!(err, "warning: dimensions reordered to {shape}");
    }
    if given.len() != dims.len() {
        let _ = writeln!(
            err,
            "warning: dimensions equal to 1 dropped, shape is {shape}"
        );
    }
    Ok(shape)
}

/// Bounds used by `verify`; a single clique has spread exactly `n - 1`.
fn bracket(shape: &Shape) -> Result<(u64, u64), Failure> {
    if shape.ndim() == 1 {
        let n = bounds::clique_bandwidth(shape.dims()[0]);
        return Ok((n, n));
    }
    Ok((bounds::lower_bound(shape)?, bounds::upper_bound(shape)?))
}

fn cmd_bounds(
    dims: &[usize],
    general: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let shape = parse_shape(dims, err)?;
    let mut report = if general {
        BoundsReport::general(&shape)?
    } else {
        BoundsReport::new(&shape)?
    };
    if shape.volume() <= BOUNDS_CONSTRUCTION_VOLUME {
        match construct(&shape) {
            Ok(c) => report = report.with_construction_spread(c.measured_spread),
            Err(e) => {
                let _ = writeln!(err, "warning: no construction: {e}");
            }
        }
    }
    emit(
        out,
        &serde_json::to_string(&report).expect("report serializes"),
    )
}

fn cmd_construct(
    dims: &[usize],
    format: Format,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let shape = parse_shape(dims, err)?;
    let result = construct(&shape)?;
    let envelope = serde_json::to_string(&result).expect("construction serializes");
    match (path, format) {
        (Some(path), format) => {
            let text = render(&result.arrangement, format)?;
            fs::write(path, text + "\n")
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            emit(out, &envelope)
        }
        (None, Format::Json) => emit(out, &envelope),
        (None, Format::Csv) => {
            emit(out, &render(&result.arrangement, Format::Csv)?)?;
            let _ = writeln!(err, "spread {}", result.measured_spread);
            Ok(())
        }
    }
}

fn render(a: &Arrangement, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(io::to_json(a)),
        Format::Csv => Ok(io::to_csv(a)?),
    }
}

/// Reads an arrangement file. JSON may also be a whole `construct` envelope.
fn load(path: &Path, format: Option<Format>) -> Result<Arrangement, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
        _ => Format::Json,
    });
    let parsed = match format {
        Format::Csv => io::from_csv(&text),
        Format::Json => {
            let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
            let inner = value.get("arrangement").cloned().unwrap_or(value);
            serde_json::from_value(inner).map_err(Error::from)
        }
    };
    parsed.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn cmd_spread(path: &Path, format: Option<Format>, out: &mut dyn Write) -> CmdResult {
    let a = load(path, format)?;
    let report = json!({
        "shape": a.shape(),
        "spread": a.spread(),
        "monotonic": a.is_monotonic(),
    });
    emit(out, &report.to_string())
}

fn cmd_verify(
    path: &Path,
    format: Option<Format>,
    expected: Option<&[usize]>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let a = load(path, format)?;
    if let Some(dims) = expected {
        let shape = parse_shape(dims, err)?;
        if &shape != a.shape() {
            return Err(Failure::check(format!(
                "file holds a {} arrangement, expected {shape}",
                a.shape()
            )));
        }
    }
    let (lower, upper) = bracket(a.shape())?;
    let spread = a.spread() as u64;
    let ok = lower <= spread && spread <= upper;
    let report = json!({
        "shape": a.shape(),
        "spread": spread,
        "lower": lower,
        "upper": upper,
        "monotonic": a.is_monotonic(),
        "ok": ok,
    });
    emit(out, &report.to_string())?;
    if ok {
        Ok(())
    } else {
        Err(Failure::check(format!(
            "spread {spread} is outside [{lower}, {upper}]"
        )))
    }
}

fn cmd_exact(
    dims: &[usize],
    budget: u64,
    unrestricted: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let shape = parse_shape(dims, err)?;
    let result = if unrestricted {
        exact_min_spread_unrestricted(&shape, budget)
    } else {
        exact_min_spread(&shape, budget)
    };
    match result {
        Ok(r) => emit(out, &serde_json::to_string(&r).expect("result serializes")),
        Err(Error::BudgetExceeded { budget, best }) => {
            let report = json!({
                "shape": shape,
                "budget_exceeded": budget,
                "best_spread": best.as_ref().map(|a| a.spread()),
                "best": best,
            });
            emit(out, &report.to_string())?;
            Err(Failure::check(format!(
                "search budget of {budget} nodes exhausted before proving optimality"
            )))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_hypercube(d: u32, aligned: bool, out: &mut dyn Write) -> CmdResult {
    let mut numbering = harper_numbering(d)?;
    if aligned {
        numbering = align_max_edges_to_dim1(&numbering)?;
    }
    emit(
        out,
        &serde_json::to_string(&numbering.bit_strings()).expect("strings serialize"),
    )
}
