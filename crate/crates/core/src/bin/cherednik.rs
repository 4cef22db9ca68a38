//! Command-line frontend: polynomial computation, verification suites, limit
//! tables and hull membership, with machine-readable output.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 argument/parse
//! error, 3 domain error.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use cherednik::hopoly::HoBuilder;
use cherednik::jack::nonsym_jack;
use cherednik::limits::{convergence_table, grid_points, rows_to_csv, LimitRow, LimitSchedule};
use cherednik::rational::{format_rat, parse_rat, rat, rat_to_f64, Rat};
use cherednik::rootsys::{Family, Multiplicity, Point, RootSystem, Weight};
use cherednik::spectra::in_convex_hull_of_orbit;
use cherednik::verify::{run_suite, Suite, SuiteParams};
use cherednik::Error;

#[derive(Parser)]
#[command(
    name = "cherednik",
    about = "Exact Heckman-Opdam and Jack polynomials, verification suites, and limit tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one polynomial and print it as canonical JSON.
    Poly(PolyArgs),
    /// Run a named verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Print a CSV convergence table for the large-multiplicity limit.
    Limit(LimitArgs),
    /// Test membership of a rational point in the orbit hull of rho.
    Hull(HullArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// Root-system family: A, B or BC.
    #[arg(long)]
    family: String,
    /// Coordinate rank n (family A is A_{n-1} inside R^n).
    #[arg(long)]
    rank: usize,
    /// Multiplicities as comma-separated rationals: k3 for A, "k1,k3" for B,
    /// "k1,k2,k3" for BC ("k1,k2" accepted at rank 1).
    #[arg(long, allow_hyphen_values = true)]
    kappa: String,
    /// Weight (integer coordinates, comma separated).
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    /// Build the Jack polynomial of the composition instead (family A only).
    #[arg(long)]
    jack: bool,
    /// Output file (stdout when absent).
    #[arg(long)]
    output: Option<String>,
    /// Output format; only "json" applies here.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: eigen, hecke, triangular, recurrence, bcjack, hull.
    #[arg(long)]
    suite: String,
    /// Restrict the box to one rank.
    #[arg(long)]
    rank: Option<usize>,
    /// Restrict the Jack parameter set (bcjack suite).
    #[arg(long)]
    kappa3: Option<String>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct LimitArgs {
    /// BC or B (B forces k2 = 0 schedules).
    #[arg(long, default_value = "BC")]
    family: String,
    #[arg(long)]
    rank: usize,
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    /// Fixed middle multiplicity k3.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    kappa3: String,
    /// "default" (k2 = 0, k1 = 10,100,1000), "sqrt", or explicit
    /// "k1,k2;k1,k2;...".
    #[arg(long, default_value = "default")]
    schedule: String,
    /// Grid half-width (rational, at most 20).
    #[arg(long, default_value = "2")]
    grid_max: String,
    /// Grid step (rational).
    #[arg(long, default_value = "1/2")]
    grid_step: String,
    #[arg(long)]
    output: Option<String>,
    /// csv (default) or json.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct HullArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: usize,
    #[arg(long, allow_hyphen_values = true)]
    kappa: String,
    /// Rational coordinates of the point, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long)]
    output: Option<String>,
    #[arg(long, default_value = "json")]
    format: String,
}

enum AppError {
    /// Bad arguments or malformed values: exit 2.
    Parse(String),
    /// Structurally valid input outside the supported domain: exit 3.
    Domain(String),
    /// A verification suite ran and failed: exit 1.
    SuiteFailed,
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => AppError::Parse(m),
            other => AppError::Domain(other.to_string()),
        }
    }
}

type AppResult<T> = std::result::Result<T, AppError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poly(args) => cmd_poly(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Limit(args) => cmd_limit(args),
        Command::Hull(args) => cmd_hull(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(AppError::SuiteFailed) => ExitCode::from(1),
    }
}

fn parse_family(s: &str) -> AppResult<Family> {
    match s.to_ascii_uppercase().as_str() {
        "A" => Ok(Family::A),
        "B" => Ok(Family::B),
        "BC" => Ok(Family::BC),
        other => Err(AppError::Parse(format!("unknown family '{other}'"))),
    }
}

fn parse_rationals(s: &str) -> AppResult<Vec<Rat>> {
    s.split(',')
        .map(|part| parse_rat(part).map_err(AppError::from))
        .collect()
}

fn parse_weight(s: &str, dim: usize) -> AppResult<Weight> {
    let coords: std::result::Result<Vec<i64>, _> =
        s.split(',').map(|p| p.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|_| AppError::Parse(format!("invalid weight '{s}'")))?;
    if coords.len() != dim {
        return Err(AppError::Parse(format!(
            "weight has {} coordinates, expected {dim}",
            coords.len()
        )));
    }
    Ok(Weight(coords))
}

fn parse_kappa(family: Family, rank: usize, s: &str) -> AppResult<Multiplicity> {
    let values = parse_rationals(s)?;
    match (family, values.len()) {
        (Family::A, 1) => Ok(Multiplicity::a(values[0].clone())),
        (Family::B, 2) => Ok(Multiplicity::b(values[0].clone(), values[1].clone())),
        (Family::BC, 3) => Ok(Multiplicity::bc(
            values[0].clone(),
            values[1].clone(),
            values[2].clone(),
        )),
        (Family::BC, 2) if rank == 1 => Ok(Multiplicity::bc(
            values[0].clone(),
            values[1].clone(),
            rat(0),
        )),
        (f, n) => Err(AppError::Parse(format!(
            "family {f} wants {} multiplicities, got {n}",
            match f {
                Family::A => "1",
                Family::B => "2",
                Family::BC => "3 (2 at rank 1)",
            }
        ))),
    }
}

fn emit(output: &Option<String>, text: &str) -> AppResult<()> {
    match output {
        None => {
            print!("{text}");
            std::io::stdout()
                .flush()
                .map_err(|e| AppError::Domain(e.to_string()))
        }
        Some(path) => std::fs::write(path, text).map_err(|e| AppError::Domain(e.to_string())),
    }
}

fn require_format(actual: &str, allowed: &[&str]) -> AppResult<()> {
    if allowed.contains(&actual) {
        Ok(())
    } else {
        Err(AppError::Parse(format!(
            "unsupported format '{actual}' (allowed: {})",
            allowed.join(", ")
        )))
    }
}

fn cmd_poly(args: PolyArgs) -> AppResult<()> {
    require_format(&args.format, &["json"])?;
    let family = parse_family(&args.family)?;
    if args.jack {
        if family != Family::A {
            return Err(AppError::Domain(
                "Jack polynomials are the family A objects".into(),
            ));
        }
        let weight = parse_weight(&args.weight, args.rank)?;
        let kappa = parse_rationals(&args.kappa)?;
        if kappa.len() != 1 {
            return Err(AppError::Parse("Jack wants a single multiplicity".into()));
        }
        let jack = nonsym_jack(&weight.0, &kappa[0])?;
        let text =
            serde_json::to_string(&jack.to_json()).map_err(|e| AppError::Domain(e.to_string()))?;
        return emit(&args.output, &format!("{text}\n"));
    }
    let sys = RootSystem::new(family, args.rank)?;
    let kappa = parse_kappa(family, args.rank, &args.kappa)?;
    let weight = parse_weight(&args.weight, sys.dim())?;
    let mut builder = HoBuilder::new(&sys, kappa)?;
    let e = builder.nonsym_e(&weight)?;
    let text = serde_json::to_string(&e.to_json()).map_err(|e| AppError::Domain(e.to_string()))?;
    emit(&args.output, &format!("{text}\n"))
}

fn cmd_verify(args: VerifyArgs) -> AppResult<()> {
    require_format(&args.format, &["json"])?;
    let suite = Suite::from_str(&args.suite)?;
    let kappa3 = match &args.kappa3 {
        None => None,
        Some(s) => Some(parse_rat(s)?),
    };
    let params = SuiteParams {
        rank: args.rank,
        kappa3,
    };
    let report = run_suite(suite, &params)?;
    let text = serde_json::to_string(&report).map_err(|e| AppError::Domain(e.to_string()))?;
    emit(&args.output, &format!("{text}\n"))?;
    if report.passed() {
        Ok(())
    } else {
        Err(AppError::SuiteFailed)
    }
}

fn parse_schedule(s: &str) -> AppResult<LimitSchedule> {
    Ok(LimitSchedule::parse(s)?)
}

fn cmd_limit(args: LimitArgs) -> AppResult<()> {
    require_format(&args.format, &["csv", "json"])?;
    let family = parse_family(&args.family)?;
    if family == Family::A {
        return Err(AppError::Domain(
            "the limit degenerates type BC (or B); family A is the target side".into(),
        ));
    }
    let schedule = parse_schedule(&args.schedule)?;
    if family == Family::B && schedule.points.iter().any(|(_, k2)| *k2 != rat(0)) {
        return Err(AppError::Domain(
            "family B runs with k2 = 0 schedules".into(),
        ));
    }
    // The degeneration lives over the BC chamber geometry either way.
    let sys = RootSystem::new(Family::BC, args.rank)?;
    let weight = parse_weight(&args.weight, sys.dim())?;
    let k3 = parse_rat(&args.kappa3)?;
    let grid = grid_points(
        sys.dim(),
        &parse_rat(&args.grid_max)?,
        &parse_rat(&args.grid_step)?,
    )?;
    let rows = convergence_table(&sys, &weight, &k3, &schedule, &grid)?;
    let text = match args.format.as_str() {
        "csv" => rows_to_csv(&rows),
        _ => {
            #[derive(serde::Serialize)]
            struct RowJson {
                k1: f64,
                k2: f64,
                sup_error_poly: f64,
                sup_error_kernel: f64,
            }
            let rows: Vec<RowJson> = rows
                .iter()
                .map(|r: &LimitRow| RowJson {
                    k1: rat_to_f64(&r.k1),
                    k2: rat_to_f64(&r.k2),
                    sup_error_poly: r.sup_error_poly,
                    sup_error_kernel: r.sup_error_kernel,
                })
                .collect();
            let mut s =
                serde_json::to_string(&rows).map_err(|e| AppError::Domain(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    emit(&args.output, &text)
}

fn cmd_hull(args: HullArgs) -> AppResult<()> {
    require_format(&args.format, &["json"])?;
    let family = parse_family(&args.family)?;
    let sys = RootSystem::new(family, args.rank)?;
    let kappa = parse_kappa(family, args.rank, &args.kappa)?;
    let coords = parse_rationals(&args.point)?;
    if coords.len() != sys.dim() {
        return Err(AppError::Parse(format!(
            "point has {} coordinates, expected {}",
            coords.len(),
            sys.dim()
        )));
    }
    let point = Point(coords);
    let inside = in_convex_hull_of_orbit(&sys, &kappa, &point)?;
    #[derive(serde::Serialize)]
    struct HullJson {
        family: String,
        rank: usize,
        kappa: Vec<String>,
        point: Vec<String>,
        in_hull: bool,
    }
    let payload = HullJson {
        family: family.to_string(),
        rank: args.rank,
        kappa: kappa.values().iter().map(format_rat).collect(),
        point: point.0.iter().map(format_rat).collect(),
        in_hull: inside,
    };
    let text = serde_json::to_string(&payload).map_err(|e| AppError::Domain(e.to_string()))?;
    emit(&args.output, &format!("{text}\n"))
}
