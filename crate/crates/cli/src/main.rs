//! `arcfan`: polynomial families, certificates, numeric fans and sweeps.

mod angle;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arcfan_core::exactnum::{Rational, Scalar};
use arcfan_core::fangeom::{render, solve_radius, DataKind, FanSpec, Format, DEFAULT_TOL};
use arcfan_core::fanpoly::{build_even_poly, build_odd_poly, certify_nonconstructible, cos_multiple_angle, eliminate_three_fan, AngleParam};
use arcfan_core::poly::Var;
use arcfan_core::sweep::{count_instances, run_sweep, verify_nonagon_corollary, write_atomic, SweepConfig};

use angle::{parse_delta, Angle};

#[derive(Parser)]
#[command(name = "arcfan", version, about = "Radii of polygons inscribed in a circular arc: polynomials, certificates, numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a polynomial family in canonical form
    Poly {
        #[command(subcommand)]
        family: PolyCmd,
    },
    /// Decide whether the radius of a fan is constructible from its data
    Certify(FanArgs),
    /// Solve a fan numerically and render it
    Solve {
        #[command(flatten)]
        fan: FanArgs,
        /// Output file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; inferred from the file extension when absent
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Certify irreducibility of h(y,z,±w0,x) over the parameter sets
    Sweep(SweepArgs),
    /// Certificate for the regular nonagon
    Nonagon,
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Multiple-angle polynomial G_k(u) with cos(kα) = G_k(cos α)
    Gk { k: u32 },
    /// Family for k equal distances and one more; p exact or `w`
    Even {
        k: u32,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Family for k equal distances and two more (y stands for c²); p exact or `w`
    Odd {
        k: u32,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// The 3-fan sextic h(y, z, w, x)
    H {
        /// Specialize at y, z, w
        #[arg(long, num_args = 3, value_names = ["Y", "Z", "W"], allow_hyphen_values = true)]
        at: Option<Vec<String>>,
    },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("angle").required(true).args(["p", "delta"]))]
#[command(group = clap::ArgGroup::new("data").required(true).args(["distances", "side_lengths"]))]
struct FanArgs {
    /// Number of sides; checked against the data when given
    #[arg(long)]
    n: Option<usize>,
    /// Exact p = cos(δ/2), e.g. 1/2 or 1/4+1/4*sqrt(5)
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// Central angle δ as q*pi (exact when possible) or radians
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Distances from the center to the sides
    #[arg(long, num_args = 1..)]
    distances: Option<Vec<String>>,
    /// Side lengths
    #[arg(long = "side-lengths", num_args = 1..)]
    side_lengths: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Svg,
    Csv,
}

#[derive(Args)]
struct SweepArgs {
    /// key = value file read before the flags
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k1: Option<u64>,
    #[arg(long)]
    k2: Option<u64>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    dedupe: Option<bool>,
    #[arg(long)]
    workers: Option<usize>,
    /// JSON report path
    #[arg(long)]
    out: Option<PathBuf>,
    /// k1 = 1000, k2 = 100, no deduplication
    #[arg(long)]
    full_scale: bool,
    /// Only count instances, without testing them
    #[arg(long)]
    count_only: bool,
    /// Leave per-instance records out of the report
    #[arg(long)]
    no_instances: bool,
}

/// Usage problems exit with 2, domain problems with 1.
enum Failure {
    Usage(String),
    Domain(String),
}

type CliResult = Result<(), Failure>;

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn parse_scalar(s: &str, what: &str) -> Result<Scalar, Failure> {
    s.parse().map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn angle_param(p: &str) -> Result<AngleParam, Failure> {
    if p == "w" {
        Ok(AngleParam::Symbolic)
    } else {
        Ok(AngleParam::Exact(parse_scalar(p, "p")?))
    }
}

fn fan_spec(args: &FanArgs) -> Result<FanSpec, Failure> {
    let (kind, raw) = match (&args.distances, &args.side_lengths) {
        (Some(d), None) => (DataKind::CentralDistances, d),
        (None, Some(a)) => (DataKind::SideLengths, a),
        _ => return Err(Failure::Usage("give exactly one of --distances and --side-lengths".into())),
    };
    if let Some(n) = args.n {
        if n != raw.len() {
            return Err(Failure::Usage(format!("--n {n} but {} values given", raw.len())));
        }
    }
    let values = raw.iter().map(|v| parse_scalar(v, "value")).collect::<Result<Vec<_>, _>>()?;
    let angle = match (&args.p, &args.delta) {
        (Some(p), None) => Angle::Exact(parse_scalar(p, "p")?),
        (None, Some(d)) => parse_delta(d).map_err(Failure::Usage)?,
        _ => return Err(Failure::Usage("give exactly one of --p and --delta".into())),
    };
    match angle {
        Angle::Exact(p) => FanSpec::new(kind, p, values).map_err(domain),
        Angle::Numeric(delta) => {
            eprintln!("warning: angle has no exact cosine in the supported fields; using δ = {delta} numerically");
            let floats: Vec<f64> = values.iter().map(arcfan_core::exactnum::Coeff::to_f64).collect();
            FanSpec::numeric(kind, delta, &floats).map_err(domain)
        }
    }
}

fn poly(cmd: &PolyCmd) -> CliResult {
    let text = match cmd {
        PolyCmd::Gk { k } => cos_multiple_angle(*k).map_err(domain)?.to_string(),
        PolyCmd::Even { k, p } => build_even_poly(*k, &angle_param(p)?).map_err(domain)?.poly.to_string(),
        PolyCmd::Odd { k, p } => build_odd_poly(*k, &angle_param(p)?).map_err(domain)?.poly.to_string(),
        PolyCmd::H { at: None } => eliminate_three_fan().to_string(),
        PolyCmd::H { at: Some(vals) } => {
            let point: Vec<(Var, Rational)> = [Var::Y, Var::Z, Var::W]
                .into_iter()
                .zip(vals)
                .map(|(v, s)| s.parse::<Rational>().map(|r| (v, r)).map_err(|e| Failure::Usage(format!("--at {s}: {e}"))))
                .collect::<Result<_, _>>()?;
            let h = eliminate_three_fan().specialize(&point).map_err(domain)?.compact();
            h.to_univariate(Var::X).map_err(domain)?.to_string()
        }
    };
    println!("{text}");
    Ok(())
}

fn certify(args: &FanArgs) -> CliResult {
    let spec = fan_spec(args)?;
    let cert = certify_nonconstructible(&spec).map_err(domain)?;
    println!("{}", serde_json::to_string_pretty(&cert).map_err(domain)?);
    Ok(())
}

fn format_for(out: Option<&Path>, format: Option<OutFormat>) -> Result<Format, Failure> {
    if let Some(f) = format {
        return Ok(match f {
            OutFormat::Svg => Format::Svg,
            OutFormat::Csv => Format::Csv,
        });
    }
    match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some(ext) => ext.parse().map_err(|e| Failure::Usage(format!("{e}; pass --format"))),
        None => Ok(Format::Csv),
    }
}

fn solve(fan: &FanArgs, out: Option<&Path>, format: Option<OutFormat>, tol: f64) -> CliResult {
    let format = format_for(out, format)?;
    let spec = fan_spec(fan)?;
    let sol = solve_radius(&spec, tol).map_err(domain)?;
    let bytes = render(&sol, &spec, format).map_err(domain)?;
    match out {
        Some(path) => {
            write_atomic(path, &bytes).map_err(domain)?;
            println!("radius = {:.15} (residual {:.1e}); wrote {}", sol.radius, sol.residual, path.display());
        }
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    Ok(())
}

fn sweep(args: &SweepArgs) -> CliResult {
    let mut config = if args.full_scale { SweepConfig::full_scale() } else { SweepConfig::default() };
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        config = config.apply_kv(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if let Some(k) = args.k1 {
        config.k1 = k;
    }
    if let Some(k) = args.k2 {
        config.k2 = k;
    }
    if let Some(d) = args.dedupe {
        config.dedupe = d;
    }
    if let Some(w) = args.workers {
        config.worker_count = w;
    }
    if let Some(o) = &args.out {
        config.output_path = Some(o.clone());
    }
    if args.no_instances {
        config.record_instances = false;
    }
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    if args.count_only {
        let n = count_instances(config.k1, config.k2).map_err(domain)?;
        println!("{n}");
        return Ok(());
    }
    let report = run_sweep(&config).map_err(domain)?;
    print!("{}", report.to_table());
    if report.succeeded() {
        Ok(())
    } else {
        Err(Failure::Domain(format!("{} instance(s) not certified irreducible", report.failures.len())))
    }
}

fn nonagon() -> CliResult {
    let cert = verify_nonagon_corollary().map_err(domain)?;
    println!("{}", serde_json::to_string_pretty(&cert).map_err(domain)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Poly { family } => poly(family),
        Command::Certify(args) => certify(args),
        Command::Solve { fan, out, format, tol } => solve(fan, out.as_deref(), *format, *tol),
        Command::Sweep(args) => sweep(args),
        Command::Nonagon => nonagon(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
