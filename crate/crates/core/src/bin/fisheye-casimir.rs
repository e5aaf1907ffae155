use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fisheye_casimir::profile::{fmt_value, write_profile, ProfileFormat};
use fisheye_casimir::verify::all_passed;
use fisheye_casimir::{
    casimir_stress, force_density, radial_profile, refractive_index, run_checks, scalar_d, GreenPart, Level,
    MediumParams, Point3, ScalarGreenPoint,
};

#[derive(Parser)]
#[command(
    name = "fisheye-casimir",
    version,
    about = "Casimir stress inside a mirrored Maxwell fish eye"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Medium {
    /// Mirror radius
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Index scale (the index at the mirror)
    #[arg(long, default_value_t = 1.0)]
    n1: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Radial profile of index, stress eigenvalue and force density
    Profile {
        #[command(flatten)]
        medium: Medium,
        #[arg(long, default_value_t = 0.0)]
        rmin: f64,
        /// Defaults to 0.99·a
        #[arg(long)]
        rmax: Option<f64>,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Stress eigenvalue and force density at one radius
    Stress {
        #[command(flatten)]
        medium: Medium,
        /// Radius in the unit of a
        r: f64,
    },
    /// Electromagnetic Green function at imaginary wavenumber (reduced units)
    Green {
        /// Field point x,y,z
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        r: Point3,
        /// Source point x,y,z
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        r0: Point3,
        #[arg(long)]
        kappa: f64,
        #[arg(long, value_enum, default_value_t = Part::Total)]
        part: Part,
    },
    /// Scalar hypersphere Green function D(r', kappa)
    Scalar { r_prime: f64, kappa: f64 },
    /// Run the self-verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Fast)]
        level: VerifyLevel,
        /// Multiplies every check tolerance
        #[arg(long, default_value_t = 1.0)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    JsonLines,
}

#[derive(Clone, Copy, ValueEnum)]
enum Part {
    Free,
    Reflected,
    Total,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Fast,
    Full,
}

fn parse_point(s: &str) -> Result<Point3, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad coordinate {c:?}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x, y, z] => Ok(Point3::new(x, y, z)),
        _ => Err(format!("expected three comma-separated coordinates, got {}", v.len())),
    }
}

enum Failure {
    Domain(String),
    Verification,
}

impl From<fisheye_casimir::Error> for Failure {
    fn from(e: fisheye_casimir::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("output error: {e}"))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Profile {
            medium,
            rmin,
            rmax,
            points,
            format,
        } => {
            let params = MediumParams::new(medium.a, medium.n1)?;
            let rmax = rmax.unwrap_or(0.99 * params.a());
            let rows = radial_profile(&params, rmin, rmax, points)?;
            let format = match format {
                Format::Csv => ProfileFormat::Csv,
                Format::JsonLines => ProfileFormat::JsonLines,
            };
            write_profile(&mut out, &rows, format)?;
        }
        Command::Stress { medium, r } => {
            let params = MediumParams::new(medium.a, medium.n1)?;
            let sigma = casimir_stress(r, &params)?;
            writeln!(out, "r_over_a {}", fmt_value(r / params.a()))?;
            writeln!(out, "n {}", fmt_value(refractive_index(r, &params)?))?;
            writeln!(out, "sigma_eigenvalue {}", fmt_value(sigma.eigenvalue()))?;
            writeln!(out, "force_density {}", fmt_value(force_density(r, &params)?))?;
        }
        Command::Green { r, r0, kappa, part } => {
            let part = match part {
                Part::Free => GreenPart::Free,
                Part::Reflected => GreenPart::Reflected,
                Part::Total => GreenPart::Total,
            };
            let g = part.evaluate(&r, &r0, kappa)?;
            for row in g.rows() {
                let cells: Vec<String> = row.iter().map(|&x| fmt_value(x)).collect();
                writeln!(out, "{}", cells.join(" "))?;
            }
        }
        Command::Scalar { r_prime, kappa } => {
            let d = scalar_d(&ScalarGreenPoint::new(r_prime, kappa)?);
            writeln!(out, "{}", fmt_value(d))?;
        }
        Command::Verify { level, tol } => {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Failure::Domain(format!("--tol must be positive and finite, got {tol}")));
            }
            let level = match level {
                VerifyLevel::Fast => Level::Fast,
                VerifyLevel::Full => Level::Full,
            };
            let reports: Vec<_> = run_checks(level)
                .into_iter()
                .map(|r| {
                    let t = r.tolerance * tol;
                    r.with_tolerance(t)
                })
                .collect();
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            out.flush()?;
            if !all_passed(&reports) {
                return Err(Failure::Verification);
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
