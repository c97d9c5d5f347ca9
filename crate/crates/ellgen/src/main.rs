//! Command-line front end for the elliptic-genus library.
//!
//! Subcommands: `surface` and `psi` emit coefficient tables, `kummer`
//! computes Ell(A^[[n]]) by a selectable route, `verify` runs the full
//! cross-check suite. Exit codes: 0 success, 1 failed checks or internal
//! errors, 2 bad usage (unknown surface, c₁² = 0 where forbidden),
//! 3 a failed exact division — the theorem-falsification signal.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};

use elliptic_genus::kummer::{self, Route};
use elliptic_genus::surface::{elliptic_genus, SurfaceSpec};
use elliptic_genus::theta::{psi, psi_meta};
use elliptic_genus::{verify, Error};

use output::{render, Format, Header};

#[derive(Parser)]
#[command(name = "ellgen", version, about = "Exact elliptic-genus expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Hecke,
    Hilbert,
    Chi,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Preset surface name: P2, P1xP1, K3 or Abelian.
    #[arg(long, conflicts_with_all = ["c1sq", "c2"])]
    name: Option<String>,
    /// ∫ c₁² of a custom surface.
    #[arg(long, requires = "c2")]
    c1sq: Option<i64>,
    /// ∫ c₂ of a custom surface.
    #[arg(long, requires = "c1sq")]
    c2: Option<i64>,
}

impl SurfaceArgs {
    fn resolve(&self) -> Result<SurfaceSpec, String> {
        match (&self.name, self.c1sq, self.c2) {
            (Some(name), None, None) => SurfaceSpec::by_name(name)
                .ok_or_else(|| format!("unknown surface '{name}' (try P2, P1xP1, K3, Abelian)")),
            (None, Some(c1sq), Some(c2)) => Ok(SurfaceSpec::new("custom", c1sq, c2)),
            _ => Err("specify either --name or both --c1sq and --c2".to_string()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficients of the elliptic genus of a surface.
    Surface {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Highest q-order to compute.
        #[arg(long, default_value_t = 3)]
        qmax: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Fourier coefficients of ψ (half-integer y-powers: odd l2 keys).
    Psi {
        #[arg(long, default_value_t = 3)]
        qmax: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Elliptic genus of the generalised Kummer variety A^[[n]].
    Kummer {
        /// Which A^[[n]] to compute (n ≥ 1).
        #[arg(long)]
        n: i64,
        /// Route: the Hecke formula, the twisted Hilbert-scheme formula, or
        /// the closed χ_y polynomial (which carries no q-dependence).
        #[arg(long, value_enum, default_value_t = RouteArg::Hecke)]
        route: RouteArg,
        /// Highest q-order to compute (ignored by the chi route).
        #[arg(long, default_value_t = 3)]
        qmax: i64,
        /// Surface driving the hilbert route (needs c₁² ≠ 0).
        #[arg(long, default_value = "P2")]
        surface: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run the verification suite and report each check.
    Verify {
        /// Highest Kummer index n (equivalently p-degree) in the frame.
        #[arg(long = "pmax", visible_alias = "N", default_value_t = 4)]
        pmax: usize,
        #[arg(long, default_value_t = 3)]
        qmax: i64,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NonExactDivision { .. } => 3,
        Error::ZeroC1Sq => 2,
        _ => 1,
    }
}

fn fail(err: Error) -> ! {
    eprintln!("error: {err}");
    std::process::exit(exit_code_for(&err));
}

fn usage_error(msg: String) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Surface {
            surface,
            qmax,
            format,
        } => {
            if qmax < 0 {
                usage_error("--qmax must be nonnegative".into());
            }
            let spec = surface.resolve().unwrap_or_else(|e| usage_error(e));
            let genus = elliptic_genus(&spec, qmax);
            let header = Header {
                kind: "surface",
                n: None,
                qmax,
                weight: Some(0),
                index2: Some(2),
                route: None,
                surface: Some((spec.name.clone(), spec.c1sq, spec.c2)),
            };
            print!("{}", render(&header, &genus, format.into()));
        }
        Command::Psi { qmax, format } => {
            if qmax < 0 {
                usage_error("--qmax must be nonnegative".into());
            }
            let series = psi(qmax);
            let meta = psi_meta();
            let header = Header {
                kind: "psi",
                n: None,
                qmax,
                weight: Some(meta.weight),
                index2: Some(meta.index2),
                route: None,
                surface: None,
            };
            print!("{}", render(&header, &series, format.into()));
        }
        Command::Kummer {
            n,
            route,
            qmax,
            surface,
            format,
        } => {
            if n < 1 {
                usage_error("--n must be at least 1".into());
            }
            if qmax < 0 {
                usage_error("--qmax must be nonnegative".into());
            }
            let (series, route_name, qmax_out, meta) = match route {
                RouteArg::Hecke => {
                    let r = kummer::via_hecke(n, qmax).unwrap_or_else(|e| fail(e));
                    let meta = r.meta();
                    (r.genus, "hecke", qmax, Some(meta))
                }
                RouteArg::Hilbert => {
                    let spec = SurfaceSpec::by_name(&surface).unwrap_or_else(|| {
                        usage_error(format!(
                            "unknown surface '{surface}' (try P2, P1xP1, K3, Abelian)"
                        ))
                    });
                    let results =
                        kummer::via_hilbert(&spec, n as usize, qmax).unwrap_or_else(|e| fail(e));
                    let r = results.into_iter().last().expect("n >= 1 entries");
                    debug_assert_eq!(r.route, Route::Hilbert);
                    let meta = r.meta();
                    (r.genus, "hilbert", qmax, Some(meta))
                }
                RouteArg::Chi => (kummer::chi_y_closed(n), "chi", 0, None),
            };
            let header = Header {
                kind: "kummer",
                n: Some(n),
                qmax: qmax_out,
                weight: meta.map(|m| m.weight),
                index2: meta.map(|m| m.index2),
                route: Some(route_name),
                surface: None,
            };
            print!("{}", render(&header, &series, format.into()));
        }
        Command::Verify { pmax, qmax } => {
            if pmax < 1 {
                usage_error("--pmax must be at least 1".into());
            }
            if qmax < 0 {
                usage_error("--qmax must be nonnegative".into());
            }
            let reports = verify::run_suite(pmax, qmax).unwrap_or_else(|e| fail(e));
            for report in &reports {
                println!("{report}");
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            println!("{passed}/{} checks passed", reports.len());
            if passed != reports.len() {
                std::process::exit(1);
            }
        }
    }
}
