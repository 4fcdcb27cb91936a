//! Command-line surface: construction, validation, sweeps and rendering
//! with machine-readable JSON/CSV output.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error as PqError;
use crate::geometry::{squared_distance, RegularPolygon};
use crate::oracle::{self, LloydInit};
use crate::render::render_svg;
use crate::{coefficient, polygon};

#[derive(Parser)]
#[command(name = "polyquant", version, about = "Optimal quantizers for uniform distributions on regular polygon boundaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InitKind {
    ClosedForm,
    Perturbed,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the closed-form optimal set of m*k means
    Quantize {
        #[arg(long = "sides")]
        sides: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the closed-form distortion report for m*k means
    Error {
        #[arg(long = "sides")]
        sides: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the quantization coefficient (1/3) m^2 sin^2(pi/m)
    Coefficient {
        #[arg(long = "sides")]
        sides: u32,
        /// Also print the circle limit pi^2/3 and the gap
        #[arg(long)]
        limit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of convergence rows over ranges of m and k
    Sweep {
        /// Inclusive range of side counts, as A:B
        #[arg(long = "sides-range")]
        sides_range: String,
        /// Inclusive range of k, as C:D
        #[arg(long = "k-range")]
        k_range: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run Lloyd iteration on the polygon boundary
    Lloyd {
        #[arg(long = "sides")]
        sides: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "random")]
        init: InitKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturbation magnitude for --init perturbed
        #[arg(long, default_value_t = 1e-3)]
        perturb: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 1000)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the closed forms against the numerical oracle for one (m, k)
    Validate {
        #[arg(long = "sides")]
        sides: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Quadrature nodes per arc
        #[arg(long, default_value_t = 8)]
        nodes: usize,
    },
    /// Render the optimal set and its cell breakpoints as SVG
    Render {
        #[arg(long = "sides")]
        sides: u32,
        #[arg(long)]
        k: u32,
        /// Output SVG path
        #[arg(long)]
        svg: PathBuf,
        #[arg(long = "svg-size", default_value_t = 800)]
        svg_size: u32,
    },
}

/// Formats a float with 17 significant digits, enough to round-trip f64.
fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), PqError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| PqError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Parses and runs a full argv; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("usage error"));
            return 2;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(command: Command) -> Result<i32, PqError> {
    match command {
        Command::Quantize {
            sides,
            k,
            format,
            out,
        } => {
            let q = polygon::optimal_mk_set(sides, k)?;
            let report = polygon::optimal_error(sides, k)?;
            let coeff = coefficient::quant_coefficient(sides)?;
            let content = match format {
                Format::Json => {
                    let mut s = String::new();
                    let _ = write!(
                        s,
                        "{{\"m\":{sides},\"k\":{k},\"n\":{},\"r\":{},\"coefficient\":{},\"V\":{},\"points\":[",
                        q.len(),
                        fmt17(q.meta.r.unwrap()),
                        fmt17(coeff),
                        fmt17(report.total),
                    );
                    for (i, p) in q.points.iter().enumerate() {
                        if i > 0 {
                            s.push(',');
                        }
                        let _ = write!(s, "[{},{}]", fmt17(p.x), fmt17(p.y));
                    }
                    s.push_str("]}\n");
                    s
                }
                Format::Csv => {
                    let mut s = String::from("x,y\n");
                    for p in &q.points {
                        let _ = writeln!(s, "{},{}", fmt17(p.x), fmt17(p.y));
                    }
                    s
                }
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Command::Error {
            sides,
            k,
            format,
            out,
        } => {
            let report = polygon::optimal_error(sides, k)?;
            let r = report.params.r.unwrap();
            let content = match format {
                Format::Json => format!(
                    "{{\"m\":{sides},\"k\":{k},\"n\":{},\"r\":{},\"V\":{},\"corner_part\":{},\"side_part\":{},\"method\":\"{}\"}}\n",
                    report.params.n,
                    fmt17(r),
                    fmt17(report.total),
                    fmt17(report.corner_part.unwrap()),
                    fmt17(report.side_part.unwrap()),
                    report.method.as_str(),
                ),
                Format::Csv => format!(
                    "m,k,n,r,V,corner_part,side_part,method\n{sides},{k},{},{},{},{},{},{}\n",
                    report.params.n,
                    fmt17(r),
                    fmt17(report.total),
                    fmt17(report.corner_part.unwrap()),
                    fmt17(report.side_part.unwrap()),
                    report.method.as_str(),
                ),
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Command::Coefficient { sides, limit, out } => {
            let value = coefficient::quant_coefficient(sides)?;
            let content = if limit {
                let circle = std::f64::consts::PI.powi(2) / 3.0;
                format!(
                    "coefficient {value}\nlimit {circle}\ngap {}\n",
                    circle - value
                )
            } else {
                format!("{value}\n")
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Command::Sweep {
            sides_range,
            k_range,
            out,
        } => {
            let (m_lo, m_hi) = parse_range(&sides_range)?;
            let (k_lo, k_hi) = parse_range(&k_range)?;
            let mut content = String::from("m,k,n,r,Vn,scaled,coefficient,deviation\n");
            for m in m_lo..=m_hi {
                let coeff = coefficient::quant_coefficient(m)?;
                let ks: Vec<u32> = (k_lo..=k_hi).collect();
                for row in coefficient::convergence_table(m, &ks)? {
                    let r = polygon::vertex_radius(m, row.k)?;
                    let _ = writeln!(
                        content,
                        "{m},{},{},{},{},{},{},{}",
                        row.k,
                        row.n,
                        fmt17(r),
                        fmt17(row.vn),
                        fmt17(row.scaled),
                        fmt17(coeff),
                        fmt17(row.deviation),
                    );
                }
            }
            write_output(&out, &content)?;
            Ok(0)
        }
        Command::Lloyd {
            sides,
            n,
            init,
            seed,
            perturb,
            tol,
            max_iter,
            out,
        } => {
            let p = RegularPolygon::new(sides)?;
            let init = match init {
                InitKind::ClosedForm => LloydInit::ClosedForm,
                InitKind::Perturbed => LloydInit::Perturbed {
                    magnitude: perturb,
                    seed,
                },
                InitKind::Random => LloydInit::Random { seed },
            };
            let state = oracle::lloyd_solve(&p, n, init, tol, max_iter)?;
            let mut s = String::new();
            let _ = write!(
                s,
                "{{\"m\":{sides},\"n\":{n},\"iterations\":{},\"max_move\":{},\"distortion\":{},\"converged\":{},\"points\":[",
                state.iterations,
                fmt17(state.max_move),
                fmt17(state.distortion),
                state.converged,
            );
            for (i, p) in state.points.points.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "[{},{}]", fmt17(p.x), fmt17(p.y));
            }
            s.push_str("]}\n");
            write_output(&out, &s)?;
            Ok(0)
        }
        Command::Validate {
            sides,
            k,
            tol,
            nodes,
        } => {
            if !(tol > 0.0) {
                return Err(PqError::invalid("tolerance must be positive"));
            }
            Ok(run_validation(sides, k, tol, nodes)?)
        }
        Command::Render {
            sides,
            k,
            svg,
            svg_size,
        } => {
            if svg_size == 0 {
                return Err(PqError::invalid("svg size must be positive"));
            }
            let p = RegularPolygon::new(sides)?;
            let q = polygon::optimal_mk_set(sides, k)?;
            let cells = oracle::voronoi_cells_on_boundary(&p, &q)?;
            let content = render_svg(&p, &q, &cells, svg_size);
            fs::write(&svg, content)
                .map_err(|e| PqError::invalid(format!("cannot write {}: {e}", svg.display())))?;
            Ok(0)
        }
    }
}

fn parse_range(spec: &str) -> Result<(u32, u32), PqError> {
    let (lo, hi) = spec
        .split_once(':')
        .ok_or_else(|| PqError::invalid(format!("range '{spec}' is not of the form A:B")))?;
    let lo: u32 = lo
        .parse()
        .map_err(|_| PqError::invalid(format!("bad range start '{lo}'")))?;
    let hi: u32 = hi
        .parse()
        .map_err(|_| PqError::invalid(format!("bad range end '{hi}'")))?;
    if lo > hi {
        return Err(PqError::invalid(format!("empty range '{spec}'")));
    }
    Ok((lo, hi))
}

fn run_validation(m: u32, k: u32, tol: f64, nodes: usize) -> Result<i32, PqError> {
    let p = RegularPolygon::new(m)?;
    let q = polygon::optimal_mk_set(m, k)?;
    let closed = polygon::optimal_error(m, k)?;
    let mut all_ok = true;
    let mut report = |name: &str, detail: String, ok: bool| {
        println!("{} {name}: {detail}", if ok { "ok  " } else { "FAIL" });
        all_ok &= ok;
    };

    let quad = oracle::distortion_quadrature(&p, &q, nodes)?;
    let rel = (quad.total - closed.total).abs() / closed.total;
    report(
        "closed form vs quadrature",
        format!("relative error {rel:.3e} (tol {tol:.1e})"),
        rel <= tol,
    );

    if k >= 2 {
        let found = oracle::minimize_over_r(m, k, 1e-10)?;
        let exact = polygon::vertex_radius(m, k)?;
        let diff = (found - exact).abs();
        report(
            "vertex radius vs golden-section",
            format!("difference {diff:.3e} (tol 1.0e-8)"),
            diff < 1e-8,
        );
    }

    let stepped = oracle::lloyd_step(&p, &q)?;
    let max_move = q
        .points
        .iter()
        .zip(&stepped.points)
        .map(|(a, b)| squared_distance(*a, *b).sqrt())
        .fold(0.0, f64::max);
    report(
        "lloyd fixed point",
        format!("max move {max_move:.3e} (tol 1.0e-9)"),
        max_move < 1e-9,
    );

    let sum = closed.corner_part.unwrap() + closed.side_part.unwrap();
    let dec = (sum - closed.total).abs() / closed.total;
    report(
        "corner + side decomposition",
        format!("relative error {dec:.3e} (tol 1.0e-12)"),
        dec <= 1e-12,
    );

    Ok(if all_ok { 0 } else { 1 })
}
