mod args;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use lattice_casimir::massexp::{
    convergence_check, remnant_expansion, ConvergenceCheck, RemnantTerm,
};
use lattice_casimir::{
    best_effort, casimir_energy, casimir_energy_massive, classify_behavior, continuum_casimir,
    rectangle_decomposition, sweep, BehaviorKind, ContinuumParams, DispersionSpec, Error, Geometry,
    QuadratureConfig, Result, SweepRow, Thresholds,
};
use serde::Serialize;

use args::{Cli, Command, DispersionArgs, OutputFormat};
use output::{num, rows_table, table, write_rectangles, write_rows, Sink};

/// Finished, but the quadrature stopped short of tolerance somewhere.
const EXIT_NOT_CONVERGED: u8 = 2;
const EXIT_INVALID: u8 = 1;

enum Status {
    Done,
    NotConverged,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INVALID),
            };
        }
    };
    match run(&cli) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::NotConverged) => {
            eprintln!(
                "warning: quadrature did not converge; reported values are the best available"
            );
            ExitCode::from(EXIT_NOT_CONVERGED)
        }
        // a closed downstream pipe (`| head`) is not a failure
        Err(Error::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            match e {
                Error::NotConverged { .. } | Error::CasimirNotConverged(_) => {
                    ExitCode::from(EXIT_NOT_CONVERGED)
                }
                _ => ExitCode::from(EXIT_INVALID),
            }
        }
    }
}

/// Error text that names the offending flag.
fn describe(e: &Error) -> String {
    match e {
        Error::InvalidParameter { name, reason } => {
            format!("invalid value for --{}: {reason}", name.replace('_', "-"))
        }
        other => other.to_string(),
    }
}

fn status(converged: bool) -> Status {
    if converged {
        Status::Done
    } else {
        Status::NotConverged
    }
}

fn dispersion(a: &DispersionArgs) -> Result<DispersionSpec> {
    DispersionSpec::new(a.s, a.am, a.g)
}

fn run(cli: &Cli) -> Result<Status> {
    let cfg = cli.quadrature.config();
    cfg.validate()?;
    let format = cli.output.format;
    let out = cli.output.out.as_str();
    match &cli.command {
        Command::Compute(a) => {
            let spec = dispersion(&a.dispersion)?;
            let geom = Geometry::new(a.d, a.nz)?;
            let (r, converged) = best_effort(casimir_energy(&spec, &geom, a.bc, &cfg))?;
            let row = SweepRow::new(a.nz, &r, converged);
            match format {
                OutputFormat::Table => {
                    let mut sink = Sink::open(out)?;
                    sink.line(format!(
                        "s={} am={} g={} d={} Nz={} bc={}",
                        spec.order(),
                        spec.mass(),
                        spec.degeneracy(),
                        a.d,
                        a.nz,
                        a.bc
                    ))?;
                    for (k, v) in [
                        ("e0_sum", r.e0_sum),
                        ("e0_int", r.e0_int),
                        ("e_cas", r.e_cas),
                        ("coeff", r.coeff),
                        ("quad_error", r.quad_error),
                    ] {
                        sink.line(format!("{k:<10} = {}", num(v)))?;
                    }
                    sink.line(format!("{:<10} = {converged}", "converged"))?;
                    sink.finish()?;
                }
                OutputFormat::Json => {
                    let mut sink = Sink::open(out)?;
                    sink.json(&row)?;
                    sink.finish()?;
                }
                OutputFormat::Csv => write_rows(&[row], format, out)?,
            }
            Ok(status(converged))
        }

        Command::Sweep(a) => {
            let spec = dispersion(&a.dispersion)?;
            if a.nz_min == 0 || a.nz_min > a.nz_max {
                return Err(Error::InvalidParameter {
                    name: "nz_min",
                    reason: format!("need 1 <= nz-min <= nz-max, got {}..{}", a.nz_min, a.nz_max),
                });
            }
            let nz: Vec<usize> = (a.nz_min..=a.nz_max).collect();
            let rows = sweep(&spec, a.d, a.bc, &nz, &cfg)?;
            write_rows(&rows, format, out)?;
            Ok(status(rows.iter().all(|r| r.converged)))
        }

        Command::Classify(a) => {
            let spec = dispersion(&a.dispersion)?;
            let thresholds = Thresholds {
                eps_zero: a.eps_zero,
                delta_tail: a.delta_tail,
            };
            let c = classify_behavior(&spec, a.d, a.bc, a.nz_max, &cfg, &thresholds)?;
            match format {
                OutputFormat::Table => {
                    let mut sink = Sink::open(out)?;
                    sink.line(c.to_string())?;
                    rows_table(&mut sink, &c.rows)?;
                    sink.finish()?;
                }
                OutputFormat::Json => {
                    let mut sink = Sink::open(out)?;
                    sink.json(&c)?;
                    sink.finish()?;
                }
                OutputFormat::Csv => write_rows(&c.rows, format, out)?,
            }
            if c.kind == BehaviorKind::Unclassified {
                eprintln!("note: the coefficient tail is ambiguous; extend --nz-max or adjust --delta-tail");
            }
            Ok(status(c.rows.iter().all(|r| r.converged)))
        }

        Command::MassExpansion(a) => mass_expansion(a, &cfg, format, out),

        Command::Rectangles(a) => {
            let spec = dispersion(&a.dispersion)?;
            let dec = rectangle_decomposition(&spec, a.nz, a.bc, &a.k_perp, a.samples, &cfg)?;
            write_rectangles(&dec, format, out)?;
            Ok(Status::Done)
        }

        Command::Reference(a) => {
            let p = ContinuumParams {
                s: a.s,
                d: a.d,
                l: a.l,
                g: a.g,
            };
            let value = continuum_casimir(&p)?;
            let mut sink = Sink::open(out)?;
            match format {
                OutputFormat::Table => sink.line(format!(
                    "s={} d={} L={} g={}\ne_cas = {}",
                    a.s,
                    a.d,
                    a.l,
                    a.g,
                    num(value)
                ))?,
                OutputFormat::Json => sink.json(&ReferenceOut {
                    s: a.s,
                    d: a.d,
                    l: a.l,
                    g: a.g,
                    e_cas: value,
                })?,
                OutputFormat::Csv => sink.csv(
                    &["s", "d", "L", "g", "e_cas"],
                    [(a.s, a.d, a.l, a.g, value)],
                )?,
            }
            sink.finish()?;
            Ok(Status::Done)
        }
    }
}

#[derive(Serialize)]
struct ReferenceOut {
    s: u32,
    d: u32,
    #[serde(rename = "L")]
    l: f64,
    g: u32,
    e_cas: f64,
}

#[derive(Serialize)]
struct PartialSum {
    #[serde(rename = "K")]
    k: usize,
    #[serde(flatten)]
    term: RemnantTerm,
    partial_sum: f64,
    difference: f64,
    rel_difference: f64,
}

#[derive(Serialize)]
struct MassExpansionOut {
    am: f64,
    d: usize,
    #[serde(rename = "Nz")]
    nz: usize,
    bc: String,
    massive: f64,
    massive_quad_error: f64,
    converged: bool,
    convergence: ConvergenceCheck,
    orders: Vec<PartialSum>,
}

fn mass_expansion(
    a: &args::MassExpansionArgs,
    cfg: &QuadratureConfig,
    format: OutputFormat,
    out: &str,
) -> Result<Status> {
    let geom = Geometry::new(a.d, a.nz)?;
    let (massive, converged) = best_effort(casimir_energy_massive(a.am, &geom, a.bc, cfg))?;
    let expansion = remnant_expansion(a.am, &geom, a.bc, a.orders, cfg)?;
    let orders: Vec<PartialSum> = expansion
        .terms
        .iter()
        .zip(expansion.partial_sums())
        .enumerate()
        .map(|(i, (t, p))| PartialSum {
            k: i + 1,
            term: *t,
            partial_sum: p,
            difference: p - massive.e_cas,
            rel_difference: ((p - massive.e_cas) / massive.e_cas).abs(),
        })
        .collect();
    let report = MassExpansionOut {
        am: a.am,
        d: a.d,
        nz: a.nz,
        bc: a.bc.to_string(),
        massive: massive.e_cas,
        massive_quad_error: massive.quad_error,
        converged,
        convergence: convergence_check(a.am, a.d),
        orders,
    };
    if !report.convergence.converges {
        eprintln!(
            "warning: the expansion diverges at am={} in d={} (needs am^2 > {})",
            a.am,
            a.d,
            4 * a.d
        );
    }
    let mut sink = Sink::open(out)?;
    match format {
        OutputFormat::Table => {
            sink.line(format!(
                "massive e_cas = {} (quad_error {})",
                num(report.massive),
                num(report.massive_quad_error)
            ))?;
            let cells: Vec<Vec<String>> = report
                .orders
                .iter()
                .map(|o| {
                    vec![
                        o.k.to_string(),
                        num(o.term.c_n),
                        num(o.term.e_cas),
                        num(o.partial_sum),
                        num(o.difference),
                        num(o.rel_difference),
                    ]
                })
                .collect();
            table(
                &mut sink,
                &[
                    "K",
                    "c_n",
                    "e_cas(s=2K)",
                    "partial_sum",
                    "difference",
                    "rel_difference",
                ],
                &cells,
            )?;
        }
        OutputFormat::Json => sink.json(&report)?,
        OutputFormat::Csv => sink.csv(
            &[
                "K",
                "c_n",
                "e_cas",
                "partial_sum",
                "massive",
                "difference",
                "rel_difference",
            ],
            report.orders.iter().map(|o| {
                (
                    o.k,
                    o.term.c_n,
                    o.term.e_cas,
                    o.partial_sum,
                    report.massive,
                    o.difference,
                    o.rel_difference,
                )
            }),
        )?,
    }
    sink.finish()?;
    Ok(status(converged))
}
