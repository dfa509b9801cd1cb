//! Command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input, 2 degenerate or infeasible
//! instance, 3 assumption check failed, 4 audit failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{
    check_assumptions, check_weights, perturb_costs, perturb_weights, plot, HalfSpace,
    HyperplaneSource,
};
use crate::interdiction::{solve_interdiction, RankDropPolicy};
use crate::io::{
    emit_solution, interdiction_document, parametric_document, parse_instance, weight_set_document,
    Instance,
};
use crate::matroid::MatroidInstance;
use crate::oracle::{sample_audit, AuditTarget};
use crate::param::{build_arrangement, solve_on_arrangement, Algorithm};
use crate::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::wsd::{decompose_weight_set, weight_set_hyperplanes};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_DIRTY: i32 = 3;
pub const EXIT_AUDIT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "pmatroid",
    version,
    about = "Exact multi-parametric matroid optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Instance file (JSON).
    instance: PathBuf,
    /// Perturb the weights by EPS times distinct pseudo-random rationals, e.g. `2^-20`.
    #[arg(long, value_name = "EPS")]
    perturb: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgorithmArg {
    PerCell,
    Pivot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RankDropArg {
    Strict,
    Permissive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Solve,
    Wsd,
    Interdict,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose the parameter box into regions with one minimum basis each.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "pivot")]
        algorithm: AlgorithmArg,
        /// Report raw cells instead of merged regions.
        #[arg(long)]
        no_merge: bool,
    },
    /// Weight set decomposition of the multi-objective instance given by `costs`.
    Wsd {
        #[command(flatten)]
        common: Common,
    },
    /// Most vital element as a function of the parameter.
    Interdict {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "permissive")]
        rank_drop: RankDropArg,
    },
    /// Report duplicate and vertical separating hyperplanes.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Audit a solution against brute force at seeded sample points.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value = "solve")]
        target: Target,
        #[arg(long, value_enum, default_value = "pivot")]
        algorithm: AlgorithmArg,
        #[arg(long, value_enum, default_value = "permissive")]
        rank_drop: RankDropArg,
    },
    /// CSV of region boundary segments for decompositions of dimension one or two.
    ExportPlot {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "solve")]
        target: Target,
        #[arg(long, value_enum, default_value = "permissive")]
        rank_drop: RankDropArg,
    },
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::PerCell => Algorithm::PerCell,
            AlgorithmArg::Pivot => Algorithm::Pivot,
        }
    }
}

impl From<RankDropArg> for RankDropPolicy {
    fn from(r: RankDropArg) -> Self {
        match r {
            RankDropArg::Strict => RankDropPolicy::Strict,
            RankDropArg::Permissive => RankDropPolicy::Permissive,
        }
    }
}

/// Maps an error to its exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Input(_) | Error::OutsideBox | Error::Io(_) => EXIT_INPUT,
        Error::EmptyBox(_)
        | Error::Degenerate(_)
        | Error::NoInteriorPoint
        | Error::RankDrop(_)
        | Error::CapExceeded { .. } => EXIT_DEGENERATE,
        Error::Internal(_) => EXIT_AUDIT,
    }
}

/// Runs the command line `argv` (including the program name) and returns the
/// exit code. Output goes to stdout or `--out`, diagnostics to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn load(common: &Common) -> Result<Instance> {
    let text = std::fs::read_to_string(&common.instance)
        .map_err(|e| Error::Input(format!("{}: {e}", common.instance.display())))?;
    let mut inst = parse_instance(&text)?;
    if let Some(eps) = &common.perturb {
        let eps: Rational = parse_rational(eps)?;
        inst.weights = inst.weights.map(|w| perturb_weights(&w, common.seed, &eps));
        inst.costs = inst.costs.map(|c| perturb_costs(&c, common.seed, &eps));
    }
    Ok(inst)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_text(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    text
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Solve {
            common,
            algorithm,
            no_merge,
        } => {
            let inst = load(&common)?;
            let weights = inst.weights()?;
            let arrangement =
                std::sync::Arc::new(build_arrangement(&inst.matroid, weights, &inst.bbox)?);
            let sol = solve_on_arrangement(
                &inst.matroid,
                weights,
                arrangement,
                algorithm.into(),
                !no_merge,
            )?;
            emit(
                common.out.as_deref(),
                &emit_solution(&parametric_document(&inst.matroid, &sol)),
            )?;
            Ok(EXIT_OK)
        }
        Command::Wsd { common } => {
            let inst = load(&common)?;
            let dec = decompose_weight_set(&inst.matroid, inst.costs()?)?;
            emit(
                common.out.as_deref(),
                &emit_solution(&weight_set_document(&inst.matroid, &dec)),
            )?;
            Ok(EXIT_OK)
        }
        Command::Interdict { common, rank_drop } => {
            let inst = load(&common)?;
            let sol =
                solve_interdiction(&inst.matroid, inst.weights()?, &inst.bbox, rank_drop.into())?;
            emit(
                common.out.as_deref(),
                &emit_solution(&interdiction_document(&inst.matroid, &sol)),
            )?;
            Ok(EXIT_OK)
        }
        Command::Check { common } => {
            let inst = load(&common)?;
            let (report, clean) = check_report(&inst)?;
            emit(common.out.as_deref(), &json_text(&report))?;
            Ok(if clean { EXIT_OK } else { EXIT_DIRTY })
        }
        Command::Verify {
            common,
            samples,
            target,
            algorithm,
            rank_drop,
        } => {
            let inst = load(&common)?;
            let weights = inst.weights()?;
            let report = match target {
                Target::Solve => {
                    let arrangement =
                        std::sync::Arc::new(build_arrangement(&inst.matroid, weights, &inst.bbox)?);
                    let sol = solve_on_arrangement(
                        &inst.matroid,
                        weights,
                        arrangement,
                        algorithm.into(),
                        true,
                    )?;
                    sample_audit(
                        &inst.matroid,
                        weights,
                        AuditTarget::Parametric(&sol),
                        samples,
                        common.seed,
                    )?
                }
                Target::Interdict => {
                    let sol =
                        solve_interdiction(&inst.matroid, weights, &inst.bbox, rank_drop.into())?;
                    sample_audit(
                        &inst.matroid,
                        weights,
                        AuditTarget::Interdiction(&sol),
                        samples,
                        common.seed,
                    )?
                }
                Target::Wsd => {
                    return Err(Error::Input(
                        "verify supports --target solve or interdict".into(),
                    ))
                }
            };
            let value = json!({
                "samples": report.samples,
                "passed": report.passed,
                "mismatches": report.mismatches.iter().map(|m| json!({
                    "point": m.point.iter().map(format_rational).collect::<Vec<_>>(),
                    "expected": m.expected,
                    "actual": m.actual,
                })).collect::<Vec<_>>(),
            });
            emit(common.out.as_deref(), &json_text(&value))?;
            Ok(if report.passed { EXIT_OK } else { EXIT_AUDIT })
        }
        Command::ExportPlot {
            common,
            target,
            rank_drop,
        } => {
            let inst = load(&common)?;
            let csv = plot_csv(&inst, target, rank_drop.into())?;
            emit(common.out.as_deref(), &csv)?;
            Ok(EXIT_OK)
        }
    }
}

fn pair_labels(m: &MatroidInstance, source: HyperplaneSource) -> serde_json::Value {
    match source {
        HyperplaneSource::Pair(a, b) => json!([m.label(a.min(b)), m.label(a.max(b))]),
        HyperplaneSource::Boundary(i) => json!(format!("boundary {i}")),
        HyperplaneSource::None => serde_json::Value::Null,
    }
}

/// The assumption report as JSON, and whether it is clean.
fn check_report(inst: &Instance) -> Result<(serde_json::Value, bool)> {
    let m = &inst.matroid;
    let elements: Vec<usize> = m.elements().collect();
    let (hyperplanes, report) = if let Some(w) = &inst.weights {
        let (sep, report) = check_weights(w, &elements);
        (sep.hyperplanes, report)
    } else if let Some(c) = &inst.costs {
        let (hs, _) = weight_set_hyperplanes(m, c)?;
        let report = check_assumptions(&hs);
        // the simplex boundaries are vertical by construction
        let report = crate::geometry::AssumptionReport {
            vertical: report
                .vertical
                .into_iter()
                .filter(|&i| matches!(hs[i].source, HyperplaneSource::Pair(..)))
                .collect(),
            ..report
        };
        (hs, report)
    } else {
        return Err(Error::Input(
            "instance has neither weights nor costs".into(),
        ));
    };
    let value = json!({
        "clean": report.is_clean(),
        "identical_weights": report.identical_weights.iter()
            .map(|&(a, b)| json!([m.label(a), m.label(b)])).collect::<Vec<_>>(),
        "duplicates": report.duplicates.iter()
            .map(|&(i, j)| json!([pair_labels(m, hyperplanes[i].source), pair_labels(m, hyperplanes[j].source)]))
            .collect::<Vec<_>>(),
        "vertical": report.vertical.iter().map(|&i| pair_labels(m, hyperplanes[i].source)).collect::<Vec<_>>(),
        "hyperplanes": hyperplanes.len(),
    });
    Ok((value, report.is_clean()))
}

/// `(region id, constraints)` polytopes drawn as boundary segments.
fn segments(
    polytopes: &[(usize, &[HalfSpace])],
    lo: &[Rational],
    hi: &[Rational],
) -> Result<Vec<(usize, [Rational; 4])>> {
    let zero = Rational::from(0u32);
    let mut out = Vec::new();
    for &(id, constraints) in polytopes {
        match lo.len() {
            1 => {
                if let Some((a, b)) = plot::interval(constraints, &lo[0], &hi[0]) {
                    out.push((id, [a, zero.clone(), b, zero.clone()]));
                }
            }
            2 => {
                let poly = plot::convex_polygon(constraints, lo, hi);
                for i in 0..poly.len() {
                    let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
                    out.push((id, [p[0].clone(), p[1].clone(), q[0].clone(), q[1].clone()]));
                }
            }
            d => {
                return Err(Error::Input(format!(
                    "plot export needs one or two parameters, got {d}"
                )))
            }
        }
    }
    Ok(out)
}

fn plot_csv(inst: &Instance, target: Target, policy: RankDropPolicy) -> Result<String> {
    let rows = match target {
        Target::Solve => {
            let weights = inst.weights()?;
            let arrangement =
                std::sync::Arc::new(build_arrangement(&inst.matroid, weights, &inst.bbox)?);
            let (lo, hi) = arrangement.display_bounds();
            let sol =
                solve_on_arrangement(&inst.matroid, weights, arrangement, Algorithm::Pivot, true)?;
            let polys: Vec<(usize, &[HalfSpace])> = sol
                .regions
                .iter()
                .map(|r| (r.id, r.constraints.as_slice()))
                .collect();
            segments(&polys, &lo, &hi)?
        }
        Target::Interdict => {
            let sol = solve_interdiction(&inst.matroid, inst.weights()?, &inst.bbox, policy)?;
            let (lo, hi) = sol.arrangement.display_bounds();
            let polys: Vec<(usize, &[HalfSpace])> = sol
                .pieces
                .iter()
                .flat_map(|p| {
                    p.parts
                        .iter()
                        .map(move |part| (p.id, part.constraints.as_slice()))
                })
                .collect();
            segments(&polys, &lo, &hi)?
        }
        Target::Wsd => {
            let dec = decompose_weight_set(&inst.matroid, inst.costs()?)?;
            let (lo, hi) = dec.arrangement.display_bounds();
            let constraints: Vec<(usize, Vec<HalfSpace>)> = dec
                .components
                .iter()
                .map(|c| {
                    (
                        c.id,
                        c.facets.iter().map(|f| f.constraint.clone()).collect(),
                    )
                })
                .collect();
            let polys: Vec<(usize, &[HalfSpace])> = constraints
                .iter()
                .map(|(i, c)| (*i, c.as_slice()))
                .collect();
            segments(&polys, &lo, &hi)?
        }
    };
    let mut csv = String::from("region_id,x1,y1,x2,y2\n");
    for (id, [x1, y1, x2, y2]) in rows {
        csv.push_str(&format!(
            "{id},{},{},{},{}\n",
            to_f64(&x1),
            to_f64(&y1),
            to_f64(&x2),
            to_f64(&y2)
        ));
    }
    Ok(csv)
}
