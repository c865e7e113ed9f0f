use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tangency_cli::pipeline::{
    build_family, build_family_within, build_system, certify, loglog_slope, scaling_csv, PipelineRun, ScalingRow,
    DEFAULT_K_CAP,
};
use tangency_cli::svg::render_svg;
use tangency_lab::incidence::PointLineSystem;
use tangency_lab::patterns::{
    c4_witness, check_claim_p2, contains_forbidden_p5, contains_positive_c6, extremal_bruteforce_p5,
    extremal_bruteforce_positive_c6, ordered_adjacency_matrix, star_redraw, BaseChoice, EdgeOrderedGraph,
    ZeroOneMatrix,
};
use tangency_lab::synthesis::{Budget, CurveFamily};
use tangency_lab::verifier::{tangency_report, verify_grounded, TangencyReport};

#[derive(Parser)]
#[command(name = "tangency-lab", version, about = "Red/blue curve families with many tangencies")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Grid point-line system in general position.
    GenIncidences {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        k: i64,
        #[arg(long)]
        shear_m: Option<i64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Red and blue curves realizing every incidence as a tangency.
    SynthCurves {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        grounded: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify all intersections and write the tangency report.
    CountTangencies {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exit 1 if the family has any violation.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Generate, synthesize, verify and draw.
    Pipeline {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        k: i64,
        #[arg(long)]
        grounded: bool,
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
    },
    /// Pipeline for k = 1..=k_max as CSV, with the log-log slope.
    ScalingTable {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        k_max: i64,
        /// Allow k_max above the default cap.
        #[arg(long)]
        force: bool,
        /// Give up on a k once its red curves need more vertices than this.
        #[arg(long)]
        max_red_vertices: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw a family and its tangencies as SVG
    EmitSvg {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search an edge-ordered graph for the ordered five-vertex path.
    CheckP5 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Search a 0-1 matrix for a positive 6-cycle.
    CheckPositiveC6 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Star redrawing and its self-crossing checks.
    ClaimP2 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Brute-force the largest pattern-free graph or matrix of size n
    ExtremalSearch {
        #[arg(long)]
        pattern: Pattern,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Pattern {
    P5,
    Posc6,
}

enum Failure {
    /// Exit 1: the input was read but did not pass.
    Check(String),
    /// Exit 2: bad arguments or unreadable input.
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn stage(e: impl std::fmt::Display) -> Failure {
    Failure::Check(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse<T, E: std::fmt::Display>(path: &Path, f: impl FnOnce(&str) -> Result<T, E>) -> Result<T, Failure> {
    f(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn summary(report: &TangencyReport) -> String {
    format!(
        "tangencies {}, crossing pairs {}, violations {}",
        report.total_tangencies,
        report.crossing_pair_count,
        report.violation_count()
    )
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("TANGENCY_LAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::GenIncidences { k, shear_m, out } => {
            let sys = build_system(k, shear_m).map_err(stage)?;
            write(&out, &sys.to_json())?;
            println!("{} points, {} lines, {} incidences", sys.points.len(), sys.lines.len(), sys.incidences.len());
            Ok(())
        }
        Cmd::SynthCurves { input, grounded, out } => {
            let sys = parse(&input, PointLineSystem::from_json)?;
            let family = build_family(&sys, grounded).map_err(stage)?;
            write(&out, &family.to_json())?;
            println!("{} curves, {} vertices", family.curves.len(), family.vertex_count());
            Ok(())
        }
        Cmd::CountTangencies { input, out } => {
            let family = parse(&input, CurveFamily::from_json)?;
            let report = tangency_report(&family).map_err(stage)?;
            write(&out, &report.to_json())?;
            println!("{}", summary(&report));
            Ok(())
        }
        Cmd::Verify { input } => {
            let family = parse(&input, CurveFamily::from_json)?;
            let report = tangency_report(&family).map_err(stage)?;
            println!("{}", summary(&report));
            let grounded = if family.grounded { verify_grounded(&family) } else { Vec::new() };
            for v in &grounded {
                println!("grounded: {v}");
            }
            if report.is_clean() && grounded.is_empty() {
                Ok(())
            } else {
                Err(Failure::Check("verification failed".into()))
            }
        }
        Cmd::Pipeline { k, grounded, outdir } => {
            std::fs::create_dir_all(&outdir).map_err(|e| usage(format!("{}: {e}", outdir.display())))?;
            let sys = build_system(k, None).map_err(stage)?;
            write(&outdir.join("point_line_system.json"), &sys.to_json())?;
            let family = build_family(&sys, grounded).map_err(stage)?;
            write(&outdir.join("curve_family.json"), &family.to_json())?;
            let run = certify(sys, family).map_err(stage)?;
            write(&outdir.join("tangency_report.json"), &run.report.to_json())?;
            write(&outdir.join("figure.svg"), &render_svg(&run.family, &run.report))?;
            report_run(&run)
        }
        Cmd::ScalingTable { k_max, force, max_red_vertices, out } => {
            if k_max > DEFAULT_K_CAP && !force {
                return Err(usage(format!("k_max above {DEFAULT_K_CAP} needs --force")));
            }
            let budget = Budget { max_red_vertices, deadline: None };
            let mut rows = Vec::new();
            for k in 1..=k_max {
                let sys = build_system(k, None).map_err(stage)?;
                let family = match build_family_within(&sys, false, &budget) {
                    Ok(f) => f,
                    Err(e) => {
                        // Keep the rows that did finish.
                        write(&out, &scaling_csv(&rows))?;
                        return Err(stage(e));
                    }
                };
                let run = certify(sys, family).map_err(stage)?;
                let row = ScalingRow::from_run(k, &run);
                println!("{}", row.csv_line());
                rows.push(row);
            }
            write(&out, &scaling_csv(&rows))?;
            match loglog_slope(&rows) {
                Some(s) => println!("slope {s:.4}"),
                None => println!("slope undefined"),
            }
            Ok(())
        }
        Cmd::EmitSvg { family, report, out } => {
            let f = parse(&family, CurveFamily::from_json)?;
            let r = parse(&report, TangencyReport::from_json)?;
            write(&out, &render_svg(&f, &r))
        }
        Cmd::CheckP5 { input } => {
            let g = parse(&input, EdgeOrderedGraph::from_json)?;
            match contains_forbidden_p5(&g) {
                None => {
                    println!("none");
                    Ok(())
                }
                Some(w) => {
                    println!("witness {w:?}");
                    Err(Failure::Check("ordered path found".into()))
                }
            }
        }
        Cmd::CheckPositiveC6 { input } => {
            let m = parse(&input, ZeroOneMatrix::from_json)?;
            match contains_positive_c6(&m) {
                None => {
                    println!("none");
                    Ok(())
                }
                Some(w) => {
                    println!("witness rows {:?} cols {:?}", w.rows, w.cols);
                    Err(Failure::Check("positive 6-cycle found".into()))
                }
            }
        }
        Cmd::ClaimP2 { input } => {
            let family = parse(&input, CurveFamily::from_json)?;
            let report = tangency_report(&family).map_err(stage)?;
            let choice = if family.grounded { BaseChoice::Grounded } else { BaseChoice::CurveStart };
            let g = star_redraw(&family, &report, choice).map_err(stage)?;
            let claim = check_claim_p2(&g);
            println!(
                "edges {}, crossing part pairs {}, violations: 2-edge paths {}, 4-cycles {}, 5-part windows {}",
                g.edges.len(),
                g.crossing_relation.len(),
                claim.two_edge_paths.len(),
                claim.four_cycles.len(),
                claim.five_part_windows.len()
            );
            let mut ok = claim.is_ok();
            if family.grounded {
                let m = ordered_adjacency_matrix(&g).map_err(stage)?;
                let c6 = contains_positive_c6(&m);
                let c4 = c4_witness(&m);
                println!(
                    "matrix {}x{}, positive 6-cycle {}, 4-cycle {}",
                    m.rows,
                    m.cols,
                    if c6.is_some() { "found" } else { "none" },
                    if c4.is_some() { "found" } else { "none" }
                );
                ok &= c6.is_none() && c4.is_none();
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Check("self-crossing checks failed".into()))
            }
        }
        Cmd::ExtremalSearch { pattern, n } => {
            let json = match pattern {
                Pattern::P5 => {
                    let (m, g) = extremal_bruteforce_p5(n).map_err(usage)?;
                    format!(r#"{{"pattern":"p5","n":{n},"max":{m},"witness":{}}}"#, g.to_json())
                }
                Pattern::Posc6 => {
                    let (m, w) = extremal_bruteforce_positive_c6(n).map_err(usage)?;
                    format!(r#"{{"pattern":"posc6","n":{n},"max":{m},"witness":{}}}"#, w.to_json())
                }
            };
            println!("{json}");
            Ok(())
        }
    }
}

fn report_run(run: &PipelineRun) -> Outcome {
    println!("{}", summary(&run.report));
    for v in &run.grounded_violations {
        println!("grounded: {v}");
    }
    if !run.missing.is_empty() {
        println!("incidences without a tangency: {:?}", run.missing);
    }
    if run.certified() {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}
