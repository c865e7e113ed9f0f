use std::path::Path;
use std::process::{Command, Output};

use tangency_lab::patterns::{EdgeOrderedGraph, ZeroOneMatrix};
use tangency_lab::synthesis::CurveFamily;
use tangency_lab::verifier::TangencyReport;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangency-lab"))
        .args(args)
        .env("TANGENCY_LAB_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn pipeline(dir: &TempDir, k: &str, grounded: bool) -> Output {
    let mut args = vec!["pipeline", "--k", k, "--outdir", p(dir.path())];
    if grounded {
        args.push("--grounded");
    }
    run(&args)
}

fn report_in(dir: &TempDir) -> TangencyReport {
    TangencyReport::from_json(&std::fs::read_to_string(dir.path().join("tangency_report.json")).unwrap()).unwrap()
}

#[test]
fn pipeline_k1() {
    let dir = TempDir::new().unwrap();
    let out = pipeline(&dir, "1", false);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("tangencies 1,"));
    for name in ["point_line_system.json", "curve_family.json", "tangency_report.json", "figure.svg"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    assert_eq!(report_in(&dir).total_tangencies, 1);
}

#[test]
fn pipeline_k2_grounded() {
    let dir = TempDir::new().unwrap();
    let out = pipeline(&dir, "2", true);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(report_in(&dir).total_tangencies >= 16);
    let family = CurveFamily::from_json(&std::fs::read_to_string(dir.path().join("curve_family.json")).unwrap()).unwrap();
    assert!(family.grounded);
    assert!(!stdout(&out).contains("grounded:"));
}

#[test]
fn bad_arguments_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&pipeline(&dir, "0", false)), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["verify", "--in", p(&missing)])), 2);
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"curves\": 3}").unwrap();
    assert_eq!(code(&run(&["verify", "--in", p(&junk)])), 2);
    assert_eq!(code(&run(&["check-p5", "--in", p(&junk)])), 2);
}

#[test]
fn stages_chain_through_files() {
    let dir = TempDir::new().unwrap();
    let sys = dir.path().join("sys.json");
    let fam = dir.path().join("fam.json");
    let rep = dir.path().join("rep.json");
    assert_eq!(code(&run(&["gen-incidences", "--k", "2", "--out", p(&sys)])), 0);
    let out = run(&["gen-incidences", "--k", "2", "--shear-m", "2", "--out", p(&sys)]);
    assert_eq!(code(&out), 1, "shared x must fail");
    assert_eq!(code(&run(&["gen-incidences", "--k", "1", "--out", p(&sys)])), 0);
    assert_eq!(code(&run(&["synth-curves", "--in", p(&sys), "--out", p(&fam)])), 0);
    let out = run(&["count-tangencies", "--in", p(&fam), "--out", p(&rep)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("tangencies 1,"));
    assert_eq!(code(&run(&["verify", "--in", p(&fam)])), 0);
}

#[test]
fn verify_fails_on_same_color_crossing() {
    let dir = TempDir::new().unwrap();
    let fam = dir.path().join("fam.json");
    let sys = dir.path().join("sys.json");
    assert_eq!(code(&run(&["gen-incidences", "--k", "1", "--out", p(&sys)])), 0);
    assert_eq!(code(&run(&["synth-curves", "--in", p(&sys), "--out", p(&fam)])), 0);
    let mut family = CurveFamily::from_json(&std::fs::read_to_string(&fam).unwrap()).unwrap();
    // Duplicate a curve shifted slightly: it crosses or overlaps its twin.
    let mut twin = family.curves[0].clone();
    twin.id = family.curves.len();
    let mut vs = twin.polyline.vertices.clone();
    vs.reverse();
    twin.polyline = tangency_lab::Polyline::new(vs).unwrap();
    family.curves.push(twin);
    std::fs::write(&fam, family.to_json()).unwrap();
    let out = run(&["verify", "--in", p(&fam)]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
}

#[test]
fn svg_is_deterministic_and_marks_tangencies() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&pipeline(&dir, "1", false)), 0);
    let fam = dir.path().join("curve_family.json");
    let rep = dir.path().join("tangency_report.json");
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        assert_eq!(code(&run(&["emit-svg", "--family", p(&fam), "--report", p(&rep), "--out", p(out)])), 0);
    }
    let svg = std::fs::read(&a).unwrap();
    assert_eq!(svg, std::fs::read(&b).unwrap());
    let svg = String::from_utf8(svg).unwrap();
    // One path per curve, the isolated blue point included.
    assert_eq!(svg.matches("<path ").count(), 3);
    assert_eq!(svg.matches("<circle ").count(), 1);
    assert_eq!(svg.matches("<line ").count(), 0);
    assert_eq!(svg, std::fs::read_to_string(dir.path().join("figure.svg")).unwrap());

    let grounded = TempDir::new().unwrap();
    assert_eq!(code(&pipeline(&grounded, "1", true)), 0);
    let svg = std::fs::read_to_string(grounded.path().join("figure.svg")).unwrap();
    assert_eq!(svg.matches("<line ").count(), 2);
}

#[test]
fn scaling_table_has_seven_columns() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("scaling.csv");
    let out = run(&["scaling-table", "--k-max", "3", "--out", p(&csv)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("slope "));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.split(',').count() == 7));
    assert_eq!(lines[0], "k,n_points,n_lines,n_curves,incidences,tangencies_certified,ratio");
    let row: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(&row[..5], ["3", "54", "27", "81", "81"]);
    assert!(row[5].parse::<usize>().unwrap() >= 81);

    let out = run(&["scaling-table", "--k-max", "3", "--max-red-vertices", "2000", "--out", p(&csv)]);
    assert_eq!(code(&out), 1);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 3, "k=1,2 rows kept");

    assert_eq!(code(&run(&["scaling-table", "--k-max", "6", "--out", p(&csv)])), 2);
    assert_eq!(code(&run(&["scaling-table", "--k-max", "1", "--out", p(&csv)])), 2);
}

#[test]
fn pattern_checks_exit_codes() {
    let dir = TempDir::new().unwrap();
    let path = vec![(0, 1), (1, 2), (2, 3), (3, 4)];
    let hit = dir.path().join("hit.json");
    let miss = dir.path().join("miss.json");
    std::fs::write(&hit, EdgeOrderedGraph::new(5, path.clone(), vec![1, 3, 2, 4]).unwrap().to_json()).unwrap();
    std::fs::write(&miss, EdgeOrderedGraph::in_listed_order(5, path).unwrap().to_json()).unwrap();
    let out = run(&["check-p5", "--in", p(&hit)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("witness"));
    assert_eq!(code(&run(&["check-p5", "--in", p(&miss)])), 0);

    let full = ZeroOneMatrix::from_rows(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).unwrap();
    let hollow = ZeroOneMatrix::from_rows(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap();
    std::fs::write(&hit, full.to_json()).unwrap();
    std::fs::write(&miss, hollow.to_json()).unwrap();
    assert_eq!(code(&run(&["check-positive-c6", "--in", p(&hit)])), 1);
    assert_eq!(code(&run(&["check-positive-c6", "--in", p(&miss)])), 0);
}

#[test]
fn claim_p2_on_grounded_family() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&pipeline(&dir, "2", true)), 0);
    let out = run(&["claim-p2", "--in", p(&dir.path().join("curve_family.json"))]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("matrix 8x16, positive 6-cycle none, 4-cycle none"));
}

#[test]
fn extremal_search_output() {
    let out = run(&["extremal-search", "--pattern", "p5", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["max"], 6);
    let out = run(&["extremal-search", "--pattern", "posc6", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["max"], 4);
    assert_eq!(code(&run(&["extremal-search", "--pattern", "posc6", "--n", "9"])), 2);
}
