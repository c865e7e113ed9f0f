use std::collections::BTreeSet;

use thiserror::Error;

use tangency_lab::incidence::{
    default_shear, generate_grid_system, shear_normalize, verify_general_position, IncidenceError,
    PointLineSystem,
};
use tangency_lab::synthesis::{synthesize_within, to_doubly_grounded, Budget, Color, CurveFamily, SynthError};
use tangency_lab::verifier::{tangency_report, verify_grounded, GroundedViolation, TangencyReport, VerifyError};

#[derive(Debug, Error)]
pub enum StageError {
    #[error("gen-incidences: {0}")]
    Incidence(#[from] IncidenceError),
    #[error("gen-incidences: system is not in general position ({0} violations)")]
    Position(usize),
    #[error("synth-curves: {0}")]
    Synthesis(#[from] SynthError),
    #[error("count-tangencies: {0}")]
    Verify(#[from] VerifyError),
}

/// Grid system for `k`, sheared by `shear` or the default amount.
pub fn build_system(k: i64, shear: Option<i64>) -> Result<PointLineSystem, StageError> {
    let raw = generate_grid_system(k)?;
    let sys = shear_normalize(&raw, shear.unwrap_or_else(|| default_shear(k)))?;
    let pos = verify_general_position(&sys);
    if !pos.is_ok() {
        return Err(StageError::Position(pos.violations.len()));
    }
    Ok(sys)
}

/// Curves for a system, grounded on request.
pub fn build_family(sys: &PointLineSystem, grounded: bool) -> Result<CurveFamily, StageError> {
    build_family_within(sys, grounded, &Budget::default())
}

pub fn build_family_within(sys: &PointLineSystem, grounded: bool, budget: &Budget) -> Result<CurveFamily, StageError> {
    let family = synthesize_within(sys, budget)?.family;
    Ok(if grounded { to_doubly_grounded(&family) } else { family })
}

pub struct PipelineRun {
    pub system: PointLineSystem,
    pub family: CurveFamily,
    pub report: TangencyReport,
    pub grounded_violations: Vec<GroundedViolation>,
    /// Incidences `(line, point)` without a certified tangency.
    pub missing: Vec<(usize, usize)>,
}

impl PipelineRun {
    /// Clean report, every incidence certified, and grounded checks passing
    /// when the family is grounded.
    pub fn certified(&self) -> bool {
        self.report.is_clean() && self.missing.is_empty() && self.grounded_violations.is_empty()
    }
}

pub fn run_pipeline(k: i64, grounded: bool) -> Result<PipelineRun, StageError> {
    let system = build_system(k, None)?;
    let family = build_family(&system, grounded)?;
    certify(system, family)
}

/// Verify a family against the system it was built from.
pub fn certify(system: PointLineSystem, family: CurveFamily) -> Result<PipelineRun, StageError> {
    let report = tangency_report(&family)?;
    let grounded_violations = if family.grounded { verify_grounded(&family) } else { Vec::new() };
    let missing = missing_incidences(&system, &family, &report);
    Ok(PipelineRun { system, family, report, grounded_violations, missing })
}

/// Incidences whose red and blue curves are not a certified tangent pair.
pub fn missing_incidences(sys: &PointLineSystem, family: &CurveFamily, report: &TangencyReport) -> Vec<(usize, usize)> {
    let src = |i: usize| family.curves[i].source;
    let got: BTreeSet<(usize, usize)> = report
        .tangent_pairs
        .iter()
        .filter(|(r, b, _)| family.curves[*r].color == Color::Red && family.curves[*b].color == Color::Blue)
        .map(|(r, b, _)| (src(*r), src(*b)))
        .collect();
    sys.incidences.iter().copied().filter(|p| !got.contains(p)).collect()
}

/// Largest `k` the scaling table runs without `--force`.
pub const DEFAULT_K_CAP: i64 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub k: i64,
    pub n_points: usize,
    pub n_lines: usize,
    pub n_curves: usize,
    pub incidences: usize,
    pub tangencies_certified: usize,
}

pub const CSV_HEADER: &str = "k,n_points,n_lines,n_curves,incidences,tangencies_certified,ratio";

impl ScalingRow {
    pub fn from_run(k: i64, run: &PipelineRun) -> Self {
        ScalingRow {
            k,
            n_points: run.system.points.len(),
            n_lines: run.system.lines.len(),
            n_curves: run.family.curves.len(),
            incidences: run.system.incidences.len(),
            tangencies_certified: if run.certified() { run.report.total_tangencies } else { 0 },
        }
    }

    /// `tangencies / n^(4/3)` with `n` the number of curves; display only.
    pub fn ratio(&self) -> f64 {
        self.tangencies_certified as f64 / (self.n_curves as f64).powf(4.0 / 3.0)
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6}",
            self.k,
            self.n_points,
            self.n_lines,
            self.n_curves,
            self.incidences,
            self.tangencies_certified,
            self.ratio()
        )
    }
}

/// Least-squares slope of `log(tangencies)` against `log(n_curves)` over the
/// rows with `k >= 2` and at least one certified tangency.
pub fn loglog_slope(rows: &[ScalingRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.k >= 2 && r.tangencies_certified > 0)
        .map(|r| ((r.n_curves as f64).ln(), (r.tangencies_certified as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// CSV text for the rows, header first.
pub fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv_line());
        s.push('\n');
    }
    s
}
