//! Runs one scenario and produces its report.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use monosel_core::gns::{parseval_check, FiniteState, GnsModel, Projection};
use monosel_core::{
    brute_force_sup, check_normal, select_sup, verify_residual_bound, Element, TraceRecord,
};

use crate::error::{CliError, Result, EXIT_FAIL, EXIT_PASS};
use crate::numfmt;
use crate::scenario::{Scenario, ScenarioKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NonConverged,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => EXIT_PASS,
            Outcome::Fail | Outcome::NonConverged => EXIT_FAIL,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NonConverged => "non-converged",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub id: String,
    pub outcome: Outcome,
    pub j_star: Option<Element>,
    pub gap: Option<f64>,
    pub residual_max: Option<f64>,
    pub wall_time_ms: f64,
    pub trace_path: Option<PathBuf>,
    /// Further `key: value` lines, in insertion order.
    pub details: Vec<(String, String)>,
}

impl RunReport {
    fn new(id: &str) -> Self {
        RunReport {
            id: id.to_string(),
            outcome: Outcome::Pass,
            j_star: None,
            gap: None,
            residual_max: None,
            wall_time_ms: 0.0,
            trace_path: None,
            details: Vec::new(),
        }
    }

    fn detail(&mut self, key: &str, value: impl Into<String>) {
        self.details.push((key.to_string(), value.into()));
    }

    fn fail_unless(&mut self, ok: bool, check: &str) {
        self.detail(check, if ok { "ok" } else { "violated" });
        if !ok {
            self.outcome = Outcome::Fail;
        }
    }

    /// The report without the wall-time line; identical for identical inputs.
    pub fn render_deterministic(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k}: {v}\n"));
        line("scenario", self.id.clone());
        line("outcome", self.outcome.to_string());
        if let Some(j) = &self.j_star {
            line("j_star", numfmt::element(j));
        }
        if let Some(g) = self.gap {
            line("gap", numfmt::num(g));
        }
        if let Some(r) = self.residual_max {
            line("residual_max", numfmt::num(r));
        }
        for (k, v) in &self.details {
            line(k, v.clone());
        }
        if let Some(p) = &self.trace_path {
            line("trace", p.display().to_string());
        }
        out
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_deterministic())?;
        writeln!(f, "wall_time_ms: {}", numfmt::num(self.wall_time_ms))
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides `config.eps`.
    pub eps: Option<f64>,
    /// Write the per-iteration trace (`n,psi_jn,gap`) here.
    pub trace: Option<PathBuf>,
}

pub fn write_trace(path: &Path, trace: &[TraceRecord]) -> Result<()> {
    let mut out = String::from("n,psi_jn,gap\n");
    for r in trace {
        out.push_str(&format!("{},{},{}\n", r.n, numfmt::num(r.psi), numfmt::num(r.gap)));
    }
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(out.as_bytes()))
        .map_err(|e| CliError::io(path.display().to_string(), e))
}

pub fn run_scenario_file(path: &Path, opts: &RunOptions) -> Result<RunReport> {
    run_scenario(&Scenario::load(path)?, opts)
}

pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = match s.kind {
        ScenarioKind::Sup => run_sup(s, opts)?,
        ScenarioKind::Normal => run_normal(s, opts)?,
        ScenarioKind::Parseval => run_parseval(s)?,
    };
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn run_sup(s: &Scenario, opts: &RunOptions) -> Result<RunReport> {
    let fam = s.family()?;
    let psi = s.functional()?;
    let mut cfg = s.selection_config();
    if let Some(eps) = opts.eps {
        cfg.eps = eps;
    }
    let v = s.subspace()?;
    let result = select_sup(&fam, &psi, &cfg, v.as_ref())?;
    let space = *fam.space();

    let mut report = RunReport::new(&s.id);
    report.j_star = Some(result.j_star.clone());
    report.gap = Some(result.gap);
    report.residual_max = Some(result.residual_max());
    report.detail("iterations", result.iterations().to_string());
    report.detail("psi_sup_estimate", numfmt::num(result.psi_sup_estimate));
    if let Some(lg) = result.limit_gap {
        report.detail("limit_gap", numfmt::num(lg));
    }
    report.fail_unless(verify_residual_bound(&result), "residual_bound");

    if fam.is_finite() {
        let oracle = brute_force_sup(&fam)?;
        report.fail_unless(space.order_eq(&result.j_star, &oracle)?, "oracle_match");
    }
    if let Some(expected) = s.expected_sup()? {
        // A ψ-gap g leaves each coordinate short by at most g / min weight.
        let slack = space.tolerance() + result.gap.max(cfg.eps) / psi.min_weight();
        let dist = result.j_star.distance_inf(&expected);
        report.detail("expected_distance", numfmt::num(dist));
        report.detail("expected_slack", numfmt::num(slack));
        report.fail_unless(dist <= slack, "expected_sup");
    }
    if let Some(bound) = fam.bound() {
        report.fail_unless(space.leq(&result.j_star, bound)?, "below_bound");
    }
    if let Some(in_v) = result.in_v {
        report.fail_unless(in_v, "in_subspace");
    }
    if !result.converged && report.outcome == Outcome::Pass {
        report.outcome = Outcome::NonConverged;
    }
    if let Some(path) = &opts.trace {
        write_trace(path, &result.trace())?;
        report.trace_path = Some(path.clone());
    }
    Ok(report)
}

fn run_normal(s: &Scenario, opts: &RunOptions) -> Result<RunReport> {
    let fam = s.family()?;
    let psi = s.functional()?;
    let (phi, psi_cod) = s.map()?;
    let mut cfg = s.selection_config();
    if let Some(eps) = opts.eps {
        cfg.eps = eps;
    }
    let r = check_normal(&phi, &fam, &psi, &psi_cod, &cfg)?;
    let mut report = RunReport::new(&s.id);
    report.j_star = Some(r.sup_of_image.clone());
    report.gap = Some(r.codomain_gap);
    report.detail("phi_of_sup", numfmt::element(&r.phi_of_sup));
    report.detail("deviation", numfmt::num(r.deviation));
    report.detail("slack", numfmt::num(r.slack));
    report.fail_unless(r.holds, "normality");
    Ok(report)
}

fn run_parseval(s: &Scenario) -> Result<RunReport> {
    let model = GnsModel::new(FiniteState::new(s.functional.weights.clone())?);
    let supports = s.projections.as_ref().ok_or_else(|| {
        CliError::Schema("projections: required for type \"parseval\"".into())
    })?;
    let projections = supports
        .iter()
        .map(|idx| Projection::from_indices(model.dim(), idx).map_err(CliError::from))
        .collect::<Result<Vec<_>>>()?;
    let r = parseval_check(&model, &projections)?;
    let mut report = RunReport::new(&s.id);
    report.detail("lhs", numfmt::num(r.lhs));
    report.detail("rhs", numfmt::num(r.rhs));
    report.fail_unless(r.equal, "parseval");
    Ok(report)
}
