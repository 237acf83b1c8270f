//! Seeded randomized property suites.
//!
//! Case `k` of a suite draws from its own ChaCha8 stream, so results do not
//! depend on how cases are spread over threads.

use std::fmt;
use std::thread;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use monosel_core::gns::{
    parseval_check, random_disjoint_family, sigma_finite_count_sampled, verify_kills_null,
    FiniteState, GnsModel, NullCheck,
};
use monosel_core::hermitian::{default_instance, refute_supremum_chunk, Grid, NoSupInstance, RefutationReport};
use monosel_core::{
    brute_force_sup, check_normal, join_closure, select_sup, stream_family, verify_residual_bound,
    DirectedFamily, Element, PositiveMap, SelectionConfig, Space, StreamPreset, WeightFunctional,
};

use crate::error::{CliError, Result};
use crate::numfmt;

pub const SUITES: [&str; 5] = ["selection", "maps", "gns", "hermitian", "lattice"];

/// Most generators of a random finite family.
pub const MAX_GENERATORS: usize = 6;
pub const MAX_DIM: usize = 8;

/// Violations quoted in a report; the rest are only counted.
const QUOTED_VIOLATIONS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub violations: Vec<String>,
    pub metrics: Vec<(String, String)>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            cases: 0,
            passed: 0,
            violations: Vec::new(),
            metrics: Vec::new(),
        }
    }

    fn record(&mut self, outcome: CaseOutcome) {
        self.cases += 1;
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => self.violations.push(msg),
        }
    }

    fn metric(&mut self, key: &str, value: impl Into<String>) {
        self.metrics.push((key.to_string(), value.into()));
    }

    pub fn failed(&self) -> usize {
        self.cases - self.passed
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "cases: {}", self.cases)?;
        writeln!(f, "passed: {}", self.passed)?;
        writeln!(f, "failed: {}", self.failed())?;
        for (k, v) in &self.metrics {
            writeln!(f, "{k}: {v}")?;
        }
        for v in self.violations.iter().take(QUOTED_VIOLATIONS) {
            writeln!(f, "violation: {v}")?;
        }
        if self.violations.len() > QUOTED_VIOLATIONS {
            writeln!(f, "violation: ... {} more", self.violations.len() - QUOTED_VIOLATIONS)?;
        }
        writeln!(f, "outcome: {}", if self.ok() { "pass" } else { "fail" })
    }
}

type CaseOutcome = std::result::Result<(), String>;

/// The random stream for case `case` of suite number `suite`.
pub fn case_rng(seed: u64, suite: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite << 40) | case as u64);
    rng
}

fn workers(jobs: usize) -> usize {
    thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(jobs)
        .max(1)
}

/// Runs `f(0..n)` on scoped threads, results in index order.
pub fn par_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = workers(n);
    let chunk = n.div_ceil(threads).max(1);
    let f = &f;
    thread::scope(|scope| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|start| scope.spawn(move || (start..(start + chunk).min(n)).map(f).collect::<Vec<T>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("suite worker panicked"))
            .collect()
    })
}

// Generators.

/// A coordinate: half the time a small integer, so that ties are common.
fn coordinate<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.gen_bool(0.5) {
        rng.gen_range(-3i32..=3) as f64
    } else {
        rng.gen_range(-10.0..10.0)
    }
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Element {
    Element::Vector((0..dim).map(|_| coordinate(rng)).collect())
}

/// Strictly positive weights in `[0.05, 1)`.
pub fn random_faithful<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> WeightFunctional {
    WeightFunctional::new((0..dim).map(|_| rng.gen_range(0.05..1.0)).collect())
        .expect("positive finite weights")
}

/// Join closure of 1 to 6 random generators in dimension 1 to 8.
pub fn random_finite_family<R: Rng + ?Sized>(rng: &mut R) -> DirectedFamily {
    let dim = rng.gen_range(1..=MAX_DIM);
    let count = rng.gen_range(1..=MAX_GENERATORS);
    let generators = (0..count).map(|_| random_vector(rng, dim)).collect();
    join_closure(generators, Space::coordinate(dim).expect("positive dimension"))
        .expect("closure of finite vectors")
}

pub fn random_stream_preset<R: Rng + ?Sized>(rng: &mut R) -> StreamPreset {
    let dim = rng.gen_range(1..=MAX_DIM);
    match rng.gen_range(0..3) {
        0 => StreamPreset::ChainTo {
            target: (0..dim).map(|_| rng.gen_range(0.1..10.0)).collect(),
            rate: rng.gen_range(0.2..0.9),
        },
        1 => StreamPreset::BoxApproach {
            target: (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect(),
        },
        _ => StreamPreset::RandomDirected {
            dim,
            seed: rng.gen(),
            count: rng.gen_range(1..=monosel_core::family::MAX_RANDOM_GENERATORS),
        },
    }
}

pub fn random_stream_family<R: Rng + ?Sized>(rng: &mut R, scan_budget: usize) -> DirectedFamily {
    let preset = random_stream_preset(rng);
    let space = Space::coordinate(preset.dim()).expect("positive dimension");
    stream_family(&preset, space, scan_budget).expect("valid preset")
}

/// Nonnegative `rows × dim` matrix, about a third of the entries zero.
pub fn random_positive_map<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> PositiveMap {
    let rows = rng.gen_range(1..=MAX_DIM);
    let matrix = (0..rows)
        .map(|_| {
            (0..dim)
                .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..2.0) })
                .collect()
        })
        .collect();
    PositiveMap::new(matrix).expect("nonnegative entries")
}

/// Normalized weights, some of them possibly zero.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize, allow_zero: bool) -> FiniteState {
    loop {
        let raw: Vec<f64> = (0..n)
            .map(|_| {
                if allow_zero && rng.gen_bool(0.2) {
                    0.0
                } else {
                    rng.gen_range(0.01..1.0)
                }
            })
            .collect();
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            continue;
        }
        let mut w: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let last = w.iter().rposition(|&x| x > 0.0).expect("some positive weight");
        let rest: f64 = w.iter().enumerate().filter(|&(i, _)| i != last).map(|(_, x)| x).sum();
        w[last] = 1.0 - rest;
        if let Ok(s) = FiniteState::new(w) {
            return s;
        }
    }
}

// Cases.

fn selection_finite_case(rng: &mut ChaCha8Rng) -> Result<CaseOutcome> {
    let fam = random_finite_family(rng);
    let psi = random_faithful(rng, fam.space().dim());
    let r = select_sup(&fam, &psi, &SelectionConfig::default(), None)?;
    let oracle = brute_force_sup(&fam)?;
    if !fam.space().order_eq(&r.j_star, &oracle)? {
        return Ok(Err(format!(
            "j_star {} differs from oracle {}",
            numfmt::element(&r.j_star),
            numfmt::element(&oracle)
        )));
    }
    if r.gap != 0.0 || !verify_residual_bound(&r) {
        return Ok(Err(format!("gap certificate fails (gap {})", numfmt::num(r.gap))));
    }
    Ok(Ok(()))
}

fn selection_stream_case(rng: &mut ChaCha8Rng) -> Result<CaseOutcome> {
    let fam = random_stream_family(rng, 256);
    let psi = random_faithful(rng, fam.space().dim());
    let r = select_sup(&fam, &psi, &SelectionConfig::default(), None)?;
    if !r.converged || !verify_residual_bound(&r) {
        return Ok(Err(format!("stream run: gap {}", numfmt::num(r.gap))));
    }
    if let Some(bound) = fam.bound() {
        if !fam.space().leq(&r.j_star, bound)? {
            return Ok(Err("stream run: j_star exceeds the declared supremum".into()));
        }
    }
    Ok(Ok(()))
}

fn maps_finite_case(rng: &mut ChaCha8Rng) -> Result<CaseOutcome> {
    let fam = random_finite_family(rng);
    let dim = fam.space().dim();
    let phi = random_positive_map(rng, dim);
    let psi_dom = random_faithful(rng, dim);
    let psi_cod = random_faithful(rng, phi.codomain_dim());
    let r = check_normal(&phi, &fam, &psi_dom, &psi_cod, &SelectionConfig::default())?;
    if !(r.holds && r.deviation <= 1e-9) {
        return Ok(Err(format!("finite normality deviation {}", numfmt::num(r.deviation))));
    }
    Ok(Ok(()))
}

fn maps_stream_case(rng: &mut ChaCha8Rng) -> Result<CaseOutcome> {
    let fam = random_stream_family(rng, 256);
    let dim = fam.space().dim();
    let phi = random_positive_map(rng, dim);
    let psi_dom = random_faithful(rng, dim);
    let psi_cod = random_faithful(rng, phi.codomain_dim());
    let r = check_normal(&phi, &fam, &psi_dom, &psi_cod, &SelectionConfig::default())?;
    if !r.holds {
        return Ok(Err(format!(
            "stream normality deviation {} exceeds slack {}",
            numfmt::num(r.deviation),
            numfmt::num(r.slack)
        )));
    }
    Ok(Ok(()))
}

fn gns_case(rng: &mut ChaCha8Rng) -> Result<CaseOutcome> {
    let n = rng.gen_range(1..=64);
    let state = random_state(rng, n, true);
    let faithful = state.is_faithful();
    let model = GnsModel::new(state);
    let family = random_disjoint_family(n, rng);
    let p = parseval_check(&model, &family)?;
    if !p.equal {
        return Ok(Err(format!(
            "parseval n={n}: lhs {} rhs {}",
            numfmt::num(p.lhs),
            numfmt::num(p.rhs)
        )));
    }
    match (faithful, verify_kills_null(&model, rng, 64)) {
        (true, NullCheck::Counterexample(_)) => {
            return Ok(Err(format!("faithful state n={n} annihilates a nonzero projection")))
        }
        (false, NullCheck::Holds { .. }) => {
            return Ok(Err(format!("non-faithful state n={n} produced no witness")))
        }
        _ => {}
    }
    let eps = [1.0, 0.5, 0.25, 0.1][rng.gen_range(0..4)];
    let count = sigma_finite_count_sampled(&model, eps, rng, 8)?;
    if !count.holds() {
        return Ok(Err(format!("counting bound n={n} eps={eps}: {} > {}", count.max_count, count.bound)));
    }
    Ok(Ok(()))
}

/// Checks the vector-lattice laws on one random triple; returns the first
/// violated law.
pub fn lattice_case<R: Rng + ?Sized>(rng: &mut R) -> Result<CaseOutcome> {
    let dim = rng.gen_range(1..=MAX_DIM);
    let space = Space::coordinate(dim)?;
    let x = random_vector(rng, dim);
    let y = random_vector(rng, dim);
    let z = random_vector(rng, dim);
    let zero = space.zero();
    let j = space.join(&x, &y)?;
    let m = space.meet(&x, &y)?;

    let fail = |law: &str| Ok(Err(format!("dim {dim}: {law}")));
    if !(space.leq_exact(&x, &j)? && space.leq_exact(&y, &j)?) {
        return fail("join is not an upper bound");
    }
    if !(space.leq_exact(&m, &x)? && space.leq_exact(&m, &y)?) {
        return fail("meet is not a lower bound");
    }
    // Least upper bound against z and a bound built above j; dually for meet.
    let shift = |rng: &mut R| Element::Vector((0..dim).map(|_| rng.gen_range(0.0..3.0)).collect());
    let above = j.add(&shift(rng))?;
    let below = m.sub(&shift(rng))?;
    for u in [&z, &above] {
        if space.leq_exact(&x, u)? && space.leq_exact(&y, u)? && !space.leq_exact(&j, u)? {
            return fail("join is not least");
        }
    }
    for l in [&z, &below] {
        if space.leq_exact(l, &x)? && space.leq_exact(l, &y)? && !space.leq_exact(l, &m)? {
            return fail("meet is not greatest");
        }
    }
    if x.add(&y)? != j.add(&m)? {
        return fail("x + y != join + meet");
    }
    if space.pos_part(&x)? != space.join(&x, &zero)? {
        return fail("pos_part(x) != join(x, 0)");
    }
    let g = x.add(&Element::Vector((0..dim).map(|_| rng.gen_range(0.0..5.0)).collect()))?;
    let d = g.sub(&x)?;
    if !space.leq_exact(&x, &g)? || space.pos_part(&d)? != d {
        return fail("(g - j)+ != g - j for g >= j");
    }
    if space.join(&x, &space.meet(&x, &y)?)? != x || space.meet(&x, &space.join(&x, &y)?)? != x {
        return fail("absorption");
    }
    Ok(Ok(()))
}

/// The hermitian grid search over parallel chunks of the first entry.
pub fn refute_parallel(inst: &NoSupInstance, grid: &Grid) -> Result<RefutationReport> {
    let n = grid.points();
    let threads = workers(n);
    let chunk = n.div_ceil(threads);
    let reports = par_map(threads, |t| refute_supremum_chunk(inst, grid, t * chunk..(t + 1) * chunk));
    let mut it = reports.into_iter();
    let first = it.next().expect("at least one chunk")?;
    it.try_fold(first, |acc, r| Ok(acc.merge(&r?)))
}

fn run_cases(
    report: &mut SuiteReport,
    label: &str,
    seed: u64,
    suite: u64,
    count: usize,
    case: fn(&mut ChaCha8Rng) -> Result<CaseOutcome>,
) -> Result<()> {
    let outcomes = par_map(count, |k| case(&mut case_rng(seed, suite, k)));
    for (k, outcome) in outcomes.into_iter().enumerate() {
        report.record(outcome?.map_err(|e| format!("{label} case {k}: {e}")));
    }
    Ok(())
}

fn selection(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("selection", seed);
    run_cases(&mut report, "finite", seed, 1, cases, selection_finite_case)?;
    let streams = cases.div_ceil(10);
    run_cases(&mut report, "stream", seed, 2, streams, selection_stream_case)?;
    report.metric("finite_runs", cases.to_string());
    report.metric("stream_runs", streams.to_string());
    Ok(report)
}

fn maps(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("maps", seed);
    run_cases(&mut report, "finite", seed, 3, cases, maps_finite_case)?;
    let streams = cases.div_ceil(2);
    run_cases(&mut report, "stream", seed, 4, streams, maps_stream_case)?;
    report.metric("finite_pairs", cases.to_string());
    report.metric("stream_pairs", streams.to_string());
    Ok(report)
}

fn gns(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("gns", seed);
    run_cases(&mut report, "random", seed, 5, cases, gns_case)?;
    Ok(report)
}

fn lattice(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lattice", seed);
    run_cases(&mut report, "triple", seed, 6, cases, lattice_case)?;
    Ok(report)
}

/// The grid is fixed; `seed` and `cases` do not apply.
fn hermitian(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("hermitian", seed);
    let inst = default_instance();
    let r = refute_parallel(&inst, &Grid::default())?;
    report.record(if r.refuted() {
        Ok(())
    } else {
        Err(format!("max margin {} above -0.5", numfmt::num(r.max_margin)))
    });
    report.metric("delta", numfmt::num(r.delta));
    report.metric("candidates", r.candidates.to_string());
    report.metric("near_feasible", r.near_feasible.to_string());
    report.metric("max_margin", numfmt::num(r.max_margin));
    Ok(report)
}

/// Runs one suite, or all of them in a fixed order.
pub fn run_suite(name: &str, seed: u64, cases: usize) -> Result<Vec<SuiteReport>> {
    if cases == 0 {
        return Err(CliError::Input("cases must be at least 1".into()));
    }
    let one = |n: &str| -> Result<SuiteReport> {
        match n {
            "selection" => selection(seed, cases),
            "maps" => maps(seed, cases),
            "gns" => gns(seed, cases),
            "hermitian" => hermitian(seed),
            "lattice" => lattice(seed, cases),
            _ => unreachable!("suite names are checked by the caller"),
        }
    };
    match name {
        "all" => SUITES.iter().map(|n| one(n)).collect(),
        n if SUITES.contains(&n) => Ok(vec![one(n)?]),
        other => Err(CliError::Input(format!(
            "unknown suite {other:?} (expected one of {}, all)",
            SUITES.join(", ")
        ))),
    }
}
