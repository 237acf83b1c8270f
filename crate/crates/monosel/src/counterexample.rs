//! Built-in demonstrations: `nonfaithful` and `hermitian-join`.

use std::fmt::Write;

use monosel_core::hermitian::{default_instance, Grid};
use monosel_core::{
    brute_force_sup, select_sup, DirectedFamily, Element, SelectionConfig, Space, Sym2,
    WeightFunctional,
};

use crate::error::{CliError, Result};
use crate::numfmt;
use crate::suites::refute_parallel;

pub const NAMES: [&str; 2] = ["nonfaithful", "hermitian-join"];

#[derive(Debug, Clone)]
pub struct Demonstration {
    pub name: &'static str,
    /// Whether the demonstrated phenomenon was reproduced.
    pub reproduced: bool,
    pub lines: Vec<(String, String)>,
}

impl Demonstration {
    fn new(name: &'static str) -> Self {
        Demonstration {
            name,
            reproduced: true,
            lines: Vec::new(),
        }
    }

    fn line(&mut self, key: &str, value: impl Into<String>) {
        self.lines.push((key.to_string(), value.into()));
    }

    fn require(&mut self, ok: bool) {
        self.reproduced &= ok;
    }

    pub fn render(&self) -> String {
        let mut out = format!("counterexample: {}\n", self.name);
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "outcome: {}", if self.reproduced { "reproduced" } else { "not reproduced" });
        out
    }
}

pub fn run(name: &str) -> Result<Demonstration> {
    match name {
        "nonfaithful" => nonfaithful(),
        "hermitian-join" => hermitian_join(),
        other => Err(CliError::Input(format!(
            "unknown counterexample {other:?} (expected {})",
            NAMES.join(" or ")
        ))),
    }
}

/// The family `{(0,0), (0,1)}` under `ψ = (1, 0)`, whose supremum ψ cannot see.
pub fn nonfaithful_family() -> (DirectedFamily, WeightFunctional) {
    let space = Space::coordinate(2).expect("dimension 2");
    let fam = DirectedFamily::finite(
        space,
        vec![Element::Vector(vec![0.0, 0.0]), Element::Vector(vec![0.0, 1.0])],
    )
    .expect("two vectors");
    let psi = WeightFunctional::new(vec![1.0, 0.0]).expect("nonnegative weights");
    (fam, psi)
}

fn nonfaithful() -> Result<Demonstration> {
    let mut d = Demonstration::new("nonfaithful");
    let (fam, psi) = nonfaithful_family();
    d.line("weights", numfmt::vector(psi.weights()));
    d.line("family", "[0, 0], [0, 1]");

    let strict = select_sup(&fam, &psi, &SelectionConfig::default(), None);
    match &strict {
        Err(e) => d.line("without_force", format!("rejected ({e})")),
        Ok(_) => d.line("without_force", "accepted"),
    }
    d.require(strict.is_err());

    let forced = SelectionConfig {
        force_nonfaithful: true,
        ..SelectionConfig::default()
    };
    let r = select_sup(&fam, &psi, &forced, None)?;
    let sup = brute_force_sup(&fam)?;
    let psi_sup = psi.evaluate(&sup)?;
    let mismatch = sup.sub(&r.j_star)?;
    d.line("j_star", numfmt::element(&r.j_star));
    d.line("sup", numfmt::element(&sup));
    d.line("psi_sup_estimate", numfmt::num(r.psi_sup_estimate));
    d.line("psi_of_sup", numfmt::num(psi_sup));
    d.line("gap", numfmt::num(r.gap));
    d.line("mismatch", numfmt::element(&mismatch));
    let coords = mismatch.coords().unwrap_or_default();
    d.require(r.psi_sup_estimate == psi_sup && r.gap == 0.0 && coords[1] >= 1.0);
    Ok(d)
}

fn hermitian_join() -> Result<Demonstration> {
    let mut d = Demonstration::new("hermitian-join");
    let inst = default_instance();
    let sym = |m: &Sym2| numfmt::element(&Element::Matrix(*m));
    d.line("P", sym(&inst.p));
    d.line("Q", sym(&inst.q));
    d.line("U1", sym(&inst.u1));
    d.line("U2", sym(&inst.u2));
    d.line("upper_bounds_hold", inst.upper_bounds_hold().to_string());
    d.line("bounds_incomparable", inst.bounds_incomparable().to_string());
    d.line("lambda_min(U2-U1)", numfmt::num(inst.u2.sub(&inst.u1).min_eigenvalue()));
    let identity_margin = inst.u2.sub(&Sym2::identity()).min_eigenvalue();
    d.line("lambda_min(U2-I)", numfmt::num(identity_margin));

    let r = refute_parallel(&inst, &Grid::default())?;
    d.line("delta", numfmt::num(r.delta));
    d.line("candidates", r.candidates.to_string());
    d.line("near_feasible", r.near_feasible.to_string());
    d.line("max_margin", numfmt::num(r.max_margin));
    if let Some(s) = &r.argmax {
        d.line("argmax", sym(s));
    }
    d.line(
        "conclusion",
        if r.refuted() {
            "no S with P, Q <= S <= U1 lies below U2; {P, Q} has no supremum"
        } else {
            "inconclusive"
        },
    );
    d.require(inst.upper_bounds_hold() && inst.bounds_incomparable() && r.refuted());
    Ok(d)
}
