//! Symmetric 2x2 matrices are not a vector lattice under the Loewner order.
//!
//! `P = [[1,0],[0,0]]` and `Q = [[½,½],[½,½]]` have the two upper bounds
//! `U1 = I` and `U2 = P + Q`, which are incomparable. A supremum `S` of
//! `{P, Q}` would satisfy `P, Q ≤ S ≤ U1` and `S ≤ U2`. Analytically the
//! first three constraints force `S = I` (`S ≥ P` and `S ≤ I` give
//! `S = diag(1, t)`, `S ≥ Q` needs `t ≥ 1`), and `I ≰ U2`. The checker below
//! confirms this numerically on a grid with a uniform margin.

use core::ops::Range;

use crate::error::{Error, Result};
use crate::lattice::{Element, Space, Sym2};

/// Every near-feasible candidate must have `λ_min(U2 - S)` at most this.
pub const REFUTATION_MARGIN: f64 = -0.5;

/// Coarsest grid step for which a conclusion is reported.
pub const MAX_GRID_STEP: f64 = 0.05;

/// Tolerance for the instance's own upper-bound relations.
pub const INSTANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoSupInstance {
    pub p: Sym2,
    pub q: Sym2,
    pub u1: Sym2,
    pub u2: Sym2,
}

/// Candidates `S = [[a,b],[b,c]]` with each entry on `lo, lo + δ, …, hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub delta: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            delta: 0.01,
            lo: -1.0,
            hi: 3.0,
        }
    }
}

impl Grid {
    pub fn points(&self) -> usize {
        libm::floor((self.hi - self.lo) / self.delta + 1e-9) as usize + 1
    }

    pub fn value(&self, k: usize) -> f64 {
        self.lo + k as f64 * self.delta
    }
}

pub fn default_instance() -> NoSupInstance {
    let p = Sym2::new(1.0, 0.0, 0.0);
    let q = Sym2::new(0.5, 0.5, 0.5);
    NoSupInstance {
        p,
        q,
        u1: Sym2::identity(),
        u2: p.add(&q),
    }
}

impl NoSupInstance {
    /// `U1, U2 ≥ P, Q`, each checked by `λ_min ≥ -1e-12`.
    pub fn upper_bounds_hold(&self) -> bool {
        [self.u1, self.u2].iter().all(|u| {
            u.sub(&self.p).min_eigenvalue() >= -INSTANCE_TOLERANCE
                && u.sub(&self.q).min_eigenvalue() >= -INSTANCE_TOLERANCE
        })
    }

    /// Neither `U1 ≤ U2` nor `U2 ≤ U1`.
    pub fn bounds_incomparable(&self) -> bool {
        let space = Space::symmetric2();
        let (u1, u2): (Element, Element) = (self.u1.into(), self.u2.into());
        !space.leq(&u1, &u2).unwrap_or(true) && !space.leq(&u2, &u1).unwrap_or(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefutationReport {
    pub delta: f64,
    pub candidates: u64,
    /// Candidates with `λ_min(S-P), λ_min(S-Q), λ_min(U1-S) ≥ -δ`.
    pub near_feasible: u64,
    /// `max λ_min(U2 - S)` over near-feasible candidates.
    pub max_margin: f64,
    pub argmax: Option<Sym2>,
}

impl RefutationReport {
    fn empty(delta: f64) -> Self {
        RefutationReport {
            delta,
            candidates: 0,
            near_feasible: 0,
            max_margin: f64::NEG_INFINITY,
            argmax: None,
        }
    }

    /// Combines reports of disjoint chunks; `self` wins margin ties.
    pub fn merge(mut self, other: &RefutationReport) -> Self {
        self.candidates += other.candidates;
        self.near_feasible += other.near_feasible;
        if other.max_margin > self.max_margin {
            self.max_margin = other.max_margin;
            self.argmax = other.argmax;
        }
        self
    }

    /// No near-feasible candidate comes close to lying below `U2`.
    pub fn refuted(&self) -> bool {
        self.max_margin <= REFUTATION_MARGIN
    }
}

fn validate(inst: &NoSupInstance, grid: &Grid) -> Result<()> {
    if grid.delta.is_nan() || grid.delta <= 0.0 || grid.delta > MAX_GRID_STEP {
        return Err(Error::GridTooCoarse { delta: grid.delta });
    }
    if grid.hi.is_nan() || grid.lo.is_nan() || grid.hi < grid.lo {
        return Err(Error::InvalidParameter("grid box is empty".into()));
    }
    if !inst.upper_bounds_hold() {
        return Err(Error::InvalidParameter(
            "U1 and U2 must both dominate P and Q".into(),
        ));
    }
    Ok(())
}

/// Scans the candidates whose first entry has grid index in `a_range`.
pub fn refute_supremum_chunk(
    inst: &NoSupInstance,
    grid: &Grid,
    a_range: Range<usize>,
) -> Result<RefutationReport> {
    validate(inst, grid)?;
    let n = grid.points();
    let delta = grid.delta;
    let mut report = RefutationReport::empty(delta);
    for ia in a_range.start..a_range.end.min(n) {
        let a = grid.value(ia);
        for ib in 0..n {
            let b = grid.value(ib);
            for ic in 0..n {
                let s = Sym2::new(a, b, grid.value(ic));
                report.candidates += 1;
                if inst.u1.sub(&s).min_eigenvalue() < -delta
                    || s.sub(&inst.p).min_eigenvalue() < -delta
                    || s.sub(&inst.q).min_eigenvalue() < -delta
                {
                    continue;
                }
                report.near_feasible += 1;
                let margin = inst.u2.sub(&s).min_eigenvalue();
                if margin > report.max_margin {
                    report.max_margin = margin;
                    report.argmax = Some(s);
                }
            }
        }
    }
    Ok(report)
}

/// Grid search for a candidate supremum of `{P, Q}`.
///
/// Refuses grids coarser than `δ = 0.05`.
pub fn refute_supremum(inst: &NoSupInstance, grid: &Grid) -> Result<RefutationReport> {
    refute_supremum_chunk(inst, grid, 0..grid.points())
}

/// The same question in the coordinate lattice always has an answer: the
/// join lies below every given common upper bound.
pub fn join_below_upper_bounds(
    space: &Space,
    x: &Element,
    y: &Element,
    upper_bounds: &[Element],
) -> Result<bool> {
    let j = space.join(x, y)?;
    for u in upper_bounds {
        if !(space.leq(x, u)? && space.leq(y, u)?) {
            return Err(Error::InvalidParameter("not a common upper bound".into()));
        }
        if !space.leq(&j, u)? {
            return Ok(false);
        }
    }
    Ok(true)
}
