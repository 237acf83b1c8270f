//! The monotone selection principle as an algorithm.
//!
//! Given an upward directed family `J` and a faithful positive functional `ψ`,
//! [`select_sup`] builds an increasing sequence `(jₙ)` inside `J` whose
//! `ψ`-values climb to `sup_{j∈J} ψ(j)`. Its last iterate is the computed
//! supremum `j*`.
//!
//! The certificate: for every `j ∈ J` and every iterate, pick `g ∈ J` above
//! `j` and `jₙ`. Then `(j - jₙ)₊ ≤ (g - jₙ)₊ = g - jₙ`, so
//!
//! ```text
//! ψ((j - jₙ)₊) ≤ ψ(g) - ψ(jₙ) ≤ sup ψ - ψ(jₙ) = gap
//! ```
//!
//! and a vanishing gap forces `(j - j*)₊ = 0` when `ψ` is faithful. Each run
//! records both sides of this inequality for every sampled member.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::{check_directed, Directedness, DirectedFamily, SubspacePredicate};
use crate::functional::WeightFunctional;
use crate::lattice::{Element, Space};

/// Absolute slack allowed in the gap inequality for rounding.
pub const RESIDUAL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionConfig {
    /// Stop once `sup ψ - ψ(jₙ) ≤ eps`.
    pub eps: f64,
    pub max_iters: usize,
    /// Overrides the stream prefix length of the family, if set.
    pub scan_budget: Option<usize>,
    /// Run with a non-faithful functional (demonstrations only).
    pub force_nonfaithful: bool,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            eps: 1e-8,
            max_iters: 10_000,
            scan_budget: None,
            force_nonfaithful: false,
        }
    }
}

impl SelectionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "eps must be positive and finite, got {}",
                self.eps
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
        }
        if self.scan_budget == Some(0) {
            return Err(Error::InvalidParameter("scan budget must be positive".into()));
        }
        Ok(())
    }
}

/// One line of the per-iteration trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub n: usize,
    pub psi: f64,
    pub gap: f64,
}

#[derive(Debug, Clone)]
pub struct SelectionResult {
    /// The increasing sequence `j₁ ≤ j₂ ≤ …`, all members of `J`.
    pub sequence: Vec<Element>,
    /// Member index of each iterate.
    pub indices: Vec<usize>,
    pub j_star: Element,
    pub psi_values: Vec<f64>,
    /// Maximum of `ψ` over the inspected members.
    pub psi_sup_estimate: f64,
    /// `psi_sup_estimate - ψ(j*)`.
    pub gap: f64,
    /// `(member index, ψ((j - j*)₊))` for every inspected member.
    pub residuals: Vec<(usize, f64)>,
    /// For each iterate `jₙ`, the largest `ψ((j - jₙ)₊)` over inspected `j`.
    pub iterate_residual_max: Vec<f64>,
    /// Membership of `j*` in `V`, when a predicate was supplied.
    pub in_v: Option<bool>,
    pub converged: bool,
    pub eps: f64,
    /// `ψ(limit) - ψ(j*)` when the family declares a closed-form supremum.
    pub limit_gap: Option<f64>,
}

impl SelectionResult {
    pub fn iterations(&self) -> usize {
        self.sequence.len()
    }

    pub fn residual_max(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, &(_, r)| m.max(r))
    }

    pub fn gap_at(&self, n: usize) -> f64 {
        self.psi_sup_estimate - self.psi_values[n]
    }

    pub fn trace(&self) -> Vec<TraceRecord> {
        self.psi_values
            .iter()
            .enumerate()
            .map(|(n, &psi)| TraceRecord {
                n: n + 1,
                psi,
                gap: self.psi_sup_estimate - psi,
            })
            .collect()
    }
}

fn positive_mass(space: &Space, psi: &WeightFunctional, j: &Element, base: &Element) -> Result<f64> {
    psi.evaluate(&space.pos_part(&j.sub(base)?)?)
}

/// Computes `sup J` by a `ψ`-guided increasing sequence.
///
/// Starting from the first member, each step takes the lowest-index member of
/// maximal `ψ` among the inspected ones and moves to a member of `J`
/// dominating it and the current iterate. Once the `ψ`-gap is at most `eps`
/// (zero for finite families, whose maximum is attained), every inspected
/// member not below the iterate contributes a common dominator to the
/// estimate, and the walk continues while that reopens the gap. Stops after
/// `max_iters` steps with `converged = false` rather than an error.
pub fn select_sup(
    fam: &DirectedFamily,
    psi: &WeightFunctional,
    cfg: &SelectionConfig,
    v: Option<&SubspacePredicate>,
) -> Result<SelectionResult> {
    cfg.validate()?;
    let fam = match cfg.scan_budget {
        Some(b) => fam.clone().with_scan_budget(b)?,
        None => fam.clone(),
    };
    let space = *fam.space();
    if psi.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: psi.dim(),
        });
    }
    if !cfg.force_nonfaithful {
        psi.require_faithful()?;
    }
    if let Directedness::Violated { first, second } = check_directed(&fam)? {
        return Err(Error::NotDirected { first, second });
    }

    let sampled = fam.sampled();
    if let Some(v) = v {
        if let Some(index) = sampled.iter().position(|x| !v.contains(x)) {
            return Err(Error::NotInSubspace { index });
        }
    }
    let psi_sampled = sampled
        .iter()
        .map(|x| psi.evaluate(x))
        .collect::<Result<Vec<f64>>>()?;
    // Lowest index wins ties.
    let (best, mut estimate) = psi_sampled
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, p)| {
            if p > bv {
                (i, p)
            } else {
                (bi, bv)
            }
        });

    let finite = fam.is_finite();
    let target_gap = if finite { 0.0 } else { cfg.eps };

    let fetch = |k: usize| {
        if k < sampled.len() {
            sampled[k].clone()
        } else {
            fam.member(k)
        }
    };
    let mut best = best;
    let mut indices = alloc::vec![0usize];
    let mut sequence = alloc::vec![sampled[0].clone()];
    let mut psi_values = alloc::vec![psi_sampled[0]];
    // Next inspected member to test against the current iterate.
    let mut cursor = 0;
    let mut exhausted = false;
    loop {
        let current = *indices.last().expect("sequence is non-empty");
        let psi_current = *psi_values.last().expect("sequence is non-empty");
        let previous = sequence.last().expect("sequence is non-empty").clone();
        let step = if estimate - psi_current > target_gap {
            Some((fam.dominating_index(current, best)?, fetch(best), best))
        } else {
            // Members not below the iterate raise the estimate to the value
            // of a common dominator; a large enough rise forces another step.
            let mut found = None;
            while cursor < sampled.len() {
                let j = cursor;
                cursor += 1;
                if space.leq_exact(&sampled[j], &previous)? {
                    continue;
                }
                let k = fam.dominating_index(current, j)?;
                let psi_k = psi.evaluate(&fetch(k))?;
                if psi_k > estimate {
                    estimate = psi_k;
                    best = k;
                }
                if psi_k - psi_current > target_gap {
                    found = Some((k, sampled[j].clone(), j));
                    break;
                }
            }
            found
        };
        let Some((next, witness, witness_index)) = step else {
            break;
        };
        if next == current {
            break;
        }
        if indices.len() > cfg.max_iters {
            exhausted = true;
            // Finish the pass without stepping, so the estimate still bounds
            // every residual of the iterates taken.
            for (j, member) in sampled.iter().enumerate().skip(cursor) {
                if !space.leq_exact(member, &previous)? {
                    let k = fam.dominating_index(current, j)?;
                    estimate = estimate.max(psi.evaluate(&fetch(k))?);
                }
            }
            break;
        }
        let element = fetch(next);
        if !space.leq(&previous, &element)? || !space.leq(&witness, &element)? {
            return Err(Error::NotDirected {
                first: current,
                second: witness_index,
            });
        }
        let psi_next = psi.evaluate(&element)?;
        if psi_next > estimate {
            // A witness outside the inspected prefix.
            estimate = psi_next;
            best = next;
        }
        indices.push(next);
        sequence.push(element);
        psi_values.push(psi_next);
        cursor = 0;
    }

    let j_star = sequence.last().expect("sequence is non-empty").clone();
    let gap = estimate - psi_values.last().expect("sequence is non-empty");

    let residuals = sampled
        .iter()
        .enumerate()
        .map(|(i, j)| Ok((i, positive_mass(&space, psi, j, &j_star)?)))
        .collect::<Result<Vec<_>>>()?;
    let iterate_residual_max = sequence
        .iter()
        .map(|jn| {
            sampled.iter().try_fold(0.0f64, |m, j| {
                Ok(m.max(positive_mass(&space, psi, j, jn)?))
            })
        })
        .collect::<Result<Vec<f64>>>()?;

    let limit_gap = match fam.limit() {
        Some(l) => Some(psi.evaluate(&l)? - psi.evaluate(&j_star)?),
        None => None,
    };

    Ok(SelectionResult {
        in_v: v.map(|v| v.contains(&j_star)),
        converged: !exhausted && gap <= cfg.eps,
        sequence,
        indices,
        j_star,
        psi_values,
        psi_sup_estimate: estimate,
        gap,
        residuals,
        iterate_residual_max,
        eps: cfg.eps,
        limit_gap,
    })
}

/// Checks the gap inequality recorded in `result`.
///
/// Every residual `ψ((j - j*)₊)` must be at most the final gap, every iterate
/// must satisfy `ψ((j - jₙ)₊) ≤ sup ψ - ψ(jₙ)`, and a converged run must keep
/// all residuals within `eps` (all up to [`RESIDUAL_SLACK`]).
pub fn verify_residual_bound(result: &SelectionResult) -> bool {
    let final_ok = result
        .residuals
        .iter()
        .all(|&(_, r)| r <= result.gap + RESIDUAL_SLACK);
    let iterates_ok = result
        .iterate_residual_max
        .iter()
        .enumerate()
        .all(|(n, &r)| r <= result.gap_at(n) + RESIDUAL_SLACK);
    let eps_ok = result.gap > result.eps
        || result
            .residuals
            .iter()
            .all(|&(_, r)| r <= result.eps + RESIDUAL_SLACK);
    final_ok && iterates_ok && eps_ok
}

/// Supremum of an upper bounded increasing sequence: its last element.
///
/// The sequence must increase exactly and stay below `bound`.
pub fn sup_increasing_sequence(seq: &[Element], bound: &Element, space: &Space) -> Result<Element> {
    let first = seq.first().ok_or(Error::Empty("sequence"))?;
    space.check(bound)?;
    space.check(first)?;
    for (index, pair) in seq.windows(2).enumerate() {
        space.check(&pair[1])?;
        if !space.leq_exact(&pair[0], &pair[1])? {
            return Err(Error::NotIncreasing { index: index + 1 });
        }
    }
    for (index, x) in seq.iter().enumerate() {
        if !space.leq(x, bound)? {
            return Err(Error::ExceedsBound { index });
        }
    }
    Ok(seq[seq.len() - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{brute_force_sup, join_closure, stream_family, StreamPreset};
    use alloc::vec;

    fn v(xs: &[f64]) -> Element {
        Element::vector(xs.to_vec()).unwrap()
    }

    #[test]
    fn chain_reaches_target() {
        let space = Space::coordinate(2).unwrap();
        let preset = StreamPreset::ChainTo { target: vec![1.0, 1.0], rate: 0.5 };
        let fam = stream_family(&preset, space, 256).unwrap();
        let psi = WeightFunctional::new(vec![0.7, 0.3]).unwrap();
        let r = select_sup(&fam, &psi, &SelectionConfig::default(), None).unwrap();
        assert!(r.converged);
        assert!(r.gap <= 1e-8);
        assert!(r.j_star.distance_inf(&v(&[1.0, 1.0])) <= 1e-7);
        assert!(verify_residual_bound(&r));
        assert!(r.limit_gap.unwrap() <= 1e-8);
    }

    #[test]
    fn finite_matches_oracle_with_zero_gap() {
        let space = Space::coordinate(3).unwrap();
        let fam = join_closure(
            vec![v(&[0.1, 0.9, -0.3]), v(&[0.5, -0.2, 0.4]), v(&[-0.7, 0.3, 0.8])],
            space,
        )
        .unwrap();
        let psi = WeightFunctional::new(vec![0.2, 0.5, 0.3]).unwrap();
        let r = select_sup(&fam, &psi, &SelectionConfig::default(), None).unwrap();
        assert_eq!(r.j_star, brute_force_sup(&fam).unwrap());
        assert_eq!(r.gap, 0.0);
        assert!(r.residuals.iter().all(|&(_, x)| x == 0.0));
        assert!(verify_residual_bound(&r));
    }

    #[test]
    fn nonfaithful_is_rejected_then_demonstrated() {
        let space = Space::coordinate(2).unwrap();
        let fam = DirectedFamily::finite(space, vec![v(&[0.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
        let psi = WeightFunctional::new(vec![1.0, 0.0]).unwrap();
        let err = select_sup(&fam, &psi, &SelectionConfig::default(), None).unwrap_err();
        assert_eq!(err, Error::NotFaithful { coordinate: 1 });

        let cfg = SelectionConfig { force_nonfaithful: true, ..Default::default() };
        let r = select_sup(&fam, &psi, &cfg, None).unwrap();
        assert_eq!(r.psi_sup_estimate, 0.0);
        assert_eq!(r.psi_values, vec![0.0]);
        assert_eq!(r.j_star, v(&[0.0, 0.0]));
        assert_ne!(r.j_star, brute_force_sup(&fam).unwrap());
        // The certificate is blind to the missed mass.
        assert_eq!(r.residuals[1], (1, 0.0));
        let overshoot = space.pos_part(&v(&[0.0, 1.0]).sub(&r.j_star).unwrap()).unwrap();
        assert_eq!(overshoot.norm_inf(), 1.0);
    }

    #[test]
    fn not_directed_is_a_precondition_error() {
        let space = Space::coordinate(2).unwrap();
        let fam = DirectedFamily::finite(
            space,
            vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0])],
        )
        .unwrap();
        let psi = WeightFunctional::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(
            select_sup(&fam, &psi, &SelectionConfig::default(), None).unwrap_err(),
            Error::NotDirected { first: 1, second: 2 }
        );
    }

    #[test]
    fn one_step_reaches_scanned_maximum() {
        let space = Space::coordinate(2).unwrap();
        let preset = StreamPreset::BoxApproach { target: vec![1.0, 2.0] };
        let fam = stream_family(&preset, space, 64).unwrap();
        let psi = WeightFunctional::new(vec![0.5, 0.5]).unwrap();
        let cfg = SelectionConfig { max_iters: 1, ..Default::default() };
        let r = select_sup(&fam, &psi, &cfg, None).unwrap();
        assert_eq!(r.iterations(), 2);
        // One step jumps straight to the scanned maximum.
        assert!(r.converged);
        let cfg = SelectionConfig { max_iters: 1, scan_budget: Some(4), eps: 1e-300, ..Default::default() };
        let r = select_sup(&fam, &psi, &cfg, None).unwrap();
        assert_eq!(r.psi_sup_estimate, r.psi_values[1]);
    }

    #[test]
    fn unclosed_prefix_is_covered_by_dominators() {
        let space = Space::coordinate(4).unwrap();
        let psi = WeightFunctional::new(vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        let mut longer = None;
        for seed in 0..40 {
            let preset = StreamPreset::RandomDirected { dim: 4, seed, count: 10 };
            let fam = stream_family(&preset, space, 48).unwrap();
            let r = select_sup(&fam, &psi, &SelectionConfig::default(), None).unwrap();
            assert!(r.converged && verify_residual_bound(&r), "seed {seed}");
            for j in fam.sampled() {
                assert!(space.leq_exact(&j, &r.j_star).unwrap(), "seed {seed}");
            }
            if r.iterations() > 2 {
                longer = Some(fam);
            }
        }
        // Some prefix lacks its own supremum; capping the walk then stops short.
        let fam = longer.expect("a prefix needing more than one step");
        let cfg = SelectionConfig { max_iters: 1, ..Default::default() };
        let r = select_sup(&fam, &psi, &cfg, None).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations(), 2);
        assert!(verify_residual_bound(&r));
    }

    #[test]
    fn subspace_membership_is_reported() {
        let space = Space::coordinate(2).unwrap();
        let preset = StreamPreset::ChainTo { target: vec![2.0, 0.0], rate: 0.5 };
        let fam = stream_family(&preset, space, 128).unwrap();
        let psi = WeightFunctional::new(vec![0.5, 0.5]).unwrap();
        let v0 = SubspacePredicate::zero_coordinate(1);
        let r = select_sup(&fam, &psi, &SelectionConfig::default(), Some(&v0)).unwrap();
        assert_eq!(r.in_v, Some(true));
        let v1 = SubspacePredicate::zero_coordinate(0);
        assert_eq!(
            select_sup(&fam, &psi, &SelectionConfig::default(), Some(&v1)).unwrap_err(),
            Error::NotInSubspace { index: 1 }
        );
    }

    #[test]
    fn j_star_stays_below_bound() {
        let space = Space::coordinate(2).unwrap();
        let fam = join_closure(vec![v(&[0.0, 1.0]), v(&[1.0, 0.0])], space)
            .unwrap()
            .with_bound(v(&[1.0, 1.5]))
            .unwrap();
        let psi = WeightFunctional::new(vec![0.3, 0.7]).unwrap();
        let r = select_sup(&fam, &psi, &SelectionConfig::default(), None).unwrap();
        assert!(space.leq(&r.j_star, fam.bound().unwrap()).unwrap());
    }

    #[test]
    fn sup_of_increasing_sequences() {
        let space = Space::coordinate(2).unwrap();
        let seq = vec![v(&[0.0, 0.0]), v(&[0.5, 0.0]), v(&[0.5, 0.5])];
        assert_eq!(
            sup_increasing_sequence(&seq, &v(&[1.0, 1.0]), &space).unwrap(),
            v(&[0.5, 0.5])
        );
        let constant = vec![v(&[0.2, 0.3]); 4];
        assert_eq!(
            sup_increasing_sequence(&constant, &v(&[1.0, 1.0]), &space).unwrap(),
            v(&[0.2, 0.3])
        );
        let bad = vec![v(&[0.5, 0.0]), v(&[0.0, 0.5])];
        assert_eq!(
            sup_increasing_sequence(&bad, &v(&[1.0, 1.0]), &space).unwrap_err(),
            Error::NotIncreasing { index: 1 }
        );
        assert_eq!(
            sup_increasing_sequence(&seq, &v(&[0.4, 1.0]), &space).unwrap_err(),
            Error::ExceedsBound { index: 1 }
        );
    }

    #[test]
    fn chain_prefix_sup_geometric_bound() {
        let space = Space::coordinate(3).unwrap();
        let t = vec![1.0, 2.5, 0.5];
        let preset = StreamPreset::ChainTo { target: t.clone(), rate: 0.5 };
        let fam = stream_family(&preset, space, 64).unwrap();
        for n in [1usize, 5, 12, 30] {
            let prefix: Vec<Element> = (0..=n).map(|k| fam.member(k)).collect();
            let s = sup_increasing_sequence(&prefix, &v(&t), &space).unwrap();
            assert_eq!(s, fam.member(n));
            assert!(s.distance_inf(&v(&t)) <= libm::pow(0.5, n as f64) * 2.5 + 1e-15);
        }
    }

    #[test]
    fn config_validation() {
        let bad = SelectionConfig { eps: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SelectionConfig { max_iters: 0, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
