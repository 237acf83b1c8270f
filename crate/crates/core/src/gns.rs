//! GNS model of a state on the commutative algebra of functions on
//! `{0, …, n-1}` (diagonal matrices).
//!
//! With `ψ(a) = Σ wᵢ aᵢ` the GNS inner product is `⟨a, b⟩ = ψ(b*a) = Σ wᵢ aᵢ bᵢ`,
//! the cyclic vector is the constant function one and `π(a)` multiplies
//! pointwise. A faithful state makes the inner product definite, so no
//! quotient or completion is needed. Projections are indicator functions of
//! subsets; two are orthogonal iff their supports are disjoint.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::functional::WeightFunctional;

/// Largest `n` for which disjoint families are enumerated exhaustively.
pub const EXHAUSTIVE_MAX_DIM: usize = 12;

/// Allowed `|lhs - rhs|` in the Parseval identity.
pub const PARSEVAL_TOLERANCE: f64 = 1e-12;

/// A state: nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteState(WeightFunctional);

impl FiniteState {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        WeightFunctional::state(weights).map(FiniteState)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(alloc::vec![1.0 / n as f64; n]).or_else(|_| {
            // 1/n does not always sum back to 1 within 1e-12 for large n;
            // put the rounding error on the last weight.
            let mut w = alloc::vec![1.0 / n as f64; n];
            let rest: f64 = w[..n - 1].iter().sum();
            w[n - 1] = 1.0 - rest;
            Self::new(w)
        })
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn weights(&self) -> &[f64] {
        self.0.weights()
    }

    pub fn is_faithful(&self) -> bool {
        self.0.is_faithful()
    }

    pub fn functional(&self) -> &WeightFunctional {
        &self.0
    }

    /// `ψ(p)`: total weight of the support.
    pub fn of_projection(&self, p: &Projection) -> f64 {
        self.weights()
            .iter()
            .zip(&p.support)
            .filter(|(_, &s)| s)
            .map(|(w, _)| w)
            .sum()
    }
}

/// Indicator function of a subset of `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Projection {
    support: Vec<bool>,
}

impl Projection {
    pub fn new(support: Vec<bool>) -> Self {
        Projection { support }
    }

    pub fn zero(n: usize) -> Self {
        Projection::new(alloc::vec![false; n])
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut support = alloc::vec![false; n];
        for &i in indices {
            if i >= n {
                return Err(Error::InvalidParameter(alloc::format!(
                    "projection index {i} out of range for dimension {n}"
                )));
            }
            support[i] = true;
        }
        Ok(Projection { support })
    }

    /// Support given as a bit mask (`n ≤ 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Projection::new((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn dim(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[bool] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        !self.support.iter().any(|&s| s)
    }

    /// As a function: `1` on the support, `0` elsewhere.
    pub fn values(&self) -> Vec<f64> {
        self.support.iter().map(|&s| if s { 1.0 } else { 0.0 }).collect()
    }

    pub fn is_orthogonal_to(&self, other: &Projection) -> bool {
        !self.support.iter().zip(&other.support).any(|(&a, &b)| a && b)
    }
}

/// The GNS triple of a finite state.
#[derive(Debug, Clone, PartialEq)]
pub struct GnsModel {
    state: FiniteState,
}

impl GnsModel {
    pub fn new(state: FiniteState) -> Self {
        GnsModel { state }
    }

    pub fn state(&self) -> &FiniteState {
        &self.state
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    /// `⟨a, b⟩ = Σ wᵢ aᵢ bᵢ`.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.state
            .weights()
            .iter()
            .zip(a.iter().zip(b))
            .map(|(w, (x, y))| w * x * y)
            .sum()
    }

    pub fn norm_sq(&self, a: &[f64]) -> f64 {
        self.inner(a, a)
    }

    pub fn cyclic_vector(&self) -> Vec<f64> {
        alloc::vec![1.0; self.dim()]
    }

    /// `π(a) ξ`, pointwise multiplication.
    pub fn represent(&self, a: &[f64], xi: &[f64]) -> Vec<f64> {
        a.iter().zip(xi).map(|(x, y)| x * y).collect()
    }

    /// `ψ(a*a) = Σ wᵢ aᵢ²`, computed directly from the state.
    pub fn state_of_square(&self, a: &[f64]) -> f64 {
        self.state
            .weights()
            .iter()
            .zip(a)
            .map(|(w, x)| w * (x * x))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsevalReport {
    /// `‖q c‖²` with `q` the sum of the projections.
    pub lhs: f64,
    /// `Σ_p ‖π(p) c‖²`.
    pub rhs: f64,
    pub equal: bool,
}

/// Parseval identity for a pairwise orthogonal family of projections.
pub fn parseval_check(model: &GnsModel, projections: &[Projection]) -> Result<ParsevalReport> {
    let n = model.dim();
    for p in projections {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
    }
    for i in 0..projections.len() {
        for j in (i + 1)..projections.len() {
            if !projections[i].is_orthogonal_to(&projections[j]) {
                return Err(Error::NotOrthogonal {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let c = model.cyclic_vector();
    let mut q = alloc::vec![0.0; n];
    for p in projections {
        for (qi, pi) in q.iter_mut().zip(p.values()) {
            *qi += pi;
        }
    }
    let lhs = model.norm_sq(&model.represent(&q, &c));
    let rhs: f64 = projections
        .iter()
        .map(|p| model.norm_sq(&model.represent(&p.values(), &c)))
        .sum();
    Ok(ParsevalReport {
        lhs,
        rhs,
        equal: (lhs - rhs).abs() <= PARSEVAL_TOLERANCE,
    })
}

/// `ψ(p) = 0 ⟹ p = 0` for this projection.
pub fn faithful_kills_null(model: &GnsModel, p: &Projection) -> bool {
    model.state.of_projection(p) != 0.0 || p.is_zero()
}

#[derive(Debug, Clone, PartialEq)]
pub enum NullCheck {
    /// Every checked projection with `ψ(p) = 0` was zero.
    Holds { checked: u64, exhaustive: bool },
    /// A nonzero projection annihilated by the state.
    Counterexample(Projection),
}

/// Checks `ψ(p) = 0 ⟹ p = 0` over all supports (`n ≤ 12`) or over `samples`
/// random supports. A non-faithful state yields the projection onto a
/// zero-weight coordinate.
pub fn verify_kills_null<R: Rng + ?Sized>(model: &GnsModel, rng: &mut R, samples: usize) -> NullCheck {
    let n = model.dim();
    if let Some(i) = model.state.functional().null_coordinate() {
        let mut support = alloc::vec![false; n];
        support[i] = true;
        return NullCheck::Counterexample(Projection::new(support));
    }
    if n <= EXHAUSTIVE_MAX_DIM {
        for mask in 0..(1u64 << n) {
            let p = Projection::from_mask(n, mask);
            if !faithful_kills_null(model, &p) {
                return NullCheck::Counterexample(p);
            }
        }
        NullCheck::Holds {
            checked: 1 << n,
            exhaustive: true,
        }
    } else {
        for _ in 0..samples {
            let p = Projection::new((0..n).map(|_| rng.gen::<bool>()).collect());
            if !faithful_kills_null(model, &p) {
                return NullCheck::Counterexample(p);
            }
        }
        NullCheck::Holds {
            checked: samples as u64,
            exhaustive: false,
        }
    }
}

/// Calls `visit` with every family of pairwise disjoint nonzero projections on
/// `{0, …, n-1}`, supports encoded as bit masks. There are `Bell(n + 1)` such
/// families, the empty family included.
pub fn for_each_disjoint_family(n: usize, mut visit: impl FnMut(&[u64])) -> Result<()> {
    if n > 16 {
        return Err(Error::InvalidParameter(alloc::format!(
            "exhaustive enumeration is limited to n <= 16, got {n}"
        )));
    }
    fn walk(i: usize, n: usize, blocks: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
        if i == n {
            visit(blocks);
            return;
        }
        let bit = 1u64 << i;
        walk(i + 1, n, blocks, visit);
        for b in 0..blocks.len() {
            blocks[b] |= bit;
            walk(i + 1, n, blocks, visit);
            blocks[b] &= !bit;
        }
        blocks.push(bit);
        walk(i + 1, n, blocks, visit);
        blocks.pop();
    }
    walk(0, n, &mut Vec::with_capacity(n), &mut visit);
    Ok(())
}

/// Outcome of the counting bound for one threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountReport {
    pub eps: f64,
    /// `floor(1/eps)`.
    pub bound: usize,
    /// Largest `#{p ∈ P : ψ(p) ≥ eps}` seen.
    pub max_count: usize,
    pub families: u64,
    pub violations: u64,
    pub exhaustive: bool,
}

impl CountReport {
    fn new(eps: f64, exhaustive: bool) -> Self {
        CountReport {
            eps,
            bound: libm::floor(1.0 / eps) as usize,
            max_count: 0,
            families: 0,
            violations: 0,
            exhaustive,
        }
    }

    fn record(&mut self, count: usize) {
        self.families += 1;
        self.max_count = self.max_count.max(count);
        if count > self.bound {
            self.violations += 1;
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

fn check_thresholds(model: &GnsModel, eps: &[f64]) -> Result<()> {
    if !model.state.functional().is_normalized() {
        return Err(Error::NotNormalized {
            total: model.state.functional().total_weight(),
        });
    }
    for &e in eps {
        if !(e > 0.0 && e <= 1.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "counting threshold must lie in (0, 1], got {e}"
            )));
        }
    }
    Ok(())
}

/// Counting bound `#{p : ψ(p) ≥ eps} ≤ floor(1/eps)` over every disjoint
/// family of projections. Requires `n ≤ 12`.
pub fn sigma_finite_counts(model: &GnsModel, eps: &[f64]) -> Result<Vec<CountReport>> {
    check_thresholds(model, eps)?;
    let n = model.dim();
    if n > EXHAUSTIVE_MAX_DIM {
        return Err(Error::InvalidParameter(alloc::format!(
            "exhaustive counting needs n <= {EXHAUSTIVE_MAX_DIM}, got {n}; use the sampled variant"
        )));
    }
    let mass: Vec<f64> = (0..(1u64 << n))
        .map(|m| model.state.of_projection(&Projection::from_mask(n, m)))
        .collect();
    let mut reports: Vec<CountReport> = eps.iter().map(|&e| CountReport::new(e, true)).collect();
    for_each_disjoint_family(n, |blocks| {
        for r in reports.iter_mut() {
            let count = blocks.iter().filter(|&&b| mass[b as usize] >= r.eps).count();
            r.record(count);
        }
    })?;
    Ok(reports)
}

pub fn sigma_finite_count(model: &GnsModel, eps: f64) -> Result<CountReport> {
    Ok(sigma_finite_counts(model, &[eps])?[0])
}

/// Random disjoint families: each coordinate joins one of up to `n` blocks or
/// none.
pub fn random_disjoint_family<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Projection> {
    let blocks = rng.gen_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=blocks)).collect();
    (1..=blocks)
        .map(|b| Projection::new(labels.iter().map(|&l| l == b).collect()))
        .filter(|p| !p.is_zero())
        .collect()
}

/// Sampled counting bound for larger `n`.
pub fn sigma_finite_count_sampled<R: Rng + ?Sized>(
    model: &GnsModel,
    eps: f64,
    rng: &mut R,
    families: usize,
) -> Result<CountReport> {
    check_thresholds(model, &[eps])?;
    let mut report = CountReport::new(eps, false);
    for _ in 0..families {
        let fam = random_disjoint_family(model.dim(), rng);
        let count = fam
            .iter()
            .filter(|p| model.state.of_projection(p) >= eps)
            .count();
        report.record(count);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn model(w: &[f64]) -> GnsModel {
        GnsModel::new(FiniteState::new(w.to_vec()).unwrap())
    }

    #[test]
    fn parseval_two_atoms() {
        let m = model(&[0.5, 0.3, 0.2]);
        let p = [
            Projection::from_indices(3, &[0]).unwrap(),
            Projection::from_indices(3, &[1]).unwrap(),
        ];
        let r = parseval_check(&m, &p).unwrap();
        assert!((r.lhs - 0.8).abs() < 1e-15 && (r.rhs - 0.8).abs() < 1e-15);
        assert!(r.equal);
    }

    #[test]
    fn parseval_empty_and_partition() {
        let m = model(&[0.5, 0.3, 0.2]);
        let r = parseval_check(&m, &[]).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        let part = [
            Projection::from_indices(3, &[0, 2]).unwrap(),
            Projection::from_indices(3, &[1]).unwrap(),
        ];
        let r = parseval_check(&m, &part).unwrap();
        assert!((r.lhs - 1.0).abs() <= 1e-12 && (r.rhs - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn overlapping_supports_rejected() {
        let m = model(&[0.5, 0.5]);
        let p = [
            Projection::from_indices(2, &[0, 1]).unwrap(),
            Projection::from_indices(2, &[1]).unwrap(),
        ];
        assert_eq!(
            parseval_check(&m, &p).unwrap_err(),
            Error::NotOrthogonal { first: 0, second: 1 }
        );
    }

    #[test]
    fn gns_norm_identity() {
        let m = model(&[0.1, 0.2, 0.3, 0.4]);
        let a = [1.5, -2.0, 0.25, 3.0];
        let c = m.cyclic_vector();
        assert!((m.norm_sq(&c) - 1.0).abs() < 1e-15);
        let lhs = m.norm_sq(&m.represent(&a, &c));
        assert!((lhs - m.state_of_square(&a)).abs() < 1e-15);
    }

    #[test]
    fn faithful_state_kills_null_projections() {
        let m = model(&[0.25, 0.25, 0.5]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(faithful_kills_null(&m, &Projection::zero(3)));
        assert_eq!(
            verify_kills_null(&m, &mut rng, 0),
            NullCheck::Holds { checked: 8, exhaustive: true }
        );
        // Minimum-weight bound: every nonzero projection has mass >= min w.
        for mask in 1..8u64 {
            assert!(m.state.of_projection(&Projection::from_mask(3, mask)) >= 0.25);
        }
    }

    #[test]
    fn nonfaithful_state_has_null_projection() {
        let m = model(&[1.0, 0.0]);
        let p = Projection::from_indices(2, &[1]).unwrap();
        assert_eq!(m.state.of_projection(&p), 0.0);
        assert!(!faithful_kills_null(&m, &p));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(verify_kills_null(&m, &mut rng, 10), NullCheck::Counterexample(p));
    }

    #[test]
    fn family_counts_are_bell_numbers() {
        // Bell(n + 1): 1, 2, 5, 15, 52, 203, 877.
        for (n, bell) in [(0usize, 1u64), (1, 2), (2, 5), (3, 15), (4, 52), (5, 203), (6, 877)] {
            let mut count = 0u64;
            for_each_disjoint_family(n, |blocks| {
                count += 1;
                let mut seen = 0u64;
                for &b in blocks {
                    assert!(b != 0 && b & seen == 0);
                    seen |= b;
                }
            })
            .unwrap();
            assert_eq!(count, bell, "n = {n}");
        }
    }

    #[test]
    fn uniform_ten_quarter_threshold() {
        let m = GnsModel::new(FiniteState::uniform(10).unwrap());
        let r = sigma_finite_count(&m, 0.25).unwrap();
        assert_eq!(r.bound, 4);
        // Each heavy block needs 3 of the 10 coordinates.
        assert_eq!(r.max_count, 3);
        assert!(r.holds());
        assert_eq!(r.families, 678_570); // Bell(11)
    }

    #[test]
    fn eps_one_allows_only_the_identity() {
        let m = model(&[0.2, 0.3, 0.5]);
        let r = sigma_finite_count(&m, 1.0).unwrap();
        assert_eq!(r.bound, 1);
        assert_eq!(r.max_count, 1);
    }

    #[test]
    fn disjoint_family_mass_at_most_one() {
        let m = model(&[0.1, 0.2, 0.3, 0.15, 0.25]);
        for_each_disjoint_family(5, |blocks| {
            let total: f64 = blocks
                .iter()
                .map(|&b| m.state.of_projection(&Projection::from_mask(5, b)))
                .sum();
            assert!(total <= 1.0 + 1e-12);
        })
        .unwrap();
    }

    #[test]
    fn bad_thresholds_rejected() {
        let m = model(&[0.5, 0.5]);
        assert!(sigma_finite_count(&m, 0.0).is_err());
        assert!(sigma_finite_count(&m, 1.5).is_err());
    }
}
