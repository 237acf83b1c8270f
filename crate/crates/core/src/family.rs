//! Upward directed families `J`, directedness checks, the brute-force
//! supremum oracle and the parametric stream presets.
//!
//! A family is either an explicit finite list or a countable stream. Streams
//! carry a constructive directedness witness: `dominate(i, j)` names a member
//! above both `element(i)` and `element(j)`. Only a prefix of `scan_budget`
//! members is ever inspected.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{dedup_order_eq, Element, Space};

/// A countable upward directed family presented by index.
///
/// Implementations must be pure: the same index always yields the same
/// element, and `dominate` must be deterministic.
pub trait StreamSource: Send + Sync {
    fn name(&self) -> &str;

    fn element(&self, index: usize) -> Element;

    /// Index of a member above both `element(i)` and `element(j)`.
    fn dominate(&self, i: usize, j: usize) -> usize;

    /// Closed-form supremum of the whole stream, when known.
    fn limit(&self) -> Option<Element> {
        None
    }
}

#[derive(Clone)]
pub enum Members {
    Finite(Vec<Element>),
    Stream {
        source: Arc<dyn StreamSource>,
        scan_budget: usize,
    },
}

impl fmt::Debug for Members {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Members::Finite(xs) => f.debug_tuple("Finite").field(xs).finish(),
            Members::Stream {
                source,
                scan_budget,
            } => f
                .debug_struct("Stream")
                .field("name", &source.name())
                .field("scan_budget", scan_budget)
                .finish(),
        }
    }
}

/// A non-empty family of elements of a coordinate lattice, optionally with an
/// upper bound in `W`.
#[derive(Debug, Clone)]
pub struct DirectedFamily {
    space: Space,
    members: Members,
    bound: Option<Element>,
}

/// Outcome of [`check_directed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Directedness {
    Directed,
    /// No checked member dominates both `first` and `second`.
    Violated { first: usize, second: usize },
}

impl Directedness {
    pub fn is_directed(&self) -> bool {
        matches!(self, Directedness::Directed)
    }
}

impl DirectedFamily {
    /// An explicit finite family. Members are deduplicated under
    /// order-equality (first representative kept); directedness is not
    /// checked here, see [`check_directed`].
    pub fn finite(space: Space, elements: Vec<Element>) -> Result<Self> {
        if !space.is_lattice() {
            return Err(Error::Unsupported(
                "directed families live in a coordinate lattice",
            ));
        }
        if elements.is_empty() {
            return Err(Error::Empty("directed family"));
        }
        for e in &elements {
            space.check(e)?;
        }
        let elements = dedup_order_eq(&space, elements)?;
        Ok(DirectedFamily {
            space,
            members: Members::Finite(elements),
            bound: None,
        })
    }

    pub fn stream(space: Space, source: Arc<dyn StreamSource>, scan_budget: usize) -> Result<Self> {
        if !space.is_lattice() {
            return Err(Error::Unsupported(
                "directed families live in a coordinate lattice",
            ));
        }
        if scan_budget == 0 {
            return Err(Error::InvalidParameter("scan budget must be positive".into()));
        }
        space.check(&source.element(0))?;
        Ok(DirectedFamily {
            space,
            members: Members::Stream {
                source,
                scan_budget,
            },
            bound: None,
        })
    }

    /// Attaches an upper bound in `W`; every sampled member must lie below it.
    pub fn with_bound(mut self, bound: Element) -> Result<Self> {
        self.space.check(&bound)?;
        for (index, m) in self.sampled().iter().enumerate() {
            if !self.space.leq(m, &bound)? {
                return Err(Error::ExceedsBound { index });
            }
        }
        self.bound = Some(bound);
        Ok(self)
    }

    /// Same family with the stream prefix length replaced. No-op for finite
    /// families.
    pub fn with_scan_budget(mut self, budget: usize) -> Result<Self> {
        if budget == 0 {
            return Err(Error::InvalidParameter("scan budget must be positive".into()));
        }
        if let Members::Stream { scan_budget, .. } = &mut self.members {
            *scan_budget = budget;
        }
        Ok(self)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn members(&self) -> &Members {
        &self.members
    }

    pub fn bound(&self) -> Option<&Element> {
        self.bound.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.members, Members::Finite(_))
    }

    /// Closed-form supremum: the declared stream limit, if any.
    pub fn limit(&self) -> Option<Element> {
        match &self.members {
            Members::Finite(_) => None,
            Members::Stream { source, .. } => source.limit(),
        }
    }

    /// Number of members inspected: the whole list, or the stream prefix.
    pub fn sample_len(&self) -> usize {
        match &self.members {
            Members::Finite(xs) => xs.len(),
            Members::Stream { scan_budget, .. } => *scan_budget,
        }
    }

    pub fn member(&self, index: usize) -> Element {
        match &self.members {
            Members::Finite(xs) => xs[index].clone(),
            Members::Stream { source, .. } => source.element(index),
        }
    }

    /// The inspected members, in index order.
    pub fn sampled(&self) -> Vec<Element> {
        match &self.members {
            Members::Finite(xs) => xs.clone(),
            Members::Stream {
                source,
                scan_budget,
            } => (0..*scan_budget).map(|k| source.element(k)).collect(),
        }
    }

    /// Index of a member dominating members `i` and `j`.
    ///
    /// Streams answer with their witness. Finite families return the
    /// lowest-index exact dominator, falling back to a tolerant one.
    pub fn dominating_index(&self, i: usize, j: usize) -> Result<usize> {
        match &self.members {
            Members::Stream { source, .. } => Ok(source.dominate(i, j)),
            Members::Finite(xs) => {
                let (x, y) = (&xs[i], &xs[j]);
                for (k, z) in xs.iter().enumerate() {
                    if self.space.leq_exact(x, z)? && self.space.leq_exact(y, z)? {
                        return Ok(k);
                    }
                }
                for (k, z) in xs.iter().enumerate() {
                    if self.space.leq(x, z)? && self.space.leq(y, z)? {
                        return Ok(k);
                    }
                }
                Err(Error::NotDirected {
                    first: i,
                    second: j,
                })
            }
        }
    }
}

/// Checks upward directedness on the inspected range.
///
/// Finite families: every pair has a dominating member in the list.
/// Streams: the `dominate` witness holds for every pair in the prefix.
pub fn check_directed(fam: &DirectedFamily) -> Result<Directedness> {
    let space = fam.space();
    let sampled = fam.sampled();
    if sampled.is_empty() {
        return Err(Error::Empty("directed family"));
    }
    match fam.members() {
        Members::Finite(xs) => {
            for i in 0..xs.len() {
                for j in (i + 1)..xs.len() {
                    let mut found = false;
                    for z in xs {
                        if space.leq(&xs[i], z)? && space.leq(&xs[j], z)? {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Ok(Directedness::Violated {
                            first: i,
                            second: j,
                        });
                    }
                }
            }
        }
        Members::Stream { source, .. } => {
            let n = sampled.len();
            for i in 0..n {
                for j in i..n {
                    let k = source.dominate(i, j);
                    let z = if k < n {
                        sampled[k].clone()
                    } else {
                        source.element(k)
                    };
                    if !(space.leq(&sampled[i], &z)? && space.leq(&sampled[j], &z)?) {
                        return Ok(Directedness::Violated {
                            first: i,
                            second: j,
                        });
                    }
                }
            }
        }
    }
    Ok(Directedness::Directed)
}

/// The maximum of a finite directed family, found by exhaustive comparison.
///
/// Independent of the selection engine: no functional is involved.
pub fn brute_force_sup(fam: &DirectedFamily) -> Result<Element> {
    let xs = match fam.members() {
        Members::Finite(xs) => xs,
        Members::Stream { .. } => {
            return Err(Error::Unsupported(
                "brute-force supremum needs a finite family",
            ))
        }
    };
    let space = fam.space();
    'candidates: for m in xs {
        for x in xs {
            if !space.leq(x, m)? {
                continue 'candidates;
            }
        }
        return Ok(m.clone());
    }
    match check_directed(fam)? {
        Directedness::Violated { first, second } => Err(Error::NotDirected { first, second }),
        Directedness::Directed => Err(Error::InvalidParameter(
            "directed family without a maximum (tolerance drift)".into(),
        )),
    }
}

/// Closure of `generators` under pairwise join, deduplicated.
pub fn join_closure(generators: Vec<Element>, space: Space) -> Result<DirectedFamily> {
    let closure = join_closure_elements(generators, &space)?;
    DirectedFamily::finite(space, closure)
}

fn join_closure_elements(generators: Vec<Element>, space: &Space) -> Result<Vec<Element>> {
    if !space.is_lattice() {
        return Err(Error::Unsupported("join closure needs a coordinate lattice"));
    }
    if generators.is_empty() {
        return Err(Error::Empty("generator list"));
    }
    for g in &generators {
        space.check(g)?;
    }
    let mut out = dedup_order_eq(space, generators)?;
    let mut frontier = 0;
    // Pairs (i, j) with j < frontier have been joined already.
    while frontier < out.len() {
        let j = frontier;
        for i in 0..=j {
            let z = space.join(&out[i], &out[j])?;
            let mut seen = false;
            for e in &out {
                if space.order_eq(e, &z)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push(z);
            }
        }
        frontier += 1;
    }
    Ok(out)
}

/// Parametric stream families.
#[derive(Debug, Clone, PartialEq)]
pub enum StreamPreset {
    /// `element(k) = (1 - rate^k) · target`, `target ≥ 0`, `rate ∈ (0, 1)`.
    ChainTo { target: Vec<f64>, rate: f64 },
    /// Staircase raising one axis at a time toward `target`.
    BoxApproach { target: Vec<f64> },
    /// Join closure of `count` seeded random vectors in `[-1, 1)^dim`.
    RandomDirected { dim: usize, seed: u64, count: usize },
}

/// Generators beyond this make the closure table unreasonably large.
pub const MAX_RANDOM_GENERATORS: usize = 10;

impl StreamPreset {
    pub fn name(&self) -> &'static str {
        match self {
            StreamPreset::ChainTo { .. } => "chain_to",
            StreamPreset::BoxApproach { .. } => "box_approach",
            StreamPreset::RandomDirected { .. } => "random_directed",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            StreamPreset::ChainTo { target, .. } | StreamPreset::BoxApproach { target } => {
                target.len()
            }
            StreamPreset::RandomDirected { dim, .. } => *dim,
        }
    }
}

/// Builds the stream family for `preset`, bounded by its supremum.
pub fn stream_family(preset: &StreamPreset, space: Space, scan_budget: usize) -> Result<DirectedFamily> {
    if space.dim() != preset.dim() || !space.is_lattice() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: preset.dim(),
        });
    }
    let source: Arc<dyn StreamSource> = match preset {
        StreamPreset::ChainTo { target, rate } => {
            if !(*rate > 0.0 && *rate < 1.0) {
                return Err(Error::InvalidParameter(alloc::format!(
                    "chain_to rate must lie in (0, 1), got {rate}"
                )));
            }
            if target.iter().any(|t| !t.is_finite() || *t < 0.0) {
                return Err(Error::InvalidParameter(
                    "chain_to target must be finite and nonnegative".into(),
                ));
            }
            Arc::new(ChainTo {
                target: target.clone(),
                rate: *rate,
            })
        }
        StreamPreset::BoxApproach { target } => {
            if target.iter().any(|t| !t.is_finite()) {
                return Err(Error::NonFinite);
            }
            Arc::new(BoxApproach::new(target.clone()))
        }
        StreamPreset::RandomDirected { dim, seed, count } => {
            if *count == 0 || *count > MAX_RANDOM_GENERATORS {
                return Err(Error::InvalidParameter(alloc::format!(
                    "random_directed count must be in 1..={MAX_RANDOM_GENERATORS}, got {count}"
                )));
            }
            Arc::new(RandomDirected::new(*dim, *seed, *count, &space)?)
        }
    };
    let bound = source.limit();
    let fam = DirectedFamily::stream(space, source, scan_budget)?;
    match bound {
        Some(b) => fam.with_bound(b),
        None => Ok(fam),
    }
}

struct ChainTo {
    target: Vec<f64>,
    rate: f64,
}

impl StreamSource for ChainTo {
    fn name(&self) -> &str {
        "chain_to"
    }

    fn element(&self, index: usize) -> Element {
        let exp = i32::try_from(index).unwrap_or(i32::MAX);
        let s = 1.0 - libm::pow(self.rate, f64::from(exp));
        Element::Vector(self.target.iter().map(|t| s * t).collect())
    }

    fn dominate(&self, i: usize, j: usize) -> usize {
        i.max(j)
    }

    fn limit(&self) -> Option<Element> {
        Some(Element::Vector(self.target.clone()))
    }
}

/// `element(k)_i = target_i - spread · 2^(-m_i(k))` where `m_i(k)` counts the
/// steps among the first `k` spent on axis `i` (axes visited round-robin).
struct BoxApproach {
    target: Vec<f64>,
    spread: f64,
}

impl BoxApproach {
    fn new(target: Vec<f64>) -> Self {
        let spread = 1.0 + target.iter().fold(0.0f64, |a, t| a.max(t.abs()));
        BoxApproach { target, spread }
    }
}

impl StreamSource for BoxApproach {
    fn name(&self) -> &str {
        "box_approach"
    }

    fn element(&self, index: usize) -> Element {
        let n = self.target.len();
        let (rounds, partial) = (index / n, index % n);
        Element::Vector(
            self.target
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let steps = rounds + usize::from(i < partial);
                    let steps = i32::try_from(steps).unwrap_or(i32::MAX);
                    t - self.spread * libm::pow(2.0, -f64::from(steps))
                })
                .collect(),
        )
    }

    fn dominate(&self, i: usize, j: usize) -> usize {
        i.max(j)
    }

    fn limit(&self) -> Option<Element> {
        Some(Element::Vector(self.target.clone()))
    }
}

/// Finite join closure presented as a stream; indices wrap around.
struct RandomDirected {
    closure: Vec<Element>,
    table: Box<[usize]>,
}

impl RandomDirected {
    fn new(dim: usize, seed: u64, count: usize, space: &Space) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generators: Vec<Element> = (0..count)
            .map(|_| Element::Vector((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()))
            .collect();
        let closure = join_closure_elements(generators, space)?;
        let m = closure.len();
        let mut table = alloc::vec![0usize; m * m].into_boxed_slice();
        for i in 0..m {
            for j in 0..m {
                let z = space.join(&closure[i], &closure[j])?;
                let mut found = None;
                for (k, e) in closure.iter().enumerate() {
                    if space.order_eq(e, &z)? {
                        found = Some(k);
                        break;
                    }
                }
                table[i * m + j] = found
                    .ok_or_else(|| Error::InvalidParameter("join closure is not closed".into()))?;
            }
        }
        Ok(RandomDirected { closure, table })
    }
}

impl StreamSource for RandomDirected {
    fn name(&self) -> &str {
        "random_directed"
    }

    fn element(&self, index: usize) -> Element {
        self.closure[index % self.closure.len()].clone()
    }

    fn dominate(&self, i: usize, j: usize) -> usize {
        let m = self.closure.len();
        self.table[(i % m) * m + (j % m)]
    }

    fn limit(&self) -> Option<Element> {
        let mut top = self.closure[0].coords()?.to_vec();
        for e in &self.closure[1..] {
            for (t, x) in top.iter_mut().zip(e.coords()?) {
                *t = t.max(*x);
            }
        }
        Some(Element::Vector(top))
    }
}

/// The subset `V ⊆ W` of the selection principle, as a membership test.
///
/// Closedness under suprema of increasing sequences cannot be decided for an
/// arbitrary predicate; the engine checks it after each run instead.
#[derive(Clone)]
pub struct SubspacePredicate {
    membership: Arc<dyn Fn(&Element) -> bool + Send + Sync>,
    description: String,
}

impl fmt::Debug for SubspacePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubspacePredicate")
            .field("description", &self.description)
            .finish()
    }
}

impl SubspacePredicate {
    pub fn new(
        description: impl Into<String>,
        membership: impl Fn(&Element) -> bool + Send + Sync + 'static,
    ) -> Self {
        SubspacePredicate {
            membership: Arc::new(membership),
            description: description.into(),
        }
    }

    /// `V = W`.
    pub fn whole() -> Self {
        Self::new("whole space", |_| true)
    }

    /// The positive cone.
    pub fn nonnegative() -> Self {
        Self::new("nonnegative cone", |x| {
            x.coords().is_some_and(|c| c.iter().all(|&v| v >= 0.0))
        })
    }

    /// The subspace `{x : x_coordinate = 0}`.
    pub fn zero_coordinate(coordinate: usize) -> Self {
        Self::new(alloc::format!("coordinate {coordinate} vanishes"), move |x| {
            x.coords().and_then(|c| c.get(coordinate)) == Some(&0.0)
        })
    }

    /// Constant vectors, the scalar multiples of the unit.
    pub fn constant() -> Self {
        Self::new("constant vectors", |x| {
            x.coords()
                .is_some_and(|c| c.iter().all(|&v| v == c[0]))
        })
    }

    pub fn contains(&self, x: &Element) -> bool {
        (self.membership)(x)
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(xs: &[f64]) -> Element {
        Element::vector(xs.to_vec()).unwrap()
    }

    fn fam(xs: &[&[f64]]) -> DirectedFamily {
        let space = Space::coordinate(xs[0].len()).unwrap();
        DirectedFamily::finite(space, xs.iter().map(|x| v(x)).collect()).unwrap()
    }

    #[test]
    fn missing_top_is_not_directed() {
        let f = fam(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        let r = check_directed(&f).unwrap();
        assert_eq!(r, Directedness::Violated { first: 1, second: 2 });
        assert_eq!(f.member(1), v(&[1.0, 0.0]));
        assert_eq!(f.member(2), v(&[0.0, 1.0]));
        assert_eq!(
            brute_force_sup(&f),
            Err(Error::NotDirected { first: 1, second: 2 })
        );
    }

    #[test]
    fn square_is_directed_with_top() {
        let f = fam(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        assert!(check_directed(&f).unwrap().is_directed());
        assert_eq!(brute_force_sup(&f).unwrap(), v(&[1.0, 1.0]));
    }

    #[test]
    fn singleton() {
        let f = fam(&[&[3.0, -2.0]]);
        assert!(check_directed(&f).unwrap().is_directed());
        assert_eq!(brute_force_sup(&f).unwrap(), v(&[3.0, -2.0]));
    }

    #[test]
    fn empty_family_rejected() {
        let space = Space::coordinate(2).unwrap();
        assert_eq!(
            DirectedFamily::finite(space, vec![]).unwrap_err(),
            Error::Empty("directed family")
        );
        assert!(join_closure(vec![], space).is_err());
    }

    #[test]
    fn tolerance_duplicates_are_merged() {
        let space = Space::coordinate(2).unwrap();
        let f = DirectedFamily::finite(space, vec![v(&[1.0, 1.0]), v(&[1.0, 1.0 + 1e-12])]).unwrap();
        assert_eq!(f.sample_len(), 1);
    }

    #[test]
    fn closure_of_two_axes() {
        let space = Space::coordinate(2).unwrap();
        let f = join_closure(vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])], space).unwrap();
        assert_eq!(
            f.sampled(),
            vec![v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])]
        );
        let single = join_closure(vec![v(&[2.0, 5.0])], space).unwrap();
        assert_eq!(single.sampled(), vec![v(&[2.0, 5.0])]);
    }

    #[test]
    fn closure_is_idempotent_and_directed() {
        let space = Space::coordinate(3).unwrap();
        let gens = vec![
            v(&[0.3, -0.2, 0.9]),
            v(&[-0.5, 0.7, 0.1]),
            v(&[0.8, 0.0, -0.4]),
            v(&[0.1, 0.1, 0.1]),
        ];
        let once = join_closure(gens.clone(), space).unwrap();
        let twice = join_closure(once.sampled(), space).unwrap();
        assert_eq!(once.sampled(), twice.sampled());
        assert!(check_directed(&once).unwrap().is_directed());
        // Oracle: fold of join over the generators.
        let mut top = gens[0].clone();
        for g in &gens[1..] {
            top = space.join(&top, g).unwrap();
        }
        assert_eq!(brute_force_sup(&once).unwrap(), top);
    }

    #[test]
    fn chain_to_values() {
        let space = Space::coordinate(2).unwrap();
        let preset = StreamPreset::ChainTo {
            target: vec![1.0, 1.0],
            rate: 0.5,
        };
        let f = stream_family(&preset, space, 64).unwrap();
        assert_eq!(f.member(3), v(&[0.875, 0.875]));
        assert_eq!(f.member(0), v(&[0.0, 0.0]));
        assert_eq!(f.limit(), Some(v(&[1.0, 1.0])));
        assert_eq!(f.bound(), Some(&v(&[1.0, 1.0])));
        assert!(check_directed(&f).unwrap().is_directed());
    }

    #[test]
    fn box_approach_truncation_gap_shrinks() {
        let space = Space::coordinate(2).unwrap();
        let target = v(&[2.0, 3.0]);
        let preset = StreamPreset::BoxApproach {
            target: vec![2.0, 3.0],
        };
        let mut last_gap = f64::INFINITY;
        for n in [2usize, 8, 32, 64] {
            let f = stream_family(&preset, space, n).unwrap();
            // Truncation oracle: componentwise max over the first n members.
            let mut top = f.member(0).coords().unwrap().to_vec();
            for k in 1..n {
                for (t, x) in top.iter_mut().zip(f.member(k).coords().unwrap()) {
                    *t = t.max(*x);
                }
            }
            let top = v(&top);
            assert!(space.leq_exact(&top, &target).unwrap());
            let gap = top.distance_inf(&target);
            assert!(gap < last_gap);
            last_gap = gap;
        }
        assert!(last_gap < 1e-8);
    }

    #[test]
    fn random_directed_witness_is_the_join() {
        let space = Space::coordinate(4).unwrap();
        let preset = StreamPreset::RandomDirected {
            dim: 4,
            seed: 7,
            count: 5,
        };
        let f = stream_family(&preset, space, 40).unwrap();
        assert!(check_directed(&f).unwrap().is_directed());
        for i in 0..20 {
            for j in 0..20 {
                let k = f.dominating_index(i, j).unwrap();
                assert_eq!(
                    f.member(k),
                    space.join(&f.member(i), &f.member(j)).unwrap()
                );
            }
        }
    }

    #[test]
    fn bad_presets_rejected() {
        let space = Space::coordinate(2).unwrap();
        for preset in [
            StreamPreset::ChainTo { target: vec![1.0, 1.0], rate: 1.0 },
            StreamPreset::ChainTo { target: vec![-1.0, 1.0], rate: 0.5 },
            StreamPreset::RandomDirected { dim: 2, seed: 1, count: 0 },
            StreamPreset::BoxApproach { target: vec![1.0] },
        ] {
            assert!(stream_family(&preset, space, 16).is_err(), "{preset:?}");
        }
    }

    #[test]
    fn bound_must_dominate() {
        let f = fam(&[&[0.0, 0.0], &[1.0, 2.0]]);
        assert_eq!(
            f.with_bound(v(&[1.0, 1.0])).unwrap_err(),
            Error::ExceedsBound { index: 1 }
        );
    }

    #[test]
    fn named_predicates() {
        assert!(SubspacePredicate::nonnegative().contains(&v(&[0.0, 2.0])));
        assert!(!SubspacePredicate::nonnegative().contains(&v(&[-1.0, 2.0])));
        assert!(SubspacePredicate::zero_coordinate(1).contains(&v(&[5.0, 0.0])));
        assert!(SubspacePredicate::constant().contains(&v(&[2.0, 2.0])));
        assert!(!SubspacePredicate::constant().contains(&v(&[2.0, 1.0])));
    }
}
