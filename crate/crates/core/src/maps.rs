//! Positive linear maps between coordinate lattices and the normality checks.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::{DirectedFamily, Members, StreamSource};
use crate::functional::WeightFunctional;
use crate::lattice::{Element, Space};
use crate::select::{select_sup, sup_increasing_sequence, SelectionConfig, SelectionResult};

/// An entrywise nonnegative `m x n` matrix, i.e. a positive map `R^n → R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveMap {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl PositiveMap {
    /// Builds the map from its rows. Any negative entry is rejected: it would
    /// send a basis vector outside the positive cone.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::Empty("map matrix"));
        }
        let mut entries = Vec::with_capacity(m * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(index) = entries.iter().position(|&e| e < 0.0) {
            return Err(Error::NotPositive { index });
        }
        Ok(PositiveMap {
            rows: m,
            cols: n,
            entries,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
    }

    pub fn domain_dim(&self) -> usize {
        self.cols
    }

    pub fn codomain_dim(&self) -> usize {
        self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    /// `max_i Σ_j a_ij`, the operator norm for `‖·‖∞`.
    pub fn norm_inf(&self) -> f64 {
        self.entries
            .chunks(self.cols)
            .map(|r| r.iter().sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let coords = x
            .coords()
            .ok_or(Error::Unsupported("positive maps act on coordinate vectors"))?;
        if coords.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: coords.len(),
            });
        }
        Ok(Element::Vector(
            self.entries
                .chunks(self.cols)
                .map(|r| r.iter().zip(coords).map(|(a, x)| a * x).sum())
                .collect(),
        ))
    }

    /// The image family `φ(J)`. Streams keep their domination witnesses,
    /// which stay valid because `φ` is monotone.
    pub fn image_family(&self, fam: &DirectedFamily) -> Result<DirectedFamily> {
        if fam.space().dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: fam.space().dim(),
            });
        }
        let space = Space::coordinate(self.rows)?.with_tolerance(fam.space().tolerance())?;
        let image = match fam.members() {
            Members::Finite(xs) => {
                let ys = xs.iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
                DirectedFamily::finite(space, ys)?
            }
            Members::Stream {
                source,
                scan_budget,
            } => DirectedFamily::stream(
                space,
                Arc::new(ImageStream {
                    inner: Arc::clone(source),
                    map: self.clone(),
                }),
                *scan_budget,
            )?,
        };
        match fam.bound() {
            Some(b) => image.with_bound(self.apply(b)?),
            None => Ok(image),
        }
    }
}

struct ImageStream {
    inner: Arc<dyn StreamSource>,
    map: PositiveMap,
}

impl StreamSource for ImageStream {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn element(&self, index: usize) -> Element {
        self.map
            .apply(&self.inner.element(index))
            .expect("image stream dimensions are checked at construction")
    }

    fn dominate(&self, i: usize, j: usize) -> usize {
        self.inner.dominate(i, j)
    }

    fn limit(&self) -> Option<Element> {
        self.inner.limit().and_then(|l| self.map.apply(&l).ok())
    }
}

/// Compares `φ(sup jₙ)` with `sup φ(jₙ)` for one increasing bounded sequence.
///
/// Equal within `m·τ` (`m` the codomain dimension) counts as normal.
pub fn check_sequentially_normal(
    phi: &PositiveMap,
    seq: &[Element],
    bound: &Element,
    domain: &Space,
) -> Result<bool> {
    let sup = sup_increasing_sequence(seq, bound, domain)?;
    let lhs = phi.apply(&sup)?;
    let mut rhs = phi.apply(&seq[0])?.coords().map(<[f64]>::to_vec).unwrap_or_default();
    for x in &seq[1..] {
        for (r, y) in rhs.iter_mut().zip(phi.apply(x)?.coords().unwrap_or_default()) {
            *r = r.max(*y);
        }
    }
    let tolerance = phi.codomain_dim() as f64 * domain.tolerance();
    Ok(lhs.distance_inf(&Element::Vector(rhs)) <= tolerance)
}

#[derive(Debug, Clone)]
pub struct NormalityReport {
    pub holds: bool,
    /// `φ(s)` with `s` the computed supremum of `J`.
    pub phi_of_sup: Element,
    /// The computed supremum of `φ(J)`.
    pub sup_of_image: Element,
    /// `‖φ(s) - t‖∞`.
    pub deviation: f64,
    /// Allowed deviation: `m·τ` plus what the two `ψ`-gaps can hide.
    pub slack: f64,
    /// `ψ`-gaps entering the slack, measured to the declared supremum when the
    /// family has one.
    pub domain_gap: f64,
    pub codomain_gap: f64,
}

/// The `ψ`-gap to the declared supremum when there is one, else the gap to
/// the inspected maximum.
fn effective_gap(r: &SelectionResult) -> f64 {
    r.gap.max(r.limit_gap.unwrap_or(0.0)).max(0.0)
}

/// Checks `φ(sup J) = sup φ(J)` by running the selection engine on both sides.
///
/// A gap `g` under a functional with least weight `w` allows each coordinate
/// of the computed supremum to be short by at most `g / w`. The slack is
/// therefore `m·τ + ‖φ‖∞·g_dom/w_dom + g_cod/w_cod`; it reduces to `m·τ` for
/// finite families, whose gaps are zero.
pub fn check_normal(
    phi: &PositiveMap,
    fam: &DirectedFamily,
    psi_dom: &WeightFunctional,
    psi_cod: &WeightFunctional,
    cfg: &SelectionConfig,
) -> Result<NormalityReport> {
    psi_dom.require_faithful()?;
    psi_cod.require_faithful()?;
    if psi_cod.dim() != phi.codomain_dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.codomain_dim(),
            found: psi_cod.dim(),
        });
    }
    let strict = SelectionConfig {
        force_nonfaithful: false,
        ..*cfg
    };
    let fam = match cfg.scan_budget {
        Some(b) => fam.clone().with_scan_budget(b)?,
        None => fam.clone(),
    };
    let dom = select_sup(&fam, psi_dom, &strict, None)?;
    let image = phi.image_family(&fam)?;
    let cod = select_sup(&image, psi_cod, &strict, None)?;

    let phi_of_sup = phi.apply(&dom.j_star)?;
    let deviation = phi_of_sup.distance_inf(&cod.j_star);
    let domain_gap = effective_gap(&dom);
    let codomain_gap = effective_gap(&cod);
    let slack = phi.codomain_dim() as f64 * fam.space().tolerance()
        + phi.norm_inf() * domain_gap / psi_dom.min_weight()
        + codomain_gap / psi_cod.min_weight();
    Ok(NormalityReport {
        holds: deviation <= slack,
        phi_of_sup,
        sup_of_image: cod.j_star,
        deviation,
        slack,
        domain_gap,
        codomain_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{brute_force_sup, check_directed, join_closure, stream_family, StreamPreset};
    use alloc::vec;

    fn v(xs: &[f64]) -> Element {
        Element::vector(xs.to_vec()).unwrap()
    }

    fn shear() -> PositiveMap {
        PositiveMap::new(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn apply_small_cases() {
        assert_eq!(shear().apply(&v(&[1.0, 1.0])).unwrap(), v(&[2.0, 1.0]));
        let x = v(&[0.3, -1.5, 2.0]);
        assert_eq!(PositiveMap::identity(3).unwrap().apply(&x).unwrap(), x);
        assert!(matches!(
            shear().apply(&v(&[1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn negative_entry_rejected() {
        assert_eq!(
            PositiveMap::new(vec![vec![1.0, -0.5], vec![0.0, 1.0]]),
            Err(Error::NotPositive { index: 1 })
        );
    }

    #[test]
    fn positivity_via_basis_vectors() {
        // Images of basis vectors are the columns; all nonnegative iff the
        // matrix is.
        let phi = PositiveMap::new(vec![vec![0.0, 2.0, 1.0], vec![3.0, 0.5, 0.0]]).unwrap();
        for j in 0..3 {
            let img = phi.apply(&Element::basis(3, j)).unwrap();
            assert!(img.coords().unwrap().iter().all(|&c| c >= 0.0));
            assert_eq!(img.coords().unwrap()[0], phi.entry(0, j));
        }
    }

    #[test]
    fn constant_sequence_is_normal() {
        let space = Space::coordinate(2).unwrap();
        let seq = vec![v(&[0.3, 0.4]); 5];
        assert!(check_sequentially_normal(&shear(), &seq, &v(&[1.0, 1.0]), &space).unwrap());
    }

    #[test]
    fn shear_on_chain_prefix() {
        let space = Space::coordinate(2).unwrap();
        let preset = StreamPreset::ChainTo { target: vec![1.0, 1.0], rate: 0.5 };
        let fam = stream_family(&preset, space, 80).unwrap();
        let seq = fam.sampled();
        assert!(check_sequentially_normal(&shear(), &seq, &v(&[1.0, 1.0]), &space).unwrap());
        let sup = sup_increasing_sequence(&seq, &v(&[1.0, 1.0]), &space).unwrap();
        // Both sides reach φ(t) = (2, 1) once r^k underflows the spacing.
        assert_eq!(shear().apply(&sup).unwrap(), v(&[2.0, 1.0]));
    }

    #[test]
    fn shear_on_join_closure_is_normal_exactly() {
        let space = Space::coordinate(2).unwrap();
        let fam = join_closure(
            vec![v(&[0.2, 0.9]), v(&[0.7, -0.1]), v(&[-0.4, 0.5])],
            space,
        )
        .unwrap();
        let psi = WeightFunctional::new(vec![0.6, 0.4]).unwrap();
        let report = check_normal(&shear(), &fam, &psi, &psi, &SelectionConfig::default()).unwrap();
        assert!(report.holds);
        assert_eq!(report.deviation, 0.0);
        // Oracle on both sides.
        let image = shear().image_family(&fam).unwrap();
        assert_eq!(
            shear().apply(&brute_force_sup(&fam).unwrap()).unwrap(),
            brute_force_sup(&image).unwrap()
        );
        assert!(check_directed(&image).unwrap().is_directed());
    }

    #[test]
    fn identity_reduces_to_selection() {
        let space = Space::coordinate(3).unwrap();
        let preset = StreamPreset::BoxApproach { target: vec![1.0, -2.0, 0.5] };
        let fam = stream_family(&preset, space, 120).unwrap();
        let psi = WeightFunctional::new(vec![0.2, 0.3, 0.5]).unwrap();
        let id = PositiveMap::identity(3).unwrap();
        let r = check_normal(&id, &fam, &psi, &psi, &SelectionConfig::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.phi_of_sup, r.sup_of_image);
    }

    #[test]
    fn nonfaithful_functionals_rejected() {
        let space = Space::coordinate(2).unwrap();
        let fam = join_closure(vec![v(&[0.0, 1.0])], space).unwrap();
        let good = WeightFunctional::new(vec![0.5, 0.5]).unwrap();
        let bad = WeightFunctional::new(vec![0.0, 1.0]).unwrap();
        let cfg = SelectionConfig::default();
        assert!(check_normal(&shear(), &fam, &bad, &good, &cfg).is_err());
        assert!(check_normal(&shear(), &fam, &good, &bad, &cfg).is_err());
    }
}
