//! Positive linear functionals on coordinate lattices given by weights.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::Element;

/// Largest allowed `|Σ wᵢ - 1|` for a functional flagged as a state.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// `ψ(x) = Σ wᵢ xᵢ` with all `wᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunctional {
    weights: Vec<f64>,
    normalized: bool,
}

impl WeightFunctional {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty("weight list"));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(index) = weights.iter().position(|&w| w < 0.0) {
            return Err(Error::NotPositive { index });
        }
        Ok(WeightFunctional {
            weights,
            normalized: false,
        })
    }

    /// A state: positive weights summing to one.
    pub fn state(weights: Vec<f64>) -> Result<Self> {
        let mut f = Self::new(weights)?;
        let total = f.total_weight();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { total });
        }
        f.normalized = true;
        Ok(f)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn evaluate(&self, x: &Element) -> Result<f64> {
        let coords = x.coords().ok_or(Error::Unsupported(
            "weight functionals act on coordinate vectors",
        ))?;
        if coords.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                found: coords.len(),
            });
        }
        Ok(self.weights.iter().zip(coords).map(|(w, x)| w * x).sum())
    }

    /// Faithful iff every weight is strictly positive. No threshold: `1e-300`
    /// counts as positive.
    pub fn is_faithful(&self) -> bool {
        self.null_coordinate().is_none()
    }

    /// First coordinate with zero weight. Its basis vector is positive,
    /// nonzero and annihilated by the functional.
    pub fn null_coordinate(&self) -> Option<usize> {
        self.weights.iter().position(|&w| w == 0.0)
    }

    /// A positive nonzero element with `ψ(a) = 0`, if one exists.
    pub fn null_witness(&self) -> Option<Element> {
        self.null_coordinate()
            .map(|i| Element::basis(self.weights.len(), i))
    }

    pub fn require_faithful(&self) -> Result<()> {
        match self.null_coordinate() {
            Some(coordinate) => Err(Error::NotFaithful { coordinate }),
            None => Ok(()),
        }
    }
}
