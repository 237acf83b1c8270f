//! Ordered vector spaces used throughout the crate.
//!
//! Two concrete models are provided:
//!
//! * the coordinate lattice `R^n` with the componentwise order, which is the
//!   hermitian part of the commutative algebra of diagonal `n x n` matrices and
//!   a vector lattice;
//! * real symmetric `2 x 2` matrices under the Loewner order, an ordered vector
//!   space in which pairs need not have a least upper bound.
//!
//! Order predicates are tolerant (absolute tolerance `τ`, default `1e-9`).
//! The lattice constructions `join`, `meet` and `pos_part` are exact: each
//! coordinate of the result is one of the operands' coordinates.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default absolute tolerance for order comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Real symmetric matrix `[[a, b], [b, c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Sym2 {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Sym2 { a, b, c }
    }

    pub const fn identity() -> Self {
        Sym2::new(1.0, 0.0, 1.0)
    }

    pub const fn zero() -> Self {
        Sym2::new(0.0, 0.0, 0.0)
    }

    pub const fn diag(a: f64, c: f64) -> Self {
        Sym2::new(a, 0.0, c)
    }

    pub fn add(&self, other: &Sym2) -> Sym2 {
        Sym2::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }

    pub fn sub(&self, other: &Sym2) -> Sym2 {
        Sym2::new(self.a - other.a, self.b - other.b, self.c - other.c)
    }

    pub fn scale(&self, s: f64) -> Sym2 {
        Sym2::new(s * self.a, s * self.b, s * self.c)
    }

    pub fn trace(&self) -> f64 {
        self.a + self.c
    }

    pub fn det(&self) -> f64 {
        self.a * self.c - self.b * self.b
    }

    fn half_spread(&self) -> f64 {
        libm::hypot((self.a - self.c) / 2.0, self.b)
    }

    /// Least eigenvalue, `(a+c)/2 - sqrt(((a-c)/2)^2 + b^2)`.
    pub fn min_eigenvalue(&self) -> f64 {
        (self.a + self.c) / 2.0 - self.half_spread()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mid = (self.a + self.c) / 2.0;
        let r = self.half_spread();
        (mid - r, mid + r)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }

    pub fn norm_inf(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }
}

/// A point of one of the concrete ordered vector spaces.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Vector(Vec<f64>),
    Matrix(Sym2),
}

impl Element {
    /// A coordinate vector; rejects NaN and infinities.
    pub fn vector(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Element::Vector(values))
    }

    pub fn matrix(m: Sym2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Element::Matrix(m))
    }

    pub fn zeros(dim: usize) -> Self {
        Element::Vector(alloc::vec![0.0; dim])
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = alloc::vec![0.0; dim];
        v[i] = 1.0;
        Element::Vector(v)
    }

    pub fn is_vector(&self) -> bool {
        matches!(self, Element::Vector(_))
    }

    /// Coordinates of a vector element. Matrices have none.
    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Element::Vector(v) => Some(v),
            Element::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Sym2> {
        match self {
            Element::Matrix(m) => Some(m),
            Element::Vector(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Element::Vector(v) => v.iter().all(|x| x.is_finite()),
            Element::Matrix(m) => m.is_finite(),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        match self {
            Element::Vector(v) => v.iter().fold(0.0, |acc, x| acc.max(x.abs())),
            Element::Matrix(m) => m.norm_inf(),
        }
    }

    fn zip_with(&self, other: &Element, f: impl Fn(f64, f64) -> f64) -> Result<Element> {
        match (self, other) {
            (Element::Vector(x), Element::Vector(y)) => {
                if x.len() != y.len() {
                    return Err(Error::DimensionMismatch {
                        expected: x.len(),
                        found: y.len(),
                    });
                }
                Ok(Element::Vector(
                    x.iter().zip(y).map(|(&a, &b)| f(a, b)).collect(),
                ))
            }
            (Element::Matrix(x), Element::Matrix(y)) => Ok(Element::Matrix(Sym2::new(
                f(x.a, y.a),
                f(x.b, y.b),
                f(x.c, y.c),
            ))),
            _ => Err(Error::InvalidParameter(
                "cannot combine a vector with a matrix".into(),
            )),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Element {
        match self {
            Element::Vector(v) => Element::Vector(v.iter().map(|x| s * x).collect()),
            Element::Matrix(m) => Element::Matrix(m.scale(s)),
        }
    }

    /// `‖self - other‖∞`; panics-free, returns `INFINITY` on shape mismatch.
    pub fn distance_inf(&self, other: &Element) -> f64 {
        self.sub(other).map_or(f64::INFINITY, |d| d.norm_inf())
    }
}

impl From<Sym2> for Element {
    fn from(m: Sym2) -> Self {
        Element::Matrix(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    /// `R^dim` with the componentwise order; a vector lattice.
    CoordinateLattice { dim: usize },
    /// Real symmetric 2x2 matrices under the Loewner order; not a lattice.
    SymmetricMatrix2,
}

/// Descriptor of an ordered vector space together with its order tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Space {
    kind: SpaceKind,
    tolerance: f64,
}

impl Space {
    pub fn coordinate(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        Ok(Space {
            kind: SpaceKind::CoordinateLattice { dim },
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn symmetric2() -> Self {
        Space {
            kind: SpaceKind::SymmetricMatrix2,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "order tolerance must be finite and >= 0, got {tolerance}"
            )));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Dimension as a real vector space (3 for symmetric 2x2 matrices).
    pub fn dim(&self) -> usize {
        match self.kind {
            SpaceKind::CoordinateLattice { dim } => dim,
            SpaceKind::SymmetricMatrix2 => 3,
        }
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self.kind, SpaceKind::CoordinateLattice { .. })
    }

    pub fn zero(&self) -> Element {
        match self.kind {
            SpaceKind::CoordinateLattice { dim } => Element::zeros(dim),
            SpaceKind::SymmetricMatrix2 => Element::Matrix(Sym2::zero()),
        }
    }

    /// Checks that `x` lives in this space and is finite.
    pub fn check(&self, x: &Element) -> Result<()> {
        match (self.kind, x) {
            (SpaceKind::CoordinateLattice { dim }, Element::Vector(v)) => {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
            }
            (SpaceKind::SymmetricMatrix2, Element::Matrix(_)) => {}
            (SpaceKind::CoordinateLattice { .. }, Element::Matrix(_)) => {
                return Err(Error::InvalidParameter(
                    "matrix element in a coordinate lattice".into(),
                ))
            }
            (SpaceKind::SymmetricMatrix2, Element::Vector(_)) => {
                return Err(Error::InvalidParameter(
                    "vector element in the symmetric matrix space".into(),
                ))
            }
        }
        if !x.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    fn coords_of<'a>(&self, x: &'a Element) -> Result<&'a [f64]> {
        self.check(x)?;
        match x {
            Element::Vector(v) => Ok(v),
            Element::Matrix(_) => Err(Error::Unsupported(
                "lattice operations are undefined for symmetric matrices under the Loewner order",
            )),
        }
    }

    /// Tolerant order: `x ≤ y`.
    ///
    /// Componentwise `x_i ≤ y_i + τ` in the coordinate lattice, and
    /// `λ_min(y - x) ≥ -τ` for symmetric matrices. Reflexive; transitivity
    /// only holds up to accumulated tolerance (`x ≤ y ≤ z` gives `x ≤ z` at `2τ`).
    pub fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        let tol = self.tolerance;
        match (x, y) {
            (Element::Vector(x), Element::Vector(y)) => {
                Ok(x.iter().zip(y).all(|(&a, &b)| a <= b + tol))
            }
            (Element::Matrix(x), Element::Matrix(y)) => Ok(y.sub(x).min_eigenvalue() >= -tol),
            _ => unreachable!("check() guarantees matching shapes"),
        }
    }

    /// `x ≤ y` and `y ≤ x`, both at tolerance.
    pub fn order_eq(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.leq(x, y)? && self.leq(y, x)?)
    }

    /// Least upper bound of a pair (componentwise maximum).
    pub fn join(&self, x: &Element, y: &Element) -> Result<Element> {
        let (x, y) = (self.coords_of(x)?, self.coords_of(y)?);
        Ok(Element::Vector(
            x.iter().zip(y).map(|(&a, &b)| a.max(b)).collect(),
        ))
    }

    /// Greatest lower bound of a pair (componentwise minimum).
    pub fn meet(&self, x: &Element, y: &Element) -> Result<Element> {
        let (x, y) = (self.coords_of(x)?, self.coords_of(y)?);
        Ok(Element::Vector(
            x.iter().zip(y).map(|(&a, &b)| a.min(b)).collect(),
        ))
    }

    /// Positive part `x₊ = x ∨ 0`.
    pub fn pos_part(&self, x: &Element) -> Result<Element> {
        let x = self.coords_of(x)?;
        Ok(Element::Vector(x.iter().map(|&a| a.max(0.0)).collect()))
    }

    /// Exact (tolerance-free) componentwise comparison, used where the
    /// constructions are exact and no rounding has occurred.
    pub fn leq_exact(&self, x: &Element, y: &Element) -> Result<bool> {
        let (x, y) = (self.coords_of(x)?, self.coords_of(y)?);
        Ok(x.iter().zip(y).all(|(a, b)| a <= b))
    }
}

/// Order-equality deduplication keeping the first representative.
pub(crate) fn dedup_order_eq(space: &Space, elements: Vec<Element>) -> Result<Vec<Element>> {
    let mut out: Vec<Element> = Vec::with_capacity(elements.len());
    for e in elements {
        let mut seen = false;
        for kept in &out {
            if space.order_eq(kept, &e)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(e);
        }
    }
    Ok(out)
}
