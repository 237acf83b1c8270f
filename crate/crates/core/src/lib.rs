//! Suprema of upward directed families in vector lattices, selected by
//! increasing sequences guided by a faithful positive functional.
//!
//! Everything here is allocation-only (`no_std` + `alloc`). File formats, the
//! CLI and the randomized suites live in the `monosel` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod family;
pub mod functional;
pub mod gns;
pub mod hermitian;
pub mod lattice;
pub mod maps;
pub mod select;

pub use error::{Error, Result};
pub use family::{
    brute_force_sup, check_directed, join_closure, stream_family, DirectedFamily, Directedness,
    Members, StreamPreset, StreamSource, SubspacePredicate,
};
pub use functional::WeightFunctional;
pub use lattice::{Element, Space, SpaceKind, Sym2, DEFAULT_TOLERANCE};
pub use maps::{check_normal, check_sequentially_normal, NormalityReport, PositiveMap};
pub use select::{
    select_sup, sup_increasing_sequence, verify_residual_bound, SelectionConfig, SelectionResult,
    TraceRecord,
};
