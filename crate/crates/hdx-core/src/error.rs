//! Error types shared across the crate.

use thiserror::Error;

use crate::face::Face;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HdxError {
    #[error("empty complex: at least one top face is required")]
    EmptyComplex,

    #[error("purity violation: top faces of mixed cardinality ({0} and {1})")]
    MixedCardinality(usize, usize),

    #[error("duplicate top face {0}")]
    DuplicateTopFace(Face),

    #[error("top face weight must be positive (face {0})")]
    NonPositiveWeight(Face),

    #[error("{0} is not a face of the complex")]
    NotAFace(Face),

    #[error("dimension {found} out of range {min}..={max} ({context})")]
    DimensionOutOfRange {
        found: i32,
        min: i32,
        max: i32,
        context: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: i32, found: i32 },

    #[error("coefficient group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("invalid group specification '{0}': expected z<m>[xz<m>...] with m >= 2")]
    InvalidGroupSpec(String),

    #[error("invalid group element: residue {residue} out of range for modulus {modulus}")]
    InvalidGroupElement { residue: u64, modulus: u64 },

    #[error("ordered face has repeated vertex {0}")]
    RepeatedVertex(u32),

    #[error("enumeration budget exceeded: requires {required} items, budget {budget} (set HDX_BUDGET to raise)")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("graph has {0} vertices, above the exhaustive subset cap of {1}")]
    SubsetCapExceeded(usize, usize),

    #[error("beta must be positive for heavy-face classification, got {0}")]
    NonPositiveBeta(String),

    #[error("cochain is not locally minimal ({0})")]
    NotLocallyMinimal(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
