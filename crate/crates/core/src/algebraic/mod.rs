//! Algebraic integers: root isolation, P.V./Salem classification, power residues,
//! and Waring's `g(k)`.

pub mod classify;
pub mod roots;
pub mod waring;

pub use classify::{
    classify, classify_with, pv_power_residues, reciprocal_gcd, unit_circle_roots, Classification, Kind,
    PowerResidue, PvResidues,
};
pub use roots::{isolate_roots, power_sums, Root, RootProfile};
pub use waring::{waring_condition, waring_g, WaringReport};

use crate::poly::IntPolynomial;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum AlgebraicError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots")]
    ConstantPolynomial,
    #[error("NotMonic: leading coefficient must be 1")]
    NotMonic,
    #[error("Reducible: has the factor {factor}")]
    Reducible { factor: IntPolynomial },
    #[error("NotPV: polynomial classifies as {}", .0.name())]
    NotPV(Kind),
    #[error("PrecisionExhausted: root refinement reached {cap} bits")]
    PrecisionExhausted { cap: u32 },
    #[error("KTooSmall: k = {k} but the formula needs k >= 5")]
    KTooSmall { k: u32 },
    #[error("ConditionFails: ||(3/2)^{k}|| <= (3/4)^{k}")]
    ConditionFails { k: u32 },
}
