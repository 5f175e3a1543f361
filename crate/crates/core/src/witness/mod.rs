//! Case classification, constructive chain realizations, triangle
//! decompositions and entropic witnesses for tripartite distributions.

mod chain;
mod inequalities;
mod triangle;

pub use chain::{chain_compatible, ChainRealizationPlan};
pub use inequalities::{
    evaluate_inequalities, scan_mixture_threshold, MixtureThreshold, NetworkVerdict, ScanKind, WitnessReport,
    STRICT_GUARD,
};
pub use triangle::{triangle_decomposition_search, TriangleDecomposition, MAX_SEARCH_CARD};

use serde::Serialize;

use crate::probtab::JointDistribution;
use crate::shannon::EntropyProfile;
use crate::Result;

/// Sign pattern of `I(X;Y)` and `I(X;Y|Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    /// `I(X;Y) = 0` and `I(X;Y|Z) > 0`.
    CaseOne,
    /// Both positive.
    CaseTwo,
    /// `I(X;Y) > 0` and `I(X;Y|Z) = 0`.
    NonNegative,
    /// Both zero.
    Degenerate,
}

/// Labels a three-variable distribution (variables taken in table order).
pub fn classify_case(p: &JointDistribution, tol: f64) -> Result<CaseLabel> {
    let h = EntropyProfile::of(p)?;
    Ok(label(h.i_xy(), h.i_xy_given_z(), tol))
}

pub(crate) fn label(i_xy: f64, i_xy_z: f64, tol: f64) -> CaseLabel {
    match (i_xy > tol, i_xy_z > tol) {
        (false, true) => CaseLabel::CaseOne,
        (true, true) => CaseLabel::CaseTwo,
        (true, false) => CaseLabel::NonNegative,
        (false, false) => CaseLabel::Degenerate,
    }
}
