//! The Cremona involution of P³ and the quadric it preserves, exact
//! verification of the `p_ij ↔ p_ji` swap at rational specializations,
//! and Möbius maps of P¹ (cross-ratios, translation conjugation).

mod map;
mod moebius;
mod rulings;

pub use map::{
    alpha, contraction_check, involution_cofactor, preserves_quadric, x, QuadricForm, RationalMapP3,
};
pub use moebius::{conjugate_translation, cross_ratio, cross_ratio_equivalent, cross_ratio_orbit, MoebiusMap};
pub use rulings::{
    ruling_discriminant, search_specializations, verify_pij_swap, verify_pij_swap_ext, verify_pij_swap_with,
    PijRecord, SwapReport,
};

use crate::scalars::MultiPoly;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CremonaError {
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("quadric not preserved; remainder {remainder}")]
    NotPreserved { remainder: MultiPoly },
    #[error("not an involution: component {component} of the square is {value}")]
    NotInvolution { component: usize, value: MultiPoly },
    #[error("no contraction at x{index}: {survivors} components survive")]
    NoContraction { index: usize, survivors: usize },
    #[error("degenerate quadric: determinant vanishes")]
    Degenerate,
    #[error("a parameter value is zero; the map is not a Cremona involution there")]
    ZeroParameter,
    #[error("rulings through p{index}{index} are irrational (discriminant {discriminant} is not a square); use the quadratic-extension path")]
    IrrationalRulings { index: usize, discriminant: String },
    #[error("ruling lines through p{i}{i} and p{j}{j} do not meet as expected")]
    RulingGeometry { i: usize, j: usize },
    #[error("map is undefined at p{i}{j}")]
    Indeterminate { i: usize, j: usize },
    #[error("swap fails: image of p{i}{j} is not p{j}{i}")]
    SwapFailed { i: usize, j: usize },
    #[error("tuple has repeated entries")]
    RepeatedEntries,
    #[error("singular Möbius matrix")]
    Singular,
    #[error("conjugation identity fails for n = {0}")]
    ConjugationMismatch(u32),
}
