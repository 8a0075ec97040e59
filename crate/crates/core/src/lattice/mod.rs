//! Integral lattices: Gram data, Hermite/Smith forms, ℤ-span membership,
//! orthogonal complements and ADE recognition.

mod dynkin;
mod gram;
mod hnf;

pub use dynkin::{cartan_matrix, dynkin_classify, RootFamily, RootType};
pub use gram::{orth_complement, orth_complement_basis, short_vectors, signature, simple_root_basis, GramLattice, Signature};
pub use hnf::{combination, hnf, hnf_rank, integer_kernel, is_saturated, smith_diagonal, transpose, z_span_membership, Membership};

use num_bigint::BigInt;

pub type IntRow = Vec<BigInt>;
pub type IntMatrix = Vec<IntRow>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("label count {labels} does not match dimension {dim}")]
    LabelMismatch { labels: usize, dim: usize },
    #[error("entry ({0}, {1}) is not an integer")]
    NonIntegral(usize, usize),
    #[error("not a root basis: {0}")]
    NotRootBasis(String),
    #[error("vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}
