//! Curve configurations with exact intersection pairings: the double Kummer
//! pencil on the K3 surface, its extension by the conics `C1..C4`, the
//! involutions θ and ε acting on labels, the quotient configuration on the
//! Enriques surface, and the blow-up ledger used for the canonical class.

mod blowup;
mod config;
mod isometry;
mod kummer;
mod quotient;

pub use blowup::{canonical_multiple, BlowupLedger, Divisor};
pub use config::{Configuration, Curve, Incidence, Marking, SurfaceTag};
pub use isometry::{check_enriques_structure, verify_isometry, IsometryPerm, IsometryReport};
pub use kummer::{build_double_kummer, epsilon, extend_with_conics, theta, x_coordinate, u_coordinate, KUMMER_CURVES};
pub use quotient::{quotient_pushforward, unique_fixed_component};

use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SurfaceError {
    #[error("unknown curve label {0:?}")]
    UnknownLabel(String),
    #[error("unknown marking {0:?}")]
    UnknownMarking(String),
    #[error("wrong base configuration: {0}")]
    WrongBase(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("permutation domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("pairing not preserved for ({a}, {b}): {before} maps to {after}")]
    PairingNotPreserved { a: String, b: String, before: Rational, after: Rational },
    #[error("not an involution at {0:?}")]
    NotInvolution(String),
    #[error("marking map inconsistent: {0}")]
    MarkingMismatch(String),
    #[error("permutation fixes curve labels {0:?}")]
    NotFree(Vec<String>),
    #[error("pushforward pairing of ({a}, {b}) is odd")]
    OddPushforward { a: String, b: String },
    #[error("marking {marking:?} lies on {found:?} fixed-locus curves, expected exactly one")]
    NotUnique { marking: String, found: Vec<String> },
    #[error("odd multiple {0} of the canonical class: K is 2-torsion, only even multiples are divisor classes here")]
    OddCanonicalMultiple(i64),
    #[error("invalid blow-up ledger: {0}")]
    InvalidLedger(String),
}
