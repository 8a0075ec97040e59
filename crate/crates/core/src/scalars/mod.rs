//! Exact scalar tower: rationals, multivariate polynomials, rational
//! functions, Laurent polynomials in `t`, quadratic extensions, the
//! projective line, and fraction-free linear algebra over any of them.

mod laurent;
mod linalg;
mod poly;
mod proj;
mod quadext;
mod ratfunc;
pub mod rational;

pub use laurent::LaurentT;
pub use linalg::{inverse, matrix_rank_det, nullspace, RankDet};
pub use poly::{Monomial, MultiPoly, Var};
pub use proj::ProjValue;
pub use quadext::QuadExt;
pub use ratfunc::RatFunc;
pub use rational::{frac, rat, Rational};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero Laurent polynomial has no degree range")]
    ZeroLaurent,
    #[error("cannot parse scalar text {0:?}")]
    Parse(String),
}

/// Commutative ring with exact division where it exists.
///
/// Every element of the tower implements this, so elimination code can be
/// written once and run over rationals, polynomials or function fields.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `Some(q)` with `self == q * rhs`, `None` if no such `q` exists.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_ref(rhs)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!Ring::is_zero(self)).then(|| num_traits::Inv::inv(self))
    }
}

impl Ring for num_bigint::BigInt {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        use num_integer::Integer;
        if Ring::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        Ring::is_zero(&r).then_some(q)
    }
}
