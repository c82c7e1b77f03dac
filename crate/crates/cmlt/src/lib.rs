//! Computational toolkit for CM elliptic curves over the rationals: residue
//! symbols in `Z[i]` and `Z[ω]`, Gauss-sum identities, Frobenius traces for
//! the nine class-number-one discriminants, prime counting by trace, and the
//! explicit Hardy-Littlewood / Lang-Trotter density constants together with
//! their vanishing and symmetry classifiers.

pub mod arith;
pub mod classify;
pub mod constants;
pub mod counts;
pub mod eisenstein;
pub mod frobenius;
pub mod gaussian;
pub mod verify;

pub use arith::{Factorization, Rational};

/// The nine discriminants with class number one.
pub const CM_DISCRIMINANTS: [i64; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("element is divisible by 1+i")]
    NotOdd,
    #[error("element is divisible by 1-ω")]
    NotCoprimeTo3,
    #[error("modulus is not prime")]
    NotPrime,
    #[error("norm is not coprime to 6")]
    BadNorm,
    #[error("modulus too large for brute force (limit {0})")]
    TooLarge(u64),
    #[error("rounding residual {0:e} exceeds tolerance")]
    Nonconvergent(f64),
    #[error("{0} is a bad prime for this curve")]
    BadPrime(u64),
    #[error("{p} does not split for D = {d}")]
    NotSplit { d: i64, p: u64 },
    #[error("trace r must be nonzero")]
    ZeroR,
    #[error("residue class is not coprime to the modulus")]
    BadResidue,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFail(String),
    #[error("discriminant {0} is not one of 1, 2, 3, 7, 11, 19, 43, 67, 163")]
    BadDiscriminant(i64),
    #[error("rational overflow")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_discriminant(d: i64) -> Result<()> {
    if CM_DISCRIMINANTS.contains(&d) {
        Ok(())
    } else {
        Err(Error::BadDiscriminant(d))
    }
}
