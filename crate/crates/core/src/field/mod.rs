//! Exact arithmetic over Q and GF(p): scalars, dense matrices, univariate and
//! bivariate polynomials, and the product polynomials built from an
//! eigenvalue sequence.

mod bipoly;
mod matrix;
mod poly;
mod rational;
mod scalar;
mod tau;

pub use bipoly::BiPoly;
pub use matrix::Matrix;
pub use poly::Poly;
pub use rational::Rational;
pub use scalar::{Field, Scalar};
pub use tau::{make_eta, make_tau, TauEtaFamily};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("empty sequence")]
    Empty,
}

/// Checks that every scalar lives in `field`.
pub(crate) fn ensure_field<'a>(
    field: Field,
    values: impl IntoIterator<Item = &'a Scalar>,
) -> Result<(), FieldError> {
    for v in values {
        if v.field() != field {
            return Err(FieldError::FieldMismatch(field, v.field()));
        }
    }
    Ok(())
}
