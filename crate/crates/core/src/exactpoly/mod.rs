//! Exact multivariate polynomials over ℚ, polynomial vector fields, and
//! differential forms with polynomial coefficients.
//!
//! Everything here is exact: a polynomial identity holds iff the difference
//! of both sides is the zero polynomial.

mod field;
mod form;
mod parse;
mod poly;

pub use field::VectorField;
pub use form::PolyForm;
pub use parse::parse_poly;
pub use poly::{Monomial, Poly, Vars};

use thiserror::Error;

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"3"`, `"-3/2"` into a rational.
pub fn parse_rational(text: &str) -> Result<Rational, PolyError> {
    let t = text.trim();
    let bad = || PolyError::Syntax {
        offset: 0,
        message: format!("invalid rational literal `{text}`"),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if num_traits::Zero::is_zero(&den) {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VarMismatch { left: Vec<String>, right: Vec<String> },
    #[error("coordinate index {index} out of range for {dim} variables")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
}

impl PolyError {
    /// Byte offset into the parsed text, for parse errors.
    pub fn offset(&self) -> Option<usize> {
        match self {
            PolyError::Syntax { offset, .. } | PolyError::UnknownVariable { offset, .. } => {
                Some(*offset)
            }
            _ => None,
        }
    }
}
