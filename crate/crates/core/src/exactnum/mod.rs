//! Exact scalars (ℚ, ℚ(i), ℚ(ζ₁₂)), a float fallback, and integer polynomial algebra.

pub mod modp;
pub mod poly;
pub mod roots;
pub mod scalar;

pub use modp::{factor_mod_p, FactorizationModP};
pub use poly::{BiPoly, IntPoly};
pub use scalar::{ArithOp, Cyclo12, Scalar, FLOAT_TOL};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot mix float and exact scalars without explicit coercion")]
    IncompatibleVariants,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("polynomial degree too low")]
    DegreeTooLow,
    #[error("polynomial degree {0} exceeds the supported bound")]
    DegreeTooHigh(usize),
    #[error("leading coefficient divisible by {0}")]
    LeadingCoefficientDivisibleByP(u64),
    #[error("{0} is not a supported prime")]
    UnsupportedPrime(u64),
    #[error("value not representable exactly: {0}")]
    NotExact(String),
}

/// Applies a binary operation with variant promotion.
///
/// `Pow` takes the exponent from `b`, which must be an integer.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: &str) -> Result<Scalar, NumError> {
    match op {
        "add" => a.checked(b, ArithOp::Add),
        "sub" => a.checked(b, ArithOp::Sub),
        "mul" => a.checked(b, ArithOp::Mul),
        "div" => a.checked(b, ArithOp::Div),
        "pow" => {
            let e = b
                .to_bigint()
                .and_then(|e| i64::try_from(e).ok())
                .ok_or_else(|| NumError::Parse(b.to_string()))?;
            a.pow(e)
        }
        other => Err(NumError::Parse(other.to_string())),
    }
}
