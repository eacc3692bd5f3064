//! Exact arithmetic: ℤ[q], ℤ[q][u], reduced rational functions in `u`, and
//! truncated power series with coefficients in ℚ(q).

mod modular;
mod qfrac;
mod qpoly;
mod ratfn;
mod series;
mod upoly;

pub use modular::{crt_symmetric, interpolate, is_prime, primes_below, Fp, PrimeField};
pub use qfrac::QFrac;
pub use qpoly::QPoly;
pub use ratfn::RationalFn;
pub use series::Series;
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inexact division")]
    InexactDivision,
    #[error("quotient is not integral over Z[q]")]
    NonIntegral,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("constant term is not invertible")]
    NonInvertibleConstant,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series coefficient of u^{0} is not a polynomial in q")]
    NotIntegral(usize),
}
