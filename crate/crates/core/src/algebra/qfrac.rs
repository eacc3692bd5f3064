//! Reduced fractions of polynomials in `q`, the coefficient field of [`Series`](super::Series).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{AlgebraError, QPoly};

/// An element of ℚ(q) stored as `num / den` with `gcd(num, den) = 1` in ℤ[q]
/// and a positive leading coefficient on `den`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QFrac {
    num: QPoly,
    den: QPoly,
}

impl QFrac {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return QFrac::zero();
        }
        if den.is_one() {
            return QFrac { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.leading().is_negative() {
            num = -num;
            den = -den;
        }
        QFrac { num, den }
    }

    pub fn zero() -> Self {
        QFrac { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        QFrac { num: QPoly::one(), den: QPoly::one() }
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        QFrac { num: QPoly::constant(c), den: QPoly::one() }
    }

    /// `n / d` for integers; panics on `d = 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::new(QPoly::constant(n), QPoly::constant(d)).expect("nonzero denominator")
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the denominator is one.
    pub fn as_integral(&self) -> Option<&QPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inverse(&self) -> Result<QFrac, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QFrac) -> Result<QFrac, AlgebraError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale_int(&self, c: &BigInt) -> QFrac {
        if c.is_zero() {
            return QFrac::zero();
        }
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Value at an integer `q`, as a reduced fraction with constant parts.
    pub fn specialize(&self, q: &BigInt) -> Result<QFrac, AlgebraError> {
        QFrac::new(self.num.specialize(q), self.den.specialize(q))
    }
}

impl From<QPoly> for QFrac {
    fn from(p: QPoly) -> Self {
        QFrac { num: p, den: QPoly::one() }
    }
}

impl Add<&QFrac> for &QFrac {
    type Output = QFrac;
    fn add(self, rhs: &QFrac) -> QFrac {
        if self.den == rhs.den {
            return QFrac::reduce(&self.num + &rhs.num, self.den.clone());
        }
        QFrac::reduce(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&QFrac> for &QFrac {
    type Output = QFrac;
    fn sub(self, rhs: &QFrac) -> QFrac {
        self + &(-rhs)
    }
}

impl Mul<&QFrac> for &QFrac {
    type Output = QFrac;
    fn mul(self, rhs: &QFrac) -> QFrac {
        if self.is_zero() || rhs.is_zero() {
            return QFrac::zero();
        }
        QFrac::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &QFrac {
    type Output = QFrac;
    fn neg(self) -> QFrac {
        QFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for QFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
