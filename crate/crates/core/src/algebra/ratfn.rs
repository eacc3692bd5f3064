//! Reduced quotients of polynomials in ℤ[q][u].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize};

use super::{AlgebraError, QPoly, UPoly};

/// `num / den` with no common factor of positive `u`-degree, coprime
/// ℤ[q]-contents, and a positive leading integer coefficient on `den`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct RationalFn {
    num: UPoly,
    den: UPoly,
}

impl RationalFn {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFn::zero());
        }
        let g = num.gcd(&den)?;
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_exact_q(&c)?;
            den = den.div_exact_q(&c)?;
        }
        if den.leading_int().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RationalFn { num, den })
    }

    pub fn zero() -> Self {
        RationalFn { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        RationalFn { num: UPoly::one(), den: UPoly::one() }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the denominator is one.
    pub fn as_poly(&self) -> Option<&UPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<RationalFn, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<RationalFn, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn specialize(&self, q: &BigInt) -> Result<RationalFn, AlgebraError> {
        RationalFn::new(self.num.specialize(q), self.den.specialize(q))
    }

    /// Value at `u = 0`, as `(num(0), den(0))`.
    pub fn at_zero(&self) -> (QPoly, QPoly) {
        (self.num.coeff(0), self.den.coeff(0))
    }

    /// Derivative with respect to `u`.
    pub fn derivative(&self) -> RationalFn {
        let n = &self.num.derivative() * &self.den - &self.num * &self.den.derivative();
        RationalFn::new(n, &self.den * &self.den).expect("nonzero denominator")
    }
}

impl From<UPoly> for RationalFn {
    fn from(p: UPoly) -> Self {
        RationalFn::new(p, UPoly::one()).expect("nonzero denominator")
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        let n = &self.num * &rhs.den + &rhs.num * &self.den;
        RationalFn::new(n, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Deserialize)]
struct RationalFnRepr {
    num: UPoly,
    den: UPoly,
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalFnRepr::deserialize(d)?;
        RationalFn::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}
