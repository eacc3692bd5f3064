//! Dense polynomials in `q` with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

/// An element of ℤ[q]; `coeffs[i]` is the coefficient of `q^i`.
///
/// The coefficient vector never has a trailing zero, so structural equality
/// is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QPoly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * q^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer content, signed so that the primitive part has a positive
    /// leading coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let c = self.content();
        QPoly { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    /// Divides every coefficient by `c`, failing unless all divisions are exact.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Result<QPoly, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (d, r) = x.div_rem(c);
            if !r.is_zero() {
                return Err(AlgebraError::InexactDivision);
            }
            out.push(d);
        }
        Ok(QPoly { coeffs: out })
    }

    /// Exact quotient in ℤ[q].
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly, AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        if dd == 0 {
            return self.div_exact_scalar(&divisor.coeffs[0]);
        }
        let nd = self.degree().unwrap();
        if nd < dd {
            return Err(AlgebraError::InexactDivision);
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(AlgebraError::InexactDivision);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(QPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder: `lc(divisor)^(deg a - deg b + 1) * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &QPoly) -> QPoly {
        let dd = divisor.degree().expect("pseudo_rem by zero");
        let mut rem = self.coeffs.clone();
        let lead = divisor.leading();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.pop().unwrap();
            let shift = rem.len() - dd;
            for x in rem.iter_mut() {
                *x *= &lead;
            }
            if !top.is_zero() {
                for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                    rem[shift + j] -= &top * d;
                }
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        QPoly::from_coeffs(rem)
    }

    /// Greatest common divisor with positive leading coefficient; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content().abs());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content().abs());
        }
        let cg = self.content().gcd(&other.content());
        if self.is_constant() || other.is_constant() {
            return QPoly::constant(cg);
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cg)
    }

    /// Composition with `q ↦ c` for a constant; kept as a polynomial.
    pub fn specialize(&self, q: &BigInt) -> QPoly {
        QPoly::constant(self.eval(q))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// True when the polynomial has a single nonzero term.
    pub fn is_monomial(&self) -> bool {
        self.term_count() == 1
    }

    fn add_into(&mut self, other: &QPoly, negate: bool) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if negate {
                *a -= b;
            } else {
                *a += b;
            }
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    fn mul_ref(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::constant(c)
    }
}

impl From<BigInt> for QPoly {
    fn from(c: BigInt) -> Self {
        QPoly::constant(c)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        self.add_into(rhs, false);
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        self.add_into(rhs, true);
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<QPoly> for &QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct QPolyRepr {
    var: String,
    coeffs: Vec<String>,
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QPolyRepr {
            var: "q".to_string(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = QPolyRepr::deserialize(d)?;
        if repr.var != "q" {
            return Err(serde::de::Error::custom(format!("expected var \"q\", got {:?}", repr.var)));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn eval_examples() {
        let two = BigInt::from(2);
        assert_eq!(p(&[-1, 1]).eval(&two), BigInt::from(1));
        // 3q^3 - 3q^2 at q = 2
        assert_eq!(p(&[0, 0, -3, 3]).eval(&two), BigInt::from(12));
        // 3q^6 - 9q^4 + 6q^3 at q = 2
        assert_eq!(p(&[0, 0, 0, 6, -9, 0, 3]).eval(&two), BigInt::from(96));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 3]);
        assert_eq!(a.div_exact(&p(&[-1, 1])).unwrap(), p(&[2, 0, 3]));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), Err(AlgebraError::InexactDivision));
        assert_eq!(p(&[1]).div_exact(&QPoly::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn gcd_normalized() {
        let f = p(&[-1, 1]);
        let a = &f * &p(&[3, 1]);
        let b = &f * &p(&[-5, 2]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(p(&[4, 6]).gcd(&p(&[6, 9])), p(&[2, 3]));
        assert_eq!((-&f).gcd(&QPoly::zero()), f);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 1]).to_string(), "q - 1");
        assert_eq!(p(&[0, 0, -3, 3]).to_string(), "3q^3 - 3q^2");
        assert_eq!(p(&[-2]).to_string(), "-2");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(p(&[-1, 1])).unwrap();
        assert_eq!(v, serde_json::json!({"var": "q", "coeffs": ["-1", "1"]}));
        let back: QPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, p(&[-1, 1]));
    }
}
