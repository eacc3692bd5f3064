//! Polynomials in `u` over ℤ[q].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgebraError, QFrac, QPoly};

/// An element of ℤ[q][u]; `coeffs[i]` is the coefficient of `u^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<QPoly>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(QPoly::one())
    }

    /// The indeterminate `u`.
    pub fn u() -> Self {
        Self::monomial(QPoly::one(), 1)
    }

    pub fn constant(c: QPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<QPoly>) -> Self {
        while coeffs.last().is_some_and(QPoly::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// `c * u^e`.
    pub fn monomial(c: QPoly, e: usize) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![QPoly::zero(); e + 1];
        coeffs[e] = c;
        UPoly { coeffs }
    }

    /// Integer coefficients in `u` (all constant in `q`).
    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| QPoly::constant(x)).collect())
    }

    /// Builds a polynomial from `(q-coeffs, u-exponent)` terms.
    pub fn from_terms(terms: &[(&[i64], usize)]) -> Self {
        let mut out = UPoly::zero();
        for (q, e) in terms {
            out += &UPoly::monomial(QPoly::from_i64s(q), *e);
        }
        out
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<QPoly> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> QPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Largest `q`-degree among the coefficients.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(QPoly::degree).max()
    }

    /// Sum of absolute values of all integer coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(QPoly::l1_norm).sum()
    }

    /// Leading integer coefficient: the top `q`-coefficient of the top `u`-coefficient.
    pub fn leading_int(&self) -> BigInt {
        self.leading().leading()
    }

    pub fn scale(&self, c: &QPoly) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_int(&self, c: &BigInt) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    /// Multiplication by `u^e`.
    pub fn shift(&self, e: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![QPoly::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    /// Keeps terms of degree `≤ order`.
    pub fn truncate(&self, order: usize) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigInt::from(i)))
                .collect(),
        )
    }

    /// Evaluation at `u = x` with `x ∈ ℤ[q]`.
    pub fn eval(&self, x: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Replaces `q` by an integer.
    pub fn specialize(&self, q: &BigInt) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c.specialize(q)).collect())
    }

    /// gcd of the `q`-polynomial coefficients, signed like the leading coefficient.
    pub fn content(&self) -> QPoly {
        let mut g = QPoly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.leading_int().is_negative() {
            -g
        } else {
            g
        }
    }

    /// `self / content`, with a positive leading integer coefficient.
    pub fn primitive_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let c = self.content();
        self.div_exact_q(&c).expect("content divides every coefficient")
    }

    /// Divides every coefficient by `c` exactly in ℤ[q].
    pub fn div_exact_q(&self, c: &QPoly) -> Result<UPoly, AlgebraError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.div_exact(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UPoly::from_coeffs(coeffs))
    }

    /// Exact quotient in ℤ[q][u]; fails if the divisor does not divide.
    pub fn div_exact(&self, divisor: &UPoly) -> Result<UPoly, AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(UPoly::zero());
        }
        if dd == 0 {
            return self.div_exact_q(&divisor.coeffs[0]);
        }
        let nd = self.degree().unwrap();
        if nd < dd {
            return Err(AlgebraError::InexactDivision);
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![QPoly::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            if rem[i + dd].is_zero() {
                continue;
            }
            let c = rem[i + dd].div_exact(&lead)?;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &(&c * d);
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(UPoly::from_coeffs(quot))
    }

    /// Division with remainder over ℚ(q). Both results must lie in ℤ[q][u].
    pub fn div_rem(&self, divisor: &UPoly) -> Result<(UPoly, UPoly), AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead = QFrac::from(divisor.leading());
        let mut rem: Vec<QFrac> = self.coeffs.iter().cloned().map(QFrac::from).collect();
        let nd = match self.degree() {
            Some(nd) if nd >= dd => nd,
            _ => return Ok((UPoly::zero(), self.clone())),
        };
        let mut quot = vec![QFrac::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            if rem[i + dd].is_zero() {
                continue;
            }
            let c = rem[i + dd].checked_div(&lead)?;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] = &rem[i + j] - &(&c * &QFrac::from(d.clone()));
                }
            }
            quot[i] = c;
        }
        let back = |v: Vec<QFrac>| -> Result<UPoly, AlgebraError> {
            let coeffs = v
                .into_iter()
                .map(|c| c.as_integral().cloned().ok_or(AlgebraError::NonIntegral))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(UPoly::from_coeffs(coeffs))
        };
        rem.truncate(dd);
        Ok((back(quot)?, back(rem)?))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, divisor: &UPoly) -> UPoly {
        let dd = divisor.degree().expect("pseudo_rem by zero");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.pop().unwrap();
            let shift = rem.len() - dd;
            for x in rem.iter_mut() {
                *x = &*x * &lead;
            }
            if !top.is_zero() {
                for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                    rem[shift + j] -= &(&top * d);
                }
            }
            while rem.last().is_some_and(QPoly::is_zero) {
                rem.pop();
            }
        }
        UPoly::from_coeffs(rem)
    }

    /// A gcd over ℚ(q)[u], returned primitive over ℤ[q] with a positive leading
    /// integer coefficient.
    pub fn gcd(&self, other: &UPoly) -> Result<UPoly, AlgebraError> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(AlgebraError::BothZero),
            (true, false) => return Ok(other.primitive_part()),
            (false, true) => return Ok(self.primitive_part()),
            _ => {}
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Ok(UPoly::one());
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        Ok(a.primitive_part())
    }

    fn add_into(&mut self, other: &UPoly, negate: bool) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), QPoly::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if negate {
                *a -= b;
            } else {
                *a += b;
            }
        }
        while self.coeffs.last().is_some_and(QPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    fn mul_ref(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![QPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl From<QPoly> for UPoly {
    fn from(c: QPoly) -> Self {
        UPoly::constant(c)
    }
}

impl AddAssign<&UPoly> for UPoly {
    fn add_assign(&mut self, rhs: &UPoly) {
        self.add_into(rhs, false);
    }
}

impl SubAssign<&UPoly> for UPoly {
    fn sub_assign(&mut self, rhs: &UPoly) {
        self.add_into(rhs, true);
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&UPoly> for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UPoly> for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UPoly> for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: &UPoly) -> UPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<UPoly> for &UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Ascending powers of `u`, e.g. `1 - (q^3)u^3 + (q^6 - q^5)u^6`.
impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_monomial() && c.leading().is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let body = if mag.is_monomial() { mag.to_string() } else { format!("({mag})") };
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{body}")?;
                    }
                    if e == 1 {
                        write!(f, "u")?;
                    } else {
                        write!(f, "u^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct UPolyRepr {
    var: String,
    coeffs: Vec<QPoly>,
}

impl Serialize for UPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        UPolyRepr { var: "u".to_string(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = UPolyRepr::deserialize(d)?;
        if repr.var != "u" {
            return Err(serde::de::Error::custom(format!("expected var \"u\", got {:?}", repr.var)));
        }
        Ok(UPoly::from_coeffs(repr.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QPoly {
        QPoly::q()
    }

    #[test]
    fn difference_of_squares() {
        let a = UPoly::from_ints(&[1, 1]);
        let b = UPoly::from_ints(&[1, -1]);
        assert_eq!(&a * &b, UPoly::from_ints(&[1, 0, -1]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn cubic_denominator_expansion() {
        let q3 = q().pow(3);
        let a = &UPoly::one() - &UPoly::monomial(q3.clone(), 3);
        let b = &UPoly::one() - &UPoly::monomial(q3.clone(), 6);
        let expect = UPoly::from_coeffs(vec![
            QPoly::one(),
            QPoly::zero(),
            QPoly::zero(),
            -&q3,
            QPoly::zero(),
            QPoly::zero(),
            -&q3,
            QPoly::zero(),
            QPoly::zero(),
            q().pow(6),
        ]);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn div_rem_examples() {
        let (qt, r) = UPoly::from_ints(&[1, 0, -1]).div_rem(&UPoly::from_ints(&[1, -1])).unwrap();
        assert_eq!(qt, UPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());

        let num = &UPoly::one() - &UPoly::monomial(q().pow(2), 2);
        let den = &UPoly::one() - &UPoly::monomial(q(), 1);
        let (qt, r) = num.div_rem(&den).unwrap();
        assert_eq!(qt, &UPoly::one() + &UPoly::monomial(q(), 1));
        assert!(r.is_zero());

        let (qt, r) = UPoly::u().div_rem(&UPoly::u().pow(2)).unwrap();
        assert!(qt.is_zero());
        assert_eq!(r, UPoly::u());

        assert_eq!(UPoly::u().div_rem(&UPoly::zero()), Err(AlgebraError::DivisionByZero));
        assert_eq!(
            UPoly::u().div_rem(&UPoly::from_ints(&[0, 2])),
            Err(AlgebraError::NonIntegral)
        );
    }

    #[test]
    fn gcd_examples() {
        let g = UPoly::from_ints(&[-1, 0, 1]).gcd(&UPoly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(g, UPoly::from_ints(&[-1, 1]));

        let a = &UPoly::one() - &UPoly::monomial(q().pow(3), 3);
        let b = &UPoly::one() - &UPoly::monomial(q().pow(2), 3);
        assert!(a.gcd(&b).unwrap().is_one());

        let p = &UPoly::from_ints(&[3, 0, -6]) * &UPoly::from_terms(&[(&[0, 1], 1), (&[1], 0)]);
        assert_eq!(p.gcd(&UPoly::zero()).unwrap(), p.primitive_part());
        assert_eq!(UPoly::zero().gcd(&UPoly::zero()), Err(AlgebraError::BothZero));
    }

    #[test]
    fn gcd_with_q_dependent_factor() {
        let f = &UPoly::one() - &UPoly::monomial(q(), 1);
        let a = &f * &UPoly::from_terms(&[(&[1], 0), (&[0, 0, 1], 3)]);
        let b = &f * &UPoly::from_terms(&[(&[2], 0), (&[-1, 1], 1)]);
        assert_eq!(a.gcd(&b).unwrap(), -&f);
    }

    #[test]
    fn exact_division() {
        let f = &UPoly::one() - &UPoly::monomial(q(), 2);
        let g = UPoly::from_terms(&[(&[1], 0), (&[0, -1, 1], 1)]);
        assert_eq!((&f * &g).div_exact(&g).unwrap(), f);
        assert!(UPoly::from_ints(&[1, 1]).div_exact(&UPoly::from_ints(&[1, 2])).is_err());
    }

    #[test]
    fn display() {
        let p = UPoly::from_terms(&[(&[1], 0), (&[0, 0, 0, -1], 3), (&[0, 0, 0, 1, -1, -1, 1], 6)]);
        assert_eq!(p.to_string(), "1 - q^3u^3 + (q^6 - q^5 - q^4 + q^3)u^6");
        assert_eq!(UPoly::from_ints(&[0, -1]).to_string(), "-u");
    }

    #[test]
    fn json_shape() {
        let p = UPoly::from_terms(&[(&[1], 0), (&[0, -1], 1)]);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"var": "u", "coeffs": [
                {"var": "q", "coeffs": ["1"]},
                {"var": "q", "coeffs": ["0", "-1"]}
            ]})
        );
        assert_eq!(serde_json::from_value::<UPoly>(v).unwrap(), p);
    }
}
