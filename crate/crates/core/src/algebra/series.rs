//! Truncated power series in `u` with coefficients in ℚ(q).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgebraError, QFrac, QPoly, RationalFn, UPoly};

/// `Σ_{i ≤ order} coeffs[i] u^i`, known modulo `u^(order+1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Series {
    order: usize,
    coeffs: Vec<QFrac>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series { order, coeffs: vec![QFrac::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = QFrac::one();
        s
    }

    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<QFrac>) -> Self {
        coeffs.resize(order + 1, QFrac::zero());
        Series { order, coeffs }
    }

    pub fn from_upoly(p: &UPoly, order: usize) -> Self {
        Self::from_coeffs(order, p.coeffs().iter().take(order + 1).cloned().map(QFrac::from).collect())
    }

    /// Expansion of `f` at `u = 0`.
    pub fn from_ratfn(f: &RationalFn, order: usize) -> Result<Self, AlgebraError> {
        let d0 = QFrac::from(f.den().coeff(0));
        let inv = d0.inverse().map_err(|_| AlgebraError::NonInvertibleConstant)?;
        let den: Vec<QFrac> = f.den().coeffs().iter().cloned().map(QFrac::from).collect();
        let mut out: Vec<QFrac> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = QFrac::from(f.num().coeff(n));
            for i in 1..den.len().min(n + 1) {
                if !den[i].is_zero() && !out[n - i].is_zero() {
                    acc = &acc - &(&den[i] * &out[n - i]);
                }
            }
            out.push(&acc * &inv);
        }
        Ok(Series { order, coeffs: out })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[QFrac] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &QFrac {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order);
        Series { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Series, AlgebraError> {
        let inv0 = self.coeffs[0].inverse().map_err(|_| AlgebraError::NonInvertibleConstant)?;
        let mut out: Vec<QFrac> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for n in 1..=self.order {
            let mut acc = QFrac::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() && !out[n - i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &out[n - i]);
                }
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(Series { order: self.order, coeffs: out })
    }

    /// `u * s'(u)`.
    pub fn u_derivative(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale_int(&BigInt::from(i)))
            .collect();
        Series { order: self.order, coeffs }
    }

    /// `exp(s)` for `s` with zero constant term, via `n E_n = Σ k s_k E_{n-k}`.
    pub fn exp(&self) -> Result<Series, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::NonzeroConstantTerm);
        }
        let ds = self.u_derivative();
        let mut e: Vec<QFrac> = Vec::with_capacity(self.order + 1);
        e.push(QFrac::one());
        for n in 1..=self.order {
            let mut acc = QFrac::zero();
            for k in 1..=n {
                if !ds.coeffs[k].is_zero() && !e[n - k].is_zero() {
                    acc = &acc + &(&ds.coeffs[k] * &e[n - k]);
                }
            }
            e.push(&acc * &QFrac::ratio(1, n as i64));
        }
        Ok(Series { order: self.order, coeffs: e })
    }

    /// `log(s)` for `s` with constant term one.
    pub fn log(&self) -> Result<Series, AlgebraError> {
        if self.coeffs[0] != QFrac::one() {
            return Err(AlgebraError::NonInvertibleConstant);
        }
        let ld = &self.u_derivative() * &self.inverse()?;
        Ok(ld.integrate_u_derivative())
    }

    /// Inverse of [`Series::u_derivative`] on series with zero constant term.
    pub fn integrate_u_derivative(&self) -> Series {
        let mut coeffs = vec![QFrac::zero()];
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            coeffs.push(c * &QFrac::ratio(1, i as i64));
        }
        Series { order: self.order, coeffs }
    }

    /// Series of `u f'(u) / f(u)`.
    pub fn log_derivative(f: &RationalFn, order: usize) -> Result<Series, AlgebraError> {
        let (n0, d0) = f.at_zero();
        if n0.is_zero() || d0.is_zero() {
            return Err(AlgebraError::NonInvertibleConstant);
        }
        let num = (&f.num().derivative() * f.den() - f.num() * &f.den().derivative()).shift(1);
        let g = RationalFn::new(num, f.num() * f.den())?;
        Series::from_ratfn(&g, order)
    }

    /// The coefficients as polynomials in `q`, or the first index that is not one.
    pub fn integral_coeffs(&self) -> Result<Vec<QPoly>, AlgebraError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.as_integral().cloned().ok_or(AlgebraError::NotIntegral(i)))
            .collect()
    }

    pub fn specialize(&self, q: &BigInt) -> Result<Series, AlgebraError> {
        let coeffs = self.coeffs.iter().map(|c| c.specialize(q)).collect::<Result<Vec<_>, _>>()?;
        Ok(Series { order: self.order, coeffs })
    }

    fn zip_with(&self, rhs: &Series, f: impl Fn(&QFrac, &QFrac) -> QFrac) -> Series {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order).map(|i| f(&self.coeffs[i], &rhs.coeffs[i])).collect();
        Series { order, coeffs }
    }
}

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![QFrac::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Series { order, coeffs }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let integral = c.as_integral().filter(|p| p.is_monomial());
            let negative = integral.is_some_and(|p| p.leading() < BigInt::from(0));
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let body = match integral {
                Some(p) => {
                    let p = if negative { -p } else { p.clone() };
                    if p.is_one() && e > 0 {
                        String::new()
                    } else {
                        p.to_string()
                    }
                }
                None if e == 0 && c.as_integral().is_some() => c.to_string(),
                None => format!("({c})"),
            };
            match e {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}u")?,
                _ => write!(f, "{body}u^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.order + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    num_coeffs: Vec<QPoly>,
    den_coeffs: Vec<QPoly>,
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order,
            num_coeffs: self.coeffs.iter().map(|c| c.num().clone()).collect(),
            den_coeffs: self.coeffs.iter().map(|c| c.den().clone()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        if r.num_coeffs.len() != r.order + 1 || r.den_coeffs.len() != r.order + 1 {
            return Err(serde::de::Error::custom("coefficient count must be order + 1"));
        }
        let coeffs = r
            .num_coeffs
            .into_iter()
            .zip(r.den_coeffs)
            .map(|(n, d)| QFrac::new(n, d))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Series { order: r.order, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<BigInt> {
        s.integral_coeffs().unwrap().iter().map(QPoly::constant_term).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn one_minus(c: &[i64], e: usize) -> UPoly {
        &UPoly::one() - &UPoly::monomial(QPoly::from_i64s(c), e)
    }

    #[test]
    fn geometric_series() {
        let f = RationalFn::new(UPoly::one(), one_minus(&[0, 1], 1)).unwrap();
        let s = Series::from_ratfn(&f, 3).unwrap();
        for i in 0..=3 {
            assert_eq!(s.coeff(i), &QFrac::from(QPoly::monomial(1, i)));
        }
    }

    #[test]
    fn closed_form_at_two() {
        let num = &one_minus(&[16], 6) * &one_minus(&[4], 3);
        let den = &one_minus(&[8], 6) * &one_minus(&[8], 3);
        let f = RationalFn::new(num, den).unwrap();
        let s = Series::from_ratfn(&f, 6).unwrap();
        assert_eq!(ints(&s), big(&[1, 0, 0, 4, 0, 0, 24]));
    }

    #[test]
    fn constant_one_has_zero_tail() {
        let s = Series::from_ratfn(&RationalFn::one(), 5).unwrap();
        assert_eq!(s, Series::one(5));
    }

    #[test]
    fn non_invertible_constant() {
        let f = RationalFn::new(UPoly::one(), UPoly::u()).unwrap();
        assert_eq!(Series::from_ratfn(&f, 2), Err(AlgebraError::NonInvertibleConstant));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Series::zero(4).exp().unwrap(), Series::one(4));
        let u = Series::from_upoly(&UPoly::u(), 3);
        let e = u.exp().unwrap();
        let expect = [QFrac::one(), QFrac::one(), QFrac::ratio(1, 2), QFrac::ratio(1, 6)];
        assert_eq!(e.coeffs(), &expect);
        let s = Series::from_upoly(&UPoly::from_ints(&[0, 0, 0, 4, 0, 0, 16]), 6);
        assert_eq!(ints(&s.exp().unwrap()), big(&[1, 0, 0, 4, 0, 0, 24]));
        assert_eq!(Series::one(2).exp(), Err(AlgebraError::NonzeroConstantTerm));
    }

    #[test]
    fn log_derivative_examples() {
        let f = RationalFn::new(UPoly::one(), one_minus(&[0, 1], 1)).unwrap();
        let s = Series::log_derivative(&f, 4).unwrap();
        assert!(s.coeff(0).is_zero());
        for i in 1..=4 {
            assert_eq!(s.coeff(i), &QFrac::from(QPoly::monomial(1, i)));
        }
        let z = RationalFn::new(
            &one_minus(&[16], 6) * &one_minus(&[4], 3),
            &one_minus(&[8], 6) * &one_minus(&[8], 3),
        )
        .unwrap();
        assert_eq!(ints(&Series::log_derivative(&z, 6).unwrap()), big(&[0, 0, 0, 12, 0, 0, 96]));
        assert_eq!(Series::log_derivative(&RationalFn::one(), 3).unwrap(), Series::zero(3));
    }

    #[test]
    fn mismatched_orders_truncate() {
        let a = Series::one(5);
        let b = Series::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn json_shape() {
        let s = Series::from_coeffs(1, vec![QFrac::one(), QFrac::ratio(1, 2)]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["order"], 1);
        assert_eq!(v["den_coeffs"][1]["coeffs"][0], "2");
        assert_eq!(serde_json::from_value::<Series>(v).unwrap(), s);
    }

    #[test]
    fn display() {
        let s = Series::from_upoly(&UPoly::from_ints(&[1, 0, 0, -4, 0, 0, -8]), 6);
        assert_eq!(s.to_string(), "1 - 4u^3 - 8u^6 + O(u^7)");
        let t = Series::from_upoly(&UPoly::from_terms(&[(&[0, -1], 1), (&[1, 1], 2)]), 3);
        assert_eq!(t.to_string(), "-qu + (q + 1)u^2 + O(u^4)");
        assert_eq!(Series::zero(2).to_string(), "0 + O(u^3)");
    }
}
