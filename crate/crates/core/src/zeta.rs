//! The closed form of the zeta function, the counts it predicts, and the
//! exponential of a trace sequence.

use num_bigint::BigInt;

use crate::algebra::{AlgebraError, QFrac, QPoly, RationalFn, Series, UPoly};
use crate::QMode;

/// `1 - c q^a u^e`.
fn one_minus(q_mode: &QMode, a: u32, e: usize) -> UPoly {
    &UPoly::one() - &UPoly::monomial(q_mode.q().pow(a), e)
}

/// `Z(u) = (1 - q^4 u^6)(1 - q^2 u^3) / ((1 - q^3 u^6)(1 - q^3 u^3))`.
pub fn closed_form(q_mode: &QMode) -> RationalFn {
    RationalFn::new(
        &one_minus(q_mode, 4, 6) * &one_minus(q_mode, 2, 3),
        &one_minus(q_mode, 3, 6) * &one_minus(q_mode, 3, 3),
    )
    .expect("nonzero denominator")
}

/// `1 / Z(u)`, the value of `det(I - uT)`.
pub fn closed_form_reciprocal(q_mode: &QMode) -> RationalFn {
    closed_form(q_mode).recip().expect("nonzero")
}

pub fn closed_form_series(q_mode: &QMode, order: usize) -> Series {
    Series::from_ratfn(&closed_form(q_mode), order).expect("Z(0) = 1")
}

/// Weighted number of closed galleries of length `n` predicted by the closed form.
pub fn closed_form_count(n: u32, q_mode: &QMode) -> QPoly {
    let q = q_mode.q();
    let c = |k: i64| QPoly::constant(k);
    if n > 0 && n % 6 == 0 {
        let r = n / 6;
        &(&(&c(3) * &q.pow(6 * r)) - &(&c(9) * &q.pow(4 * r))) + &(&c(6) * &q.pow(3 * r))
    } else if n > 0 && n % 3 == 0 {
        let r = n / 3;
        &(&c(3) * &q.pow(3 * r)) - &(&c(3) * &q.pow(2 * r))
    } else {
        QPoly::zero()
    }
}

/// `exp(Σ_{n ≥ 1} t_n u^n / n)` to `u^order`, where `traces[n - 1] = t_n`.
pub fn exp_of_traces(traces: &[QPoly], order: usize) -> Result<Series, AlgebraError> {
    Series::from_coeffs(order, log_coeffs(traces, order, false)).exp()
}

/// `exp(-Σ t_n u^n / n)`, the expansion of `det(I - uT)`.
pub fn exp_of_negated_traces(traces: &[QPoly], order: usize) -> Result<Series, AlgebraError> {
    Series::from_coeffs(order, log_coeffs(traces, order, true)).exp()
}

fn log_coeffs(traces: &[QPoly], order: usize, negate: bool) -> Vec<QFrac> {
    assert!(traces.len() >= order, "need {order} traces, got {}", traces.len());
    let mut c = vec![QFrac::zero()];
    for (n, t) in traces.iter().enumerate().take(order) {
        let v = QFrac::new(t.clone(), QPoly::constant(BigInt::from(n + 1))).expect("nonzero");
        c.push(if negate { -&v } else { v });
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.integral_coeffs()
            .unwrap()
            .iter()
            .map(|p| i64::try_from(p.constant_term()).unwrap())
            .collect()
    }

    #[test]
    fn counts() {
        let q2 = QMode::numeric(2);
        let got: Vec<QPoly> = [3, 6, 9, 12].iter().map(|&n| closed_form_count(n, &q2)).collect();
        let want: Vec<QPoly> = [12, 96, 1344, 10368].iter().map(|&v| QPoly::constant(v)).collect();
        assert_eq!(got, want);
        let q3 = QMode::numeric(3);
        let got: Vec<QPoly> = [3, 6, 9, 12].iter().map(|&n| closed_form_count(n, &q3)).collect();
        let want: Vec<QPoly> = [54, 1620, 56862, 1539648].iter().map(|&v| QPoly::constant(v)).collect();
        assert_eq!(got, want);
        for n in [1, 2, 4, 5, 7, 8, 10, 11] {
            assert!(closed_form_count(n, &QMode::Symbolic).is_zero());
        }
    }

    #[test]
    fn series_at_two() {
        assert_eq!(ints(&closed_form_series(&QMode::numeric(2), 6)), vec![1, 0, 0, 4, 0, 0, 24]);
        let r = Series::from_ratfn(&closed_form_reciprocal(&QMode::numeric(2)), 12).unwrap();
        assert_eq!(ints(&r), vec![1, 0, 0, -4, 0, 0, -8, 0, 0, -96, 0, 0, -256]);
    }

    #[test]
    fn symbolic_sixth_coefficient() {
        let s = closed_form_series(&QMode::Symbolic, 6);
        assert_eq!(s.coeff(6), &QFrac::from(QPoly::from_i64s(&[0, 0, 0, 1, -1, -1, 1])));
    }

    #[test]
    fn log_derivative_gives_counts() {
        let s = Series::log_derivative(&closed_form(&QMode::Symbolic), 12).unwrap();
        for n in 1..=12u32 {
            assert_eq!(s.coeff(n as usize), &QFrac::from(closed_form_count(n, &QMode::Symbolic)), "n = {n}");
        }
    }

    #[test]
    fn exp_of_counts_is_zeta() {
        let counts: Vec<QPoly> = (1..=12).map(|n| closed_form_count(n, &QMode::Symbolic)).collect();
        assert_eq!(exp_of_traces(&counts, 12).unwrap(), closed_form_series(&QMode::Symbolic, 12));
        let recip = Series::from_ratfn(&closed_form_reciprocal(&QMode::Symbolic), 12).unwrap();
        assert_eq!(exp_of_negated_traces(&counts, 12).unwrap(), recip);
    }
}
