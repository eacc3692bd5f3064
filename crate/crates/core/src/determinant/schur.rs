//! The scalar Schur recursion for `det M_{k,N}` and its limits in the level
//! `ℓ`, the depth `k`, and both.
//!
//! `B_{k,ℓ}` differs from `B_k` only at the positions `(6s, 6t-1)`, whose
//! entries `a_{(s,t),ℓ}` obey a four-case recursion. All indices `s, t` are
//! 1-based here, as are matrix positions in comments.

use serde::Serialize;

use crate::algebra::{QPoly, RationalFn, UPoly};
use crate::zeta::closed_form_reciprocal;
use crate::QMode;

use super::blocks::{a_k, block_matrices};
use super::{DeterminantError, PolyMatrix};

/// `c·q^a·u^e` with `c` a polynomial in `q` given by its coefficients.
fn term(q_mode: &QMode, c: &[i64], a: u32, e: usize) -> UPoly {
    UPoly::monomial(&q_mode.specialize(&QPoly::from_i64s(c)) * &q_mode.q().pow(a), e)
}

/// `q³u⁴`, the factor carrying `a_{(s,t-1)}` to `a_{(s,t)}`.
fn shift(q_mode: &QMode) -> UPoly {
    term(q_mode, &[1], 3, 4)
}

/// `q³(q-1)u^{2i+4}`, the coefficient of `a_{(s,i)}` in the `t = 1` cases.
fn column_weight(q_mode: &QMode, i: usize) -> UPoly {
    term(q_mode, &[-1, 1], 3, 2 * i + 4)
}

/// Inhomogeneous part of the `t = 1` cases.
fn first_column_base(q_mode: &QMode, s: usize) -> UPoly {
    if s == 1 {
        &term(q_mode, &[1, -1], 0, 1) + &term(q_mode, &[1, -1], 2, 4)
    } else {
        term(q_mode, &[1, -1], 2, 2 * s + 2)
    }
}

/// The entries `a_{k,(s,t),ℓ}` of `B_{k,ℓ}` at a fixed level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurState {
    pub k: usize,
    pub level: usize,
    a: Vec<Vec<UPoly>>,
}

impl SchurState {
    /// Level one: the `(6s, 6t-1)` entries of `B_k` itself.
    pub fn base(k: usize, q_mode: &QMode) -> Self {
        assert!(k >= 1, "block order must be positive");
        let diag = -&UPoly::monomial(q_mode.specialize(&QPoly::from_i64s(&[-1, 1])), 1);
        let a = (0..k)
            .map(|s| (0..k).map(|t| if s == t { diag.clone() } else { UPoly::zero() }).collect())
            .collect();
        SchurState { k, level: 1, a }
    }

    pub fn a(&self, s: usize, t: usize) -> &UPoly {
        &self.a[s - 1][t - 1]
    }

    pub fn coeffs(&self) -> &[Vec<UPoly>] {
        &self.a
    }

    /// One level of the recursion.
    pub fn step(&self, q_mode: &QMode) -> Self {
        let k = self.k;
        let sh = shift(q_mode);
        let weights: Vec<UPoly> = (1..=k).map(|i| column_weight(q_mode, i)).collect();
        let diag = -&UPoly::monomial(q_mode.specialize(&QPoly::from_i64s(&[-1, 1])), 1);
        let mut a = vec![vec![UPoly::zero(); k]; k];
        for s in 1..=k {
            for t in 1..=k {
                a[s - 1][t - 1] = if t == 1 {
                    let mut v = first_column_base(q_mode, s);
                    for (i, w) in weights.iter().enumerate() {
                        v = &v + &(self.a(s, i + 1) * w);
                    }
                    v
                } else if s == t {
                    &diag + &(self.a(s, t - 1) * &sh)
                } else {
                    self.a(s, t - 1) * &sh
                };
            }
        }
        SchurState { k, level: self.level + 1, a }
    }

    /// `A_{k,ℓ}`: `A_k` with the `(6s, 6t-1)` entries replaced by this state.
    /// Its determinant equals `det M_{k,ℓ}`.
    pub fn level_matrix(&self, q_mode: &QMode) -> PolyMatrix {
        let mut m = a_k(self.k, &block_matrices(q_mode));
        for s in 1..=self.k {
            for t in 1..=self.k {
                m.set(6 * s - 1, 6 * t - 2, self.a(s, t).clone());
            }
        }
        m
    }
}

pub fn schur_iterate(k: usize, levels: usize, q_mode: &QMode) -> SchurState {
    assert!(levels >= 1, "levels start at one");
    let mut st = SchurState::base(k, q_mode);
    for _ in 1..levels {
        st = st.step(q_mode);
    }
    st
}

/// `c_i α_i = q^{3i}(q-1)u^{6i}`: with `a_{(s,t)} = α_t a_{(s,1)} + β_t` in the
/// level limit, `α_t = (q³u⁴)^{t-1}`.
fn alpha_term(q_mode: &QMode, i: usize) -> UPoly {
    term(q_mode, &[-1, 1], 3 * i as u32, 6 * i)
}

/// `c_i β_i` for row `s`: `β_t = -(q-1)u(q³u⁴)^{t-s}` for `t ≥ s ≥ 2`, else zero.
fn beta_term(q_mode: &QMode, s: usize, i: usize) -> UPoly {
    if s == 1 || i < s {
        return UPoly::zero();
    }
    let e = (i - s) as u32;
    let b = term(q_mode, &[1, -1], 3 * e, 4 * e as usize + 1);
    &column_weight(q_mode, i) * &b
}

/// `β_t` for row `s`.
fn beta(q_mode: &QMode, s: usize, t: usize) -> UPoly {
    if s == 1 || t < s {
        return UPoly::zero();
    }
    let e = (t - s) as u32;
    term(q_mode, &[1, -1], 3 * e, 4 * e as usize + 1)
}

/// The level limits `a_{k,(s,t)}` at a fixed depth `k`, over the common
/// denominator `Δ_k = 1 - Σ_{i ≤ k} q^{3i}(q-1)u^{6i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthLimits {
    pub k: usize,
    pub delta: UPoly,
    /// `Δ_k · a_{k,(s,1)}` for `s = 1..=k`.
    pub first_column: Vec<UPoly>,
    q_mode: QMode,
}

pub fn depth_limits(k: usize, q_mode: &QMode) -> DepthLimits {
    assert!(k >= 1, "block order must be positive");
    let mut delta = UPoly::one();
    for i in 1..=k {
        delta = &delta - &alpha_term(q_mode, i);
    }
    let first_column = (1..=k)
        .map(|s| {
            let mut v = first_column_base(q_mode, s);
            for i in s..=k {
                v = &v + &beta_term(q_mode, s, i);
            }
            v
        })
        .collect();
    DepthLimits { k, delta, first_column, q_mode: q_mode.clone() }
}

impl DepthLimits {
    /// `Δ_k · a_{k,(s,t)}`.
    pub fn numerator(&self, s: usize, t: usize) -> UPoly {
        let alpha = term(&self.q_mode, &[1], 3 * (t as u32 - 1), 4 * (t - 1));
        &(&alpha * &self.first_column[s - 1]) + &(&beta(&self.q_mode, s, t) * &self.delta)
    }

    pub fn a(&self, s: usize, t: usize) -> RationalFn {
        RationalFn::new(self.numerator(s, t), self.delta.clone()).expect("Δ_k(0) = 1")
    }

    /// `A_{k,∞}` with every row `6s` multiplied by `Δ_k`; its determinant is
    /// `Δ_k^k det A_{k,∞}`.
    pub fn limit_matrix(&self) -> PolyMatrix {
        let mut m = a_k(self.k, &block_matrices(&self.q_mode));
        for s in 1..=self.k {
            m.scale_row(6 * s - 1, &self.delta);
            for t in 1..=self.k {
                m.set(6 * s - 1, 6 * t - 2, self.numerator(s, t));
            }
        }
        m
    }

    /// `A_{k,0}` with every row `6s` multiplied by `Δ_k`: the first column of
    /// limits sits in column 5 and `-q³u⁴` at `(6s-1, 6s+5)` for `s < k`.
    pub fn a_k0_matrix(&self) -> PolyMatrix {
        let mut m = a_k(self.k, &block_matrices(&self.q_mode));
        let sh = -&shift(&self.q_mode);
        for s in 1..=self.k {
            m.scale_row(6 * s - 1, &self.delta);
            m.set(6 * s - 1, 4, self.first_column[s - 1].clone());
            if s < self.k {
                m.set(6 * s - 2, 6 * s + 4, sh.clone());
            }
        }
        m
    }
}

/// Sum of `term(i)` over `i ≥ start` for a geometric sequence whose ratio
/// vanishes at `u = 0`. The ratio is read off the first two terms and checked
/// on the next few.
pub fn geometric_tail(start: usize, term: impl Fn(usize) -> RationalFn) -> Result<RationalFn, DeterminantError> {
    const CHECKED: usize = 4;
    let first = term(start);
    if first.is_zero() {
        return if (1..=CHECKED).all(|j| term(start + j).is_zero()) {
            Ok(RationalFn::zero())
        } else {
            Err(DeterminantError::NotGeometric(format!("zero term at {start} followed by nonzero terms")))
        };
    }
    let ratio = term(start + 1).checked_div(&first)?;
    let mut prev = term(start + 1);
    for j in 2..=CHECKED + 1 {
        let next = term(start + j);
        if next != &prev * &ratio {
            return Err(DeterminantError::NotGeometric(format!("ratio {ratio} breaks at index {}", start + j)));
        }
        prev = next;
    }
    if !ratio.at_zero().0.is_zero() {
        return Err(DeterminantError::NotGeometric(format!("ratio {ratio} does not vanish at u = 0")));
    }
    Ok(first.checked_div(&(&RationalFn::one() - &ratio))?)
}

/// `a_{(s,1)} = lim_k a_{k,(s,1)}` summed from the recursion.
pub fn a_limit(s: usize, q_mode: &QMode) -> Result<RationalFn, DeterminantError> {
    assert!(s >= 1, "rows are 1-based");
    let sum_alpha = geometric_tail(1, |i| alpha_term(q_mode, i).into())?;
    let delta = &RationalFn::one() - &sum_alpha;
    let mut num = RationalFn::from(first_column_base(q_mode, s));
    if s >= 2 {
        num = &num + &geometric_tail(s, |i| beta_term(q_mode, s, i).into())?;
    }
    Ok(num.checked_div(&delta)?)
}

/// The closed forms of `a_{(s,1)}`:
/// `a_{(1,1)} = -(1-q³u⁶)((q-1)u + q²(q-1)u⁴) / (1-q⁴u⁶)` and, for `s ≥ 2`,
/// `a_{(s,1)} = (-q²(q-1)u^{2s+2}(1-q³u⁶) - q³(q-1)²u^{2s+5}) / (1-q⁴u⁶)`.
pub fn a_limits(s: usize, q_mode: &QMode) -> RationalFn {
    assert!(s >= 1, "rows are 1-based");
    let one = UPoly::one();
    let den = &one - &term(q_mode, &[1], 4, 6);
    let r = &one - &term(q_mode, &[1], 3, 6);
    let num = if s == 1 {
        -&(&r * &(&term(q_mode, &[-1, 1], 0, 1) + &term(q_mode, &[-1, 1], 2, 4)))
    } else {
        &(&term(q_mode, &[1, -1], 2, 2 * s + 2) * &r) - &term(q_mode, &[1, -2, 1], 3, 2 * s + 5)
    };
    RationalFn::new(num, den).expect("nonzero denominator")
}

/// Where the values `a_{(s,1)}` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ASource {
    /// `a_{k,(s,1),ℓ}` after `ℓ` levels of the recursion.
    Level(usize),
    /// The level limit `a_{k,(s,1)}` at the given depth.
    DepthLimit,
    /// The double limit `a_{(s,1)}`.
    Limit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    Finite(usize),
    Infinite,
}

/// `(1 - q²(q-1)u³)(1 + Σ_{i=2}^k q^{4i-5}u^{4i-5} a_{(i,1)})
///   + q³u³ a_{(1,1)} Σ_{i=1}^{2k-1} q^{2i-2}(q-1)u^{3i-1}`.
///
/// With level-limit values this is `det A_{k,0} = det A_{k,∞}`. With the values
/// after `ℓ` levels it agrees with that modulo `u^{6ℓ+3}`. At infinite
/// depth both sums are summed as geometric series and only [`ASource::Limit`]
/// makes sense.
pub fn det_a_k0(depth: Depth, source: ASource, q_mode: &QMode) -> Result<RationalFn, DeterminantError> {
    let one = RationalFn::one();
    let lead = RationalFn::from(&UPoly::one() - &term(q_mode, &[-1, 1], 2, 3));
    let s1_term = |i: usize, a: &RationalFn| &RationalFn::from(term(q_mode, &[1], 4 * i as u32 - 5, 4 * i - 5)) * a;
    let s2_term = |i: usize| RationalFn::from(term(q_mode, &[-1, 1], 2 * i as u32 - 2, 3 * i - 1));

    let (a11, s1, s2) = match depth {
        Depth::Finite(k) => {
            assert!(k >= 1, "block order must be positive");
            let first: Vec<RationalFn> = match source {
                ASource::Level(l) => {
                    let st = schur_iterate(k, l, q_mode);
                    (1..=k).map(|s| st.a(s, 1).clone().into()).collect()
                }
                ASource::DepthLimit => {
                    let lim = depth_limits(k, q_mode);
                    (1..=k).map(|s| lim.a(s, 1)).collect()
                }
                ASource::Limit => (1..=k).map(|s| a_limit(s, q_mode)).collect::<Result<_, _>>()?,
            };
            let mut s1 = RationalFn::zero();
            for i in 2..=k {
                s1 = &s1 + &s1_term(i, &first[i - 1]);
            }
            let mut s2 = RationalFn::zero();
            for i in 1..=2 * k - 1 {
                s2 = &s2 + &s2_term(i);
            }
            (first[0].clone(), s1, s2)
        }
        Depth::Infinite => {
            if source != ASource::Limit {
                return Err(DeterminantError::Unsupported(format!(
                    "infinite depth needs the double limit, not {source:?}"
                )));
            }
            let s1 = geometric_tail(2, |i| s1_term(i, &a_limit(i, q_mode).expect("geometric")))?;
            (a_limit(1, q_mode)?, s1, geometric_tail(1, s2_term)?)
        }
    };
    let tail = &(&RationalFn::from(term(q_mode, &[1], 3, 3)) * &a11) * &s2;
    Ok(&(&lead * &(&one + &s1)) + &tail)
}

/// `det(I - uT)` from the double limit of the recursion, checked against
/// `(1-q³u⁶)(1-q³u³) / ((1-q⁴u⁶)(1-q²u³))`.
pub fn det_of_i_minus_ut(q_mode: &QMode) -> Result<RationalFn, DeterminantError> {
    let pipeline = det_a_k0(Depth::Infinite, ASource::Limit, q_mode)?;
    let closed = closed_form_reciprocal(q_mode);
    if pipeline != closed {
        return Err(DeterminantError::ClosedFormMismatch {
            pipeline: pipeline.to_string(),
            closed: closed.to_string(),
        });
    }
    Ok(pipeline)
}
