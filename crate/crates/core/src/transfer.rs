//! Truncated transfer operators on type-1 pointed chambers and traces of
//! their powers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::QPoly;
use crate::complex::{enumerate_box, out_steps, ChamberBox, PointedChamber, Weight};
use crate::QMode;

/// Truncation `X_{k,N}`: chambers with `n ≤ k - 1` and `m - n ≤ N - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TruncationParams {
    pub depth_k: u32,
    pub width_n: u32,
}

impl TruncationParams {
    pub fn new(depth_k: u32, width_n: u32) -> Self {
        assert!(depth_k >= 1 && width_n >= 1, "truncation parameters must be positive");
        TruncationParams { depth_k, width_n }
    }

    pub fn chamber_box(&self) -> ChamberBox {
        ChamberBox::new(self.depth_k - 1, self.width_n - 1)
    }

    /// A truncation that contains every closed gallery of length `n`.
    pub fn stabilizing(n: u32) -> Self {
        TruncationParams::new(n + 1, 2 * n + 2)
    }
}

/// The matrix of `T_{k,N}`. Row `i` lists the transitions out of `index[i]`
/// that stay inside the truncation.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    params: TruncationParams,
    index: Vec<PointedChamber>,
    rows: Vec<Vec<(usize, Weight)>>,
    q_mode: QMode,
}

impl SparseOperator {
    pub fn assemble(params: TruncationParams, q_mode: QMode) -> Self {
        let b = params.chamber_box();
        let index = enumerate_box(b);
        let rows = index
            .iter()
            .map(|&c| {
                out_steps(c)
                    .into_iter()
                    .filter_map(|(dst, w)| b.index_of(dst).map(|j| (j, w)))
                    .collect()
            })
            .collect();
        SparseOperator { params, index, rows, q_mode }
    }

    pub fn params(&self) -> TruncationParams {
        self.params
    }

    pub fn q_mode(&self) -> &QMode {
        &self.q_mode
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[PointedChamber] {
        &self.index
    }

    pub fn position(&self, c: PointedChamber) -> Option<usize> {
        self.params.chamber_box().index_of(c)
    }

    /// Weight of the transition `index[row] -> index[col]`, specialized to the q-mode.
    pub fn entry(&self, row: usize, col: usize) -> QPoly {
        self.rows[row]
            .iter()
            .find(|(j, _)| *j == col)
            .map_or_else(QPoly::zero, |(_, w)| self.q_mode.specialize(&w.to_qpoly()))
    }

    /// Nonzero entries of one row as `(column, weight)`.
    pub fn row(&self, row: usize) -> Vec<(usize, QPoly)> {
        self.rows[row]
            .iter()
            .map(|&(j, w)| (j, self.q_mode.specialize(&w.to_qpoly())))
            .collect()
    }

    pub(crate) fn raw_rows(&self) -> &[Vec<(usize, Weight)>] {
        &self.rows
    }

    pub fn row_sum(&self, row: usize) -> QPoly {
        self.row(row).iter().fold(QPoly::zero(), |acc, (_, w)| &acc + w)
    }

    /// Whether every transition out of `index[row]` stays inside the truncation.
    pub fn is_interior(&self, row: usize) -> bool {
        self.rows[row].len() == out_steps(self.index[row]).len()
    }

    pub fn trace_power(&self, n: usize) -> QPoly {
        assert!(n >= 1, "power must be positive");
        self.traces_up_to(n).pop().unwrap()
    }

    /// `[Tr T, Tr T^2, …, Tr T^max_len]`.
    pub fn traces_up_to(&self, max_len: usize) -> Vec<QPoly> {
        match &self.q_mode {
            QMode::Symbolic => {
                let rows = self.typed_rows(|w| w.to_qpoly());
                walk_traces(&rows, max_len).expect("polynomial traces cannot overflow")
            }
            QMode::Numeric(q) => {
                if let Some(qi) = q.to_i64().filter(|v| v.abs() < (1 << 20)) {
                    let rows = self.typed_rows(|w| Checked(w.eval(qi) as i128));
                    if let Some(t) = walk_traces(&rows, max_len) {
                        return t.into_iter().map(|c| QPoly::constant(BigInt::from(c.0))).collect();
                    }
                }
                let rows = self.typed_rows(|w| w.to_qpoly().eval(q));
                walk_traces(&rows, max_len)
                    .expect("big-integer traces cannot overflow")
                    .into_iter()
                    .map(QPoly::constant)
                    .collect()
            }
        }
    }

    fn typed_rows<S>(&self, f: impl Fn(Weight) -> S) -> Vec<Vec<(usize, S)>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(j, w)| (j, f(w))).collect())
            .collect()
    }

    /// JSON dump: one key per chamber, listing `[target, weight]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = BTreeMap::new();
        for (i, c) in self.index.iter().enumerate() {
            let row: Vec<(String, QPoly)> = self
                .row(i)
                .into_iter()
                .map(|(j, w)| (self.index[j].to_string(), w))
                .collect();
            map.insert(c.to_string(), row);
        }
        serde_json::json!({
            "depth_k": self.params.depth_k,
            "width_n": self.params.width_n,
            "q": self.q_mode.to_string(),
            "rows": map,
        })
    }
}

/// `Tr(T^n)` on a truncation large enough to equal the trace on the whole quotient.
pub fn trace_stabilized(n: u32, q_mode: &QMode) -> QPoly {
    SparseOperator::assemble(TruncationParams::stabilizing(n), q_mode.clone()).trace_power(n as usize)
}

/// `[Tr T, …, Tr T^max_len]`, each stabilized; a single truncation serves all lengths.
pub fn traces_stabilized(max_len: u32, q_mode: &QMode) -> Vec<QPoly> {
    if max_len == 0 {
        return Vec::new();
    }
    SparseOperator::assemble(TruncationParams::stabilizing(max_len), q_mode.clone())
        .traces_up_to(max_len as usize)
}

trait TraceScalar: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `acc += a * b`, or `None` on overflow.
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> Option<()>;
    fn add_to(acc: &mut Self, a: &Self) -> Option<()>;
}

#[derive(Clone, Copy, Debug)]
struct Checked(i128);

impl TraceScalar for Checked {
    fn zero() -> Self {
        Checked(0)
    }
    fn one() -> Self {
        Checked(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        acc.0 = acc.0.checked_add(a.0.checked_mul(b.0)?)?;
        Some(())
    }
    fn add_to(acc: &mut Self, a: &Self) -> Option<()> {
        acc.0 = acc.0.checked_add(a.0)?;
        Some(())
    }
}

impl TraceScalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        *acc += a * b;
        Some(())
    }
    fn add_to(acc: &mut Self, a: &Self) -> Option<()> {
        *acc += a;
        Some(())
    }
}

impl TraceScalar for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        *acc += &(a * b);
        Some(())
    }
    fn add_to(acc: &mut Self, a: &Self) -> Option<()> {
        *acc += a;
        Some(())
    }
}

/// Propagates a sparse unit vector from every basis chamber and reads off the
/// diagonal entry after each step.
fn walk_traces<S: TraceScalar>(rows: &[Vec<(usize, S)>], max_len: usize) -> Option<Vec<S>> {
    let dim = rows.len();
    let per_start: Vec<Option<Vec<S>>> = (0..dim)
        .into_par_iter()
        .map_init(
            || vec![usize::MAX; dim],
            |slot, start| {
                let mut diag = vec![S::zero(); max_len];
                let mut cur: Vec<(usize, S)> = vec![(start, S::one())];
                for d in diag.iter_mut() {
                    let mut next: Vec<(usize, S)> = Vec::with_capacity(cur.len() * 2);
                    for (i, v) in &cur {
                        for (j, w) in &rows[*i] {
                            let pos = slot[*j];
                            if pos == usize::MAX {
                                slot[*j] = next.len();
                                next.push((*j, S::zero()));
                                S::mul_add(&mut next.last_mut().unwrap().1, v, w)?;
                            } else {
                                S::mul_add(&mut next[pos].1, v, w)?;
                            }
                        }
                    }
                    for (j, _) in &next {
                        slot[*j] = usize::MAX;
                    }
                    next.retain(|(_, v)| !v.is_zero());
                    if let Some((_, v)) = next.iter().find(|(j, _)| *j == start) {
                        *d = v.clone();
                    }
                    cur = next;
                    if cur.is_empty() {
                        break;
                    }
                }
                Some(diag)
            },
        )
        .collect();
    let mut total = vec![S::zero(); max_len];
    for diag in per_start {
        for (t, d) in total.iter_mut().zip(diag?) {
            S::add_to(t, &d)?;
        }
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use PointedChamber as P;

    fn qm1() -> QPoly {
        QPoly::from_i64s(&[-1, 1])
    }

    fn row_of(op: &SparseOperator, c: PointedChamber) -> Vec<(PointedChamber, QPoly)> {
        op.row(op.position(c).unwrap()).into_iter().map(|(j, w)| (op.index()[j], w)).collect()
    }

    #[test]
    fn assembled_rows() {
        let op = SparseOperator::assemble(TruncationParams::new(1, 1), QMode::Symbolic);
        assert_eq!(row_of(&op, P::c(0, 0, 1)), vec![(P::c(0, 0, 2), qm1()), (P::d(0, 0, 1), QPoly::one())]);

        let op = SparseOperator::assemble(TruncationParams::new(1, 4), QMode::Symbolic);
        for m in 0..4 {
            assert_eq!(row_of(&op, P::d(m, 0, 1)), vec![(P::d(m, 0, 2), qm1())]);
        }

        let op = SparseOperator::assemble(TruncationParams::new(2, 2), QMode::Symbolic);
        assert_eq!(row_of(&op, P::c(1, 1, 3)), vec![(P::d(0, 0, 2), QPoly::q())]);
    }

    #[test]
    fn small_traces() {
        let q2 = QMode::numeric(2);
        let op = SparseOperator::assemble(TruncationParams::new(1, 1), q2.clone());
        assert!(op.trace_power(1).is_zero());
        assert_eq!(op.trace_power(3), QPoly::constant(12));
        let op = SparseOperator::assemble(TruncationParams::new(7, 7), q2);
        assert_eq!(op.trace_power(6), QPoly::constant(96));
    }

    #[test]
    fn stabilized_traces() {
        assert!(trace_stabilized(2, &QMode::numeric(5)).is_zero());
        assert_eq!(trace_stabilized(3, &QMode::Symbolic), QPoly::from_i64s(&[0, 0, -3, 3]));
        assert_eq!(trace_stabilized(9, &QMode::numeric(3)), QPoly::constant(56862));
    }

    #[test]
    fn stabilization_box_is_large_enough() {
        for n in 1..=9u32 {
            let p = TruncationParams::stabilizing(n);
            let bigger = TruncationParams::new(p.depth_k + 2, p.width_n + 3);
            let a = SparseOperator::assemble(p, QMode::Symbolic).trace_power(n as usize);
            let b = SparseOperator::assemble(bigger, QMode::Symbolic).trace_power(n as usize);
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn symbolic_and_numeric_agree() {
        let sym = traces_stabilized(9, &QMode::Symbolic);
        for q in [2i64, 3, 7] {
            let num = traces_stabilized(9, &QMode::numeric(q));
            for (s, v) in sym.iter().zip(&num) {
                assert_eq!(QPoly::constant(s.eval(&BigInt::from(q))), *v);
            }
        }
    }

    #[test]
    fn huge_q_falls_back_to_big_integers() {
        let q: BigInt = BigInt::from(10).pow(30);
        let t = traces_stabilized(6, &QMode::Numeric(q.clone()));
        let expect = BigInt::from(3) * q.pow(6) - BigInt::from(9) * q.pow(4) + BigInt::from(6) * q.pow(3);
        assert_eq!(t[5], QPoly::constant(expect));
    }

    #[test]
    fn interior_rows_sum_to_q() {
        let op = SparseOperator::assemble(TruncationParams::new(4, 5), QMode::Symbolic);
        let mut interior = 0;
        for i in 0..op.dim() {
            if op.is_interior(i) {
                interior += 1;
                assert_eq!(op.row_sum(i), QPoly::q(), "{}", op.index()[i]);
            }
        }
        assert!(interior > op.dim() / 2);
    }

    #[test]
    fn json_dump_keys_rows_by_chamber() {
        let op = SparseOperator::assemble(TruncationParams::new(1, 1), QMode::numeric(2));
        let v = op.to_json();
        assert_eq!(v["rows"]["c:0,0,1"][0][0], "c:0,0,2");
        assert_eq!(v["rows"]["c:0,0,1"][0][1]["coeffs"][0], "1");
        assert_eq!(v["rows"].as_object().unwrap().len(), 6);
    }
}
