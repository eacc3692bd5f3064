//! Brute-force enumeration of closed galleries in the quotient, their
//! shift-equivalence classes, and the Euler product over primitive classes.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{QFrac, QPoly, Series};
use crate::complex::{step_weight, PointedChamber, Weight};
use crate::transfer::{SparseOperator, TruncationParams};
use crate::QMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("series order {order} exceeds the longest enumerated class length {max_len}")]
    OrderExceedsLength { order: usize, max_len: usize },
}

/// A cyclic sequence of chambers whose consecutive steps, including the
/// closing one, all have nonzero weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedWalk {
    chambers: Vec<PointedChamber>,
}

impl ClosedWalk {
    /// Fails if some step has zero weight.
    pub fn new(chambers: Vec<PointedChamber>) -> Option<Self> {
        let n = chambers.len();
        if n == 0 {
            return None;
        }
        let ok = (0..n).all(|i| step_weight(chambers[i], chambers[(i + 1) % n]) != Weight::Zero);
        ok.then_some(ClosedWalk { chambers })
    }

    pub fn chambers(&self) -> &[PointedChamber] {
        &self.chambers
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn rotate(&self, r: usize) -> ClosedWalk {
        let mut c = self.chambers.clone();
        c.rotate_left(r % self.len());
        ClosedWalk { chambers: c }
    }

    /// Product of the step weights around the cycle.
    pub fn weight(&self) -> QPoly {
        let n = self.len();
        (0..n).fold(QPoly::one(), |acc, i| {
            &acc * &step_weight(self.chambers[i], self.chambers[(i + 1) % n]).to_qpoly()
        })
    }

    /// Least `r > 0` with `rotate(r) == self`.
    pub fn period(&self) -> usize {
        let n = self.len();
        (1..=n)
            .find(|&r| n % r == 0 && (0..n).all(|i| self.chambers[i] == self.chambers[(i + r) % n]))
            .unwrap()
    }

    /// The rotation that is least in the order of chamber text encodings.
    pub fn canonical(&self) -> ClosedWalk {
        let n = self.len();
        let text: Vec<String> = self.chambers.iter().map(|c| c.to_string()).collect();
        let best = (0..n)
            .min_by(|&a, &b| {
                (0..n).map(|i| &text[(a + i) % n]).cmp((0..n).map(|i| &text[(b + i) % n]))
            })
            .unwrap();
        self.rotate(best)
    }

    fn text_key(&self) -> Vec<String> {
        self.chambers.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for ClosedWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chambers.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(">"))
    }
}

/// A shift-equivalence class of closed galleries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GalleryClass {
    pub canonical: Vec<PointedChamber>,
    pub length: usize,
    pub period: usize,
    pub weight: QPoly,
}

impl GalleryClass {
    pub fn is_primitive(&self) -> bool {
        self.period == self.length
    }

    pub fn walk(&self) -> ClosedWalk {
        ClosedWalk { chambers: self.canonical.clone() }
    }

    /// `len=… period=… weight=… cycle=…`
    pub fn list_line(&self, q_mode: &QMode) -> String {
        format!(
            "len={} period={} weight={} cycle={}",
            self.length,
            self.period,
            q_mode.specialize(&self.weight),
            self.walk()
        )
    }
}

/// All closed walks of length `n` inside the stabilizing truncation, grouped
/// by starting chamber in truncation order.
pub fn enumerate_closed(n: usize) -> Vec<ClosedWalk> {
    if n == 0 {
        return Vec::new();
    }
    let op = SparseOperator::assemble(TruncationParams::stabilizing(n as u32), QMode::Symbolic);
    let succ: Vec<Vec<usize>> = op.raw_rows().iter().map(|r| r.iter().map(|&(j, _)| j).collect()).collect();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); succ.len()];
    for (i, r) in succ.iter().enumerate() {
        for &j in r {
            pred[j].push(i);
        }
    }
    let index = op.index();
    let found: Vec<Vec<Vec<usize>>> = (0..succ.len())
        .into_par_iter()
        .map(|start| closed_from(start, n, &succ, &pred))
        .collect();
    found
        .into_iter()
        .flatten()
        .map(|path| ClosedWalk { chambers: path.into_iter().map(|i| index[i]).collect() })
        .collect()
}

fn closed_from(start: usize, n: usize, succ: &[Vec<usize>], pred: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // steps needed to get back to `start`, limited to n
    let mut dist = vec![usize::MAX; succ.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if dist[v] >= n {
            continue;
        }
        for &u in &pred[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let mut out = Vec::new();
    let mut path = vec![start];
    dfs(start, n, succ, &dist, &mut path, &mut out);
    out
}

fn dfs(start: usize, n: usize, succ: &[Vec<usize>], dist: &[usize], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let v = *path.last().unwrap();
    let remaining = n - (path.len() - 1);
    for &w in &succ[v] {
        if remaining == 1 {
            if w == start {
                out.push(path.clone());
            }
            continue;
        }
        if dist[w] < remaining {
            path.push(w);
            dfs(start, n, succ, dist, path, out);
            path.pop();
        }
    }
}

/// One class per rotation orbit, sorted by canonical representative.
pub fn classify(walks: &[ClosedWalk]) -> Vec<GalleryClass> {
    let mut seen: BTreeMap<Vec<String>, GalleryClass> = BTreeMap::new();
    for w in walks {
        let c = w.canonical();
        let key = c.text_key();
        if seen.contains_key(&key) {
            continue;
        }
        let class = GalleryClass {
            length: c.len(),
            period: c.period(),
            weight: c.weight(),
            canonical: c.chambers,
        };
        seen.insert(key, class);
    }
    seen.into_values().collect()
}

/// All classes of length `n`.
pub fn classes_of_length(n: usize) -> Vec<GalleryClass> {
    classify(&enumerate_closed(n))
}

/// `N_n = Σ w([c]) ℓ([c]_0)` over classes of length `n`.
pub fn weighted_count(n: usize, q_mode: &QMode) -> QPoly {
    weighted_count_of(&classes_of_length(n), q_mode)
}

pub fn weighted_count_of(classes: &[GalleryClass], q_mode: &QMode) -> QPoly {
    classes.iter().fold(QPoly::zero(), |acc, c| {
        &acc + &q_mode.specialize(&c.weight).scale(&BigInt::from(c.period))
    })
}

/// Primitive classes of every length `≤ max_len`, shortest first.
pub fn primitive_classes_up_to(max_len: usize) -> Vec<GalleryClass> {
    (1..=max_len)
        .flat_map(|n| classes_of_length(n).into_iter().filter(GalleryClass::is_primitive))
        .collect()
}

/// `Π (1 - w u^ℓ)^{-1}` over primitive classes of length `≤ max_len`, to `u^order`.
pub fn euler_product_series(max_len: usize, q_mode: &QMode, order: usize) -> Result<Series, GalleryError> {
    euler_product_of(&primitive_classes_up_to(max_len), max_len, q_mode, order)
}

/// The Euler product over an already enumerated list of primitive classes.
pub fn euler_product_of(
    primitives: &[GalleryClass],
    max_len: usize,
    q_mode: &QMode,
    order: usize,
) -> Result<Series, GalleryError> {
    if order > max_len {
        return Err(GalleryError::OrderExceedsLength { order, max_len });
    }
    let mut s = vec![QPoly::zero(); order + 1];
    s[0] = QPoly::one();
    for c in primitives.iter().filter(|c| c.is_primitive() && c.length <= max_len) {
        let w = q_mode.specialize(&c.weight);
        for i in c.length..=order {
            let add = &s[i - c.length] * &w;
            s[i] += &add;
        }
    }
    Ok(Series::from_coeffs(order, s.into_iter().map(QFrac::from).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use PointedChamber as P;

    fn triangle() -> Vec<PointedChamber> {
        vec![P::c(0, 0, 1), P::c(0, 0, 2), P::c(0, 0, 3)]
    }

    fn tri_weight() -> QPoly {
        QPoly::from_i64s(&[0, 0, -1, 1])
    }

    #[test]
    fn short_lengths() {
        assert!(enumerate_closed(1).is_empty());
        assert!(enumerate_closed(2).is_empty());
        let w3 = enumerate_closed(3);
        assert_eq!(w3.len(), 3);
        for w in &w3 {
            assert_eq!(w.canonical().chambers(), &triangle()[..]);
        }
    }

    #[test]
    fn triangle_class() {
        let walks: Vec<ClosedWalk> = (0..3).map(|r| ClosedWalk::new(triangle()).unwrap().rotate(r)).collect();
        let classes = classify(&walks);
        assert_eq!(classes.len(), 1);
        assert_eq!((classes[0].length, classes[0].period), (3, 3));
        assert_eq!(classes[0].weight, tri_weight());

        let twice: Vec<PointedChamber> = triangle().into_iter().cycle().take(6).collect();
        let classes = classify(&[ClosedWalk::new(twice).unwrap()]);
        assert_eq!((classes[0].length, classes[0].period), (6, 3));
        assert_eq!(classes[0].weight, tri_weight().pow(2));

        assert!(classify(&[]).is_empty());
    }

    #[test]
    fn zero_weight_cycle_is_not_a_walk() {
        assert!(ClosedWalk::new(vec![P::d(0, 0, 1), P::d(0, 0, 2), P::d(0, 0, 3)]).is_none());
    }

    #[test]
    fn weighted_counts() {
        assert_eq!(weighted_count(3, &QMode::Symbolic), QPoly::from_i64s(&[0, 0, -3, 3]));
        assert_eq!(weighted_count(6, &QMode::numeric(2)), QPoly::constant(96));
        assert!(weighted_count(5, &QMode::Symbolic).is_zero());
    }

    #[test]
    fn primitive_classes() {
        assert!(primitive_classes_up_to(2).is_empty());
        let p3 = primitive_classes_up_to(3);
        assert_eq!(p3.len(), 1);
        assert_eq!(p3[0].canonical, triangle());

        let p6 = primitive_classes_up_to(6);
        let mass = p6
            .iter()
            .filter(|c| c.length == 6)
            .fold(QPoly::zero(), |acc, c| &acc + &c.weight.scale(&BigInt::from(c.period)));
        let n6 = QPoly::from_i64s(&[0, 0, 0, 6, -9, 0, 3]);
        assert_eq!(mass, &n6 - &tri_weight().pow(2).scale(&BigInt::from(3)));
    }

    #[test]
    fn euler_products() {
        let q2 = QMode::numeric(2);
        let ints = |s: Series| -> Vec<BigInt> {
            s.integral_coeffs().unwrap().iter().map(QPoly::constant_term).collect()
        };
        let big = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
        assert_eq!(ints(euler_product_series(3, &q2, 3).unwrap()), big(&[1, 0, 0, 4]));
        assert_eq!(ints(euler_product_series(6, &q2, 6).unwrap()), big(&[1, 0, 0, 4, 0, 0, 24]));
        assert_eq!(ints(euler_product_series(2, &q2, 2).unwrap()), big(&[1, 0, 0]));
        assert_eq!(
            euler_product_series(3, &q2, 4),
            Err(GalleryError::OrderExceedsLength { order: 4, max_len: 3 })
        );
    }

    #[test]
    fn list_line_format() {
        let c = &primitive_classes_up_to(3)[0];
        assert_eq!(
            c.list_line(&QMode::Symbolic),
            "len=3 period=3 weight=q^3 - q^2 cycle=c:0,0,1>c:0,0,2>c:0,0,3"
        );
    }
}
