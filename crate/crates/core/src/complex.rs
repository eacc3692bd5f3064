//! The fundamental domain of the quotient: vertices `x_{m,n}` with
//! `m ≥ n ≥ 0`, the two chamber shapes Δ and ∇, type-1 pointed chambers, and
//! the weighted adjacency between them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cannot parse chamber {0:?}; expected c:m,n,i or d:m,n,i")]
    Parse(String),
    #[error("({m},{n}) lies outside the sector m >= n >= 0")]
    OutsideSector { m: u32, n: u32 },
    #[error("step {index} ({from} -> {to}) has zero weight")]
    ZeroWeightStep { index: usize, from: PointedChamber, to: PointedChamber },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub m: u32,
    pub n: u32,
}

impl Vertex {
    pub fn new(m: u32, n: u32) -> Self {
        debug_assert!(m >= n);
        Vertex { m, n }
    }

    pub fn in_sector(&self) -> bool {
        self.m >= self.n
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{},{}", self.m, self.n)
    }
}

/// Vertex colour, normalized so that every listed pointed chamber is type 1.
pub fn vertex_type(v: Vertex) -> u8 {
    ((v.m + v.n) % 3) as u8
}

/// Neighbours of `v` in the quotient, in a fixed order.
pub fn neighbors(v: Vertex) -> Vec<Vertex> {
    let (m, n) = (v.m as i64, v.n as i64);
    let cand: &[(i64, i64)] = if m > n && n > 0 {
        &[(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]
    } else if m > n {
        &[(1, 0), (-1, 0), (0, 1), (1, 1)]
    } else if n > 0 {
        &[(1, 0), (0, -1), (1, 1), (-1, -1)]
    } else {
        &[(1, 0), (1, 1)]
    };
    cand.iter()
        .map(|&(dm, dn)| Vertex::new((m + dm) as u32, (n + dn) as u32))
        .collect()
}

pub fn vertices_adjacent(v: Vertex, w: Vertex) -> bool {
    neighbors(v).contains(&w)
}

/// Δ_{m,n} = {x_{m,n}, x_{m+1,n}, x_{m+1,n+1}} or ∇_{m,n} = {x_{m+1,n}, x_{m+1,n+1}, x_{m+2,n+1}}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Delta,
    Nabla,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::Delta => 'c',
            Family::Nabla => 'd',
        }
    }
}

/// `c_{m,n,i}` (Δ) or `d_{m,n,i}` (∇) with corner `i ∈ {1,2,3}`.
///
/// The derived order is (family, m, n, corner); box enumeration uses its own order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedChamber {
    pub family: Family,
    pub m: u32,
    pub n: u32,
    pub corner: u8,
}

impl PointedChamber {
    pub fn new(family: Family, m: u32, n: u32, corner: u8) -> Self {
        debug_assert!(m >= n && (1..=3).contains(&corner));
        PointedChamber { family, m, n, corner }
    }

    pub fn c(m: u32, n: u32, corner: u8) -> Self {
        Self::new(Family::Delta, m, n, corner)
    }

    pub fn d(m: u32, n: u32, corner: u8) -> Self {
        Self::new(Family::Nabla, m, n, corner)
    }

    /// Position inside the six chambers at one `(m, n)`: c1, c2, c3, d1, d2, d3.
    pub fn slot(&self) -> usize {
        let base = match self.family {
            Family::Delta => 0,
            Family::Nabla => 3,
        };
        base + self.corner as usize - 1
    }

    pub fn from_slot(m: u32, n: u32, slot: usize) -> Self {
        let family = if slot < 3 { Family::Delta } else { Family::Nabla };
        Self::new(family, m, n, (slot % 3) as u8 + 1)
    }
}

impl fmt::Display for PointedChamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{},{}", self.family.letter(), self.m, self.n, self.corner)
    }
}

impl FromStr for PointedChamber {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ComplexError::Parse(s.to_string());
        let (fam, rest) = s.split_once(':').ok_or_else(err)?;
        let family = match fam {
            "c" => Family::Delta,
            "d" => Family::Nabla,
            _ => return Err(err()),
        };
        let parts: Vec<&str> = rest.split(',').collect();
        let [m, n, i] = parts[..] else { return Err(err()) };
        let m: u32 = m.parse().map_err(|_| err())?;
        let n: u32 = n.parse().map_err(|_| err())?;
        let corner: u8 = i.parse().map_err(|_| err())?;
        if !(1..=3).contains(&corner) {
            return Err(err());
        }
        if m < n {
            return Err(ComplexError::OutsideSector { m, n });
        }
        Ok(PointedChamber { family, m, n, corner })
    }
}

impl Serialize for PointedChamber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointedChamber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn chamber_vertices(c: PointedChamber) -> [Vertex; 3] {
    let (m, n) = (c.m, c.n);
    let tri = match c.family {
        Family::Delta => [Vertex::new(m, n), Vertex::new(m + 1, n), Vertex::new(m + 1, n + 1)],
        Family::Nabla => [Vertex::new(m + 1, n), Vertex::new(m + 1, n + 1), Vertex::new(m + 2, n + 1)],
    };
    let r = (c.corner - 1) as usize;
    [tri[r], tri[(r + 1) % 3], tri[(r + 2) % 3]]
}

/// The weight of one listed transition, kept small so the hot loops can
/// avoid polynomial arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Zero,
    One,
    QMinusOne,
    Q,
}

impl Weight {
    pub fn to_qpoly(self) -> QPoly {
        match self {
            Weight::Zero => QPoly::zero(),
            Weight::One => QPoly::one(),
            Weight::QMinusOne => QPoly::from_i64s(&[-1, 1]),
            Weight::Q => QPoly::q(),
        }
    }

    pub fn eval(self, q: i64) -> i64 {
        match self {
            Weight::Zero => 0,
            Weight::One => 1,
            Weight::QMinusOne => q - 1,
            Weight::Q => q,
        }
    }
}

/// Every table row leaving `src`, including the one forbidden step of weight zero.
pub fn listed_transitions(src: PointedChamber) -> Vec<(PointedChamber, Weight)> {
    use PointedChamber as P;
    let (m, n) = (src.m, src.n);
    match (src.family, src.corner) {
        (Family::Delta, 1) => vec![(P::c(m, n, 2), Weight::QMinusOne), (P::d(m, n, 1), Weight::One)],
        (Family::Delta, 2) if m == n => vec![(P::c(m, n, 3), Weight::Q)],
        (Family::Delta, 2) => vec![(P::d(m - 1, n, 3), Weight::Q)],
        (Family::Delta, 3) if n == 0 => vec![(P::c(m, n, 1), Weight::Q)],
        (Family::Delta, 3) => vec![(P::d(m - 1, n - 1, 2), Weight::Q)],
        (Family::Nabla, 1) => vec![(P::c(m + 1, n + 1, 1), Weight::One), (P::d(m, n, 2), Weight::QMinusOne)],
        (Family::Nabla, 2) => vec![(P::c(m + 1, n, 3), Weight::One), (P::d(m, n, 3), Weight::QMinusOne)],
        (Family::Nabla, 3) => vec![(P::c(m, n, 2), Weight::Q), (P::d(m, n, 1), Weight::Zero)],
        _ => unreachable!("corner out of range"),
    }
}

/// Transitions of nonzero weight out of `src`, as small weights.
pub fn out_steps(src: PointedChamber) -> Vec<(PointedChamber, Weight)> {
    let mut v = listed_transitions(src);
    v.retain(|(_, w)| *w != Weight::Zero);
    v
}

pub fn out_transitions(src: PointedChamber) -> Vec<(PointedChamber, QPoly)> {
    out_steps(src).into_iter().map(|(c, w)| (c, w.to_qpoly())).collect()
}

pub fn step_weight(src: PointedChamber, dst: PointedChamber) -> Weight {
    out_steps(src)
        .into_iter()
        .find(|(c, _)| *c == dst)
        .map_or(Weight::Zero, |(_, w)| w)
}

pub fn weight(src: PointedChamber, dst: PointedChamber) -> QPoly {
    step_weight(src, dst).to_qpoly()
}

/// Chambers with `n ≤ depth` and `m - n ≤ width`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChamberBox {
    pub depth: u32,
    pub width: u32,
}

impl ChamberBox {
    pub fn new(depth: u32, width: u32) -> Self {
        ChamberBox { depth, width }
    }

    pub fn contains(&self, c: PointedChamber) -> bool {
        c.n <= self.depth && c.m - c.n <= self.width
    }

    pub fn len(&self) -> usize {
        6 * (self.depth as usize + 1) * (self.width as usize + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position of `c` in [`enumerate_box`] order.
    pub fn index_of(&self, c: PointedChamber) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        let w = self.width as usize + 1;
        Some((c.n as usize * w + (c.m - c.n) as usize) * 6 + c.slot())
    }
}

/// Sorted by `n`, then `m`, then family (Δ first), then corner.
pub fn enumerate_box(b: ChamberBox) -> Vec<PointedChamber> {
    let mut out = Vec::with_capacity(b.len());
    for n in 0..=b.depth {
        for m in n..=n + b.width {
            for slot in 0..6 {
                out.push(PointedChamber::from_slot(m, n, slot));
            }
        }
    }
    out
}

/// Types of the vertices dropped at each step, i.e. the types of the crossed panels'
/// opposite corners.
pub fn gallery_panel_types(gallery: &[PointedChamber]) -> Result<Vec<u8>, ComplexError> {
    let mut out = Vec::with_capacity(gallery.len().saturating_sub(1));
    for (i, pair) in gallery.windows(2).enumerate() {
        if step_weight(pair[0], pair[1]) == Weight::Zero {
            return Err(ComplexError::ZeroWeightStep { index: i, from: pair[0], to: pair[1] });
        }
        out.push(vertex_type(chamber_vertices(pair[0])[0]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use PointedChamber as P;

    fn v(m: u32, n: u32) -> Vertex {
        Vertex::new(m, n)
    }

    #[test]
    fn vertex_types() {
        assert_eq!(vertex_type(v(0, 0)), 0);
        assert_eq!(vertex_type(v(1, 0)), 1);
        assert_eq!(vertex_type(v(2, 2)), 1);
    }

    #[test]
    fn chamber_vertex_triples() {
        assert_eq!(chamber_vertices(P::c(0, 0, 2)), [v(1, 0), v(1, 1), v(0, 0)]);
        assert_eq!(chamber_vertices(P::d(0, 0, 1)), [v(1, 0), v(1, 1), v(2, 1)]);
        assert_eq!(chamber_vertices(P::c(2, 1, 3)), [v(3, 2), v(2, 1), v(3, 1)]);
    }

    #[test]
    fn adjacency_cases() {
        assert!(vertices_adjacent(v(0, 0), v(1, 1)));
        assert!(!vertices_adjacent(v(0, 0), v(2, 0)));
        assert!(vertices_adjacent(v(3, 1), v(2, 1)));
        assert!(!vertices_adjacent(v(3, 1), v(4, 0)));
        assert!(vertices_adjacent(v(2, 2), v(1, 1)));
        assert!(!vertices_adjacent(v(2, 2), v(3, 1)));
    }

    #[test]
    fn adjacency_is_symmetric() {
        for m in 0..8 {
            for n in 0..=m {
                for w in neighbors(v(m, n)) {
                    assert!(w.in_sector());
                    assert!(vertices_adjacent(w, v(m, n)), "{} ~ {}", v(m, n), w);
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        let q = QPoly::q();
        assert_eq!(weight(P::c(0, 0, 2), P::c(0, 0, 3)), q);
        assert_eq!(weight(P::c(2, 1, 3), P::d(1, 0, 2)), q);
        assert_eq!(weight(P::d(5, 2, 3), P::d(5, 2, 1)), QPoly::zero());
        assert!(listed_transitions(P::d(5, 2, 3)).contains(&(P::d(5, 2, 1), Weight::Zero)));
    }

    #[test]
    fn out_transition_examples() {
        let q = QPoly::q();
        assert_eq!(
            out_transitions(P::c(0, 0, 1)),
            vec![(P::c(0, 0, 2), QPoly::from_i64s(&[-1, 1])), (P::d(0, 0, 1), QPoly::one())]
        );
        assert_eq!(out_transitions(P::d(3, 1, 3)), vec![(P::c(3, 1, 2), q.clone())]);
        assert_eq!(out_transitions(P::c(4, 0, 3)), vec![(P::c(4, 0, 1), q)]);
    }

    #[test]
    fn box_sizes() {
        assert_eq!(enumerate_box(ChamberBox::new(0, 0)).len(), 6);
        assert_eq!(enumerate_box(ChamberBox::new(1, 1)).len(), 24);
        let b = enumerate_box(ChamberBox::new(0, 2));
        assert_eq!(b.len(), 18);
        let mn: Vec<(u32, u32)> = b.iter().step_by(6).map(|c| (c.m, c.n)).collect();
        assert_eq!(mn, vec![(0, 0), (1, 0), (2, 0)]);
    }

    #[test]
    fn box_index_matches_enumeration() {
        let b = ChamberBox::new(3, 4);
        for (i, c) in enumerate_box(b).into_iter().enumerate() {
            assert_eq!(b.index_of(c), Some(i));
        }
        assert_eq!(b.index_of(P::c(9, 4, 1)), None);
    }

    #[test]
    fn panel_types() {
        let g = [P::c(0, 0, 1), P::c(0, 0, 2), P::c(0, 0, 3), P::c(0, 0, 1)];
        assert_eq!(gallery_panel_types(&g).unwrap(), vec![0, 1, 2]);
        assert_eq!(gallery_panel_types(&[P::c(3, 1, 2), P::d(2, 1, 3)]).unwrap(), vec![2]);
        assert!(matches!(
            gallery_panel_types(&[P::d(0, 0, 3), P::d(0, 0, 1)]),
            Err(ComplexError::ZeroWeightStep { index: 0, .. })
        ));
    }

    #[test]
    fn text_encoding() {
        let c: PointedChamber = "c:2,1,3".parse().unwrap();
        assert_eq!(c, P::c(2, 1, 3));
        assert_eq!(P::d(5, 2, 1).to_string(), "d:5,2,1");
        assert!("c:1,2,1".parse::<PointedChamber>().is_err());
        assert!("e:1,0,1".parse::<PointedChamber>().is_err());
        assert!("c:1,0,4".parse::<PointedChamber>().is_err());
    }
}
