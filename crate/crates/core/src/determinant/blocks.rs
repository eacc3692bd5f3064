//! The 6×6 blocks of `I - uT` and the block-tridiagonal matrices `M_{k,N}`.
//!
//! Basis of `M_{k,N}`: outer block index `m - n ∈ 0..N`, inner block index
//! `n ∈ 0..k`, and inside a block the slots c1, c2, c3, d1, d2, d3. Entry
//! `(i, j)` is `δ_ij - u·w(basis_j → basis_i)`.

use serde::Serialize;

use crate::algebra::{QPoly, UPoly};
use crate::complex::{out_steps, PointedChamber};
use crate::QMode;

use super::PolyMatrix;

#[derive(Clone, Debug)]
pub struct BlockSpec {
    pub a1: PolyMatrix,
    pub a2: PolyMatrix,
    pub a3: PolyMatrix,
    pub a4: PolyMatrix,
    pub b: PolyMatrix,
    pub c: PolyMatrix,
    pub d: PolyMatrix,
    pub e: PolyMatrix,
}

/// `-w u` with `w` given by its q-coefficients.
fn neg_u(q_mode: &QMode, w: &[i64]) -> UPoly {
    UPoly::monomial(-q_mode.specialize(&QPoly::from_i64s(w)), 1)
}

/// 6×6 matrix with the given 1-based entries.
fn six(base: &PolyMatrix, entries: &[((usize, usize), UPoly)]) -> PolyMatrix {
    let mut m = base.clone();
    for ((i, j), v) in entries {
        m.set(i - 1, j - 1, v.clone());
    }
    m
}

pub fn block_matrices(q_mode: &QMode) -> BlockSpec {
    let u = neg_u(q_mode, &[1]);
    let qu = neg_u(q_mode, &[0, 1]);
    let q1u = neg_u(q_mode, &[-1, 1]);
    let zero = PolyMatrix::zeros(6, 6);
    let a4 = six(
        &PolyMatrix::identity(6),
        &[((4, 1), u.clone()), ((2, 1), q1u.clone()), ((5, 4), q1u.clone()), ((6, 5), q1u), ((2, 6), qu.clone())],
    );
    let a3 = six(&a4, &[((3, 2), qu.clone())]);
    let a1 = six(&a3, &[((1, 3), qu.clone())]);
    let a2 = six(&a4, &[((1, 3), qu.clone())]);
    BlockSpec {
        a1,
        a2,
        a3,
        a4,
        b: six(&zero, &[((5, 3), qu.clone())]),
        c: six(&zero, &[((1, 4), u.clone())]),
        d: six(&zero, &[((6, 2), qu)]),
        e: six(&zero, &[((3, 5), u)]),
    }
}

/// `M_{k,N}` together with its parameters.
#[derive(Clone, Debug)]
pub struct BlockTridiagonal {
    pub k: usize,
    pub n: usize,
    pub assembled: PolyMatrix,
}

#[derive(Serialize)]
struct Dims {
    k: usize,
    n: usize,
    size: usize,
}

impl BlockTridiagonal {
    pub fn size(&self) -> usize {
        self.assembled.rows()
    }

    pub fn dims_json(&self) -> serde_json::Value {
        serde_json::to_value(Dims { k: self.k, n: self.n, size: self.size() }).unwrap()
    }
}

/// Inner tridiagonal `k×k` block matrix with `first` then `rest` on the diagonal.
fn inner(k: usize, first: &PolyMatrix, rest: &PolyMatrix, spec: &BlockSpec) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(6 * k, 6 * k);
    for i in 0..k {
        m.put_block(6 * i, 6 * i, if i == 0 { first } else { rest });
        if i + 1 < k {
            m.put_block(6 * i, 6 * i + 6, &spec.b);
            m.put_block(6 * i + 6, 6 * i, &spec.c);
        }
    }
    m
}

/// `A_k`: inner diagonal `a1, a3, a3, …`.
pub(crate) fn a_k(k: usize, spec: &BlockSpec) -> PolyMatrix {
    inner(k, &spec.a1, &spec.a3, spec)
}

/// `B_k`: inner diagonal `a2, a4, a4, …`.
pub(crate) fn b_k(k: usize, spec: &BlockSpec) -> PolyMatrix {
    inner(k, &spec.a2, &spec.a4, spec)
}

/// The `(6kN)×(6kN)` matrix with `A_k, B_k, B_k, …` on the outer diagonal,
/// `diag(d)` above and `diag(e)` below.
pub fn assemble_m(k: usize, n: usize, q_mode: &QMode) -> BlockTridiagonal {
    assert!(k >= 1 && n >= 1, "block orders must be positive");
    let spec = block_matrices(q_mode);
    let a = a_k(k, &spec);
    let b = b_k(k, &spec);
    let s = 6 * k;
    let mut m = PolyMatrix::zeros(s * n, s * n);
    for i in 0..n {
        m.put_block(s * i, s * i, if i == 0 { &a } else { &b });
        if i + 1 < n {
            for t in 0..k {
                m.put_block(s * i + 6 * t, s * (i + 1) + 6 * t, &spec.d);
                m.put_block(s * (i + 1) + 6 * t, s * i + 6 * t, &spec.e);
            }
        }
    }
    BlockTridiagonal { k, n, assembled: m }
}

/// The chamber behind each row/column of `M_{k,N}`.
pub fn block_basis(k: usize, n: usize) -> Vec<PointedChamber> {
    let mut out = Vec::with_capacity(6 * k * n);
    for r in 0..n as u32 {
        for nn in 0..k as u32 {
            for slot in 0..6 {
                out.push(PointedChamber::from_slot(nn + r, nn, slot));
            }
        }
    }
    out
}

fn block_position(k: usize, n: usize, c: PointedChamber) -> Option<usize> {
    let (r, nn) = ((c.m - c.n) as usize, c.n as usize);
    (r < n && nn < k).then(|| (r * k + nn) * 6 + c.slot())
}

/// `I - u·Tᵀ` built straight from the weight table, in the basis of [`block_basis`].
pub fn direct_matrix(k: usize, n: usize, q_mode: &QMode) -> PolyMatrix {
    let basis = block_basis(k, n);
    let mut m = PolyMatrix::identity(basis.len());
    for (j, &src) in basis.iter().enumerate() {
        for (dst, w) in out_steps(src) {
            if let Some(i) = block_position(k, n, dst) {
                let v = m.get(i, j) - &UPoly::monomial(q_mode.specialize(&w.to_qpoly()), 1);
                m.set(i, j, v);
            }
        }
    }
    m
}
