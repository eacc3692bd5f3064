use std::fmt;

use crate::algebra::{QPoly, UPoly};
use crate::QMode;

use super::{det_modular, DeterminantError};

/// Dense row-major matrix over ℤ[q][u].
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<UPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![UPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, UPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<UPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &UPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: UPoly) {
        self.data[i * self.cols + j] = v;
    }

    /// Copies `block` with its top-left corner at `(r, c)`.
    pub fn put_block(&mut self, r: usize, c: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r + i, c + j).clone());
            }
        }
        out
    }

    pub fn scale_row(&mut self, i: usize, by: &UPoly) {
        for j in 0..self.cols {
            let v = self.get(i, j) * by;
            self.set(i, j, v);
        }
    }

    pub fn specialize(&self, q_mode: &QMode) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| q_mode.specialize_u(p)).collect(),
        }
    }

    /// Positions and values of the nonzero entries.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &UPoly)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    /// True when every entry has degree at most one in `u` and the constant
    /// part is the identity.
    pub fn is_unit_pencil(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(k, v)| {
                let diag = k / self.cols == k % self.cols;
                v.degree().is_none_or(|d| d <= 1)
                    && v.coeff(0) == if diag { QPoly::one() } else { QPoly::zero() }
            })
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for (i, j, v) in self.nonzeros() {
            writeln!(f, "  ({}, {}) = {}", i + 1, j + 1, v)?;
        }
        write!(f, "]")
    }
}

/// Fraction-free elimination over ℤ[q][u] with positional pivoting; every
/// division is checked to be exact.
pub fn det_bareiss(m: &PolyMatrix) -> Result<UPoly, DeterminantError> {
    if m.rows != m.cols {
        return Err(DeterminantError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(UPoly::one());
    }
    let mut a: Vec<Vec<UPoly>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(UPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev)?;
            }
            a[i][k] = UPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Exact determinant: fraction-free elimination for small matrices, a
/// multimodular evaluation/interpolation scheme otherwise.
pub fn det_exact(m: &PolyMatrix) -> Result<UPoly, DeterminantError> {
    if m.rows != m.cols {
        return Err(DeterminantError::NotSquare { rows: m.rows, cols: m.cols });
    }
    if m.rows <= 8 {
        det_bareiss(m)
    } else {
        Ok(det_modular(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qu(c: &[i64], e: usize) -> UPoly {
        UPoly::monomial(QPoly::from_i64s(c), e)
    }

    #[test]
    fn two_by_two() {
        let m = PolyMatrix::from_rows(vec![
            vec![UPoly::one(), -qu(&[0, 1], 1)],
            vec![-qu(&[0, 1], 1), UPoly::one()],
        ]);
        let want = &UPoly::one() - &qu(&[0, 0, 1], 2);
        assert_eq!(det_bareiss(&m).unwrap(), want);
        assert_eq!(det_modular(&m), want);
    }

    #[test]
    fn identity_and_pivoting() {
        assert!(det_exact(&PolyMatrix::identity(6)).unwrap().is_one());
        let m = PolyMatrix::from_rows(vec![
            vec![UPoly::zero(), UPoly::u()],
            vec![qu(&[0, 1], 0), UPoly::one()],
        ]);
        assert_eq!(det_bareiss(&m).unwrap(), -qu(&[0, 1], 1));
        assert_eq!(det_modular(&m), -qu(&[0, 1], 1));
        assert!(matches!(
            det_exact(&PolyMatrix::zeros(2, 3)),
            Err(DeterminantError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn singular() {
        let r = vec![UPoly::u(), qu(&[1, 1], 2)];
        let m = PolyMatrix::from_rows(vec![r.clone(), r]);
        assert!(det_bareiss(&m).unwrap().is_zero());
        assert!(det_modular(&m).is_zero());
    }
}
