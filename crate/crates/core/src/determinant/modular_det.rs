//! Determinants over ℤ[q][u] by reduction modulo word-size primes.
//!
//! Each prime gives the determinant as a polynomial over `ℤ/p`: unit pencils
//! `I + uB` go through the characteristic polynomial of `-B` (Hessenberg
//! form), other matrices through evaluation on a grid of `(q, u)` points and
//! interpolation. Enough primes are used that their product exceeds twice a
//! bound on the coefficients, so the symmetric CRT lift is the exact answer.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{crt_symmetric, interpolate, primes_below, Fp, PrimeField, QPoly, UPoly};

use super::PolyMatrix;

/// One nonzero entry reduced mod p: `table[e][f]` is the coefficient of `u^e q^f`.
struct ModEntry {
    i: usize,
    j: usize,
    table: Vec<Vec<Fp>>,
}

struct Shape {
    n: usize,
    du: usize,
    dq: usize,
    pencil: bool,
}

pub fn det_modular(m: &PolyMatrix) -> UPoly {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return UPoly::one();
    }
    let pencil = m.is_unit_pencil();
    let (du, dq) = degree_bounds(m);
    let Some(bound) = coefficient_bound(m) else {
        return UPoly::zero();
    };
    let shape = Shape { n, du: if pencil { n.min(du) } else { du }, dq, pencil };

    let target: BigInt = bound * 2 + 1;
    let mut primes = Vec::new();
    let mut product = BigInt::one();
    let mut candidates = primes_below(1 << 62, 64).into_iter();
    while product <= target {
        let p = candidates.next().expect("coefficient bound needs more than 64 primes");
        product *= p;
        primes.push(p);
    }

    let images: Vec<Vec<Vec<Fp>>> = primes
        .iter()
        .map(|&p| {
            let f = PrimeField::new(p);
            let img = det_mod_prime(m, &shape, &f);
            img.into_iter().map(|row| row.into_iter().map(|x| f.to_u64(x)).collect()).collect()
        })
        .collect();

    let mut coeffs = Vec::with_capacity(shape.du + 1);
    for e in 0..=shape.du {
        let qc: Vec<BigInt> = (0..=shape.dq)
            .map(|fq| {
                let residues: Vec<u64> = images.iter().map(|img| img[e][fq]).collect();
                crt_symmetric(&residues, &primes)
            })
            .collect();
        coeffs.push(QPoly::from_coeffs(qc));
    }
    UPoly::from_coeffs(coeffs)
}

/// Per-row sums of maximal degrees, in `u` and in `q`, minimized against the
/// same sums over columns.
fn degree_bounds(m: &PolyMatrix) -> (usize, usize) {
    let n = m.rows();
    let mut row_u = vec![0usize; n];
    let mut col_u = vec![0usize; n];
    let mut row_q = vec![0usize; n];
    let mut col_q = vec![0usize; n];
    for (i, j, v) in m.nonzeros() {
        let du = v.degree().unwrap_or(0);
        let dq = v.q_degree().unwrap_or(0);
        row_u[i] = row_u[i].max(du);
        col_u[j] = col_u[j].max(du);
        row_q[i] = row_q[i].max(dq);
        col_q[j] = col_q[j].max(dq);
    }
    let s = |v: &[usize]| v.iter().sum::<usize>();
    (s(&row_u).min(s(&col_u)), s(&row_q).min(s(&col_q)))
}

/// `Π_i Σ_j ‖M_ij‖₁` bounds every coefficient of the determinant; `None` if a row is zero.
fn coefficient_bound(m: &PolyMatrix) -> Option<BigInt> {
    let mut sums = vec![BigInt::from(0); m.rows()];
    for (i, _, v) in m.nonzeros() {
        sums[i] += v.l1_norm();
    }
    if sums.iter().any(|s| *s == BigInt::from(0)) {
        return None;
    }
    Some(sums.into_iter().product())
}

fn reduce(m: &PolyMatrix, f: &PrimeField) -> Vec<ModEntry> {
    m.nonzeros()
        .map(|(i, j, v)| ModEntry {
            i,
            j,
            table: v
                .coeffs()
                .iter()
                .map(|c| c.coeffs().iter().map(|x| f.from_bigint(x)).collect())
                .collect(),
        })
        .collect()
}

fn horner(f: &PrimeField, coeffs: &[Fp], x: Fp) -> Fp {
    coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `out[e][f]` = coefficient of `u^e q^f` of the determinant mod p.
fn det_mod_prime(m: &PolyMatrix, shape: &Shape, f: &PrimeField) -> Vec<Vec<Fp>> {
    let entries = reduce(m, f);
    let n = shape.n;
    // by_q[k][e]: coefficient of u^e at q = k
    let by_q: Vec<Vec<Fp>> = (0..=shape.dq)
        .into_par_iter()
        .map(|k| {
            let qv = f.from_u64(k as u64);
            let at_q: Vec<(usize, usize, Vec<Fp>)> = entries
                .iter()
                .map(|e| (e.i, e.j, e.table.iter().map(|qc| horner(f, qc, qv)).collect()))
                .collect();
            if shape.pencil {
                pencil_det(f, n, &at_q, shape.du)
            } else {
                let values: Vec<Fp> = (0..=shape.du)
                    .map(|t| {
                        let uv = f.from_u64(t as u64);
                        let mut a = vec![0; n * n];
                        for (i, j, uc) in &at_q {
                            a[i * n + j] = horner(f, uc, uv);
                        }
                        dense_det(f, n, &mut a)
                    })
                    .collect();
                interpolate(f, &values)
            }
        })
        .collect();
    (0..=shape.du)
        .map(|e| {
            let ys: Vec<Fp> = by_q.iter().map(|row| row.get(e).copied().unwrap_or(0)).collect();
            interpolate(f, &ys)
        })
        .collect()
}

/// `det(I + uB)` from the characteristic polynomial of `T = -B`:
/// `det(I - uT) = Σ_i c_i u^{n-i}` where `det(xI - T) = Σ_i c_i x^i`.
fn pencil_det(f: &PrimeField, n: usize, at_q: &[(usize, usize, Vec<Fp>)], du: usize) -> Vec<Fp> {
    let mut t = vec![0; n * n];
    for (i, j, uc) in at_q {
        if let Some(&b) = uc.get(1) {
            t[i * n + j] = f.neg(b);
        }
    }
    let cp = charpoly(f, n, &mut t);
    let mut out: Vec<Fp> = (0..=n).map(|e| cp[n - e]).collect();
    out.truncate(du + 1);
    out
}

/// Gaussian elimination mod p.
fn dense_det(f: &PrimeField, n: usize, a: &mut [Fp]) -> Fp {
    let mut det = f.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = f.neg(det);
        }
        let pk = a[k * n + k];
        det = f.mul(det, pk);
        let inv = f.inv(pk);
        for i in k + 1..n {
            let factor = a[i * n + k];
            if factor == 0 {
                continue;
            }
            let t = f.mul(factor, inv);
            for j in k + 1..n {
                let v = f.mul(t, a[k * n + j]);
                a[i * n + j] = f.sub(a[i * n + j], v);
            }
        }
    }
    det
}

/// Characteristic polynomial `det(xI - A)`, low degree first, via reduction
/// to upper Hessenberg form.
fn charpoly(f: &PrimeField, n: usize, h: &mut [Fp]) -> Vec<Fp> {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[at(i, j)] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                h.swap(at(piv, c), at(j + 1, c));
            }
            for r in 0..n {
                h.swap(at(r, piv), at(r, j + 1));
            }
        }
        let inv = f.inv(h[at(j + 1, j)]);
        for i in j + 2..n {
            let hij = h[at(i, j)];
            if hij == 0 {
                continue;
            }
            let t = f.mul(hij, inv);
            for c in j..n {
                let v = f.mul(t, h[at(j + 1, c)]);
                h[at(i, c)] = f.sub(h[at(i, c)], v);
            }
            for r in 0..n {
                let v = f.mul(t, h[at(r, i)]);
                h[at(r, j + 1)] = f.add(h[at(r, j + 1)], v);
            }
        }
    }
    // p[m] = det(xI - H[..m, ..m])
    let mut p: Vec<Vec<Fp>> = Vec::with_capacity(n + 1);
    p.push(vec![f.one()]);
    for m in 1..=n {
        let prev = &p[m - 1];
        let hmm = h[at(m - 1, m - 1)];
        let mut cur = vec![0; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            cur[d + 1] = f.add(cur[d + 1], c);
            cur[d] = f.sub(cur[d], f.mul(hmm, c));
        }
        let mut t = f.one();
        for i in 1..m {
            t = f.mul(t, h[at(m - i, m - i - 1)]);
            if t == 0 {
                break;
            }
            let coef = f.mul(h[at(m - i - 1, m - 1)], t);
            if coef == 0 {
                continue;
            }
            for (d, &c) in p[m - i - 1].iter().enumerate() {
                cur[d] = f.sub(cur[d], f.mul(coef, c));
            }
        }
        p.push(cur);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinant::det_bareiss;

    fn small(seed: u64, n: usize, pencil: bool) -> PolyMatrix {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) % 7) as i64 - 3
        };
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if pencil {
                    let c = next();
                    let base = if i == j { UPoly::one() } else { UPoly::zero() };
                    &base + &UPoly::monomial(QPoly::from_i64s(&[c, next().rem_euclid(2)]), 1)
                } else {
                    UPoly::from_terms(&[(&[next(), next()], 0), (&[next()], 1), (&[0, next()], 2)])
                };
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn matches_bareiss_on_random_pencils() {
        for seed in 0..6 {
            let m = small(seed, 5, true);
            assert!(m.is_unit_pencil());
            assert_eq!(det_modular(&m), det_bareiss(&m).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn matches_bareiss_on_random_matrices() {
        for seed in 0..6 {
            let m = small(100 + seed, 4, false);
            assert_eq!(det_modular(&m), det_bareiss(&m).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn charpoly_of_companion() {
        // companion matrix of x^3 - 2x^2 + 3x - 5
        let f = PrimeField::new(1_000_003);
        let e = |x: i64| f.from_i64(x);
        let mut a = vec![e(0), e(0), e(5), e(1), e(0), e(-3), e(0), e(1), e(2)];
        let cp = charpoly(&f, 3, &mut a);
        assert_eq!(cp, vec![e(-5), e(3), e(-2), e(1)]);
    }
}
