//! Word-size prime fields in Montgomery form, prime search, CRT, and
//! interpolation at consecutive integer nodes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field element in Montgomery representation.
pub type Fp = u64;

/// `ℤ/p` for an odd prime `p < 2^62`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
    pinv: u64,
    r2: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 62), "modulus must be odd and below 2^62");
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        PrimeField { p, pinv: inv.wrapping_neg(), r2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let s = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn zero(&self) -> Fp {
        0
    }

    pub fn one(&self) -> Fp {
        self.from_u64(1)
    }

    pub fn from_u64(&self, x: u64) -> Fp {
        self.mul(x % self.p, self.r2)
    }

    pub fn from_i64(&self, x: i64) -> Fp {
        let v = self.from_u64(x.unsigned_abs());
        if x < 0 {
            self.neg(v)
        } else {
            v
        }
    }

    pub fn from_bigint(&self, x: &BigInt) -> Fp {
        let r = x.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced residue fits");
        self.from_u64(r)
    }

    /// The canonical residue in `[0, p)`.
    pub fn to_u64(&self, a: Fp) -> u64 {
        self.redc(a as u128)
    }

    pub fn pow(&self, mut a: Fp, mut e: u64) -> Fp {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: Fp) -> Fp {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `bound`, in decreasing order.
pub fn primes_below(bound: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (bound - 1) | 1;
    while out.len() < count {
        if n < bound && is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// The unique integer in `(-M/2, M/2]` with the given residues, `M = Π p`.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    assert_eq!(residues.len(), primes.len());
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let pb = BigInt::from(p);
        let xm = x.mod_floor(&pb).to_u64().unwrap();
        let mm = m.mod_floor(&pb).to_u64().unwrap();
        let diff = (r % p + p - xm) % p;
        let t = mulmod(diff, powmod(mm, p - 2, p), p);
        x += &m * BigInt::from(t);
        m *= pb;
    }
    let half = &m >> 1usize;
    if x > half {
        x -= &m;
    }
    debug_assert!(x.abs() <= half);
    x
}

/// Coefficients of the polynomial of degree `< ys.len()` taking the value
/// `ys[i]` at `x = i`.
pub fn interpolate(f: &PrimeField, ys: &[Fp]) -> Vec<Fp> {
    let n = ys.len();
    let mut c = ys.to_vec();
    let invs: Vec<Fp> = (0..n as u64).map(|j| if j == 0 { 0 } else { f.inv(f.from_u64(j)) }).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = f.mul(f.sub(c[i], c[i - 1]), invs[j]);
        }
    }
    let mut poly: Vec<Fp> = vec![0; n];
    if n == 0 {
        return poly;
    }
    poly[0] = c[n - 1];
    let mut len = 1;
    for i in (0..n - 1).rev() {
        // poly <- poly * (x - i) + c[i]
        let xi = f.from_u64(i as u64);
        poly[len] = 0;
        for k in (1..=len).rev() {
            poly[k] = f.sub(poly[k - 1], f.mul(poly[k], xi));
        }
        poly[0] = f.add(f.neg(f.mul(poly[0], xi)), c[i]);
        len += 1;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_round_trip() {
        let f = PrimeField::new(primes_below(1 << 62, 1)[0]);
        for x in [0u64, 1, 2, 12345678901234, f.modulus() - 1] {
            assert_eq!(f.to_u64(f.from_u64(x)), x);
        }
        let a = f.from_u64(123456789);
        assert_eq!(f.to_u64(f.mul(a, f.inv(a))), 1);
        assert_eq!(f.to_u64(f.from_i64(-1)), f.modulus() - 1);
    }

    #[test]
    fn small_primes() {
        assert_eq!(primes_below(30, 4), vec![29, 23, 19, 17]);
        assert!(is_prime(2305843009213693951));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn crt_signed() {
        let ps = [101u64, 103, 107];
        let v = BigInt::from(-500000);
        let rs: Vec<u64> = ps.iter().map(|&p| v.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect();
        assert_eq!(crt_symmetric(&rs, &ps), v);
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let f = PrimeField::new(1_000_003);
        let coeffs = [5i64, -3, 0, 7];
        let ys: Vec<Fp> = (0..4u64)
            .map(|x| {
                let mut acc = f.zero();
                for &c in coeffs.iter().rev() {
                    acc = f.add(f.mul(acc, f.from_u64(x)), f.from_i64(c));
                }
                acc
            })
            .collect();
        let got = interpolate(&f, &ys);
        let want: Vec<Fp> = coeffs.iter().map(|&c| f.from_i64(c)).collect();
        assert_eq!(got, want);
    }
}
