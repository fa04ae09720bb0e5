//! Dense exact linear algebra over prime fields and over the integers, plus
//! binomial and multinomial coefficients modulo a prime.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn reduce_bigint(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.iter_u64_digits().next().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        ensure_prime(p)?;
        Ok(PrimeFieldMatrix {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        })
    }

    /// Row-major signed entries, reduced modulo `p`.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        ensure_prime(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(PrimeFieldMatrix {
            p,
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| reduce_i64(x, p)).collect(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    /// Adds `v` to entry `(r, c)` modulo `p`.
    pub fn add_to(&mut self, r: usize, c: usize, v: u64) {
        let slot = &mut self.entries[r * self.cols + c];
        *slot = (*slot + v % self.p) % self.p;
    }

    pub fn rank(&self) -> usize {
        rank_dense_mod_p(self.entries.clone(), self.rows, self.cols, self.p)
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Gaussian elimination on a row-major buffer; consumes the buffer.
pub(crate) fn rank_dense_mod_p(mut a: Vec<u64>, rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for c in col..cols {
                a.swap(piv * cols + c, rank * cols + c);
            }
        }
        let inv = inv_mod(a[rank * cols + col], p);
        for c in col..cols {
            a[rank * cols + c] = mul_mod(a[rank * cols + c], inv, p);
        }
        for r in rank + 1..rows {
            let f = a[r * cols + col];
            if f == 0 {
                continue;
            }
            for c in col..cols {
                let sub = mul_mod(f, a[rank * cols + c], p);
                let v = &mut a[r * cols + c];
                *v = if *v >= sub { *v - sub } else { *v + p - sub };
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod_p(m: &PrimeFieldMatrix) -> usize {
    m.rank()
}

pub fn kernel_dim_mod_p(m: &PrimeFieldMatrix) -> usize {
    m.kernel_dim()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: impl Into<BigInt>) {
        self.entries[r * self.cols + c] = v.into();
    }

    pub fn reduce_mod(&self, p: u64) -> Result<PrimeFieldMatrix> {
        ensure_prime(p)?;
        Ok(PrimeFieldMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| reduce_bigint(x, p)).collect(),
        })
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let mut prev = BigInt::from(1);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    a.swap(piv * cols + c, rank * cols + c);
                }
            }
            let pivot = a[rank * cols + col].clone();
            for r in rank + 1..rows {
                let f = a[r * cols + col].clone();
                for c in col..cols {
                    let v = &pivot * &a[r * cols + c] - &f * &a[rank * cols + c];
                    // exact by Sylvester's identity
                    a[r * cols + c] = v / &prev;
                }
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }
}

pub fn rank_exact_integer(m: &IntegerMatrix) -> usize {
    m.rank()
}

/// `C(r, a) mod p` by Lucas' theorem; zero when `a` is outside `[0, r]`.
pub fn binomial_mod_p(r: i64, a: i64, p: u64) -> u64 {
    if a < 0 || r < 0 || a > r {
        return 0;
    }
    let (mut r, mut a) = (r as u64, a as u64);
    let mut acc = 1u64 % p;
    while a > 0 || r > 0 {
        let (rd, ad) = (r % p, a % p);
        if ad > rd {
            return 0;
        }
        acc = mul_mod(acc, small_binomial_mod_p(rd, ad, p), p);
        r /= p;
        a /= p;
    }
    acc
}

/// `C(r, a) mod p` for `0 <= a <= r < p`.
fn small_binomial_mod_p(r: u64, a: u64, p: u64) -> u64 {
    let a = a.min(r - a);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..a {
        num = mul_mod(num, (r - i) % p, p);
        den = mul_mod(den, (i + 1) % p, p);
    }
    mul_mod(num, inv_mod(den, p), p)
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)` modulo `p`, as a
/// product of binomials.
pub fn multinomial_mod_p(parts: &[i64], p: u64) -> u64 {
    if parts.iter().any(|&x| x < 0) {
        return 0;
    }
    let mut total = 0i64;
    let mut acc = 1u64 % p;
    for &k in parts {
        total += k;
        acc = mul_mod(acc, binomial_mod_p(total, k, p), p);
        if acc == 0 {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_binomial(n: u64, k: u64) -> u128 {
        let f = |m: u64| (1..=m as u128).product::<u128>();
        f(n) / (f(k) * f(n - k))
    }

    #[test]
    fn prime_rank_examples() {
        let id = PrimeFieldMatrix::from_rows(5, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(rank_mod_p(&id), 2);
        assert_eq!(rank_mod_p(&PrimeFieldMatrix::zeros(7, 3, 4).unwrap()), 0);
        let ones = PrimeFieldMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(rank_mod_p(&ones), 1);
        assert!(matches!(PrimeFieldMatrix::zeros(6, 1, 1), Err(Error::NotPrime(6))));
    }

    #[test]
    fn kernel_examples() {
        let id = PrimeFieldMatrix::from_rows(3, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(kernel_dim_mod_p(&id), 0);
        assert_eq!(kernel_dim_mod_p(&PrimeFieldMatrix::zeros(2, 3, 5).unwrap()), 5);
        let row = PrimeFieldMatrix::from_rows(2, &[vec![1, 1]]).unwrap();
        assert_eq!(kernel_dim_mod_p(&row), 1);
    }

    #[test]
    fn integer_rank_examples() {
        let id = IntegerMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(rank_exact_integer(&id), 3);
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![1, 2]]).unwrap();
        assert_eq!(rank_exact_integer(&m), 1);
        // rank 2 over Q but rank 1 mod 2
        let m = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.reduce_mod(2).unwrap().rank(), 1);
    }

    #[test]
    fn integer_and_modular_ranks_agree_on_random_01_matrices() {
        // deterministic LCG so the grid is reproducible
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) & 1
        };
        for rows in 1..9 {
            for cols in 1..9 {
                let m: Vec<Vec<i64>> =
                    (0..rows).map(|_| (0..cols).map(|_| next() as i64).collect()).collect();
                let im = IntegerMatrix::from_rows(&m).unwrap();
                let r0 = im.rank();
                let r1 = im.reduce_mod(2_147_483_647).unwrap().rank();
                let r2 = im.reduce_mod(1_000_000_007).unwrap().rank();
                assert_eq!(r0, r1);
                assert_eq!(r0, r2);
                assert!(im.reduce_mod(2).unwrap().rank() <= r0);
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_mod_p(4, 2, 2), 0);
        assert_eq!(binomial_mod_p(5, 2, 7), 3);
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(binomial_mod_p(p as i64, 1, p), 0);
        }
        assert_eq!(binomial_mod_p(5, 7, 3), 0);
        assert_eq!(binomial_mod_p(5, -1, 3), 0);
    }

    #[test]
    fn lucas_matches_factorials() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
            for n in 0..=20u64 {
                for k in 0..=n {
                    assert_eq!(
                        binomial_mod_p(n as i64, k as i64, p) as u128,
                        factorial_binomial(n, k) % p as u128,
                        "C({n},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        // 4!/(2!1!1!) = 12
        assert_eq!(multinomial_mod_p(&[2, 1, 1], 5), 2);
        assert_eq!(multinomial_mod_p(&[2, 1, 1], 3), 0);
        assert_eq!(multinomial_mod_p(&[], 3), 1);
    }

    #[test]
    fn next_prime() {
        assert_eq!(next_prime_above(15), 17);
        assert_eq!(next_prime_above(2), 3);
        assert!(is_prime(2_147_483_647));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rank_plus_kernel_is_cols(rows in 1usize..7, cols in 1usize..7, seed in any::<u64>(), pi in 0usize..4) {
                let p = [2u64, 3, 5, 7][pi];
                let mut s = seed;
                let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                    ((s >> 40) % 7) as i64 - 3
                }).collect()).collect();
                let fm = PrimeFieldMatrix::from_rows(p, &m).unwrap();
                prop_assert_eq!(fm.rank() + fm.kernel_dim(), cols);
                prop_assert!(fm.rank() <= IntegerMatrix::from_rows(&m).unwrap().rank());
            }
        }
    }
}
