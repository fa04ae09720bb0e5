//! Characters of `H^i(P(k^n), D^d R(e))` for `i in {0,1}`, `d >= 0`, `e >= -1`,
//! where `R = Omega(1)` is the universal rank `n-1` subsheaf.
//!
//! Three independent routes are provided:
//!
//! - [`DividedMethod::Recursive`]: Frobenius recursion with `Phi` factors built
//!   from `p`-truncated complete symmetric polynomials, bottoming out in the
//!   characteristic-zero two-row Schur formulas when `d < p`.
//! - [`DividedMethod::Nim`]: the closed characteristic-2 formula for `h^1`,
//!   with `h^0` recovered from the Euler characteristic.
//! - [`DividedMethod::Oracle`]: brute force. Global sections of
//!   `0 -> D^d R(e) -> D^d V (e) -> D^{d-1} V (e+1) -> 0` give a map
//!   `D^d V ⊗ Sym^e V -> D^{d-1} V ⊗ Sym^{e+1} V` whose kernel is `H^0` and
//!   whose cokernel is `H^1` (the twists `e, e+1 >= -1` have no higher
//!   cohomology). Ranks are taken weight block by weight block over `F_p`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::charring::{
    complete_h, nim_poly, schur_two_row, truncated_h, truncated_schur, CharacterPoly,
};
use crate::error::{invalid, Error, Result};
use crate::exactla::{ensure_prime, rank_dense_mod_p};

/// Default bound on `dim C^0 + dim C^1` for the brute-force oracle; covers
/// `n <= 4, d <= 12, e <= 12`.
pub const ORACLE_DEFAULT_GUARD: usize = 500_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DividedQuery {
    pub i: u8,
    /// Characteristic: 0 or a prime.
    pub p: u64,
    pub d: i64,
    pub e: i64,
    pub n: usize,
}

impl DividedQuery {
    pub fn new(i: u8, p: u64, d: i64, e: i64, n: usize) -> Result<Self> {
        if i > 1 {
            return invalid(format!("cohomological degree must be 0 or 1, got {i}"));
        }
        if d < 0 {
            return invalid(format!("divided-power degree must be >= 0, got {d}"));
        }
        if e < -1 {
            return invalid(format!("twist must be >= -1, got {e}"));
        }
        if n < 2 {
            return invalid(format!("n must be >= 2, got {n}"));
        }
        if p != 0 {
            ensure_prime(p)?;
        }
        Ok(DividedQuery { i, p, d, e, n })
    }

    /// `h^i(D^d R(e)) = h^{1-i}(D^{e+1} R(d-1))`.
    pub fn dual(self) -> Self {
        DividedQuery {
            i: 1 - self.i,
            d: self.e + 1,
            e: self.d - 1,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DividedMethod {
    Recursive,
    Nim,
    Oracle,
}

/// Memoizing evaluator. Caches are behind mutexes, so one engine may be shared
/// across threads; locks are never held while computing.
#[derive(Default)]
pub struct DividedEngine {
    results: Mutex<HashMap<DividedQuery, Arc<CharacterPoly>>>,
    phi: Mutex<HashMap<(usize, u64, i64, i64), Arc<CharacterPoly>>>,
    truncated: Mutex<HashMap<(usize, u64, i64), Arc<CharacterPoly>>>,
    oracle_guard: Option<usize>,
}

impl DividedEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Engine whose oracle uses `limit` instead of the default/env guard.
    pub fn with_oracle_guard(limit: usize) -> Self {
        DividedEngine {
            oracle_guard: Some(limit),
            ..Self::default()
        }
    }

    pub fn compute(&self, q: DividedQuery, method: DividedMethod) -> Result<CharacterPoly> {
        let q = DividedQuery::new(q.i, q.p, q.d, q.e, q.n)?;
        match method {
            DividedMethod::Recursive => Ok((*self.recursive(q)).clone()),
            DividedMethod::Nim => nim_cohomology(q),
            DividedMethod::Oracle => {
                let limit = self
                    .oracle_guard
                    .unwrap_or_else(|| crate::size_guard_or(ORACLE_DEFAULT_GUARD));
                oracle_divided_with_guard(q, limit)
            }
        }
    }

    fn recursive(&self, q: DividedQuery) -> Arc<CharacterPoly> {
        if let Some(hit) = self.results.lock().unwrap().get(&q) {
            return hit.clone();
        }
        let value = if q.e < q.d - 1 {
            self.recursive(q.dual())
        } else if q.p == 0 || q.d < q.p as i64 {
            Arc::new(base_char_zero(q.i, q.n, q.d, q.e))
        } else {
            Arc::new(self.frobenius_step(q))
        };
        self.results.lock().unwrap().insert(q, value.clone());
        value
    }

    fn frobenius_step(&self, q: DividedQuery) -> CharacterPoly {
        let p = q.p as i64;
        let mut acc = CharacterPoly::zero(q.n);
        // Phi_{D,E} needs some j with D - jp >= 0 and E + jp >= 0, so
        // E >= -D, i.e. b <= (e + d - ap)/p.
        for a in 0..=q.d / p {
            let big_d = q.d - a * p;
            let b_max = (q.e + big_d).div_euclid(p);
            for b in -1..=b_max {
                let phi = self.phi_factor(q.n, q.p, big_d, q.e - b * p);
                if phi.is_zero() {
                    continue;
                }
                let inner = self.recursive(DividedQuery { i: q.i, d: a, e: b, ..q });
                if inner.is_zero() {
                    continue;
                }
                acc = &acc + &(&*phi * &inner.frobenius_twist(q.p));
            }
        }
        acc
    }

    fn truncated(&self, n: usize, p: u64, d: i64) -> Arc<CharacterPoly> {
        if let Some(hit) = self.truncated.lock().unwrap().get(&(n, p, d)) {
            return hit.clone();
        }
        let v = Arc::new(truncated_h(n, d, p));
        self.truncated.lock().unwrap().insert((n, p, d), v.clone());
        v
    }

    /// `Phi_{D,E} = sum_j h^(p)_{E+jp} h^(p)_{D-jp} - h^(p)_{E+1+jp} h^(p)_{D-1-jp}`.
    pub fn phi_factor(&self, n: usize, p: u64, big_d: i64, big_e: i64) -> Arc<CharacterPoly> {
        let key = (n, p, big_d, big_e);
        if let Some(hit) = self.phi.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let top = n as i64 * (p as i64 - 1);
        let in_range = |x: i64| (0..=top).contains(&x);
        let step = p as i64;
        let mut acc = CharacterPoly::zero(n);
        let mut j = 0i64;
        while big_d - j * step >= 0 {
            let (e0, d0) = (big_e + j * step, big_d - j * step);
            if in_range(e0) && in_range(d0) {
                acc = &acc + &(&*self.truncated(n, p, e0) * &*self.truncated(n, p, d0));
            }
            let (e1, d1) = (e0 + 1, d0 - 1);
            if in_range(e1) && in_range(d1) {
                acc = &acc - &(&*self.truncated(n, p, e1) * &*self.truncated(n, p, d1));
            }
            j += 1;
        }
        let v = Arc::new(acc);
        self.phi.lock().unwrap().insert(key, v.clone());
        v
    }
}

/// One-shot evaluation with a fresh engine.
pub fn divided_cohomology(q: DividedQuery, method: DividedMethod) -> Result<CharacterPoly> {
    DividedEngine::new().compute(q, method)
}

pub fn phi_factor(n: usize, p: u64, big_d: i64, big_e: i64) -> CharacterPoly {
    (*DividedEngine::new().phi_factor(n, p, big_d, big_e)).clone()
}

/// Characteristic-free answer: `h^0 = s_(e,d)` for `e >= d`, `h^1 = s_(d-1,e+1)`
/// for `e <= d-2`, zero otherwise.
pub fn base_char_zero(i: u8, n: usize, d: i64, e: i64) -> CharacterPoly {
    match i {
        0 if e >= d => schur_two_row(n, e, d),
        1 if e <= d - 2 => schur_two_row(n, d - 1, e + 1),
        _ => CharacterPoly::zero(n),
    }
}

/// `h^0 - h^1 = h_d h_e - h_{d-1} h_{e+1}`, valid in every characteristic.
pub fn euler_characteristic(n: usize, d: i64, e: i64) -> CharacterPoly {
    &(&complete_h(n, d) * &complete_h(n, e)) - &(&complete_h(n, d - 1) * &complete_h(n, e + 1))
}

/// Characteristic-2 closed formula for `h^1(D^d R(e))`, `e >= d - 1`:
/// sum over `q = 2^r (r >= 1)`, `m, j >= 0`, `(2m+2j+1) q <= d` of
/// `F^{2q}(N_m) * s^(q)_(e-(2m-2j-1)q, d-(2m+2j+1)q)`.
pub fn nim_h1(n: usize, d: i64, e: i64) -> CharacterPoly {
    let mut acc = CharacterPoly::zero(n);
    let mut q = 2i64;
    while q <= d {
        let mut m = 0i64;
        while (2 * m + 1) * q <= d {
            let twisted = nim_poly(n, m as u64).frobenius_twist(2 * q as u64);
            let mut j = 0i64;
            while (2 * m + 2 * j + 1) * q <= d {
                let s = truncated_schur(
                    n,
                    q as u64,
                    e - (2 * m - 2 * j - 1) * q,
                    d - (2 * m + 2 * j + 1) * q,
                );
                if !s.is_zero() {
                    acc = &acc + &(&twisted * &s);
                }
                j += 1;
            }
            m += 1;
        }
        q *= 2;
    }
    acc
}

fn nim_cohomology(q: DividedQuery) -> Result<CharacterPoly> {
    if q.p != 2 {
        return invalid(format!("the Nim method needs characteristic 2, got {}", q.p));
    }
    if q.e < q.d - 1 {
        return nim_cohomology(q.dual());
    }
    let h1 = nim_h1(q.n, q.d, q.e);
    Ok(match q.i {
        1 => h1,
        _ => &h1 + &euler_characteristic(q.n, q.d, q.e),
    })
}

fn compositions_below(w: &[i64], total: i64) -> Vec<Vec<i64>> {
    fn rec(w: &[i64], left: i64, buf: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let k = buf.len();
        if k == w.len() {
            if left == 0 {
                out.push(buf.clone());
            }
            return;
        }
        let rest: i64 = w[k + 1..].iter().sum();
        for x in (left - rest).max(0)..=w[k].min(left) {
            buf.push(x);
            rec(w, left - x, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if total >= 0 {
        rec(w, total, &mut Vec::with_capacity(w.len()), &mut out);
    }
    out
}

fn all_compositions(n: usize, total: i64) -> Vec<Vec<i64>> {
    compositions_below(&vec![total.max(0); n], total)
}

fn binom_usize(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// Brute-force character of `H^i(D^d R(e))` over `F_p` using the default size
/// guard (or `FLAGCOH_SIZE_GUARD`).
pub fn oracle_divided(q: DividedQuery) -> Result<CharacterPoly> {
    oracle_divided_with_guard(q, crate::size_guard_or(ORACLE_DEFAULT_GUARD))
}

pub fn oracle_divided_with_guard(q: DividedQuery, limit: usize) -> Result<CharacterPoly> {
    let q = DividedQuery::new(q.i, q.p, q.d, q.e, q.n)?;
    if q.p == 0 {
        return invalid("the oracle works over a prime field; pass a prime p");
    }
    let (n, d, e) = (q.n as i64, q.d, q.e);
    let sym = |k: i64| binom_usize(n + k - 1, k);
    let size = sym(d) * sym(e) + sym(d - 1) * sym(e + 1);
    if size > limit {
        return Err(Error::SizeGuard { size, limit });
    }
    let mut terms = Vec::new();
    for w in all_compositions(q.n, d + e) {
        // C^0_w: divided monomials mu of degree d under w (the symmetric factor is w - mu)
        let rows = if e >= 0 { compositions_below(&w, d) } else { Vec::new() };
        // C^1_w: divided monomials of degree d - 1 under w
        let cols = if d >= 1 { compositions_below(&w, d - 1) } else { Vec::new() };
        let col_index: HashMap<&[i64], usize> =
            cols.iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();
        let mut buf = vec![0u64; rows.len() * cols.len()];
        for (r, mu) in rows.iter().enumerate() {
            let mut target = mu.clone();
            for t in 0..q.n {
                if mu[t] == 0 {
                    continue;
                }
                target[t] -= 1;
                let c = col_index[target.as_slice()];
                buf[r * cols.len() + c] = (buf[r * cols.len() + c] + 1) % q.p;
                target[t] += 1;
            }
        }
        let rank = rank_dense_mod_p(buf, rows.len(), cols.len(), q.p);
        let mult = if q.i == 0 { rows.len() - rank } else { cols.len() - rank };
        if mult > 0 {
            terms.push((w, mult as i64));
        }
    }
    CharacterPoly::from_terms(q.n, false, terms)
}
