//! Equivariant splitting types on the projective line.
//!
//! `F^d_r` is the kernel of `D^d U ⊗ O -> D^{d-r} U ⊗ O(r)` for `U = k^2`. It
//! splits as a sum of torus-equivariant line bundles `L_{u,v}(i)`; principal
//! parts bundles `P^k(O(m))` are twists and duals of such kernels.
//!
//! Two ways of finding the splitting are implemented.
//!
//! [`SplittingMethod::Peeling`] computes `H^0(F^d_r(t))` weight by weight for
//! `t = 0, 1, ...` and peels off a new summand wherever the kernel exceeds what
//! the summands found so far account for.
//!
//! [`SplittingMethod::Interval`] works with the single space
//! `V = { f in k[X]_{<=d} : coefficients r..d of f·(1+X)^r vanish }`.
//! A weight-`w` section of `F^d_r(t)` is exactly an element of `V` supported on
//! `[max(0, w-t), min(d, w)]`, so everything is determined by a basis of `V`
//! whose supports `[s, e]` have pairwise distinct starts and pairwise distinct
//! ends. Such a basis vector accounts for the summand `L_{e, d-s}(s-e)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactla::{binomial_mod_p, ensure_prime, inv_mod, mul_mod, next_prime_above, rank_dense_mod_p};

/// The line bundle `L_{u,v}(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquivariantSummand {
    pub i: i64,
    pub u: i64,
    pub v: i64,
}

impl EquivariantSummand {
    pub fn new(i: i64, u: i64, v: i64) -> Self {
        EquivariantSummand { i, u, v }
    }
}

/// A multiset of summands kept in canonical order: twist ascending, then `u`
/// descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantSplitting {
    summands: Vec<EquivariantSummand>,
}

impl EquivariantSplitting {
    pub fn new(mut summands: Vec<EquivariantSummand>) -> Self {
        summands.sort_by(|a, b| a.i.cmp(&b.i).then(b.u.cmp(&a.u)).then(b.v.cmp(&a.v)));
        EquivariantSplitting { summands }
    }

    pub fn summands(&self) -> &[EquivariantSummand] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Sum of the twists, i.e. the degree of the bundle.
    pub fn degree(&self) -> i64 {
        self.summands.iter().map(|s| s.i).sum()
    }

    /// Whether the multiset of `(u, v)` is invariant under `(u, v) -> (v, u)`.
    pub fn is_swap_symmetric(&self) -> bool {
        let mut a: Vec<_> = self.summands.iter().map(|s| (s.i, s.u, s.v)).collect();
        let mut b: Vec<_> = self.summands.iter().map(|s| (s.i, s.v, s.u)).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    fn map(&self, f: impl Fn(&EquivariantSummand) -> EquivariantSummand) -> Self {
        Self::new(self.summands.iter().map(f).collect())
    }
}

/// Plain splitting type: the twists, sorted ascending.
pub fn forget_equivariance(s: &EquivariantSplitting) -> Vec<i64> {
    let mut out: Vec<i64> = s.summands.iter().map(|x| x.i).collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SplittingMethod {
    #[default]
    Interval,
    Peeling,
}

fn check_char(p: u64) -> Result<()> {
    if p != 0 {
        ensure_prime(p)?;
    }
    Ok(())
}

/// Dimensions of the weight-`(w1, w2)` pieces of `H^0(F^d_r(t))`, computed as
/// kernels of the weight blocks of `D^d U ⊗ Sym^t U -> D^{d-r} U ⊗ Sym^{t+r} U`.
/// Only weights with a nonzero kernel are listed; all have `w1 + w2 = d + t`.
pub fn kernel_weight_dims(p: u64, d: i64, r: i64, t: i64) -> Result<BTreeMap<(i64, i64), usize>> {
    ensure_prime(p)?;
    if !(0..=d).contains(&r) {
        return invalid(format!("need 0 <= r <= d, got r = {r}, d = {d}"));
    }
    if t < 0 {
        return invalid(format!("twist must be >= 0, got {t}"));
    }
    let binom: Vec<u64> = (0..=r).map(|a| binomial_mod_p(r, a, p)).collect();
    let mut out = BTreeMap::new();
    for w1 in 0..=d + t {
        let (lo, hi) = ((w1 - t).max(0), w1.min(d));
        let (row_lo, row_hi) = ((w1 - t - r).max(0), w1.min(d - r));
        if lo > hi {
            continue;
        }
        let cols = (hi - lo + 1) as usize;
        let rows = (row_hi - row_lo + 1).max(0) as usize;
        let mut m = vec![0u64; rows * cols];
        for (ri, target) in (row_lo..=row_hi).enumerate() {
            // x^(i) ⊗ x^c hits x^(i-a) ⊗ x^(c+a) with coefficient C(r, a)
            for a in 0..=r {
                let i = target + a;
                if (lo..=hi).contains(&i) {
                    m[ri * cols + (i - lo) as usize] = binom[a as usize];
                }
            }
        }
        let kernel = cols - rank_dense_mod_p(m, rows, cols, p);
        if kernel > 0 {
            out.insert((w1, d + t - w1), kernel);
        }
    }
    Ok(out)
}

/// Equivariant splitting of `F^d_r` in characteristic `p` (0 allowed).
pub fn splitting_fdr(p: u64, d: i64, r: i64) -> Result<EquivariantSplitting> {
    splitting_fdr_with(p, d, r, SplittingMethod::Interval)
}

pub fn splitting_fdr_with(p: u64, d: i64, r: i64, method: SplittingMethod) -> Result<EquivariantSplitting> {
    check_char(p)?;
    if r < 1 || r > d {
        return invalid(format!("need 1 <= r <= d, got r = {r}, d = {d}"));
    }
    // The splitting type over Z stabilises once p exceeds d.
    let p = if p == 0 { next_prime_above(d as u64) } else { p };
    match method {
        SplittingMethod::Interval => Ok(interval_splitting(p, d, r)),
        SplittingMethod::Peeling => peeling_splitting(p, d, r),
    }
}

fn interval_splitting(p: u64, d: i64, r: i64) -> EquivariantSplitting {
    let (du, ru) = (d as usize, r as usize);
    let taps: Vec<(usize, u64)> = (1..=r)
        .filter_map(|a| {
            let g = binomial_mod_p(r, a, p);
            (g != 0).then(|| (a as usize, p - g))
        })
        .collect();
    // Every nonzero element of V has degree > d - r, because deg(f·g) =
    // deg f + r must stay below r otherwise. So the ends of an adapted basis
    // live in the last r coordinates and only those need to be kept.
    let tail_start = du + 1 - ru;
    let mut tails: Vec<Vec<u64>> = Vec::with_capacity(ru);
    let mut f = vec![0u64; du + 1];
    for s in 0..ru {
        f.iter_mut().for_each(|x| *x = 0);
        f[s] = 1;
        for k in ru..=du {
            let mut acc: u128 = 0;
            for &(a, g) in &taps {
                acc += g as u128 * f[k - a] as u128;
            }
            f[k] = (acc % p as u128) as u64;
        }
        tails.push(f[tail_start..].to_vec());
    }

    // Make the ends distinct while only ever adding later-starting rows to
    // earlier ones, so the starts s = 0..r-1 are preserved.
    let mut owner: Vec<Option<usize>> = vec![None; ru];
    let mut ends = vec![0usize; ru];
    for s in (0..ru).rev() {
        loop {
            let top = tails[s]
                .iter()
                .rposition(|&x| x != 0)
                .expect("the basis of V restricts injectively to the tail");
            match owner[top] {
                None => {
                    owner[top] = Some(s);
                    ends[s] = tail_start + top;
                    break;
                }
                Some(o) => {
                    let factor = mul_mod(tails[s][top], inv_mod(tails[o][top], p), p);
                    let (lo, hi) = tails.split_at_mut(s.max(o));
                    let (row, pivot) = if s < o { (&mut lo[s], &hi[0]) } else { (&mut hi[0], &lo[o]) };
                    for (x, &y) in row.iter_mut().zip(pivot.iter()).take(top + 1) {
                        let sub = mul_mod(factor, y, p);
                        *x = if *x >= sub { *x - sub } else { *x + p - sub };
                    }
                }
            }
        }
    }

    EquivariantSplitting::new(
        (0..ru)
            .map(|s| {
                let (s, e) = (s as i64, ends[s] as i64);
                EquivariantSummand::new(s - e, e, d - s)
            })
            .collect(),
    )
}

fn peeling_splitting(p: u64, d: i64, r: i64) -> Result<EquivariantSplitting> {
    let mut found: Vec<EquivariantSummand> = Vec::new();
    let limit = r * (d - r + 1) + 1;
    let mut t = 0;
    while (found.len() as i64) < r {
        if t > limit {
            return Err(Error::Internal(format!(
                "peeling found only {} of {r} summands of F^{d}_{r} by twist {limit}",
                found.len()
            )));
        }
        let width = (d + t + 1) as usize;
        let mut predicted = vec![0i64; width + 1];
        for s in &found {
            // L_{u,v}(i) contributes L_{u,v} ⊗ Sym^{i+t} U
            if s.i + t >= 0 {
                predicted[s.u as usize] += 1;
                predicted[(s.u + s.i + t + 1) as usize] -= 1;
            }
        }
        for w in 1..=width {
            predicted[w] += predicted[w - 1];
        }
        let actual = kernel_weight_dims(p, d, r, t)?;
        for w1 in 0..=d + t {
            let have = actual.get(&(w1, d + t - w1)).copied().unwrap_or(0) as i64;
            let excess = have - predicted[w1 as usize];
            if excess < 0 {
                return Err(Error::Internal(format!(
                    "kernel of F^{d}_{r}({t}) at weight {w1} is smaller than predicted"
                )));
            }
            for _ in 0..excess {
                found.push(EquivariantSummand::new(-t, w1, d + t - w1));
            }
        }
        t += 1;
    }
    if found.len() as i64 != r {
        return Err(Error::Internal(format!("peeling found {} summands for rank {r}", found.len())));
    }
    Ok(EquivariantSplitting::new(found))
}

/// Equivariant splitting of the principal parts bundle `P^k(O(m))`.
pub fn splitting_pparts(p: u64, m: i64, k: i64) -> Result<EquivariantSplitting> {
    splitting_pparts_with(p, m, k, SplittingMethod::Interval)
}

pub fn splitting_pparts_with(p: u64, m: i64, k: i64, method: SplittingMethod) -> Result<EquivariantSplitting> {
    check_char(p)?;
    if k < 0 {
        return invalid(format!("order k must be >= 0, got {k}"));
    }
    if m >= k + 1 {
        // P^k(O(m)) = (F^m_{k+1})^∨ ⊗ L_{m,m}
        let f = splitting_fdr_with(p, m, k + 1, method)?;
        Ok(f.map(|s| EquivariantSummand::new(-s.i, m - s.u, m - s.v)))
    } else if m >= -1 {
        let mut out: Vec<EquivariantSummand> = (0..=m).map(|i| EquivariantSummand::new(0, i, m - i)).collect();
        out.extend((0..=k - 1 - m).map(|i| EquivariantSummand::new(-k - 1, m + 1 + i, k - i)));
        Ok(EquivariantSplitting::new(out))
    } else {
        // P^k(O(m)) = F^{k-1-m}_{k+1} ⊗ L_{1+m,1+m}(-k-1)
        let f = splitting_fdr_with(p, k - 1 - m, k + 1, method)?;
        Ok(f.map(|s| EquivariantSummand::new(s.i - k - 1, s.u + 1 + m, s.v + 1 + m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triples(s: &EquivariantSplitting) -> Vec<(i64, i64, i64)> {
        s.summands().iter().map(|x| (x.i, x.u, x.v)).collect()
    }

    fn sorted(mut v: Vec<(i64, i64, i64)>) -> Vec<(i64, i64, i64)> {
        v.sort_unstable();
        v
    }

    #[test]
    fn f15_7_char5() {
        let expected = vec![
            (-10, 15, 10),
            (-10, 10, 15),
            (-9, 13, 11),
            (-9, 12, 12),
            (-9, 11, 13),
            (-8, 14, 9),
            (-8, 9, 14),
        ];
        for method in [SplittingMethod::Interval, SplittingMethod::Peeling] {
            let s = splitting_fdr_with(5, 15, 7, method).unwrap();
            assert_eq!(triples(&s), expected);
            assert_eq!(forget_equivariance(&s), vec![-10, -10, -9, -9, -9, -8, -8]);
        }
    }

    #[test]
    fn pparts_15_6_char5() {
        let s = splitting_pparts(5, 15, 6).unwrap();
        assert_eq!(forget_equivariance(&s), vec![8, 8, 9, 9, 9, 10, 10]);
        let expected = vec![(10, 0, 5), (8, 1, 6), (10, 5, 0), (8, 6, 1), (9, 2, 4), (9, 3, 3), (9, 4, 2)];
        assert_eq!(sorted(triples(&s)), sorted(expected));
    }

    #[test]
    fn case_two_is_explicit() {
        let s = splitting_pparts(7, 2, 4).unwrap();
        assert_eq!(forget_equivariance(&s), vec![-5, -5, 0, 0, 0]);
        let s = splitting_pparts(0, -1, 0).unwrap();
        assert_eq!(triples(&s), vec![(-1, 0, 0)]);
    }

    #[test]
    fn rank_one() {
        for p in [2, 3, 5, 7] {
            for d in 1..12 {
                let s = splitting_fdr(p, d, 1).unwrap();
                assert_eq!(triples(&s), vec![(-d, d, d)]);
            }
        }
    }

    #[test]
    fn global_sections_vanish_at_twist_zero() {
        for (p, d, r) in [(2, 6, 3), (3, 9, 4), (5, 15, 7)] {
            assert!(kernel_weight_dims(p, d, r, 0).unwrap().is_empty());
        }
    }

    #[test]
    fn methods_agree_with_invariants() {
        for p in [2u64, 3, 5] {
            for d in 1..=14 {
                for r in 1..=d {
                    let fast = splitting_fdr_with(p, d, r, SplittingMethod::Interval).unwrap();
                    let slow = splitting_fdr_with(p, d, r, SplittingMethod::Peeling).unwrap();
                    assert_eq!(fast, slow, "p={p} d={d} r={r}");
                    assert_eq!(fast.rank() as i64, r);
                    assert_eq!(fast.degree(), -r * (d - r + 1));
                    assert!(fast.is_swap_symmetric());
                    assert!(fast.summands().iter().all(|s| s.u + s.v == d - s.i));
                }
            }
        }
    }

    #[test]
    fn balanced_above_d() {
        for d in 1..=10 {
            let primes = [11u64, 13, 17].into_iter().filter(|&p| p as i64 > d);
            for p in primes.chain([0]) {
                for r in 1..=d {
                    let plain = forget_equivariance(&splitting_fdr(p, d, r).unwrap());
                    assert_eq!(plain, vec![-(d - r + 1); r as usize], "p={p} d={d} r={r}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(splitting_fdr(4, 5, 2).is_err());
        assert!(splitting_fdr(5, 5, 0).is_err());
        assert!(splitting_fdr(5, 5, 6).is_err());
        assert!(splitting_pparts(5, 3, -1).is_err());
    }
}
