//! Integer (Laurent) polynomials in `n` variables, used as torus characters.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration in reverse
//! key order is the canonical descending-lexicographic order used by every
//! rendering. Coefficients are arbitrary-precision; multiplication takes a
//! packed-exponent / `i128` fast path whenever the operands provably fit.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Above this degree the symmetric constructors build their output by
/// convolving one variable at a time instead of enumerating compositions.
const ENUMERATION_MAX_DEGREE: i64 = 64;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct CharacterPoly {
    n: usize,
    laurent: bool,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

/// Two characters are equal when they are the same Laurent polynomial; the
/// `laurent` flag only records which ring the value was produced in.
impl PartialEq for CharacterPoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl Eq for CharacterPoly {}

impl CharacterPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "a character ring needs at least one variable");
        CharacterPoly {
            n,
            laurent: false,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; n], BigInt::one())
    }

    /// `coeff * z^exps`. Negative exponents make the result Laurent.
    pub fn monomial(n: usize, exps: Vec<i64>, coeff: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), n, "exponent vector length must equal n");
        let coeff = coeff.into();
        let mut out = Self::zero(n);
        out.laurent = exps.iter().any(|&e| e < 0);
        if !coeff.is_zero() {
            out.terms.insert(exps, coeff);
        }
        out
    }

    /// The variable `z_{index+1}`.
    pub fn variable(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        Self::monomial(n, e, 1)
    }

    /// `z_1 z_2 ... z_n`.
    pub fn product_of_variables(n: usize) -> Self {
        Self::monomial(n, vec![1; n], 1)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I, C>(n: usize, laurent: bool, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<BigInt>,
    {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let mut out = Self::zero(n);
        out.laurent = laurent;
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::VariableMismatch {
                    left: n,
                    right: e.len(),
                });
            }
            if !laurent && e.iter().any(|&x| x < 0) {
                return Err(Error::InvalidArgument(
                    "negative exponent in a non-Laurent polynomial".into(),
                ));
            }
            out.add_term(e, c.into());
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    /// Marks the value as living in the Laurent ring.
    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Terms in canonical (descending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (e.as_slice(), c))
    }

    /// Value at `z_i = 1`.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn total_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().map(|e| e.iter().sum())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            let mut z = Self::zero(self.n);
            z.laurent = self.laurent;
            return z;
        }
        CharacterPoly {
            n: self.n,
            laurent: self.laurent,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        out.laurent |= other.laurent;
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        out.laurent |= other.laurent;
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let laurent = self.laurent || other.laurent;
        if self.is_zero() || other.is_zero() {
            let mut z = Self::zero(self.n);
            z.laurent = laurent;
            return Ok(z);
        }
        let terms = match packed_product(self, other) {
            Some(t) => t,
            None => generic_product(self, other),
        };
        Ok(CharacterPoly {
            n: self.n,
            laurent,
            terms,
        })
    }

    /// `z_i -> z_i^p`.
    pub fn frobenius_twist(&self, p: u64) -> Self {
        let p = p as i64;
        CharacterPoly {
            n: self.n,
            laurent: self.laurent,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * p).collect(), c.clone()))
                .collect(),
        }
    }

    /// `z_i -> z_i^{-1}`; the result is always Laurent.
    pub fn dualize(&self) -> Self {
        CharacterPoly {
            n: self.n,
            laurent: true,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Applies a permutation of the variables: exponent slot `k` moves to `perm[k]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        CharacterPoly {
            n: self.n,
            laurent: self.laurent,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = vec![0; self.n];
                    for (k, &x) in e.iter().enumerate() {
                        f[perm[k]] = x;
                    }
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Invariance under the transposition of every adjacent pair of variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|k| {
            let mut perm: Vec<usize> = (0..self.n).collect();
            perm.swap(k, k + 1);
            self.permute_variables(&perm) == *self
        })
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Canonical text: descending lex terms, `c*z1^a1*...*zn^an`, unit
    /// coefficients, zero exponents and `^1` elided.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("character serialization is infallible")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// multiplication kernels

const PACK_BITS: u32 = 16;
const PACK_BIAS: i64 = 1 << 15;
const PACK_LIMIT: i64 = 1 << 14;

fn pack(e: &[i64]) -> u128 {
    e.iter().enumerate().fold(0u128, |acc, (k, &x)| {
        acc | (((x + PACK_BIAS) as u128) << (PACK_BITS as usize * k))
    })
}

fn unpack(key: u128, n: usize) -> Vec<i64> {
    (0..n)
        .map(|k| ((key >> (PACK_BITS as usize * k)) & 0xffff) as i64 - PACK_BIAS)
        .collect()
}

fn to_packed(f: &CharacterPoly) -> Option<(Vec<(u128, i128)>, u128)> {
    let mut out = Vec::with_capacity(f.terms.len());
    let mut max = 0u128;
    for (e, c) in &f.terms {
        if e.iter().any(|x| x.abs() >= PACK_LIMIT) {
            return None;
        }
        let c = c.to_i128()?;
        max = max.max(c.unsigned_abs());
        out.push((pack(e), c));
    }
    Some((out, max))
}

fn packed_product(f: &CharacterPoly, g: &CharacterPoly) -> Option<BTreeMap<Vec<i64>, BigInt>> {
    let n = f.n;
    if n * PACK_BITS as usize > 128 {
        return None;
    }
    let (a, max_a) = to_packed(f)?;
    let (b, max_b) = to_packed(g)?;
    let bound = max_a
        .checked_mul(max_b)?
        .checked_mul(a.len().min(b.len()) as u128)?;
    if bound >= 1u128 << 126 {
        return None;
    }
    let bias = pack(&vec![0; n]);
    let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
    acc.reserve(large.len() * 2);
    for &(kb, cb) in large {
        for &(ka, ca) in small {
            let key = ka.wrapping_add(kb).wrapping_sub(bias);
            *acc.entry(key).or_insert(0) += ca * cb;
        }
    }
    Some(
        acc.into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(k, c)| (unpack(k, n), BigInt::from(c)))
            .collect(),
    )
}

fn generic_product(f: &CharacterPoly, g: &CharacterPoly) -> BTreeMap<Vec<i64>, BigInt> {
    let mut acc: HashMap<Vec<i64>, BigInt> = HashMap::new();
    for (ea, ca) in &f.terms {
        for (eb, cb) in &g.terms {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *acc.entry(e).or_default() += ca * cb;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

// ---------------------------------------------------------------------------
// operator sugar; these panic on variable-count mismatch, use `checked_*` to
// get an error instead.

impl<'a> Add<&'a CharacterPoly> for &'a CharacterPoly {
    type Output = CharacterPoly;
    fn add(self, rhs: &'a CharacterPoly) -> CharacterPoly {
        self.checked_add(rhs).expect("character addition")
    }
}

impl<'a> Sub<&'a CharacterPoly> for &'a CharacterPoly {
    type Output = CharacterPoly;
    fn sub(self, rhs: &'a CharacterPoly) -> CharacterPoly {
        self.checked_sub(rhs).expect("character subtraction")
    }
}

impl<'a> Mul<&'a CharacterPoly> for &'a CharacterPoly {
    type Output = CharacterPoly;
    fn mul(self, rhs: &'a CharacterPoly) -> CharacterPoly {
        self.checked_mul(rhs).expect("character multiplication")
    }
}

impl Neg for &CharacterPoly {
    type Output = CharacterPoly;
    fn neg(self) -> CharacterPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for CharacterPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| {
                    if x == 1 {
                        format!("z{}", k + 1)
                    } else {
                        format!("z{}^{}", k + 1, x)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    laurent: bool,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<i64>,
    c: JsonInt,
}

/// Integer that serializes as a JSON number when it fits in `i64`, otherwise
/// as a decimal string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<CharacterPoly> for PolyJson {
    fn from(p: CharacterPoly) -> Self {
        PolyJson {
            n: p.n,
            laurent: p.laurent,
            terms: p
                .terms()
                .map(|(e, c)| TermJson {
                    e: e.to_vec(),
                    c: match c.to_i64() {
                        Some(v) => JsonInt::Small(v),
                        None => JsonInt::Big(c.to_string()),
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for CharacterPoly {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let c = match t.c {
                JsonInt::Small(v) => BigInt::from(v),
                JsonInt::Big(s) => s
                    .parse::<BigInt>()
                    .map_err(|e| Error::InvalidArgument(format!("bad coefficient {s:?}: {e}")))?,
            };
            terms.push((t.e, c));
        }
        CharacterPoly::from_terms(j.n, j.laurent, terms)
    }
}

// ---------------------------------------------------------------------------
// symmetric constructors

/// Calls `f` on every exponent vector of length `n`, entries in `[0, cap]`,
/// summing to `d`.
fn for_each_composition(n: usize, d: i64, cap: i64, f: &mut impl FnMut(&[i64])) {
    fn rec(buf: &mut Vec<i64>, n: usize, left: i64, cap: i64, f: &mut impl FnMut(&[i64])) {
        let k = buf.len();
        if k + 1 == n {
            if left <= cap {
                buf.push(left);
                f(buf);
                buf.pop();
            }
            return;
        }
        let remaining_slots = (n - k - 1) as i64;
        // later slots can absorb at most remaining_slots * cap
        let lo = (left - remaining_slots * cap).max(0);
        let hi = left.min(cap);
        for x in (lo..=hi).rev() {
            buf.push(x);
            rec(buf, n, left - x, cap, f);
            buf.pop();
        }
    }
    if d < 0 || d > n as i64 * cap {
        return;
    }
    let mut buf = Vec::with_capacity(n);
    rec(&mut buf, n, d, cap, f);
}

/// Same terms as [`for_each_composition`], built one variable at a time:
/// layer `k` holds, for each partial degree, the admissible prefixes of length `k`.
fn compositions_by_convolution(n: usize, d: i64, cap: i64) -> Vec<Vec<i64>> {
    if d < 0 || d > n as i64 * cap {
        return Vec::new();
    }
    let du = d as usize;
    let mut layer: Vec<Vec<Vec<i64>>> = vec![Vec::new(); du + 1];
    layer[0].push(Vec::new());
    for k in 0..n {
        let slots_after = (n - k - 1) as i64;
        let mut next: Vec<Vec<Vec<i64>>> = vec![Vec::new(); du + 1];
        for (deg, prefixes) in layer.iter().enumerate() {
            for x in 0..=cap.min(d - deg as i64) {
                let nd = deg + x as usize;
                if (d - nd as i64) > slots_after * cap {
                    continue;
                }
                for pre in prefixes {
                    let mut v = pre.clone();
                    v.push(x);
                    next[nd].push(v);
                }
            }
        }
        layer = next;
    }
    std::mem::take(&mut layer[du])
}

fn sum_of_compositions(n: usize, d: i64, cap: i64) -> CharacterPoly {
    assert!(n >= 1, "n must be positive");
    let mut out = CharacterPoly::zero(n);
    if d <= ENUMERATION_MAX_DEGREE {
        for_each_composition(n, d, cap, &mut |e| {
            out.terms.insert(e.to_vec(), BigInt::one());
        });
    } else {
        for e in compositions_by_convolution(n, d, cap) {
            out.terms.insert(e, BigInt::one());
        }
    }
    out
}

/// Complete homogeneous symmetric polynomial `h_d` in `n` variables; zero for `d < 0`.
pub fn complete_h(n: usize, d: i64) -> CharacterPoly {
    sum_of_compositions(n, d, d.max(0))
}

/// `p`-truncated `h_d`: compositions of `d` with every part below `p`.
pub fn truncated_h(n: usize, d: i64, p: u64) -> CharacterPoly {
    assert!(p >= 1, "truncation bound must be positive");
    sum_of_compositions(n, d, p as i64 - 1)
}

/// `s_(a,b) = h_a h_b - h_{a+1} h_{b-1}`.
pub fn schur_two_row(n: usize, a: i64, b: i64) -> CharacterPoly {
    &(&complete_h(n, a) * &complete_h(n, b)) - &(&complete_h(n, a + 1) * &complete_h(n, b - 1))
}

/// `s^(q)_(a,b) = h^(q)_a h^(q)_b - h^(q)_{a+1} h^(q)_{b-1}`.
pub fn truncated_schur(n: usize, q: u64, a: i64, b: i64) -> CharacterPoly {
    &(&truncated_h(n, a, q) * &truncated_h(n, b, q))
        - &(&truncated_h(n, a + 1, q) * &truncated_h(n, b - 1, q))
}

/// Nim symmetric polynomial: monomials of degree `2m` whose exponents have
/// bitwise XOR zero.
pub fn nim_poly(n: usize, m: u64) -> CharacterPoly {
    let mut out = CharacterPoly::zero(n);
    let d = 2 * m as i64;
    for_each_composition(n, d, d, &mut |e| {
        if e.iter().fold(0i64, |acc, &x| acc ^ x) == 0 {
            out.terms.insert(e.to_vec(), BigInt::one());
        }
    });
    out
}

pub fn frobenius_twist(f: &CharacterPoly, p: u64) -> CharacterPoly {
    f.frobenius_twist(p)
}

pub fn dualize(f: &CharacterPoly) -> CharacterPoly {
    f.dualize()
}

pub fn dimension_of(f: &CharacterPoly) -> BigInt {
    f.dimension()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, terms: &[(&[i64], i64)]) -> CharacterPoly {
        CharacterPoly::from_terms(n, terms.iter().any(|(e, _)| e.iter().any(|&x| x < 0)), terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    fn binom(n: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn complete_h_small_cases() {
        assert_eq!(
            complete_h(2, 3),
            poly(2, &[(&[3, 0], 1), (&[2, 1], 1), (&[1, 2], 1), (&[0, 3], 1)])
        );
        assert_eq!(complete_h(3, 0), CharacterPoly::one(3));
        assert!(complete_h(4, -1).is_zero());
    }

    #[test]
    fn complete_h_dimension_is_binomial() {
        for n in 1..=5usize {
            for d in 0..=9i64 {
                assert_eq!(
                    complete_h(n, d).dimension(),
                    binom(n as u64 + d as u64 - 1, d as u64)
                );
            }
        }
    }

    #[test]
    fn convolution_matches_enumeration() {
        for (n, d, cap) in [(3, 7, 7), (4, 9, 2), (2, 70, 70), (3, 66, 30)] {
            let mut a: Vec<Vec<i64>> = Vec::new();
            for_each_composition(n, d, cap, &mut |e| a.push(e.to_vec()));
            let mut b = compositions_by_convolution(n, d, cap);
            a.sort();
            b.sort();
            assert_eq!(a, b, "n={n} d={d} cap={cap}");
        }
        // large degree goes through the convolution path
        assert_eq!(complete_h(2, 100).len(), 101);
    }

    #[test]
    fn truncated_h_cases() {
        assert_eq!(truncated_h(2, 2, 2), poly(2, &[(&[1, 1], 1)]));
        assert_eq!(truncated_h(5, 5, 2), CharacterPoly::product_of_variables(5));
        assert!(truncated_h(3, 7, 3).is_zero());
        for n in 1..=4 {
            for d in 0..6 {
                assert_eq!(truncated_h(n, d, d as u64 + 1), complete_h(n, d));
            }
        }
    }

    #[test]
    fn schur_two_row_cases() {
        assert_eq!(schur_two_row(2, 1, 1), poly(2, &[(&[1, 1], 1)]));
        assert_eq!(schur_two_row(3, 2, 0), complete_h(3, 2));
        // s_(3,3) in 3 variables: 10 terms, Kostka number K_(33),(222) = 1
        let s33 = schur_two_row(3, 3, 3);
        assert_eq!(s33.len(), 10);
        assert_eq!(s33.coeff(&[2, 2, 2]), BigInt::from(1));
        assert_eq!(s33.dimension(), BigInt::from(10));
        // a = b - 1 collapses
        assert!(schur_two_row(3, 1, 2).is_zero());
    }

    #[test]
    fn truncated_schur_cases() {
        let e5 = CharacterPoly::product_of_variables(5);
        let e1 = complete_h(5, 1);
        assert_eq!(truncated_schur(5, 2, 5, 1), &e5 * &e1);
        assert_eq!(truncated_schur(2, 1, 0, 0), CharacterPoly::one(2));
        assert!(truncated_schur(3, 2, 9, 0).is_zero());
    }

    #[test]
    fn nim_poly_cases() {
        assert_eq!(nim_poly(2, 1), poly(2, &[(&[1, 1], 1)]));
        assert_eq!(
            nim_poly(3, 1),
            poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)])
        );
        assert_eq!(nim_poly(2, 0), CharacterPoly::one(2));
        // brute force: all vectors in a box
        let n = 3;
        for m in 0..5i64 {
            let f = nim_poly(n, m as u64);
            let mut count = 0;
            for a in 0..=2 * m {
                for b in 0..=2 * m - a {
                    let c = 2 * m - a - b;
                    if a ^ b ^ c == 0 {
                        count += 1;
                        assert_eq!(f.coeff(&[a, b, c]), BigInt::one());
                    }
                }
            }
            assert_eq!(f.len(), count);
        }
    }

    #[test]
    fn frobenius_and_dual() {
        let f = &CharacterPoly::variable(2, 0) + &CharacterPoly::variable(2, 1);
        assert_eq!(f.frobenius_twist(3), poly(2, &[(&[3, 0], 1), (&[0, 3], 1)]));
        assert_eq!(CharacterPoly::one(3).frobenius_twist(5), CharacterPoly::one(3));
        let g = poly(2, &[(&[2, 1], 1)]);
        assert_eq!(g.dualize(), poly(2, &[(&[-2, -1], 1)]));
        assert!(g.dualize().is_laurent());
        assert_eq!(g.dualize().dualize(), g);
    }

    #[test]
    fn arithmetic_basics() {
        let h1 = complete_h(2, 1);
        let e2 = &(&h1 * &h1) - &complete_h(2, 2);
        assert_eq!(e2, poly(2, &[(&[1, 1], 1)]));
        assert!((&e2 + &(-&e2)).is_zero());
        let z = CharacterPoly::variable(2, 0);
        assert_eq!(&z * &z.dualize(), CharacterPoly::one(2));
        assert!(matches!(
            complete_h(2, 1).checked_add(&complete_h(3, 1)),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn bigint_path_handles_large_coefficients() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let f = CharacterPoly::monomial(2, vec![1, 0], big.clone());
        let g = CharacterPoly::monomial(2, vec![0, 1], big.clone());
        let prod = &f * &g;
        assert_eq!(prod.coeff(&[1, 1]), &big * &big);
        // and huge exponents fall back too
        let h = CharacterPoly::monomial(2, vec![1 << 20, 0], 3);
        assert_eq!((&h * &h).coeff(&[1 << 21, 0]), BigInt::from(9));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(complete_h(2, 2).to_text(), "z1^2 + z1*z2 + z2^2");
        assert_eq!(CharacterPoly::zero(3).to_text(), "0");
        let f = poly(2, &[(&[0, 0], 5), (&[1, -1], -2), (&[2, 0], 1)]);
        assert_eq!(f.to_text(), "z1^2 - 2*z1*z2^-1 + 5");
    }

    #[test]
    fn json_shape() {
        let f = schur_two_row(2, 1, 1);
        let v = f.to_json();
        assert_eq!(
            v,
            serde_json::json!({"n": 2, "laurent": false, "terms": [{"e": [1, 1], "c": 1}]})
        );
        let huge = CharacterPoly::monomial(1, vec![0], BigInt::from(u64::MAX) * 4);
        let back = CharacterPoly::from_json(&huge.to_json()).unwrap();
        assert_eq!(back, huge);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly(n: usize) -> impl Strategy<Value = CharacterPoly> {
            prop::collection::vec((prop::collection::vec(-3i64..4, n), -5i64..6), 0..6).prop_map(
                move |ts| CharacterPoly::from_terms(n, true, ts).unwrap(),
            )
        }

        proptest! {
            #[test]
            fn frobenius_is_a_ring_map(f in small_poly(3), g in small_poly(3), p in 1u64..5) {
                prop_assert_eq!((&f + &g).frobenius_twist(p), &f.frobenius_twist(p) + &g.frobenius_twist(p));
                prop_assert_eq!((&f * &g).frobenius_twist(p), &f.frobenius_twist(p) * &g.frobenius_twist(p));
            }

            #[test]
            fn json_round_trip(f in small_poly(2)) {
                prop_assert_eq!(CharacterPoly::from_json(&f.to_json()).unwrap(), f);
            }

            #[test]
            fn fast_and_generic_products_agree(f in small_poly(4), g in small_poly(4)) {
                let fast = f.checked_mul(&g).unwrap();
                let slow = CharacterPoly { n: 4, laurent: true, terms: generic_product(&f, &g) };
                prop_assert_eq!(fast, slow);
            }

            #[test]
            fn constructors_are_symmetric(n in 1usize..5, d in 0i64..7, p in 1u64..4) {
                prop_assert!(complete_h(n, d).is_symmetric());
                prop_assert!(truncated_h(n, d, p).is_symmetric());
                prop_assert!(nim_poly(n, d as u64 / 2).is_symmetric());
                prop_assert!(schur_two_row(n, d, d / 2).is_symmetric());
                prop_assert!(nim_poly(n, d as u64).terms().all(|(_, c)| c.is_one()));
            }

            #[test]
            fn dual_preserves_dimension(f in small_poly(3)) {
                prop_assert_eq!(f.dualize().dimension(), f.dimension());
            }
        }
    }
}
