//! The graded Han–Monsky representation ring.
//!
//! Elements are finite sums of classes `δ_c(-j)`, the cyclic module
//! `k[T]/(T^c)` generated in degree `j`. Pair products `δ_a·δ_b` come either
//! from a conjectural recursion for the lengths `c_j(a,b)` or from an explicit
//! Jordan decomposition of `T = T_1 + ... + T_n` acting on
//! `k[T_1,...,T_n]/(T_1^{a_1},...,T_n^{a_n})`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactla::{ensure_prime, inv_mod, mul_mod, rank_dense_mod_p};

/// Default bound on `∏ a_t` for the Jordan-type oracle.
pub const JORDAN_DEFAULT_GUARD: usize = 20_000;

/// `length -> shift -> multiplicity`; zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "HMJson", try_from = "HMJson")]
pub struct HMElement {
    blocks: BTreeMap<u64, BTreeMap<u64, u64>>,
}

#[derive(Serialize, Deserialize)]
struct HMJson {
    blocks: Vec<BlockJson>,
}

#[derive(Serialize, Deserialize)]
struct BlockJson {
    length: u64,
    shifts: BTreeMap<u64, u64>,
}

impl From<HMElement> for HMJson {
    fn from(x: HMElement) -> Self {
        HMJson {
            blocks: x
                .blocks
                .into_iter()
                .map(|(length, shifts)| BlockJson { length, shifts })
                .collect(),
        }
    }
}

impl TryFrom<HMJson> for HMElement {
    type Error = Error;

    fn try_from(j: HMJson) -> Result<Self> {
        let mut out = HMElement::zero();
        for b in j.blocks {
            if b.length == 0 {
                return invalid("block length must be positive");
            }
            for (shift, mult) in b.shifts {
                out.add(b.length, shift, mult);
            }
        }
        Ok(out)
    }
}

impl HMElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `δ_c(-j)`.
    pub fn delta(c: u64, j: u64) -> Self {
        let mut out = Self::zero();
        out.add(c, j, 1);
        out
    }

    /// Adds `mult · δ_c(-j)`.
    pub fn add(&mut self, c: u64, j: u64, mult: u64) {
        assert!(c >= 1, "block length must be positive");
        if mult > 0 {
            *self.blocks.entry(c).or_default().entry(j).or_default() += mult;
        }
    }

    /// `(length, shift, multiplicity)` with lengths then shifts ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        self.blocks
            .iter()
            .flat_map(|(&c, m)| m.iter().map(move |(&j, &k)| (c, j, k)))
    }

    pub fn blocks(&self) -> &BTreeMap<u64, BTreeMap<u64, u64>> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of summands counted with multiplicity.
    pub fn part_count(&self) -> u64 {
        self.iter().map(|(_, _, k)| k).sum()
    }

    pub fn shifted(&self, by: u64) -> Self {
        let mut out = Self::zero();
        for (c, j, k) in self.iter() {
            out.add(c, j + by, k);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("HMElement always serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("bad HMElement JSON: {e}")))
    }
}

/// `{3 => q^3, 6 => q^2+q, 9 => 1}`.
impl fmt::Display for HMElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (c, shifts)) in self.blocks.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c} => ")?;
            for (m, (&j, &k)) in shifts.iter().rev().enumerate() {
                if m > 0 {
                    write!(f, "+")?;
                }
                let coeff = if k == 1 && j > 0 { String::new() } else { k.to_string() };
                match j {
                    0 => write!(f, "{k}")?,
                    1 => write!(f, "{coeff}q")?,
                    _ => write!(f, "{coeff}q^{j}")?,
                }
            }
        }
        write!(f, "}}")
    }
}

/// Block lengths with multiplicity, descending.
pub fn jordan_type(x: &HMElement) -> Vec<u64> {
    let mut out: Vec<u64> = x
        .iter()
        .flat_map(|(c, _, k)| std::iter::repeat(c).take(k as usize))
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Graded dimension `Σ mult · q^j (1 + q + ... + q^{c-1})`, as coefficients.
pub fn hilbert_series(x: &HMElement) -> Vec<u64> {
    let top = x.iter().map(|(c, j, _)| j + c).max().unwrap_or(0) as usize;
    let mut out = vec![0u64; top];
    for (c, j, k) in x.iter() {
        for d in j..j + c {
            out[d as usize] += k;
        }
    }
    out
}

/// `∏_t (1 + q + ... + q^{a_t - 1})`.
pub fn expected_hilbert_series(lengths: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    for &a in lengths {
        let mut next = vec![0u64; acc.len() + a as usize - 1];
        for (i, &x) in acc.iter().enumerate() {
            for slot in &mut next[i..i + a as usize] {
                *slot += x;
            }
        }
        acc = next;
    }
    acc
}

/// Whether the multiset of `(c, j)` is invariant under `j -> s - j - (c - 1)`.
pub fn is_gorenstein_symmetric(x: &HMElement, s: i64) -> bool {
    x.iter().all(|(c, j, k)| {
        let mirror = s - j as i64 - (c as i64 - 1);
        mirror >= 0
            && x.blocks
                .get(&c)
                .and_then(|m| m.get(&(mirror as u64)))
                .is_some_and(|&k2| k2 == k)
    })
}

fn domain_error(p: u64, a: i64, b: i64, j: i64) -> Error {
    Error::ConjectureDomain { p, a, b, j }
}

/// The conjectural length `c_j(a,b)` of the summand generated in degree `j`
/// of `δ_a·δ_b`. Arguments are sorted first; `p = 0` means characteristic zero.
pub fn cj_conjectural(p: u64, a: i64, b: i64, j: i64) -> Result<i64> {
    if p != 0 {
        ensure_prime(p)?;
    }
    cj_rec(p, a, b, j)
}

fn cj_rec(p: u64, a: i64, b: i64, j: i64) -> Result<i64> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if a < 1 || j < 0 || j >= a {
        return Err(domain_error(p, a, b, j));
    }
    if a == 1 {
        return Ok(b);
    }
    if p == 0 || p as i64 > a + b - 1 {
        return Ok(a + b - 2 * j - 1);
    }
    let p = p as i64;
    let mut q = p;
    while q < a {
        q *= p;
    }
    let qq = q / p;
    let r = (a + b - 1 - j) / q;
    if b - j <= r * q {
        return Ok(r * q);
    }
    let m = a / qq;
    let a1 = a - m * qq;
    let i = j / qq;
    let (na, nb, nj) = if j <= i * qq + a1 - 1 {
        (a1, b + (m - 2 * i) * qq, j - i * qq)
    } else {
        (qq - a1, b + (m - 1 - 2 * i) * qq, j - i * qq - a1)
    };
    cj_rec(p as u64, na, nb, nj).map_err(|e| match e {
        // report the outermost instance that led outside the domain
        Error::ConjectureDomain { .. } => domain_error(p as u64, a, b, j),
        other => other,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum HMMethod {
    #[default]
    Conjecture,
    Oracle,
}

/// A pair product for which the conjectural recursion left its domain and the
/// oracle answer was used instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fallback {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub error: Error,
}

/// Products in characteristic `p`, with memoized pair products and a record of
/// every conjecture fallback.
pub struct HanMonsky {
    p: u64,
    pairs: Mutex<HashMap<(u64, u64, HMMethod), Arc<HMElement>>>,
    fallbacks: Mutex<Vec<Fallback>>,
    oracle_guard: Option<usize>,
}

impl HanMonsky {
    pub fn new(p: u64) -> Result<Self> {
        if p != 0 {
            ensure_prime(p)?;
        }
        Ok(HanMonsky {
            p,
            pairs: Mutex::new(HashMap::new()),
            fallbacks: Mutex::new(Vec::new()),
            oracle_guard: None,
        })
    }

    pub fn with_oracle_guard(mut self, limit: usize) -> Self {
        self.oracle_guard = Some(limit);
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn fallbacks(&self) -> Vec<Fallback> {
        self.fallbacks.lock().unwrap().clone()
    }

    fn oracle(&self, lengths: &[u64]) -> Result<HMElement> {
        let limit = self
            .oracle_guard
            .unwrap_or_else(|| crate::size_guard_or(JORDAN_DEFAULT_GUARD));
        oracle_jordan_with_guard(self.p, lengths, limit)
    }

    /// `δ_a · δ_b`.
    pub fn pair(&self, a: u64, b: u64, method: HMMethod) -> Result<Arc<HMElement>> {
        if a == 0 || b == 0 {
            return invalid("block lengths must be positive");
        }
        let (a, b) = (a.min(b), a.max(b));
        if let Some(hit) = self.pairs.lock().unwrap().get(&(a, b, method)) {
            return Ok(hit.clone());
        }
        let value = match method {
            HMMethod::Oracle => self.oracle(&[a, b])?,
            HMMethod::Conjecture => {
                match (0..a as i64)
                    .map(|j| cj_rec(self.p, a as i64, b as i64, j).map(|c| (c as u64, j as u64)))
                    .collect::<Result<Vec<_>>>()
                {
                    Ok(parts) => {
                        let mut out = HMElement::zero();
                        for (c, j) in parts {
                            if c > 0 {
                                out.add(c, j, 1);
                            }
                        }
                        out
                    }
                    Err(error @ Error::ConjectureDomain { .. }) => {
                        warn!("conjectural recursion failed for δ_{a}·δ_{b} (p = {}): {error}; using the oracle", self.p);
                        let value = self.oracle(&[a, b])?;
                        self.fallbacks.lock().unwrap().push(Fallback { p: self.p, a, b, error });
                        value
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        let value = Arc::new(value);
        self.pairs.lock().unwrap().insert((a, b, method), value.clone());
        Ok(value)
    }

    /// `x · y`, distributing over summands and adding shifts.
    pub fn multiply(&self, x: &HMElement, y: &HMElement, method: HMMethod) -> Result<HMElement> {
        let mut out = HMElement::zero();
        for (c1, j1, k1) in x.iter() {
            for (c2, j2, k2) in y.iter() {
                let prod = self.pair(c1, c2, method)?;
                for (c, j, k) in prod.iter() {
                    out.add(c, j + j1 + j2, k * k1 * k2);
                }
            }
        }
        Ok(out)
    }

    /// `δ_{a_1} ⋯ δ_{a_n}`, folded left to right.
    pub fn product(&self, lengths: &[u64], method: HMMethod) -> Result<HMElement> {
        self.partial_products(lengths, method)?
            .pop()
            .ok_or_else(|| Error::InvalidArgument("empty list of lengths".into()))
    }

    /// `δ_{a_1}`, `δ_{a_1}δ_{a_2}`, ..., `δ_{a_1}⋯δ_{a_n}`.
    pub fn partial_products(&self, lengths: &[u64], method: HMMethod) -> Result<Vec<HMElement>> {
        if lengths.is_empty() {
            return invalid("empty list of lengths");
        }
        if lengths.contains(&0) {
            return invalid("block lengths must be positive");
        }
        if method == HMMethod::Oracle && self.p == 0 {
            return invalid("the Jordan-type oracle needs a prime characteristic");
        }
        let mut acc = HMElement::delta(lengths[0], 0);
        let mut out = vec![acc.clone()];
        for &a in &lengths[1..] {
            acc = self.multiply(&acc, &HMElement::delta(a, 0), method)?;
            out.push(acc.clone());
        }
        Ok(out)
    }
}

/// `δ_a · δ_b` with a fresh engine.
pub fn delta_pair(p: u64, a: u64, b: u64, method: HMMethod) -> Result<HMElement> {
    Ok((*HanMonsky::new(p)?.pair(a, b, method)?).clone())
}

/// `δ_{a_1} ⋯ δ_{a_n}` with a fresh engine. Conjecture fallbacks are logged;
/// use [`HanMonsky`] directly to inspect them.
pub fn hm_product(p: u64, lengths: &[u64], method: HMMethod) -> Result<HMElement> {
    HanMonsky::new(p)?.product(lengths, method)
}

/// Monomial basis of `⊗_t k[T_t]/(T_t^{a_t})` split by degree, with the action
/// of `T = Σ T_t` as successor lists.
struct GradedTensor {
    dims: Vec<usize>,
    /// `succ[j][x]`: local indices in degree `j+1` of the monomials `T_t · x`.
    succ: Vec<Vec<Vec<usize>>>,
}

impl GradedTensor {
    fn new(lengths: &[u64]) -> Self {
        let top: usize = lengths.iter().map(|&a| a as usize - 1).sum();
        let total: usize = lengths.iter().map(|&a| a as usize).product();
        let mut dims = vec![0usize; top + 1];
        let mut local = vec![0usize; total];
        let mut degree = vec![0usize; total];
        // Mixed radix, first factor least significant.
        let mut strides = vec![1usize; lengths.len()];
        for t in 1..lengths.len() {
            strides[t] = strides[t - 1] * lengths[t - 1] as usize;
        }
        for g in 0..total {
            let deg: usize = lengths
                .iter()
                .zip(&strides)
                .map(|(&a, &s)| (g / s) % a as usize)
                .sum();
            degree[g] = deg;
            local[g] = dims[deg];
            dims[deg] += 1;
        }
        let mut succ: Vec<Vec<Vec<usize>>> = dims.iter().map(|&d| vec![Vec::new(); d]).collect();
        for g in 0..total {
            let list = &mut succ[degree[g]][local[g]];
            for (&a, &s) in lengths.iter().zip(&strides) {
                if (g / s) % (a as usize) + 1 < a as usize {
                    list.push(local[g + s]);
                }
            }
        }
        GradedTensor { dims, succ }
    }

    fn top(&self) -> usize {
        self.dims.len() - 1
    }

    fn apply(&self, j: usize, v: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.dims.get(j + 1).copied().unwrap_or(0)];
        for (x, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &y in &self.succ[j][x] {
                out[y] = (out[y] + c) % p;
            }
        }
        out
    }
}

fn check_oracle_input(p: u64, lengths: &[u64], limit: usize) -> Result<()> {
    ensure_prime(p)?;
    if lengths.is_empty() || lengths.contains(&0) {
        return invalid("lengths must be a nonempty list of positive integers");
    }
    let size = lengths
        .iter()
        .try_fold(1usize, |acc, &a| acc.checked_mul(a as usize))
        .unwrap_or(usize::MAX);
    if size > limit {
        return Err(Error::SizeGuard { size, limit });
    }
    Ok(())
}

/// Graded Jordan decomposition of `T` on `⊗_t k[T_t]/(T_t^{a_t})` over `F_p`.
pub fn oracle_jordan(p: u64, lengths: &[u64]) -> Result<HMElement> {
    oracle_jordan_with_guard(p, lengths, crate::size_guard_or(JORDAN_DEFAULT_GUARD))
}

/// The module is a representation of a linear quiver, so it decomposes into
/// strings. Walking up the degrees, the images of the live strings are
/// reduced oldest first; a string whose image depends on older ones ends there,
/// and a complement of the images starts new strings.
pub fn oracle_jordan_with_guard(p: u64, lengths: &[u64], limit: usize) -> Result<HMElement> {
    check_oracle_input(p, lengths, limit)?;
    let m = GradedTensor::new(lengths);
    let mut out = HMElement::zero();
    // (birth degree, vector in the current degree), oldest first.
    let mut alive: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for j in 0..=m.top() {
        let mut taken = vec![false; m.dims[j]];
        for &c in &pivots {
            taken[c] = true;
        }
        for (x, _) in taken.iter().enumerate().filter(|(_, t)| !**t) {
            let mut v = vec![0u64; m.dims[j]];
            v[x] = 1;
            alive.push((j, v));
        }
        let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut survivors = Vec::new();
        for (birth, v) in alive.drain(..) {
            let mut w = m.apply(j, &v, p);
            for (c, row) in &echelon {
                let f = w[*c];
                if f != 0 {
                    for (x, &y) in w.iter_mut().zip(row) {
                        let sub = mul_mod(f, y, p);
                        *x = if *x >= sub { *x - sub } else { *x + p - sub };
                    }
                }
            }
            match w.iter().position(|&x| x != 0) {
                None => out.add((j - birth + 1) as u64, birth as u64, 1),
                Some(c) => {
                    let inv = inv_mod(w[c], p);
                    w.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
                    echelon.push((c, w.clone()));
                    survivors.push((birth, w));
                }
            }
        }
        pivots = echelon.iter().map(|(c, _)| *c).collect();
        alive = survivors;
    }
    Ok(out)
}

/// Same decomposition from ranks alone: with `R_k(j) = rank(T^k: M_j -> M_{j+k})`
/// the number of strings `[j, j+c-1]` is
/// `R_{c-1}(j) - R_c(j) - R_c(j-1) + R_{c+1}(j-1)`.
pub fn oracle_jordan_by_ranks(p: u64, lengths: &[u64], limit: usize) -> Result<HMElement> {
    check_oracle_input(p, lengths, limit)?;
    let m = GradedTensor::new(lengths);
    let top = m.top();
    // ranks[j][k] for 0 <= k <= top - j + 1 (the last one is always zero)
    let mut ranks: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for j in 0..=top {
        let mut row = vec![m.dims[j]];
        let mut images: Vec<Vec<u64>> = (0..m.dims[j])
            .map(|x| {
                let mut v = vec![0u64; m.dims[j]];
                v[x] = 1;
                v
            })
            .collect();
        for k in 1..=top - j + 1 {
            images = images.iter().map(|v| m.apply(j + k - 1, v, p)).collect();
            let cols = m.dims.get(j + k).copied().unwrap_or(0);
            let flat: Vec<u64> = images.iter().flatten().copied().collect();
            row.push(rank_dense_mod_p(flat, images.len(), cols, p));
        }
        ranks.push(row);
    }
    let r = |j: i64, k: i64| -> i64 {
        if j < 0 || k < 0 {
            return 0;
        }
        ranks
            .get(j as usize)
            .and_then(|row| row.get(k as usize))
            .map_or(0, |&x| x as i64)
    };
    let mut out = HMElement::zero();
    for j in 0..=top as i64 {
        for c in 1..=top as i64 - j + 1 {
            let n = r(j, c - 1) - r(j, c) - r(j - 1, c) + r(j - 1, c + 1);
            if n < 0 {
                return Err(Error::Internal(format!("negative string count at ({j}, {c})")));
            }
            out.add(c as u64, j as u64, n as u64);
        }
    }
    Ok(out)
}
