//! Weak and strong Lefschetz properties.
//!
//! For monomial complete intersections the verdicts are read off the
//! Han–Monsky product `δ_{a_1}⋯δ_{a_n}`. For quotients by arbitrary monomial
//! ideals, and for Gorenstein algebras given by a dual socle generator, the
//! multiplication maps by `ℓ = x_1 + ... + x_n` are built and ranked exactly.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::exactla::{ensure_prime, rank_dense_mod_p, reduce_bigint, IntegerMatrix};
use crate::hanmonsky::{expected_hilbert_series, HMElement, HMMethod, HanMonsky};

/// Bound on the number of candidate monomials the rank-based testers enumerate.
pub const LEFSCHETZ_DEFAULT_GUARD: usize = 200_000;

fn check_char(p: u64) -> Result<()> {
    if p != 0 {
        ensure_prime(p)?;
    }
    Ok(())
}

/// `k[T_1,...,T_n]/(T_1^{a_1},...,T_n^{a_n})`, exponents kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialCI {
    exponents: Vec<u64>,
}

impl MonomialCI {
    pub fn new(exponents: &[u64]) -> Result<Self> {
        if exponents.is_empty() {
            return invalid("a complete intersection needs at least one exponent");
        }
        if exponents.contains(&0) {
            return invalid("exponents must be >= 1");
        }
        let mut exponents = exponents.to_vec();
        exponents.sort_unstable();
        Ok(MonomialCI { exponents })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// Socle degree `Σ a_t - n`.
    pub fn socle_degree(&self) -> u64 {
        self.exponents.iter().map(|a| a - 1).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WlpMethod {
    /// Every summand `δ_c(-j)` of the conjectural product has `2(j+c-1) >= s`.
    #[default]
    Summand,
    /// The number of Jordan blocks of the oracle product equals the Sperner number.
    Sperner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SlpMethod {
    /// Every summand `δ_c(-j)` has `2j + c - 1 = s`.
    #[default]
    Summand,
    /// Every partial product agrees with its characteristic-zero value.
    PartialProducts,
}

/// Largest value of the Hilbert function of the complete intersection.
pub fn sperner_number(exponents: &[u64]) -> u64 {
    let s: u64 = exponents.iter().map(|a| a.saturating_sub(1)).sum();
    expected_hilbert_series(exponents)
        .get((s / 2) as usize)
        .copied()
        .unwrap_or(0)
}

pub fn has_wlp_ci(p: u64, exponents: &[u64], method: WlpMethod) -> Result<bool> {
    check_char(p)?;
    let ci = MonomialCI::new(exponents)?;
    if p == 0 || ci.n() <= 2 {
        return Ok(true);
    }
    has_wlp_ci_with(&HanMonsky::new(p)?, &ci, method)
}

/// [`has_wlp_ci`] reusing the pair products cached in `engine`.
pub fn has_wlp_ci_with(engine: &HanMonsky, ci: &MonomialCI, method: WlpMethod) -> Result<bool> {
    if engine.p() == 0 || ci.n() <= 2 {
        return Ok(true);
    }
    let s = ci.socle_degree();
    Ok(match method {
        WlpMethod::Summand => {
            let prod = engine.product(ci.exponents(), HMMethod::Conjecture)?;
            let ok = prod.iter().all(|(c, j, _)| 2 * (j + c - 1) >= s);
            ok
        }
        WlpMethod::Sperner => {
            let prod = engine.product(ci.exponents(), HMMethod::Oracle)?;
            prod.part_count() == sperner_number(ci.exponents())
        }
    })
}

pub fn has_slp_ci(p: u64, exponents: &[u64], method: SlpMethod) -> Result<bool> {
    check_char(p)?;
    let ci = MonomialCI::new(exponents)?;
    if p == 0 {
        return Ok(true);
    }
    has_slp_ci_with(&HanMonsky::new(p)?, &ci, method)
}

pub fn has_slp_ci_with(engine: &HanMonsky, ci: &MonomialCI, method: SlpMethod) -> Result<bool> {
    if engine.p() == 0 {
        return Ok(true);
    }
    let s = ci.socle_degree();
    Ok(match method {
        SlpMethod::Summand => {
            let prod = engine.product(ci.exponents(), HMMethod::Conjecture)?;
            let ok = prod.iter().all(|(c, j, _)| 2 * j + c - 1 == s);
            ok
        }
        SlpMethod::PartialProducts => {
            let ours = engine.partial_products(ci.exponents(), HMMethod::Conjecture)?;
            let zero = HanMonsky::new(0)?.partial_products(ci.exponents(), HMMethod::Conjecture)?;
            ours == zero
        }
    })
}

/// All `2 <= a_1 <= ... <= a_n` with `Σ a_t - n = s` failing WLP, in
/// lexicographic order.
pub fn monomial_cis_without_wlp(p: u64, n: usize, s: u64, method: WlpMethod) -> Result<Vec<Vec<u64>>> {
    check_char(p)?;
    if n == 0 {
        return invalid("need at least one variable");
    }
    if p == 0 || n <= 2 {
        return Ok(Vec::new());
    }
    let engine = HanMonsky::new(p)?;
    let mut out = Vec::new();
    for tuple in nondecreasing_tuples(n, s) {
        let ci = MonomialCI::new(&tuple)?;
        if !has_wlp_ci_with(&engine, &ci, method)? {
            out.push(tuple);
        }
    }
    Ok(out)
}

/// Nondecreasing `n`-tuples with entries `>= 2` and `Σ (a_t - 1) = s`, in
/// lexicographic order.
fn nondecreasing_tuples(n: usize, s: u64) -> Vec<Vec<u64>> {
    fn go(n: usize, remaining: u64, min: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            if remaining == 0 {
                out.push(cur.iter().map(|x| x + 1).collect());
            }
            return;
        }
        let mut part = min;
        while part * n as u64 <= remaining {
            cur.push(part);
            go(n - 1, remaining - part, part, cur, out);
            cur.pop();
            part += 1;
        }
    }
    let mut out = Vec::new();
    go(n, s, 1, &mut Vec::new(), &mut out);
    out
}

/// A monomial ideal in `k[x_1,...,x_n]` with an Artinian quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Vec<u64>>,
}

fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    /// Minimalizes the generators and checks that every variable has a pure
    /// power in the ideal.
    pub fn new(n: usize, generators: Vec<Vec<u64>>) -> Result<Self> {
        if n == 0 {
            return invalid("need at least one variable");
        }
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::VariableMismatch { left: n, right: g.len() });
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let minimal: Vec<Vec<u64>> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        for var in 0..n {
            let has_pure_power = minimal
                .iter()
                .any(|g| g.iter().enumerate().all(|(t, &e)| t == var || e == 0));
            if !has_pure_power {
                return Err(Error::NotArtinian(var + 1));
            }
        }
        Ok(MonomialIdeal { n, generators: minimal })
    }

    /// `x_1^{a_1}, ..., x_n^{a_n}`.
    pub fn pure_powers(exponents: &[u64]) -> Result<Self> {
        let n = exponents.len();
        let gens = exponents
            .iter()
            .enumerate()
            .map(|(t, &a)| {
                let mut g = vec![0; n];
                g[t] = a;
                g
            })
            .collect();
        Self::new(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn contains(&self, m: &[u64]) -> bool {
        self.generators.iter().any(|g| divides(g, m))
    }

    /// Standard monomials grouped by degree.
    fn standard_monomials(&self, limit: usize) -> Result<Vec<Vec<Vec<u64>>>> {
        let bounds: Vec<u64> = (0..self.n)
            .map(|var| {
                self.generators
                    .iter()
                    .filter(|g| g.iter().enumerate().all(|(t, &e)| t == var || e == 0))
                    .map(|g| g[var])
                    .min()
                    .expect("Artinian")
            })
            .collect();
        let size = bounds
            .iter()
            .try_fold(1usize, |acc, &b| acc.checked_mul(b.max(1) as usize))
            .unwrap_or(usize::MAX);
        if size > limit {
            return Err(Error::SizeGuard { size, limit });
        }
        let mut by_degree: Vec<Vec<Vec<u64>>> = Vec::new();
        if bounds.contains(&0) {
            return Ok(by_degree);
        }
        let mut cur = vec![0u64; self.n];
        loop {
            if !self.contains(&cur) {
                let d: u64 = cur.iter().sum();
                if by_degree.len() <= d as usize {
                    by_degree.resize(d as usize + 1, Vec::new());
                }
                by_degree[d as usize].push(cur.clone());
            }
            let mut t = 0;
            loop {
                if t == self.n {
                    return Ok(by_degree);
                }
                cur[t] += 1;
                if cur[t] < bounds[t] {
                    break;
                }
                cur[t] = 0;
                t += 1;
            }
        }
    }
}

/// Rank of a matrix given as rows of integers, over `F_p` or over `Q` (`p = 0`).
fn rank_of(rows: &[Vec<BigInt>], cols: usize, p: u64) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    if p == 0 {
        let mut m = IntegerMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, c, x.clone());
                }
            }
        }
        m.rank()
    } else {
        let flat = rows.iter().flatten().map(|x| reduce_bigint(x, p)).collect();
        rank_dense_mod_p(flat, rows.len(), cols, p)
    }
}

/// WLP of `k[x]/I` with respect to `x_1 + ... + x_n`; `p = 0` means over `Q`.
pub fn has_wlp_monomial(p: u64, ideal: &MonomialIdeal) -> Result<bool> {
    check_char(p)?;
    let basis = ideal.standard_monomials(crate::size_guard_or(LEFSCHETZ_DEFAULT_GUARD))?;
    for i in 0..basis.len().saturating_sub(1) {
        let (src, dst) = (&basis[i], &basis[i + 1]);
        let index: HashMap<&[u64], usize> = dst.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
        let rows: Vec<Vec<BigInt>> = src
            .iter()
            .map(|m| {
                let mut row = vec![BigInt::zero(); dst.len()];
                for t in 0..ideal.n {
                    let mut next = m.clone();
                    next[t] += 1;
                    if let Some(&k) = index.get(next.as_slice()) {
                        row[k] = BigInt::one();
                    }
                }
                row
            })
            .collect();
        if rank_of(&rows, dst.len(), p) < src.len().min(dst.len()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A homogeneous form `F`, read as a dual socle generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGenerator {
    n: usize,
    degree: u64,
    terms: BTreeMap<Vec<u64>, BigInt>,
}

impl DualGenerator {
    pub fn new(n: usize, terms: Vec<(BigInt, Vec<u64>)>) -> Result<Self> {
        if n == 0 {
            return invalid("need at least one variable");
        }
        let mut merged: BTreeMap<Vec<u64>, BigInt> = BTreeMap::new();
        let mut degree: Option<u64> = None;
        for (c, e) in terms {
            if e.len() != n {
                return Err(Error::VariableMismatch { left: n, right: e.len() });
            }
            let d: u64 = e.iter().sum();
            match degree {
                Some(d0) if d0 != d => return Err(Error::Inhomogeneous(d0 as i64, d as i64)),
                _ => degree = Some(d),
            }
            *merged.entry(e).or_default() += c;
        }
        merged.retain(|_, c| !c.is_zero());
        match degree {
            Some(degree) if !merged.is_empty() => Ok(DualGenerator { n, degree, terms: merged }),
            _ => invalid("the dual generator must be a nonzero form"),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }
}

/// How polynomials act on the dual generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Apolarity {
    /// `x^α ∘ x^β = x^{β-α}`.
    #[default]
    Contraction,
    /// `x^α ∘ x^β = ∂^α x^β`, with falling-factorial coefficients.
    Differentiation,
}

fn act(apolarity: Apolarity, alpha: &[u64], beta: &[u64]) -> Option<(Vec<u64>, BigInt)> {
    if !divides(alpha, beta) {
        return None;
    }
    let rest: Vec<u64> = beta.iter().zip(alpha).map(|(b, a)| b - a).collect();
    let coeff = match apolarity {
        Apolarity::Contraction => BigInt::one(),
        Apolarity::Differentiation => alpha
            .iter()
            .zip(beta)
            .flat_map(|(&a, &b)| (b - a + 1..=b).map(BigInt::from))
            .product(),
    };
    Some((rest, coeff))
}

fn monomials_of_degree(n: usize, d: u64) -> Vec<Vec<u64>> {
    fn go(n: usize, d: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=d).rev() {
            cur.push(x);
            go(n, d - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn has_wlp_gorenstein(p: u64, f: &DualGenerator) -> Result<bool> {
    has_wlp_gorenstein_with(p, f, Apolarity::Contraction)
}

/// WLP of `R/Ann(F)` for `ℓ = x_1 + ... + x_n`. `A_i` is identified with
/// `R_i ∘ F`, and the image of `×ℓ: A_i -> A_{i+1}` with `(ℓ R_i) ∘ F`.
pub fn has_wlp_gorenstein_with(p: u64, f: &DualGenerator, apolarity: Apolarity) -> Result<bool> {
    check_char(p)?;
    if p != 0 && f.terms.values().all(|c| reduce_bigint(c, p) == 0) {
        return invalid(format!("the dual generator vanishes modulo {p}"));
    }
    let (n, s) = (f.n, f.degree);
    let limit = crate::size_guard_or(LEFSCHETZ_DEFAULT_GUARD);
    // (m ∘ F) as a row over the monomials of degree s - deg m
    let apply = |ms: &[Vec<u64>], target: &HashMap<Vec<u64>, usize>| -> Vec<Vec<BigInt>> {
        ms.iter()
            .map(|m| {
                let mut row = vec![BigInt::zero(); target.len()];
                for (beta, c) in &f.terms {
                    if let Some((rest, k)) = act(apolarity, m, beta) {
                        row[target[&rest]] += c * k;
                    }
                }
                row
            })
            .collect()
    };
    let mut dims = Vec::with_capacity(s as usize + 1);
    let mut ell_ranks = Vec::with_capacity(s as usize);
    for i in 0..=s {
        let source = monomials_of_degree(n, i);
        let target_list = monomials_of_degree(n, s - i);
        if source.len() > limit || target_list.len() > limit {
            return Err(Error::SizeGuard { size: source.len().max(target_list.len()), limit });
        }
        let target: HashMap<Vec<u64>, usize> = target_list.into_iter().enumerate().map(|(k, m)| (m, k)).collect();
        dims.push(rank_of(&apply(&source, &target), target.len(), p));
        if i < s {
            let lower = monomials_of_degree(n, s - i - 1);
            let lower_index: HashMap<Vec<u64>, usize> = lower.into_iter().enumerate().map(|(k, m)| (m, k)).collect();
            let rows: Vec<Vec<BigInt>> = source
                .iter()
                .map(|m| {
                    let shifted: Vec<Vec<u64>> = (0..n)
                        .map(|t| {
                            let mut x = m.clone();
                            x[t] += 1;
                            x
                        })
                        .collect();
                    let parts = apply(&shifted, &lower_index);
                    parts.into_iter().fold(vec![BigInt::zero(); lower_index.len()], |mut acc, row| {
                        acc.iter_mut().zip(row).for_each(|(a, b)| *a += b);
                        acc
                    })
                })
                .collect();
            ell_ranks.push(rank_of(&rows, lower_index.len(), p));
        }
    }
    Ok(ell_ranks
        .iter()
        .enumerate()
        .all(|(i, &r)| r == dims[i].min(dims[i + 1])))
}

/// Jordan type of the complete intersection for `ℓ = T_1 + ... + T_n`.
pub fn jordan_type_ci(p: u64, exponents: &[u64]) -> Result<Vec<u64>> {
    check_char(p)?;
    let ci = MonomialCI::new(exponents)?;
    let prod: HMElement = HanMonsky::new(p)?.product(ci.exponents(), HMMethod::Conjecture)?;
    Ok(crate::hanmonsky::jordan_type(&prod))
}
