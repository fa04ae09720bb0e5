//! Characters of `H^i(X, O_X(a,b))` on the incidence correspondence
//! `X ⊂ P^{n-1} × (P^{n-1})^∨` (dimension `2n-3`, `ω_X = O_X(1-n,1-n)`).
//!
//! Dispatch, in this order:
//!
//! 1. `a, b >= 0`: only `H^0`, equal to `h_a h_b^∨ - h_{a-1} h_{b-1}^∨`.
//! 2. `2-n <= a <= -1` or `2-n <= b <= -1`: everything vanishes.
//! 3. `a >= 0, b <= 1-n`: `h^{i-n+2}(D^d R(e)) · z_1⋯z_n` with `e = a-1`, `d = 1-n-b`.
//! 4. `a, b <= 1-n`: Serre duality, lands in case 1.
//! 5. `a <= 1-n, b >= 0`: swap duality, lands in case 3.

use crate::charring::{complete_h, CharacterPoly};
use crate::divided::{DividedEngine, DividedMethod, DividedQuery};
use crate::error::{invalid, Result};
use crate::exactla::ensure_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceQuery {
    pub i: i64,
    pub p: u64,
    pub a: i64,
    pub b: i64,
    pub n: usize,
}

impl IncidenceQuery {
    pub fn new(i: i64, p: u64, a: i64, b: i64, n: usize) -> Result<Self> {
        if n < 2 {
            return invalid(format!("n must be >= 2, got {n}"));
        }
        let top = 2 * n as i64 - 3;
        if !(0..=top).contains(&i) {
            return invalid(format!("cohomological degree must lie in [0, {top}], got {i}"));
        }
        if p != 0 {
            ensure_prime(p)?;
        }
        Ok(IncidenceQuery { i, p, a, b, n })
    }
}

/// Which branch of the case analysis a bidegree falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncidenceCase {
    Effective,
    VanishingStrip,
    DividedPower,
    Serre,
    Swap,
}

pub fn classify(a: i64, b: i64, n: usize) -> IncidenceCase {
    let floor = 1 - n as i64;
    let in_strip = |x: i64| (floor + 1..=-1).contains(&x);
    if a >= 0 && b >= 0 {
        IncidenceCase::Effective
    } else if in_strip(a) || in_strip(b) {
        IncidenceCase::VanishingStrip
    } else if a >= 0 {
        IncidenceCase::DividedPower
    } else if b <= floor {
        IncidenceCase::Serre
    } else {
        IncidenceCase::Swap
    }
}

pub fn incidence_cohomology(q: IncidenceQuery) -> Result<CharacterPoly> {
    incidence_cohomology_with(&DividedEngine::new(), q)
}

/// Same as [`incidence_cohomology`] but reusing a divided-power cache.
pub fn incidence_cohomology_with(engine: &DividedEngine, q: IncidenceQuery) -> Result<CharacterPoly> {
    let q = IncidenceQuery::new(q.i, q.p, q.a, q.b, q.n)?;
    let n = q.n;
    let zero = CharacterPoly::zero(n).into_laurent();
    let out = match classify(q.a, q.b, n) {
        IncidenceCase::Effective => {
            if q.i != 0 {
                zero
            } else {
                let lead = &complete_h(n, q.a) * &complete_h(n, q.b).dualize();
                let corr = &complete_h(n, q.a - 1) * &complete_h(n, q.b - 1).dualize();
                &lead - &corr
            }
        }
        IncidenceCase::VanishingStrip => zero,
        IncidenceCase::DividedPower => {
            let shifted = q.i - n as i64 + 2;
            if shifted == 0 || shifted == 1 {
                let dq = DividedQuery::new(shifted as u8, q.p, 1 - n as i64 - q.b, q.a - 1, n)?;
                let h = engine.compute(dq, DividedMethod::Recursive)?;
                (&h * &CharacterPoly::product_of_variables(n)).into_laurent()
            } else {
                zero
            }
        }
        IncidenceCase::Serre => {
            let top = 2 * n as i64 - 3;
            let floor = 1 - n as i64;
            incidence_cohomology_with(
                engine,
                IncidenceQuery { i: top - q.i, a: floor - q.a, b: floor - q.b, ..q },
            )?
            .dualize()
        }
        IncidenceCase::Swap => {
            incidence_cohomology_with(engine, IncidenceQuery { a: q.b, b: q.a, ..q })?.dualize()
        }
    };
    Ok(out.into_laurent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn inc(i: i64, p: u64, a: i64, b: i64, n: usize) -> CharacterPoly {
        incidence_cohomology(IncidenceQuery::new(i, p, a, b, n).unwrap()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(IncidenceQuery::new(0, 3, 0, 0, 1).is_err());
        assert!(IncidenceQuery::new(6, 3, 0, 0, 4).is_err());
        assert!(IncidenceQuery::new(-1, 3, 0, 0, 4).is_err());
        assert!(IncidenceQuery::new(5, 3, 0, 0, 4).is_ok());
    }

    #[test]
    fn classification_covers_all_cases() {
        use IncidenceCase::*;
        assert_eq!(classify(2, 3, 4), Effective);
        assert_eq!(classify(-1, 3, 4), VanishingStrip);
        assert_eq!(classify(5, -2, 4), VanishingStrip);
        assert_eq!(classify(5, -7, 4), DividedPower);
        assert_eq!(classify(-3, -5, 4), Serre);
        assert_eq!(classify(-3, 2, 4), Swap);
        // n = 2 has an empty strip
        assert_eq!(classify(-1, 0, 2), Swap);
    }

    #[test]
    fn effective_examples() {
        for n in 2..6 {
            let h = inc(0, 3, 1, 0, n);
            assert_eq!(h, complete_h(n, 1));
            assert_eq!(h.dimension(), BigInt::from(n));
            assert!(inc(1, 3, 1, 0, n).is_zero());
        }
    }

    #[test]
    fn vanishing_strip() {
        for n in 3..6 {
            for b in -8..8 {
                for i in 0..=(2 * n as i64 - 3) {
                    assert!(inc(i, 2, -1, b, n).is_zero());
                }
            }
        }
    }

    #[test]
    fn top_degree_of_canonical_bundle() {
        for n in 2..6 {
            let top = 2 * n as i64 - 3;
            let w = 1 - n as i64;
            assert_eq!(inc(top, 5, w, w, n), CharacterPoly::one(n));
        }
    }
}
