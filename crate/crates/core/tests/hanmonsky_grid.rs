use flagcoh_core::hanmonsky::{
    expected_hilbert_series, hilbert_series, is_gorenstein_symmetric, oracle_jordan, HMMethod, HanMonsky,
};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

#[test]
fn pairs_conjecture_matches_oracle() {
    for p in PRIMES {
        let engine = HanMonsky::new(p).unwrap();
        let mut mismatches = Vec::new();
        for a in 1..=40u64 {
            for b in a..=40 {
                let conj = engine.pair(a, b, HMMethod::Conjecture).unwrap();
                let oracle = engine.pair(a, b, HMMethod::Oracle).unwrap();
                if conj != oracle {
                    mismatches.push((a, b));
                }
                assert_eq!(hilbert_series(&conj), expected_hilbert_series(&[a, b]));
                assert!(is_gorenstein_symmetric(&conj, (a + b - 2) as i64));
            }
        }
        assert!(mismatches.is_empty(), "p={p}: {mismatches:?}");
        assert!(engine.fallbacks().is_empty(), "p={p}: {:?}", engine.fallbacks());
    }
}

#[test]
fn triples_conjecture_matches_oracle() {
    for p in PRIMES {
        let engine = HanMonsky::new(p).unwrap();
        for a in 1..=12u64 {
            for b in a..=12 {
                for c in b..=12 {
                    let lengths = [a, b, c];
                    let conj = engine.product(&lengths, HMMethod::Conjecture).unwrap();
                    let whole = oracle_jordan(p, &lengths).unwrap();
                    assert_eq!(conj, whole, "p={p} {lengths:?}");
                    assert_eq!(hilbert_series(&conj), expected_hilbert_series(&lengths));
                    assert!(is_gorenstein_symmetric(&conj, (a + b + c - 3) as i64));
                }
            }
        }
        assert!(engine.fallbacks().is_empty());
    }
}

#[test]
fn products_are_commutative() {
    for p in PRIMES {
        let engine = HanMonsky::new(p).unwrap();
        let base = engine.product(&[3, 8, 14, 31], HMMethod::Conjecture).unwrap();
        for perm in [[31, 14, 8, 3], [8, 3, 31, 14], [14, 31, 3, 8]] {
            assert_eq!(engine.product(&perm, HMMethod::Conjecture).unwrap(), base);
        }
    }
}

#[test]
fn large_primes_give_characteristic_zero() {
    let zero = HanMonsky::new(0).unwrap();
    for lengths in [vec![3u64, 4, 6], vec![2, 5, 5], vec![4, 4, 4, 2]] {
        let s: u64 = lengths.iter().map(|a| a - 1).sum();
        let expected = zero.product(&lengths, HMMethod::Conjecture).unwrap();
        for p in [11u64, 13, 17] {
            if p > s {
                let engine = HanMonsky::new(p).unwrap();
                assert_eq!(engine.product(&lengths, HMMethod::Oracle).unwrap(), expected);
            }
        }
    }
}
