use flagcoh_core::divided::{euler_characteristic, DividedEngine, DividedMethod, DividedQuery};

fn q(i: u8, p: u64, d: i64, e: i64, n: usize) -> DividedQuery {
    DividedQuery::new(i, p, d, e, n).unwrap()
}

#[test]
fn recursive_matches_nim_in_characteristic_two() {
    let engine = DividedEngine::new();
    for n in 2..=5 {
        for d in 0..=10 {
            for e in -1..=12 {
                for i in 0..=1 {
                    let rec = engine.compute(q(i, 2, d, e, n), DividedMethod::Recursive).unwrap();
                    let nim = engine.compute(q(i, 2, d, e, n), DividedMethod::Nim).unwrap();
                    assert_eq!(rec, nim, "i={i} d={d} e={e} n={n}");
                }
            }
        }
    }
}

#[test]
fn recursive_matches_oracle() {
    for p in [2u64, 3, 5] {
        let engine = DividedEngine::new();
        for n in 2..=3 {
            for d in 0..=12 {
                for e in -1..=12 {
                    for i in 0..=1 {
                        let rec = engine.compute(q(i, p, d, e, n), DividedMethod::Recursive).unwrap();
                        let oracle = engine.compute(q(i, p, d, e, n), DividedMethod::Oracle).unwrap();
                        assert_eq!(rec, oracle, "i={i} p={p} d={d} e={e} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn duality_and_euler_characteristic() {
    for p in [2u64, 3, 5] {
        let engine = DividedEngine::new();
        for n in 2..=5 {
            for d in 0..=12 {
                for e in -1..=12 {
                    let h0 = engine.compute(q(0, p, d, e, n), DividedMethod::Recursive).unwrap();
                    let h1 = engine.compute(q(1, p, d, e, n), DividedMethod::Recursive).unwrap();
                    assert_eq!(&h0 - &h1, euler_characteristic(n, d, e), "p={p} d={d} e={e} n={n}");
                    if d >= 1 {
                        let dual = engine.compute(q(1, p, e + 1, d - 1, n), DividedMethod::Recursive).unwrap();
                        assert_eq!(h0, dual, "p={p} d={d} e={e} n={n}");
                    }
                }
            }
        }
    }
}
