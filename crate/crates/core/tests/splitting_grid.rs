use flagcoh_core::splitting::{
    forget_equivariance, kernel_weight_dims, splitting_fdr, splitting_fdr_with, splitting_pparts, SplittingMethod,
};

#[test]
fn principal_parts_cases_one_and_three_transform_fdr() {
    for p in [2u64, 3, 5, 7] {
        for k in 0..=6i64 {
            for m in -12..=12i64 {
                let pp = splitting_pparts(p, m, k).unwrap();
                assert_eq!(pp.rank() as i64, k + 1, "p={p} m={m} k={k}");
                assert!(pp.is_swap_symmetric());
                if m >= k + 1 {
                    let f = splitting_fdr(p, m, k + 1).unwrap();
                    let mut expected: Vec<i64> = forget_equivariance(&f).iter().map(|i| -i).collect();
                    expected.sort_unstable();
                    assert_eq!(forget_equivariance(&pp), expected);
                } else if m <= -2 {
                    let f = splitting_fdr(p, k - 1 - m, k + 1).unwrap();
                    let expected: Vec<i64> = forget_equivariance(&f).iter().map(|i| i - k - 1).collect();
                    assert_eq!(forget_equivariance(&pp), expected);
                }
            }
        }
    }
}

#[test]
fn kernel_dims_sum_to_global_sections() {
    // h^0(F(t)) = Σ_i max(0, i + t + 1) over the splitting
    let (p, d, r) = (5, 15, 7);
    let plain = forget_equivariance(&splitting_fdr(p, d, r).unwrap());
    for t in 0..=14 {
        let dims = kernel_weight_dims(p as u64, d, r, t).unwrap();
        let total: usize = dims.values().sum();
        let expected: i64 = plain.iter().map(|i| (i + t + 1).max(0)).sum();
        assert_eq!(total as i64, expected, "t={t}");
        assert!(dims.keys().all(|(w1, w2)| w1 + w2 == d + t));
    }
}

#[test]
fn large_instance_invariants() {
    let (d, r) = (2249i64, 1112i64);
    let s = splitting_fdr_with(5, d, r, SplittingMethod::Interval).unwrap();
    assert_eq!(s.rank() as i64, r);
    assert_eq!(s.degree(), -r * (d - r + 1));
    assert!(s.is_swap_symmetric());
    assert!(s.summands().iter().all(|x| x.u + x.v == d - x.i));
}
