use pkw_core::driver::{
    build_hwv_basis, decompose_kernel, kernel_multiplicity, KernelPlan, ReportStatus, ShardPlan, Side,
};
use pkw_core::linalg::rank;
use pkw_core::plethysm::plethysm_coefficient;
use pkw_core::straighten::apply_psi_symbolic;
use pkw_core::{Error, Partition};

fn lambda(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn small_cases_are_injective() {
    for (a, b) in [(2, 2), (3, 3), (2, 3), (3, 4)] {
        for (l, report) in decompose_kernel(a, b, None, 7, ShardPlan::single()) {
            let report = report.unwrap();
            assert_eq!(report.kernel_mult, 0, "a = {a}, b = {b}, lambda = {l}");
            assert!(report.p <= report.p_prime);
        }
    }
}

#[test]
fn surjective_when_a_exceeds_b() {
    // the kernel of Psi_{a,b} with a > b has multiplicity p - p' >= 0
    for (a, b) in [(3, 2), (4, 2), (4, 3)] {
        for (l, report) in decompose_kernel(a, b, None, 7, ShardPlan::single()) {
            let r = report.unwrap();
            assert_eq!(r.rank, r.p.min(r.p_prime), "a = {a}, b = {b}, lambda = {l}");
        }
    }
    let r = kernel_multiplicity(3, 2, &lambda("2,2,2"), 1, ShardPlan::single()).unwrap();
    assert_eq!((r.p, r.p_prime, r.kernel_mult), (1, 0, 1));
}

#[test]
fn bases_are_certified() {
    let l = lambda("4,2");
    let basis = build_hwv_basis(Side::Target, 3, 2, &l, 5).unwrap();
    assert_eq!(basis.dim as u64, plethysm_coefficient(2, 3, &l).unwrap());
    assert_eq!(basis.eval.rows(), basis.dim);
    assert_eq!(basis.eval.cols(), basis.dim);
    assert_eq!(rank(&basis.eval), basis.dim);
    for l in ["12,4", "10,6", "8,4,4"] {
        let basis = build_hwv_basis(Side::Source, 4, 4, &lambda(l), 1).unwrap();
        assert_eq!(basis.dim, 2);
        assert_eq!(rank(&basis.eval), 2);
    }
}

#[test]
fn empty_spaces_are_skipped() {
    let r = kernel_multiplicity(2, 2, &lambda("3,1"), 1, ShardPlan::single()).unwrap();
    assert_eq!(r.status, ReportStatus::Skipped);
    assert_eq!((r.p, r.rank, r.kernel_mult), (0, 0, 0));
}

#[test]
fn weight_is_checked() {
    assert!(matches!(
        kernel_multiplicity(2, 2, &lambda("3,2"), 1, ShardPlan::single()),
        Err(Error::WeightMismatch { .. })
    ));
}

#[test]
fn replay_is_identical() {
    let a = kernel_multiplicity(3, 3, &lambda("5,2,2"), 11, ShardPlan::single()).unwrap();
    let b = kernel_multiplicity(3, 3, &lambda("5,2,2"), 11, ShardPlan::single()).unwrap();
    assert_eq!(a, b);
    let c = kernel_multiplicity(3, 3, &lambda("5,2,2"), 12, ShardPlan::single()).unwrap();
    assert_ne!(a.points, c.points);
}

#[test]
fn seed_independence() {
    for (a, b) in [
        (2, 2),
        (2, 3),
        (3, 2),
        (3, 3),
        (2, 4),
        (4, 2),
        (3, 4),
        (4, 3),
        (2, 5),
        (2, 6),
        (6, 2),
    ] {
        let runs: Vec<Vec<usize>> = [1u64, 2, 3]
            .iter()
            .map(|&seed| {
                decompose_kernel(a, b, None, seed, ShardPlan::single())
                    .into_iter()
                    .map(|(_, r)| r.unwrap().kernel_mult)
                    .collect()
            })
            .collect();
        assert_eq!(runs[0], runs[1], "a = {a}, b = {b}");
        assert_eq!(runs[0], runs[2], "a = {a}, b = {b}");
    }
}

#[test]
fn sharded_entries_match() {
    let l = lambda("6,4,2");
    let whole = kernel_multiplicity(3, 4, &l, 3, ShardPlan::single()).unwrap();
    for count in [2, 5] {
        let sharded = kernel_multiplicity(3, 4, &l, 3, ShardPlan { depth: 2, count }).unwrap();
        assert_eq!(sharded, whole);
    }
}

#[test]
fn symbolic_images_are_independent_when_injective() {
    // where Psi is injective, the straightened images of a basis are
    // linearly independent as tableau sums
    let kp = KernelPlan::new(3, 3, &lambda("5,2,2"), 1).unwrap();
    for f in &kp.source.tableaux {
        assert!(!apply_psi_symbolic(f).is_zero());
    }
}

#[test]
fn filter_selects_partitions() {
    let only = [lambda("6,3")];
    let reports = decompose_kernel(3, 3, Some(&only), 1, ShardPlan::single());
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].0, only[0]);
}
