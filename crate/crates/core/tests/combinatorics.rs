use pkw_core::partition::enumerate_partitions;
use pkw_core::sample::random_semistandard;
use pkw_core::tableau::{coinciding_column_groups, column_standard_tableau};
use pkw_core::{ContentSpec, Filling, Partition, SymmetrizedTableau};
use proptest::prelude::*;

/// Partitions of `n` with at most `k` parts.
fn count_partitions(n: usize, k: usize) -> u64 {
    let mut t = vec![vec![0u64; k + 1]; n + 1];
    for j in 0..=k {
        t[0][j] = 1;
    }
    for m in 1..=n {
        for j in 1..=k {
            // either fewer than j parts, or subtract one from each of j parts
            t[m][j] = t[m][j - 1] + if m >= j { t[m - j][j] } else { 0 };
        }
    }
    t[n][k]
}

#[test]
fn partition_counts() {
    assert_eq!(enumerate_partitions(25, 5).len() as u64, count_partitions(25, 5));
    for n in 1..=16 {
        for k in 1..=6 {
            assert_eq!(
                enumerate_partitions(n, k).len() as u64,
                count_partitions(n, k),
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn partitions_are_sorted_and_distinct() {
    let ps = enumerate_partitions(12, 4);
    for w in ps.windows(2) {
        assert!(w[0].parts() > w[1].parts());
    }
    for p in &ps {
        assert_eq!(p.weight(), 12);
        assert!(p.rows() <= 4);
    }
}

#[test]
fn random_tableaux_are_semistandard() {
    let shapes: Vec<(Partition, ContentSpec)> = [(3, 3), (4, 3), (3, 4), (4, 4)]
        .iter()
        .flat_map(|&(a, b)| {
            enumerate_partitions(a * b, a)
                .into_iter()
                .map(move |l| (l, ContentSpec::new(a, b)))
        })
        .collect();
    for seed in 0..1000u64 {
        let (shape, content) = &shapes[seed as usize % shapes.len()];
        if let Some(t) = random_semistandard(shape, *content, seed) {
            assert!(t.is_semistandard(), "{t}");
            assert_eq!(t.shape(), shape);
            let mut counts = vec![0; content.symbols + 1];
            for &e in t.entries() {
                counts[e as usize] += 1;
            }
            assert!(counts[1..].iter().all(|&c| c == content.repeats));
        }
    }
}

#[test]
fn column_standard_tableau_shape() {
    let shape: Partition = "3,2".parse().unwrap();
    let t = column_standard_tableau(&shape);
    assert_eq!(t.to_string(), "1 3 5/2 4");
}

#[test]
fn symmetrized_tableau_canonical_form() {
    let a = SymmetrizedTableau::new(&"1 1 3 3/2 2".parse().unwrap());
    let b = SymmetrizedTableau::new(&"2 2 1 1/3 3".parse().unwrap());
    assert_eq!(a, b);
    assert_eq!(a.base().to_string(), "1 1 2 2/3 3");
    assert_eq!(coinciding_column_groups(&a), vec![vec![0, 1], vec![2, 3]]);
}

fn any_partition() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1usize..6, 1..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn partition_round_trip(p in any_partition()) {
        let s = p.to_string();
        prop_assert_eq!(s.parse::<Partition>().unwrap(), p.clone());
        let conj = Partition::new(p.conjugate()).unwrap();
        prop_assert_eq!(conj.conjugate(), p.parts().to_vec());
    }

    #[test]
    fn filling_round_trip(seed in 0u64..10_000, a in 1usize..4, b in 1usize..4) {
        let shapes = enumerate_partitions(a * b, a);
        let shape = &shapes[seed as usize % shapes.len()];
        if let Some(t) = random_semistandard(shape, ContentSpec::new(a, b), seed) {
            let back: Filling = t.to_string().parse().unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
