use num_bigint::BigInt;
use num_traits::Zero;
use pkw_core::eval::{
    build_minor_cache, evaluate_psi_image, evaluate_tableau, CellOrder, LinearForm, MinorCache, Point, PsiEvaluator,
    PsiOptions, ShardSpec,
};
use pkw_core::partition::enumerate_partitions;
use pkw_core::sample::random_semistandard_with;
use pkw_core::straighten::{apply_psi_symbolic, TableauSum};
use pkw_core::tableau::coinciding_column_groups;
use pkw_core::{ContentSpec, Filling, Partition, SymmetrizedTableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn filling(s: &str) -> Filling {
    s.parse().unwrap()
}

fn lens(shape: &Partition) -> Vec<usize> {
    let mut l = shape.conjugate();
    l.dedup();
    l
}

/// Point in the target space `Sym^b Sym^a`: `b` forms raised to `a`.
fn target_cache(f: &SymmetrizedTableau, rng: &mut ChaCha8Rng) -> MinorCache {
    let c = f.content();
    let shape = f.shape();
    let v = Point::random(shape.rows(), c.repeats, c.symbols, rng);
    build_minor_cache(&v, &lens(shape)).unwrap()
}

fn eval_sum(s: &TableauSum, cache: &MinorCache) -> BigInt {
    s.terms().map(|(t, c)| c * evaluate_tableau(t, cache)).sum()
}

fn psi(f: &SymmetrizedTableau, cache: &MinorCache, options: PsiOptions) -> BigInt {
    PsiEvaluator::new(f, cache, options)
        .unwrap()
        .evaluate(ShardSpec::whole())
}

/// Random `(f, v')` with content `a x b` and `|lambda| = a * b`.
fn random_instance(a: usize, b: usize, rng: &mut ChaCha8Rng) -> (SymmetrizedTableau, MinorCache) {
    let shapes = enumerate_partitions(a * b, a);
    loop {
        let shape = &shapes[rng.gen_range(0..shapes.len())];
        if let Some(t) = random_semistandard_with(shape, ContentSpec::new(a, b), rng) {
            let f = SymmetrizedTableau::new(&t);
            let cache = target_cache(&f, rng);
            return (f, cache);
        }
    }
}

const SMALL_PAIRS: [(usize, usize); 9] = [(1, 3), (2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (2, 5), (3, 4)];

#[test]
fn worked_example_numeric() {
    let f = SymmetrizedTableau::new(&filling("1 1 3 3/2 2"));
    let target = filling("1 1 1 2/2 2");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let cache = target_cache(&f, &mut rng);
        let lhs = evaluate_psi_image(&f, &cache, ShardSpec::whole()).unwrap();
        assert_eq!(lhs, BigInt::from(-4) * evaluate_tableau(&target, &cache));
    }
}

#[test]
fn two_by_two_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // AA/BB maps to -2 (1 1/2 2)
    let f = SymmetrizedTableau::new(&filling("1 1/2 2"));
    let image = apply_psi_symbolic(&f);
    assert_eq!(image.len(), 1);
    assert_eq!(image.coefficient(&filling("1 1/2 2")), BigInt::from(-2));
    for _ in 0..5 {
        let cache = target_cache(&f, &mut rng);
        assert_eq!(psi(&f, &cache, PsiOptions::default()), eval_sum(&image, &cache));
    }
    // AB/AB vanishes
    let g = SymmetrizedTableau::new(&filling("1 2/1 2"));
    assert!(apply_psi_symbolic(&g).is_zero());
    for _ in 0..5 {
        let cache = target_cache(&g, &mut rng);
        assert!(psi(&g, &cache, PsiOptions::default()).is_zero());
    }
}

#[test]
fn single_row_maps_to_single_row() {
    // a = 1: each of the b! placements of 1..b gives the same row
    let f = SymmetrizedTableau::new(&filling("1 1 1"));
    let image = apply_psi_symbolic(&f);
    assert_eq!(image.len(), 1);
    assert_eq!(image.coefficient(&filling("1 2 3")), BigInt::from(6));
}

#[test]
fn single_row_at_a_coordinate_form() {
    let v = Point::new(vec![LinearForm::new(vec![1, 0])], 3).unwrap();
    let cache = build_minor_cache(&v, &[1]).unwrap();
    for t in ["1 1 1 2 2 2", "1 1 2 2 3 3"] {
        assert_eq!(evaluate_tableau(&filling(t), &cache), BigInt::from(1));
    }
}

#[test]
fn numeric_matches_symbolic() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..60 {
        let (a, b) = SMALL_PAIRS[i % SMALL_PAIRS.len()];
        let (f, cache) = random_instance(a, b, &mut rng);
        let symbolic = eval_sum(&apply_psi_symbolic(&f), &cache);
        assert_eq!(
            psi(&f, &cache, PsiOptions::default()),
            symbolic,
            "f = {f}, shape {}",
            f.shape()
        );
    }
}

#[test]
fn pruning_divides_out_column_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen_groups = 0;
    for i in 0..40 {
        let (a, b) = SMALL_PAIRS[i % SMALL_PAIRS.len()];
        let (f, cache) = random_instance(a, b, &mut rng);
        let pruned = PsiEvaluator::new(&f, &cache, PsiOptions::default()).unwrap();
        let full = PsiEvaluator::new(
            &f,
            &cache,
            PsiOptions {
                symmetry_pruning: false,
                ..PsiOptions::default()
            },
        )
        .unwrap();
        let factor: u64 = coinciding_column_groups(&f)
            .iter()
            .map(|g| (1..=g.len() as u64).product::<u64>())
            .product();
        if factor > 1 {
            seen_groups += 1;
        }
        assert_eq!(*pruned.collapse_factor(), factor.into());
        let tree = pruned.tree_sum(ShardSpec::whole());
        assert_eq!(full.tree_sum(ShardSpec::whole()), tree * BigInt::from(factor));
    }
    assert!(seen_groups > 0);
}

#[test]
fn cell_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..30 {
        let (a, b) = SMALL_PAIRS[i % SMALL_PAIRS.len()];
        let (f, cache) = random_instance(a, b, &mut rng);
        let fixed = PsiOptions {
            order: CellOrder::Fixed,
            ..PsiOptions::default()
        };
        assert_eq!(psi(&f, &cache, fixed), psi(&f, &cache, PsiOptions::default()));
    }
}

#[test]
fn shards_sum_to_whole() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..12 {
        let (a, b) = SMALL_PAIRS[i % SMALL_PAIRS.len()];
        let (f, cache) = random_instance(a, b, &mut rng);
        let ev = PsiEvaluator::new(&f, &cache, PsiOptions::default()).unwrap();
        let whole = ev.evaluate(ShardSpec::whole());
        for n in [2u64, 3, 5] {
            for d in [1usize, 2] {
                let mut total = BigInt::zero();
                for c in 0..n {
                    total += ev.evaluate(ShardSpec::new(d, n, c).unwrap());
                }
                assert_eq!(total, whole, "N = {n}, D = {d}, f = {f}");
            }
        }
    }
}

#[test]
fn deep_shards_are_clamped() {
    let f = SymmetrizedTableau::new(&filling("1 1 3 3/2 2"));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cache = target_cache(&f, &mut rng);
    let ev = PsiEvaluator::new(&f, &cache, PsiOptions::default()).unwrap();
    let total: BigInt = (0..4).map(|c| ev.evaluate(ShardSpec::new(50, 4, c).unwrap())).sum();
    assert_eq!(total, ev.evaluate(ShardSpec::whole()));
}
