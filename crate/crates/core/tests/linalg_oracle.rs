use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pkw_core::linalg::{determinant, kernel_dimension, rank, rank_mod_p, IntMatrix, RowBasis};
use pkw_core::modular::primes;
use proptest::prelude::*;

/// Rank over Q by plain Gaussian elimination on fractions.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

fn to_matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
        cols,
    )
    .unwrap()
}

/// Matrices of bounded rank: products of random `r x k` and `k x c`
/// factors, so low ranks actually occur.
fn low_rank() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1usize..12, 1usize..12, 0usize..6).prop_flat_map(|(r, c, k)| {
        (
            proptest::collection::vec(proptest::collection::vec(-30i64..30, k), r),
            proptest::collection::vec(proptest::collection::vec(-30i64..30, c), k),
        )
            .prop_map(move |(left, right)| {
                let rows = (0..r)
                    .map(|i| (0..c).map(|j| (0..k).map(|t| left[i][t] * right[t][j]).sum()).collect())
                    .collect();
                (rows, c)
            })
    })
}

fn dense() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1usize..50, 1usize..50).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-1_000_000i64..=1_000_000, c), r).prop_map(move |m| (m, c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_rationals((rows, cols) in low_rank()) {
        let m = to_matrix(&rows, cols);
        let r = rank(&m);
        prop_assert_eq!(r, rational_rank(&rows));
        prop_assert_eq!(rank(&m.transpose()), r);
        prop_assert_eq!(kernel_dimension(&m), cols - r);
        prop_assert!(rank_mod_p(&m, primes(1)[0]) <= r);
    }

    #[test]
    fn dense_rank_matches_rationals((rows, cols) in dense()) {
        prop_assert_eq!(rank(&to_matrix(&rows, cols)), rational_rank(&rows));
    }

    #[test]
    fn rank_invariant_under_row_operations((rows, cols) in low_rank(), s in 1i64..20) {
        let m = to_matrix(&rows, cols);
        let r = rank(&m);
        let mut scaled = rows.clone();
        scaled.reverse();
        if let Some(first) = scaled.first_mut() {
            for x in first.iter_mut() {
                *x *= -s;
            }
        }
        if scaled.len() > 1 {
            let add = scaled[1].clone();
            for (x, y) in scaled[0].iter_mut().zip(add) {
                *x += 3 * y;
            }
        }
        prop_assert_eq!(rank(&to_matrix(&scaled, cols)), r);
    }

    #[test]
    fn row_basis_tracks_rank((rows, cols) in low_rank()) {
        let mut basis = RowBasis::new(cols);
        let mut prefix = Vec::new();
        for row in &rows {
            prefix.push(row.clone());
            let before = basis.rank();
            let accepted = basis.try_add_row(&row.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(basis.rank(), rational_rank(&prefix));
            prop_assert_eq!(accepted, basis.rank() == before + 1);
        }
    }
}

#[test]
fn determinant_examples() {
    let m = IntMatrix::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
    assert_eq!(determinant(&m), BigInt::from(6));
    let singular = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
    assert!(determinant(&singular).is_zero());
    let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    assert_eq!(determinant(&swap), -BigInt::one());
}

#[test]
fn row_basis_rejects_wrong_width() {
    let mut basis = RowBasis::new(3);
    assert!(basis.try_add_row(&[BigInt::one()]).is_err());
}
