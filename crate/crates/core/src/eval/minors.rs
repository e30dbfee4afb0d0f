use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::Point;
use crate::linalg::{determinant, IntMatrix};
use crate::modular;
use crate::Error;

/// Top-left minors of the forms of a point: for a set of form indices of
/// size `k`, the determinant of the `k x k` matrix whose rows are the first
/// `k` coordinates of the selected forms, in increasing index order.
#[derive(Debug, Clone)]
pub struct MinorCache {
    forms: usize,
    dim: usize,
    /// indexed by the bitmask of the selected forms
    dets: Vec<Option<BigInt>>,
}

/// Precomputes every minor a column of one of `column_lengths` can need.
pub fn build_minor_cache(point: &Point, column_lengths: &[usize]) -> Result<MinorCache, Error> {
    let n = point.dim();
    let m = point.forms().len();
    if m > 24 {
        return Err(Error::InvalidPoint("too many forms for the minor cache".into()));
    }
    if let Some(&k) = column_lengths.iter().find(|&&k| k > n) {
        return Err(Error::ColumnTooLong { len: k, vars: n });
    }
    let mut dets = vec![None; 1 << m];
    for mask in 1usize..(1 << m) {
        let k = mask.count_ones() as usize;
        if !column_lengths.contains(&k) {
            continue;
        }
        let rows: Vec<Vec<BigInt>> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| {
                point.forms()[i].coords()[..k]
                    .iter()
                    .map(|&x| BigInt::from(x))
                    .collect()
            })
            .collect();
        let matrix = IntMatrix::from_rows(rows, k).expect("square minor");
        dets[mask] = Some(determinant(&matrix));
    }
    Ok(MinorCache { forms: m, dim: n, dets })
}

impl MinorCache {
    pub fn forms(&self) -> usize {
        self.forms
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True if minors of size `k` were precomputed.
    pub fn has_length(&self, k: usize) -> bool {
        self.dets
            .iter()
            .enumerate()
            .any(|(mask, d)| d.is_some() && mask.count_ones() as usize == k)
    }

    /// Minor for a set of forms given as a bitmask, if it was precomputed.
    pub fn by_mask(&self, mask: usize) -> Option<&BigInt> {
        self.dets.get(mask).and_then(|d| d.as_ref())
    }

    /// Minor for a sorted tuple of distinct form indices.
    pub fn get_sorted(&self, tuple: &[usize]) -> Option<&BigInt> {
        let mask = tuple.iter().fold(0usize, |m, &i| m | 1 << i);
        self.by_mask(mask)
    }

    /// Determinant with rows in the given order: zero for a repeated index,
    /// otherwise the sorted minor times the sign of the sorting permutation.
    ///
    /// Panics if the minor of that size was not precomputed.
    pub fn get(&self, indices: &[usize]) -> BigInt {
        match mask_and_parity(indices) {
            None => BigInt::zero(),
            Some((mask, odd)) => {
                let d = self.by_mask(mask).expect("minor not in cache").clone();
                if odd {
                    -d
                } else {
                    d
                }
            }
        }
    }

    /// Largest absolute value among the cached minors of size `k`.
    pub fn max_abs(&self, k: usize) -> BigUint {
        self.dets
            .iter()
            .enumerate()
            .filter(|(mask, d)| mask.count_ones() as usize == k && d.is_some())
            .map(|(_, d)| d.as_ref().unwrap().abs().to_biguint().unwrap())
            .max()
            .unwrap_or_default()
    }

    /// Residues of every cached minor modulo each prime, laid out as
    /// `[mask * primes.len() + i]`, plus an exact-zero flag per mask.
    pub(crate) fn residue_table(&self, primes: &[u64]) -> (Vec<u64>, Vec<bool>) {
        let k = primes.len();
        let mut table = vec![0u64; self.dets.len() * k];
        let mut zero = vec![true; self.dets.len()];
        for (mask, d) in self.dets.iter().enumerate() {
            if let Some(d) = d {
                zero[mask] = d.is_zero();
                for (i, &p) in primes.iter().enumerate() {
                    table[mask * k + i] = modular::residue(d, p);
                }
            }
        }
        (table, zero)
    }
}

/// Bitmask of the indices and parity of their sorting permutation, or
/// `None` if an index repeats.
pub(crate) fn mask_and_parity(indices: &[usize]) -> Option<(usize, bool)> {
    let mut mask = 0usize;
    let mut odd = false;
    for (i, &x) in indices.iter().enumerate() {
        if mask >> x & 1 == 1 {
            return None;
        }
        mask |= 1 << x;
        odd ^= indices[..i].iter().filter(|&&y| y > x).count() % 2 == 1;
    }
    Some((mask, odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::LinearForm;

    fn point(forms: &[&[i64]], power: usize) -> Point {
        Point::new(forms.iter().map(|f| LinearForm::new(f.to_vec())).collect(), power).unwrap()
    }

    #[test]
    fn one_by_one_minors_are_first_coordinates() {
        let v = point(&[&[3, 1], &[-2, 5], &[0, 7]], 2);
        let cache = build_minor_cache(&v, &[1]).unwrap();
        assert_eq!(cache.get(&[0]), BigInt::from(3));
        assert_eq!(cache.get(&[1]), BigInt::from(-2));
        assert_eq!(cache.get(&[2]), BigInt::from(0));
    }

    #[test]
    fn repeated_forms_give_zero() {
        let v = point(&[&[3, 1], &[-2, 5]], 2);
        let cache = build_minor_cache(&v, &[2]).unwrap();
        assert_eq!(cache.get(&[1, 1]), BigInt::zero());
    }

    #[test]
    fn identity_minor_and_sign() {
        let v = point(&[&[1, 0], &[0, 1]], 2);
        let cache = build_minor_cache(&v, &[1, 2]).unwrap();
        assert_eq!(cache.get_sorted(&[0, 1]), Some(&BigInt::from(1)));
        assert_eq!(cache.get(&[1, 0]), BigInt::from(-1));
    }

    #[test]
    fn rejects_long_columns() {
        let v = point(&[&[1, 0], &[0, 1]], 2);
        assert_eq!(
            build_minor_cache(&v, &[3]).unwrap_err(),
            Error::ColumnTooLong { len: 3, vars: 2 }
        );
    }

    #[test]
    fn parity() {
        assert_eq!(mask_and_parity(&[2, 0, 1]), Some((0b111, false)));
        assert_eq!(mask_and_parity(&[1, 0, 2]), Some((0b111, true)));
        assert_eq!(mask_and_parity(&[1, 1]), None);
    }
}
