//! Plethysm coefficients of `Sym^a Sym^b V`.
//!
//! Weight-space dimensions are counted by a memoized dynamic program over
//! the degree-`b` monomials; the multiplicity of `{lambda}` is then the
//! alternating sum `sum_sigma sgn(sigma) * dim W_{lambda + delta - sigma(delta)}`
//! over the symmetric group on `rows(lambda)` letters.

use alloc::format;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::{Error, Partition};

/// Maximum number of variables supported by the packed memo keys.
pub const MAX_VARS: usize = 28;

/// A weight: non-negative exponents, one per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    coords: Vec<usize>,
}

impl WeightVector {
    pub fn new(coords: &[i64]) -> Result<Self, Error> {
        if coords.iter().any(|&c| c < 0) {
            return Err(Error::InvalidWeight(format!("negative coordinate in {coords:?}")));
        }
        Ok(Self {
            coords: coords.iter().map(|&c| c as usize).collect(),
        })
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn total(&self) -> usize {
        self.coords.iter().sum()
    }
}

/// Memoized weight-space dimensions of `Sym^a Sym^b` in `n` variables.
pub struct WeightSpaces {
    a: usize,
    b: usize,
    n: usize,
    monomials: Vec<Vec<u8>>,
    memo: HashMap<[u8; 32], u128>,
    by_weight: HashMap<Vec<u8>, u128>,
}

impl WeightSpaces {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self, Error> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidWeight(format!("a = {a}, b = {b} must be positive")));
        }
        if n == 0 || n > MAX_VARS || a * b > u8::MAX as usize {
            return Err(Error::InvalidWeight(format!(
                "unsupported size n = {n}, ab = {}",
                a * b
            )));
        }
        Ok(Self {
            a,
            b,
            n,
            monomials: monomials(n, b),
            memo: HashMap::new(),
            by_weight: HashMap::new(),
        })
    }

    /// Number of multisets of `a` monomials of degree `b` whose exponent
    /// vectors sum to `mu`.
    pub fn dimension(&mut self, mu: &[usize]) -> Result<u128, Error> {
        if mu.len() != self.n {
            return Err(Error::InvalidWeight(format!(
                "expected {} coordinates, got {}",
                self.n,
                mu.len()
            )));
        }
        let total: usize = mu.iter().sum();
        if total != self.a * self.b {
            return Err(Error::WeightMismatch {
                weight: total,
                expected: self.a * self.b,
            });
        }
        // the dimension is symmetric in the coordinates
        let mut sorted: Vec<u8> = mu.iter().map(|&m| m as u8).collect();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        if let Some(&d) = self.by_weight.get(&sorted) {
            return Ok(d);
        }
        let mut residual = sorted.clone();
        let d = self.count(0, self.a, &mut residual);
        self.by_weight.insert(sorted, d);
        Ok(d)
    }

    /// Multisets of `left` monomials with indices at least `idx` summing
    /// to `residual`. Recursion depth is at most `left`.
    fn count(&mut self, idx: usize, left: usize, residual: &mut [u8]) -> u128 {
        if left == 0 {
            return residual.iter().all(|&w| w == 0) as u128;
        }
        // `left` is fixed by the residual total, so it is not part of the key
        let mut key = [0u8; 32];
        key[..4].copy_from_slice(&(idx as u32).to_le_bytes());
        key[4..4 + residual.len()].copy_from_slice(residual);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for j in idx..self.monomials.len() {
            // monomials are in decreasing lex order, so the first exponent can only shrink
            if residual[0] as usize > left * self.monomials[j][0] as usize {
                break;
            }
            let fits = self.monomials[j].iter().zip(residual.iter()).all(|(&e, &w)| e <= w);
            if !fits {
                continue;
            }
            for (w, &e) in residual.iter_mut().zip(&self.monomials[j]) {
                *w -= e;
            }
            total += self.count(j, left - 1, residual);
            for (w, &e) in residual.iter_mut().zip(&self.monomials[j]) {
                *w += e;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

/// Exponent vectors of the degree-`degree` monomials in `n` variables, in
/// decreasing lexicographic order.
fn monomials(n: usize, degree: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n - 1 {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, degree, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Dimension of the `mu`-weight space of `Sym^a Sym^b V`, with one variable
/// per coordinate of `mu`.
pub fn weight_multiplicity(a: usize, b: usize, mu: &WeightVector) -> Result<u128, Error> {
    if mu.total() != a * b {
        return Err(Error::WeightMismatch {
            weight: mu.total(),
            expected: a * b,
        });
    }
    WeightSpaces::new(a, b, mu.coords().len())?.dimension(mu.coords())
}

/// Multiplicity of `{lambda}` in `Sym^a Sym^b V`, i.e. the dimension of
/// its space of highest weight vectors of type `lambda`.
pub fn plethysm_coefficient(a: usize, b: usize, lambda: &Partition) -> Result<u64, Error> {
    if lambda.weight() != a * b {
        return Err(Error::WeightMismatch {
            weight: lambda.weight(),
            expected: a * b,
        });
    }
    let mut spaces = WeightSpaces::new(a, b, lambda.rows())?;
    coefficient_with(&mut spaces, lambda)
}

/// Plethysm coefficients for several partitions of `a*b`, sharing the
/// weight-space memo between partitions with the same number of rows.
pub fn plethysm_coefficients(a: usize, b: usize, lambdas: &[Partition]) -> Result<Vec<u64>, Error> {
    let mut tables: Vec<Option<WeightSpaces>> = Vec::new();
    lambdas
        .iter()
        .map(|lambda| {
            if lambda.weight() != a * b {
                return Err(Error::WeightMismatch {
                    weight: lambda.weight(),
                    expected: a * b,
                });
            }
            let n = lambda.rows();
            if tables.len() <= n {
                tables.resize_with(n + 1, || None);
            }
            if tables[n].is_none() {
                tables[n] = Some(WeightSpaces::new(a, b, n)?);
            }
            coefficient_with(tables[n].as_mut().unwrap(), lambda)
        })
        .collect()
}

fn coefficient_with(spaces: &mut WeightSpaces, lambda: &Partition) -> Result<u64, Error> {
    let n = lambda.rows();
    let parts = lambda.parts();
    let mut mu = alloc::vec![0usize; n];
    let mut used = alloc::vec![false; n];
    let mut total: i128 = 0;
    alternating_sum(spaces, parts, 0, &mut used, &mut mu, 1, &mut total)?;
    u64::try_from(total).map_err(|_| Error::InvalidWeight(format!("negative multiplicity for {lambda}")))
}

/// Enumerates permutations `sigma` with `mu_i = lambda_i + sigma(i) - i >= 0`.
fn alternating_sum(
    spaces: &mut WeightSpaces,
    parts: &[usize],
    i: usize,
    used: &mut [bool],
    mu: &mut [usize],
    sign: i128,
    total: &mut i128,
) -> Result<(), Error> {
    let n = parts.len();
    if i == n {
        *total += sign * spaces.dimension(mu)? as i128;
        return Ok(());
    }
    let lo = i.saturating_sub(parts[i]);
    // sign flips once for every unused smaller image skipped over
    let mut smaller_unused = used[..lo].iter().filter(|&&u| !u).count();
    for s in lo..n {
        if used[s] {
            continue;
        }
        used[s] = true;
        mu[i] = parts[i] + s - i;
        let sgn = if smaller_unused % 2 == 0 { sign } else { -sign };
        alternating_sum(spaces, parts, i + 1, used, mu, sgn, total)?;
        used[s] = false;
        smaller_unused += 1;
    }
    Ok(())
}
