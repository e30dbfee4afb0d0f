//! Symbolic tableau calculus: Grassmann and Plücker relations, the
//! straightening algorithm and a symbolic `Psi_{a,b}`.
//!
//! Tableaux stand for products of top-left minors, one per column, so
//! the relations are those among such products:
//!
//! * Grassmann: a transposition inside a column negates the tableau, and a
//!   repeated entry in a column kills it.
//! * Plücker: `T = sum_S S`, where `S` runs over every way of exchanging
//!   the top `k` entries of column `j + 1` with `k` entries of column `j`,
//!   keeping vertical order. `T` itself is not among the `S`.
//!
//! Straightening repeatedly rewrites the smallest non-semistandard term
//! with the Plücker relation at its leftmost, topmost row violation. Every
//! term produced is strictly larger in the order that compares columns
//! from the right, each column read bottom to top, so the rewriting
//! terminates. Coefficients are exact integers; no normalizing factorials
//! are ever introduced.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::tableau::{ContentSpec, Filling, SymmetrizedTableau};
use crate::{Error, Partition};

/// Sorts every column ascending. Returns the sign of the sorting
/// permutations and the sorted filling, or `None` if a column repeats an
/// entry.
pub fn grassmann_canonicalize(t: &Filling) -> Option<(i8, Filling)> {
    let mut columns = t.columns();
    let mut sign = 1i8;
    for col in &mut columns {
        // insertion sort, counting transpositions
        for i in 1..col.len() {
            let mut j = i;
            while j > 0 && col[j - 1] > col[j] {
                col.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if col.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
    }
    Some((sign, t.with_columns(&columns)))
}

/// A formal integer combination of column-sorted fillings sharing one
/// shape and content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauSum {
    shape: Partition,
    content: ContentSpec,
    terms: BTreeMap<Filling, BigInt>,
}

impl TableauSum {
    pub fn zero(shape: Partition, content: ContentSpec) -> Self {
        Self {
            shape,
            content,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_filling(t: &Filling) -> Self {
        let mut s = Self::zero(t.shape().clone(), t.content());
        s.add(t, BigInt::one());
        s
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn content(&self) -> ContentSpec {
        self.content
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Filling, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Filling) -> BigInt {
        match grassmann_canonicalize(t) {
            None => BigInt::zero(),
            Some((sign, canon)) => self.terms.get(&canon).map_or_else(BigInt::zero, |c| c * sign),
        }
    }

    /// Adds `coeff * t`, canonicalizing `t` first.
    pub fn add(&mut self, t: &Filling, coeff: BigInt) {
        assert_eq!(t.shape(), &self.shape, "shape mismatch");
        assert_eq!(t.content(), self.content, "content mismatch");
        if let Some((sign, canon)) = grassmann_canonicalize(t) {
            let coeff = if sign < 0 { -coeff } else { coeff };
            self.add_canonical(canon, coeff);
        }
    }

    fn add_canonical(&mut self, canon: Filling, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(canon);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_sum(&mut self, other: &TableauSum, scale: &BigInt) {
        for (t, c) in &other.terms {
            self.add_canonical(t.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &BigInt) -> Self {
        let mut out = Self::zero(self.shape.clone(), self.content);
        out.add_sum(self, scale);
        out
    }
}

impl fmt::Display for TableauSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, c) in &self.terms {
            writeln!(f, "{c} * {t}")?;
        }
        Ok(())
    }
}

/// Right-hand side of the Plücker relation exchanging the top `k` entries
/// of column `j + 1` with every choice of `k` entries of column `j`.
pub fn plucker_expand(t: &Filling, j: usize, k: usize) -> Result<TableauSum, Error> {
    let columns = t.columns();
    if j + 1 >= columns.len() {
        return Err(Error::InvalidExchange(alloc::format!(
            "no column {} to the right of {j}",
            j + 1
        )));
    }
    if k == 0 || columns[j + 1].len() < k {
        return Err(Error::InvalidExchange(alloc::format!(
            "column {} has fewer than {k} entries",
            j + 1
        )));
    }
    let mut out = TableauSum::zero(t.shape().clone(), t.content());
    let left_len = columns[j].len();
    let mut chosen: Vec<usize> = (0..k).collect();
    let mut cols = columns.clone();
    loop {
        cols[j].clone_from(&columns[j]);
        cols[j + 1].clone_from(&columns[j + 1]);
        for (t_idx, &pos) in chosen.iter().enumerate() {
            cols[j][pos] = columns[j + 1][t_idx];
            cols[j + 1][t_idx] = columns[j][pos];
        }
        out.add(&t.with_columns(&cols), BigInt::one());
        if !next_combination(&mut chosen, left_len) {
            break;
        }
    }
    Ok(out)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for x in i + 1..k {
        c[x] = c[x - 1] + 1;
    }
    true
}

/// Leftmost column pair and topmost row with `T(i, j) > T(i, j + 1)`.
fn first_violation(t: &Filling) -> Option<(usize, usize)> {
    let columns = t.columns();
    for j in 0..columns.len().saturating_sub(1) {
        let (left, right) = (&columns[j], &columns[j + 1]);
        if let Some(i) = (0..right.len()).find(|&i| left[i] > right[i]) {
            return Some((j, i));
        }
    }
    None
}

/// Columns right to left, each read bottom to top.
fn order_key(t: &Filling) -> Vec<u8> {
    let mut key = Vec::with_capacity(t.entries().len());
    for col in t.columns().iter().rev() {
        key.extend(col.iter().rev());
    }
    key
}

/// Rewrites `s` as a combination of semistandard fillings.
pub fn straighten(s: &TableauSum) -> TableauSum {
    let mut work: BTreeMap<Vec<u8>, (Filling, BigInt)> = BTreeMap::new();
    let push = |work: &mut BTreeMap<Vec<u8>, (Filling, BigInt)>, t: &Filling, c: &BigInt| {
        work.entry(order_key(t))
            .and_modify(|(_, acc)| *acc += c)
            .or_insert_with(|| (t.clone(), c.clone()));
    };
    for (t, c) in &s.terms {
        push(&mut work, t, c);
    }
    let mut out = TableauSum::zero(s.shape.clone(), s.content);
    while let Some((_, (t, c))) = work.pop_first() {
        if c.is_zero() {
            continue;
        }
        match first_violation(&t) {
            None => out.add_canonical(t, c),
            Some((j, i)) => {
                let expansion = plucker_expand(&t, j, i + 1).expect("violation is inside column j + 1");
                for (s_t, s_c) in &expansion.terms {
                    push(&mut work, s_t, &(s_c * &c));
                }
            }
        }
    }
    out
}

/// `Psi_{a,b}(f)`: the straightened sum of all fillings with content
/// `b x a` obtained by writing `1..=b` on the cells of each letter of `f`
/// in every order.
pub fn apply_psi_symbolic(f: &SymmetrizedTableau) -> TableauSum {
    let base = f.base();
    let content = base.content();
    let (a, b) = (content.symbols, content.repeats);
    let target = content.transposed();
    let shape = base.shape().clone();
    let columns = base.columns();
    let mut out = TableauSum::zero(shape.clone(), target);

    // cells of every letter as (column, row)
    let mut letter_cells: Vec<Vec<(usize, usize)>> = vec![Vec::new(); a];
    for (c, col) in columns.iter().enumerate() {
        for (r, &e) in col.iter().enumerate() {
            letter_cells[e as usize - 1].push((c, r));
        }
    }
    let cells: Vec<(usize, usize)> = letter_cells.into_iter().flatten().collect();
    let mut numbers: Vec<Vec<u8>> = columns.iter().map(|c| vec![0u8; c.len()]).collect();
    let mut col_used: Vec<u64> = vec![0; columns.len()];
    let mut letter_used: Vec<u64> = vec![0; a];
    let letters: Vec<usize> = cells.iter().map(|&(c, r)| columns[c][r] as usize - 1).collect();

    fn place(
        idx: usize,
        cells: &[(usize, usize)],
        letters: &[usize],
        b: usize,
        numbers: &mut Vec<Vec<u8>>,
        col_used: &mut [u64],
        letter_used: &mut [u64],
        base: &Filling,
        target: ContentSpec,
        out: &mut TableauSum,
    ) {
        if idx == cells.len() {
            let filling =
                Filling::from_parts_unchecked(base.shape().clone(), vec![0; cells.len()], target).with_columns(numbers);
            out.add(&filling, BigInt::one());
            return;
        }
        let (c, r) = cells[idx];
        let letter = letters[idx];
        for q in 1..=b {
            let bit = 1u64 << q;
            // a repeated number in a column is zero by the Grassmann relation
            if letter_used[letter] & bit != 0 || col_used[c] & bit != 0 {
                continue;
            }
            letter_used[letter] |= bit;
            col_used[c] |= bit;
            numbers[c][r] = q as u8;
            place(
                idx + 1,
                cells,
                letters,
                b,
                numbers,
                col_used,
                letter_used,
                base,
                target,
                out,
            );
            letter_used[letter] &= !bit;
            col_used[c] &= !bit;
        }
    }

    place(
        0,
        &cells,
        &letters,
        b,
        &mut numbers,
        &mut col_used,
        &mut letter_used,
        base,
        target,
        &mut out,
    );
    straighten(&out)
}
