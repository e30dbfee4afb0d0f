//! Evaluation of `Psi_{a,b}(f)` at a point `v' = sum_{j=1}^m (l_j)^a`.
//!
//! `Psi_{a,b}(f)` is the sum over all tableaux `S` obtained from `f` by
//! writing the numbers `1..=b` on the cells of each letter in every order.
//! Expanding `S(v')` over maps from numbers to forms, the map only matters
//! up to relabelling the numbers, so the outer loop runs over multisets of
//! forms (weighted by their multinomial count) and the inner depth-first
//! tree places numbers on cells. A column whose cells receive a repeated
//! form contributes a zero minor and is pruned as soon as it appears.
//!
//! Node order is fully deterministic: the next cell is the one with the
//! fewest legal numbers (ties broken by column, then row), and candidates
//! are tried in increasing order. Shards therefore select the same subtrees
//! on every machine.
//!
//! Leaf products are accumulated modulo a set of 62-bit primes whose
//! product exceeds twice an a-priori bound on the result, and the exact
//! integer is recovered by Chinese remaindering.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::minors::mask_and_parity;
use super::MinorCache;
use crate::modular::{self, add_mod, mul_mod};
use crate::tableau::{coinciding_column_groups, SymmetrizedTableau};
use crate::Error;

/// Selects the subtrees `I` at tree depth `depth` with `I = id (mod count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShardSpec {
    pub depth: usize,
    pub count: u64,
    pub id: u64,
}

impl ShardSpec {
    pub fn new(depth: usize, count: u64, id: u64) -> Result<Self, Error> {
        if count == 0 || id >= count {
            return Err(Error::InvalidShard { id, count });
        }
        Ok(Self { depth, count, id })
    }

    /// The single shard covering the whole tree.
    pub const fn whole() -> Self {
        Self {
            depth: 0,
            count: 1,
            id: 0,
        }
    }
}

impl Default for ShardSpec {
    fn default() -> Self {
        Self::whole()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CellOrder {
    /// Fill the cell with the fewest legal numbers next.
    #[default]
    FewestChoices,
    /// Fill cells in column-major order.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiOptions {
    pub order: CellOrder,
    /// Order the top entries of identical columns and divide out the
    /// resulting symmetry.
    pub symmetry_pruning: bool,
}

impl Default for PsiOptions {
    fn default() -> Self {
        Self {
            order: CellOrder::FewestChoices,
            symmetry_pruning: true,
        }
    }
}

/// `(min, max)` bounds on the top entry of every column. Within a group of
/// `r` identical columns the top entries are strictly increasing from left
/// to right, so the `k`-th column (1-based) lies in `[k, b - r + k]`.
///
/// Returns `None` if a group has more than `b` columns.
pub fn pruning_bounds(groups: &[Vec<usize>], b: usize) -> Option<Vec<(usize, usize)>> {
    let cols = groups.iter().flatten().map(|&c| c + 1).max().unwrap_or(0);
    let mut bounds = vec![(1, b); cols];
    for group in groups {
        let r = group.len();
        if r > b {
            return None;
        }
        for (k, &c) in group.iter().enumerate() {
            bounds[c] = (k + 1, b - r + k + 1);
        }
    }
    Some(bounds)
}

#[derive(Debug, Clone)]
struct Cell {
    letter: usize,
    col: usize,
    /// `(group, position)` when this is the top cell of a column with
    /// identical siblings and pruning is on
    top_of: Option<(usize, usize)>,
}

/// Precomputed state for evaluating `Psi_{a,b}(f)` at one point.
#[derive(Debug, Clone)]
pub struct PsiEvaluator {
    b: usize,
    forms: usize,
    cells: Vec<Cell>,
    col_len: Vec<usize>,
    col_cells: Vec<Vec<usize>>,
    /// columns of every pruned group, left to right
    groups: Vec<Vec<usize>>,
    bounds: Vec<(usize, usize)>,
    options: PsiOptions,
    collapse: BigUint,
    primes: Vec<u64>,
    minor_residues: Vec<u64>,
    minor_zero: Vec<bool>,
}

impl PsiEvaluator {
    /// `f` has content `a x b`; `cache` holds the minors of a point with
    /// `m` forms in at least `rows(lambda)` variables.
    pub fn new(f: &SymmetrizedTableau, cache: &MinorCache, options: PsiOptions) -> Result<Self, Error> {
        let content = f.content();
        let (a, b) = (content.symbols, content.repeats);
        let m = cache.forms();
        if b > 32 || m > 32 {
            return Err(Error::InvalidPoint("at most 32 numbers and forms are supported".into()));
        }
        let columns = f.base().columns();
        let col_len: Vec<usize> = columns.iter().map(|c| c.len()).collect();
        if let Some(&k) = col_len.iter().find(|&&k| k > cache.dim()) {
            return Err(Error::ColumnTooLong {
                len: k,
                vars: cache.dim(),
            });
        }
        if let Some(&k) = col_len.iter().find(|&&k| k <= m && !cache.has_length(k)) {
            return Err(Error::InvalidPoint(alloc::format!(
                "minors of size {k} were not cached"
            )));
        }

        let all_groups = coinciding_column_groups(f);
        let groups: Vec<Vec<usize>> = if options.symmetry_pruning {
            all_groups.iter().filter(|g| g.len() > 1).cloned().collect()
        } else {
            Vec::new()
        };
        let bounds = pruning_bounds(&all_groups, b).ok_or(Error::InvalidFilling("group wider than b".into()))?;
        let mut collapse = BigUint::one();
        for g in &groups {
            for k in 2..=g.len() {
                collapse *= k;
            }
        }

        let mut cells = Vec::new();
        let mut col_cells = Vec::new();
        for (c, col) in columns.iter().enumerate() {
            let mut ids = Vec::new();
            for (r, &e) in col.iter().enumerate() {
                let top_of = if r == 0 {
                    groups
                        .iter()
                        .enumerate()
                        .find_map(|(gi, g)| g.iter().position(|&x| x == c).map(|pos| (gi, pos)))
                } else {
                    None
                };
                ids.push(cells.len());
                cells.push(Cell {
                    letter: e as usize - 1,
                    col: c,
                    top_of,
                });
            }
            col_cells.push(ids);
        }

        // |value| <= m^b * (b!)^a * prod_columns max|minor|
        let mut bound = BigUint::from(m).pow(b as u32);
        let mut b_fact = BigUint::one();
        for k in 2..=b {
            b_fact *= k;
        }
        bound *= b_fact.pow(a as u32);
        for &k in &col_len {
            bound *= cache.max_abs(k).max(BigUint::one());
        }
        let primes = modular::primes(modular::primes_for_bound(&bound));
        let (minor_residues, minor_zero) = cache.residue_table(&primes);

        Ok(Self {
            b,
            forms: m,
            cells,
            col_len,
            col_cells,
            groups,
            bounds,
            options,
            collapse,
            primes,
            minor_residues,
            minor_zero,
        })
    }

    /// Number of primes used for the modular accumulation.
    pub fn modulus_count(&self) -> usize {
        self.primes.len()
    }

    /// Product of `r!` over the groups of identical columns whose top
    /// entries are ordered; 1 when pruning is off.
    pub fn collapse_factor(&self) -> &BigUint {
        &self.collapse
    }

    /// The shard's share of `Psi(f)(v')`.
    pub fn evaluate(&self, shard: ShardSpec) -> BigInt {
        self.tree_sum(shard) * BigInt::from(self.collapse.clone())
    }

    /// The shard's share of the sum over the (possibly pruned) tree, before
    /// multiplying by [`Self::collapse_factor`].
    pub fn tree_sum(&self, shard: ShardSpec) -> BigInt {
        let k = self.primes.len();
        let mut tree = Tree::new(self, shard);
        let mut total = vec![0u64; k];
        let mut forms_of = vec![0u8; self.b];
        let mut factorials = vec![1u128; self.b + 1];
        for i in 1..=self.b {
            factorials[i] = factorials[i - 1] * i as u128;
        }
        // nondecreasing maps from numbers to forms
        loop {
            tree.prepare(&forms_of);
            tree.descend(0);
            let mut weight = factorials[self.b];
            let mut run = 1;
            for i in 1..=self.b {
                if i < self.b && forms_of[i] == forms_of[i - 1] {
                    run += 1;
                } else {
                    weight /= factorials[run];
                    run = 1;
                }
            }
            for (i, &p) in self.primes.iter().enumerate() {
                let w = (weight % p as u128) as u64;
                total[i] = add_mod(total[i], mul_mod(w, tree.acc[i], p), p);
            }
            if !next_multiset(&mut forms_of, self.forms as u8) {
                break;
            }
        }
        modular::crt_symmetric(&total, &self.primes)
    }
}

fn next_multiset(seq: &mut [u8], m: u8) -> bool {
    let Some(i) = seq.iter().rposition(|&x| x + 1 < m) else {
        return false;
    };
    let v = seq[i] + 1;
    for x in &mut seq[i..] {
        *x = v;
    }
    true
}

const EMPTY: u8 = u8::MAX;

struct Tree<'e> {
    ev: &'e PsiEvaluator,
    k: usize,
    shard: ShardSpec,
    counter: u64,
    full: u32,
    number_form: Vec<u8>,
    numbers_with_form: Vec<u32>,
    letter_used: Vec<u32>,
    col_blocked: Vec<u32>,
    col_filled: Vec<usize>,
    cell_number: Vec<u8>,
    top_value: Vec<u8>,
    prod: Vec<u64>,
    acc: Vec<u64>,
    scratch: Vec<usize>,
}

impl<'e> Tree<'e> {
    fn new(ev: &'e PsiEvaluator, mut shard: ShardSpec) -> Self {
        let k = ev.primes.len();
        let n_cells = ev.cells.len();
        shard.depth = shard.depth.min(n_cells);
        let letters = ev.cells.iter().map(|c| c.letter + 1).max().unwrap_or(0);
        Self {
            ev,
            k,
            shard,
            counter: 0,
            full: if ev.b == 32 { u32::MAX } else { (1u32 << ev.b) - 1 },
            number_form: vec![0; ev.b],
            numbers_with_form: vec![0; ev.forms],
            letter_used: vec![0; letters],
            col_blocked: vec![0; ev.col_len.len()],
            col_filled: vec![0; ev.col_len.len()],
            cell_number: vec![EMPTY; n_cells],
            top_value: vec![0; ev.col_len.len()],
            prod: vec![0; (n_cells + 1) * k],
            acc: vec![0; k],
            scratch: Vec::new(),
        }
    }

    fn prepare(&mut self, forms_of: &[u8]) {
        self.number_form.copy_from_slice(forms_of);
        self.numbers_with_form.iter_mut().for_each(|m| *m = 0);
        for (q, &f) in forms_of.iter().enumerate() {
            self.numbers_with_form[f as usize] |= 1 << q;
        }
        self.acc.iter_mut().for_each(|x| *x = 0);
        for i in 0..self.k {
            self.prod[i] = 1;
        }
    }

    fn options(&self, cell: usize) -> u32 {
        let info = &self.ev.cells[cell];
        let mut opts = self.full & !self.letter_used[info.letter] & !self.col_blocked[info.col];
        if let Some((g, pos)) = info.top_of {
            let (mut lo, mut hi) = self.ev.bounds[info.col];
            let group = &self.ev.groups[g];
            for (i, &c) in group.iter().enumerate() {
                let t = self.top_value[c] as usize;
                if t == 0 {
                    continue;
                }
                if i < pos {
                    lo = lo.max(t + 1);
                } else if i > pos {
                    hi = hi.min(t - 1);
                }
            }
            if lo > hi {
                return 0;
            }
            // numbers lo..=hi are bits lo-1..=hi-1
            let upper = if hi >= 32 { u32::MAX } else { (1u32 << hi) - 1 };
            let lower = (1u32 << (lo - 1)) - 1;
            opts &= upper & !lower;
        }
        opts
    }

    /// Next cell to fill and its legal numbers, or `None` at a dead end.
    fn choose(&self) -> Option<(usize, u32)> {
        match self.ev.options.order {
            CellOrder::Fixed => {
                let cell = self.cell_number.iter().position(|&q| q == EMPTY)?;
                let opts = self.options(cell);
                (opts != 0).then_some((cell, opts))
            }
            CellOrder::FewestChoices => {
                let mut best: Option<(usize, u32, u32)> = None;
                for cell in 0..self.ev.cells.len() {
                    if self.cell_number[cell] != EMPTY {
                        continue;
                    }
                    let opts = self.options(cell);
                    let count = opts.count_ones();
                    if count == 0 {
                        return None;
                    }
                    if best.is_none_or(|(_, _, c)| count < c) {
                        best = Some((cell, opts, count));
                        if count == 1 {
                            break;
                        }
                    }
                }
                best.map(|(cell, opts, _)| (cell, opts))
            }
        }
    }

    fn descend(&mut self, depth: usize) {
        if depth == self.shard.depth {
            let index = self.counter;
            self.counter += 1;
            if index % self.shard.count != self.shard.id {
                return;
            }
        }
        if depth == self.ev.cells.len() {
            let base = depth * self.k;
            for i in 0..self.k {
                self.acc[i] = add_mod(self.acc[i], self.prod[base + i], self.ev.primes[i]);
            }
            return;
        }
        let Some((cell, mut opts)) = self.choose() else {
            return;
        };
        while opts != 0 {
            let q = opts.trailing_zeros() as usize;
            opts &= opts - 1;
            if self.place(cell, q, depth) {
                self.descend(depth + 1);
            }
            self.unplace(cell, q);
        }
    }

    /// Writes number `q` into `cell` and sets the running product at
    /// `depth + 1`; returns false when a completed column has zero minor.
    fn place(&mut self, cell: usize, q: usize, depth: usize) -> bool {
        let info = &self.ev.cells[cell];
        let (letter, col) = (info.letter, info.col);
        let form = self.number_form[q] as usize;
        self.letter_used[letter] |= 1 << q;
        self.col_blocked[col] |= self.numbers_with_form[form];
        self.col_filled[col] += 1;
        self.cell_number[cell] = q as u8;
        if info.top_of.is_some() {
            self.top_value[col] = q as u8 + 1;
        }
        let (from, to) = (depth * self.k, (depth + 1) * self.k);
        if self.col_filled[col] < self.ev.col_len[col] {
            self.prod.copy_within(from..to, to);
            return true;
        }
        self.scratch.clear();
        for &c in &self.ev.col_cells[col] {
            self.scratch
                .push(self.number_form[self.cell_number[c] as usize] as usize);
        }
        let (mask, odd) = mask_and_parity(&self.scratch).expect("column forms are distinct");
        if self.ev.minor_zero[mask] {
            return false;
        }
        for i in 0..self.k {
            let p = self.ev.primes[i];
            let mut d = self.ev.minor_residues[mask * self.k + i];
            if odd && d != 0 {
                d = p - d;
            }
            self.prod[to + i] = mul_mod(self.prod[from + i], d, p);
        }
        true
    }

    fn unplace(&mut self, cell: usize, q: usize) {
        let info = &self.ev.cells[cell];
        let form = self.number_form[q] as usize;
        self.letter_used[info.letter] &= !(1 << q);
        self.col_blocked[info.col] ^= self.numbers_with_form[form];
        self.col_filled[info.col] -= 1;
        self.cell_number[cell] = EMPTY;
        if info.top_of.is_some() {
            self.top_value[info.col] = 0;
        }
    }
}

/// `Psi_{a,b}(f)(v')` restricted to one shard, with default options.
pub fn evaluate_psi_image(f: &SymmetrizedTableau, cache: &MinorCache, shard: ShardSpec) -> Result<BigInt, Error> {
    Ok(PsiEvaluator::new(f, cache, PsiOptions::default())?.evaluate(shard))
}
