use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{minors::mask_and_parity, MinorCache};
use crate::Filling;

/// Evaluates the symmetrized tableau of `t` at the point whose minors are
/// in `cache`: the sum over all maps from the entry values of `t` to the
/// forms of the point of the product, over columns, of the minors of the
/// forms placed in each column.
pub fn evaluate_tableau(t: &Filling, cache: &MinorCache) -> BigInt {
    if t.has_repeated_column_entry() {
        return BigInt::zero();
    }
    let symbols = t.content().symbols;
    let columns = t.columns();
    let m = cache.forms();
    // columns each symbol appears in
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); symbols + 1];
    for (c, col) in columns.iter().enumerate() {
        for &e in col {
            occurs[e as usize].push(c);
        }
    }
    // symbols that share no column are summed independently
    let mut total = BigInt::one();
    for (component_symbols, component_columns) in components(&columns, symbols) {
        let mut search = Search {
            symbols: &component_symbols,
            columns: component_columns.iter().map(|&c| columns[c].as_slice()).collect(),
            occurs: &occurs,
            cache,
            forms_of: vec![0; symbols + 1],
            col_masks: vec![0; columns.len()],
            total: BigInt::zero(),
        };
        search.assign(0, m);
        if search.total.is_zero() {
            return search.total;
        }
        total *= search.total;
    }
    total
}

/// Connected components of the graph joining symbols that share a column,
/// as `(symbols, column indices)` pairs.
fn components(columns: &[Vec<u8>], symbols: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..=symbols).collect();
    for col in columns {
        for w in col.windows(2) {
            let x = find(&mut parent, w[0] as usize);
            let y = find(&mut parent, w[1] as usize);
            parent[x] = y;
        }
    }
    let mut index_of = vec![usize::MAX; symbols + 1];
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for s in 1..=symbols {
        let root = find(&mut parent, s);
        if index_of[root] == usize::MAX {
            index_of[root] = out.len();
            out.push((Vec::new(), Vec::new()));
        }
        out[index_of[root]].0.push(s);
    }
    for (c, col) in columns.iter().enumerate() {
        let root = find(&mut parent, col[0] as usize);
        out[index_of[root]].1.push(c);
    }
    out
}

struct Search<'a> {
    symbols: &'a [usize],
    columns: Vec<&'a [u8]>,
    occurs: &'a [Vec<usize>],
    cache: &'a MinorCache,
    forms_of: Vec<usize>,
    col_masks: Vec<u32>,
    total: BigInt,
}

impl Search<'_> {
    fn assign(&mut self, depth: usize, m: usize) {
        let Some(&symbol) = self.symbols.get(depth) else {
            self.leaf();
            return;
        };
        for form in 0..m {
            let bit = 1u32 << form;
            // a form twice in one column makes that minor vanish
            if self.occurs[symbol].iter().any(|&c| self.col_masks[c] & bit != 0) {
                continue;
            }
            for &c in &self.occurs[symbol] {
                self.col_masks[c] |= bit;
            }
            self.forms_of[symbol] = form;
            self.assign(depth + 1, m);
            for &c in &self.occurs[symbol] {
                self.col_masks[c] &= !bit;
            }
        }
    }

    fn leaf(&mut self) {
        let mut product = BigInt::one();
        let mut indices = Vec::new();
        for col in &self.columns {
            indices.clear();
            indices.extend(col.iter().map(|&e| self.forms_of[e as usize]));
            let (mask, odd) = mask_and_parity(&indices).expect("distinct forms");
            let d = self.cache.by_mask(mask).expect("minor not in cache");
            if d.is_zero() {
                return;
            }
            product *= d;
            if odd {
                product = -product;
            }
        }
        self.total += product;
    }
}
