//! Seeded pseudorandom semistandard fillings.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ContentSpec, Filling, Partition};

/// A pseudorandom semistandard filling of `shape` with rectangular
/// `content`, or `None` when no such filling exists.
///
/// Cells are filled in row-major order; the candidate values of each cell
/// are tried in a shuffled order with backtracking, so every semistandard
/// filling is reachable but the distribution is not uniform.
pub fn random_semistandard(shape: &Partition, content: ContentSpec, seed: u64) -> Option<Filling> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_semistandard_with(shape, content, &mut rng)
}

pub fn random_semistandard_with<R: Rng + ?Sized>(
    shape: &Partition,
    content: ContentSpec,
    rng: &mut R,
) -> Option<Filling> {
    if shape.weight() != content.size() || content.symbols == 0 {
        return None;
    }
    let col_lens = shape.conjugate();
    if col_lens[0] > content.symbols {
        return None;
    }
    let cells: Vec<(usize, usize)> = shape.cells().collect();
    let mut entries = vec![0u8; cells.len()];
    let mut remaining = vec![content.repeats; content.symbols + 1];
    remaining[0] = 0;
    let mut search = Search {
        shape,
        cells: &cells,
        col_lens: &col_lens,
        symbols: content.symbols,
        entries: &mut entries,
        remaining: &mut remaining,
    };
    if search.fill(0, rng) {
        Some(Filling::from_parts_unchecked(shape.clone(), entries, content))
    } else {
        None
    }
}

struct Search<'a> {
    shape: &'a Partition,
    cells: &'a [(usize, usize)],
    col_lens: &'a [usize],
    symbols: usize,
    entries: &'a mut [u8],
    remaining: &'a mut [usize],
}

impl Search<'_> {
    fn fill<R: Rng + ?Sized>(&mut self, idx: usize, rng: &mut R) -> bool {
        if idx == self.cells.len() {
            return true;
        }
        let (r, c) = self.cells[idx];
        let left = if c > 0 { self.entries[idx - 1] as usize } else { 1 };
        let above = if r > 0 {
            self.entries[self.shape.cell_index(r - 1, c)] as usize + 1
        } else {
            1
        };
        let below = self.col_lens[c] - r - 1;
        let lo = left.max(above);
        if lo + below > self.symbols {
            return false;
        }
        let mut candidates: Vec<usize> = (lo..=self.symbols - below).filter(|&v| self.remaining[v] > 0).collect();
        candidates.shuffle(rng);
        for v in candidates {
            self.entries[idx] = v as u8;
            self.remaining[v] -= 1;
            if self.feasible(idx + 1) && self.fill(idx + 1, rng) {
                return true;
            }
            self.remaining[v] += 1;
        }
        self.entries[idx] = 0;
        false
    }

    /// A value can occupy at most one cell per column, so its remaining
    /// copies must fit into the columns that still have free cells.
    fn feasible(&self, next: usize) -> bool {
        let open_columns = match self.cells.get(next) {
            None => 0,
            Some(&(r, c)) => {
                let parts = self.shape.parts();
                let below = parts.get(r + 1).copied().unwrap_or(0);
                // columns c..parts[r] in this row, plus 0..below from later rows
                (parts[r] - c) + below.min(c)
            }
        };
        self.remaining.iter().all(|&k| k <= open_columns)
    }
}
