//! Fillings of Young diagrams and the symmetrized tableaux built from them.
//!
//! Cells are addressed `(row, col)` with 0-based indices; entries are stored
//! row-major. Column reads follow the conjugate partition.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Partition};

/// Rectangular content `symbols x repeats`: every value `1..=symbols`
/// occurs exactly `repeats` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContentSpec {
    pub symbols: usize,
    pub repeats: usize,
}

impl ContentSpec {
    pub const fn new(symbols: usize, repeats: usize) -> Self {
        Self { symbols, repeats }
    }

    pub fn size(&self) -> usize {
        self.symbols * self.repeats
    }

    /// The content with the roles of `symbols` and `repeats` swapped.
    pub fn transposed(&self) -> Self {
        Self::new(self.repeats, self.symbols)
    }
}

/// A Young tableau of a given shape with rectangular content.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filling {
    shape: Partition,
    entries: Vec<u8>,
    content: ContentSpec,
}

impl Filling {
    pub fn new(shape: Partition, entries: Vec<u8>, content: ContentSpec) -> Result<Self, Error> {
        if entries.len() != shape.weight() {
            return Err(Error::InvalidFilling(
                "entry count does not match the shape".to_string(),
            ));
        }
        if content.size() != shape.weight() {
            return Err(Error::InvalidFilling(
                "content size does not match the shape".to_string(),
            ));
        }
        if content.symbols > u8::MAX as usize {
            return Err(Error::InvalidFilling("too many symbols".to_string()));
        }
        let mut counts = vec![0usize; content.symbols + 1];
        for &e in &entries {
            let e = e as usize;
            if e == 0 || e > content.symbols {
                return Err(Error::InvalidFilling("entry out of range".to_string()));
            }
            counts[e] += 1;
        }
        if counts[1..].iter().any(|&c| c != content.repeats) {
            return Err(Error::InvalidFilling(
                "entries do not have the declared content".to_string(),
            ));
        }
        Ok(Self {
            shape,
            entries,
            content,
        })
    }

    /// Builds a filling from explicit rows and infers the rectangular content.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, Error> {
        let parts = rows.iter().map(|r| r.len()).collect();
        let shape = Partition::new(parts)?;
        let entries: Vec<u8> = rows.iter().flatten().copied().collect();
        let symbols = entries.iter().copied().max().unwrap_or(0) as usize;
        if symbols == 0 || !entries.len().is_multiple_of(symbols) {
            return Err(Error::InvalidFilling("content is not rectangular".to_string()));
        }
        let repeats = entries.len() / symbols;
        Self::new(shape, entries, ContentSpec::new(symbols, repeats))
    }

    pub(crate) fn from_parts_unchecked(shape: Partition, entries: Vec<u8>, content: ContentSpec) -> Self {
        Self {
            shape,
            entries,
            content,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn content(&self) -> ContentSpec {
        self.content
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.entries[self.shape.cell_index(row, col)]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        let start = self.shape.cell_index(row, 0);
        &self.entries[start..start + self.shape.parts()[row]]
    }

    /// Entries of column `col`, top to bottom.
    pub fn column(&self, col: usize) -> Vec<u8> {
        let parts = self.shape.parts();
        (0..parts.len())
            .take_while(|&r| parts[r] > col)
            .map(|r| self.entry(r, col))
            .collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.shape.cols()).map(|c| self.column(c)).collect()
    }

    /// Rebuilds a filling of the same shape and content from its columns.
    pub(crate) fn with_columns(&self, columns: &[Vec<u8>]) -> Self {
        let mut entries = self.entries.clone();
        for (c, col) in columns.iter().enumerate() {
            for (r, &e) in col.iter().enumerate() {
                entries[self.shape.cell_index(r, c)] = e;
            }
        }
        Self::from_parts_unchecked(self.shape.clone(), entries, self.content)
    }

    /// Strictly increasing down columns, weakly increasing along rows.
    pub fn is_semistandard(&self) -> bool {
        let parts = self.shape.parts();
        for r in 0..parts.len() {
            let row = self.row(r);
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if r > 0 {
                let above = self.row(r - 1);
                if row.iter().zip(above).any(|(lo, hi)| lo <= hi) {
                    return false;
                }
            }
        }
        true
    }

    /// True if some column holds the same value twice.
    pub fn has_repeated_column_entry(&self) -> bool {
        self.columns().iter().any(|col| {
            let mut seen = 0u64;
            col.iter().any(|&e| {
                let bit = 1u64 << (e as u64 % 64);
                let hit = seen & bit != 0;
                seen |= bit;
                hit
            })
        })
    }

    /// Letters rendering (`A`, `B`, ...) used for symmetrized tableaux.
    pub fn letters(&self) -> String {
        let mut out = String::new();
        for r in 0..self.shape.rows() {
            if r > 0 {
                out.push('/');
            }
            for &e in self.row(r) {
                out.push((b'A' + (e - 1) % 26) as char);
            }
        }
        out
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.shape.rows() {
            if r > 0 {
                f.write_str("/")?;
            }
            for (i, e) in self.row(r).iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Filling {
    type Err = Error;

    /// Parses rows of space-separated integers joined by `/`, e.g. `1 1 3 3/2 2`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let rows = s
            .trim()
            .split('/')
            .map(|row| {
                row.split_whitespace()
                    .map(|e| e.parse::<u8>().map_err(|_| Error::InvalidFilling(String::from(s))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Filling::from_rows(&rows)
    }
}

/// The column-standard tableau `T_lambda`: entries `1..=|lambda|` written
/// column by column, top to bottom.
pub fn column_standard_tableau(shape: &Partition) -> Filling {
    let mut entries = vec![0u8; shape.weight()];
    let mut next = 1u8;
    for (c, &len) in shape.conjugate().iter().enumerate() {
        for r in 0..len {
            entries[shape.cell_index(r, c)] = next;
            next += 1;
        }
    }
    let content = ContentSpec::new(shape.weight(), 1);
    Filling::from_parts_unchecked(shape.clone(), entries, content)
}

/// An outer-symmetrized tableau `rho(T)`. The entry values act as an
/// unordered alphabet, so the base filling is stored with its letters
/// relabelled by first occurrence in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetrizedTableau {
    base: Filling,
}

impl SymmetrizedTableau {
    pub fn new(base: &Filling) -> Self {
        let mut relabel = vec![0u8; base.content.symbols + 1];
        let mut next = 1u8;
        let entries = base
            .entries
            .iter()
            .map(|&e| {
                if relabel[e as usize] == 0 {
                    relabel[e as usize] = next;
                    next += 1;
                }
                relabel[e as usize]
            })
            .collect();
        Self {
            base: Filling::from_parts_unchecked(base.shape.clone(), entries, base.content),
        }
    }

    pub fn base(&self) -> &Filling {
        &self.base
    }

    pub fn shape(&self) -> &Partition {
        &self.base.shape
    }

    /// `(a, b)` for content `a x b`.
    pub fn content(&self) -> ContentSpec {
        self.base.content
    }
}

impl fmt::Display for SymmetrizedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base.letters())
    }
}

/// Groups of identical columns (same length, same letters top to bottom),
/// each group listed left to right; groups ordered by their first column.
pub fn coinciding_column_groups(t: &SymmetrizedTableau) -> Vec<Vec<usize>> {
    let columns = t.base.columns();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        match groups.iter_mut().find(|g| &columns[g[0]] == col) {
            Some(g) => g.push(c),
            None => groups.push(vec![c]),
        }
    }
    groups
}
