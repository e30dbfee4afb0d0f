//! Integer partitions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::Error;

/// A partition `lambda`: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".to_string()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".to_string()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts must be weakly decreasing".to_string()));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn cols(&self) -> usize {
        self.parts[0]
    }

    /// Column lengths, left to right.
    pub fn conjugate(&self) -> Vec<usize> {
        (0..self.cols())
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect()
    }

    /// Index of cell `(row, col)` in row-major order.
    pub fn cell_index(&self, row: usize, col: usize) -> usize {
        self.parts[..row].iter().sum::<usize>() + col
    }

    /// Cells in row-major order as `(row, col)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(String::from(s)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `weight` with at most `max_rows` parts, in
/// lexicographically decreasing order.
pub fn enumerate_partitions(weight: usize, max_rows: usize) -> Vec<Partition> {
    fn rec(rest: usize, max_part: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            // the remaining rows must be able to absorb what is left
            if part * rows_left < rest {
                break;
            }
            cur.push(part);
            rec(rest - part, part, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if weight == 0 || max_rows == 0 {
        return out;
    }
    rec(weight, weight, max_rows, &mut Vec::new(), &mut out);
    out
}
