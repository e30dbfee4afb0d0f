//! Exact evaluation of symmetrized tableaux and of their images under
//! `Psi_{a,b}` at integer points `v = sum_i (l_i)^power`.

mod minors;
mod psi;
mod tableau_eval;

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::Error;

pub use minors::{build_minor_cache, MinorCache};
pub use psi::{evaluate_psi_image, pruning_bounds, CellOrder, PsiEvaluator, PsiOptions, ShardSpec};
pub use tableau_eval::evaluate_tableau;

/// Largest coordinate magnitude of randomly drawn forms.
pub const RANDOM_COORD_BOUND: i64 = 9;

/// An integer linear form `l in Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coords: Vec<i64>,
}

impl LinearForm {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Coordinates uniform in `[-9, 9]`, redrawn while all are zero.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let coords: Vec<i64> = (0..n)
                .map(|_| rng.gen_range(-RANDOM_COORD_BOUND..=RANDOM_COORD_BOUND))
                .collect();
            if coords.iter().any(|&c| c != 0) {
                return Self { coords };
            }
        }
    }
}

/// The point `sum_i (l_i)^power` of `Sym^power V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    forms: Vec<LinearForm>,
    power: usize,
}

impl Point {
    pub fn new(forms: Vec<LinearForm>, power: usize) -> Result<Self, Error> {
        if forms.is_empty() {
            return Err(Error::InvalidPoint("no forms".into()));
        }
        if power == 0 {
            return Err(Error::InvalidPoint("power must be positive".into()));
        }
        let n = forms[0].dim();
        if n == 0 || forms.iter().any(|f| f.dim() != n) {
            return Err(Error::InvalidPoint(format!(
                "forms must share a positive dimension {n}"
            )));
        }
        Ok(Self { forms, power })
    }

    /// `count` random forms in `n` variables.
    pub fn random<R: Rng + ?Sized>(n: usize, count: usize, power: usize, rng: &mut R) -> Self {
        let forms = (0..count).map(|_| LinearForm::random(n, rng)).collect();
        Self { forms, power }
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn power(&self) -> usize {
        self.power
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        self.forms[0].dim()
    }
}
