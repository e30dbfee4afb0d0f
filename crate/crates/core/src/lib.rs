//! Exact computations for the Foulkes-Howe map
//! `Psi_{a,b}: Sym^a Sym^b V -> Sym^b Sym^a V`.
//!
//! The crate is `no_std` (it only needs `alloc`) and contains every
//! algorithm: partitions and tableaux, plethysm coefficients, a symbolic
//! straightening calculus, exact evaluation of symmetrized tableaux at
//! integer points, exact rank computations and the per-partition kernel
//! driver. File formats, checkpointing and the command line live in the
//! `pkw` crate.
//!
//! ```
//! use pkw_core::{Partition, plethysm::plethysm_coefficient};
//!
//! let lambda: Partition = "2,2".parse().unwrap();
//! assert_eq!(plethysm_coefficient(2, 2, &lambda).unwrap(), 1);
//! ```
#![no_std]

extern crate alloc;

pub mod driver;
pub mod error;
pub mod eval;
pub mod linalg;
pub mod modular;
pub mod partition;
pub mod plethysm;
pub mod sample;
pub mod seed;
pub mod straighten;
pub mod tableau;

pub use error::Error;
pub use partition::Partition;
pub use tableau::{ContentSpec, Filling, SymmetrizedTableau};

pub type Result<T, E = Error> = core::result::Result<T, E>;
