//! Cellular-automata neighborhoods on the integer lattice `Z^d`.
//!
//! The crate covers the `k`-neighborhood family, which spans von Neumann's
//! neighborhood (`k = 1`) to Moore's (`k = d`), its radius-`r` extension and
//! the diamond (Manhattan) neighborhoods:
//!
//! - [`neighborhood`]: specs, distances, membership, offset enumeration and a
//!   brute-force counting oracle
//! - [`counting`]: closed forms and recurrences for every neighbor count,
//!   including Delannoy numbers, in exact integer arithmetic
//! - [`sequences`]: the related OEIS sequences and b-file I/O
//! - [`engine`]: a synchronous totalistic cellular automaton over any
//!   neighborhood
//! - [`verify`]: in-process cross-checks of formulas, recurrences and oracle
//! - [`cli`]: the `kneighborhood` command line
//!
//! ```
//! use kneighborhood::counting::{count, k_count};
//! use kneighborhood::neighborhood::{enumerate_offsets, NeighborhoodSpec};
//!
//! let spec = NeighborhoodSpec::k_radius(3, 2, 1).unwrap();
//! assert_eq!(count(&spec).unwrap().value, k_count(3, 2).unwrap());
//! assert_eq!(enumerate_offsets(&spec).unwrap().len(), 18);
//! ```

pub mod cli;
pub mod counting;
pub mod engine;
mod error;
pub mod neighborhood;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
