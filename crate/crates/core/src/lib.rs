//! Finite quandles and racks, `(G,A)`-quandles, enveloping groups and free
//! constructions.
//!
//! Everything here is pure computation over `alloc`; file formats, IO and the
//! command line front end live in the `qf` crate.
//!
//! Conventions used throughout:
//!
//! * quandle elements are `0..order`, and `table[i][j] = i * j`;
//! * groups act on the right: the product `a·b` of two permutations applies
//!   `a` first, and conjugation is `x^g = g⁻¹ x g`;
//! * `Conj(G)` has `x * y = y⁻¹ x y`, so the right translation `S_y` is
//!   conjugation by `y`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod constructions;
pub mod envelope;
pub mod fingroup;
pub mod freealg;
pub mod ga;
pub mod perm;
pub mod quandle;
pub mod snf;
mod util;
pub mod word;

pub use fingroup::{FiniteGroup, GroupError, GroupSpec, HeisenbergModel};
pub use ga::GaQuandle;
pub use perm::Permutation;
pub use quandle::{Axiom, FiniteQuandle, QuandleError};
pub use word::{FreeWord, Letter};
