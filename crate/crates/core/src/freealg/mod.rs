//! Free racks and quandles, free products of finite groups, and quandle
//! presentations.

mod closure;
mod presentation;
mod product;
mod rack;

use alloc::string::String;

use crate::fingroup::GroupError;

pub use closure::{bounded_closure, ClosureEstimate, MAX_CLOSURE_DEPTH};
pub use presentation::{envelope_of, presentation_free_product, quandle_presentation_of, QWord, QuandlePresentation};
pub use product::{FreeProduct, FreeProductWord, GaFree, GaFreeElement, Syllable};
pub use rack::{fq_canonicalize, fq_equal, fq_op, fq_op_inv, fr_op, fr_op_inv, free_quandle_elements, FreeQuandleElement, FreeRackElement};

/// Upper bound on enumerated element lists.
pub const MAX_ENUMERATION: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FreeAlgError {
    #[error("{count} elements requested, over the limit {limit}")]
    SizeOverflow { count: u128, limit: usize },
    #[error("base element {0} is the identity")]
    IdentityBaseElement(usize),
    #[error("factor {0} does not exist (free products have factors 0 and 1)")]
    FactorOutOfRange(usize),
    #[error("generator {gen} out of range for {count} generators")]
    GeneratorOutOfRange { gen: usize, count: usize },
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("could not find a fresh name for `{0}`")]
    NameClash(String),
    #[error("depth {depth} exceeds the limit {limit}")]
    DepthExceeded { depth: usize, limit: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}
