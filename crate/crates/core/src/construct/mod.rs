//! Builders for new algebras, the named catalog and exhaustive small-model
//! enumeration.

pub mod catalog;
mod enumerate;
mod ops;

pub use enumerate::{enumerate_all, enumerate_all_capped, enumerate_size, EnumerateError, DEFAULT_MAX_N};
pub use ops::{direct_product, generated_subalgebra, horizontal_sum, interval_algebra};
