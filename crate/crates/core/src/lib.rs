//! Decategorified finitary 2-categories and their matrix representations:
//! based categories, cells, matrix and cell representations, exact
//! Perron–Frobenius checks and small classification searches.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod based_cat;
pub mod cells;
pub mod classify;
pub mod error;
pub mod group;
pub mod matrep;
pub mod matrix;
pub mod order;
pub mod pfexact;
pub mod random;

pub use error::{Error, Result};
