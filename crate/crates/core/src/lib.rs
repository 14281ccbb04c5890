#![allow(clippy::needless_range_loop)]

pub mod cft;
pub mod dioph;
pub mod error;
pub mod field;
pub mod hilbert;
pub mod oracle;
pub mod qform;
pub mod selftest;

pub use error::{Error, Result};
pub use field::{Elem, GlobalField, Place};
