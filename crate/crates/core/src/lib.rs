//! Delsarte linear programming bounds for codes in the Lee metric, with the
//! refinement for linear codes over prime fields.
//!
//! Everything here is exact: Lee numbers live in `Z[zeta]`, the compact
//! linear program has integer data and is solved over the rationals. Only the
//! unreduced formulations, whose coefficients are irrational, go through the
//! floating-point simplex.
#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod codes;
pub mod cyclotomic;
pub mod cycreal;
mod error;
pub mod lee;
pub mod leenum;
pub mod lp;
pub mod simplex;

pub use error::{Error, Result};
