//! Commutative and homological algebra over pointed commutative monoids.
//!
//! Monoids are pointed: every monoid has an absorbing zero, every A-set a base point.

pub mod aset;
pub mod cli;
pub mod error;
pub mod extensions;
pub mod geometry;
pub mod homological;
pub mod io;
pub mod linalg;
pub mod monoid;
pub mod projk;
pub mod spectra;
pub mod torreal;
pub mod util;

pub use error::{Error, Result};
