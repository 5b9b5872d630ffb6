//! Affine monoids and monoid schemes built by gluing them.

pub mod affine;
pub mod scheme;
