//! Exact matroid pathwidth and trellis-width of linear codes over small
//! finite fields, with checkable certificates.

pub mod algebra;
pub mod catalog;
pub mod codes;
pub mod graph;
pub mod harness;
pub mod matroid;
pub mod minors;
pub mod pathwidth;
pub mod random;
pub mod reduction;
pub mod text;

#[cfg(test)]
mod testutil;
