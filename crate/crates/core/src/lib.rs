//! Coloring machinery for simple loop-free digraphs.
//!
//! A *k-coloring* of a digraph partitions its vertices into `k` acyclic
//! sets; the least such `k` is the dichromatic number. The centerpiece of
//! this crate is [`coloring::color_c3_free`], a polynomial-time procedure
//! that colors any digraph without a directed triangle using at most
//! `35^(a-1) * a!` colors, where `a` bounds the independence number of the
//! underlying graph. Around it sit exact desk-scale oracles
//! ([`oracles`]), detectors for the structural objects the bound rests on
//! ([`structure`]), and deterministic seeded instance generators
//! ([`instances`]).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live
//! in the companion `dicolor-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coloring;
pub mod digraph;
pub mod instances;
pub mod oracles;
pub mod structure;

pub use digraph::{Acyclicity, Digraph, GraphError, VertexSet};

