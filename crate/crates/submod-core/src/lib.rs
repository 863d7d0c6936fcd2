//! Exact arithmetic for finite commutative rings `Z/n1 x ... x Z/nk`, finite
//! modules over them, submodule-lattice enumeration, second / weak second /
//! psi-second classifiers, and executable theorem verifiers over a catalog of
//! finite instances.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion
//! `submod-lab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod classify;
pub mod error;
pub mod harness;
pub mod module;
pub mod ring;

pub use error::{Error, Result};

/// Enumeration guardrails. Every exhaustive search checks these before
/// committing to a fixpoint run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_ring_order: usize,
    pub max_module_order: usize,
    pub max_ideals: usize,
    pub max_submodules: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ring_order: 4096,
            max_module_order: 1024,
            max_ideals: 4096,
            max_submodules: 8192,
        }
    }
}
