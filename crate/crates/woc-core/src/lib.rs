#![cfg_attr(not(test), no_std)]

//! Enumeration of weak-ordering chains generated by restricted rooted trees.
//!
//! A weak-ordering chain in the variables `x_1..x_n` is an expression
//! `x_{i_1} op x_{i_2} op ... op x_{i_n}` where each `op` is `<` or `=`;
//! equivalently, an ordered partition of `{1..n}`. Chains are grown one
//! variable at a time, and a configurable *stopping condition* (a relation
//! chain such as `x_i = x_j` or `x_i <= x_j < x_k` over increasing indices)
//! freezes a chain into an inactive leaf as soon as it appears.
//!
//! The crate provides three independent counting engines plus constructive
//! bijections, all over exact arithmetic:
//!
//! * [`treesim`] — brute-force level-by-level growth of the restricted tree
//!   (the ground truth),
//! * [`counting`] — closed forms and recurrences for the per-level counts,
//! * [`series`] — truncated formal power series over exact rationals, with
//!   the relevant generating functions as a catalog,
//! * [`bijections`] — colored/marked Dyck-path correspondences and the
//!   descent-preserving map between newly inactive chains and
//!   almost-213-avoiding permutations.

extern crate alloc;

pub mod bijections;
pub mod chain;
pub mod counting;
pub mod perm;
pub mod series;
pub mod treesim;

pub use chain::{ChainParseError, Relation, StoppingPattern, WeakOrderChain};
pub use counting::{Family, LevelCounts};
pub use perm::{BlockConvention, Permutation, UnderlinedPermutation};
pub use treesim::LeafTally;
