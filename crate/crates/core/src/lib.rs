//! Exact computations with Burnside rings of finite permutation groups.
//!
//! The crate covers the subgroup lattice of a permutation group, the
//! Burnside ring with transfers and restrictions, exact integer lattices,
//! the filtration of the augmentation ideal by the classes
//! `t_K^H = [H:K]·[G/H] − [G/K]` with `[H:K] ≤ n`, and the finite global
//! Burnside category modelled by right-free bisets.

pub mod bisetcat;
pub mod burnside;
pub mod error;
pub mod filtration;
pub mod intlattice;
pub mod permgrp;

pub use error::{Error, Result};
