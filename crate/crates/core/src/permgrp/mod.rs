//! Finite permutation groups: construction from spec strings, subgroup
//! lattices up to conjugacy, double cosets and homomorphisms.

mod group;
mod hom;
mod lattice;
mod parse;
mod perm;

pub use group::{PermGroup, Subgroup, DEFAULT_ORDER_BOUND};
pub use hom::{enumerate_homs, enumerate_homs_bounded, GroupHom, DEFAULT_HOM_BOUND};
pub use lattice::{double_cosets, is_conjugate, ClassDescriptor, subgroup_classes, DoubleCoset, SubgroupClass, SubgroupLattice};
pub use parse::{group_from_spec, group_from_spec_bounded, parse_perm};
pub use perm::Perm;
