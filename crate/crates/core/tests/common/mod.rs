#![allow(dead_code)]

use std::sync::Arc;

use burnside_core::burnside::BurnsideRing;
use burnside_core::permgrp::{group_from_spec, parse_perm, PermGroup, Subgroup};

pub const Q8: &str = "Perm(8; (1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6))";
pub const C2XC2: &str = "Perm(4; (1 2), (3 4))";
pub const C3XC3: &str = "Perm(6; (1 2 3), (4 5 6))";

/// p-groups of the suite with their prime.
pub const P_GROUPS: [(&str, usize); 7] = [
    ("Cyclic(4)", 2),
    ("Cyclic(8)", 2),
    ("Dihedral(4)", 2),
    (Q8, 2),
    (C2XC2, 2),
    ("Cyclic(9)", 3),
    (C3XC3, 3),
];

pub const SUITE: [&str; 13] = [
    "Sym(2)",
    "Sym(3)",
    "Sym(4)",
    "Alt(4)",
    "Alt(5)",
    "Sym(5)",
    "Cyclic(4)",
    "Cyclic(8)",
    "Dihedral(4)",
    Q8,
    C2XC2,
    "Cyclic(9)",
    C3XC3,
];

pub fn grp(spec: &str) -> Arc<PermGroup> {
    Arc::new(group_from_spec(spec).unwrap())
}

pub fn ring(spec: &str) -> Arc<BurnsideRing> {
    BurnsideRing::new(grp(spec)).unwrap()
}

pub fn sub(g: &Arc<PermGroup>, gens: &[&str]) -> Subgroup {
    let perms: Vec<_> = gens.iter().map(|s| parse_perm(g.degree(), s).unwrap()).collect();
    Subgroup::from_perms(g, &perms).unwrap()
}
