mod common;

use std::sync::Arc;

use burnside_core::burnside::{augmentation, marks, multiply, restrict_into, transfer, BurnsideElement, BurnsideRing};
use burnside_core::filtration::Filtration;
use burnside_core::intlattice::contains;
use burnside_core::permgrp::{enumerate_homs, is_conjugate, GroupHom, Subgroup, SubgroupLattice};
use common::*;
use proptest::prelude::*;

fn element(r: &Arc<BurnsideRing>, seed: &[i64]) -> BurnsideElement {
    r.element((0..r.rank()).map(|i| seed[i % seed.len()]).collect()).unwrap()
}

fn small_ring(i: usize) -> Arc<BurnsideRing> {
    ring(["Sym(3)", "Alt(4)", "Dihedral(4)", Q8, "Sym(4)"][i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn marks_are_ring_maps(i in 0usize..5, a in prop::collection::vec(-5i64..=5, 11), b in prop::collection::vec(-5i64..=5, 11)) {
        let r = small_ring(i);
        let (x, y) = (element(&r, &a), element(&r, &b));
        let xy = multiply(&x, &y).unwrap();
        let expected: Vec<i64> = marks(&x).iter().zip(marks(&y)).map(|(p, q)| p * q).collect();
        prop_assert_eq!(marks(&xy), expected);
        prop_assert_eq!(augmentation(&xy), augmentation(&x) * augmentation(&y));
        prop_assert_eq!(marks(&(&x + &y)), marks(&x).iter().zip(marks(&y)).map(|(p, q)| p + q).collect::<Vec<_>>());
    }

    #[test]
    fn ghost_map_is_injective(i in 0usize..5, a in prop::collection::vec(-5i64..=5, 11), b in prop::collection::vec(-5i64..=5, 11)) {
        let r = small_ring(i);
        let (x, y) = (element(&r, &a), element(&r, &b));
        prop_assert_eq!(marks(&x) == marks(&y), x == y);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(i in 0usize..5, a in prop::collection::vec(-3i64..=3, 11), b in prop::collection::vec(-3i64..=3, 11), c in prop::collection::vec(-3i64..=3, 11)) {
        let r = small_ring(i);
        let (x, y, z) = (element(&r, &a), element(&r, &b), element(&r, &c));
        prop_assert_eq!(multiply(&x, &y).unwrap(), multiply(&y, &x).unwrap());
        prop_assert_eq!(
            multiply(&multiply(&x, &y).unwrap(), &z).unwrap(),
            multiply(&x, &multiply(&y, &z).unwrap()).unwrap()
        );
        prop_assert_eq!(multiply(&r.one(), &x).unwrap(), x);
    }
}

#[test]
fn transfer_is_transitive() {
    for spec in ["Sym(4)", "Alt(5)"] {
        let r = ring(spec);
        let g = r.group().clone();
        for h in r.lattice().classes().iter().map(|c| &c.representative) {
            let rh = BurnsideRing::of_subgroup(h).unwrap();
            for k in rh.lattice().classes().iter().map(|c| &c.representative) {
                let rk = BurnsideRing::of_subgroup(k).unwrap();
                let kg = k.transport(&g).unwrap();
                for x in (0..rk.rank()).map(|i| rk.basis(i)) {
                    let two_step = transfer(&r, h, &transfer(&rh, k, &x).unwrap()).unwrap();
                    assert_eq!(two_step, transfer(&r, &kg, &x).unwrap(), "{spec}: {h:?} ⊇ {k:?}");
                }
            }
        }
    }
}

#[test]
fn restriction_is_contravariant() {
    // (β ∘ α)* = α* ∘ β* for inclusions and the sign map Σ₄ → Σ₂ composed after them
    let s4 = grp("Sym(4)");
    let r4 = BurnsideRing::new(s4.clone()).unwrap();
    let c2 = grp("Sym(2)");
    let r2 = BurnsideRing::new(c2.clone()).unwrap();
    let gens: Vec<u32> = ["(1 2 3 4)", "(1 2)"].iter().map(|s| sub(&s4, &[s]).generators()[0]).collect();
    let sign = GroupHom::from_generator_images(&s4, &c2, &gens, &[1, 1]).unwrap();
    for h in r4.lattice().classes().iter().map(|c| &c.representative) {
        let rh = BurnsideRing::of_subgroup(h).unwrap();
        let incl = GroupHom::inclusion(rh.group(), &s4).unwrap();
        let composite = sign.after(&incl).unwrap();
        for x in (0..r2.rank()).map(|i| r2.basis(i)) {
            let direct = restrict_into(&rh, &composite, &x).unwrap();
            let stepwise = restrict_into(&rh, &incl, &restrict_into(&r4, &sign, &x).unwrap()).unwrap();
            assert_eq!(direct, stepwise);
        }
        for x in (0..r4.rank()).map(|i| r4.basis(i)) {
            let y = restrict_into(&rh, &incl, &x).unwrap();
            assert_eq!(augmentation(&y), augmentation(&x));
        }
    }
}

#[test]
fn filtration_is_monotone_and_closed_under_operations() {
    for spec in ["Sym(3)", "Sym(4)", "Alt(4)", "Dihedral(4)"] {
        let r = ring(spec);
        let g = r.group().clone();
        let f = Filtration::new(r.clone());
        let top = g.order();
        for n in 1..top {
            assert!(f.ideal(n).unwrap().is_sublattice_of(&f.ideal(n + 1).unwrap()).unwrap());
        }
        for h in r.lattice().classes().iter().map(|c| &c.representative) {
            let rh = BurnsideRing::of_subgroup(h).unwrap();
            let fh = Filtration::new(rh.clone());
            let incl = GroupHom::inclusion(rh.group(), &g).unwrap();
            for n in 2..=4 {
                let (ig, ih) = (f.ideal(n).unwrap(), fh.ideal(n).unwrap());
                for row in ig.rows() {
                    let y = restrict_into(&rh, &incl, &r.element(row.clone()).unwrap()).unwrap();
                    assert!(contains(&ih, y.coeffs()).unwrap(), "{spec}: res into {h:?}, n = {n}");
                }
                for row in ih.rows() {
                    let y = transfer(&r, h, &rh.element(row.clone()).unwrap()).unwrap();
                    assert!(contains(&ig, y.coeffs()).unwrap(), "{spec}: tr from {h:?}, n = {n}");
                }
            }
        }
    }
}

#[test]
fn subgroup_enumeration_is_complete() {
    // every subgroup of a small group is closed, and closure of any two
    // subgroups is again one of them
    for spec in ["Sym(4)", "Alt(4)", "Dihedral(4)", Q8, C3XC3, "Alt(5)"] {
        let g = grp(spec);
        let lattice = SubgroupLattice::new(g.clone()).unwrap();
        let subs: Vec<Subgroup> = lattice
            .all_subgroups()
            .iter()
            .map(|(k, _)| Subgroup::from_elements(&g, k.clone()).unwrap())
            .collect();
        let total: usize = lattice.classes().iter().map(|c| c.class_size).sum();
        assert_eq!(total, subs.len());
        for a in subs.iter().step_by(3) {
            for b in subs.iter().step_by(5) {
                let mut gens = a.generators().to_vec();
                gens.extend_from_slice(b.generators());
                let joined = Subgroup::generated_by(&g, &gens);
                assert!(lattice.class_of(&joined).is_ok());
            }
        }
        for (i, c) in lattice.classes().iter().enumerate() {
            assert_eq!(c.normalizer_order, c.representative.normalizer().order());
            assert_eq!(c.class_size * c.normalizer_order, g.order());
            for (j, d) in lattice.classes().iter().enumerate() {
                assert_eq!(is_conjugate(&g, &c.representative, &d.representative).unwrap(), i == j);
            }
        }
    }
}

#[test]
fn homomorphism_classes_are_distinct() {
    let cases = [("Sym(3)", "Sym(3)"), ("Cyclic(4)", "Sym(4)"), (C2XC2, "Sym(4)"), ("Sym(3)", "Sym(4)")];
    for (l, g) in cases {
        let (l, g) = (grp(l), grp(g));
        let homs = enumerate_homs(&l, &g).unwrap();
        for (i, a) in homs.iter().enumerate() {
            for b in &homs[i + 1..] {
                let conjugate = (0..g.order() as u32).any(|x| a.conjugated_by(x) == *b);
                assert!(!conjugate, "{a:?} and {b:?} are conjugate");
            }
        }
        // every homomorphism is conjugate to a listed one: compare against
        // all maps found by brute force over generator images
        let gens = l.generators().iter().map(|p| l.index_of(p).unwrap()).collect::<Vec<_>>();
        let mut all = std::collections::BTreeSet::new();
        let mut images = vec![0u32; gens.len()];
        loop {
            if let Ok(h) = GroupHom::from_generator_images(&l, &g, &gens, &images) {
                all.insert(h.map().to_vec());
            }
            let mut i = 0;
            while i < images.len() {
                images[i] += 1;
                if (images[i] as usize) < g.order() {
                    break;
                }
                images[i] = 0;
                i += 1;
            }
            if i == images.len() {
                break;
            }
        }
        let mut orbits = std::collections::BTreeSet::new();
        for h in &homs {
            for x in 0..g.order() as u32 {
                orbits.insert(h.conjugated_by(x).map().to_vec());
            }
        }
        assert_eq!(orbits, all);
    }
}
