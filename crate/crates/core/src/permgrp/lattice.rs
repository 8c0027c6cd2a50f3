use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::{PermGroup, Subgroup, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};

/// A conjugacy class of subgroups with its normalizer data.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Lexicographically minimal member of the class.
    pub representative: Subgroup,
    pub class_size: usize,
    pub normalizer_order: usize,
    pub weyl_order: usize,
    pub index_in_parent: usize,
}

impl SubgroupClass {
    pub fn descriptor(&self, index: usize) -> ClassDescriptor {
        ClassDescriptor {
            index,
            order: self.representative.order(),
            generators: self.representative.generator_perms().iter().map(|p| p.to_string()).collect(),
            class_size: self.class_size,
            normalizer_order: self.normalizer_order,
            weyl_order: self.weyl_order,
            index_in_parent: self.index_in_parent,
        }
    }
}

/// Serializable summary of a subgroup class; generators are in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDescriptor {
    pub index: usize,
    pub order: usize,
    pub generators: Vec<String>,
    pub class_size: usize,
    pub normalizer_order: usize,
    pub weyl_order: usize,
    pub index_in_parent: usize,
}

/// All subgroups of a group, organised into conjugacy classes.
///
/// Classes are ordered by (order, canonical key); this order is the basis
/// order of the Burnside ring and of every lattice computed from it.
pub struct SubgroupLattice {
    group: Arc<PermGroup>,
    classes: Vec<SubgroupClass>,
    /// Every subgroup, sorted by key, with its class index.
    subgroups: Vec<(Vec<u32>, usize)>,
    lookup: HashMap<Vec<u32>, usize>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<PermGroup>) -> Result<SubgroupLattice> {
        SubgroupLattice::with_bound(group, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(group: Arc<PermGroup>, bound: usize) -> Result<SubgroupLattice> {
        if group.order() > bound {
            return Err(Error::Resource(format!(
                "subgroup enumeration refused: |G| = {} exceeds the bound {bound}",
                group.order()
            )));
        }
        let g = &*group;
        let n = g.order() as u32;

        // class id -> (canonical key, all conjugate keys)
        let mut found: Vec<(Vec<u32>, Vec<Vec<u32>>)> = Vec::new();
        let mut lookup: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut queue = VecDeque::new();

        let register = |key: Vec<u32>,
                            found: &mut Vec<(Vec<u32>, Vec<Vec<u32>>)>,
                            lookup: &mut HashMap<Vec<u32>, usize>,
                            queue: &mut VecDeque<usize>| {
            if lookup.contains_key(&key) {
                return;
            }
            let id = found.len();
            let mut conjugates: Vec<Vec<u32>> = Vec::new();
            for x in 0..n {
                let mut c: Vec<u32> = key.iter().map(|&h| g.conj(x, h)).collect();
                c.sort_unstable();
                if !lookup.contains_key(&c) {
                    lookup.insert(c.clone(), id);
                    conjugates.push(c);
                }
            }
            conjugates.sort();
            found.push((conjugates[0].clone(), conjugates));
            queue.push_back(id);
        };

        // seed with the trivial subgroup and every cyclic subgroup
        register(vec![0], &mut found, &mut lookup, &mut queue);
        for x in 0..n {
            let key = g.closure(&[x]);
            register(key, &mut found, &mut lookup, &mut queue);
        }
        while let Some(id) = queue.pop_front() {
            let rep = found[id].0.clone();
            let rep_gens = super::group::small_generators(g, &rep);
            // <H, x> only depends on the coset xH
            let mut seen = vec![false; n as usize];
            for &h in &rep {
                seen[h as usize] = true;
            }
            for x in 0..n {
                if seen[x as usize] {
                    continue;
                }
                for &h in &rep {
                    seen[g.mul(x, h) as usize] = true;
                }
                let mut gens = rep_gens.clone();
                gens.push(x);
                let key = g.closure(&gens);
                register(key, &mut found, &mut lookup, &mut queue);
            }
        }

        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&a, &b| {
            let (ka, kb) = (&found[a].0, &found[b].0);
            ka.len().cmp(&kb.len()).then_with(|| ka.cmp(kb))
        });
        let mut renumber = vec![0usize; found.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        for id in lookup.values_mut() {
            *id = renumber[*id];
        }

        let mut classes = Vec::with_capacity(found.len());
        let mut subgroups = Vec::new();
        for &old in &order {
            let (key, conjugates) = &found[old];
            let representative = Subgroup::from_sorted_elements(&group, key.clone());
            let normalizer_order = representative.normalizer().order();
            let class_size = g.order() / normalizer_order;
            if class_size != conjugates.len() {
                return Err(Error::Invariant(format!(
                    "class of {representative:?}: {} conjugates but normalizer index {class_size}",
                    conjugates.len()
                )));
            }
            classes.push(SubgroupClass {
                weyl_order: normalizer_order / representative.order(),
                index_in_parent: representative.index(),
                class_size,
                normalizer_order,
                representative,
            });
            subgroups.extend(conjugates.iter().map(|c| (c.clone(), renumber[old])));
        }
        subgroups.sort();
        Ok(SubgroupLattice { group, classes, subgroups, lookup })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, class: usize) -> &Subgroup {
        &self.classes[class].representative
    }

    /// Index of the class of the whole group (always the last one).
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn subgroup_count(&self) -> usize {
        self.subgroups.len()
    }

    /// Every subgroup as (sorted element key, class index), sorted by key.
    pub fn all_subgroups(&self) -> &[(Vec<u32>, usize)] {
        &self.subgroups
    }

    /// Class of a subgroup given by its sorted element key.
    pub fn class_of_key(&self, key: &[u32]) -> Option<usize> {
        self.lookup.get(key).copied()
    }

    /// Class of an arbitrary subgroup, which may live in a different but
    /// containing parent object.
    pub fn descriptors(&self) -> Vec<ClassDescriptor> {
        self.classes.iter().enumerate().map(|(i, c)| c.descriptor(i)).collect()
    }

    pub fn class_of(&self, h: &Subgroup) -> Result<usize> {
        let key = if h.parent().same_as(&self.group) {
            h.elements().to_vec()
        } else {
            h.transport(&self.group)?.elements().to_vec()
        };
        self.class_of_key(&key)
            .ok_or_else(|| Error::Invariant(format!("subgroup {h:?} missing from the lattice")))
    }
}

/// The conjugacy classes of subgroups of `g` in basis order.
pub fn subgroup_classes(g: &Arc<PermGroup>, bound: usize) -> Result<Vec<SubgroupClass>> {
    Ok(SubgroupLattice::with_bound(g.clone(), bound)?.classes)
}

fn check_member(g: &PermGroup, h: &Subgroup) -> Result<()> {
    if h.parent().same_as(g) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{h:?} is not a subgroup of {}", g.spec())))
    }
}

/// True iff some `x ∈ G` has `x H x⁻¹ = K`.
pub fn is_conjugate(g: &PermGroup, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    check_member(g, h)?;
    check_member(g, k)?;
    if h.order() != k.order() {
        return Ok(false);
    }
    Ok((0..g.order() as u32).any(|x| h.generators().iter().all(|&s| k.contains(g.conj(x, s)))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Minimal element of `K g H`.
    pub representative: u32,
    pub size: usize,
}

/// The `K`-`H` double cosets of `G`, ordered by representative.
pub fn double_cosets(g: &PermGroup, k: &Subgroup, h: &Subgroup) -> Result<Vec<DoubleCoset>> {
    check_member(g, k)?;
    check_member(g, h)?;
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() as u32 {
        if seen[x as usize] {
            continue;
        }
        let mut size = 0;
        for &a in k.elements() {
            let ax = g.mul(a, x);
            for &b in h.elements() {
                let y = g.mul(ax, b) as usize;
                if !seen[y] {
                    seen[y] = true;
                    size += 1;
                }
            }
        }
        out.push(DoubleCoset { representative: x, size });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::parse::group_from_spec;
    use crate::permgrp::perm::Perm;

    fn lattice(spec: &str) -> SubgroupLattice {
        SubgroupLattice::new(Arc::new(group_from_spec(spec).unwrap())).unwrap()
    }

    fn sub(g: &Arc<PermGroup>, gens: &[&[usize]]) -> Subgroup {
        let perms: Vec<Perm> =
            gens.iter().map(|c| Perm::from_cycles(g.degree(), &[c.to_vec()]).unwrap()).collect();
        Subgroup::from_perms(g, &perms).unwrap()
    }

    #[test]
    fn class_counts() {
        assert_eq!(lattice("Sym(1)").len(), 1);
        assert_eq!(lattice("Sym(2)").len(), 2);
        assert_eq!(lattice("Sym(3)").len(), 4);
        assert_eq!(lattice("Sym(4)").len(), 11);
        assert_eq!(lattice("Alt(4)").len(), 5);
        assert_eq!(lattice("Alt(5)").len(), 9);
        assert_eq!(lattice("Dihedral(4)").len(), 8);
    }

    #[test]
    fn sym3_has_six_subgroups() {
        let l = lattice("Sym(3)");
        let total: usize = l.classes().iter().map(|c| c.class_size).sum();
        assert_eq!(total, 6);
        assert_eq!(l.subgroup_count(), 6);
        let orders: Vec<usize> = l.classes().iter().map(|c| c.representative.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn class_data_is_consistent() {
        let l = lattice("Sym(4)");
        for c in l.classes() {
            assert_eq!(c.class_size * c.normalizer_order, 24);
            assert_eq!(c.weyl_order * c.representative.order(), c.normalizer_order);
            assert_eq!(c.index_in_parent * c.representative.order(), 24);
            // representative is the minimal conjugate
            for x in 0..24 {
                assert!(c.representative.conjugate(x).elements() >= c.representative.elements());
            }
        }
        assert_eq!(l.classes()[0].representative.order(), 1);
        assert_eq!(l.representative(l.top()).order(), 24);
    }

    #[test]
    fn conjugacy() {
        let s3 = Arc::new(group_from_spec("Sym(3)").unwrap());
        let a = sub(&s3, &[&[1, 2]]);
        let b = sub(&s3, &[&[1, 3]]);
        assert!(is_conjugate(&s3, &a, &b).unwrap());
        assert!(is_conjugate(&s3, &a, &a).unwrap());

        let s4 = Arc::new(group_from_spec("Sym(4)").unwrap());
        let t = sub(&s4, &[&[1, 2]]);
        let dt = Subgroup::from_perms(&s4, &[Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap()])
            .unwrap();
        assert!(!is_conjugate(&s4, &t, &dt).unwrap());
        assert!(matches!(is_conjugate(&s4, &a, &t), Err(Error::Domain(_))));
    }

    #[test]
    fn double_coset_examples() {
        let s3 = Arc::new(group_from_spec("Sym(3)").unwrap());
        let t = sub(&s3, &[&[1, 2]]);
        let mut sizes: Vec<usize> = double_cosets(&s3, &t, &t).unwrap().iter().map(|d| d.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let whole = Subgroup::whole(&s3);
        let dc = double_cosets(&s3, &whole, &t).unwrap();
        assert_eq!(dc, vec![DoubleCoset { representative: 0, size: 6 }]);

        let s4 = Arc::new(group_from_spec("Sym(4)").unwrap());
        let a4 = sub(&s4, &[&[1, 2, 3], &[2, 3, 4]]);
        let s3in4 = sub(&s4, &[&[1, 2], &[1, 2, 3]]);
        assert_eq!(a4.order(), 12);
        assert_eq!(s3in4.order(), 6);
        let dc = double_cosets(&s4, &a4, &s3in4).unwrap();
        assert_eq!(dc, vec![DoubleCoset { representative: 0, size: 24 }]);
    }

    #[test]
    fn bound_applies() {
        let g = Arc::new(group_from_spec("Sym(4)").unwrap());
        assert!(matches!(SubgroupLattice::with_bound(g, 20), Err(Error::Resource(_))));
    }

    #[test]
    fn alternating_groups_have_no_small_index_subgroups() {
        let a5 = lattice("Alt(5)");
        let min_index = a5.classes().iter().map(|c| c.index_in_parent).filter(|&i| i > 1).min();
        assert_eq!(min_index, Some(5));
        let a4 = lattice("Alt(4)");
        let min_index = a4.classes().iter().map(|c| c.index_in_parent).filter(|&i| i > 1).min();
        assert_eq!(min_index, Some(3));
    }
}
