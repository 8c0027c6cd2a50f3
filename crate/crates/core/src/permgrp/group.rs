use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::perm::Perm;
use crate::error::{Error, Result};

/// Default upper bound on group orders accepted by constructors and
/// subgroup enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 2000;

/// A finite permutation group with its full element list.
///
/// Elements are stored sorted in the lexicographic order of [`Perm`], so
/// element indices are order-preserving and the identity is always index 0.
/// All group arithmetic goes through precomputed multiplication and inverse
/// tables on indices.
pub struct PermGroup {
    degree: usize,
    label: Option<String>,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl PermGroup {
    /// Generates the group on `degree` points from `generators`, failing
    /// with a resource error once more than `bound` elements appear.
    pub fn generate(degree: usize, generators: Vec<Perm>, bound: usize) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::Invalid("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Invalid(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut index: HashMap<Perm, u32> = HashMap::new();
        let mut elements = vec![id.clone()];
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &generators {
                let y = elements[i].compose(s);
                if !index.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(Error::Resource(format!(
                            "group order exceeds the bound {bound}"
                        )));
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        elements.sort();
        for (i, e) in elements.iter().enumerate() {
            *index.get_mut(e).expect("element indexed") = i as u32;
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&elements[a].compose(&elements[b])];
            }
        }
        let inv = elements.iter().map(|e| index[&e.inverse()]).collect();
        Ok(PermGroup {
            degree,
            label: None,
            generators,
            elements,
            index,
            mul,
            inv,
        })
    }

    pub(crate) fn with_label(mut self, label: String) -> PermGroup {
        self.label = Some(label);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub const fn identity(&self) -> u32 {
        0
    }

    /// Index of `a ∘ b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g h g⁻¹`.
    #[inline]
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A group-spec string that reconstructs this group.
    pub fn spec(&self) -> String {
        if let Some(label) = &self.label {
            return label.clone();
        }
        let gens: Vec<String> = if self.generators.iter().all(Perm::is_identity) {
            vec!["(1)".to_string()]
        } else {
            self.generators
                .iter()
                .filter(|g| !g.is_identity())
                .map(Perm::to_string)
                .collect()
        };
        format!("Perm({}; {})", self.degree, gens.join(", "))
    }

    /// True when both groups act on the same points with the same elements.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        std::ptr::eq(self, other) || (self.degree == other.degree && self.elements == other.elements)
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut found = vec![0u32];
        let mut head = 0;
        while head < found.len() {
            let x = found[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    found.push(y);
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// Checks the closure and Lagrange invariants of the element table.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n as u32 {
            if self.mul(a, self.inv(a)) != 0 {
                return Err(Error::Invariant("inverse table is wrong".into()));
            }
            if !n.is_multiple_of(self.element_order(a)) {
                return Err(Error::Invariant(format!(
                    "element order of {} does not divide {n}",
                    self.element(a)
                )));
            }
        }
        for g in &self.generators {
            if self.index_of(g).is_none() {
                return Err(Error::Invariant(format!("generator {g} missing")));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup({}, order {})", self.spec(), self.order())
    }
}

/// A subgroup of a [`PermGroup`], stored as sorted parent element indices.
///
/// Because parent indices are order-preserving, the sorted index tuple is
/// also the canonical key "sorted element tuple" used for comparisons.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<PermGroup>,
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl Subgroup {
    pub fn generated_by(parent: &Arc<PermGroup>, gens: &[u32]) -> Subgroup {
        let elements = parent.closure(gens);
        let generators = small_generators(parent, &elements);
        Subgroup { parent: parent.clone(), elements, generators }
    }

    /// The subgroup generated by explicit permutations, which must lie in `parent`.
    pub fn from_perms(parent: &Arc<PermGroup>, gens: &[Perm]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|p| {
                parent.index_of(p).ok_or_else(|| {
                    Error::Domain(format!("{p} is not an element of {}", parent.spec()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::generated_by(parent, &idx))
    }

    /// Wraps a sorted element list that is already known to be a subgroup.
    pub(crate) fn from_sorted_elements(parent: &Arc<PermGroup>, elements: Vec<u32>) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let generators = small_generators(parent, &elements);
        Subgroup { parent: parent.clone(), elements, generators }
    }

    /// Checks closure of an arbitrary element set before wrapping it.
    pub fn from_elements(parent: &Arc<PermGroup>, mut elements: Vec<u32>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&e| e as usize >= parent.order()) {
            return Err(Error::Domain("element index out of range".into()));
        }
        let sub = Subgroup::from_sorted_elements(parent, elements);
        if parent.closure(&sub.generators) != sub.elements {
            return Err(Error::Domain("element set is not closed under multiplication".into()));
        }
        Ok(sub)
    }

    pub fn whole(parent: &Arc<PermGroup>) -> Subgroup {
        Subgroup::from_sorted_elements(parent, (0..parent.order() as u32).collect())
    }

    pub fn trivial(parent: &Arc<PermGroup>) -> Subgroup {
        Subgroup { parent: parent.clone(), elements: vec![0], generators: Vec::new() }
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Sorted parent indices; doubles as the canonical key.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.generators.iter().map(|&g| self.parent.element(g).clone()).collect()
    }

    pub fn contains(&self, g: u32) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent.same_as(&other.parent) && self.generators.iter().all(|&g| other.contains(g))
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: u32) -> Subgroup {
        let mut elements: Vec<u32> = self.elements.iter().map(|&h| self.parent.conj(g, h)).collect();
        elements.sort_unstable();
        let generators = self.generators.iter().map(|&h| self.parent.conj(g, h)).collect();
        Subgroup { parent: self.parent.clone(), elements, generators }
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements = self.elements.iter().copied().filter(|&e| other.contains(e)).collect();
        Subgroup::from_sorted_elements(&self.parent, elements)
    }

    /// Normalizer in the parent group.
    pub fn normalizer(&self) -> Subgroup {
        let p = &self.parent;
        let elements = (0..p.order() as u32)
            .filter(|&g| self.generators.iter().all(|&h| self.contains(p.conj(g, h))))
            .collect();
        Subgroup::from_sorted_elements(p, elements)
    }

    /// This subgroup as a permutation group in its own right.
    pub fn to_group(&self) -> PermGroup {
        PermGroup::generate(self.parent.degree(), self.generator_perms(), usize::MAX)
            .expect("subgroup of a valid group is valid")
    }

    /// Re-expresses this subgroup inside another group containing it.
    pub fn transport(&self, target: &Arc<PermGroup>) -> Result<Subgroup> {
        Subgroup::from_perms(target, &self.generator_perms())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Subgroup) -> bool {
        self.parent.same_as(&other.parent) && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generator_perms().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> (order {})", self.order())
    }
}

/// Greedy generating set: try elements by decreasing order, keep those
/// that enlarge the span.
pub(crate) fn small_generators(group: &PermGroup, elements: &[u32]) -> Vec<u32> {
    if elements.len() <= 1 {
        return Vec::new();
    }
    let mut candidates: Vec<(usize, u32)> = elements
        .iter()
        .map(|&e| (group.element_order(e), e))
        .collect();
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut gens = Vec::new();
    let mut span = vec![0u32];
    for (_, e) in candidates {
        if span.binary_search(&e).is_ok() {
            continue;
        }
        gens.push(e);
        span = group.closure(&gens);
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}
