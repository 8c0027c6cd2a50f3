//! The Burnside ring `A(G)` of a finite permutation group.
//!
//! Elements are integer vectors over the basis `[G/H]`, one entry per
//! conjugacy class of subgroups in [`SubgroupLattice`] order. Restriction
//! along an arbitrary homomorphism is computed by decomposing the pulled
//! back coset space into orbits; the double coset formula is provided as a
//! separate, independent route to `res ∘ tr`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgrp::{
    double_cosets, group_from_spec_bounded, GroupHom, PermGroup, Subgroup, SubgroupLattice, DEFAULT_ORDER_BOUND,
};

/// `A(G)` together with the subgroup lattice that fixes its basis.
pub struct BurnsideRing {
    lattice: Arc<SubgroupLattice>,
    marks: OnceLock<Vec<Vec<i64>>>,
}

impl BurnsideRing {
    pub fn new(group: Arc<PermGroup>) -> Result<Arc<BurnsideRing>> {
        BurnsideRing::with_bound(group, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(group: Arc<PermGroup>, bound: usize) -> Result<Arc<BurnsideRing>> {
        Ok(BurnsideRing::from_lattice(Arc::new(SubgroupLattice::with_bound(group, bound)?)))
    }

    pub fn from_lattice(lattice: Arc<SubgroupLattice>) -> Arc<BurnsideRing> {
        Arc::new(BurnsideRing { lattice, marks: OnceLock::new() })
    }

    /// `A(H)` for a subgroup viewed as a group in its own right.
    pub fn of_subgroup(h: &Subgroup) -> Result<Arc<BurnsideRing>> {
        BurnsideRing::with_bound(Arc::new(h.to_group()), usize::MAX)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.lattice.group()
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    /// Number of basis elements.
    pub fn rank(&self) -> usize {
        self.lattice.len()
    }

    pub fn zero(self: &Arc<Self>) -> BurnsideElement {
        BurnsideElement { ring: self.clone(), coeffs: vec![0; self.rank()] }
    }

    /// `1 = [G/G]`.
    pub fn one(self: &Arc<Self>) -> BurnsideElement {
        self.basis(self.lattice.top())
    }

    /// `[G/H]` for the class with index `class`.
    pub fn basis(self: &Arc<Self>, class: usize) -> BurnsideElement {
        let mut x = self.zero();
        x.coeffs[class] = 1;
        x
    }

    /// `[G/H] = tr_H^G(1)` for an arbitrary subgroup `H`.
    pub fn transitive(self: &Arc<Self>, h: &Subgroup) -> Result<BurnsideElement> {
        Ok(self.basis(self.lattice.class_of(h)?))
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<i64>) -> Result<BurnsideElement> {
        if coeffs.len() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), found: coeffs.len() });
        }
        Ok(BurnsideElement { ring: self.clone(), coeffs })
    }

    /// Table of marks: `table[L][H] = |(G/H)^L|` over class representatives.
    pub fn mark_table(&self) -> &[Vec<i64>] {
        self.marks.get_or_init(|| {
            let g = self.group();
            let reps: Vec<&Subgroup> = self.lattice.classes().iter().map(|c| &c.representative).collect();
            reps.iter()
                .map(|l| {
                    reps.iter()
                        .map(|h| {
                            // #{x : x⁻¹ L x ⊆ H} / |H|
                            let count = (0..g.order() as u32)
                                .filter(|&x| {
                                    let xi = g.inv(x);
                                    l.generators().iter().all(|&s| h.contains(g.conj(xi, s)))
                                })
                                .count();
                            (count / h.order()) as i64
                        })
                        .collect()
                })
                .collect()
        })
    }

    pub fn from_doc(self: &Arc<Self>, doc: &BurnsideElementDoc) -> Result<BurnsideElement> {
        self.element(doc.coeffs.clone())
    }
}

impl fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({})", self.group().spec())
    }
}

/// An element of `A(G)` in the transitive basis.
#[derive(Clone)]
pub struct BurnsideElement {
    ring: Arc<BurnsideRing>,
    coeffs: Vec<i64>,
}

/// JSON form `{ "group": spec, "coeffs": [...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideElementDoc {
    pub group: String,
    pub coeffs: Vec<i64>,
}

impl BurnsideElement {
    pub fn ring(&self) -> &Arc<BurnsideRing> {
        &self.ring
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.ring.group()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn to_doc(&self) -> BurnsideElementDoc {
        BurnsideElementDoc { group: self.group().spec(), coeffs: self.coeffs.clone() }
    }

    fn same_ring(&self, other: &BurnsideElement) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.group().same_as(other.group()) {
            Ok(())
        } else {
            Err(Error::Domain("elements belong to different Burnside rings".into()))
        }
    }

    fn zip_with(&self, other: &BurnsideElement, f: impl Fn(i64, i64) -> Option<i64>) -> BurnsideElement {
        self.same_ring(other).expect("Burnside ring mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).expect("Burnside coefficient overflow"))
            .collect();
        BurnsideElement { ring: self.ring.clone(), coeffs }
    }

    pub fn scale(&self, k: i64) -> BurnsideElement {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_mul(k).expect("Burnside coefficient overflow"))
            .collect();
        BurnsideElement { ring: self.ring.clone(), coeffs }
    }
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &BurnsideElement) -> bool {
        self.same_ring(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl Eq for BurnsideElement {}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sparse sum such as `2[c3] - [c1]`, where `cN` is the class index.
impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = match (first, c < 0) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            match c.unsigned_abs() {
                1 => write!(f, "{sign}[c{i}]")?,
                a => write!(f, "{sign}{a}[c{i}]")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &BurnsideElement {
    type Output = BurnsideElement;
    fn add(self, rhs: &BurnsideElement) -> BurnsideElement {
        self.zip_with(rhs, i64::checked_add)
    }
}

impl Sub for &BurnsideElement {
    type Output = BurnsideElement;
    fn sub(self, rhs: &BurnsideElement) -> BurnsideElement {
        self.zip_with(rhs, i64::checked_sub)
    }
}

impl Neg for &BurnsideElement {
    type Output = BurnsideElement;
    fn neg(self) -> BurnsideElement {
        self.scale(-1)
    }
}

impl Mul<&BurnsideElement> for i64 {
    type Output = BurnsideElement;
    fn mul(self, rhs: &BurnsideElement) -> BurnsideElement {
        rhs.scale(self)
    }
}

/// Parses the JSON document form, rebuilding the group from its spec.
pub fn element_from_json(json: &str, bound: usize) -> Result<BurnsideElement> {
    let doc: BurnsideElementDoc =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("Burnside element JSON: {e}")))?;
    let group = Arc::new(group_from_spec_bounded(&doc.group, bound)?);
    BurnsideRing::with_bound(group, bound)?.from_doc(&doc)
}

/// Ensures `x` lives in `A(H)` for the subgroup `h` of `ring`'s group.
fn check_subgroup_ring(ring: &BurnsideRing, h: &Subgroup, x: &BurnsideElement) -> Result<()> {
    if !h.parent().same_as(ring.group()) {
        return Err(Error::Domain(format!("{h:?} is not a subgroup of {}", ring.group().spec())));
    }
    let xg = x.group();
    let same = xg.order() == h.order()
        && xg.degree() == ring.group().degree()
        && xg
            .elements()
            .iter()
            .all(|p| ring.group().index_of(p).is_some_and(|i| h.contains(i)));
    if !same {
        return Err(Error::Domain(format!(
            "element lives in A({}), not in the Burnside ring of {h:?}",
            xg.spec()
        )));
    }
    Ok(())
}

/// `tr_H^G`: the additive extension of `[H/K] ↦ [G/K]`.
pub fn transfer(ring: &Arc<BurnsideRing>, h: &Subgroup, x: &BurnsideElement) -> Result<BurnsideElement> {
    check_subgroup_ring(ring, h, x)?;
    let mut out = ring.zero();
    for (k, &c) in x.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        let rep = x.ring.lattice().representative(k);
        let class = ring.lattice().class_of(rep)?;
        out.coeffs[class] = out.coeffs[class].checked_add(c).ok_or(Error::Overflow)?;
    }
    Ok(out)
}

/// `α*: A(G) → A(K)` for `α: K → G`, building `A(K)` on the fly.
pub fn restrict(alpha: &GroupHom, x: &BurnsideElement) -> Result<BurnsideElement> {
    let ring = BurnsideRing::with_bound(alpha.source().clone(), usize::MAX)?;
    restrict_into(&ring, alpha, x)
}

/// `α*` into an existing `A(K)`.
///
/// On a basis element `[G/H]`, `K` acts on the cosets `gH` through `α`;
/// the orbit through `gH` contributes `[K / α⁻¹(gHg⁻¹)]`.
pub fn restrict_into(ring_k: &Arc<BurnsideRing>, alpha: &GroupHom, x: &BurnsideElement) -> Result<BurnsideElement> {
    if !alpha.target().same_as(x.group()) {
        return Err(Error::Domain("element does not live in the target of the homomorphism".into()));
    }
    if !alpha.source().same_as(ring_k.group()) {
        return Err(Error::Domain("ring does not belong to the source of the homomorphism".into()));
    }
    let g = x.group();
    let k = alpha.source();
    let k_gens: Vec<u32> = alpha.generators().iter().map(|&s| alpha.apply(s)).collect();
    let mut out = ring_k.zero();
    for (class, &c) in x.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        let h = x.ring.lattice().representative(class);
        // label left cosets gH
        const NONE: u32 = u32::MAX;
        let mut coset = vec![NONE; g.order()];
        let mut reps = Vec::new();
        for y in 0..g.order() as u32 {
            if coset[y as usize] == NONE {
                let id = reps.len() as u32;
                for &s in h.elements() {
                    coset[g.mul(y, s) as usize] = id;
                }
                reps.push(y);
            }
        }
        let mut visited = vec![false; reps.len()];
        for start in 0..reps.len() {
            if visited[start] {
                continue;
            }
            let mut stack = vec![start];
            visited[start] = true;
            while let Some(cid) = stack.pop() {
                for &a in &k_gens {
                    let next = coset[g.mul(a, reps[cid]) as usize] as usize;
                    if !visited[next] {
                        visited[next] = true;
                        stack.push(next);
                    }
                }
            }
            let rep = reps[start];
            let stab = (0..k.order() as u32)
                .filter(|&e| coset[g.mul(alpha.apply(e), rep) as usize] as usize == start)
                .collect();
            let stab = Subgroup::from_sorted_elements(k, stab);
            let target = ring_k.lattice().class_of(&stab)?;
            out.coeffs[target] = out.coeffs[target].checked_add(c).ok_or(Error::Overflow)?;
        }
    }
    Ok(out)
}

/// `res^G_K(tr_H^G(1))` by the double coset formula,
/// `Σ_{KgH} [K / (K ∩ gHg⁻¹)]`, building `A(K)` on the fly.
pub fn res_tr_formula(g: &Arc<PermGroup>, k: &Subgroup, h: &Subgroup) -> Result<BurnsideElement> {
    let ring_k = BurnsideRing::of_subgroup(k)?;
    res_tr_formula_into(&ring_k, g, k, h)
}

pub fn res_tr_formula_into(
    ring_k: &Arc<BurnsideRing>,
    g: &Arc<PermGroup>,
    k: &Subgroup,
    h: &Subgroup,
) -> Result<BurnsideElement> {
    let mut out = ring_k.zero();
    for dc in double_cosets(g, k, h)? {
        let meet = k.intersection(&h.conjugate(dc.representative));
        let class = ring_k.lattice().class_of(&meet)?;
        out.coeffs[class] += 1;
    }
    Ok(out)
}

/// Product in `A(G)`: `[G/H]·[G/K] = Σ_{HgK} [G / (H ∩ gKg⁻¹)]`.
pub fn multiply(x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
    x.same_ring(y)?;
    let ring = &x.ring;
    let g = ring.group();
    let mut out = ring.zero();
    for (i, &a) in x.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        for (j, &b) in y.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let hi = ring.lattice().representative(i);
            let hj = ring.lattice().representative(j);
            let ab = a.checked_mul(b).ok_or(Error::Overflow)?;
            for dc in double_cosets(g, hi, hj)? {
                let meet = hi.intersection(&hj.conjugate(dc.representative));
                let class = ring.lattice().class_of(&meet)?;
                out.coeffs[class] = out.coeffs[class].checked_add(ab).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(out)
}

/// Ghost coordinates: the number of `L`-fixed points for every class `L`.
pub fn marks(x: &BurnsideElement) -> Vec<i64> {
    let table = x.ring.mark_table();
    table
        .iter()
        .map(|row| row.iter().zip(&x.coeffs).map(|(&m, &c)| m * c).sum())
        .collect()
}

/// Cardinality of the underlying set: `Σ c_H [G:H]`.
pub fn augmentation(x: &BurnsideElement) -> i64 {
    x.ring
        .lattice()
        .classes()
        .iter()
        .zip(&x.coeffs)
        .map(|(cls, &c)| c * cls.index_in_parent as i64)
        .sum()
}
