//! The finite global Burnside category.
//!
//! A morphism from `G` to `K` is an integer combination of pairs `(L, α)`
//! with `L ≤ K` and `α: L → G`, taken up to `(K × G)`-conjugacy; the pair
//! acts on Burnside rings as `tr_L^K ∘ α*`. Composition goes through the
//! biset model `K ×_{(L,α)} G`: bisets are multiplied by the balanced
//! product and the result is split back into orbits.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::burnside::{restrict_into, transfer, BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::permgrp::{
    double_cosets, enumerate_homs_bounded, group_from_spec_bounded, parse_perm, GroupHom, PermGroup,
    Subgroup, SubgroupLattice, DEFAULT_HOM_BOUND,
};

/// Largest biset a single composition may build.
pub const BISET_SIZE_BOUND: usize = 100_000;

/// Canonical key of a basis pair.
///
/// `l` holds the sorted element indices of `L` in `K` and `alpha[i]` is
/// the image in `G` of `l[i]`. Among all `(K × G)`-conjugates the key with
/// the smallest `(|L|, l, alpha)` is chosen.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey {
    pub order: usize,
    pub l: Vec<u32>,
    pub alpha: Vec<u32>,
}

fn canonical_key(k: &PermGroup, g: &PermGroup, l: &[u32], alpha: &[u32]) -> PairKey {
    let mut best_l: Option<Vec<u32>> = None;
    let mut twisted: Vec<Vec<u32>> = Vec::new();
    for x in 0..k.order() as u32 {
        let mut conj: Vec<(u32, u32)> = l.iter().zip(alpha).map(|(&e, &a)| (k.conj(x, e), a)).collect();
        conj.sort_unstable();
        let key: Vec<u32> = conj.iter().map(|p| p.0).collect();
        match &best_l {
            Some(b) if key > *b => continue,
            Some(b) if key == *b => {}
            _ => {
                best_l = Some(key);
                twisted.clear();
            }
        }
        twisted.push(conj.into_iter().map(|p| p.1).collect());
    }
    twisted.sort_unstable();
    twisted.dedup();
    let mut best_alpha: Option<Vec<u32>> = None;
    for a in &twisted {
        for y in 0..g.order() as u32 {
            let c: Vec<u32> = a.iter().map(|&v| g.conj(y, v)).collect();
            if best_alpha.as_ref().is_none_or(|b| c < *b) {
                best_alpha = Some(c);
            }
        }
    }
    let l = best_l.expect("K is nonempty");
    PairKey { order: l.len(), l, alpha: best_alpha.expect("G is nonempty") }
}

/// A basis pair `(L ≤ K, α: L → G)` in canonical form.
#[derive(Clone)]
pub struct PairLA {
    source: Arc<PermGroup>,
    target: Arc<PermGroup>,
    key: PairKey,
    l: Subgroup,
    alpha: GroupHom,
}

impl PairLA {
    /// Canonicalises `(L, α)`; `alpha` must have source `L` viewed as a group.
    pub fn new(source: &Arc<PermGroup>, target: &Arc<PermGroup>, l: &Subgroup, alpha: &GroupHom) -> Result<PairLA> {
        if !l.parent().same_as(target) {
            return Err(Error::Domain("L must be a subgroup of the target".into()));
        }
        if !alpha.target().same_as(source) {
            return Err(Error::Domain("α must land in the source group".into()));
        }
        let lg = alpha.source();
        if lg.order() != l.order() {
            return Err(Error::Domain("α is not defined on L".into()));
        }
        // both element lists are sorted permutations, so positions agree
        for (i, &e) in l.elements().iter().enumerate() {
            if lg.element(i as u32) != target.element(e) {
                return Err(Error::Domain("α is not defined on L".into()));
            }
        }
        let key = canonical_key(target, source, l.elements(), alpha.map());
        PairLA::from_key(source, target, key)
    }

    fn from_key(source: &Arc<PermGroup>, target: &Arc<PermGroup>, key: PairKey) -> Result<PairLA> {
        let l = Subgroup::from_sorted_elements(target, key.l.clone());
        let lg = Arc::new(l.to_group());
        let alpha = GroupHom::from_map(&lg, source, key.alpha.clone())?;
        Ok(PairLA { source: source.clone(), target: target.clone(), key, l, alpha })
    }

    pub fn source(&self) -> &Arc<PermGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        &self.target
    }

    pub fn key(&self) -> &PairKey {
        &self.key
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.l
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    fn term_doc(&self, coeff: i64) -> TermDoc {
        let gens = self.l.generators();
        TermDoc {
            l_order: self.l.order(),
            l_gens: gens.iter().map(|&x| self.target.element(x).to_string()).collect(),
            alpha_images: gens
                .iter()
                .map(|&x| {
                    let pos = self.key.l.binary_search(&x).expect("generator lies in L");
                    self.source.element(self.key.alpha[pos]).to_string()
                })
                .collect(),
            coeff,
        }
    }
}

impl fmt::Debug for PairLA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.term_doc(1);
        let maps: Vec<String> = t.l_gens.iter().zip(&t.alpha_images).map(|(a, b)| format!("{a}->{b}")).collect();
        let body = if maps.is_empty() { "L = e".to_string() } else { maps.join(", ") };
        write!(f, "(L order {}: {body})", t.l_order)
    }
}

impl PartialEq for PairLA {
    fn eq(&self, other: &PairLA) -> bool {
        self.key == other.key && self.source.same_as(&other.source) && self.target.same_as(&other.target)
    }
}

/// Canonical basis pairs of `A(G, K)`, ordered by key.
pub fn category_basis(g: &Arc<PermGroup>, k: &Arc<PermGroup>) -> Result<Vec<PairLA>> {
    category_basis_bounded(g, k, DEFAULT_HOM_BOUND)
}

pub fn category_basis_bounded(g: &Arc<PermGroup>, k: &Arc<PermGroup>, bound: usize) -> Result<Vec<PairLA>> {
    if k.order() > bound || g.order() > bound {
        return Err(Error::Resource(format!(
            "category basis refused: orders {} and {} exceed the bound {bound}",
            g.order(),
            k.order()
        )));
    }
    let lattice = SubgroupLattice::with_bound(k.clone(), bound)?;
    let mut keys = BTreeSet::new();
    for class in lattice.classes() {
        let l = &class.representative;
        let lg = Arc::new(l.to_group());
        // homs are only reduced up to G; N_K(L) is handled by canonicalisation
        for hom in enumerate_homs_bounded(&lg, g, bound)? {
            keys.insert(canonical_key(k, g, l.elements(), hom.map()));
        }
    }
    keys.into_iter().map(|key| PairLA::from_key(g, k, key)).collect()
}

/// A finite set with commuting left `K`- and right `G`-actions.
#[derive(Clone)]
pub struct Biset {
    left_group: Arc<PermGroup>,
    right_group: Arc<PermGroup>,
    size: usize,
    /// `left[k * size + s] = k·s`
    left: Vec<u32>,
    /// `right[s * |G| + g] = s·g`
    right: Vec<u32>,
}

impl Biset {
    /// Validates the action tables: both are actions, they commute and the
    /// right action is free.
    pub fn new(
        left_group: &Arc<PermGroup>,
        right_group: &Arc<PermGroup>,
        size: usize,
        left: Vec<u32>,
        right: Vec<u32>,
    ) -> Result<Biset> {
        let (nk, ng) = (left_group.order(), right_group.order());
        if size == 0 {
            return Err(Error::Invalid("a biset must be nonempty".into()));
        }
        if left.len() != nk * size || right.len() != size * ng {
            return Err(Error::Invalid("action tables have the wrong shape".into()));
        }
        if left.iter().chain(&right).any(|&s| s as usize >= size) {
            return Err(Error::Invalid("action table entry out of range".into()));
        }
        let b = Biset { left_group: left_group.clone(), right_group: right_group.clone(), size, left, right };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        let (kg, gg) = (&*self.left_group, &*self.right_group);
        let bad = |what: &str| Err(Error::Invalid(format!("biset {what}")));
        for s in 0..self.size as u32 {
            if self.act_left(0, s) != s || self.act_right(s, 0) != s {
                return bad("identity does not act trivially");
            }
            for x in 0..kg.order() as u32 {
                for &y in &gens_of(kg) {
                    if self.act_left(kg.mul(x, y), s) != self.act_left(x, self.act_left(y, s)) {
                        return bad("left table is not an action");
                    }
                }
                for &y in &gens_of(gg) {
                    if self.act_left(x, self.act_right(s, y)) != self.act_right(self.act_left(x, s), y) {
                        return bad("actions do not commute");
                    }
                }
            }
            for x in 0..gg.order() as u32 {
                for &y in &gens_of(gg) {
                    if self.act_right(s, gg.mul(x, y)) != self.act_right(self.act_right(s, x), y) {
                        return bad("right table is not an action");
                    }
                }
                if x != 0 && self.act_right(s, x) == s {
                    return bad("right action is not free");
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn left_group(&self) -> &Arc<PermGroup> {
        &self.left_group
    }

    pub fn right_group(&self) -> &Arc<PermGroup> {
        &self.right_group
    }

    #[inline]
    pub fn act_left(&self, k: u32, s: u32) -> u32 {
        self.left[k as usize * self.size + s as usize]
    }

    #[inline]
    pub fn act_right(&self, s: u32, g: u32) -> u32 {
        self.right[s as usize * self.right_group.order() + g as usize]
    }

    pub fn disjoint_union(&self, other: &Biset) -> Result<Biset> {
        if !self.left_group.same_as(&other.left_group) || !self.right_group.same_as(&other.right_group) {
            return Err(Error::Domain("bisets over different groups".into()));
        }
        let (n, m) = (self.size, other.size);
        let size = n + m;
        let shift = n as u32;
        let mut left = Vec::with_capacity(self.left_group.order() * size);
        for k in 0..self.left_group.order() {
            left.extend_from_slice(&self.left[k * n..(k + 1) * n]);
            left.extend(other.left[k * m..(k + 1) * m].iter().map(|&s| s + shift));
        }
        let mut right = self.right.clone();
        right.extend(other.right.iter().map(|&s| s + shift));
        Ok(Biset { left_group: self.left_group.clone(), right_group: self.right_group.clone(), size, left, right })
    }
}

fn gens_of(g: &PermGroup) -> Vec<u32> {
    g.generators().iter().filter_map(|p| g.index_of(p)).filter(|&x| x != 0).collect()
}

/// `K ×_{(L,α)} G`, with elements `(r, g)` for left coset representatives `r` of `L`.
pub fn pair_to_biset(p: &PairLA) -> Biset {
    key_to_biset(&p.target, &p.source, &p.key)
}

fn key_to_biset(k: &Arc<PermGroup>, g: &Arc<PermGroup>, key: &PairKey) -> Biset {
    const NONE: u32 = u32::MAX;
    let (nk, ng) = (k.order(), g.order());
    let mut coset = vec![NONE; nk];
    let mut reps = Vec::new();
    for x in 0..nk as u32 {
        if coset[x as usize] == NONE {
            for &l in &key.l {
                coset[k.mul(x, l) as usize] = reps.len() as u32;
            }
            reps.push(x);
        }
    }
    let size = reps.len() * ng;
    let mut left = vec![0u32; nk * size];
    for x in 0..nk as u32 {
        for (i, &r) in reps.iter().enumerate() {
            let y = k.mul(x, r);
            let j = coset[y as usize];
            let l = k.mul(k.inv(reps[j as usize]), y);
            let a = key.alpha[key.l.binary_search(&l).expect("r'⁻¹xr lies in L")];
            for h in 0..ng as u32 {
                left[x as usize * size + i * ng + h as usize] = j * ng as u32 + g.mul(a, h);
            }
        }
    }
    let mut right = vec![0u32; size * ng];
    for i in 0..reps.len() {
        for h in 0..ng as u32 {
            for y in 0..ng as u32 {
                right[(i * ng + h as usize) * ng + y as usize] = (i * ng) as u32 + g.mul(h, y);
            }
        }
    }
    Biset { left_group: k.clone(), right_group: g.clone(), size, left, right }
}

/// Splits a biset into `(K × G)`-orbits and reads off the pair of each orbit
/// from the stabilizer of a point, which is the graph of `α: L → G`.
pub fn biset_decompose(b: &Biset) -> Result<CatMorphism> {
    let (k, g) = (&b.left_group, &b.right_group);
    let (kgens, ggens) = (gens_of(k), gens_of(g));
    let mut seen = vec![false; b.size];
    let mut terms: BTreeMap<PairKey, i64> = BTreeMap::new();
    let mut owner: HashMap<u32, u32> = HashMap::new();
    for start in 0..b.size as u32 {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            let next = kgens.iter().map(|&x| b.act_left(x, s)).chain(ggens.iter().map(|&y| b.act_right(s, y)));
            for t in next.collect::<Vec<_>>() {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        owner.clear();
        for y in 0..g.order() as u32 {
            if owner.insert(b.act_right(start, y), y).is_some() {
                return Err(Error::Invariant("right action of the biset is not free".into()));
            }
        }
        let mut l = Vec::new();
        let mut alpha = Vec::new();
        for x in 0..k.order() as u32 {
            if let Some(&y) = owner.get(&b.act_left(x, start)) {
                l.push(x);
                alpha.push(y);
            }
        }
        let key = canonical_key(k, g, &l, &alpha);
        *terms.entry(key).or_insert(0) += 1;
    }
    Ok(CatMorphism { source: g.clone(), target: k.clone(), terms })
}

/// `S ×_K T` for `S` a `(L', K)`-biset and `T` a `(K, G)`-biset.
pub fn balanced_product(s: &Biset, t: &Biset) -> Result<Biset> {
    if !s.right_group.same_as(&t.left_group) {
        return Err(Error::Domain("bisets are not composable".into()));
    }
    let k = &s.right_group;
    let nk = k.order();
    let orbits = s.size / nk;
    let size = orbits
        .checked_mul(t.size)
        .filter(|&n| n <= BISET_SIZE_BOUND)
        .ok_or_else(|| Error::Resource(format!("balanced product exceeds {BISET_SIZE_BOUND} elements")))?;
    // every s is uniquely σ_j·x for a right K-orbit representative σ_j
    const NONE: (u32, u32) = (u32::MAX, u32::MAX);
    let mut orb = vec![NONE; s.size];
    let mut reps = Vec::with_capacity(orbits);
    for p in 0..s.size as u32 {
        if orb[p as usize] == NONE {
            for x in 0..nk as u32 {
                orb[s.act_right(p, x) as usize] = (reps.len() as u32, x);
            }
            reps.push(p);
        }
    }
    let lp = &s.left_group;
    let ng = t.right_group.order();
    let tn = t.size as u32;
    let mut left = vec![0u32; lp.order() * size];
    for z in 0..lp.order() as u32 {
        for (i, &sigma) in reps.iter().enumerate() {
            let (j, x) = orb[s.act_left(z, sigma) as usize];
            for q in 0..tn {
                left[z as usize * size + i * t.size + q as usize] = j * tn + t.act_left(x, q);
            }
        }
    }
    let mut right = vec![0u32; size * ng];
    for i in 0..orbits {
        for q in 0..t.size {
            for y in 0..ng as u32 {
                right[(i * t.size + q) * ng + y as usize] = (i * t.size) as u32 + t.act_right(q as u32, y);
            }
        }
    }
    Ok(Biset { left_group: lp.clone(), right_group: t.right_group.clone(), size, left, right })
}

/// An element of `A(G, K)`: a morphism from `source = G` to `target = K`.
#[derive(Clone)]
pub struct CatMorphism {
    source: Arc<PermGroup>,
    target: Arc<PermGroup>,
    terms: BTreeMap<PairKey, i64>,
}

impl CatMorphism {
    pub fn zero(source: &Arc<PermGroup>, target: &Arc<PermGroup>) -> CatMorphism {
        CatMorphism { source: source.clone(), target: target.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(p: &PairLA) -> CatMorphism {
        let mut m = CatMorphism::zero(&p.source, &p.target);
        m.terms.insert(p.key.clone(), 1);
        m
    }

    /// The pair `(L, α)` for arbitrary, not yet canonical, data.
    pub fn pair(source: &Arc<PermGroup>, target: &Arc<PermGroup>, l: &Subgroup, alpha: &GroupHom) -> Result<CatMorphism> {
        Ok(CatMorphism::basis(&PairLA::new(source, target, l, alpha)?))
    }

    pub fn identity(g: &Arc<PermGroup>) -> CatMorphism {
        let key = PairKey { order: g.order(), l: (0..g.order() as u32).collect(), alpha: (0..g.order() as u32).collect() };
        let mut m = CatMorphism::zero(g, g);
        m.terms.insert(key, 1);
        m
    }

    /// `res^G_K = (K, K ↪ G)` in `A(G, K)`, for `K` given as a group.
    pub fn restriction(g: &Arc<PermGroup>, k: &Arc<PermGroup>) -> Result<CatMorphism> {
        let incl = GroupHom::inclusion(k, g)?;
        CatMorphism::pair(g, k, &Subgroup::whole(k), &incl)
    }

    /// `tr_H^G = (H ≤ G, id_H)` in `A(H, G)`, with `H` viewed as a group.
    pub fn transfer(h: &Subgroup) -> Result<(Arc<PermGroup>, CatMorphism)> {
        let g = h.parent();
        let hg = Arc::new(h.to_group());
        let id = GroupHom::identity(&hg);
        let m = CatMorphism::pair(&hg, g, h, &id)?;
        Ok((hg, m))
    }

    /// The pair `(e, trivial)`.
    pub fn free(source: &Arc<PermGroup>, target: &Arc<PermGroup>) -> CatMorphism {
        let mut m = CatMorphism::zero(source, target);
        m.terms.insert(PairKey { order: 1, l: vec![0], alpha: vec![0] }, 1);
        m
    }

    pub fn source(&self) -> &Arc<PermGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<PairKey, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &PairLA) -> i64 {
        self.terms.get(&p.key).copied().unwrap_or(0)
    }

    pub fn pairs(&self) -> Result<Vec<(PairLA, i64)>> {
        self.terms
            .iter()
            .map(|(key, &c)| Ok((PairLA::from_key(&self.source, &self.target, key.clone())?, c)))
            .collect()
    }

    fn same_hom_set(&self, other: &CatMorphism) -> Result<()> {
        if self.source.same_as(&other.source) && self.target.same_as(&other.target) {
            Ok(())
        } else {
            Err(Error::Domain("morphisms live in different groups A(G, K)".into()))
        }
    }

    fn add_term(&mut self, key: PairKey, c: i64) -> Result<()> {
        let e = self.terms.entry(key).or_insert(0);
        *e = e.checked_add(c).ok_or(Error::Overflow)?;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CatMorphism) -> Result<CatMorphism> {
        self.same_hom_set(other)?;
        let mut out = self.clone();
        for (key, &c) in &other.terms {
            out.add_term(key.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, k: i64) -> Result<CatMorphism> {
        let mut out = CatMorphism::zero(&self.source, &self.target);
        for (key, &c) in &self.terms {
            out.add_term(key.clone(), c.checked_mul(k).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn to_doc(&self) -> CatMorphismDoc {
        CatMorphismDoc {
            source: self.source.spec(),
            target: self.target.spec(),
            terms: self
                .terms
                .iter()
                .map(|(key, &c)| {
                    PairLA::from_key(&self.source, &self.target, key.clone())
                        .expect("stored keys are valid pairs")
                        .term_doc(c)
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &CatMorphismDoc, bound: usize) -> Result<CatMorphism> {
        let g = Arc::new(group_from_spec_bounded(&doc.source, bound)?);
        let k = Arc::new(group_from_spec_bounded(&doc.target, bound)?);
        let mut out = CatMorphism::zero(&g, &k);
        for t in &doc.terms {
            if t.l_gens.len() != t.alpha_images.len() {
                return Err(Error::Invalid("L_gens and alpha_images differ in length".into()));
            }
            let gens = t.l_gens.iter().map(|s| parse_perm(k.degree(), s)).collect::<Result<Vec<_>>>()?;
            let imgs = t.alpha_images.iter().map(|s| parse_perm(g.degree(), s)).collect::<Result<Vec<_>>>()?;
            let l = Subgroup::from_perms(&k, &gens)?;
            if l.order() != t.l_order {
                return Err(Error::Invalid(format!("L_gens generate a group of order {}, not {}", l.order(), t.l_order)));
            }
            let lg = Arc::new(l.to_group());
            let gi = gens.iter().map(|p| lg.index_of(p).expect("generator lies in L")).collect::<Vec<_>>();
            let ii = imgs
                .iter()
                .map(|p| g.index_of(p).ok_or_else(|| Error::Domain(format!("{p} is not in {}", g.spec()))))
                .collect::<Result<Vec<_>>>()?;
            let alpha = GroupHom::from_generator_images(&lg, &g, &gi, &ii)?;
            out.add_term(PairLA::new(&g, &k, &l, &alpha)?.key, t.coeff)?;
        }
        Ok(out)
    }
}

impl PartialEq for CatMorphism {
    fn eq(&self, other: &CatMorphism) -> bool {
        self.same_hom_set(other).is_ok() && self.terms == other.terms
    }
}

impl fmt::Debug for CatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let doc = self.to_doc();
        let parts: Vec<String> = doc
            .terms
            .iter()
            .map(|t| {
                let maps: Vec<String> =
                    t.l_gens.iter().zip(&t.alpha_images).map(|(a, b)| format!("{a}->{b}")).collect();
                let body = if maps.is_empty() { "L = e".to_string() } else { maps.join(", ") };
                format!("{}*(L order {}: {body})", t.coeff, t.l_order)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    #[serde(rename = "L_order")]
    pub l_order: usize,
    #[serde(rename = "L_gens")]
    pub l_gens: Vec<String>,
    pub alpha_images: Vec<String>,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatMorphismDoc {
    pub source: String,
    pub target: String,
    pub terms: Vec<TermDoc>,
}

/// `f ∘ g` for `g ∈ A(G, K)` and `f ∈ A(K, L')`.
pub fn compose(f: &CatMorphism, g: &CatMorphism) -> Result<CatMorphism> {
    if !f.source.same_as(&g.target) {
        return Err(Error::Domain(format!(
            "cannot compose: {} is not {}",
            f.source.spec(),
            g.target.spec()
        )));
    }
    let mut out = CatMorphism::zero(&g.source, &f.target);
    let g_bisets: Vec<(Biset, i64)> =
        g.terms.iter().map(|(key, &c)| (key_to_biset(&g.target, &g.source, key), c)).collect();
    for (fkey, &fc) in &f.terms {
        let s = key_to_biset(&f.target, &f.source, fkey);
        for (t, gc) in &g_bisets {
            let c = fc.checked_mul(*gc).ok_or(Error::Overflow)?;
            for (key, &m) in biset_decompose(&balanced_product(&s, t)?)?.terms.iter() {
                out.add_term(key.clone(), m.checked_mul(c).ok_or(Error::Overflow)?)?;
            }
        }
    }
    Ok(out)
}

/// The action of `f ∈ A(G, K)` on `x ∈ A(G)`, building `A(K)` on the fly.
pub fn evaluate(f: &CatMorphism, x: &BurnsideElement) -> Result<BurnsideElement> {
    let ring_k = BurnsideRing::with_bound(f.target.clone(), usize::MAX)?;
    evaluate_into(&ring_k, f, x)
}

/// Each basis pair `(L, α)` acts as `tr_L^K ∘ α*`.
pub fn evaluate_into(ring_k: &Arc<BurnsideRing>, f: &CatMorphism, x: &BurnsideElement) -> Result<BurnsideElement> {
    if !x.group().same_as(&f.source) {
        return Err(Error::Domain("element does not live in the source of the morphism".into()));
    }
    if !ring_k.group().same_as(&f.target) {
        return Err(Error::Domain("ring does not belong to the target of the morphism".into()));
    }
    let mut out = ring_k.zero();
    let mut rings: HashMap<Vec<u32>, Arc<BurnsideRing>> = HashMap::new();
    for (key, &c) in &f.terms {
        let l = Subgroup::from_sorted_elements(ring_k.group(), key.l.clone());
        let ring_l = match rings.get(&key.l) {
            Some(r) => r.clone(),
            None => {
                let r = BurnsideRing::of_subgroup(&l)?;
                rings.insert(key.l.clone(), r.clone());
                r
            }
        };
        let alpha = GroupHom::from_map(ring_l.group(), &f.source, key.alpha.clone())?;
        let y = transfer(ring_k, &l, &restrict_into(&ring_l, &alpha, x)?)?;
        let coeffs = out
            .coeffs()
            .iter()
            .zip(y.coeffs())
            .map(|(&a, &b)| b.checked_mul(c).and_then(|b| a.checked_add(b)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        out = ring_k.element(coeffs)?;
    }
    Ok(out)
}

/// `res^G_K ∘ tr_H^G` read off the double coset formula: one pair
/// `(K ∩ gHg⁻¹, l ↦ g⁻¹lg)` per double coset `KgH`. The groups are `H`
/// and `K` viewed as groups in their own right.
pub fn res_tr_by_double_cosets(
    g: &Arc<PermGroup>,
    k: &Subgroup,
    h: &Subgroup,
) -> Result<(Arc<PermGroup>, Arc<PermGroup>, CatMorphism)> {
    let kg = Arc::new(k.to_group());
    let hg = Arc::new(h.to_group());
    let mut out = CatMorphism::zero(&hg, &kg);
    for dc in double_cosets(g, k, h)? {
        let x = dc.representative;
        let meet = k.intersection(&h.conjugate(x));
        let xi = g.inv(x);
        let mut pairs: Vec<(u32, u32)> = meet
            .elements()
            .iter()
            .map(|&e| {
                let in_k = kg.index_of(g.element(e)).expect("K ∩ gHg⁻¹ lies in K");
                let img = hg.index_of(g.element(g.conj(xi, e))).expect("g⁻¹(K ∩ gHg⁻¹)g lies in H");
                (in_k, img)
            })
            .collect();
        pairs.sort_unstable();
        let (l, alpha): (Vec<u32>, Vec<u32>) = pairs.into_iter().unzip();
        out.add_term(canonical_key(&kg, &hg, &l, &alpha), 1)?;
    }
    Ok((hg, kg, out))
}
