use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::group::{small_generators, PermGroup, Subgroup};
use crate::error::{Error, Result};

/// Default bound on source and target orders for [`enumerate_homs`].
pub const DEFAULT_HOM_BOUND: usize = 120;

/// A homomorphism between permutation groups, stored as a full element map
/// that has been checked exhaustively.
#[derive(Clone)]
pub struct GroupHom {
    source: Arc<PermGroup>,
    target: Arc<PermGroup>,
    generators: Vec<u32>,
    images: Vec<u32>,
    map: Vec<u32>,
}

impl GroupHom {
    /// The unique homomorphism sending `generators[i] ↦ images[i]`, if any.
    /// `generators` must generate the source.
    pub fn from_generator_images(
        source: &Arc<PermGroup>,
        target: &Arc<PermGroup>,
        generators: &[u32],
        images: &[u32],
    ) -> Result<GroupHom> {
        let map = extend(source, target, generators, images)
            .ok_or_else(|| Error::Invalid("generator images do not define a homomorphism".into()))?;
        let hom = GroupHom {
            source: source.clone(),
            target: target.clone(),
            generators: generators.to_vec(),
            images: images.to_vec(),
            map,
        };
        hom.verify()?;
        Ok(hom)
    }

    /// Wraps a full element map after verifying it exhaustively.
    pub fn from_map(source: &Arc<PermGroup>, target: &Arc<PermGroup>, map: Vec<u32>) -> Result<GroupHom> {
        if map.len() != source.order() || map.iter().any(|&m| m as usize >= target.order()) {
            return Err(Error::Invalid("element map has the wrong shape".into()));
        }
        let generators = small_generators(source, &(0..source.order() as u32).collect::<Vec<_>>());
        let images = generators.iter().map(|&g| map[g as usize]).collect();
        let hom = GroupHom { source: source.clone(), target: target.clone(), generators, images, map };
        hom.verify()?;
        Ok(hom)
    }

    pub fn identity(g: &Arc<PermGroup>) -> GroupHom {
        GroupHom::from_map(g, g, (0..g.order() as u32).collect()).expect("identity is a homomorphism")
    }

    pub fn trivial(source: &Arc<PermGroup>, target: &Arc<PermGroup>) -> GroupHom {
        GroupHom::from_map(source, target, vec![0; source.order()]).expect("trivial map is a homomorphism")
    }

    /// Inclusion of `source` into `target` by equality of permutations.
    pub fn inclusion(source: &Arc<PermGroup>, target: &Arc<PermGroup>) -> Result<GroupHom> {
        let map = source
            .elements()
            .iter()
            .map(|p| {
                target
                    .index_of(p)
                    .ok_or_else(|| Error::Domain(format!("{p} is not in {}", target.spec())))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupHom::from_map(source, target, map)
    }

    /// `c_g(h) = g⁻¹ h g` on all of `G`.
    pub fn conjugation(g: &Arc<PermGroup>, x: u32) -> GroupHom {
        let xi = g.inv(x);
        let map = (0..g.order() as u32).map(|h| g.conj(xi, h)).collect();
        GroupHom::from_map(g, g, map).expect("conjugation is a homomorphism")
    }

    pub fn source(&self) -> &Arc<PermGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        &self.target
    }

    /// Generators of the source used to present this map.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if !first.target.same_as(&self.source) {
            return Err(Error::Domain("homomorphisms are not composable".into()));
        }
        let map = first.map.iter().map(|&x| self.apply(x)).collect();
        GroupHom::from_map(&first.source, &self.target, map)
    }

    /// Post-composition with the inner automorphism `y ↦ x y x⁻¹` of the target.
    pub fn conjugated_by(&self, x: u32) -> GroupHom {
        let t = &self.target;
        GroupHom {
            source: self.source.clone(),
            target: t.clone(),
            generators: self.generators.clone(),
            images: self.images.iter().map(|&y| t.conj(x, y)).collect(),
            map: self.map.iter().map(|&y| t.conj(x, y)).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y as usize] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Sorted source indices of `α⁻¹(H)` for a target element set `h`.
    pub fn preimage(&self, h: &Subgroup) -> Result<Subgroup> {
        if !h.parent().same_as(&self.target) {
            return Err(Error::Domain("subgroup does not live in the target".into()));
        }
        let elements = (0..self.source.order() as u32).filter(|&x| h.contains(self.apply(x))).collect();
        Ok(Subgroup::from_sorted_elements(&self.source, elements))
    }

    pub fn image(&self) -> Subgroup {
        let mut elements = self.map.clone();
        elements.sort_unstable();
        elements.dedup();
        Subgroup::from_sorted_elements(&self.target, elements)
    }

    /// Restriction of this map to a subgroup of the source, viewed as a group.
    pub fn restrict_to(&self, sub: &Arc<PermGroup>) -> Result<GroupHom> {
        let incl = GroupHom::inclusion(sub, &self.source)?;
        self.after(&incl)
    }

    /// Corestriction onto a group containing the image.
    pub fn corestrict(&self, target: &Arc<PermGroup>) -> Result<GroupHom> {
        let map = self
            .map
            .iter()
            .map(|&y| {
                target
                    .index_of(self.target.element(y))
                    .ok_or_else(|| Error::Domain("image is not contained in the new target".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupHom::from_map(&self.source, target, map)
    }

    fn verify(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        let n = s.order() as u32;
        for x in 0..n {
            for y in 0..n {
                if self.apply(s.mul(x, y)) != t.mul(self.apply(x), self.apply(y)) {
                    return Err(Error::Invalid(format!(
                        "map is not multiplicative at ({}, {})",
                        s.element(x),
                        s.element(y)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &GroupHom) -> bool {
        self.source.same_as(&other.source) && self.target.same_as(&other.target) && self.map == other.map
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom[")?;
        for (i, (&g, &y)) in self.generators.iter().zip(&self.images).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", self.source.element(g), self.target.element(y))?;
        }
        write!(f, "]")
    }
}

/// Extends generator images along a breadth-first word expansion; `None`
/// when two words for the same element disagree.
fn extend(source: &PermGroup, target: &PermGroup, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; source.order()];
    map[0] = 0;
    let mut order = vec![0u32];
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for (&s, &img) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let fy = target.mul(map[x as usize], img);
            match map[y as usize] {
                UNSET => {
                    map[y as usize] = fy;
                    order.push(y);
                }
                v if v != fy => return None,
                _ => {}
            }
        }
    }
    if order.len() != source.order() {
        return None;
    }
    Some(map)
}

/// One representative per `G`-conjugacy class of homomorphisms `L → G`.
///
/// Candidates are all assignments of generator images with compatible
/// element orders; each survivor is verified and reduced to the
/// conjugate with the lexicographically smallest generator-image tuple.
pub fn enumerate_homs(l: &Arc<PermGroup>, g: &Arc<PermGroup>) -> Result<Vec<GroupHom>> {
    enumerate_homs_bounded(l, g, DEFAULT_HOM_BOUND)
}

pub fn enumerate_homs_bounded(l: &Arc<PermGroup>, g: &Arc<PermGroup>, bound: usize) -> Result<Vec<GroupHom>> {
    if l.order() > bound || g.order() > bound {
        return Err(Error::Resource(format!(
            "homomorphism enumeration refused: orders {} and {} exceed the bound {bound}",
            l.order(),
            g.order()
        )));
    }
    let gens = small_generators(l, &(0..l.order() as u32).collect::<Vec<_>>());
    let choices: Vec<Vec<u32>> = gens
        .iter()
        .map(|&s| {
            let ord = l.element_order(s);
            (0..g.order() as u32).filter(|&y| ord.is_multiple_of(g.element_order(y))).collect()
        })
        .collect();

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut reps: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    loop {
        let images: Vec<u32> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if !seen.contains(&images) {
            if let Some(map) = extend(l, g, &gens, &images) {
                let mut orbit: Vec<Vec<u32>> = (0..g.order() as u32)
                    .map(|x| images.iter().map(|&y| g.conj(x, y)).collect())
                    .collect();
                orbit.sort();
                orbit.dedup();
                let canonical = orbit[0].clone();
                seen.extend(orbit);
                let map = if canonical == images {
                    map
                } else {
                    extend(l, g, &gens, &canonical).expect("conjugate of a homomorphism")
                };
                reps.push((canonical, map));
            }
        }
        // odometer over the candidate lists
        let mut i = 0;
        loop {
            if i == pick.len() {
                reps.sort();
                return reps
                    .into_iter()
                    .map(|(images, map)| {
                        let hom = GroupHom {
                            source: l.clone(),
                            target: g.clone(),
                            generators: gens.clone(),
                            images,
                            map,
                        };
                        hom.verify().map(|_| hom)
                    })
                    .collect();
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}
