//! The filtration `0 = I₁(G) ⊆ I₂(G) ⊆ … ⊆ I(G)` of the augmentation ideal
//! of `A(G)`, where `I_n(G)` is spanned by the classes
//! `t_K^H = [H:K]·[G/H] − [G/K]` over nested pairs `K ≤ H` with `[H:K] ≤ n`,
//! and the quotients `A(G)/I_n(G)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::intlattice::{hnf_basis, quotient_invariants, AbelianInvariants, LatticeBasis};
use crate::permgrp::{PermGroup, Subgroup};

/// A filtration stage `n`, or the limit, realised as `n = |G|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Finite(usize),
    Infinity,
}

impl Stage {
    pub fn resolve(self, group: &PermGroup) -> usize {
        match self {
            Stage::Finite(n) => n,
            Stage::Infinity => group.order(),
        }
    }
}

impl FromStr for Stage {
    type Err = Error;
    fn from_str(s: &str) -> Result<Stage> {
        match s.trim() {
            "inf" | "infinity" => Ok(Stage::Infinity),
            t => match t.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(Stage::Finite(n)),
                _ => Err(Error::Parse(format!("stage must be a positive integer or \"inf\", got {s:?}"))),
            },
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Finite(n) => write!(f, "{n}"),
            Stage::Infinity => write!(f, "inf"),
        }
    }
}

/// `t_K^H` for `K ≤ H ≤ G`.
pub fn t_class(ring: &Arc<BurnsideRing>, h: &Subgroup, k: &Subgroup) -> Result<BurnsideElement> {
    if !h.parent().same_as(ring.group()) || !k.parent().same_as(ring.group()) {
        return Err(Error::Domain("subgroups must live in the ring's group".into()));
    }
    if !k.is_subgroup_of(h) {
        return Err(Error::Domain(format!("{k:?} is not contained in {h:?}")));
    }
    let lattice = ring.lattice();
    let v = t_vector(ring.rank(), lattice.class_of(h)?, lattice.class_of(k)?, h.order() / k.order());
    ring.element(v)
}

fn t_vector(rank: usize, h_class: usize, k_class: usize, index: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    v[h_class] += index as i64;
    v[k_class] -= 1;
    v
}

/// A nested pair of classes `(H) ⊇ (K)` realised by some `K ≤ H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NestedPair {
    pub index: usize,
    pub h_class: usize,
    pub k_class: usize,
}

/// Precomputed nested pairs of a group, shared by all filtration queries.
pub struct Filtration {
    ring: Arc<BurnsideRing>,
    pairs: Vec<NestedPair>,
}

impl Filtration {
    pub fn new(ring: Arc<BurnsideRing>) -> Filtration {
        let lattice = ring.lattice();
        let mut pairs = Vec::new();
        for (h_class, cls) in lattice.classes().iter().enumerate() {
            let h = &cls.representative;
            for (key, k_class) in lattice.all_subgroups() {
                if h.order() % key.len() == 0 && key.iter().all(|&e| h.contains(e)) {
                    pairs.push(NestedPair { index: h.order() / key.len(), h_class, k_class: *k_class });
                }
            }
        }
        // t_K^H only depends on the classes of H and K
        pairs.sort();
        pairs.dedup();
        Filtration { ring, pairs }
    }

    pub fn ring(&self) -> &Arc<BurnsideRing> {
        &self.ring
    }

    pub fn pairs(&self) -> &[NestedPair] {
        &self.pairs
    }

    /// The distinct relative indices `[H:K] > 1`, ascending; `I_n` can only
    /// change when `n` crosses one of them.
    pub fn jump_candidates(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pairs.iter().map(|p| p.index).filter(|&i| i > 1).collect();
        v.dedup();
        v
    }

    pub fn generators(&self, n: usize) -> Vec<Vec<i64>> {
        let rank = self.ring.rank();
        self.pairs
            .iter()
            .filter(|p| p.index > 1 && p.index <= n)
            .map(|p| t_vector(rank, p.h_class, p.k_class, p.index))
            .collect()
    }

    pub fn ideal(&self, n: usize) -> Result<LatticeBasis> {
        hnf_basis(self.ring.rank(), &self.generators(n))
    }

    /// `I(G)`, spanned by `t_H^G` over all classes `H`.
    pub fn augmentation_ideal(&self) -> Result<LatticeBasis> {
        let rank = self.ring.rank();
        let top = self.ring.lattice().top();
        let gens: Vec<Vec<i64>> = self
            .ring
            .lattice()
            .classes()
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != top)
            .map(|(c, cls)| t_vector(rank, top, c, cls.index_in_parent))
            .collect();
        hnf_basis(rank, &gens)
    }

    pub fn quotient(&self, stage: Stage) -> Result<AbelianInvariants> {
        let n = stage.resolve(self.ring.group());
        quotient_invariants(self.ring.rank(), &self.ideal(n)?)
    }

    /// Least `n` with `I_n(G) = I(G)`.
    pub fn stabilization_index(&self) -> Result<usize> {
        let full = self.augmentation_ideal()?;
        if full.rank() == 0 {
            return Ok(1);
        }
        for n in self.jump_candidates() {
            if self.ideal(n)? == full {
                return Ok(n);
            }
        }
        Err(Error::Invariant("the filtration never reached the augmentation ideal".into()))
    }

    /// Whether `I_{n−1}(G) ⊆ I_n(G)` is a rational isomorphism.
    pub fn rational_step(&self, n: usize) -> Result<bool> {
        if n < 2 {
            return Err(Error::Domain("the rational step check needs n >= 2".into()));
        }
        Ok(self.ideal(n - 1)?.rank() == self.ideal(n)?.rank())
    }

    /// Stages `1..=max_n` with lattices and quotients.
    pub fn table(&self, max_n: usize) -> Result<FiltrationTable> {
        let jumps = self.jump_candidates();
        let mut stages = Vec::with_capacity(max_n);
        let mut current: Option<(usize, LatticeBasis)> = None;
        for n in 1..=max_n {
            let effective = jumps.iter().copied().filter(|&j| j <= n).max().unwrap_or(1);
            let fresh = !matches!(&current, Some((m, _)) if *m == effective);
            if fresh {
                current = Some((effective, self.ideal(effective)?));
            }
            let ideal = current.as_ref().expect("set above").1.clone();
            let quotient = quotient_invariants(self.ring.rank(), &ideal)?;
            stages.push(FiltrationStage { n, ideal, quotient });
        }
        Ok(FiltrationTable {
            group: self.ring.group().clone(),
            stages,
            stabilization_index: self.stabilization_index()?,
            augmentation_ideal: self.augmentation_ideal()?,
        })
    }
}

pub fn ideal_lattice(ring: &Arc<BurnsideRing>, n: usize) -> Result<LatticeBasis> {
    Filtration::new(ring.clone()).ideal(n)
}

pub fn augmentation_ideal(ring: &Arc<BurnsideRing>) -> Result<LatticeBasis> {
    Filtration::new(ring.clone()).augmentation_ideal()
}

/// Invariants of `A(G)/I_n(G)`.
pub fn sp_invariants(ring: &Arc<BurnsideRing>, stage: Stage) -> Result<AbelianInvariants> {
    Filtration::new(ring.clone()).quotient(stage)
}

pub fn stabilization_index(ring: &Arc<BurnsideRing>) -> Result<usize> {
    Filtration::new(ring.clone()).stabilization_index()
}

pub fn rational_step_check(ring: &Arc<BurnsideRing>, n: usize) -> Result<bool> {
    Filtration::new(ring.clone()).rational_step(n)
}

#[derive(Clone, Debug)]
pub struct FiltrationStage {
    pub n: usize,
    pub ideal: LatticeBasis,
    pub quotient: AbelianInvariants,
}

#[derive(Clone, Debug)]
pub struct FiltrationTable {
    pub group: Arc<PermGroup>,
    pub stages: Vec<FiltrationStage>,
    pub stabilization_index: usize,
    pub augmentation_ideal: LatticeBasis,
}

impl FiltrationTable {
    pub fn to_doc(&self, classes: Vec<crate::permgrp::ClassDescriptor>) -> FiltrationTableDoc {
        FiltrationTableDoc {
            group: self.group.spec(),
            classes,
            stages: self
                .stages
                .iter()
                .map(|s| StageDoc { n: s.n, ideal_rank: s.ideal.rank(), quotient: s.quotient.clone() })
                .collect(),
            stabilization: self.stabilization_index,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageDoc {
    pub n: usize,
    pub ideal_rank: usize,
    pub quotient: AbelianInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationTableDoc {
    pub group: String,
    pub classes: Vec<crate::permgrp::ClassDescriptor>,
    pub stages: Vec<StageDoc>,
    pub stabilization: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::augmentation;
    use crate::intlattice::contains;
    use crate::permgrp::{group_from_spec, parse_perm};

    fn ring(spec: &str) -> Arc<BurnsideRing> {
        BurnsideRing::new(Arc::new(group_from_spec(spec).unwrap())).unwrap()
    }

    fn sub(g: &Arc<PermGroup>, gens: &[&str]) -> Subgroup {
        let perms: Vec<_> = gens.iter().map(|s| parse_perm(g.degree(), s).unwrap()).collect();
        Subgroup::from_perms(g, &perms).unwrap()
    }

    #[test]
    fn t_class_examples() {
        let s3 = ring("Sym(3)");
        let g = s3.group().clone();
        let whole = Subgroup::whole(&g);
        let t3 = t_class(&s3, &whole, &sub(&g, &["(1 2)"])).unwrap();
        assert_eq!(t3.coeffs(), &[0, -1, 0, 3]);
        assert!(t_class(&s3, &whole, &whole).unwrap().is_zero());
        assert_eq!(augmentation(&t3), 0);
        assert!(t_class(&s3, &sub(&g, &["(1 2)"]), &sub(&g, &["(1 3)"])).is_err());

        // basis order is (e, Σ₂), so t₂ = 2·[Σ₂/Σ₂] − [Σ₂/e] reads (−1, 2)
        let s2 = ring("Sym(2)");
        let g = s2.group().clone();
        let t2 = t_class(&s2, &Subgroup::whole(&g), &Subgroup::trivial(&g)).unwrap();
        assert_eq!(t2.coeffs(), &[-1, 2]);
    }

    #[test]
    fn small_ideals() {
        let s2 = ring("Sym(2)");
        assert_eq!(ideal_lattice(&s2, 1).unwrap().rank(), 0);
        let i2 = ideal_lattice(&s2, 2).unwrap();
        assert_eq!(i2.rows(), &[vec![1, -2]]);
        assert_eq!(i2, augmentation_ideal(&s2).unwrap());
        assert_eq!(augmentation_ideal(&ring("Sym(1)")).unwrap().rank(), 0);
        assert_eq!(augmentation_ideal(&ring("Sym(3)")).unwrap().rank(), 3);
        assert_eq!(stabilization_index(&ring("Sym(1)")).unwrap(), 1);
    }

    #[test]
    fn sym3_ranks() {
        let f = Filtration::new(ring("Sym(3)"));
        let ranks: Vec<usize> = (1..=3).map(|n| f.quotient(Stage::Finite(n)).unwrap().rank).collect();
        assert_eq!(ranks, vec![4, 2, 1]);
        assert_eq!(f.stabilization_index().unwrap(), 3);
        assert!(!f.rational_step(3).unwrap());
        assert!(f.rational_step(1).is_err());
    }

    #[test]
    fn augmentation_ideal_is_the_kernel() {
        for spec in ["Sym(3)", "Alt(4)", "Dihedral(4)"] {
            let r = ring(spec);
            let i = augmentation_ideal(&r).unwrap();
            assert_eq!(i.rank(), r.rank() - 1);
            // saturated: A(G)/I(G) is torsion free
            assert_eq!(quotient_invariants(r.rank(), &i).unwrap(), AbelianInvariants::free(1));
            for row in i.rows() {
                assert_eq!(augmentation(&r.element(row.clone()).unwrap()), 0);
            }
            // every augmentation-zero combination [G/H] − [G:H]·1 lies in it
            for c in 0..r.rank() {
                let mut v = vec![0; r.rank()];
                v[c] += 1;
                v[r.lattice().top()] -= r.lattice().classes()[c].index_in_parent as i64;
                assert!(contains(&i, &v).unwrap());
            }
        }
    }

    #[test]
    fn table_reuses_stages() {
        let f = Filtration::new(ring("Sym(4)"));
        let t = f.table(6).unwrap();
        assert_eq!(t.stages.len(), 6);
        assert_eq!(t.stabilization_index, 4);
        for s in &t.stages {
            assert_eq!(s.ideal, f.ideal(s.n).unwrap());
        }
        let q: Vec<String> = t.stages.iter().map(|s| s.quotient.to_string()).collect();
        assert_eq!(q, ["Z^11", "Z^3", "Z + Z/3", "Z", "Z", "Z"]);
    }

    #[test]
    fn stage_parsing() {
        assert_eq!("inf".parse::<Stage>().unwrap(), Stage::Infinity);
        assert_eq!("4".parse::<Stage>().unwrap(), Stage::Finite(4));
        assert!("0".parse::<Stage>().is_err());
        assert!("x".parse::<Stage>().is_err());
    }
}
