//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use burnside_core::bisetcat::{
    category_basis, compose, evaluate_into, res_tr_by_double_cosets, CatMorphism, PairLA,
};
use burnside_core::burnside::{
    res_tr_formula_into, restrict_into, transfer, BurnsideElement, BurnsideRing,
};
use burnside_core::filtration::{t_class, Filtration, Stage};
use burnside_core::intlattice::{contains, saturation_contains, sublattice_index, AbelianInvariants, SublatticeIndex};
use burnside_core::permgrp::{GroupHom, PermGroup, Subgroup, SubgroupLattice};
use burnside_core::Result;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Checker {
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, expected: T, what: &str) {
        let ok = got == expected;
        self.check(ok, format!("{what}: got {got:?}, expected {expected:?}"));
    }
}

fn inv(rank: usize, torsion: &[i64]) -> AbelianInvariants {
    AbelianInvariants { rank, torsion: torsion.to_vec() }
}

fn quotients(f: &Filtration, ns: std::ops::RangeInclusive<usize>) -> Result<Vec<AbelianInvariants>> {
    ns.map(|n| f.quotient(Stage::Finite(n))).collect()
}

fn scaled(v: &BurnsideElement, k: i64) -> Vec<i64> {
    v.coeffs().iter().map(|c| c * k).collect()
}

fn sym2(c: &mut Checker) -> Result<()> {
    let r = ring("Sym(2)");
    c.eq(r.rank(), 2, "classes of Σ₂");
    let f = Filtration::new(r.clone());
    c.eq(f.quotient(Stage::Finite(1))?, inv(2, &[]), "A(Σ₂)/I₁");
    for n in 2..=6 {
        c.eq(f.quotient(Stage::Finite(n))?, inv(1, &[]), &format!("A(Σ₂)/I_{n}"));
    }
    c.eq(f.quotient(Stage::Infinity)?, inv(1, &[]), "A(Σ₂)/I");
    c.eq(f.stabilization_index()?, 2, "stabilization of Σ₂");
    Ok(())
}

fn sym3(c: &mut Checker) -> Result<()> {
    let r = ring("Sym(3)");
    let g = r.group().clone();
    let f = Filtration::new(r.clone());
    c.eq(quotients(&f, 1..=3)?, vec![inv(4, &[]), inv(2, &[]), inv(1, &[])], "A(Σ₃)/I_n, n = 1..3");
    c.eq(f.stabilization_index()?, 3, "stabilization of Σ₃");

    let whole = Subgroup::whole(&g);
    let a3 = sub(&g, &["(1 2 3)"]);
    let s2 = sub(&g, &["(1 2)"]);

    // sign p: Σ₃ → Σ₂ and t₂ ∈ A(Σ₂)
    let c2 = grp("Sym(2)");
    let ring2 = BurnsideRing::new(c2.clone())?;
    let t2 = t_class(&ring2, &Subgroup::whole(&c2), &Subgroup::trivial(&c2))?;
    let gens: Vec<u32> = ["(1 2 3)", "(1 2)"].iter().map(|s| sub(&g, &[s]).generators()[0]).collect();
    let p = GroupHom::from_generator_images(&g, &c2, &gens, &[0, 1])?;
    c.eq(restrict_into(&r, &p, &t2)?, t_class(&r, &whole, &a3)?, "p*(t₂) = t_{A₃}");

    // t₂ in the Burnside ring of ⟨(1 2)⟩ ≤ Σ₃, transferred up
    let ring_h = BurnsideRing::of_subgroup(&s2)?;
    let hg = ring_h.group().clone();
    let t2h = t_class(&ring_h, &Subgroup::whole(&hg), &Subgroup::trivial(&hg))?;
    let expected = &t_class(&r, &whole, &Subgroup::trivial(&g))? - &(2 * &t_class(&r, &whole, &s2)?);
    c.eq(transfer(&r, &s2, &t2h)?, expected, "tr(t₂) = t_e − 2·t_{Σ₂}");
    Ok(())
}

fn sym4(c: &mut Checker) -> Result<()> {
    let r = ring("Sym(4)");
    let g = r.group().clone();
    c.eq(r.rank(), 11, "classes of Σ₄");
    let f = Filtration::new(r.clone());
    c.eq(
        quotients(&f, 1..=4)?,
        vec![inv(11, &[]), inv(3, &[]), inv(1, &[3]), inv(1, &[])],
        "A(Σ₄)/I_n, n = 1..4",
    );
    c.eq(f.stabilization_index()?, 4, "stabilization of Σ₄");
    let (i3, i4) = (f.ideal(3)?, f.ideal(4)?);
    c.eq(sublattice_index(&i3, &i4)?, SublatticeIndex::Finite(3), "[I₄:I₃]");
    let t4 = t_class(&r, &Subgroup::whole(&g), &sub(&g, &["(1 2 3)", "(1 2)"]))?;
    c.check(contains(&i3, &scaled(&t4, 3))?, "3·t₄ ∈ I₃");
    c.check(!contains(&i3, t4.coeffs())?, "t₄ ∉ I₃");
    Ok(())
}

fn alt5(c: &mut Checker) -> Result<()> {
    let r = ring("Alt(5)");
    let g = r.group().clone();
    c.eq(r.rank(), 9, "classes of A₅");
    let f = Filtration::new(r.clone());
    c.eq(
        quotients(&f, 1..=6)?,
        vec![inv(9, &[]), inv(5, &[]), inv(3, &[3]), inv(3, &[]), inv(1, &[5]), inv(1, &[])],
        "A(A₅)/I_n, n = 1..6",
    );
    let (i4, i5, full) = (f.ideal(4)?, f.ideal(5)?, f.augmentation_ideal()?);
    c.eq(sublattice_index(&i5, &full)?, SublatticeIndex::Finite(5), "[I:I₅]");
    let whole = Subgroup::whole(&g);
    let td5 = t_class(&r, &whole, &sub(&g, &["(1 2 3 4 5)", "(2 5)(3 4)"]))?;
    c.check(contains(&i5, &scaled(&td5, 5))?, "5·t_{D₅} ∈ I₅");
    c.check(!contains(&i5, td5.coeffs())?, "t_{D₅} ∉ I₅");
    let ta4 = t_class(&r, &whole, &sub(&g, &["(1 2 3)", "(1 2)(3 4)"]))?;
    c.check(!saturation_contains(&i4, ta4.coeffs())?, "t_{A₄} ∉ sat(I₄)");
    Ok(())
}

fn sym5(c: &mut Checker) -> Result<()> {
    let r = ring("Sym(5)");
    let g = r.group().clone();
    let ra5 = ring("Alt(5)");
    let a5 = ra5.group().clone();
    let tb = t_class(&r, &Subgroup::whole(&g), &sub(&g, &["(1 2 3 4 5)", "(2 3 5 4)"]))?;
    let incl = GroupHom::inclusion(&a5, &g)?;
    let td5 = t_class(&ra5, &Subgroup::whole(&a5), &sub(&a5, &["(1 2 3 4 5)", "(2 5)(3 4)"]))?;
    c.eq(restrict_into(&ra5, &incl, &tb)?, td5, "res(t_B) = t_{D₅}");
    let f = Filtration::new(r.clone());
    c.check(!contains(&f.ideal(5)?, tb.coeffs())?, "t_B ∉ I₅(Σ₅)");
    c.check(f.ideal(6)? == f.augmentation_ideal()?, "I₆(Σ₅) = I(Σ₅)");
    c.eq(f.stabilization_index()?, 6, "stabilization of Σ₅");
    Ok(())
}

fn p_groups(c: &mut Checker) -> Result<()> {
    for (spec, p) in P_GROUPS {
        let f = Filtration::new(ring(spec));
        let order = f.ring().group().order();
        for n in 1..p {
            c.eq(f.ideal(n)?.rank(), 0, &format!("rank I_{n}({spec})"));
        }
        c.check(f.ideal(p)? == f.augmentation_ideal()?, format!("I_{p}({spec}) = I"));
        for n in [p, p + 1, order] {
            c.eq(f.quotient(Stage::Finite(n))?, inv(1, &[]), &format!("A/I_{n} for {spec}"));
        }
    }
    Ok(())
}

fn corollary(c: &mut Checker) -> Result<()> {
    for spec in SUITE {
        let f = Filtration::new(ring(spec));
        let n = f.ring().group().order();
        c.check(f.ideal(n)? == f.augmentation_ideal()?, format!("I_|G|({spec}) = I"));
    }
    Ok(())
}

fn double_cosets(c: &mut Checker) -> Result<()> {
    for spec in ["Sym(3)", "Sym(4)", "Alt(4)", "Dihedral(4)", Q8, "Alt(5)", "Sym(5)"] {
        let r = ring(spec);
        let g = r.group().clone();
        for k in r.lattice().classes().iter().map(|cl| &cl.representative) {
            let ring_k = BurnsideRing::of_subgroup(k)?;
            let incl = GroupHom::inclusion(ring_k.group(), &g)?;
            for h in r.lattice().classes().iter().map(|cl| &cl.representative) {
                let direct = restrict_into(&ring_k, &incl, &r.transitive(h)?)?;
                let formula = res_tr_formula_into(&ring_k, &g, k, h)?;
                c.check(direct == formula, format!("{spec}: K = {k:?}, H = {h:?}"));
            }
        }
    }
    Ok(())
}

fn rational_steps(c: &mut Checker) -> Result<()> {
    for (spec, n, expected) in [("Sym(2)", 2, false), ("Sym(3)", 3, false), ("Alt(5)", 5, false), ("Sym(4)", 4, true)] {
        c.eq(Filtration::new(ring(spec)).rational_step(n)?, expected, &format!("rational step {spec}, n = {n}"));
    }
    Ok(())
}

fn all_subgroups(g: &Arc<PermGroup>) -> Result<Vec<Subgroup>> {
    let lattice = SubgroupLattice::new(g.clone())?;
    lattice.all_subgroups().iter().map(|(key, _)| Subgroup::from_elements(g, key.clone())).collect()
}

fn category(c: &mut Checker) -> Result<()> {
    let triv = grp("Sym(1)");
    for spec in ["Sym(3)", "Sym(4)", "Alt(5)"] {
        let k = grp(spec);
        let classes = SubgroupLattice::new(k.clone())?.len();
        c.eq(category_basis(&triv, &k)?.len(), classes, &format!("rank A(e, {spec})"));
    }

    // unit laws on all basis pairs between small groups
    let unit_groups: Vec<_> = ["Sym(2)", "Sym(3)", "Cyclic(4)"].iter().map(|s| grp(s)).collect();
    for a in &unit_groups {
        for b in &unit_groups {
            for p in category_basis(a, b)? {
                let f = CatMorphism::basis(&p);
                c.check(compose(&CatMorphism::identity(b), &f)? == f, format!("id ∘ {f}"));
                c.check(compose(&f, &CatMorphism::identity(a))? == f, format!("{f} ∘ id"));
            }
        }
    }

    // associativity on every chain of basis pairs through Σ₂ and Σ₃
    let assoc_groups: Vec<_> = ["Sym(2)", "Sym(3)"].iter().map(|s| grp(s)).collect();
    let basis = |a: &Arc<PermGroup>, b: &Arc<PermGroup>| -> Result<Vec<CatMorphism>> {
        Ok(category_basis(a, b)?.iter().map(CatMorphism::basis).collect())
    };
    for g1 in &assoc_groups {
        for g2 in &assoc_groups {
            for g3 in &assoc_groups {
                for g4 in &assoc_groups {
                    let (fs, gs, hs) = (basis(g1, g2)?, basis(g2, g3)?, basis(g3, g4)?);
                    for f in &fs {
                        for g in &gs {
                            let gf = compose(g, f)?;
                            for h in &hs {
                                let left = compose(h, &gf)?;
                                let right = compose(&compose(h, g)?, f)?;
                                c.check(left == right, format!("({h}) ∘ ({g}) ∘ ({f})"));
                            }
                        }
                    }
                }
            }
        }
    }

    // res ∘ tr against the double coset formula
    for spec in ["Sym(3)", "Sym(4)"] {
        let g = grp(spec);
        let subs = all_subgroups(&g)?;
        let transfers = subs.iter().map(CatMorphism::transfer).collect::<Result<Vec<_>>>()?;
        let restrictions = subs
            .iter()
            .map(|k| CatMorphism::restriction(&g, &Arc::new(k.to_group())))
            .collect::<Result<Vec<_>>>()?;
        for (k, res) in subs.iter().zip(&restrictions) {
            for (h, (_, tr)) in subs.iter().zip(&transfers) {
                let (_, _, oracle) = res_tr_by_double_cosets(&g, k, h)?;
                c.check(compose(res, tr)? == oracle, format!("{spec}: res_{k:?} ∘ tr_{h:?}"));
            }
        }
    }

    // evaluate(f ∘ g, x) = evaluate(f, evaluate(g, x)) on seeded random triples
    let pool: Vec<Arc<BurnsideRing>> = ["Sym(1)", "Sym(2)", "Sym(3)", "Cyclic(4)", C2XC2].iter().map(|s| ring(s)).collect();
    let mut bases: Vec<Vec<Vec<PairLA>>> = Vec::new();
    for a in &pool {
        bases.push(pool.iter().map(|b| category_basis(a.group(), b.group())).collect::<Result<_>>()?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random_morphism = |rng: &mut ChaCha8Rng, a: usize, b: usize| -> Result<CatMorphism> {
        let mut m = CatMorphism::zero(pool[a].group(), pool[b].group());
        for _ in 0..rng.gen_range(1..=3) {
            let pairs = &bases[a][b];
            let p = &pairs[rng.gen_range(0..pairs.len())];
            m = m.checked_add(&CatMorphism::basis(p).checked_scale(rng.gen_range(-3..=3))?)?;
        }
        Ok(m)
    };
    for trial in 0..100 {
        let (a, b, d) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
        let g = random_morphism(&mut rng, a, b)?;
        let f = random_morphism(&mut rng, b, d)?;
        let coeffs = (0..pool[a].rank()).map(|_| rng.gen_range(-4..=4)).collect();
        let x = pool[a].element(coeffs)?;
        let lhs = evaluate_into(&pool[d], &compose(&f, &g)?, &x)?;
        let rhs = evaluate_into(&pool[d], &f, &evaluate_into(&pool[b], &g, &x)?)?;
        c.check(lhs == rhs, format!("trial {trial}: f = {f}, g = {g}, x = {x}"));
    }
    Ok(())
}

type Criterion = fn(&mut Checker) -> Result<()>;

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("Σ₂ filtration table", sym2),
        ("Σ₃ filtration table and the two identities", sym3),
        ("Σ₄ filtration table and t₄", sym4),
        ("A₅ filtration table and t_{D₅}", alt5),
        ("Σ₅ restriction of t_B and stabilization", sym5),
        ("p-groups stabilize at p", p_groups),
        ("I_|G| = I on the suite", corollary),
        ("double coset formula against orbit decomposition", double_cosets),
        ("rational step checks", rational_steps),
        ("Burnside category laws", category),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut checker = Checker::default();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut checker)));
        let secs = start.elapsed().as_secs_f64();
        let problem = match outcome {
            Err(_) => Some("panicked".to_string()),
            Ok(Err(e)) => Some(format!("error: {e}")),
            Ok(Ok(())) if !checker.failures.is_empty() => Some(format!(
                "{} of {} checks failed; first: {}",
                checker.failures.len(),
                checker.checks,
                checker.failures[0]
            )),
            Ok(Ok(())) => None,
        };
        match problem {
            None => println!("criterion {:>2} PASS  {name} ({} checks, {secs:.2}s)", i + 1, checker.checks),
            Some(p) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {p} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
