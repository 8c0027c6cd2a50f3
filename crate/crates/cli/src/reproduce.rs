//! Worked examples with their expected values, rerun end to end.

use std::fmt::Write as _;
use std::sync::Arc;

use burnside_core::burnside::{restrict_into, transfer, BurnsideRing};
use burnside_core::filtration::{t_class, Filtration, Stage};
use burnside_core::intlattice::{contains, saturation_contains, sublattice_index};
use burnside_core::permgrp::{parse_perm, GroupHom, PermGroup, Subgroup};
use burnside_core::{Error, Result};
use serde::Serialize;

use crate::commands::Context;
use crate::report::Report;

pub const IDS: [&str; 6] = ["s2", "s3", "s4", "a5", "s5", "pgroups"];

#[derive(Serialize)]
struct Item {
    item: String,
    expected: String,
    got: String,
    pass: bool,
}

#[derive(Serialize)]
struct ReproduceDoc {
    id: String,
    pass: bool,
    items: Vec<Item>,
}

#[derive(Default)]
struct Items(Vec<Item>);

impl Items {
    fn add(&mut self, item: impl Into<String>, expected: impl ToString, got: impl ToString) {
        let (expected, got) = (expected.to_string(), got.to_string());
        self.0.push(Item { item: item.into(), pass: expected == got, expected, got });
    }

    fn quotients(&mut self, f: &Filtration, expected: &[&str]) -> Result<()> {
        let name = f.ring().group().spec();
        for (i, e) in expected.iter().enumerate() {
            let n = i + 1;
            self.add(format!("A({name})/I_{n}"), e, f.quotient(Stage::Finite(n))?);
        }
        Ok(())
    }
}

fn sub(g: &Arc<PermGroup>, gens: &[&str]) -> Result<Subgroup> {
    let perms = gens.iter().map(|s| parse_perm(g.degree(), s)).collect::<Result<Vec<_>>>()?;
    Subgroup::from_perms(g, &perms)
}

pub fn reproduce(ctx: &Context, id: &str) -> Result<Report> {
    let mut items = Items::default();
    match id {
        "s2" => {
            let r = ctx.ring("Sym(2)")?;
            items.add("classes of Sym(2)", 2, r.rank());
            let f = Filtration::new(r);
            items.quotients(&f, &["Z^2", "Z", "Z"])?;
            items.add("stabilization", 2, f.stabilization_index()?);
            items.add("rational step at n = 2", false, f.rational_step(2)?);
        }
        "s3" => {
            let r = ctx.ring("Sym(3)")?;
            let g = r.group().clone();
            let f = Filtration::new(r.clone());
            items.quotients(&f, &["Z^4", "Z^2", "Z"])?;
            items.add("stabilization", 3, f.stabilization_index()?);
            items.add("rational step at n = 3", false, f.rational_step(3)?);

            let whole = Subgroup::whole(&g);
            let c2 = ctx.group("Sym(2)")?;
            let r2 = BurnsideRing::with_bound(c2.clone(), ctx.bound)?;
            let t2 = t_class(&r2, &Subgroup::whole(&c2), &Subgroup::trivial(&c2))?;
            let gens = [sub(&g, &["(1 2 3)"])?.generators()[0], sub(&g, &["(1 2)"])?.generators()[0]];
            let sign = GroupHom::from_generator_images(&g, &c2, &gens, &[0, 1])?;
            let a3 = sub(&g, &["(1 2 3)"])?;
            items.add("p*(t_2) = t_{A_3}", t_class(&r, &whole, &a3)?, restrict_into(&r, &sign, &t2)?);

            let s2 = sub(&g, &["(1 2)"])?;
            let rh = BurnsideRing::of_subgroup(&s2)?;
            let hg = rh.group().clone();
            let t2h = t_class(&rh, &Subgroup::whole(&hg), &Subgroup::trivial(&hg))?;
            let expected = &t_class(&r, &whole, &Subgroup::trivial(&g))? - &(2 * &t_class(&r, &whole, &s2)?);
            items.add("tr(t_2) = t_e - 2 t_{Sym(2)}", expected, transfer(&r, &s2, &t2h)?);
        }
        "s4" => {
            let r = ctx.ring("Sym(4)")?;
            let g = r.group().clone();
            items.add("classes of Sym(4)", 11, r.rank());
            let f = Filtration::new(r.clone());
            items.quotients(&f, &["Z^11", "Z^3", "Z + Z/3", "Z"])?;
            items.add("stabilization", 4, f.stabilization_index()?);
            let (i3, i4) = (f.ideal(3)?, f.ideal(4)?);
            items.add("[I_4 : I_3]", 3, sublattice_index(&i3, &i4)?);
            let t4 = t_class(&r, &Subgroup::whole(&g), &sub(&g, &["(1 2 3)", "(1 2)"])?)?;
            let triple: Vec<i64> = t4.coeffs().iter().map(|c| 3 * c).collect();
            items.add("3 t_4 in I_3", true, contains(&i3, &triple)?);
            items.add("t_4 in I_3", false, contains(&i3, t4.coeffs())?);
            items.add("rational step at n = 4", true, f.rational_step(4)?);
        }
        "a5" => {
            let r = ctx.ring("Alt(5)")?;
            let g = r.group().clone();
            items.add("classes of Alt(5)", 9, r.rank());
            let f = Filtration::new(r.clone());
            items.quotients(&f, &["Z^9", "Z^5", "Z^3 + Z/3", "Z^3", "Z + Z/5", "Z"])?;
            let (i4, i5, full) = (f.ideal(4)?, f.ideal(5)?, f.augmentation_ideal()?);
            items.add("[I : I_5]", 5, sublattice_index(&i5, &full)?);
            let whole = Subgroup::whole(&g);
            let td5 = t_class(&r, &whole, &sub(&g, &["(1 2 3 4 5)", "(2 5)(3 4)"])?)?;
            let five: Vec<i64> = td5.coeffs().iter().map(|c| 5 * c).collect();
            items.add("5 t_{D_5} in I_5", true, contains(&i5, &five)?);
            items.add("t_{D_5} in I_5", false, contains(&i5, td5.coeffs())?);
            let ta4 = t_class(&r, &whole, &sub(&g, &["(1 2 3)", "(1 2)(3 4)"])?)?;
            items.add("t_{A_4} in saturation of I_4", false, saturation_contains(&i4, ta4.coeffs())?);
            items.add("rational step at n = 5", false, f.rational_step(5)?);
            items.add("stabilization", 6, f.stabilization_index()?);
        }
        "s5" => {
            let r = ctx.ring("Sym(5)")?;
            let g = r.group().clone();
            let ra5 = ctx.ring("Alt(5)")?;
            let a5 = ra5.group().clone();
            let tb = t_class(&r, &Subgroup::whole(&g), &sub(&g, &["(1 2 3 4 5)", "(2 3 5 4)"])?)?;
            let td5 = t_class(&ra5, &Subgroup::whole(&a5), &sub(&a5, &["(1 2 3 4 5)", "(2 5)(3 4)"])?)?;
            let incl = GroupHom::inclusion(&a5, &g)?;
            items.add("res to Alt(5) of t_B = t_{D_5}", &td5, restrict_into(&ra5, &incl, &tb)?);
            let f = Filtration::new(r.clone());
            items.add("t_B in I_5", false, contains(&f.ideal(5)?, tb.coeffs())?);
            items.add("I_6 = I", true, f.ideal(6)? == f.augmentation_ideal()?);
            items.add("stabilization", 6, f.stabilization_index()?);
        }
        "pgroups" => {
            let cases = [
                ("Cyclic(4)", 2),
                ("Cyclic(8)", 2),
                ("Dihedral(4)", 2),
                ("Perm(8; (1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6))", 2),
                ("Perm(4; (1 2), (3 4))", 2),
                ("Cyclic(9)", 3),
                ("Perm(6; (1 2 3), (4 5 6))", 3),
            ];
            for (spec, p) in cases {
                let f = Filtration::new(ctx.ring(spec)?);
                let name = f.ring().group().spec();
                let below = (1..p).map(|n| f.ideal(n).map(|i| i.rank())).collect::<Result<Vec<_>>>()?;
                items.add(format!("{name}: rank I_n for n < {p}"), format!("{:?}", vec![0; p - 1]), format!("{below:?}"));
                items.add(format!("{name}: stabilization"), p, f.stabilization_index()?);
                items.add(format!("{name}: A/I_{p}"), "Z", f.quotient(Stage::Finite(p))?);
            }
        }
        other => {
            return Err(Error::Invalid(format!("unknown example {other:?}; expected one of {}", IDS.join(", "))));
        }
    }
    let pass = items.0.iter().all(|i| i.pass);
    let mut text = String::new();
    for i in &items.0 {
        let _ = writeln!(
            text,
            "{}  {}: {}{}",
            if i.pass { "PASS" } else { "FAIL" },
            i.item,
            i.got,
            if i.pass { String::new() } else { format!(" (expected {})", i.expected) }
        );
    }
    let _ = writeln!(text, "{}: {}", id, if pass { "PASS" } else { "FAIL" });
    let rows = items
        .0
        .iter()
        .map(|i| vec![i.item.clone(), i.expected.clone(), i.got.clone(), i.pass.to_string()])
        .collect();
    let doc = ReproduceDoc { id: id.to_string(), pass, items: items.0 };
    Ok(Report::new(&doc)?.table(&["item", "expected", "got", "pass"], rows).text(text).failing_if(!pass))
}
