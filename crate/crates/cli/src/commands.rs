use std::fmt::Write as _;
use std::sync::Arc;

use burnside_core::bisetcat::{category_basis_bounded, compose, evaluate_into, CatMorphism, CatMorphismDoc, TermDoc};
use burnside_core::burnside::{marks, res_tr_formula_into, restrict_into, BurnsideElementDoc, BurnsideRing};
use burnside_core::filtration::{Filtration, Stage};
use burnside_core::intlattice::{contains, saturation_contains, AbelianInvariants};
use burnside_core::permgrp::{group_from_spec_bounded, parse_perm, ClassDescriptor, GroupHom, PermGroup, Subgroup};
use burnside_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::Report;

pub struct Context {
    pub bound: usize,
    pub seed: u64,
}

impl Context {
    pub fn group(&self, spec: &str) -> Result<Arc<PermGroup>> {
        Ok(Arc::new(group_from_spec_bounded(spec, self.bound)?))
    }

    pub fn ring(&self, spec: &str) -> Result<Arc<BurnsideRing>> {
        BurnsideRing::with_bound(self.group(spec)?, self.bound)
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn gens_text(gens: &[String]) -> String {
    if gens.is_empty() {
        "<>".to_string()
    } else {
        format!("<{}>", gens.join(", "))
    }
}

#[derive(Serialize)]
struct SubgroupsDoc {
    group: String,
    order: usize,
    classes: Vec<ClassDescriptor>,
}

pub fn subgroups(ctx: &Context, spec: &str) -> Result<Report> {
    let r = ctx.ring(spec)?;
    let classes = r.lattice().descriptors();
    let mut text = format!("{}: order {}, {} classes of subgroups\n", r.group().spec(), r.group().order(), classes.len());
    let mut rows = Vec::new();
    for c in &classes {
        let _ = writeln!(
            text,
            "c{:<3} order {:<5} conjugates {:<4} |N| {:<5} |W| {:<5} {}",
            c.index,
            c.order,
            c.class_size,
            c.normalizer_order,
            c.weyl_order,
            gens_text(&c.generators)
        );
        rows.push(vec![
            c.index.to_string(),
            c.order.to_string(),
            c.class_size.to_string(),
            c.normalizer_order.to_string(),
            c.weyl_order.to_string(),
            c.index_in_parent.to_string(),
            c.generators.join(" "),
        ]);
    }
    let doc = SubgroupsDoc { group: r.group().spec(), order: r.group().order(), classes };
    Ok(Report::new(&doc)?
        .table(&["class", "order", "class_size", "normalizer_order", "weyl_order", "index", "generators"], rows)
        .text(text))
}

/// `classN` or `gens:(1 2),(3 4)`.
pub fn select_subgroup(r: &Arc<BurnsideRing>, selector: &str) -> Result<Subgroup> {
    let g = r.group();
    if let Some(n) = selector.strip_prefix("class") {
        let i: usize = n.parse().map_err(|_| Error::Parse(format!("bad class selector {selector:?}")))?;
        if i >= r.rank() {
            return Err(Error::Invalid(format!("class index {i} out of range (0..{})", r.rank())));
        }
        return Ok(r.lattice().representative(i).clone());
    }
    if let Some(list) = selector.strip_prefix("gens:") {
        let perms = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_perm(g.degree(), s))
            .collect::<Result<Vec<_>>>()?;
        return Subgroup::from_perms(g, &perms);
    }
    Err(Error::Parse(format!("subgroup selector must be classN or gens:..., got {selector:?}")))
}

#[derive(Serialize)]
struct MarksDoc {
    group: String,
    classes: Vec<ClassDescriptor>,
    /// `marks[L][H]` = number of `L`-fixed points of `G/H`.
    marks: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct TransitiveDoc {
    group: String,
    class: usize,
    order: usize,
    element: BurnsideElementDoc,
    marks: Vec<i64>,
    augmentation: usize,
}

pub fn burnside(ctx: &Context, spec: &str, selector: Option<&str>) -> Result<Report> {
    let r = ctx.ring(spec)?;
    match selector {
        None => {
            let table = r.mark_table().to_vec();
            let mut text = format!("table of marks of {} (row L, column H: |(G/H)^L|)\n", r.group().spec());
            let _ = writeln!(text, "      {}", join(&(0..r.rank()).map(|i| format!("{:>5}", format!("c{i}"))).collect::<Vec<_>>(), ""));
            let mut rows = Vec::new();
            for (l, row) in table.iter().enumerate() {
                let _ = writeln!(text, "{:<6}{}", format!("c{l}"), join(&row.iter().map(|m| format!("{m:>5}")).collect::<Vec<_>>(), ""));
                let mut r = vec![format!("c{l}")];
                r.extend(row.iter().map(|m| m.to_string()));
                rows.push(r);
            }
            let mut header: Vec<String> = vec!["L".to_string()];
            header.extend((0..r.rank()).map(|i| format!("c{i}")));
            let doc = MarksDoc { group: r.group().spec(), classes: r.lattice().descriptors(), marks: table };
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            Ok(Report::new(&doc)?.table(&header, rows).text(text))
        }
        Some(sel) => {
            let h = select_subgroup(&r, sel)?;
            let x = r.transitive(&h)?;
            let class = r.lattice().class_of(&h)?;
            let m = marks(&x);
            let doc = TransitiveDoc {
                group: r.group().spec(),
                class,
                order: h.order(),
                element: x.to_doc(),
                marks: m.clone(),
                augmentation: h.index(),
            };
            let text = format!(
                "[G/H] for H = {:?} in class c{class}\nelement: {x}\nmarks: {}\naugmentation: {}\n",
                h,
                join(&m, " "),
                h.index()
            );
            let rows = vec![vec![class.to_string(), h.order().to_string(), join(x.coeffs(), " "), join(&m, " ")]];
            Ok(Report::new(&doc)?.table(&["class", "order", "coeffs", "marks"], rows).text(text))
        }
    }
}

#[derive(Serialize)]
struct DoubleCosetDoc {
    group: String,
    pairs_checked: usize,
    failures: Vec<String>,
}

pub fn doublecoset_check(ctx: &Context, spec: &str) -> Result<Report> {
    let r = ctx.ring(spec)?;
    let g = r.group().clone();
    let reps: Vec<&Subgroup> = r.lattice().classes().iter().map(|c| &c.representative).collect();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for (ki, k) in reps.iter().enumerate() {
        let ring_k = BurnsideRing::of_subgroup(k)?;
        let incl = GroupHom::inclusion(ring_k.group(), &g)?;
        for (hi, h) in reps.iter().enumerate() {
            let direct = restrict_into(&ring_k, &incl, &r.basis(hi))?;
            let formula = res_tr_formula_into(&ring_k, &g, k, h)?;
            let ok = direct == formula;
            if !ok {
                failures.push(format!("K = c{ki}, H = c{hi}: orbits {direct}, formula {formula}"));
            }
            rows.push(vec![format!("c{ki}"), format!("c{hi}"), join(direct.coeffs(), " "), ok.to_string()]);
        }
    }
    let n = rows.len();
    let text = if failures.is_empty() {
        format!("{}: double coset formula agrees with orbit decomposition on all {n} pairs\n", g.spec())
    } else {
        format!("{}: {} of {n} pairs disagree\n{}\n", g.spec(), failures.len(), failures.join("\n"))
    };
    let failed = !failures.is_empty();
    let doc = DoubleCosetDoc { group: g.spec(), pairs_checked: n, failures };
    Ok(Report::new(&doc)?.table(&["K", "H", "res_tr", "agrees"], rows).text(text).failing_if(failed))
}

pub fn filtration(ctx: &Context, spec: &str, max_n: Option<usize>) -> Result<Report> {
    let r = ctx.ring(spec)?;
    let max_n = max_n.unwrap_or(r.group().order());
    if max_n == 0 {
        return Err(Error::Invalid("--max-n must be at least 1".into()));
    }
    let f = Filtration::new(r.clone());
    let table = f.table(max_n)?;
    let doc = table.to_doc(r.lattice().descriptors());
    let mut text = format!("{}: {} classes\n  n  rank I_n  A/I_n\n", doc.group, doc.classes.len());
    let mut rows = Vec::new();
    for s in &doc.stages {
        let _ = writeln!(text, "{:>3}  {:>8}  {}", s.n, s.ideal_rank, s.quotient);
        rows.push(vec![
            s.n.to_string(),
            s.ideal_rank.to_string(),
            s.quotient.rank.to_string(),
            join(&s.quotient.torsion, " "),
        ]);
    }
    let _ = writeln!(text, "stabilization: {}", doc.stabilization);
    Ok(Report::new(&doc)?.table(&["n", "ideal_rank", "quotient_rank", "torsion"], rows).text(text))
}

pub fn sp(ctx: &Context, spec: &str, stage: &str) -> Result<Report> {
    let stage: Stage = stage.parse()?;
    let r = ctx.ring(spec)?;
    let q: AbelianInvariants = Filtration::new(r).quotient(stage)?;
    let rows = vec![vec![q.rank.to_string(), join(&q.torsion, " ")]];
    let text = q.to_string();
    Ok(Report::new(&q)?.table(&["rank", "torsion"], rows).text(text))
}

#[derive(Serialize)]
struct MembershipDoc {
    group: String,
    n: String,
    elem: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    in_saturation: Option<bool>,
}

pub fn membership(ctx: &Context, spec: &str, stage: &str, elem: &str, saturated: bool) -> Result<Report> {
    let stage: Stage = stage.parse()?;
    let v: Vec<i64> =
        serde_json::from_str(elem).map_err(|e| Error::Parse(format!("--elem must be a JSON integer array: {e}")))?;
    let r = ctx.ring(spec)?;
    if v.len() != r.rank() {
        return Err(Error::Dimension { expected: r.rank(), found: v.len() });
    }
    let ideal = Filtration::new(r.clone()).ideal(stage.resolve(r.group()))?;
    let answer = if saturated { saturation_contains(&ideal, &v)? } else { contains(&ideal, &v)? };
    let x = r.element(v.clone())?;
    let what = if saturated { "the saturation of I" } else { "I" };
    let text = format!("{x} {} in {what}_{stage}({})", if answer { "lies" } else { "does not lie" }, r.group().spec());
    let doc = MembershipDoc {
        group: r.group().spec(),
        n: stage.to_string(),
        elem: v,
        member: (!saturated).then_some(answer),
        in_saturation: saturated.then_some(answer),
    };
    let rows = vec![vec![stage.to_string(), answer.to_string()]];
    Ok(Report::new(&doc)?.table(&["n", if saturated { "in_saturation" } else { "member" }], rows).text(text))
}

#[derive(Serialize)]
struct PairDoc {
    #[serde(rename = "L_order")]
    l_order: usize,
    #[serde(rename = "L_gens")]
    l_gens: Vec<String>,
    alpha_images: Vec<String>,
}

#[derive(Serialize)]
struct CatBasisDoc {
    source: String,
    target: String,
    rank: usize,
    pairs: Vec<PairDoc>,
}

fn pair_docs(source: &Arc<PermGroup>, target: &Arc<PermGroup>, bound: usize) -> Result<Vec<TermDoc>> {
    let basis = category_basis_bounded(source, target, bound)?;
    Ok(basis.iter().flat_map(|p| CatMorphism::basis(p).to_doc().terms).collect())
}

pub fn cat_basis(ctx: &Context, spec_g: &str, spec_k: &str) -> Result<Report> {
    let (g, k) = (ctx.group(spec_g)?, ctx.group(spec_k)?);
    let terms = pair_docs(&g, &k, ctx.bound)?;
    let mut text = format!("A({}, {}) has rank {}\n", g.spec(), k.spec(), terms.len());
    let mut rows = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let maps: Vec<String> = t.l_gens.iter().zip(&t.alpha_images).map(|(a, b)| format!("{a} -> {b}")).collect();
        let _ = writeln!(text, "p{i:<3} |L| = {:<4} {}", t.l_order, if maps.is_empty() { "trivial L".to_string() } else { maps.join(", ") });
        rows.push(vec![i.to_string(), t.l_order.to_string(), t.l_gens.join(" "), t.alpha_images.join(" ")]);
    }
    let doc = CatBasisDoc {
        source: g.spec(),
        target: k.spec(),
        rank: terms.len(),
        pairs: terms
            .into_iter()
            .map(|t| PairDoc { l_order: t.l_order, l_gens: t.l_gens, alpha_images: t.alpha_images })
            .collect(),
    };
    Ok(Report::new(&doc)?.table(&["pair", "L_order", "L_gens", "alpha_images"], rows).text(text))
}

#[derive(Serialize)]
struct CompositeDoc {
    f: usize,
    g: usize,
    composite: CatMorphismDoc,
}

#[derive(Serialize)]
struct ComposeCheckDoc {
    source: String,
    middle: String,
    target: String,
    seed: u64,
    checks: usize,
    failures: Vec<String>,
    composites: Vec<CompositeDoc>,
}

/// Composes every basis pair of `A(K, L)` with every basis pair of
/// `A(G, K)` and checks unit laws and functoriality of evaluation.
pub fn compose_check(ctx: &Context, spec_g: &str, spec_k: &str, spec_l: &str) -> Result<Report> {
    let (g, k, l) = (ctx.group(spec_g)?, ctx.group(spec_k)?, ctx.group(spec_l)?);
    let gs: Vec<CatMorphism> = category_basis_bounded(&g, &k, ctx.bound)?.iter().map(CatMorphism::basis).collect();
    let fs: Vec<CatMorphism> = category_basis_bounded(&k, &l, ctx.bound)?.iter().map(CatMorphism::basis).collect();
    let ring_g = BurnsideRing::with_bound(g.clone(), ctx.bound)?;
    let ring_k = BurnsideRing::with_bound(k.clone(), ctx.bound)?;
    let ring_l = BurnsideRing::with_bound(l.clone(), ctx.bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let x = ring_g.element((0..ring_g.rank()).map(|_| rng.gen_range(-5..=5)).collect())?;

    let mut checks = 0;
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            failures.push(what);
        }
    };
    let mut composites = Vec::new();
    let mut rows = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        for (j, gm) in gs.iter().enumerate() {
            let fg = compose(f, gm)?;
            check(compose(&CatMorphism::identity(&l), &fg)? == fg, format!("id ∘ (f{i} ∘ g{j})"));
            check(compose(&fg, &CatMorphism::identity(&g))? == fg, format!("(f{i} ∘ g{j}) ∘ id"));
            let lhs = evaluate_into(&ring_l, &fg, &x)?;
            let rhs = evaluate_into(&ring_l, f, &evaluate_into(&ring_k, gm, &x)?)?;
            check(lhs == rhs, format!("evaluation of f{i} ∘ g{j} on {x}"));
            rows.push(vec![format!("f{i}"), format!("g{j}"), fg.to_string()]);
            composites.push(CompositeDoc { f: i, g: j, composite: fg.to_doc() });
        }
    }
    let mut text = format!(
        "A({}, {}) x A({}, {}): {} x {} basis pairs, {checks} checks, {} failures\n",
        k.spec(),
        l.spec(),
        g.spec(),
        k.spec(),
        fs.len(),
        gs.len(),
        failures.len()
    );
    for row in &rows {
        let _ = writeln!(text, "{} ∘ {} = {}", row[0], row[1], row[2]);
    }
    for fail in &failures {
        let _ = writeln!(text, "FAILED: {fail}");
    }
    let failed = !failures.is_empty();
    let doc = ComposeCheckDoc {
        source: g.spec(),
        middle: k.spec(),
        target: l.spec(),
        seed: ctx.seed,
        checks,
        failures,
        composites,
    };
    Ok(Report::new(&doc)?.table(&["f", "g", "composite"], rows).text(text).failing_if(failed))
}
