use std::path::Path;

use ncproj_core::free::FreePoly;
use ncproj_core::groebner::AlgebraRef;
use ncproj_core::ideals::{
    check_affine_hypothesis, finite_module_check, largest_twosided_inside, ore_extension, ClosedImmersion, GradedIdeal,
    OreData, Sidedness,
};
use ncproj_core::module::{adjunction_check, regular_module, watts_bimodule, BigradedBimodule, WattsFunctor};
use ncproj_core::morphism::AlgebraMorphism;
use ncproj_core::veronese::{
    check_lemma_i, ideal_family, min_veronese_gen1, projector, tails_window_equal, verevkin_defect,
    veronese_pushforward, VeroneseAlgebra,
};
use ncproj_core::Error;

use crate::load::{assignment, poly, CliError, Ctx, Result};
use crate::report::{count, join, pass_fail, Report, Table, Verdict, Window, Witness};
use crate::{Command, FunctorArgs};

pub(crate) fn dispatch(ctx: &Ctx, command: Command, seed: u64, r: &mut Report) -> Result<()> {
    match command {
        Command::Hilbert { input, bound } => hilbert(ctx, &input, bound.d, r),
        Command::Veronese {
            input,
            index,
            module,
            bound,
        } => veronese(ctx, &input, index.n, module.as_deref(), bound.d, r),
        Command::IdealFamily { input, index, bound } => family(ctx, &input, index.n, bound.d, r),
        Command::CheckLemmaI { input, index, bound } => lemma(ctx, &input, index.n, bound.d, r),
        Command::CheckAffine { input, max_n, bound } => affine(ctx, &input, max_n, bound.d, r),
        Command::LargestTwosided { input, gens, bound } => twosided(ctx, &input, &gens, bound.d, r),
        Command::ClosedImmersion {
            input,
            gens,
            module,
            bound,
        } => immersion(ctx, &input, &gens, module.as_deref(), bound.d, r),
        Command::OreExtend {
            input,
            t_weight,
            sigma,
            delta,
            bound,
        } => ore(ctx, &input, t_weight, &sigma, &delta, bound.d, r),
        Command::Projector {
            input,
            index,
            module,
            bound,
        } => projectors(ctx, &input, index.n, module.as_deref(), bound.d, r),
        Command::TailsEqual {
            input,
            left,
            right,
            from,
            bound,
        } => tails(ctx, &input, &left, &right, from, bound.d, seed, r),
        Command::Verevkin {
            input,
            index,
            module,
            bound,
        } => verevkin(ctx, &input, index.n, module.as_deref(), bound.d, r),
        Command::MinVeronese { input, max, bound } => min_veronese(ctx, &input, max, bound.d, r),
        Command::AdjunctionCheck {
            input,
            functor,
            left,
            right,
            bound,
        } => adjunction(ctx, &input, &functor, &left, &right, bound.d, r),
        Command::Watts { input, functor, bound } => watts(ctx, &input, &functor, bound.d, r),
        Command::Scenarios { suite } => crate::scenarios::run_suite(ctx, &suite, r),
    }
}

fn row<const N: usize>(cells: [String; N]) -> Vec<String> {
    cells.to_vec()
}

fn hilbert(ctx: &Ctx, input: &Path, d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let h = a.hilbert(d)?;
    let mut t = Table::new("hilbert", Window::certified(0, d), &["degree", "dim"]);
    for (e, x) in h.iter().enumerate() {
        t.push(row([e.to_string(), count(*x)]));
    }
    r.set("hilbert", join(&h));
    r.set("groebner_elements", a.gb().elements().len());
    r.tables.push(t);
    Ok(())
}

fn veronese(ctx: &Ctx, input: &Path, n: i64, module: Option<&str>, d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let v = VeroneseAlgebra::new(&a, n)?;
    let top = d / n;
    let p = v.presentation();
    let gens = p
        .generators()
        .iter()
        .map(|g| format!("{}:{}", g.name, g.weight))
        .collect::<Vec<_>>();
    r.set("generators", gens.join(","));
    r.set(
        "relations",
        p.relations().iter().map(|f| p.display_poly(f)).collect::<Vec<_>>().join("\n"),
    );
    r.set("relation_degrees", join(p.relations().iter().map(|f| f.degree().unwrap_or(0))));
    r.set("searched_through", top);
    r.note(format!("relations found by kernel computation through degree {top}; none claimed above"));
    let mut t = Table::new(
        "hilbert",
        Window::certified(0, top),
        &["degree", "veronese_dim", "base_dim", "match"],
    );
    let mut ok = true;
    for i in 0..=top {
        let (x, y) = (v.algebra().dim(i)?, a.dim(n * i)?);
        ok &= x == y;
        t.push(row([i.to_string(), count(x), count(y), pass_fail(x == y).into()]));
    }
    r.tables.push(t);
    r.check("hilbert_identity", ok);
    if let Some(spec) = module {
        let m = ctx.module(Some(spec), &a)?;
        let pushed = veronese_pushforward(&v, &m)?;
        let mut t = Table::new(
            "pushforward",
            Window::certified(pushed.lo(), pushed.hi()),
            &["degree", "dim", "source_degree", "source_dim"],
        );
        let mut zero = true;
        for i in pushed.lo()..=pushed.hi() {
            let x = pushed.dim(i)?;
            zero &= x == 0;
            t.push(row([i.to_string(), count(x), (n * i).to_string(), count(m.dim(n * i)?)]));
        }
        r.tables.push(t);
        r.set("pushforward_zero", zero);
    }
    Ok(())
}

fn family(ctx: &Ctx, input: &Path, n: i64, d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let f = ideal_family(&a, n, d)?;
    let mut cols: Vec<String> = vec!["degree".into()];
    for k in 1..=n {
        let name = format!("I_{k}");
        r.set(&name, f.get(k).display());
        cols.push(name);
    }
    r.set("I", f.intersection.display());
    cols.extend(["I".to_string(), "A".to_string()]);
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new("components", Window::certified(0, d), &cols);
    for e in 0..=d {
        let mut cells = vec![e.to_string()];
        for k in 1..=n {
            cells.push(count(f.get(k).dim(e)?));
        }
        cells.push(count(f.intersection.dim(e)?));
        cells.push(count(a.dim(e)?));
        t.push(cells);
    }
    r.tables.push(t);
    r.check("I_twosided", f.twosided);
    Ok(())
}

fn lemma(ctx: &Ctx, input: &Path, n: i64, d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let f = ideal_family(&a, n, d)?;
    r.set("I", f.intersection.display());
    let rep = check_lemma_i(&f, d)?;
    let mut t = Table::new(
        "containment",
        Window::certified(0, d),
        &["degree", "power_dim", "target_dim", "contained"],
    );
    for x in &rep.rows {
        t.push(row([
            x.degree.to_string(),
            count(x.power_dim),
            count(x.target_dim),
            pass_fail(x.contained).into(),
        ]));
    }
    r.tables.push(t);
    r.check("lemma", rep.holds());
    Ok(())
}

fn affine(ctx: &Ctx, input: &Path, max_n: usize, d: i64, r: &mut Report) -> Result<()> {
    let phi = ctx.morphism(input, d)?;
    let b = phi.target();
    let rep = check_affine_hypothesis(&phi, max_n, d)?;
    r.set("affine_n", rep.n.map_or("none".to_string(), |n| n.to_string()));
    r.set("certified_through", rep.certified_through);
    if let Some(w) = &rep.witness {
        r.witnesses.push(Witness {
            label: format!("outside phi(m)B for n = {max_n}"),
            degree: w.degree().unwrap_or(0),
            element: b.display(w),
        });
    }
    let fin = finite_module_check(&phi, d)?;
    r.set(
        "quotient_vanishes_from",
        fin.vanishes_from.map_or("none".to_string(), |e| e.to_string()),
    );
    r.set("annihilator", fin.annihilator.ideal.display());
    let exact = fin.annihilator.exact.iter().take_while(|&&x| x).count() as i64 - 1;
    r.set("annihilator_exact_through", exact);
    let mut t = Table::new(
        "quotient",
        Window::certified(0, d),
        &["degree", "quotient_dim", "annihilator_quotient_dim", "annihilator_exact"],
    );
    for e in 0..=d as usize {
        t.push(row([
            e.to_string(),
            count(fin.quotient_dims[e]),
            count(fin.annihilator_quotient_dims[e]),
            fin.annihilator.exact[e].to_string(),
        ]));
    }
    r.tables.push(t);
    r.check("affine", rep.n.is_some());
    Ok(())
}

fn parse_gens(a: &AlgebraRef, gens: &[String]) -> Result<Vec<FreePoly>> {
    gens.iter().map(|g| poly(a, g)).collect()
}

fn twosided(ctx: &Ctx, input: &Path, gens: &[String], d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let k = GradedIdeal::new(&a, parse_gens(&a, gens)?, Sidedness::Right, d)?;
    let core = largest_twosided_inside(&k, d)?;
    r.set("K", k.display());
    let witness = k.is_twosided(d)?;
    r.set("K_twosided", witness.is_none());
    r.set("core", core.ideal.display());
    if let Some(w) = witness {
        r.witnesses.push(Witness {
            label: "element of K".into(),
            degree: w.element.degree().unwrap_or(0),
            element: a.display(&w.element),
        });
        r.witnesses.push(Witness {
            label: "left multiple outside K".into(),
            degree: w.degree,
            element: a.display(&w.product),
        });
    }
    let mut t = Table::new(
        "components",
        Window::certified(0, d),
        &["degree", "K_dim", "core_dim", "exact"],
    );
    for e in 0..=d {
        t.push(row([
            e.to_string(),
            count(k.dim(e)?),
            count(core.ideal.dim(e)?),
            core.exact[e as usize].to_string(),
        ]));
    }
    r.tables.push(t);
    r.note("core degrees marked exact=false depend on degrees above the bound");
    Ok(())
}

fn immersion(ctx: &Ctx, input: &Path, gens: &[String], module: Option<&str>, d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let imm = ClosedImmersion::new(&a, parse_gens(&a, gens)?)?;
    let q = imm.quotient();
    r.set("J", imm.ideal().display());
    r.set("quotient_hilbert", join(q.hilbert(d)?));
    let mut t = Table::new(
        "algebra",
        Window::certified(0, d),
        &["degree", "A_dim", "J_dim", "quotient_dim"],
    );
    for e in 0..=d {
        t.push(row([
            e.to_string(),
            count(a.dim(e)?),
            count(imm.ideal().dim(e)?),
            count(q.dim(e)?),
        ]));
    }
    r.tables.push(t);

    let m = ctx.module(module, &a)?;
    let jm = imm.jm_components(&m)?;
    let pulled = imm.pullback(&m)?;
    let tors = imm.torsion(&m)?;
    let mut t = Table::new(
        "module",
        Window::certified(m.lo(), m.hi()),
        &["degree", "M_dim", "MJ_dim", "pullback_dim", "torsion_dim"],
    );
    let mut ok = true;
    for (k, e) in (m.lo()..=m.hi()).enumerate() {
        let (dm, dj, dp) = (m.dim(e)?, jm[k].dim(), pulled.dim(e)?);
        ok &= dp + dj == dm;
        let dt = if e <= tors.hi() { count(tors.dim(e)?) } else { "-".into() };
        t.push(row([e.to_string(), count(dm), count(dj), count(dp), dt]));
    }
    r.tables.push(t);
    r.check("pullback_dims", ok);
    r.set("torsion_window_top", tors.hi());

    let reg = regular_module(q, d)?;
    let inflated = imm.inflate(&reg)?;
    let back = imm.pullback(&inflated)?;
    r.check("counit", back.dims() == reg.dims());
    let t = imm.torsion(&inflated)?;
    let whole = (t.lo()..=t.hi()).all(|e| t.dim(e).ok() == inflated.dim(e).ok());
    r.check("torsion_of_inflated", whole);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn ore(
    ctx: &Ctx,
    input: &Path,
    t_weight: i64,
    sigma: &[String],
    delta: &[String],
    d: i64,
    r: &mut Report,
) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let p = a.presentation();
    let mut images: Vec<FreePoly> = (0..p.num_generators() as u16).map(|x| p.generator_poly(x)).collect();
    for s in sigma {
        let (x, f) = assignment(&a, s)?;
        images[x as usize] = f;
    }
    let mut deltas = vec![FreePoly::zero(a.field()); p.num_generators()];
    for s in delta {
        let (x, f) = assignment(&a, s)?;
        deltas[x as usize] = f;
    }
    let rejected = |r: &mut Report, e: Error| {
        r.set("error", e);
        r.verdict = Verdict::Fail;
    };
    let sigma = match AlgebraMorphism::new(a.clone(), a.clone(), images, 1) {
        Ok(s) => s,
        Err(e @ Error::NotAMorphism(_)) => {
            rejected(r, e);
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let data = OreData {
        base: a.clone(),
        sigma,
        delta: deltas,
        n: t_weight,
    };
    let s = match ore_extension(&data, d) {
        Ok(s) => s,
        Err(e @ (Error::NotADerivation(_) | Error::NotAnAutomorphism(_))) => {
            rejected(r, e);
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    r.set("presentation", s.presentation.to_string().trim_end());
    r.set("t", &s.presentation.names()[s.t as usize]);
    let hs = s.algebra.hilbert(d)?;
    let hr = a.hilbert(d)?;
    let mut t = Table::new(
        "hilbert",
        Window::certified(0, d),
        &["degree", "extension_dim", "convolution", "match"],
    );
    let mut ok = true;
    for i in 0..=d {
        let conv: usize = (0..=i / t_weight).map(|k| hr[(i - k * t_weight) as usize]).sum();
        let x = hs[i as usize];
        ok &= x == conv;
        t.push(row([i.to_string(), count(x), count(conv), pass_fail(x == conv).into()]));
    }
    r.tables.push(t);
    r.check("hilbert_convolution", ok);
    Ok(())
}

fn projectors(ctx: &Ctx, input: &Path, n: i64, module: Option<&str>, d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let m = ctx.module(module, &a)?;
    let ps = (0..n).map(|k| projector(&m, n, k)).collect::<ncproj_core::Result<Vec<_>>>()?;
    let mut cols = vec!["degree".to_string(), "M_dim".to_string()];
    cols.extend((0..n).map(|k| format!("p{k}_dim")));
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new("projectors", Window::certified(m.lo(), m.hi()), &cols);
    let mut sum_ok = true;
    for e in m.lo()..=m.hi() {
        let dims = ps.iter().map(|p| p.dim(e)).collect::<ncproj_core::Result<Vec<_>>>()?;
        let total = m.dim(e)?;
        sum_ok &= dims.iter().sum::<usize>() == total;
        let mut cells = vec![e.to_string(), count(total)];
        cells.extend(dims.into_iter().map(count));
        t.push(cells);
    }
    r.tables.push(t);
    let mut idempotent = true;
    let mut orthogonal = true;
    for (k, p) in ps.iter().enumerate() {
        for j in 0..n {
            let pp = projector(p, n, j)?;
            if j as usize == k {
                idempotent &= pp.dims() == p.dims();
            } else {
                orthogonal &= pp.dims().iter().all(|&x| x == 0);
            }
        }
    }
    r.check("sum", sum_ok);
    r.check("idempotent", idempotent);
    r.check("orthogonal", orthogonal);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn tails(
    ctx: &Ctx,
    input: &Path,
    left: &str,
    right: &str,
    s: i64,
    d: i64,
    seed: u64,
    r: &mut Report,
) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let m = ctx.module(Some(left), &a)?;
    let n = ctx.module(Some(right), &a)?;
    let hi = m.hi().min(n.hi());
    if hi < s {
        return Err(CliError::Usage(format!("no degrees in the window [{s}, {hi}]")));
    }
    let eq = tails_window_equal(&m, &n, s, hi, seed)?;
    let mut t = Table::new("dims", Window::proxy(s, hi), &["degree", "M_dim", "N_dim"]);
    for e in s..=hi {
        t.push(row([e.to_string(), count(m.dim(e)?), count(n.dim(e)?)]));
    }
    r.tables.push(t);
    r.set("tails_equal", eq);
    r.note("window-level proxy: an isomorphism of truncations, not a decision in the tails category");
    r.verdict = Verdict::from_bool(eq);
    Ok(())
}

fn verevkin(ctx: &Ctx, input: &Path, n: i64, module: Option<&str>, d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let v = VeroneseAlgebra::new(&a, n)?;
    let f = ideal_family(&a, n, d)?;
    let m = ctx.module(module, &a)?;
    let rep = verevkin_defect(&v, &f, &m)?;
    r.set("I", f.intersection.display());
    let mut t = Table::new(
        "defect",
        Window::certified(m.lo(), m.hi()),
        &["degree", "kernel", "cokernel", "kernel_killed", "cokernel_killed", "class_pattern"],
    );
    for x in &rep.rows {
        t.push(row([
            x.degree.to_string(),
            count(x.kernel),
            count(x.cokernel),
            x.kernel_killed.to_string(),
            x.cokernel_killed.to_string(),
            x.class_pattern.to_string(),
        ]));
    }
    r.tables.push(t);
    r.check("annihilated", rep.annihilated());
    let degree_one = a.presentation().weights().iter().all(|&w| w == 1);
    if degree_one {
        r.check("vanishes_from_1", rep.vanishes_from(1));
    } else {
        r.set("vanishes_from_1", rep.vanishes_from(1));
    }
    Ok(())
}

fn min_veronese(ctx: &Ctx, input: &Path, max: i64, d: i64, r: &mut Report) -> Result<()> {
    let a = ctx.algebra(input, d)?;
    let rep = min_veronese_gen1(&a, max)?;
    r.set("d", rep.d.map_or("none".to_string(), |x| x.to_string()));
    let mut t = Table::new(
        "tried",
        Window::certified(0, d),
        &["d", "degrees_checked_through", "generated_in_degree_one"],
    );
    for &(k, top) in &rep.tried {
        t.push(row([k.to_string(), top.to_string(), (Some(k) == rep.d).to_string()]));
    }
    r.tables.push(t);
    if rep.d.is_none() {
        r.note(format!("only d with 2d <= {d} can be tested"));
    }
    r.verdict = Verdict::from_bool(rep.d.is_some());
    Ok(())
}

fn bimodule_for(ctx: &Ctx, input: &Path, functor: &FunctorArgs, d: i64) -> Result<BigradedBimodule> {
    if functor.restrict {
        let phi = ctx.morphism(input, d)?;
        return Ok(watts_bimodule(&WattsFunctor::Restrict(&phi)));
    }
    let a = ctx.algebra(input, d)?;
    match functor.n.unwrap_or(1) {
        1 => Ok(watts_bimodule(&WattsFunctor::Identity(&a))),
        n => {
            let v = VeroneseAlgebra::new(&a, n)?;
            Ok(watts_bimodule(&WattsFunctor::VeronesePushforward(&v)))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn adjunction(
    ctx: &Ctx,
    input: &Path,
    functor: &FunctorArgs,
    left: &str,
    right: &str,
    d: i64,
    r: &mut Report,
) -> Result<()> {
    let m = bimodule_for(ctx, input, functor, d)?;
    let l = ctx.module(Some(left), m.left_algebra())?;
    let n = ctx.module(Some(right), m.right_algebra())?;
    let rep = adjunction_check(&l, &m, &n)?;
    r.set("tensor_side", rep.lhs);
    r.set("hom_side", rep.rhs);
    r.check("adjunction", rep.holds());
    Ok(())
}

fn watts(ctx: &Ctx, input: &Path, functor: &FunctorArgs, d: i64, r: &mut Report) -> Result<()> {
    let m = bimodule_for(ctx, input, functor, d)?;
    let s = m.scale();
    match m.generation_bound() {
        Ok(g) => r.set("generation_bound", g),
        Err(e) => r.note(e.to_string()),
    }
    let mut t = Table::new("components", Window::certified(0, d), &["p", "q", "dim"]);
    for p in 0..=d {
        for q in 0..=(d - p) / s {
            if m.certified(p, q) {
                t.push(row([p.to_string(), q.to_string(), count(m.component_dim(p, q)?)]));
            }
        }
    }
    r.tables.push(t);
    Ok(())
}
