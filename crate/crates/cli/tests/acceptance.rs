//! Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.
//! Every comparison is exact; the only tolerances are the wall-clock limits below.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use ncproj::scenarios::run_scenarios;
use ncproj_core::free::{parse_poly, parse_presentation, FreePoly};
use ncproj_core::groebner::{AlgebraRef, GradedAlgebra};
use ncproj_core::ideals::{ore_extension, ClosedImmersion, GradedIdeal, OreData, Sidedness};
use ncproj_core::linalg::{Field, Subspace};
use ncproj_core::module::{
    adjunction_check, graded_hom, parse_module_spec, regular_module, restrict_along, watts_bimodule, GradedModule,
    WattsFunctor,
};
use ncproj_core::morphism::AlgebraMorphism;
use ncproj_core::veronese::{
    check_lemma_i, ideal_family, min_veronese_gen1, projector, veronese_coinduce, veronese_pushforward,
    verevkin_defect, VeroneseAlgebra,
};
use ncproj_core::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Maps any error into the failure message.
fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "groebner oracle", limit: Duration::from_secs(60), run: groebner_oracle },
    Criterion { id: 2, name: "hilbert identities", limit: Duration::from_secs(10), run: hilbert_identities },
    Criterion { id: 3, name: "veronese identity", limit: Duration::from_secs(60), run: veronese_identity },
    Criterion { id: 4, name: "adjunction", limit: Duration::from_secs(120), run: adjunction },
    Criterion { id: 5, name: "I^2n in I^(n)A", limit: Duration::from_secs(120), run: lemma },
    Criterion { id: 6, name: "worked examples", limit: Duration::from_secs(30), run: examples },
    Criterion { id: 7, name: "closed immersion", limit: Duration::from_secs(60), run: closed_immersion },
    Criterion { id: 8, name: "ore extensions", limit: Duration::from_secs(60), run: ore },
    Criterion { id: 9, name: "verevkin defect", limit: Duration::from_secs(60), run: verevkin },
    Criterion { id: 10, name: "determinism", limit: Duration::from_secs(600), run: determinism },
];

fn main() {
    let mut failed = 0;
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    for c in CRITERIA.iter().filter(|c| only.map_or(true, |o| o == c.id)) {
        let start = Instant::now();
        let result = (c.run)();
        let t = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if t <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the time limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} {:<20} {:>7.2}s / {:>3}s  {detail}",
            c.id,
            c.name,
            t.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------------------------------
// random inputs

const NAMES: [&str; 3] = ["x", "y", "z"];

fn random_field(rng: &mut ChaCha8Rng) -> &'static str {
    ["Q", "F 101", "F 32003"].choose(rng).unwrap()
}

/// `3*x*y - y*x` from `(coefficient, letters)` pairs with distinct words.
fn poly_text(terms: &[(i64, Vec<u16>)]) -> String {
    poly_text_in(terms, &NAMES)
}

fn poly_text_in<S: AsRef<str>>(terms: &[(i64, Vec<u16>)], names: &[S]) -> String {
    let mut s = String::new();
    for (c, w) in terms {
        if *c == 0 {
            continue;
        }
        let word = w.iter().map(|&l| names[l as usize].as_ref()).collect::<Vec<_>>().join("*");
        let word = if word.is_empty() { "1".to_string() } else { word };
        let sign = if *c < 0 { "-" } else { "+" };
        if s.is_empty() {
            s = if *c < 0 { "-".into() } else { String::new() };
        } else {
            s.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            s.push_str(&format!("{}*", c.abs()));
        }
        s.push_str(&word);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn coefficient(rng: &mut ChaCha8Rng) -> i64 {
    *[1, -1, 2, -2, 3, 5].choose(rng).unwrap()
}

fn header(field: &str, weights: &[u32]) -> String {
    let mut s = format!("field {field}");
    for (i, w) in weights.iter().enumerate() {
        s.push_str(&format!("; gen {} {w}", NAMES[i]));
    }
    s
}

/// Algebras of polynomial growth: every pair of generators skew-commutes, and (with
/// `extras`) some relations pick up further terms, plus possibly one more relation.
fn tame_presentation(rng: &mut ChaCha8Rng, extras: bool, weight_one: bool) -> String {
    let g = rng.gen_range(1..=3usize);
    let weights: Vec<u32> = (0..g)
        .map(|_| if weight_one { 1 } else { rng.gen_range(1..=2) })
        .collect();
    let mut text = header(random_field(rng), &weights);
    for i in 0..g {
        for j in i + 1..g {
            let q = *[1, -1, 2, 3].choose(rng).unwrap();
            let mut terms = vec![(1, vec![j as u16, i as u16]), (-q, vec![i as u16, j as u16])];
            if extras && rng.gen_bool(0.3) {
                let deg = (weights[i] + weights[j]) as i64;
                let others: Vec<Vec<u16>> = oracles::words_of_degree(&weights, deg)
                    .into_iter()
                    .filter(|w| terms.iter().all(|(_, t)| t != w))
                    .collect();
                if let Some(w) = others.choose(rng) {
                    terms.push((coefficient(rng), w.clone()));
                }
            }
            text.push_str(&format!("; rel {}", poly_text(&terms)));
        }
    }
    if extras && rng.gen_bool(0.4) {
        let deg = rng.gen_range(2..=4);
        let mut words = oracles::words_of_degree(&weights, deg);
        words.shuffle(rng);
        let terms: Vec<(i64, Vec<u16>)> = words.into_iter().take(rng.gen_range(1..=3)).map(|w| (coefficient(rng), w)).collect();
        if !terms.is_empty() {
            text.push_str(&format!("; rel {}", poly_text(&terms)));
        }
    }
    text
}

fn algebra(text: &str, d: i64) -> Result<AlgebraRef, String> {
    let p = ok(parse_presentation(text), text)?;
    ok(GradedAlgebra::new(&p, d), text)
}

fn poly(a: &AlgebraRef, text: &str) -> Result<FreePoly, String> {
    ok(parse_poly(a.presentation(), text), text)
}

/// Built up to `hi`, or less when a generator below degree 0 limits what the bound certifies.
fn module(a: &AlgebraRef, text: &str, hi: i64) -> Result<GradedModule, String> {
    let spec = ok(parse_module_spec(text, a), text)?;
    ok(spec.build(a, hi.min(spec.default_hi(a.bound()))), text)
}

/// A random homogeneous element of degree `e`, or `None` if `A_e = 0` in the free algebra.
fn random_element(rng: &mut ChaCha8Rng, a: &AlgebraRef, e: i64) -> Option<String> {
    let mut words = oracles::words_of_degree(a.presentation().weights(), e);
    if words.is_empty() {
        return None;
    }
    words.shuffle(rng);
    let k = rng.gen_range(1..=words.len().min(3));
    let terms: Vec<(i64, Vec<u16>)> = words.into_iter().take(k).map(|w| (coefficient(rng), w)).collect();
    Some(poly_text_in(&terms, a.presentation().names()))
}

/// Cyclic or two-generator module text with up to two random relations.
fn random_module_text(rng: &mut ChaCha8Rng, a: &AlgebraRef) -> String {
    let gens: Vec<(String, i64)> = (0..rng.gen_range(1..=2))
        .map(|i| (format!("g{i}"), rng.gen_range(-1..=1)))
        .collect();
    let mut text = gens
        .iter()
        .map(|(n, d)| format!("gen {n} {d}"))
        .collect::<Vec<_>>()
        .join("; ");
    for _ in 0..rng.gen_range(0..=2) {
        let (g, _) = gens.choose(rng).unwrap();
        let e = rng.gen_range(1..=2);
        if let Some(p) = random_element(rng, a, e) {
            text.push_str(&format!("; rel {g}*({p})"));
        }
    }
    text
}

fn weights_of(a: &AlgebraRef) -> Vec<u32> {
    a.presentation().weights().to_vec()
}

// ---------------------------------------------------------------------------------------
// 1

fn groebner_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc1);
    let mut compared = 0;
    let mut proper = 0;
    for case in 0..100 {
        let field = if case % 3 == 0 { Field::Rationals } else { ok(Field::prime(32003), "field")? };
        let p = oracles::random_presentation(&mut rng, field);
        let a = ok(GradedAlgebra::new(&p, 7), "algebra")?;
        for e in 0..=7 {
            let (got, want) = (ok(a.dim(e), "dim")?, oracles::quotient_dim(&p, e));
            ensure!(got == want, "degree {e}: {got} from the GB, {want} brute force, for\n{p}");
            compared += 1;
        }
        if ok(a.dim(7), "dim")? < oracles::words_of_degree(p.weights(), 7).len() {
            proper += 1;
        }
    }
    Ok(format!("100 presentations, {compared} dimensions, {proper} with a proper quotient in degree 7"))
}

// ---------------------------------------------------------------------------------------
// 2

/// All ordered weight vectors with positive entries summing to at most `total`.
fn compositions(total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(v) = stack.pop() {
        let s: u32 = v.iter().sum();
        if !v.is_empty() {
            out.push(v.clone());
        }
        for w in 1..=total - s {
            let mut u = v.clone();
            u.push(w);
            stack.push(u);
        }
    }
    out
}

fn polynomial_ring(weights: &[u32]) -> String {
    let names: Vec<String> = (0..weights.len()).map(|i| format!("x{i}")).collect();
    let mut s = "field Q".to_string();
    for (n, w) in names.iter().zip(weights) {
        s.push_str(&format!("; gen {n} {w}"));
    }
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            s.push_str(&format!("; rel {}*{} - {}*{}", names[j], names[i], names[i], names[j]));
        }
    }
    s
}

fn hilbert_identities() -> Check {
    const D: i64 = 16;
    let vectors = compositions(8);
    for w in &vectors {
        let a = algebra(&polynomial_ring(w), D)?;
        let want = oracles::weighted_polynomial_series(w, D as usize);
        let got = ok(a.hilbert(D), "hilbert")?;
        ensure!(got == want, "weights {w:?}: {got:?}, expected {want:?}");
    }
    let mut planes = 0;
    for field in ["Q", "F 32003", "F 3"] {
        for q in ["1", "2", "-1", "3", "1/2", "-7/3"] {
            if field == "F 3" && q.contains("/3") {
                continue;
            }
            let a = algebra(&format!("field {field}; gen x 1; gen y 1; rel y*x - {q}*x*y"), D)?;
            let got = ok(a.hilbert(D), "hilbert")?;
            let want: Vec<usize> = (0..=D as usize).map(|i| i + 1).collect();
            ensure!(got == want, "k_q[x,y], q = {q} over {field}: {got:?}");
            planes += 1;
        }
    }
    Ok(format!("{} weight vectors, {planes} quantum planes, through degree {D}", vectors.len()))
}

// ---------------------------------------------------------------------------------------
// 3

fn veronese_identity() -> Check {
    const D: i64 = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc3);
    let mut compared = 0;
    for _ in 0..50 {
        let text = tame_presentation(&mut rng, true, false);
        let n = rng.gen_range(1..=4);
        let a = algebra(&text, D)?;
        let v = ok(VeroneseAlgebra::new(&a, n), &format!("Veronese {n} of {text}"))?;
        let top = D / n;
        ensure!(v.algebra().bound() == top, "bound {} for n = {n}", v.algebra().bound());
        for i in 0..=top {
            let (got, want) = (ok(v.algebra().dim(i), "dim")?, ok(a.dim(n * i), "dim")?);
            ensure!(got == want, "n = {n}, degree {i}: {got} against {want} for {text}");
            compared += 1;
        }
    }
    Ok(format!("50 instances, {compared} degrees"))
}

// ---------------------------------------------------------------------------------------
// 4

/// `A/A_{≥k}`-style bounded module: a cyclic module killed by every word of degree `k`.
fn bounded_module(a: &AlgebraRef, k: i64, shift: i64) -> Result<GradedModule, String> {
    let weights = weights_of(a);
    let mut text = format!("gen g {shift}");
    for w in oracles::words_of_degree(&weights, k) {
        let word = w.iter().map(|&l| a.presentation().names()[l as usize].clone()).collect::<Vec<_>>().join("*");
        text.push_str(&format!("; rel g*{word}"));
    }
    module(a, &text, shift + k)
}

fn adjunction() -> Check {
    const D: i64 = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc4);
    let bases = [
        "field Q; gen x 1",
        "field Q; gen x 1; gen y 1; rel y*x - x*y",
        "field Q; gen x 1; gen y 1; rel y*x - 2*x*y",
        "field Q; gen x 1; gen y 1; rel y*x + x*y",
        "field Q; gen x 1; gen z 2; rel z*x - x*z",
        "field F 32003; gen x 1; gen y 1; rel y*x - 3*x*y",
    ];
    let (mut done, mut skipped, mut cross) = (0, 0, 0);
    let mut kinds = [0usize; 3];
    while done < 25 {
        ensure!(skipped < 100, "{skipped} samples fell outside the certified windows");
        let text = *bases.choose(&mut rng).unwrap();
        let a = algebra(text, D)?;
        let kind = rng.gen_range(0..3);
        let l_text = random_module_text(&mut rng, &a);
        let l = module(&a, &l_text, D)?;
        let result = match kind {
            0 => {
                let m = watts_bimodule(&WattsFunctor::Identity(&a));
                let n = bounded_module(&a, rng.gen_range(1..=3), rng.gen_range(0..=2))?;
                adjunction_check(&l, &m, &n).map(|r| {
                    let direct = graded_hom(&l, &n, 0).map(|h| h.dim()).ok();
                    (r, direct.map(|d| (d, d)))
                })
            }
            1 => {
                let nv = rng.gen_range(2..=3);
                let v = ok(VeroneseAlgebra::new(&a, nv), "Veronese")?;
                let m = watts_bimodule(&WattsFunctor::VeronesePushforward(&v));
                let n = bounded_module(v.algebra(), rng.gen_range(1..=2), rng.gen_range(0..=1))?;
                adjunction_check(&l, &m, &n).map(|r| {
                    let lhs = veronese_pushforward(&v, &l).and_then(|fl| graded_hom(&fl, &n, 0)).map(|h| h.dim());
                    let rhs = veronese_coinduce(&v, &n).and_then(|gn| graded_hom(&l, &gn, 0)).map(|h| h.dim());
                    (r, lhs.ok().zip(rhs.ok()))
                })
            }
            _ => {
                // restriction along the quotient map A → A/(x)
                let imm = ok(ClosedImmersion::new(&a, vec![poly(&a, "x")?]), "quotient")?;
                let b = imm.quotient().clone();
                let l = module(&b, &random_module_text(&mut rng, &b), D)?;
                let phi = imm.projection();
                let m = watts_bimodule(&WattsFunctor::Restrict(phi));
                let n = bounded_module(&a, rng.gen_range(1..=3), rng.gen_range(0..=2))?;
                adjunction_check(&l, &m, &n).map(|r| {
                    let lhs = restrict_along(phi, &l).and_then(|rl| graded_hom(&rl, &n, 0)).map(|h| h.dim());
                    let rhs = r.rhs;
                    (r, lhs.ok().map(|d| (d, rhs)))
                })
            }
        };
        match result {
            Ok((r, direct)) => {
                ensure!(r.holds(), "kind {kind} on {text}, L = {l_text}: {} against {}", r.lhs, r.rhs);
                if let Some((x, y)) = direct {
                    ensure!(
                        (x, y) == (r.lhs, r.rhs),
                        "kind {kind} on {text}, L = {l_text}: direct Hom sides {x}, {y} against {}, {}",
                        r.lhs,
                        r.rhs
                    );
                    cross += 1;
                }
                kinds[kind] += 1;
                done += 1;
            }
            Err(Error::WindowInsufficient { .. }) | Err(Error::WindowExceeded { .. }) | Err(Error::WindowExceedsBound { .. }) => {
                skipped += 1
            }
            Err(e) => return Err(format!("kind {kind} on {text}, L = {l_text}: {e}")),
        }
    }
    Ok(format!(
        "25 triples (identity {}, Veronese {}, restriction {}), {cross} cross-checked against direct Hom, {skipped} outside the window",
        kinds[0], kinds[1], kinds[2]
    ))
}

// ---------------------------------------------------------------------------------------
// 5

const WTD12: &str = "field Q; gen x 1; gen z 2; rel z*x - x*z";

fn lemma() -> Check {
    const D: i64 = 12;
    let a = algebra(WTD12, D)?;
    let f = ok(ideal_family(&a, 2, D), "family")?;
    let r = ok(check_lemma_i(&f, D), "lemma")?;
    ensure!(r.holds(), "fails on k[x,z], weights (1,2), n = 2: {:?}", r.rows);
    ensure!(r.rows.iter().any(|row| row.degree == D), "rows stop before degree {D}");

    let mut rng = ChaCha8Rng::seed_from_u64(0xacc5);
    let (mut done, mut skipped, mut nonzero) = (0, 0, 0);
    while done < 25 {
        ensure!(skipped < 200, "only {done} instances fit the window");
        let text = tame_presentation(&mut rng, true, false);
        let n = rng.gen_range(2..=3);
        let a = algebra(&text, D)?;
        let f = ok(ideal_family(&a, n, D), "family")?;
        match check_lemma_i(&f, D) {
            Ok(r) => {
                ensure!(r.holds(), "fails for n = {n} on {text}: {:?}", r.rows);
                if !f.intersection.is_zero() {
                    nonzero += 1;
                }
                done += 1;
            }
            Err(Error::WindowInsufficient { .. }) => skipped += 1,
            Err(e) => return Err(format!("n = {n} on {text}: {e}")),
        }
    }
    Ok(format!(
        "k[x,z] wt (1,2) through degree {D}; 25 random ({nonzero} with I ≠ 0), {skipped} drawn with 2n·deg I > {D}"
    ))
}

// ---------------------------------------------------------------------------------------
// 6

fn examples() -> Check {
    let a = algebra(WTD12, 12)?;
    let v = ok(VeroneseAlgebra::new(&a, 2), "Veronese")?;

    // (a)
    let point = module(&a, "gen g 0; rel g*x", 12)?.shift(1);
    let pushed = ok(veronese_pushforward(&v, &point), "pushforward")?;
    ensure!(pushed.dims().iter().all(|&d| d == 0), "(a) f_*((A/(x))(1)) has dims {:?}", pushed.dims());

    // (b)
    let mut table = Vec::new();
    for q in [1, 2, -1] {
        let b = algebra(&format!("field Q; gen x 1; gen y 1; rel y*x - {q}*x*y"), 6)?;
        for (al, be) in [(1, 0), (0, 1), (1, 1)] {
            let g = poly(&b, &format!("{al}*x + {be}*y"))?;
            let k = ok(GradedIdeal::new(&b, vec![g], Sidedness::Right, 6), "ideal")?;
            let twosided = ok(k.is_twosided(6), "two-sidedness")?.is_none();
            ensure!(
                twosided == (q == 1 || al * be == 0),
                "(b) q = {q}, (α, β) = ({al}, {be}): two-sided = {twosided}"
            );
            table.push(twosided);
        }
    }

    // (c)
    let f = ok(ideal_family(&a, 2, 12), "family")?;
    let x = ok(GradedIdeal::new(&a, vec![poly(&a, "x")?], Sidedness::Right, 12), "ideal")?;
    ensure!(f.get(1).dims() == x.dims(), "(c) I_1 = {}", f.get(1).display());
    ensure!(f.get(1).display() == "(x)", "(c) I_1 displayed as {}", f.get(1).display());
    ensure!(f.get(2).is_whole(), "(c) I_2 = {}", f.get(2).display());

    // (d)
    let d12 = ok(min_veronese_gen1(&a, 8), "min_veronese")?.d;
    let a23 = algebra("field Q; gen x 2; gen y 3; rel y*x - x*y", 18)?;
    let d23 = ok(min_veronese_gen1(&a23, 8), "min_veronese")?.d;
    ensure!(d12 == Some(2) && d23 == Some(6), "(d) got {d12:?} and {d23:?}");

    // (e)
    let even = algebra("field Q; gen x 2", 12)?;
    let m = module(&even, "gen g 0; gen h -1; gen k 3; rel k*x*x", 10)?;
    let p: Vec<GradedModule> = (0..2).map(|r| projector(&m, 2, r)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    for e in m.lo()..=m.hi() {
        let sum = ok(p[0].dim(e), "dim")? + ok(p[1].dim(e), "dim")?;
        ensure!(sum == ok(m.dim(e), "dim")?, "(e) degree {e}: p_0 + p_1 = {sum}");
    }
    for r in 0..2 {
        for s in 0..2 {
            let pp = ok(projector(&p[r as usize], 2, s), "projector")?;
            let want = if r == s { p[r as usize].dims().to_vec() } else { vec![0; pp.dims().len()] };
            ensure!(pp.dims() == want.as_slice(), "(e) p_{s} p_{r} has dims {:?}", pp.dims());
        }
    }
    let b0 = ok(p[0].truncate_window(m.lo(), m.hi()), "window")?;
    let b1 = ok(p[1].truncate_window(m.lo(), m.hi()), "window")?;
    let cross = ok(graded_hom(&b0, &b1, 0), "hom")?.dim() + ok(graded_hom(&b1, &b0, 0), "hom")?.dim();
    ensure!(cross == 0, "(e) {cross} maps between the two summands");

    Ok(format!(
        "(a) f_* vanishes, (b) {} of 9 two-sided, (c) I_1 = (x), I_2 = A, (d) 2 and 6, (e) split",
        table.iter().filter(|&&t| t).count()
    ))
}

// ---------------------------------------------------------------------------------------
// 7

/// `dim (MJ)_e` from products `v·j`, `v ∈ M_{e−k}`, `j ∈ J_k`.
fn mj_dims(m: &GradedModule, j: &GradedIdeal) -> Result<Vec<usize>, String> {
    let field = m.algebra().field();
    let mut out = Vec::new();
    for e in m.lo()..=m.hi() {
        let mut span = Subspace::zero(field, ok(m.dim(e), "dim")?);
        for k in 1..=e - m.lo() {
            if k > j.hi() {
                break;
            }
            for g in ok(j.component_elements(k), "ideal")? {
                for row in ok(m.element_matrix(e - k, &g, k), "action")?.row_vecs() {
                    span.insert(row);
                }
            }
        }
        out.push(span.dim());
    }
    Ok(out)
}

fn closed_immersion() -> Check {
    const D: i64 = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc7);
    let mut nontrivial = 0;
    for _ in 0..20 {
        let text = tame_presentation(&mut rng, true, false);
        let a = algebra(&text, D)?;
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let e = rng.gen_range(1..=2);
            if let Some(p) = random_element(&mut rng, &a, e) {
                gens.push(poly(&a, &p)?);
            }
        }
        let imm = ok(ClosedImmersion::new(&a, gens), &text)?;
        let q = imm.quotient().clone();
        if !imm.ideal().is_zero() {
            nontrivial += 1;
        }
        let ctx = format!("{text}, J = {}", imm.ideal().display());

        // counit on a random A/J-module
        let n_text = random_module_text(&mut rng, &q);
        let n = module(&q, &n_text, D)?;
        let inflated = ok(imm.inflate(&n), "inflate")?;
        let back = ok(imm.pullback(&inflated), "pullback")?;
        ensure!(back.dims() == n.dims(), "{ctx}, N = {n_text}: i*i_*N {:?} against {:?}", back.dims(), n.dims());

        let tors = ok(imm.torsion(&inflated), "torsion")?;
        for e in tors.lo()..=tors.hi() {
            ensure!(
                ok(tors.dim(e), "dim")? == ok(inflated.dim(e), "dim")?,
                "{ctx}, N = {n_text}: torsion is smaller in degree {e}"
            );
        }

        // i*M against M/MJ, and against the presentation of M read over A/J
        let m_text = random_module_text(&mut rng, &a);
        let m = module(&a, &m_text, D)?;
        let pulled = ok(imm.pullback(&m), "pullback")?;
        let mj = mj_dims(&m, imm.ideal())?;
        let over_q = module(&q, &m_text, D)?;
        for (k, e) in (m.lo()..=m.hi()).enumerate() {
            let (dm, dp) = (ok(m.dim(e), "dim")?, ok(pulled.dim(e), "dim")?);
            ensure!(dp + mj[k] == dm, "{ctx}, M = {m_text}, degree {e}: {dp} + {} ≠ {dm}", mj[k]);
            ensure!(
                dp == ok(over_q.dim(e), "dim")?,
                "{ctx}, M = {m_text}, degree {e}: M ⊗ A/J has another dimension"
            );
        }
    }
    Ok(format!("20 triples ({nontrivial} with J ≠ 0)"))
}

// ---------------------------------------------------------------------------------------
// 8

struct SkewBase {
    text: String,
    weights: Vec<u32>,
}

/// Skew polynomial ring on two or three generators.
fn skew_base(rng: &mut ChaCha8Rng, commutative: bool) -> SkewBase {
    let g = rng.gen_range(2..=3usize);
    let weights: Vec<u32> = (0..g).map(|_| rng.gen_range(1..=2)).collect();
    let mut text = header("Q", &weights);
    for i in 0..g {
        for j in i + 1..g {
            let q = if commutative { 1 } else { *[1, -1, 2, 3].choose(rng).unwrap() };
            text.push_str(&format!("; rel {}", poly_text(&[(1, vec![j as u16, i as u16]), (-q, vec![i as u16, j as u16])])));
        }
    }
    SkewBase { text, weights }
}

/// `c·x − σ(x)·c` for `σ(x) = λx`.
fn inner_derivation(c: &[(i64, Vec<u16>)], x: u16, lambda: i64) -> String {
    let mut terms = Vec::new();
    for (a, w) in c {
        let mut right = w.clone();
        right.push(x);
        let mut left = vec![x];
        left.extend(w);
        terms.push((*a, right));
        terms.push((-lambda * a, left));
    }
    // merge equal words
    let mut merged: Vec<(i64, Vec<u16>)> = Vec::new();
    for (a, w) in terms {
        match merged.iter_mut().find(|(_, v)| *v == w) {
            Some((b, _)) => *b += a,
            None => merged.push((a, w)),
        }
    }
    poly_text(&merged)
}

fn ore() -> Check {
    const D: i64 = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc8);
    let mut nonzero_delta = 0;
    for case in 0..10 {
        let commutative = case % 2 == 1;
        let base = skew_base(&mut rng, commutative);
        let r = algebra(&base.text, D)?;
        let n = rng.gen_range(1..=2i64);
        let g = base.weights.len();
        let (sigma, delta): (Vec<String>, Vec<String>) = if commutative {
            // σ = id, δ arbitrary on generators
            let sigma = (0..g).map(|i| NAMES[i].to_string()).collect();
            let delta = (0..g)
                .map(|i| random_element(&mut rng, &r, base.weights[i] as i64 + n).unwrap_or_else(|| "0".into()))
                .collect();
            (sigma, delta)
        } else {
            let lambdas: Vec<i64> = (0..g).map(|_| *[1, -1, 2, 3].choose(&mut rng).unwrap()).collect();
            let mut words = oracles::words_of_degree(&base.weights, n);
            words.shuffle(&mut rng);
            let c: Vec<(i64, Vec<u16>)> = words.into_iter().take(2).map(|w| (coefficient(&mut rng), w)).collect();
            let sigma = (0..g).map(|i| format!("{}*{}", lambdas[i], NAMES[i])).collect();
            let delta = (0..g).map(|i| inner_derivation(&c, i as u16, lambdas[i])).collect();
            (sigma, delta)
        };
        let images = sigma.iter().map(|s| poly(&r, s)).collect::<Result<Vec<_>, _>>()?;
        let sigma_map = ok(AlgebraMorphism::new(r.clone(), r.clone(), images, 1), "σ")?;
        let delta_polys = delta.iter().map(|s| poly(&r, s)).collect::<Result<Vec<_>, _>>()?;
        if delta_polys.iter().any(|p| !p.is_zero()) {
            nonzero_delta += 1;
        }
        let data = OreData { base: r.clone(), sigma: sigma_map, delta: delta_polys, n };
        let s = ok(ore_extension(&data, D), &format!("{}, σ = {sigma:?}, δ = {delta:?}", base.text))?;
        let hr = ok(r.hilbert(D), "hilbert")?;
        let hs = ok(s.algebra.hilbert(D), "hilbert")?;
        for i in 0..=D {
            let want: usize = (0..=i / n).map(|k| hr[(i - k * n) as usize]).sum();
            ensure!(
                hs[i as usize] == want,
                "{}, t weight {n}, σ = {sigma:?}, δ = {delta:?}: degree {i} has {} against {want}",
                base.text,
                hs[i as usize]
            );
        }
    }

    // σ(x) = λx, δ(x) = 0, δ(y) = x^{n+1} on yx = q·xy is a σ-derivation iff qλ = 1
    let mut rejected = 0;
    for _ in 0..10 {
        let q = *[1i64, -1, 2, 3].choose(&mut rng).unwrap();
        let lambda = *[1i64, -1, 2, 3, 5].iter().filter(|&&l| q * l != 1).collect::<Vec<_>>().choose(&mut rng).unwrap();
        let n = rng.gen_range(1..=2i64);
        let r = algebra(&format!("field Q; gen x 1; gen y 1; rel y*x - {q}*x*y"), D)?;
        let sigma = ok(
            AlgebraMorphism::new(r.clone(), r.clone(), vec![poly(&r, &format!("{lambda}*x"))?, poly(&r, "y")?], 1),
            "σ",
        )?;
        let xs = vec!["x"; (n + 1) as usize].join("*");
        let data = OreData { base: r.clone(), sigma, delta: vec![poly(&r, "0")?, poly(&r, &xs)?], n };
        match ore_extension(&data, D) {
            Err(Error::NotADerivation(_)) => rejected += 1,
            Err(e) => return Err(format!("q = {q}, λ = {lambda}: {e} instead of NotADerivation")),
            Ok(_) => return Err(format!("q = {q}, λ = {lambda}: accepted an invalid δ")),
        }
    }
    Ok(format!("10 valid ({nonzero_delta} with δ ≠ 0) through degree {D}; {rejected} of 10 invalid δ rejected"))
}

// ---------------------------------------------------------------------------------------
// 9

fn verevkin() -> Check {
    const D: i64 = 12;
    let a = algebra(WTD12, D)?;
    let v = ok(VeroneseAlgebra::new(&a, 2), "Veronese")?;
    let f = ok(ideal_family(&a, 2, D), "family")?;
    let m = ok(regular_module(&a, D), "module")?.shift(1);
    let r = ok(verevkin_defect(&v, &f, &m), "defect")?;
    ensure!(r.annihilated(), "k[x,z], M = A(1): not annihilated: {:?}", r.rows);
    let defect: usize = r.rows.iter().map(|row| row.kernel + row.cokernel).sum();

    let mut rng = ChaCha8Rng::seed_from_u64(0xacc9);
    let mut algebras: Vec<String> = vec![
        "field Q; gen x 1".into(),
        "field Q; gen x 1; gen y 1; rel y*x - x*y".into(),
        "field Q; gen x 1; gen y 1; rel y*x - 2*x*y".into(),
        "field Q; gen x 1; gen y 1; rel y*x + x*y".into(),
    ];
    algebras.extend((0..4).map(|_| tame_presentation(&mut rng, true, true)));
    const DG: i64 = 10;
    let (mut cases, mut shifted) = (0, 0);
    let mut shifted_tail = i64::MIN;
    for text in &algebras {
        let a = algebra(text, DG)?;
        let cyclic = match random_element(&mut rng, &a, 1) {
            Some(x) => module(&a, &format!("gen g 0; rel g*({x})"), DG)?,
            None => ok(regular_module(&a, DG), "module")?,
        };
        for n in 2..=3 {
            let v = ok(VeroneseAlgebra::new(&a, n), "Veronese")?;
            let f = ok(ideal_family(&a, n, DG), "family")?;
            let reg = ok(regular_module(&a, DG), "module")?;
            let r = ok(verevkin_defect(&v, &f, &reg), "defect")?;
            ensure!(
                r.vanishes_from(1) && r.annihilated(),
                "{text}, n = {n}, M = A: {:?}",
                r.rows
            );
            cases += 1;
            // A(1) and A/xA keep a kernel in low degrees; it only has to be annihilated.
            for m in [reg.shift(1), cyclic.clone()] {
                let r = ok(verevkin_defect(&v, &f, &m), "defect")?;
                ensure!(r.annihilated(), "{text}, n = {n}, M from degree {}: not annihilated: {:?}", m.lo(), r.rows);
                if let Some(last) = r.rows.iter().filter(|row| row.kernel + row.cokernel > 0).map(|row| row.degree).max() {
                    shifted_tail = shifted_tail.max(last);
                }
                shifted += 1;
            }
        }
    }
    let tail = if shifted_tail == i64::MIN { "none".to_string() } else { shifted_tail.to_string() };
    Ok(format!(
        "k[x,z], M = A(1): total defect {defect}, annihilated; {cases} degree-one cases with M = A \
         vanish from degree 1; {shifted} with M = A(1) or A/xA annihilated (last nonzero degree {tail})"
    ))
}

// ---------------------------------------------------------------------------------------
// 10

fn suite_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/suite.toml")
}

fn determinism() -> Check {
    let path = suite_path();
    let render = || -> Result<(Vec<String>, usize), String> {
        let outcomes = ok(run_scenarios(&path), "suite")?;
        let good = outcomes.iter().filter(|o| o.ok()).count();
        Ok((
            outcomes.iter().map(|o| format!("{}\n{}\n{}", o.name, o.verdict, o.output)).collect(),
            good,
        ))
    };
    let (first, good) = render()?;
    let (second, _) = render()?;
    ensure!(good == first.len(), "{} of {} scenarios failed", first.len() - good, first.len());
    for (a, b) in first.iter().zip(&second) {
        ensure!(a == b, "outputs differ:\n{a}\n---\n{b}");
    }
    std::env::set_var("NCPROJ_THREADS", "1");
    let (serial, _) = render()?;
    std::env::remove_var("NCPROJ_THREADS");
    ensure!(serial == first, "single-threaded run differs");
    let bytes: usize = first.iter().map(String::len).sum();
    Ok(format!("{} scenarios, 3 runs byte-identical ({bytes} bytes)", first.len()))
}
