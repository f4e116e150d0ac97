use std::sync::Arc;

use crate::error::{Error, Result};
use crate::free::{FreePoly, GeneratorInfo, Presentation, Word};
use crate::groebner::{AlgebraRef, GradedAlgebra};
use crate::linalg::row_reduce;
use crate::morphism::AlgebraMorphism;

/// `R[t; σ, δ]` data: `t·r = σ(r)·t + δ(r)`, with `t` of weight `n`.
#[derive(Clone, Debug)]
pub struct OreData {
    pub base: AlgebraRef,
    pub sigma: AlgebraMorphism,
    /// `δ(x)` for each generator `x`, homogeneous of degree `weight(x) + n`.
    pub delta: Vec<FreePoly>,
    pub n: i64,
}

#[derive(Clone, Debug)]
pub struct OreExtension {
    pub presentation: Presentation,
    pub algebra: AlgebraRef,
    pub t: u16,
}

/// `δ` on a word: `Σ_i σ(x_1⋯x_{i−1})·δ(x_i)·x_{i+1}⋯x_k`.
fn delta_word(o: &OreData, letters: &[u16]) -> Result<FreePoly> {
    let p = o.base.presentation();
    let field = o.base.field();
    let mut out = FreePoly::zero(field);
    let mut prefix = FreePoly::one(field);
    for (i, &x) in letters.iter().enumerate() {
        let suffix = FreePoly::word(field, p.word(&letters[i + 1..]));
        let term = prefix.mul(&o.delta[x as usize])?.mul(&suffix)?;
        out = out.add(&term)?;
        prefix = prefix.mul(&o.sigma.images()[x as usize])?;
    }
    Ok(out)
}

fn delta_poly(o: &OreData, f: &FreePoly) -> Result<FreePoly> {
    let mut out = FreePoly::zero(o.base.field());
    for (w, c) in f.terms() {
        out = out.add(&delta_word(o, w.letters())?.scale(c))?;
    }
    Ok(out)
}

/// Validates the data and presents `R[t; σ, δ]` through degree `d`. The Hilbert function
/// `h_S(i) = Σ_k h_R(i − kn)` is checked on `[0, d]`.
pub fn ore_extension(o: &OreData, d: i64) -> Result<OreExtension> {
    let base = &o.base;
    let p = base.presentation();
    if !Arc::ptr_eq(o.sigma.source(), base) || !Arc::ptr_eq(o.sigma.target(), base) || o.sigma.scale() != 1 {
        return Err(Error::ContextMismatch("σ must be a degree-preserving endomorphism of the base".into()));
    }
    if o.n < 1 {
        return Err(Error::InvalidArgument(format!("weight of t must be positive, got {}", o.n)));
    }
    if o.delta.len() != p.num_generators() {
        return Err(Error::DimensionMismatch {
            expected: p.num_generators(),
            found: o.delta.len(),
        });
    }
    if d > base.bound() {
        return Err(Error::WindowExceedsBound {
            requested: d,
            limit: base.bound(),
        });
    }
    for e in 0..=d {
        let m = o.sigma.matrix(e)?;
        if row_reduce(m)?.rank != m.rows() || m.rows() != m.cols() {
            return Err(Error::NotAnAutomorphism(e));
        }
    }
    let mut delta = Vec::with_capacity(o.delta.len());
    for (x, f) in o.delta.iter().enumerate() {
        let want = base.weight(x as u16) + o.n;
        if !f.is_zero() && f.degree() != Some(want) {
            return Err(Error::NotADerivation(format!(
                "δ({}) must be homogeneous of degree {want}",
                p.names()[x]
            )));
        }
        delta.push(if want <= base.bound() { base.normal_form(f)? } else { f.clone() });
    }
    let o = &OreData {
        delta,
        ..o.clone()
    };
    for r in p.relations() {
        let k = r.degree().expect("homogeneous") + o.n;
        if k > base.bound() {
            continue;
        }
        if !base.normal_form(&delta_poly(o, r)?)?.is_zero() {
            return Err(Error::NotADerivation(format!(
                "δ does not respect the relation {}",
                p.display_poly(r)
            )));
        }
    }
    let t_name = p.fresh_name("t");
    let mut gens: Vec<GeneratorInfo> = p.generators().to_vec();
    gens.push(GeneratorInfo::new(t_name, o.n as u32));
    let weights: Vec<u32> = gens.iter().map(|g| g.weight).collect();
    let t = p.num_generators() as u16;
    let field = base.field();
    let mut rels: Vec<FreePoly> = p.relations().to_vec();
    let t_word = Word::letter(t, o.n as u32);
    for x in 0..t {
        let tx = FreePoly::word(field, Word::new(vec![t, x], &weights));
        let sigma_t = o.sigma.images()[x as usize].mul(&FreePoly::word(field, t_word.clone()))?;
        let rel = tx.sub(&sigma_t)?.sub(&o.delta[x as usize])?;
        rels.push(rel);
    }
    let pres = Presentation::new(field, gens, rels)?;
    let algebra = GradedAlgebra::new(&pres, d)?;
    for i in 0..=d {
        let expect: usize = (0..)
            .map(|k| i - k * o.n)
            .take_while(|&e| e >= 0)
            .map(|e| base.dim(e))
            .sum::<Result<usize>>()?;
        if algebra.dim(i)? != expect {
            return Err(Error::Inconsistent(format!(
                "Ore extension has dimension {} in degree {i}, expected {expect}",
                algebra.dim(i)?
            )));
        }
    }
    Ok(OreExtension {
        presentation: pres,
        algebra,
        t,
    })
}
