use crate::error::{Error, Result};
use crate::groebner::AlgebraRef;
use crate::ideals::{GradedIdeal, Sidedness};
use crate::linalg::Subspace;

/// `I_r = Σ_j A_{nj+r}·A` for `r = 1, …, n` and `I = ∩ I_r`, on `[0, d]`.
#[derive(Clone, Debug)]
pub struct IdealFamily {
    pub n: i64,
    /// `components[r − 1] = I_r`.
    pub components: Vec<GradedIdeal>,
    pub intersection: GradedIdeal,
    /// Whether `I` was seen to be two-sided on the window.
    pub twosided: bool,
}

impl IdealFamily {
    /// `I_r` for any integer `r`.
    pub fn get(&self, r: i64) -> &GradedIdeal {
        let k = (r - 1).rem_euclid(self.n) as usize;
        &self.components[k]
    }
}

fn class_ideal(a: &AlgebraRef, n: i64, r: i64, d: i64) -> Result<GradedIdeal> {
    let field = a.field();
    let mut comps: Vec<Subspace> = Vec::new();
    for e in 0..=d {
        let dim = a.dim(e)?;
        let c = if (e - r).rem_euclid(n) == 0 {
            Subspace::full(field, dim)
        } else {
            let mut c = Subspace::zero(field, dim);
            for x in 0..a.num_generators() as u16 {
                let src = e - a.weight(x);
                if src < 0 {
                    continue;
                }
                let m = a.right_mul(src, x)?;
                for v in comps[src as usize].basis() {
                    c.insert(m.left_apply(v));
                }
            }
            c
        };
        comps.push(c);
    }
    Ok(GradedIdeal::from_components(a, Sidedness::Right, comps))
}

pub fn ideal_family(a: &AlgebraRef, n: i64, d: i64) -> Result<IdealFamily> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("Veronese index {n} must be positive")));
    }
    a.check_degree(d)?;
    let components = (1..=n)
        .map(|r| class_ideal(a, n, r, d))
        .collect::<Result<Vec<_>>>()?;
    let mut comps: Vec<Subspace> = Vec::new();
    for e in 0..=d {
        let mut c = components[0].component(e)?.clone();
        for other in &components[1..] {
            c = c.intersect(other.component(e)?)?;
        }
        comps.push(c);
    }
    let intersection = GradedIdeal::from_components(a, Sidedness::TwoSided, comps);
    let twosided = intersection.is_twosided(d)?.is_none();
    Ok(IdealFamily {
        n,
        components,
        intersection,
        twosided,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaIRow {
    pub degree: i64,
    /// `dim (I^{2n})_e`
    pub power_dim: usize,
    /// `dim (I⁽ⁿ⁾A)_e`
    pub target_dim: usize,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaIReport {
    pub rows: Vec<LemmaIRow>,
}

impl LemmaIReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.contained)
    }
}

/// Checks `I^{2n} ⊆ I⁽ⁿ⁾·A` in each degree `≤ d`.
pub fn check_lemma_i(family: &IdealFamily, d: i64) -> Result<LemmaIReport> {
    let i = &family.intersection;
    let a = i.algebra().clone();
    let field = a.field();
    let n = family.n;
    i.component(d)?;
    if let Some(m) = i.min_degree() {
        if 2 * n * m > d {
            return Err(Error::WindowInsufficient {
                degree: 2 * n * m,
                reason: format!("I starts in degree {m}, so its {}-th power starts beyond the bound", 2 * n),
            });
        }
    }
    let gens = i.minimal_generators();
    let gen_degrees: Vec<i64> = gens.iter().map(|g| g.degree().expect("nonzero")).collect();
    let close = |seed: &dyn Fn(i64) -> Result<Subspace>| -> Result<Vec<Subspace>> {
        let mut out: Vec<Subspace> = Vec::new();
        for e in 0..=d {
            let mut c = seed(e)?;
            for x in 0..a.num_generators() as u16 {
                let src = e - a.weight(x);
                if src < 0 {
                    continue;
                }
                let m = a.right_mul(src, x)?;
                for v in out[src as usize].basis() {
                    c.insert(m.left_apply(v));
                }
            }
            out.push(c);
        }
        Ok(out)
    };
    let mut power: Vec<Subspace> = (0..=d).map(|e| i.component(e).cloned()).collect::<Result<_>>()?;
    for _ in 1..2 * n {
        let prev = power.clone();
        power = close(&|e| {
            let mut c = Subspace::zero(field, a.dim(e)?);
            for (g, &k) in gens.iter().zip(&gen_degrees) {
                if e - k < 0 {
                    continue;
                }
                let m = a.right_mul_poly(e - k, g, k)?;
                for v in prev[(e - k) as usize].basis() {
                    c.insert(m.left_apply(v));
                }
            }
            Ok(c)
        })?;
    }
    let target = close(&|e| {
        if e % n == 0 {
            Ok(i.component(e)?.clone())
        } else {
            Ok(Subspace::zero(field, a.dim(e)?))
        }
    })?;
    let rows = (0..=d)
        .map(|e| {
            let (p, t) = (&power[e as usize], &target[e as usize]);
            LemmaIRow {
                degree: e,
                power_dim: p.dim(),
                target_dim: t.dim(),
                contained: p.is_subspace_of(t),
            }
        })
        .collect();
    Ok(LemmaIReport { rows })
}
