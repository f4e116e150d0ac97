use crate::error::Result;
use crate::free::FreePoly;
use crate::groebner::AlgebraRef;
use crate::linalg::Subspace;
use crate::morphism::AlgebraMorphism;

use super::ideal::{largest_twosided_inside, GradedIdeal, Sidedness, TwoSidedCore};

/// `φ(𝔪)B`: the right ideal of the target generated by the images of the source
/// generators, on `[0, d]`.
pub fn image_right_ideal(phi: &AlgebraMorphism, d: i64) -> Result<GradedIdeal> {
    GradedIdeal::new(phi.target(), phi.images().to_vec(), Sidedness::Right, d)
}

/// `V[k][e]`: span of images of products of exactly `k` source generators in `B_e`.
fn image_powers(phi: &AlgebraMorphism, kmax: usize, d: i64) -> Result<Vec<Vec<Subspace>>> {
    let b = phi.target();
    let a = phi.source();
    let s = phi.scale();
    let field = b.field();
    let zero = |b: &AlgebraRef| -> Result<Vec<Subspace>> {
        (0..=d).map(|e| Ok(Subspace::zero(field, b.dim(e)?))).collect()
    };
    let mut v = vec![zero(b)?];
    v[0][0] = Subspace::full(field, 1);
    for k in 1..=kmax {
        let mut cur = zero(b)?;
        for (e, comp) in cur.iter_mut().enumerate() {
            let e = e as i64;
            for x in 0..a.num_generators() as u16 {
                let w = s * a.weight(x);
                let src = e - w;
                if src < 0 || v[k - 1][src as usize].is_zero() {
                    continue;
                }
                let m = b.right_mul_poly(src, &phi.images()[x as usize], w)?;
                for r in v[k - 1][src as usize].basis() {
                    comp.insert(m.left_apply(r));
                }
            }
        }
        v.push(cur);
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReport {
    /// Smallest `n` with `B·φ(𝔪)ⁿ ⊆ φ(𝔪)B` through degree `certified_through`.
    pub n: Option<usize>,
    pub certified_through: i64,
    /// For `n = nmax` when no `n` works: an element of `B·φ(𝔪)ⁿ` outside `φ(𝔪)B`.
    pub witness: Option<FreePoly>,
}

/// Tests `B·φ(𝔪)ⁿ ⊆ φ(𝔪)B` degree-wise through `d` for `n = 1, …, nmax`.
pub fn check_affine_hypothesis(phi: &AlgebraMorphism, nmax: usize, d: i64) -> Result<AffineReport> {
    let b = phi.target();
    let field = b.field();
    let right = image_right_ideal(phi, d)?;
    let powers = image_powers(phi, nmax.max(d.max(0) as usize), d)?;
    let mut witness = None;
    for n in 1..=nmax {
        let mut left: Vec<Subspace> = Vec::new();
        let mut failed = None;
        'degrees: for e in 0..=d {
            let mut l = Subspace::zero(field, b.dim(e)?);
            for layer in &powers[n..] {
                for r in layer[e as usize].basis() {
                    l.insert(r.clone());
                }
            }
            for x in 0..b.num_generators() as u16 {
                let src = e - b.weight(x);
                if src < 0 {
                    continue;
                }
                let m = b.left_mul(src, x)?;
                for r in left[src as usize].basis() {
                    l.insert(m.left_apply(r));
                }
            }
            let target = right.component(e)?;
            for r in l.basis() {
                if !target.contains(r) {
                    failed = Some(b.element(e, r)?);
                    break 'degrees;
                }
            }
            left.push(l);
        }
        match failed {
            None => {
                return Ok(AffineReport {
                    n: Some(n),
                    certified_through: d,
                    witness: None,
                })
            }
            Some(w) => witness = Some(w),
        }
    }
    Ok(AffineReport {
        n: None,
        certified_through: d,
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct FiniteModuleReport {
    /// `dim (B/φ(𝔪)B)_e` for `e ∈ [0, d]`.
    pub quotient_dims: Vec<usize>,
    /// First degree from which the quotient is seen to vanish.
    pub vanishes_from: Option<i64>,
    /// Annihilator of `B/φ(𝔪)B`: the largest two-sided ideal inside `φ(𝔪)B`.
    pub annihilator: TwoSidedCore,
    pub annihilator_quotient_dims: Vec<usize>,
}

impl FiniteModuleReport {
    pub fn is_finite(&self) -> bool {
        self.vanishes_from.is_some()
    }
}

/// `B/φ(𝔪)B` is cyclic, so once it vanishes on `max weight` consecutive degrees it
/// vanishes from there on.
pub fn finite_module_check(phi: &AlgebraMorphism, d: i64) -> Result<FiniteModuleReport> {
    let b = phi.target();
    let right = image_right_ideal(phi, d)?;
    let quotient_dims = right.quotient_dims();
    let w = b.max_weight() as usize;
    let vanishes_from = (0..quotient_dims.len())
        .find(|&e| e + w <= quotient_dims.len() && quotient_dims[e..e + w].iter().all(|&q| q == 0))
        .map(|e| e as i64);
    let annihilator = largest_twosided_inside(&right, d)?;
    let annihilator_quotient_dims = annihilator.ideal.quotient_dims();
    Ok(FiniteModuleReport {
        quotient_dims,
        vanishes_from,
        annihilator,
        annihilator_quotient_dims,
    })
}
