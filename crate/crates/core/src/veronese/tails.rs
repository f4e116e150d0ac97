use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::free::FreePoly;
use crate::groebner::AlgebraRef;
use crate::linalg::{left_kernel_basis, row_reduce, Matrix, Scalar, Subspace};
use crate::module::{graded_hom, GradedModule};

use super::algebra::VeroneseAlgebra;
use super::family::IdealFamily;
use super::functors::{veronese_pullback, veronese_pushforward};

/// `p_r(M) = ⊕_i M_{r+in}`, for algebras living in degrees divisible by `n`.
pub fn projector(m: &GradedModule, n: i64, r: i64) -> Result<GradedModule> {
    let a = m.algebra();
    if n < 1 {
        return Err(Error::InvalidArgument(format!("period {n} must be positive")));
    }
    for i in 1..=a.bound() {
        if i % n != 0 && a.dim(i)? != 0 {
            return Err(Error::AlgebraNotConcentrated(i, n as u32));
        }
    }
    let field = a.field();
    let keep = |e: i64| (e - r).rem_euclid(n) == 0;
    let mut dims = Vec::new();
    let mut actions = Vec::new();
    for e in m.lo()..=m.hi() {
        let de = if keep(e) { m.dim(e)? } else { 0 };
        dims.push(de);
        let mut row = Vec::new();
        for x in 0..a.num_generators() as u16 {
            let t = e + a.weight(x);
            if t > m.hi() {
                row.push(None);
            } else if keep(e) {
                row.push(Some(m.action(e, x)?.into_owned()));
            } else {
                row.push(Some(Matrix::zeros(field, 0, if keep(t) { m.dim(t)? } else { 0 })));
            }
        }
        actions.push(row);
    }
    GradedModule::from_data(a.clone(), m.lo(), m.hi(), m.is_bounded(), dims, actions)
}

/// Whether `M_{≥s}` and `N_{≥s}`, cut off above `hi`, are isomorphic: the space of
/// degree-preserving maps is computed exactly and a few seeded random elements are tested
/// for invertibility in every degree. Only a window-level proxy.
pub fn tails_window_equal(m: &GradedModule, n: &GradedModule, s: i64, hi: i64, seed: u64) -> Result<bool> {
    if !Arc::ptr_eq(m.algebra(), n.algebra()) {
        return Err(Error::ContextMismatch("modules over different algebras".into()));
    }
    let mt = m.truncate_below(s).truncate_window(s, hi)?;
    let nt = n.truncate_below(s).truncate_window(s, hi)?;
    for e in s..=hi {
        if mt.dim(e)? != nt.dim(e)? {
            return Ok(false);
        }
    }
    let h = graded_hom(&mt, &nt, 0)?;
    let field = m.algebra().field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let coeffs: Vec<Scalar> = (0..h.dim()).map(|_| field.from_i64(rng.gen_range(-50..=50))).collect();
        let f = h.combination(&coeffs);
        let mut ok = true;
        for e in s..=hi {
            let d = mt.dim(e)?;
            if d == 0 {
                continue;
            }
            let map = h.degree_map(&mt, &nt, &f, e)?;
            if row_reduce(&map)?.rank != d {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectRow {
    pub degree: i64,
    pub kernel: usize,
    pub cokernel: usize,
    /// Kernel killed by every generator of `I` (where the product is in the window).
    pub kernel_killed: bool,
    /// `M_e·g` lands in the image for every generator `g` of `I`.
    pub cokernel_killed: bool,
    /// Kernel killed by `A_{nj+r}` for `r ≡ −e`.
    pub class_pattern: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub rows: Vec<DefectRow>,
}

impl DefectReport {
    pub fn annihilated(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.kernel_killed && r.cokernel_killed && r.class_pattern)
    }

    /// Whether kernel and cokernel vanish in every degree `≥ s`.
    pub fn vanishes_from(&self, s: i64) -> bool {
        self.rows
            .iter()
            .filter(|r| r.degree >= s)
            .all(|r| r.kernel == 0 && r.cokernel == 0)
    }
}

/// The multiplication map `f*f_*M → M` in each degree of `M`'s window.
pub fn verevkin_defect(v: &VeroneseAlgebra, family: &IdealFamily, m: &GradedModule) -> Result<DefectReport> {
    let a = v.base();
    if !Arc::ptr_eq(m.algebra(), a) {
        return Err(Error::ContextMismatch("module is not over the base algebra".into()));
    }
    let n = v.n();
    let field = a.field();
    let pushed = veronese_pushforward(v, m)?;
    let top = m.hi();
    let ind = veronese_pullback(v, &pushed, top)?;
    let pres = ind.presentation()?;
    let images_of_generators = &pushed.presentation()?.generator_vectors;
    let cover = pres.cover();
    let gens: Vec<FreePoly> = family.intersection.minimal_generators();
    let mut kernels: Vec<Subspace> = Vec::new();
    let mut images: Vec<Subspace> = Vec::new();
    let lo = m.lo();
    for e in lo..=top {
        let dn = if ind.knows(e) { ind.dim(e)? } else { 0 };
        let dm = m.dim(e)?;
        if dn == 0 {
            kernels.push(Subspace::zero(field, 0));
            images.push(Subspace::zero(field, dm));
            continue;
        }
        let labels = cover.labels(a, e)?;
        let rows = labels
            .iter()
            .map(|(i, w)| m.act_word(pres.generators[*i], &images_of_generators[*i], w.letters()))
            .collect::<Result<Vec<_>>>()?;
        let on_cover = Matrix::from_rows(field, dm, rows)?;
        let mu = ind.cover_section(e)?.mul(&on_cover)?;
        kernels.push(Subspace::from_matrix(&left_kernel_basis(&mu)?));
        images.push(Subspace::from_matrix(&mu));
    }
    let mut rows = Vec::new();
    for (k, e) in (lo..=top).enumerate() {
        let ker = &kernels[k];
        let img = &images[k];
        let mut kernel_killed = true;
        let mut cokernel_killed = true;
        for g in &gens {
            let d = g.degree().expect("nonzero");
            if e + d > top {
                continue;
            }
            if !ker.is_zero() {
                let act = ind.element_matrix(e, g, d)?;
                kernel_killed &= ker.basis().iter().all(|r| act.left_apply(r).iter().all(Scalar::is_zero));
            }
            let act = m.element_matrix(e, g, d)?;
            let target = &images[k + d as usize];
            cokernel_killed &= act.row_vecs().iter().all(|r| target.contains(r));
        }
        let mut class_pattern = true;
        if !ker.is_zero() {
            let r = (-e).rem_euclid(n);
            let mut deg = if r == 0 { n } else { r };
            // I_n contains 1, so degrees e ≡ 0 need an empty kernel
            if r == 0 {
                class_pattern = false;
            }
            while class_pattern && e + deg <= top {
                for u in a.basis(deg)? {
                    let act = ind.element_matrix(e, &FreePoly::word(field, u.clone()), deg)?;
                    class_pattern &= ker.basis().iter().all(|row| act.left_apply(row).iter().all(Scalar::is_zero));
                }
                deg += n;
            }
        }
        rows.push(DefectRow {
            degree: e,
            kernel: ker.dim(),
            cokernel: img.ambient() - img.dim(),
            kernel_killed,
            cokernel_killed,
            class_pattern,
        });
    }
    Ok(DefectReport { rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinVeroneseReport {
    pub d: Option<i64>,
    /// `(d, top)`: for each `d` tried, degrees `2..=top` of `A⁽ᵈ⁾` were tested.
    pub tried: Vec<(i64, i64)>,
}

/// Smallest `d ≤ dmax` such that `(A⁽ᵈ⁾)_1` generates `(A⁽ᵈ⁾)_i` for every testable
/// `i ≥ 2`; only `d` with `2d ≤` the bound are tried.
pub fn min_veronese_gen1(a: &AlgebraRef, dmax: i64) -> Result<MinVeroneseReport> {
    let field = a.field();
    let mut tried = Vec::new();
    for d in 1..=dmax {
        if 2 * d > a.bound() {
            break;
        }
        let top = a.bound() / d;
        tried.push((d, top));
        let base: Vec<FreePoly> = a
            .basis(d)?
            .iter()
            .map(|w| FreePoly::word(field, w.clone()))
            .collect();
        let mut span = Subspace::full(field, a.dim(d)?);
        let mut ok = true;
        for i in 2..=top {
            let src = d * (i - 1);
            let mut next = Subspace::zero(field, a.dim(d * i)?);
            for u in &base {
                let m = a.right_mul_poly(src, u, d)?;
                for r in span.basis() {
                    next.insert(m.left_apply(r));
                }
            }
            if !next.is_full() {
                ok = false;
                break;
            }
            span = next;
        }
        if ok {
            return Ok(MinVeroneseReport { d: Some(d), tried });
        }
    }
    Ok(MinVeroneseReport { d: None, tried })
}
