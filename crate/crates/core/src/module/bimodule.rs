use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::AlgebraRef;
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::morphism::AlgebraMorphism;
use crate::veronese::VeroneseAlgebra;

use super::graded::GradedModule;
use super::hom::{graded_hom, ModuleMapSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BimoduleKind {
    Identity,
    Restriction,
    Veronese(i64),
}

/// The functors whose bimodules are built here.
pub enum WattsFunctor<'a> {
    Identity(&'a AlgebraRef),
    /// Restriction of scalars along `φ: A → B`, a functor `GrMod B → GrMod A`.
    Restrict(&'a AlgebraMorphism),
    /// `f_*`, degree `i` of the image taken from degree `n·i`.
    VeronesePushforward(&'a VeroneseAlgebra),
}

/// Bimodule `ₚM_q = C_{p+s·q}` for a morphism `ι: T → C` of degree scale `s`: `C` acts
/// on the left by multiplication, `T` on the right through `ι`.
///
/// Row `p` is `F(C(p))` for the functor `F` restricting along `ι`.
#[derive(Clone, Debug)]
pub struct BigradedBimodule {
    iota: AlgebraMorphism,
    kind: BimoduleKind,
}

fn insufficient(degree: i64, reason: impl Into<String>) -> Error {
    Error::WindowInsufficient {
        degree,
        reason: reason.into(),
    }
}

impl BigradedBimodule {
    pub fn from_morphism(iota: AlgebraMorphism, kind: BimoduleKind) -> Self {
        BigradedBimodule { iota, kind }
    }

    pub fn kind(&self) -> BimoduleKind {
        self.kind
    }

    /// Acting on the left.
    pub fn left_algebra(&self) -> &AlgebraRef {
        self.iota.target()
    }

    /// Acting on the right.
    pub fn right_algebra(&self) -> &AlgebraRef {
        self.iota.source()
    }

    pub fn morphism(&self) -> &AlgebraMorphism {
        &self.iota
    }

    pub fn scale(&self) -> i64 {
        self.iota.scale()
    }

    /// Certified when `p + s·q ≤` the left algebra's bound.
    pub fn certified(&self, p: i64, q: i64) -> bool {
        p + self.scale() * q <= self.left_algebra().bound()
    }

    pub fn component_dim(&self, p: i64, q: i64) -> Result<usize> {
        self.left_algebra().dim(p + self.scale() * q)
    }

    /// Left multiplication by the generator `c` of the left algebra, `ₚM_q → ₚ₊wM_q`.
    pub fn left_action(&self, p: i64, q: i64, c: u16) -> Result<Matrix> {
        let e = p + self.scale() * q;
        let cw = self.left_algebra().weight(c);
        if e < 0 {
            let field = self.left_algebra().field();
            return Ok(Matrix::zeros(field, 0, self.left_algebra().dim(e + cw)?));
        }
        Ok(self.left_algebra().left_mul(e, c)?.clone())
    }

    /// Right multiplication by the generator `t` of the right algebra, `ₚM_q → ₚM_{q+w}`.
    pub fn right_action(&self, p: i64, q: i64, t: u16) -> Result<Matrix> {
        let s = self.scale();
        let e = p + s * q;
        let w = s * self.right_algebra().weight(t);
        if e < 0 {
            let field = self.left_algebra().field();
            return Ok(Matrix::zeros(field, 0, self.left_algebra().dim(e + w)?));
        }
        self.left_algebra().right_mul_poly(e, &self.iota.images()[t as usize], w)
    }

    /// Row `p` as a right module over the right algebra, certified on `[.., q_hi]`.
    pub fn row(&self, p: i64, q_hi: i64) -> Result<GradedModule> {
        let s = self.scale();
        let t_alg = self.right_algebra();
        let c_alg = self.left_algebra();
        let lo = (-p).div_euclid(s) + i64::from((-p).rem_euclid(s) != 0);
        if p + s * q_hi > c_alg.bound() {
            return Err(insufficient(
                q_hi,
                format!("row {p} needs degree {} of the left algebra", p + s * q_hi),
            ));
        }
        let hi = q_hi.max(lo - 1);
        let mut dims = Vec::new();
        let mut actions = Vec::new();
        for q in lo..=hi {
            dims.push(c_alg.dim(p + s * q)?);
            let mut row = Vec::new();
            for t in 0..t_alg.num_generators() as u16 {
                if q + t_alg.weight(t) > hi {
                    row.push(None);
                } else {
                    row.push(Some(self.right_action(p, q, t)?));
                }
            }
            actions.push(row);
        }
        GradedModule::from_data(t_alg.clone(), lo, hi, false, dims, actions)
    }

    /// A degree `g` such that the left algebra is generated as a right module (through
    /// `ι`) in degrees `≤ g`, certified by a vanishing run of the generator quotient.
    pub fn generation_bound(&self) -> Result<i64> {
        let c = self.left_algebra();
        let t = self.right_algebra();
        let s = self.scale();
        let field = c.field();
        let w = c.max_weight();
        let mut last_nonzero = 0;
        for e in 0..=c.bound() {
            let n = c.dim(e)?;
            let mut image = Subspace::zero(field, n);
            for x in 0..t.num_generators() as u16 {
                let k = s * t.weight(x);
                if e - k < 0 {
                    continue;
                }
                let m = c.right_mul_poly(e - k, &self.iota.images()[x as usize], k)?;
                for r in m.row_vecs() {
                    image.insert(r);
                }
            }
            if image.dim() < n {
                last_nonzero = e;
            } else if e - last_nonzero >= w {
                return Ok(last_nonzero);
            }
        }
        Err(insufficient(
            c.bound() + 1,
            "the left algebra is not yet seen to be finitely generated over the right one",
        ))
    }
}

/// Bimodule `⊕_p F(A(p))` of the given functor.
pub fn watts_bimodule(f: &WattsFunctor<'_>) -> BigradedBimodule {
    match f {
        WattsFunctor::Identity(a) => {
            BigradedBimodule::from_morphism(AlgebraMorphism::identity(a), BimoduleKind::Identity)
        }
        WattsFunctor::Restrict(phi) => {
            BigradedBimodule::from_morphism((*phi).clone(), BimoduleKind::Restriction)
        }
        WattsFunctor::VeronesePushforward(v) => BigradedBimodule::from_morphism(
            v.embedding().clone(),
            BimoduleKind::Veronese(v.n()),
        ),
    }
}

struct Layout {
    blocks: Vec<(i64, usize, usize, usize)>,
    dim: usize,
}

impl Layout {
    fn block(&self, p: i64) -> Option<(usize, usize, usize)> {
        self.blocks
            .iter()
            .find(|b| b.0 == p)
            .map(|&(_, off, dl, dc)| (off, dl, dc))
    }
}

/// `L ⊗̄ M`: degree `q` is `⊕_p L_{−p} ⊗ ₚM_q` modulo `l·c ⊗ m − l ⊗ c·m`, computed on
/// `[⌈lo(L)/s⌉, q_hi]`.
pub fn bar_tensor(l: &GradedModule, m: &BigradedBimodule, q_hi: i64) -> Result<GradedModule> {
    let c_alg = m.left_algebra();
    let t_alg = m.right_algebra();
    if !Arc::ptr_eq(l.algebra(), c_alg) {
        return Err(Error::ContextMismatch("module is not over the left algebra".into()));
    }
    let field = c_alg.field();
    let s = m.scale();
    if l.is_zero() {
        return Ok(GradedModule::zero(t_alg.clone()));
    }
    let q_lo = l.lo().div_euclid(s) + i64::from(l.lo().rem_euclid(s) != 0);
    let q_hi = q_hi.max(q_lo - 1);
    for q in q_lo..=q_hi {
        if !l.knows(s * q) {
            return Err(insufficient(s * q, "left factor is not known in this degree"));
        }
        if s * q - l.lo() > c_alg.bound() {
            return Err(insufficient(q, "bimodule component beyond the algebra bound"));
        }
    }
    let layout = |q: i64| -> Result<Layout> {
        let mut blocks = Vec::new();
        let mut off = 0;
        for p in -s * q..=-l.lo() {
            let dl = l.dim(-p)?;
            let dc = c_alg.dim(p + s * q)?;
            blocks.push((p, off, dl, dc));
            off += dl * dc;
        }
        Ok(Layout { blocks, dim: off })
    };
    let mut layouts = Vec::new();
    let mut rels = Vec::new();
    for q in q_lo..=q_hi {
        let lay = layout(q)?;
        let mut rel = Subspace::zero(field, lay.dim);
        for c in 0..c_alg.num_generators() as u16 {
            let w = c_alg.weight(c);
            for p2 in (w - s * q)..=-l.lo() {
                let p1 = p2 - w;
                let (Some((o1, _, dc1)), Some((o2, dl2, dc2))) = (lay.block(p1), lay.block(p2)) else {
                    continue;
                };
                if dl2 == 0 || dc1 == 0 {
                    continue;
                }
                let act_l = l.action(-p2, c)?;
                let act_c = c_alg.left_mul(p1 + s * q, c)?;
                for a in 0..dl2 {
                    let lc = act_l.row(a);
                    for b in 0..dc1 {
                        let mut v = vec![field.zero(); lay.dim];
                        for (a1, coef) in lc.iter().enumerate() {
                            if !coef.is_zero() {
                                v[o1 + a1 * dc1 + b] = coef.clone();
                            }
                        }
                        for (b2, coef) in act_c.row(b).iter().enumerate() {
                            if !coef.is_zero() {
                                let k = o2 + a * dc2 + b2;
                                v[k] = &v[k] - coef;
                            }
                        }
                        rel.insert(v);
                    }
                }
            }
        }
        layouts.push(lay);
        rels.push(rel);
    }
    let mut right_cache: HashMap<(i64, u16), Matrix> = HashMap::new();
    let mut dims = Vec::new();
    let mut actions = Vec::new();
    for (k, q) in (q_lo..=q_hi).enumerate() {
        let rel = &rels[k];
        dims.push(rel.ambient() - rel.dim());
        let mut row = Vec::new();
        for t in 0..t_alg.num_generators() as u16 {
            let wt = t_alg.weight(t);
            if q + wt > q_hi {
                row.push(None);
                continue;
            }
            let src = &layouts[k];
            let dst_k = k + wt as usize;
            let dst = &layouts[dst_k];
            let target = &rels[dst_k];
            let mut mat_rows = Vec::new();
            for col in rel.complement_columns() {
                let &(p, off, _, dc) = src
                    .blocks
                    .iter()
                    .find(|b| b.1 <= col && col < b.1 + b.2 * b.3)
                    .expect("column lies in a block");
                let a = (col - off) / dc;
                let b = (col - off) % dc;
                let e = p + s * q;
                let r = match right_cache.get(&(e, t)) {
                    Some(r) => r,
                    None => {
                        let r = m.right_action(p, q, t)?;
                        right_cache.entry((e, t)).or_insert(r)
                    }
                };
                let (o2, _, dc2) = dst.block(p).expect("same row exists in higher degree");
                let mut v = vec![field.zero(); dst.dim];
                for (b2, coef) in r.row(b).iter().enumerate() {
                    if !coef.is_zero() {
                        v[o2 + a * dc2 + b2] = coef.clone();
                    }
                }
                mat_rows.push(target.quotient_coords(&v));
            }
            row.push(Some(Matrix::from_rows(field, target.ambient() - target.dim(), mat_rows)?));
        }
        actions.push(row);
    }
    GradedModule::from_data(t_alg.clone(), q_lo, q_hi, false, dims, actions)
}

/// `Hom͟_T(M, N)`: degree `p` is `Hom_{Gr T}(row(−p), N)`, and a left-algebra generator
/// `c` acts by precomposing with left multiplication. `N` must be bounded.
pub fn hom_bimodule(m: &BigradedBimodule, n: &GradedModule) -> Result<GradedModule> {
    let c_alg = m.left_algebra();
    let t_alg = m.right_algebra();
    if !Arc::ptr_eq(n.algebra(), t_alg) {
        return Err(Error::ContextMismatch("module is not over the right algebra".into()));
    }
    if !n.is_bounded() {
        return Err(insufficient(n.hi() + 1, "the module must be bounded above"));
    }
    if n.is_zero() {
        return Ok(GradedModule::zero(c_alg.clone()));
    }
    let s = m.scale();
    let g = m.generation_bound()?;
    let p_lo = s * n.lo() - g;
    let p_hi = s * n.hi();
    let field = c_alg.field();
    let mut rows = Vec::new();
    let mut spaces: Vec<ModuleMapSpace> = Vec::new();
    for p in p_lo..=p_hi {
        let row = m.row(-p, n.hi())?;
        let space = if row.hi() < row.lo() {
            graded_hom(&GradedModule::zero(t_alg.clone()), n, 0)?
        } else {
            graded_hom(&row, n, 0)?
        };
        rows.push(row);
        spaces.push(space);
    }
    let mut dims = Vec::new();
    let mut actions = Vec::new();
    for (k, p) in (p_lo..=p_hi).enumerate() {
        dims.push(spaces[k].dim());
        let mut act_row = Vec::new();
        for c in 0..c_alg.num_generators() as u16 {
            let w = c_alg.weight(c);
            if p + w > p_hi {
                act_row.push(None);
                continue;
            }
            let kk = k + w as usize;
            let (src_row, src_space) = (&rows[k], &spaces[k]);
            let (dst_row, dst_space) = (&rows[kk], &spaces[kk]);
            if dst_space.dim() == 0 || src_space.dim() == 0 {
                act_row.push(Some(Matrix::zeros(field, src_space.dim(), dst_space.dim())));
                continue;
            }
            let dst_pres = dst_row.presentation()?;
            let mut sections: HashMap<i64, Matrix> = HashMap::new();
            let mut mat_rows = Vec::new();
            for f in &src_space.basis {
                let mut images: Vec<Scalar> = Vec::with_capacity(dst_space.unknowns());
                for (j, &qj) in dst_pres.generators.iter().enumerate() {
                    // c · γ_j, an element of row(−p) in degree q_j
                    let gamma = &dst_pres.generator_vectors[j];
                    let moved = m.left_action(-p - w, qj, c)?.left_apply(gamma);
                    let ndim = n.dim(qj)?;
                    if ndim == 0 {
                        continue;
                    }
                    if !sections.contains_key(&qj) {
                        sections.insert(qj, src_row.cover_section(qj)?);
                    }
                    let lift = sections[&qj].left_apply(&moved);
                    let val = src_space.on_cover(src_row, n, f, qj)?.left_apply(&lift);
                    images.extend(val);
                }
                let coords = dst_space.coordinates(&images).ok_or_else(|| {
                    Error::Inconsistent("precomposition left the space of module maps".into())
                })?;
                mat_rows.push(coords);
            }
            act_row.push(Some(Matrix::from_rows(field, dst_space.dim(), mat_rows)?));
        }
        actions.push(act_row);
    }
    GradedModule::from_data(c_alg.clone(), p_lo, p_hi, true, dims, actions)
}

/// Both sides of `Hom(L ⊗̄ M, N) ≅ Hom(L, Hom͟(M, N))` in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub lhs: usize,
    pub rhs: usize,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn adjunction_check(l: &GradedModule, m: &BigradedBimodule, n: &GradedModule) -> Result<AdjunctionReport> {
    if !n.is_bounded() {
        return Err(insufficient(n.hi() + 1, "the target module must be bounded above"));
    }
    let tensor = bar_tensor(l, m, n.hi())?;
    let lhs = graded_hom(&tensor, n, 0)?.dim();
    let inner = hom_bimodule(m, n)?;
    let rhs = graded_hom(l, &inner, 0)?.dim();
    Ok(AdjunctionReport { lhs, rhs })
}
