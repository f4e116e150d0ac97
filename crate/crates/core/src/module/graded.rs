use std::borrow::Cow;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::free::FreePoly;
use crate::groebner::AlgebraRef;
use crate::linalg::{axpy, left_kernel_basis, solve_left, unit_vec, Matrix, Scalar, Subspace};

use super::cover::{FreeCover, ModuleElement};

/// Generators (by degree, with their vectors in the module) and relations in the free
/// cover. `certified_through = None` means the relation list is complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub generators: Vec<i64>,
    pub generator_vectors: Vec<Vec<Scalar>>,
    pub relations: Vec<ModuleElement>,
    pub certified_through: Option<i64>,
}

impl ModulePresentation {
    pub fn cover(&self) -> FreeCover {
        FreeCover::new(self.generators.clone())
    }
}

/// A graded right module known degree by degree on the window `[lo, hi]`.
///
/// `M_e = 0` for `e < lo`. When `bounded` is set, `M_e = 0` for `e > hi` as well;
/// otherwise nothing is claimed above `hi`. `actions[e − lo][x]` is the matrix of
/// right multiplication by generator `x`, `M_e → M_{e+w}`, present whenever the target
/// degree is known.
#[derive(Clone)]
pub struct GradedModule {
    algebra: AlgebraRef,
    lo: i64,
    hi: i64,
    bounded: bool,
    dims: Vec<usize>,
    actions: Vec<Vec<Option<Matrix>>>,
    presentation: OnceLock<Result<ModulePresentation>>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("bounded", &self.bounded)
            .field("dims", &self.dims)
            .finish()
    }
}

impl GradedModule {
    /// Builds a module from degree-wise data. Missing actions into a bounded module's
    /// vanishing range are filled with zero maps; shapes are checked.
    pub fn from_data(
        algebra: AlgebraRef,
        lo: i64,
        hi: i64,
        bounded: bool,
        dims: Vec<usize>,
        mut actions: Vec<Vec<Option<Matrix>>>,
    ) -> Result<Self> {
        if hi < lo - 1 || dims.len() as i64 != hi - lo + 1 || actions.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: (hi - lo + 1).max(0) as usize,
                found: dims.len(),
            });
        }
        let field = algebra.field();
        let g = algebra.num_generators();
        for (k, row) in actions.iter_mut().enumerate() {
            let e = lo + k as i64;
            if row.len() != g {
                return Err(Error::DimensionMismatch {
                    expected: g,
                    found: row.len(),
                });
            }
            for (x, slot) in row.iter_mut().enumerate() {
                let t = e + algebra.weight(x as u16);
                if t > hi {
                    if bounded {
                        *slot = Some(Matrix::zeros(field, dims[k], 0));
                    } else {
                        *slot = None;
                    }
                    continue;
                }
                let tdim = dims[(t - lo) as usize];
                match slot {
                    Some(m) if m.rows() == dims[k] && m.cols() == tdim => {}
                    Some(m) => {
                        return Err(Error::DimensionMismatch {
                            expected: dims[k] * tdim,
                            found: m.rows() * m.cols(),
                        })
                    }
                    None => {
                        return Err(Error::Inconsistent(format!(
                            "missing action of generator {x} in degree {e}"
                        )))
                    }
                }
            }
        }
        Ok(GradedModule {
            algebra,
            lo,
            hi,
            bounded,
            dims,
            actions,
            presentation: OnceLock::new(),
        })
    }

    pub fn zero(algebra: AlgebraRef) -> Self {
        let g = algebra.num_generators();
        Self::from_data(algebra, 0, 0, true, vec![0], vec![vec![None; g]]).expect("zero module")
    }

    pub(crate) fn set_presentation(&self, p: ModulePresentation) {
        let _ = self.presentation.set(Ok(p));
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// `(lo, hi)`.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// Dimensions over the window, starting at `lo`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.bounded && self.dims.iter().all(|&d| d == 0)
    }

    /// Whether `M_e` is known (inside the window, below it, or above a bounded module).
    pub fn knows(&self, e: i64) -> bool {
        e <= self.hi || self.bounded
    }

    pub fn dim(&self, e: i64) -> Result<usize> {
        if e < self.lo {
            return Ok(0);
        }
        if e > self.hi {
            return if self.bounded {
                Ok(0)
            } else {
                Err(Error::WindowExceeded {
                    degree: e,
                    lo: self.lo,
                    hi: self.hi,
                })
            };
        }
        Ok(self.dims[(e - self.lo) as usize])
    }

    /// Right multiplication by generator `x` from degree `e`.
    pub fn action(&self, e: i64, x: u16) -> Result<Cow<'_, Matrix>> {
        let w = self.algebra.weight(x);
        let field = self.algebra.field();
        if e < self.lo || e > self.hi {
            let rows = self.dim(e)?;
            return Ok(Cow::Owned(Matrix::zeros(field, rows, self.dim(e + w)?)));
        }
        match &self.actions[(e - self.lo) as usize][x as usize] {
            Some(m) => Ok(Cow::Borrowed(m)),
            None => Err(Error::WindowExceeded {
                degree: e + w,
                lo: self.lo,
                hi: self.hi,
            }),
        }
    }

    /// `v·w` for `v ∈ M_e` and a word `w` in the algebra generators.
    pub fn act_word(&self, e: i64, v: &[Scalar], letters: &[u16]) -> Result<Vec<Scalar>> {
        let mut cur = v.to_vec();
        let mut d = e;
        for &x in letters {
            cur = self.action(d, x)?.left_apply(&cur);
            d += self.algebra.weight(x);
        }
        Ok(cur)
    }

    /// `v·f` for `v ∈ M_e` and homogeneous `f ∈ A_k`.
    pub fn act_element(&self, e: i64, v: &[Scalar], f: &FreePoly, k: i64) -> Result<Vec<Scalar>> {
        let mut out = vec![self.algebra.field().zero(); self.dim(e + k)?];
        for (w, c) in f.terms() {
            if w.degree() != k {
                return Err(Error::InvalidArgument("acting element is not homogeneous".into()));
            }
            let img = self.act_word(e, v, w.letters())?;
            axpy(&mut out, c, &img);
        }
        Ok(out)
    }

    /// Matrix of `v ↦ v·f`, `M_e → M_{e+k}`.
    pub fn element_matrix(&self, e: i64, f: &FreePoly, k: i64) -> Result<Matrix> {
        let field = self.algebra.field();
        let n = self.dim(e)?;
        let rows = (0..n)
            .map(|i| self.act_element(e, &unit_vec(field, n, i), f, k))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, self.dim(e + k)?, rows)
    }

    /// `M(p)`: degree `e` of the result is degree `e + p` of `self`.
    pub fn shift(&self, p: i64) -> GradedModule {
        let out = GradedModule {
            algebra: self.algebra.clone(),
            lo: self.lo - p,
            hi: self.hi - p,
            bounded: self.bounded,
            dims: self.dims.clone(),
            actions: self.actions.clone(),
            presentation: OnceLock::new(),
        };
        if let Some(Ok(pres)) = self.presentation.get() {
            out.set_presentation(ModulePresentation {
                generators: pres.generators.iter().map(|d| d - p).collect(),
                generator_vectors: pres.generator_vectors.clone(),
                relations: pres
                    .relations
                    .iter()
                    .map(|r| ModuleElement {
                        degree: r.degree - p,
                        components: r.components.clone(),
                    })
                    .collect(),
                certified_through: pres.certified_through.map(|c| c - p),
            });
        }
        out
    }

    /// `M_{≥s}` with the same window top.
    pub fn truncate_below(&self, s: i64) -> GradedModule {
        if s <= self.lo {
            return self.clone();
        }
        if s > self.hi {
            return GradedModule::from_data(self.algebra.clone(), s, s - 1, self.bounded, Vec::new(), Vec::new())
                .expect("empty window");
        }
        let k = (s - self.lo) as usize;
        GradedModule {
            algebra: self.algebra.clone(),
            lo: s,
            hi: self.hi,
            bounded: self.bounded,
            dims: self.dims[k..].to_vec(),
            actions: self.actions[k..].to_vec(),
            presentation: OnceLock::new(),
        }
    }

    /// The bounded module `M_{≥s} / M_{>t}`, certified on `[s, t]`.
    pub fn truncate_window(&self, s: i64, t: i64) -> Result<GradedModule> {
        if t > self.hi && !self.bounded {
            return Err(Error::WindowInsufficient {
                degree: t,
                reason: format!("module is only known through degree {}", self.hi),
            });
        }
        let t = t.max(s - 1);
        let g = self.algebra.num_generators();
        let mut dims = Vec::new();
        let mut actions = Vec::new();
        for e in s..=t {
            dims.push(self.dim(e)?);
            let mut row = Vec::with_capacity(g);
            for x in 0..g as u16 {
                let target = e + self.algebra.weight(x);
                row.push(if target <= t {
                    Some(self.action(e, x)?.into_owned())
                } else {
                    None
                });
            }
            actions.push(row);
        }
        GradedModule::from_data(self.algebra.clone(), s, t, true, dims, actions)
    }

    /// Componentwise direct sum, certified where both summands are.
    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) {
            return Err(Error::ContextMismatch("modules over different algebras".into()));
        }
        let lo = self.lo.min(other.lo);
        let bounded = self.bounded && other.bounded;
        let hi = match (self.bounded, other.bounded) {
            (true, true) => self.hi.max(other.hi),
            (true, false) => other.hi,
            (false, true) => self.hi,
            (false, false) => self.hi.min(other.hi),
        };
        let field = self.algebra.field();
        let g = self.algebra.num_generators();
        let mut dims = Vec::new();
        let mut actions = Vec::new();
        for e in lo..=hi {
            let (a, b) = (self.dim(e)?, other.dim(e)?);
            dims.push(a + b);
            let mut row = Vec::with_capacity(g);
            for x in 0..g as u16 {
                let t = e + self.algebra.weight(x);
                if t > hi {
                    row.push(None);
                    continue;
                }
                let (ma, mb) = (self.action(e, x)?, other.action(e, x)?);
                let (ta, tb) = (ma.cols(), mb.cols());
                let mut m = Matrix::zeros(field, a + b, ta + tb);
                for i in 0..a {
                    for j in 0..ta {
                        m.set(i, j, ma.get(i, j).clone());
                    }
                }
                for i in 0..b {
                    for j in 0..tb {
                        m.set(a + i, ta + j, mb.get(i, j).clone());
                    }
                }
                row.push(Some(m));
            }
            actions.push(row);
        }
        GradedModule::from_data(self.algebra.clone(), lo, hi, bounded, dims, actions)
    }

    /// Checks that every Gröbner element of the algebra acts as zero wherever the
    /// composite action is known.
    pub fn verify(&self) -> Result<()> {
        for g in self.algebra.gb().elements() {
            let k = g.degree().expect("homogeneous");
            for e in self.lo..=self.hi {
                if !self.knows(e + k) {
                    break;
                }
                if !self.element_matrix(e, g, k)?.is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "relation {} acts nonzero in degree {e}",
                        self.algebra.display(g)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The module's presentation: the one it was built from, or one derived from the
    /// degree-wise data (minimal generators, then relations as kernels of the free cover).
    pub fn presentation(&self) -> Result<&ModulePresentation> {
        self.presentation
            .get_or_init(|| self.derive_presentation())
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Image of the free cover in degree `e`: rows indexed by `(generator, normal word)`.
    pub fn cover_matrix(&self, e: i64) -> Result<Matrix> {
        let pres = self.presentation()?;
        let cover = pres.cover();
        let a = &self.algebra;
        let labels = cover.labels(a, e)?;
        let mut rows = Vec::with_capacity(labels.len());
        for (i, w) in labels {
            rows.push(self.act_word(pres.generators[i], &pres.generator_vectors[i], w.letters())?);
        }
        Matrix::from_rows(a.field(), self.dim(e)?, rows)
    }

    /// A right inverse of `cover_matrix(e)`: row `j` lifts the `j`-th basis vector of `M_e`.
    pub fn cover_section(&self, e: i64) -> Result<Matrix> {
        let p = self.cover_matrix(e)?;
        let field = self.algebra.field();
        let n = self.dim(e)?;
        let targets: Vec<Vec<Scalar>> = (0..n).map(|j| unit_vec(field, n, j)).collect();
        let lifts = solve_left(&p, &targets)?.ok_or_else(|| {
            Error::Inconsistent(format!("generators do not span degree {e}"))
        })?;
        Matrix::from_rows(field, p.rows(), lifts)
    }

    fn derive_presentation(&self) -> Result<ModulePresentation> {
        let a = &self.algebra;
        let field = a.field();
        let w_max = a.max_weight();
        let mut generators = Vec::new();
        let mut generator_vectors = Vec::new();
        for e in self.lo..=self.hi {
            let n = self.dim(e)?;
            if n == 0 {
                continue;
            }
            let mut image = Subspace::zero(field, n);
            for x in 0..a.num_generators() as u16 {
                let src = e - a.weight(x);
                if src < self.lo {
                    continue;
                }
                for r in self.action(src, x)?.row_vecs() {
                    image.insert(r);
                }
            }
            for c in image.complement_columns() {
                generators.push(e);
                generator_vectors.push(unit_vec(field, n, c));
            }
        }
        let mut pres = ModulePresentation {
            generators,
            generator_vectors,
            relations: Vec::new(),
            certified_through: None,
        };
        if pres.generators.is_empty() {
            return Ok(pres);
        }
        let cover = pres.cover();
        let dmin = *pres.generators.iter().min().expect("nonempty");
        let wanted = if self.bounded { self.hi + w_max } else { self.hi };
        let top = wanted.min(dmin + a.bound());
        pres.certified_through = if self.bounded && top == wanted { None } else { Some(top) };
        // temporarily expose the generators so cover_matrix can use them
        let tmp = GradedModule {
            presentation: OnceLock::new(),
            ..self.clone()
        };
        tmp.set_presentation(pres.clone());
        let mut spans: Vec<Subspace> = Vec::new();
        for e in dmin..=top {
            let fdim = cover.dim(a, e)?;
            let mut rel = Subspace::zero(field, fdim);
            for x in 0..a.num_generators() as u16 {
                let src = e - a.weight(x);
                if src < dmin {
                    continue;
                }
                for r in spans[(src - dmin) as usize].basis() {
                    rel.insert(cover.right_mul(a, src, r, x)?);
                }
            }
            let p = tmp.cover_matrix(e)?;
            let kernel = left_kernel_basis(&p)?;
            for k in kernel.row_vecs() {
                if rel.insert(k.clone()) {
                    pres.relations.push(cover.to_element(a, e, &k)?);
                }
            }
            spans.push(rel);
        }
        Ok(pres)
    }
}
