use crate::error::{Error, Result};
use crate::linalg::{axpy, left_kernel_basis, solve_left, Field, Matrix, Scalar};

use super::graded::GradedModule;

/// Degree-preserving maps `M → N(shift)`, each stored as its tuple of generator images
/// (flattened, one block per generator of `M`'s presentation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMapSpace {
    pub shift: i64,
    pub field: Field,
    pub generators: Vec<i64>,
    pub blocks: Vec<(usize, usize)>,
    pub basis: Vec<Vec<Scalar>>,
}

impl ModuleMapSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unknowns(&self) -> usize {
        self.blocks.last().map_or(0, |&(o, n)| o + n)
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.unknowns()];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            axpy(&mut v, c, b);
        }
        v
    }

    pub fn image_of_generator<'a>(&self, f: &'a [Scalar], i: usize) -> &'a [Scalar] {
        let (o, n) = self.blocks[i];
        &f[o..o + n]
    }

    /// Coordinates of a generator-image tuple in `basis`, if it is a module map.
    pub fn coordinates(&self, f: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.basis.is_empty() {
            return crate::linalg::is_zero_vec(f).then(Vec::new);
        }
        let b = Matrix::from_rows(self.field, self.unknowns(), self.basis.clone()).ok()?;
        solve_left(&b, &[f.to_vec()]).ok()??.pop()
    }

    /// Matrix of the map on the free cover of `M` in degree `e`: rows indexed like
    /// `m.cover_matrix(e)`, columns by a basis of `N_{e+shift}`.
    pub fn on_cover(&self, m: &GradedModule, n: &GradedModule, f: &[Scalar], e: i64) -> Result<Matrix> {
        let pres = m.presentation()?;
        let a = m.algebra();
        let labels = pres.cover().labels(a, e)?;
        let mut rows = Vec::with_capacity(labels.len());
        for (i, w) in labels {
            let img = self.image_of_generator(f, i);
            rows.push(n.act_word(pres.generators[i] + self.shift, img, w.letters())?);
        }
        Matrix::from_rows(self.field, n.dim(e + self.shift)?, rows)
    }

    /// `M_e → N_{e+shift}` for the map with generator images `f`.
    pub fn degree_map(&self, m: &GradedModule, n: &GradedModule, f: &[Scalar], e: i64) -> Result<Matrix> {
        let section = m.cover_section(e)?;
        section.mul(&self.on_cover(m, n, f, e)?)
    }
}

fn insufficient(degree: i64, reason: impl Into<String>) -> Error {
    Error::WindowInsufficient {
        degree,
        reason: reason.into(),
    }
}

/// Basis of `Hom_{Gr A}(M, N(shift))`, solved from `M`'s presentation: unknown images of
/// the generators, one linear constraint block per relation.
pub fn graded_hom(m: &GradedModule, n: &GradedModule, shift: i64) -> Result<ModuleMapSpace> {
    if !std::sync::Arc::ptr_eq(m.algebra(), n.algebra()) {
        return Err(Error::ContextMismatch("modules over different algebras".into()));
    }
    let pres = m.presentation()?;
    let field = m.algebra().field();
    if let Some(c) = pres.certified_through {
        if !(n.is_bounded() && n.hi() <= c + shift) {
            return Err(insufficient(
                c + 1,
                format!("relations of the domain are only certified through degree {c}"),
            ));
        }
    }
    let mut blocks = Vec::with_capacity(pres.generators.len());
    let mut off = 0;
    for &d in &pres.generators {
        let len = n
            .dim(d + shift)
            .map_err(|_| insufficient(d + shift, "codomain does not reach a generator image"))?;
        blocks.push((off, len));
        off += len;
    }
    let unknowns = off;
    let mut active = Vec::new();
    let mut width = 0;
    for rel in &pres.relations {
        let t = rel.degree + shift;
        if t < n.lo() || (t > n.hi() && n.is_bounded()) {
            continue;
        }
        let tdim = n
            .dim(t)
            .map_err(|_| insufficient(t, "codomain does not reach a relation degree"))?;
        if tdim > 0 {
            active.push((rel, width));
            width += tdim;
        }
    }
    let mut c = Matrix::zeros(field, unknowns, width);
    for (rel, col) in active {
        for (i, comp) in rel.components.iter().enumerate() {
            let (o, len) = blocks[i];
            if comp.is_zero() || len == 0 {
                continue;
            }
            let d = pres.generators[i];
            let mat = n.element_matrix(d + shift, comp, rel.degree - d)?;
            for j in 0..len {
                for k in 0..mat.cols() {
                    c.set(o + j, col + k, mat.get(j, k).clone());
                }
            }
        }
    }
    let basis = if width == 0 {
        (0..unknowns).map(|i| crate::linalg::unit_vec(field, unknowns, i)).collect()
    } else {
        left_kernel_basis(&c)?.row_vecs()
    };
    Ok(ModuleMapSpace {
        shift,
        field,
        generators: pres.generators.clone(),
        blocks,
        basis,
    })
}
