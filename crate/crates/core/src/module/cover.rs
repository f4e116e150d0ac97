use crate::error::{Error, Result};
use crate::free::{FreePoly, Word};
use crate::groebner::GradedAlgebra;
use crate::linalg::Scalar;

/// Homogeneous element `Σ g_i·a_i` of a free module `⊕ g_i A`; `components[i] = a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub degree: i64,
    pub components: Vec<FreePoly>,
}

impl ModuleElement {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(FreePoly::is_zero)
    }

    /// e.g. `g1*x - 2*g2*y`, terms grouped by generator.
    pub fn display(&self, algebra: &GradedAlgebra, generator_names: &[String]) -> String {
        let names = algebra.presentation().names();
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (g, comp) in generator_names.iter().zip(&self.components) {
            for (w, c) in comp.terms().rev() {
                let neg = c.is_negative();
                let abs = if neg { -c } else { c.clone() };
                let mut s = String::new();
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(g);
                for &l in w.letters() {
                    s.push('*');
                    s.push_str(&names[l as usize]);
                }
                parts.push((neg, s));
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, s)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&s);
        }
        out
    }
}

pub fn default_generator_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("g{i}")).collect()
}

/// Coordinates on `(⊕ g_i A)_e = ⊕_i A_{e−d_i}`, blocks in generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCover {
    pub generators: Vec<i64>,
}

impl FreeCover {
    pub fn new(generators: Vec<i64>) -> Self {
        FreeCover { generators }
    }

    pub fn check(&self, a: &GradedAlgebra, e: i64) -> Result<()> {
        for &d in &self.generators {
            if e - d > a.bound() {
                return Err(Error::WindowExceedsBound {
                    requested: e,
                    limit: d + a.bound(),
                });
            }
        }
        Ok(())
    }

    pub fn blocks(&self, a: &GradedAlgebra, e: i64) -> Result<Vec<(usize, usize)>> {
        self.check(a, e)?;
        let mut off = 0;
        let mut out = Vec::with_capacity(self.generators.len());
        for &d in &self.generators {
            let n = a.dim(e - d)?;
            out.push((off, n));
            off += n;
        }
        Ok(out)
    }

    pub fn dim(&self, a: &GradedAlgebra, e: i64) -> Result<usize> {
        Ok(self.blocks(a, e)?.last().map_or(0, |&(o, n)| o + n))
    }

    /// `v·x` for `v` in degree `e`.
    pub fn right_mul(&self, a: &GradedAlgebra, e: i64, v: &[Scalar], x: u16) -> Result<Vec<Scalar>> {
        let w = a.weight(x);
        let src = self.blocks(a, e)?;
        let dst = self.blocks(a, e + w)?;
        let mut out = vec![a.field().zero(); dst.last().map_or(0, |&(o, n)| o + n)];
        for (i, &d) in self.generators.iter().enumerate() {
            let (so, sn) = src[i];
            if sn == 0 {
                continue;
            }
            let part = &v[so..so + sn];
            if part.iter().all(Scalar::is_zero) {
                continue;
            }
            let img = a.right_mul(e - d, x)?.left_apply(part);
            let (dof, _) = dst[i];
            out[dof..dof + img.len()].clone_from_slice(&img);
        }
        Ok(out)
    }

    pub fn to_element(&self, a: &GradedAlgebra, e: i64, v: &[Scalar]) -> Result<ModuleElement> {
        let blocks = self.blocks(a, e)?;
        let mut components = Vec::with_capacity(blocks.len());
        for (i, &(o, n)) in blocks.iter().enumerate() {
            let d = e - self.generators[i];
            components.push(if n == 0 {
                FreePoly::zero(a.field())
            } else {
                a.element(d, &v[o..o + n])?
            });
        }
        Ok(ModuleElement { degree: e, components })
    }

    pub fn from_element(&self, a: &GradedAlgebra, el: &ModuleElement) -> Result<Vec<Scalar>> {
        let e = el.degree;
        let blocks = self.blocks(a, e)?;
        let mut v = vec![a.field().zero(); self.dim(a, e)?];
        if el.components.len() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.generators.len(),
                found: el.components.len(),
            });
        }
        for (i, comp) in el.components.iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            let d = e - self.generators[i];
            if d < 0 {
                return Err(Error::InhomogeneousRelation("component of negative degree".into()));
            }
            let c = a.coords(d, comp).map_err(|_| {
                Error::InhomogeneousRelation(format!("component {} is not of degree {d}", i + 1))
            })?;
            let (o, n) = blocks[i];
            v[o..o + n].clone_from_slice(&c);
        }
        Ok(v)
    }

    /// Unit vector of generator `i` in degree `d_i`.
    pub fn generator_vector(&self, a: &GradedAlgebra, i: usize) -> Result<Vec<Scalar>> {
        let e = self.generators[i];
        let blocks = self.blocks(a, e)?;
        let mut v = vec![a.field().zero(); self.dim(a, e)?];
        v[blocks[i].0] = a.field().one();
        Ok(v)
    }

    /// Basis labels `(generator, normal word)` of degree `e`, in coordinate order.
    pub fn labels(&self, a: &GradedAlgebra, e: i64) -> Result<Vec<(usize, Word)>> {
        let mut out = Vec::new();
        for (i, &d) in self.generators.iter().enumerate() {
            for w in a.basis(e - d)? {
                out.push((i, w.clone()));
            }
        }
        Ok(out)
    }
}
