use std::sync::Arc;

use crate::error::{Error, Result};
use crate::free::FreePoly;
use crate::groebner::{AlgebraRef, GradedAlgebra};
use crate::linalg::{left_kernel_basis, Matrix, Subspace};
use crate::module::{restrict_along, GradedModule};
use crate::morphism::AlgebraMorphism;

use super::ideal::{GradedIdeal, Sidedness};

/// `A → A/J` for a two-sided ideal `J` given by generators, with the functors
/// inflate (restriction), pullback (`M ↦ M/MJ`) and torsion (`M ↦ {m : mJ = 0}`).
#[derive(Clone, Debug)]
pub struct ClosedImmersion {
    ambient: AlgebraRef,
    ideal: GradedIdeal,
    quotient: AlgebraRef,
    projection: AlgebraMorphism,
}

impl ClosedImmersion {
    pub fn new(ambient: &AlgebraRef, generators: Vec<FreePoly>) -> Result<Self> {
        let d = ambient.bound();
        let ideal = GradedIdeal::new(ambient, generators.clone(), Sidedness::TwoSided, d)?;
        let pres = ambient.presentation().with_relations(ideal.generators().iter().cloned())?;
        let quotient = GradedAlgebra::new(&pres, d)?;
        let images = (0..pres.num_generators() as u16).map(|x| pres.generator_poly(x)).collect();
        let projection = AlgebraMorphism::new(ambient.clone(), quotient.clone(), images, 1)?;
        for e in 0..=d {
            if quotient.dim(e)? != ambient.dim(e)? - ideal.dim(e)? {
                return Err(Error::Inconsistent(format!("quotient has the wrong size in degree {e}")));
            }
        }
        Ok(ClosedImmersion {
            ambient: ambient.clone(),
            ideal,
            quotient,
            projection,
        })
    }

    pub fn ambient(&self) -> &AlgebraRef {
        &self.ambient
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn quotient(&self) -> &AlgebraRef {
        &self.quotient
    }

    pub fn projection(&self) -> &AlgebraMorphism {
        &self.projection
    }

    /// An `A/J`-module regarded as an `A`-module.
    pub fn inflate(&self, m: &GradedModule) -> Result<GradedModule> {
        let out = restrict_along(&self.projection, m)?;
        self.check_killed(&out)?;
        Ok(out)
    }

    /// An `A`-module on which `J` acts as zero, regarded as an `A/J`-module.
    pub fn descend(&self, m: &GradedModule) -> Result<GradedModule> {
        self.check_ambient(m)?;
        self.check_killed(m)?;
        let g = self.ambient.num_generators();
        let actions = (m.lo()..=m.hi())
            .map(|e| {
                (0..g as u16)
                    .map(|x| {
                        let t = e + self.ambient.weight(x);
                        if t > m.hi() {
                            Ok(None)
                        } else {
                            m.action(e, x).map(|a| Some(a.into_owned()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GradedModule::from_data(
            self.quotient.clone(),
            m.lo(),
            m.hi(),
            m.is_bounded(),
            m.dims().to_vec(),
            actions,
        )
    }

    fn check_ambient(&self, m: &GradedModule) -> Result<()> {
        if !Arc::ptr_eq(m.algebra(), &self.ambient) {
            return Err(Error::ContextMismatch("module is not over the ambient algebra".into()));
        }
        Ok(())
    }

    fn check_killed(&self, m: &GradedModule) -> Result<()> {
        for g in self.ideal.generators() {
            let k = g.degree().expect("homogeneous");
            for e in m.lo()..=m.hi() {
                if !m.knows(e + k) {
                    break;
                }
                if !m.element_matrix(e, g, k)?.is_zero() {
                    return Err(Error::JActsNonzero {
                        generator: self.ambient.display(g),
                        degree: e,
                    });
                }
            }
        }
        Ok(())
    }

    /// `(MJ)_e` inside `M_e` on the module's window.
    pub fn jm_components(&self, m: &GradedModule) -> Result<Vec<Subspace>> {
        self.check_ambient(m)?;
        let a = &self.ambient;
        let field = a.field();
        let mut out: Vec<Subspace> = Vec::new();
        for e in m.lo()..=m.hi() {
            let mut c = Subspace::zero(field, m.dim(e)?);
            for g in self.ideal.generators() {
                let k = g.degree().expect("homogeneous");
                if e - k < m.lo() {
                    continue;
                }
                for r in m.element_matrix(e - k, g, k)?.row_vecs() {
                    c.insert(r);
                }
            }
            for x in 0..a.num_generators() as u16 {
                let src = e - a.weight(x);
                if src < m.lo() {
                    continue;
                }
                let act = m.action(src, x)?;
                for r in out[(src - m.lo()) as usize].basis() {
                    c.insert(act.left_apply(r));
                }
            }
            out.push(c);
        }
        Ok(out)
    }

    /// `M/MJ` as an `A/J`-module, on the window of `M`.
    pub fn pullback(&self, m: &GradedModule) -> Result<GradedModule> {
        let sub = self.jm_components(m)?;
        let a = &self.ambient;
        let field = a.field();
        let mut dims = Vec::new();
        let mut actions = Vec::new();
        for (k, e) in (m.lo()..=m.hi()).enumerate() {
            let s = &sub[k];
            let cols = s.complement_columns();
            dims.push(cols.len());
            let mut row = Vec::new();
            for x in 0..a.num_generators() as u16 {
                let t = e + a.weight(x);
                if t > m.hi() {
                    row.push(None);
                    continue;
                }
                let act = m.action(e, x)?;
                let target = &sub[(t - m.lo()) as usize];
                let rows = cols
                    .iter()
                    .map(|&c| target.quotient_coords(act.row(c)))
                    .collect();
                row.push(Some(Matrix::from_rows(field, target.ambient() - target.dim(), rows)?));
            }
            actions.push(row);
        }
        let q = GradedModule::from_data(a.clone(), m.lo(), m.hi(), m.is_bounded(), dims, actions)?;
        self.descend(&q)
    }

    /// Smallest `c` with `J = J_{≤c}·A` on the whole window of the algebra.
    pub fn right_generation_degree(&self) -> Result<i64> {
        let a = &self.ambient;
        let field = a.field();
        let d = self.ideal.hi();
        let start = self
            .ideal
            .generators()
            .iter()
            .filter_map(FreePoly::degree)
            .max()
            .unwrap_or(0);
        'c: for c in start..=d {
            let mut below: Vec<Subspace> = Vec::new();
            for e in 0..=d {
                let comp = if e <= c {
                    self.ideal.component(e)?.clone()
                } else {
                    let mut s = Subspace::zero(field, a.dim(e)?);
                    for x in 0..a.num_generators() as u16 {
                        let src = e - a.weight(x);
                        if src < 0 {
                            continue;
                        }
                        let right = a.right_mul(src, x)?;
                        for r in below[src as usize].basis() {
                            s.insert(right.left_apply(r));
                        }
                    }
                    if s.dim() != self.ideal.dim(e)? {
                        continue 'c;
                    }
                    s
                };
                below.push(comp);
            }
            return Ok(c);
        }
        Ok(d)
    }

    /// `{m ∈ M : m·J = 0}` as an `A/J`-module. Degree `e` needs `M` through `e + c`,
    /// `c` the right generation degree of `J`, so an unbounded window shrinks by `c`.
    pub fn torsion(&self, m: &GradedModule) -> Result<GradedModule> {
        self.check_ambient(m)?;
        let a = &self.ambient;
        let field = a.field();
        let c = self.right_generation_degree()?;
        let hi = if m.is_bounded() { m.hi() } else { m.hi() - c };
        let hi = hi.max(m.lo() - 1);
        let mut parts: Vec<Subspace> = Vec::new();
        for e in m.lo()..=hi {
            let n = m.dim(e)?;
            let mut blocks = Vec::new();
            for d in 1..=c {
                if !m.knows(e + d) || (m.is_bounded() && e + d > m.hi()) {
                    continue;
                }
                for j in self.ideal.component_elements(d)? {
                    blocks.push(m.element_matrix(e, &j, d)?);
                }
            }
            let width: usize = blocks.iter().map(Matrix::cols).sum();
            let t = if width == 0 {
                Subspace::full(field, n)
            } else {
                let mut big = Matrix::zeros(field, n, width);
                let mut off = 0;
                for b in &blocks {
                    for i in 0..n {
                        for k in 0..b.cols() {
                            big.set(i, off + k, b.get(i, k).clone());
                        }
                    }
                    off += b.cols();
                }
                Subspace::from_matrix(&left_kernel_basis(&big)?)
            };
            parts.push(t);
        }
        let mut dims = Vec::new();
        let mut actions = Vec::new();
        for (k, e) in (m.lo()..=hi).enumerate() {
            dims.push(parts[k].dim());
            let mut row = Vec::new();
            for x in 0..a.num_generators() as u16 {
                let t = e + a.weight(x);
                if t > hi {
                    row.push(None);
                    continue;
                }
                let act = m.action(e, x)?;
                let target = &parts[(t - m.lo()) as usize];
                let rows = parts[k]
                    .basis()
                    .iter()
                    .map(|r| {
                        target.coordinates(&act.left_apply(r)).ok_or_else(|| {
                            Error::Inconsistent(format!("torsion part is not closed in degree {e}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                row.push(Some(Matrix::from_rows(field, target.dim(), rows)?));
            }
            actions.push(row);
        }
        let t = GradedModule::from_data(a.clone(), m.lo(), hi, m.is_bounded(), dims, actions)?;
        self.descend(&t)
    }
}
