use std::sync::Arc;

use crate::error::{Error, Result};
use crate::free::FreePoly;
use crate::groebner::AlgebraRef;
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sidedness {
    TwoSided,
    Right,
}

/// Homogeneous ideal held as its components `I_0, …, I_hi` in normal-word coordinates.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    algebra: AlgebraRef,
    sidedness: Sidedness,
    generators: Vec<FreePoly>,
    components: Vec<Subspace>,
}

/// A product `x·b` (or `b·x`) that leaves an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub degree: i64,
    pub element: FreePoly,
    pub product: FreePoly,
}

impl GradedIdeal {
    /// Ideal generated by homogeneous `generators`, computed on `[0, hi]`.
    pub fn new(algebra: &AlgebraRef, generators: Vec<FreePoly>, sidedness: Sidedness, hi: i64) -> Result<Self> {
        algebra.check_degree(hi)?;
        let field = algebra.field();
        let mut gens = Vec::new();
        for g in generators {
            let g = algebra.normal_form(&g)?;
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::InhomogeneousRelation(algebra.display(&g)));
            }
            gens.push(g);
        }
        let mut components: Vec<Subspace> = Vec::new();
        for e in 0..=hi {
            let mut c = Subspace::zero(field, algebra.dim(e)?);
            for g in &gens {
                if g.degree() == Some(e) {
                    c.insert(algebra.coords(e, g)?);
                }
            }
            for x in 0..algebra.num_generators() as u16 {
                let src = e - algebra.weight(x);
                if src < 0 {
                    continue;
                }
                let lower = &components[src as usize];
                if lower.is_zero() {
                    continue;
                }
                let right = algebra.right_mul(src, x)?;
                for r in lower.basis() {
                    c.insert(right.left_apply(r));
                }
                if sidedness == Sidedness::TwoSided {
                    let left = algebra.left_mul(src, x)?;
                    for r in lower.basis() {
                        c.insert(left.left_apply(r));
                    }
                }
            }
            components.push(c);
        }
        Ok(GradedIdeal {
            algebra: algebra.clone(),
            sidedness,
            generators: gens,
            components,
        })
    }

    /// An ideal given by its components; closure is the caller's responsibility.
    pub(crate) fn from_components(algebra: &AlgebraRef, sidedness: Sidedness, components: Vec<Subspace>) -> Self {
        let mut ideal = GradedIdeal {
            algebra: algebra.clone(),
            sidedness,
            generators: Vec::new(),
            components,
        };
        ideal.generators = ideal.minimal_generators();
        ideal
    }

    pub fn whole(algebra: &AlgebraRef, sidedness: Sidedness, hi: i64) -> Result<Self> {
        let one = FreePoly::one(algebra.field());
        GradedIdeal::new(algebra, vec![one], sidedness, hi)
    }

    pub fn zero(algebra: &AlgebraRef, sidedness: Sidedness, hi: i64) -> Result<Self> {
        GradedIdeal::new(algebra, Vec::new(), sidedness, hi)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn sidedness(&self) -> Sidedness {
        self.sidedness
    }

    pub fn generators(&self) -> &[FreePoly] {
        &self.generators
    }

    pub fn hi(&self) -> i64 {
        self.components.len() as i64 - 1
    }

    pub fn component(&self, e: i64) -> Result<&Subspace> {
        if e < 0 || e > self.hi() {
            return Err(Error::WindowExceeded {
                degree: e,
                lo: 0,
                hi: self.hi(),
            });
        }
        Ok(&self.components[e as usize])
    }

    pub fn dim(&self, e: i64) -> Result<usize> {
        Ok(self.component(e)?.dim())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    /// `dim A_e − dim I_e` for `e ∈ [0, hi]`.
    pub fn quotient_dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.ambient() - c.dim()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Subspace::is_zero)
    }

    pub fn is_whole(&self) -> bool {
        self.components.first().is_some_and(Subspace::is_full)
    }

    pub fn contains(&self, f: &FreePoly) -> Result<bool> {
        let f = self.algebra.normal_form(f)?;
        let Some(e) = f.degree() else {
            return Ok(true);
        };
        Ok(self.component(e)?.contains(&self.algebra.coords(e, &f)?))
    }

    pub fn is_subideal_of(&self, other: &GradedIdeal) -> bool {
        self.components
            .iter()
            .zip(&other.components)
            .all(|(a, b)| a.is_subspace_of(b))
    }

    /// Lowest degree of a nonzero component.
    pub fn min_degree(&self) -> Option<i64> {
        self.components.iter().position(|c| !c.is_zero()).map(|e| e as i64)
    }

    /// Complement, in each degree, of what lower components generate.
    pub fn minimal_generators(&self) -> Vec<FreePoly> {
        let a = &self.algebra;
        let field = a.field();
        let mut out = Vec::new();
        for (e, comp) in self.components.iter().enumerate() {
            let e = e as i64;
            if comp.is_zero() {
                continue;
            }
            let mut lower = Subspace::zero(field, comp.ambient());
            for x in 0..a.num_generators() as u16 {
                let src = e - a.weight(x);
                if src < 0 {
                    continue;
                }
                let below = &self.components[src as usize];
                let right = a.right_mul(src, x).expect("inside the window");
                for r in below.basis() {
                    lower.insert(right.left_apply(r));
                }
                if self.sidedness == Sidedness::TwoSided {
                    let left = a.left_mul(src, x).expect("inside the window");
                    for r in below.basis() {
                        lower.insert(left.left_apply(r));
                    }
                }
            }
            for r in comp.basis() {
                if lower.insert(r.clone()) {
                    out.push(a.element(e, r).expect("inside the window"));
                }
            }
        }
        out
    }

    /// `(g1, g2)`, `A` for the unit ideal, `0` for the zero ideal.
    pub fn display(&self) -> String {
        if self.is_whole() {
            return "A".into();
        }
        if self.is_zero() {
            return "0".into();
        }
        let gens: Vec<String> = self.minimal_generators().iter().map(|g| self.algebra.display(g)).collect();
        format!("({})", gens.join(", "))
    }

    /// Whether `x·I_e ⊆ I_{e+w}` for every generator `x` and every `e + w ≤ d`; on
    /// failure the first offending product.
    pub fn is_twosided(&self, d: i64) -> Result<Option<Witness>> {
        self.component(d)?;
        let a = &self.algebra;
        for e in 0..=d {
            for x in 0..a.num_generators() as u16 {
                let t = e + a.weight(x);
                if t > d {
                    continue;
                }
                let left = a.left_mul(e, x)?;
                let target = &self.components[t as usize];
                for r in self.components[e as usize].basis() {
                    let prod = left.left_apply(r);
                    if !target.contains(&prod) {
                        return Ok(Some(Witness {
                            degree: t,
                            element: a.element(e, r)?,
                            product: a.element(t, &prod)?,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn sum(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        self.check(other)?;
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.sum(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedIdeal::from_components(&self.algebra, self.meet_sidedness(other), comps))
    }

    pub fn intersect(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        self.check(other)?;
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.intersect(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedIdeal::from_components(&self.algebra, self.meet_sidedness(other), comps))
    }

    fn meet_sidedness(&self, other: &GradedIdeal) -> Sidedness {
        if self.sidedness == Sidedness::TwoSided && other.sidedness == Sidedness::TwoSided {
            Sidedness::TwoSided
        } else {
            Sidedness::Right
        }
    }

    fn check(&self, other: &GradedIdeal) -> Result<()> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) {
            return Err(Error::ContextMismatch("ideals of different algebras".into()));
        }
        if self.hi() != other.hi() {
            return Err(Error::DimensionMismatch {
                expected: self.components.len(),
                found: other.components.len(),
            });
        }
        Ok(())
    }

    /// Basis of `I_e` as elements of the algebra.
    pub fn component_elements(&self, e: i64) -> Result<Vec<FreePoly>> {
        self.component(e)?
            .basis()
            .iter()
            .map(|r| self.algebra.element(e, r))
            .collect()
    }
}

/// Result of the top-down sweep for the largest two-sided ideal in a right ideal.
#[derive(Clone, Debug)]
pub struct TwoSidedCore {
    pub ideal: GradedIdeal,
    /// Per degree: whether the answer did not change when the sweep started lower.
    pub exact: Vec<bool>,
}

fn sweep(k: &GradedIdeal, top: i64) -> Result<Vec<Subspace>> {
    let a = k.algebra();
    let mut out: Vec<Option<Subspace>> = vec![None; top.max(-1).saturating_add(1) as usize];
    for e in (0..=top).rev() {
        let mut t = k.component(e)?.clone();
        for x in 0..a.num_generators() as u16 {
            let up = e + a.weight(x);
            if up > top || t.is_zero() {
                continue;
            }
            let target = out[up as usize].as_ref().expect("computed above");
            t = t.preimage_within(a.left_mul(e, x)?, target)?;
        }
        out[e as usize] = Some(t);
    }
    Ok(out.into_iter().map(|t| t.expect("filled")).collect())
}

/// `{t ∈ K : A·t ⊆ K}` computed on `[0, d]`: a sweep from the top keeps the elements
/// whose generator multiples stay inside. Near `d` this over-approximates; degrees where
/// a sweep starting `max weight` lower agrees are flagged exact.
pub fn largest_twosided_inside(k: &GradedIdeal, d: i64) -> Result<TwoSidedCore> {
    k.component(d)?;
    let a = k.algebra();
    let w = a.max_weight();
    let full = sweep(k, d)?;
    let shorter = sweep(k, d - w)?;
    let exact = (0..=d)
        .map(|e| shorter.get(e as usize).is_some_and(|s| *s == full[e as usize]))
        .collect();
    Ok(TwoSidedCore {
        ideal: GradedIdeal::from_components(a, Sidedness::TwoSided, full),
        exact,
    })
}
