use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphism::AlgebraMorphism;

use super::cover::ModuleElement;
use super::graded::GradedModule;
use super::present::present_module;

/// `φ_*M`: the same spaces, degree `e` taken from `M_{scale·e}`, with each source
/// generator acting through its image.
pub fn restrict_along(phi: &AlgebraMorphism, m: &GradedModule) -> Result<GradedModule> {
    if !Arc::ptr_eq(phi.target(), m.algebra()) {
        return Err(Error::ContextMismatch("module is not over the target of the morphism".into()));
    }
    let s = phi.scale();
    let a = phi.source();
    let lo = m.lo().div_euclid(s) + i64::from(m.lo().rem_euclid(s) != 0);
    let hi = m.hi().div_euclid(s);
    let mut dims = Vec::new();
    let mut actions = Vec::new();
    for e in lo..=hi {
        dims.push(m.dim(s * e)?);
        let mut row = Vec::with_capacity(a.num_generators());
        for x in 0..a.num_generators() as u16 {
            let w = a.weight(x);
            if e + w > hi {
                row.push(None);
                continue;
            }
            row.push(Some(m.element_matrix(s * e, &phi.images()[x as usize], s * w)?));
        }
        actions.push(row);
    }
    GradedModule::from_data(a.clone(), lo, hi, m.is_bounded(), dims, actions)
}

/// `N ⊗_A B` on `[.., hi]`, presented by pushing generators and relations of `N`
/// through `φ`.
pub fn induce_along(phi: &AlgebraMorphism, n: &GradedModule, hi: i64) -> Result<GradedModule> {
    if !Arc::ptr_eq(phi.source(), n.algebra()) {
        return Err(Error::ContextMismatch("module is not over the source of the morphism".into()));
    }
    let s = phi.scale();
    let pres = n.presentation()?;
    if let Some(c) = pres.certified_through {
        if s * (c + 1) <= hi {
            return Err(Error::WindowInsufficient {
                degree: c + 1,
                reason: format!("relations of the module are only certified through degree {c}"),
            });
        }
    }
    let generators: Vec<i64> = pres.generators.iter().map(|d| s * d).collect();
    let mut relations = Vec::with_capacity(pres.relations.len());
    for r in &pres.relations {
        if s * r.degree > hi {
            continue;
        }
        let components = r
            .components
            .iter()
            .map(|c| phi.map_poly(c))
            .collect::<Result<Vec<_>>>()?;
        relations.push(ModuleElement {
            degree: s * r.degree,
            components,
        });
    }
    present_module(phi.target(), generators, relations, hi)
}
